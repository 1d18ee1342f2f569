"""
Quality gate of phonocardiogram recordings: annotated 1-5 scores are
mapped to acceptable/unacceptable, a soft-voting ensemble is trained on
the most informative quality features and used to filter corpora.
"""
from .labels import (
    QualityLabel, map_score, quality_labels, stratified_split,
    ACCEPTABLE, UNACCEPTABLE
)
from .features import feature_matrix, recording_features
from .model import (
    QualityModel, train_quality, fit_quality_model, score_quality,
    evaluate_quality
)
from .gate import score_manifest, gate_manifest, write_gate
from .experiment import run_quality_experiment, write_quality_experiment
