"""
Clinical outcome screening: socio-demographic encoding, fusion with audio
embeddings, the classification head and outcome prediction.
"""
from .demographics import (
    DemographicRecord, acbmi_category, encode_demographics,
    demographic_matrix, fuse, check_cutoffs, ACBMI_CATEGORIES, DEMO_DIM
)
from .head import (
    HeadModel, train_head, head_loss, outcome_probabilities, MODES
)
from .model import (
    ScreeningModel, predict_outcome, predict_manifest, train_screening,
    outcome_labels, FUSIONS
)
