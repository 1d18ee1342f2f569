"""
Evaluation of binary classifiers: confusion counts, the standard metrics,
rank-based AUROC and the expert-screening cost.
"""
from .classification import (
    ConfusionCounts, confusion, basic_metrics, auroc, roc_curve
)
from .cost import CostConfig, screening_cost
from .evaluation import (
    read_predictions, write_predictions, aggregate_by_subject,
    evaluate_predictions, evaluate_run
)
