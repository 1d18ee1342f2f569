"""
Scoring of a prediction table against the labels of a manifest
"""
import os
import warnings
import numpy as np
import pandas as pd
from PCGLabPy.core.errors import IdMismatch, BadLabel, MissingColumn
from PCGLabPy.metrics.classification import (
    confusion, basic_metrics, auroc
)
from PCGLabPy.metrics.cost import CostConfig, screening_cost
from PCGLabPy.utils.files import create_directory

POSITIVE_CLASS = 'abnormal'
NEGATIVE_CLASS = 'normal'
PREDICTION_COLUMNS = ['id', 'p_abnormal', 'label']


def outcome_to_int(labels):
    values = []
    for v in labels:
        if v not in (POSITIVE_CLASS, NEGATIVE_CLASS):
            raise BadLabel("Outcome label must be '{}' or '{}', got {!r}"
                           .format(NEGATIVE_CLASS, POSITIVE_CLASS, v))
        values.append(1 if v == POSITIVE_CLASS else 0)
    return np.array(values, dtype=np.int64)


def int_to_outcome(values):
    return [POSITIVE_CLASS if v else NEGATIVE_CLASS for v in values]


def write_predictions(df, path):
    """
    Write a prediction table (id, p_abnormal, label)
    """
    create_directory(os.path.dirname(path))
    print("Writing predictions to: {}".format(path))
    df[PREDICTION_COLUMNS].to_csv(path, index=False, float_format='%.10g',
                                  lineterminator='\n')


def read_predictions(path):
    print("Loading predictions from: {}".format(path))
    if not os.path.exists(path):
        raise FileNotFoundError("File does not exist: {}".format(path))
    df = pd.read_csv(path, dtype={'id': str, 'label': str})
    missing = [c for c in PREDICTION_COLUMNS if c not in df.columns]
    if missing:
        raise MissingColumn("Prediction table is missing columns: {}"
                            .format(missing))
    return df


def aggregate_by_subject(df):
    """
    Patient-level decisions: mean p_abnormal over the recordings of a
    subject, labelled abnormal when the mean is >= 0.5. A subject is truly
    abnormal if any of its recordings is.

    Parameters
    ----------
    df : pd.DataFrame
        Columns subject_id, p_abnormal, truth (0/1)

    Returns
    -------
    pd.DataFrame
        Indexed by subject_id, columns p_abnormal, prediction, truth
    """
    grouped = df.groupby('subject_id', sort=True)
    out = pd.DataFrame(dict(
        p_abnormal=grouped['p_abnormal'].mean(),
        truth=grouped['truth'].max(),
    ))
    out['prediction'] = (out['p_abnormal'] >= 0.5).astype(np.int64)
    return out


def _per_class(truth, prediction):
    per_class = {}
    for name, positive in ((NEGATIVE_CLASS, 0), (POSITIVE_CLASS, 1)):
        m = basic_metrics(confusion(truth == positive,
                                    prediction == positive))
        per_class[name] = dict(accuracy=m['recall'], f1=m['f1'])
    return per_class


def evaluate_predictions(scores, truth, prediction, cost_config=None):
    """
    All metrics of one set of binary decisions.

    Parameters
    ----------
    scores : ndarray
        Probability of the positive class
    truth : ndarray
        Binary truth
    prediction : ndarray
        Binary decisions
    cost_config : CostConfig

    Returns
    -------
    dict
    """
    counts = confusion(truth, prediction)
    report = basic_metrics(counts)
    report['n'] = counts.n
    report['counts'] = counts.as_dict()
    report['per_class'] = _per_class(np.asarray(truth), np.asarray(prediction))
    if np.unique(truth).size == 2:
        report['auroc'] = auroc(scores, truth)
    else:
        warnings.warn("Only one outcome class present, AUROC undefined",
                      UserWarning)
        report['auroc'] = None
    if cost_config is not None:
        report['cost'] = screening_cost(counts, cost_config)
    return report


def evaluate_run(predictions, manifest, cost_config=None):
    """
    Score a screening prediction table against the outcome labels of a
    manifest. Predictions are matched to manifest rows by path; manifest
    rows without a prediction (e.g. removed by the quality gate) are not
    scored.

    Parameters
    ----------
    predictions : pd.DataFrame
        Columns id, p_abnormal, label
    manifest : Manifest
    cost_config : CostConfig

    Returns
    -------
    dict
        Metric report, with patient-level metrics when the manifest
        carries subject ids
    """
    if cost_config is None:
        cost_config = CostConfig()
    truth = manifest.df.set_index('path')
    ids = [str(i) for i in predictions['id']]
    unknown = [i for i in ids if i not in truth.index]
    if not ids or len(unknown) == len(ids):
        raise IdMismatch("No prediction id matches a manifest path")
    if unknown:
        raise IdMismatch("Prediction ids not in the manifest: {}"
                         .format(unknown[:10]))
    if len(set(ids)) != len(ids):
        raise IdMismatch("Duplicate prediction ids")

    outcomes = truth.loc[ids, 'outcome_label']
    if outcomes.isnull().any():
        raise BadLabel("Manifest rows without outcome_label: {}".format(
            list(outcomes.index[outcomes.isnull()])[:10]
        ))
    y = outcome_to_int(outcomes)
    p = predictions['p_abnormal'].to_numpy(dtype=float)
    y_hat = outcome_to_int(predictions['label'])

    report = evaluate_predictions(p, y, y_hat, cost_config)
    report['positive_class'] = POSITIVE_CLASS
    report['cost_config'] = cost_config.as_dict()

    if manifest.has_subject_id:
        subjects = truth.loc[ids, 'subject_id']
        # Recordings without a subject are their own patient
        subjects = [s if s is not None else i for s, i in zip(subjects, ids)]
        patients = aggregate_by_subject(pd.DataFrame(dict(
            subject_id=subjects, p_abnormal=p, truth=y
        )))
        patient_report = evaluate_predictions(
            patients['p_abnormal'].to_numpy(), patients['truth'].to_numpy(),
            patients['prediction'].to_numpy(), cost_config
        )
        report['patient_level'] = patient_report
    return report
