import numpy as np
import pandas as pd
import pytest
from numpy.testing import assert_allclose
from PCGLabPy.core.errors import IdMismatch, BadLabel
from PCGLabPy.core.io import Manifest
from PCGLabPy.metrics import (
    evaluate_run, aggregate_by_subject, read_predictions, write_predictions,
    CostConfig
)
from PCGLabPy.metrics.evaluation import outcome_to_int


def get_manifest(subjects=False):
    records = []
    for i, outcome in enumerate(['abnormal', 'abnormal', 'normal', 'normal']):
        record = dict(path="rec_{}.wav".format(i), outcome_label=outcome)
        if subjects:
            record['subject_id'] = "s{}".format(i // 2)
        records.append(record)
    return Manifest.from_records(records)


def get_predictions(p, ids=None):
    if ids is None:
        ids = ["rec_{}.wav".format(i) for i in range(len(p))]
    return pd.DataFrame(dict(
        id=ids, p_abnormal=p,
        label=['abnormal' if v >= 0.5 else 'normal' for v in p],
    ))


def test_evaluate_run():
    report = evaluate_run(get_predictions([0.9, 0.4, 0.2, 0.7]),
                          get_manifest())
    assert report['counts'] == dict(tp=1, fp=1, tn=1, fn=1)
    assert report['accuracy'] == 0.5
    assert report['f1'] == 0.5
    assert report['auroc'] == 0.75
    assert report['positive_class'] == 'abnormal'
    assert set(report['per_class']) == {'normal', 'abnormal'}
    assert report['per_class']['abnormal']['accuracy'] == 0.5
    assert 'patient_level' not in report
    assert report['cost'] > 0


def test_perfect_run():
    report = evaluate_run(get_predictions([0.9, 0.8, 0.2, 0.1]),
                          get_manifest(), CostConfig())
    assert report['accuracy'] == 1
    assert report['per_class']['normal']['f1'] == 1


def test_unscored_rows_ignored():
    predictions = get_predictions([0.9, 0.1], ids=['rec_0.wav', 'rec_3.wav'])
    report = evaluate_run(predictions, get_manifest())
    assert report['n'] == 2
    assert report['accuracy'] == 1


def test_id_mismatch():
    with pytest.raises(IdMismatch):
        evaluate_run(get_predictions([0.5], ids=['other.wav']),
                     get_manifest())
    with pytest.raises(IdMismatch):
        evaluate_run(get_predictions([0.5, 0.5],
                                     ids=['rec_0.wav', 'other.wav']),
                     get_manifest())


def test_outcome_labels():
    assert list(outcome_to_int(['abnormal', 'normal'])) == [1, 0]
    with pytest.raises(BadLabel):
        outcome_to_int(['abnormal', 'Abnormal'])

    predictions = get_predictions([0.9, 0.1])
    predictions.loc[1, 'label'] = 'unknown'
    with pytest.raises(BadLabel):
        evaluate_run(predictions, get_manifest())


def test_patient_level():
    report = evaluate_run(get_predictions([0.9, 0.3, 0.2, 0.6]),
                          get_manifest(subjects=True))
    patients = report['patient_level']
    assert patients['n'] == 2
    # s0: mean 0.6 -> abnormal, s1: mean 0.4 -> normal
    assert patients['accuracy'] == 1


def test_aggregate_by_subject():
    df = pd.DataFrame(dict(subject_id=['a', 'a', 'b'],
                           p_abnormal=[0.2, 0.8, 0.4], truth=[0, 1, 0]))
    out = aggregate_by_subject(df)
    assert_allclose(out.loc['a', 'p_abnormal'], 0.5)
    assert out.loc['a', 'prediction'] == 1
    assert out.loc['a', 'truth'] == 1
    assert out.loc['b', 'prediction'] == 0


def test_prediction_io(tmp_path):
    path = str(tmp_path / "predictions.csv")
    df = get_predictions([0.9, 0.4])
    write_predictions(df, path)
    read = read_predictions(path)
    assert list(read['id']) == list(df['id'])
    assert_allclose(read['p_abnormal'], df['p_abnormal'])
    assert list(read['label']) == list(df['label'])
