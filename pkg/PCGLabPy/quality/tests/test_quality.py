import os
import numpy as np
import pytest
from numpy.testing import assert_allclose
from PCGLabPy.core.errors import DegenerateClass, SchemaMismatch
from PCGLabPy.core.io import Manifest, write_wav
from PCGLabPy.signal.synth import SynthSpec, synthesize
from PCGLabPy.quality import (
    QualityModel, train_quality, score_quality, gate_manifest,
    score_manifest, stratified_split, quality_labels, feature_matrix,
    evaluate_quality, fit_quality_model
)
from PCGLabPy.utils.config import resolve_config

CONFIG = dict(
    seed=0,
    classifiers=dict(rf=dict(n_trees=25), gb=dict(n_rounds=50)),
)


def write_corpus(directory, snrs, seed=0, sample_rate_hz=1000,
                 duration_s=6.0):
    rng = np.random.RandomState(seed)
    records = []
    for i, snr in enumerate(snrs):
        spec = SynthSpec(
            heart_rate_bpm=rng.uniform(60, 110), duration_s=duration_s,
            sample_rate_hz=sample_rate_hz, s1_freq_hz=rng.uniform(40, 80),
            s2_freq_hz=rng.uniform(70, 120), snr_db=snr,
            seed=rng.randint(1 << 30),
        )
        path = "rec_{:03d}.wav".format(i)
        write_wav(synthesize(spec, source_id=path),
                  os.path.join(directory, path))
        score = 5 if snr >= 15 else 1
        records.append(dict(path=path, quality_score=score))
    return Manifest.from_records(records, base_dir=directory)


@pytest.fixture(scope='module')
def corpus(tmp_path_factory):
    directory = str(tmp_path_factory.mktemp("quality_corpus"))
    rng = np.random.RandomState(1)
    snrs = np.r_[rng.uniform(15, 25, 20), rng.uniform(-10, 0, 20)]
    return write_corpus(directory, snrs, seed=2)


@pytest.fixture(scope='module')
def split(corpus):
    return stratified_split(corpus, 0.2, seed=0)


@pytest.fixture(scope='module')
def features(corpus):
    return feature_matrix(corpus)


@pytest.fixture(scope='module')
def model(split, features):
    train, _ = split
    return train_quality(train, CONFIG, features=features.loc[train.paths])


def test_feature_matrix(corpus, features):
    assert features.shape[0] == len(corpus)
    assert list(features.index) == corpus.paths
    assert np.isfinite(features.to_numpy()).all()


def test_train(model, features):
    assert isinstance(model, QualityModel)
    assert model.ensemble.names == ['svm', 'rf', 'gb']
    n_kept = int(np.floor(0.2 * features.shape[1] + 0.5))
    assert len(model.selection.selected_names) == n_kept
    assert model.operating_rate_hz == 1000


def test_keep_fraction(split, features):
    train, _ = split
    config = dict(CONFIG, selection=dict(keep_fraction=0.5))
    model = train_quality(train, config, features=features.loc[train.paths])
    assert model.selection.keep_fraction == 0.5
    n_kept = int(np.floor(0.5 * features.shape[1] + 0.5))
    assert len(model.selection.selected_names) == n_kept


def test_held_out(model, split, features):
    _, test = split
    report, roc = evaluate_quality(model, features.loc[test.paths],
                                   quality_labels(test))
    assert report['voting']['accuracy'] >= 0.85
    assert report['voting']['auroc'] >= 0.9
    assert set(report) >= {'svm', 'rf', 'gb', 'voting'}
    for key in ('accuracy', 'precision', 'recall', 'specificity', 'f1',
                'auroc'):
        assert key in report['svm']
    assert list(roc.columns) == ['threshold', 'fpr', 'tpr']


def test_score_quality(model):
    clean = synthesize(SynthSpec(snr_db=25, duration_s=8, seed=11))
    p, label = score_quality(model, clean)
    assert p > 0.8
    assert label == 1

    rng = np.random.RandomState(5)
    noise = clean.replace(samples=np.clip(rng.normal(0, 0.3, 8000), -1, 1))
    p, label = score_quality(model, noise)
    assert label == 0


def test_rate_independence(model):
    spec = dict(snr_db=np.inf, duration_s=8, seed=3)
    p_1k, _ = score_quality(model, synthesize(SynthSpec(**spec)))
    p_4k, _ = score_quality(
        model, synthesize(SynthSpec(sample_rate_hz=4000, **spec))
    )
    assert abs(p_1k - p_4k) < 0.05


def test_short_recording_padded(model):
    short = synthesize(SynthSpec(snr_db=25, duration_s=2.44, seed=12))
    p, _ = score_quality(model, short)
    assert 0 <= p <= 1


def test_tie_is_unacceptable(model):
    assert model.label(0.5) == 0
    assert model.label(0.5 + 1e-12) == 1


def test_single_class(corpus, features):
    clean = corpus.subset(quality_labels(corpus) == 1)
    with pytest.raises(DegenerateClass):
        train_quality(clean, CONFIG, features=features.loc[clean.paths])


def test_all_features(split, features):
    train, test = split
    X = features.loc[train.paths]
    model = fit_quality_model(X, quality_labels(train), CONFIG,
                              keep_fraction=1.0)
    assert len(model.selection.selected_names) == features.shape[1]


def test_serialisation(model, tmp_path, features):
    directory = str(tmp_path / "model")
    model.save(directory)
    loaded = QualityModel.load(directory)
    X = features.iloc[:6]
    assert_allclose(loaded.score_features(X), model.score_features(X))
    assert loaded.selection.selected_names == model.selection.selected_names


def test_schema_mismatch(model):
    d = model.to_dict()
    d['feature_schema_id'] = 'other'
    with pytest.raises(SchemaMismatch):
        QualityModel.from_dict(d).check_schema()


def test_gate(model, tmp_path):
    directory = str(tmp_path)
    clean = write_corpus(directory, np.full(10, 22.0), seed=7)
    kept, removed, report = gate_manifest(model, clean)
    assert report['removed_fraction'] < 0.1
    assert report['kept'] + report['removed'] == report['total'] == 10
    assert len(kept) + len(removed) == 10

    noisy_dir = os.path.join(directory, "noisy")
    noisy = write_corpus(noisy_dir, np.full(10, -8.0), seed=8)
    scores = score_manifest(model, noisy)
    assert list(scores['source'].unique()) == ['pseudo']
    kept, removed, report = gate_manifest(model, noisy, scores=scores)
    assert report['removed_fraction'] > 0.9
    assert set(kept.paths).isdisjoint(removed.paths)
    assert sorted(kept.paths + removed.paths) == sorted(noisy.paths)
    assert report['per_outcome_counts']['unlabelled']['total'] == 10


def test_config_defaults():
    config = resolve_config(CONFIG)
    assert config['classifiers']['rf']['n_trees'] == 25
    assert config['classifiers']['svm']['C'] == 1.0
