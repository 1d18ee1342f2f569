import os
import numpy as np
import pytest
from numpy.testing import assert_allclose
from PCGLabPy.core.errors import ModalityMismatch, BadLabel
from PCGLabPy.core.io import Manifest
from PCGLabPy.nn import random_encoder, save_encoder
from PCGLabPy.screening import (
    ScreeningModel, DemographicRecord, train_screening, predict_outcome,
    predict_manifest
)
from PCGLabPy.signal.synth import make_corpus

CONFIG = dict(
    seed=0,
    mel=dict(n_mels=8, n_frames=12),
    ssl=dict(embed_dim=4, channels=[2, 2, 2]),
    head=dict(hidden=8, epochs=3, batch_size=4, lr=1e-3),
)


@pytest.fixture(scope='module')
def corpus(tmp_path_factory):
    directory = str(tmp_path_factory.mktemp("screening_corpus"))
    manifest, _ = make_corpus(12, directory, seed=4, duration_s=2.0)
    return manifest


@pytest.fixture(scope='module')
def encoder():
    return random_encoder(CONFIG)


@pytest.fixture(scope='module')
def audio_model(corpus, encoder):
    return train_screening(corpus, encoder, CONFIG)


def test_train_audio(audio_model):
    model, log = audio_model
    assert not model.multimodal
    assert model.head.input_dim == 4
    assert list(log.columns) == ['epoch', 'loss', 'lr']
    assert len(log) == 3
    assert np.isfinite(log['loss']).all()


def test_predict_manifest(audio_model, corpus):
    model, _ = audio_model
    table = predict_manifest(model, corpus)
    assert list(table.columns) == ['id', 'p_abnormal', 'label']
    assert list(table['id']) == corpus.paths
    assert ((table['p_abnormal'] >= 0) & (table['p_abnormal'] <= 1)).all()
    assert set(table['label']) <= {'normal', 'abnormal'}
    decisive = (table['p_abnormal'] - 0.5).abs() > 1e-9
    expected = np.where(table['p_abnormal'] > 0.5, 'abnormal', 'normal')
    assert (table['label'][decisive] == expected[decisive]).all()
    assert_allclose(predict_manifest(model, corpus)['p_abnormal'],
                    table['p_abnormal'])


def test_predict_outcome(audio_model, corpus):
    model, _ = audio_model
    table = predict_manifest(model, corpus)
    p, label = predict_outcome(model, corpus.load(0))
    assert p == pytest.approx(table['p_abnormal'][0])
    assert label == table['label'][0]
    with pytest.warns(UserWarning):
        p_demo, _ = predict_outcome(model, corpus.load(0),
                                    DemographicRecord('male', 'child'))
    assert p_demo == pytest.approx(p)


def test_frozen_leaves_encoder_unchanged(corpus, tmp_path):
    encoder = random_encoder(CONFIG)
    before = str(tmp_path / "before")
    after = str(tmp_path / "after")
    save_encoder(before, encoder)
    train_screening(corpus, encoder, CONFIG, mode='frozen')
    save_encoder(after, encoder)
    with open(os.path.join(before, "params.bin"), 'rb') as f:
        blob_before = f.read()
    with open(os.path.join(after, "params.bin"), 'rb') as f:
        assert f.read() == blob_before


def test_multimodal(corpus, encoder):
    model, _ = train_screening(corpus, encoder, CONFIG, fusion='audio+demo')
    assert model.multimodal
    assert model.head.input_dim == 4 + 10
    with pytest.raises(ModalityMismatch):
        predict_outcome(model, corpus.load(0))
    p, label = predict_outcome(model, corpus.load(0),
                               DemographicRecord.from_row(next(iter(corpus))))
    assert 0 <= p <= 1
    assert label in ('normal', 'abnormal')
    assert len(predict_manifest(model, corpus)) == len(corpus)


def test_multimodal_without_demographics(corpus, encoder):
    bare = Manifest.from_records(
        [dict(path=row['path'], outcome_label=row['outcome_label'])
         for row in corpus],
        base_dir=corpus.base_dir,
    )
    with pytest.raises(ModalityMismatch):
        train_screening(bare, encoder, CONFIG, fusion='audio+demo')
    with pytest.raises(ValueError):
        train_screening(bare, encoder, CONFIG, fusion='video')


def test_missing_outcome(corpus, encoder):
    records = [dict(path=row['path'], outcome_label=row['outcome_label'])
               for row in corpus]
    records[0]['outcome_label'] = None
    manifest = Manifest.from_records(records, base_dir=corpus.base_dir)
    with pytest.raises(BadLabel):
        train_screening(manifest, encoder, CONFIG)


def test_finetune(corpus, encoder):
    before = [p.copy() for p in encoder.parameters()]
    model, _ = train_screening(corpus, encoder, CONFIG, mode='finetune')
    assert model.mode == 'finetune'
    assert model.encoder is not encoder
    for p, b in zip(encoder.parameters(), before):
        assert_allclose(p, b)


def test_save_load(audio_model, corpus, tmp_path):
    model, _ = audio_model
    directory = str(tmp_path / "model")
    model.save(directory)
    loaded = ScreeningModel.load(directory)
    assert loaded.fusion == model.fusion
    assert loaded.head.config == model.head.config
    assert loaded.mel == model.mel
    assert_allclose(predict_manifest(loaded, corpus)['p_abnormal'],
                    predict_manifest(model, corpus)['p_abnormal'],
                    atol=1e-4)
