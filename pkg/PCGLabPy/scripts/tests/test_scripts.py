import json
import os
import sys
import pandas as pd
import pytest
import yaml
from PCGLabPy.core.io import Manifest, read_json
from PCGLabPy.scripts import (
    pcg_synth, pcg_preprocess, pcg_quality_train, pcg_quality_gate,
    pcg_pretrain, pcg_train, pcg_evaluate, generate_pcg_config
)
from PCGLabPy.utils.config import DEFAULT_CONFIG

CONFIG = dict(
    seed=3,
    classifiers=dict(rf=dict(n_trees=10), gb=dict(n_rounds=10)),
    mel=dict(n_mels=8, n_frames=12),
    ssl=dict(embed_dim=4, channels=[2, 2, 2], projector_hidden=8,
             projection_dim=4, epochs=1, batch_size=4),
    head=dict(hidden=8, epochs=2, batch_size=4),
)


def run(monkeypatch, module, *argv):
    monkeypatch.setattr(sys, 'argv', [module.__name__] + list(argv))
    module.main()


@pytest.fixture(scope='module')
def workspace(tmp_path_factory):
    directory = tmp_path_factory.mktemp("pipeline")
    config_path = str(directory / "config.yml")
    with open(config_path, 'w') as f:
        yaml.safe_dump(CONFIG, f)
    return str(directory), config_path


@pytest.fixture(scope='module')
def corpus(workspace):
    directory, config_path = workspace
    out = os.path.join(directory, "corpus")
    with pytest.MonkeyPatch.context() as monkeypatch:
        run(monkeypatch, pcg_synth, '-n', '20', '-o', out,
            '-c', config_path)
    return os.path.join(out, "manifest.csv")


def test_synth(corpus, workspace, monkeypatch):
    directory, config_path = workspace
    manifest = Manifest.read(corpus)
    assert len(manifest) == 20
    corpus_dir = os.path.dirname(corpus)
    assert len(os.listdir(os.path.join(corpus_dir, "recordings"))) == 20
    with open(os.path.join(corpus_dir, "config.yml")) as f:
        assert yaml.safe_load(f)['seed'] == 3

    again = os.path.join(directory, "again")
    run(monkeypatch, pcg_synth, '-n', '20', '-o', again, '-c', config_path)
    with open(corpus) as f1, \
            open(os.path.join(again, "manifest.csv")) as f2:
        assert f1.read() == f2.read()


def test_preprocess(corpus, workspace, monkeypatch):
    directory, _ = workspace
    config_path = os.path.join(directory, "chunk.yml")
    with open(config_path, 'w') as f:
        yaml.safe_dump(dict(seed=0, io=dict(chunk_seconds=4.0)), f)
    out = os.path.join(directory, "chunks")
    run(monkeypatch, pcg_preprocess, '-m', corpus, '-o', out,
        '-c', config_path)
    prepared = Manifest.read(os.path.join(out, "manifest.csv"))
    assert len(prepared) == 40
    assert prepared.load(0).duration == pytest.approx(4.0)


def test_quality_pipeline(corpus, workspace, monkeypatch):
    directory, config_path = workspace
    train_dir = os.path.join(directory, "quality")
    run(monkeypatch, pcg_quality_train, '-m', corpus, '-o', train_dir,
        '-c', config_path)
    report = read_json(os.path.join(train_dir, "report.json"))
    for name in ('svm', 'rf', 'gb', 'voting'):
        assert {'accuracy', 'precision', 'recall', 'f1',
                'auroc'} <= set(report['selected'][name])
        assert name in report['all_features']
    ranking = pd.read_csv(os.path.join(train_dir, "feature_ranking.csv"))
    assert list(ranking.columns) == ['name', 'mi_score', 'selected']
    assert ranking['selected'].sum() == report['n_selected']
    assert os.path.exists(os.path.join(train_dir, "config.yml"))

    gate_dir = os.path.join(directory, "gate")
    run(monkeypatch, pcg_quality_gate, '-M',
        os.path.join(train_dir, "quality_model"), '-m', corpus,
        '-o', gate_dir)
    gate = read_json(os.path.join(gate_dir, "gate_report.json"))
    kept = Manifest.read(os.path.join(gate_dir, "kept_manifest.csv"))
    removed = Manifest.read(os.path.join(gate_dir, "removed_manifest.csv"))
    assert len(kept) + len(removed) == 20
    assert gate['kept'] == len(kept)
    pseudo = pd.read_csv(os.path.join(gate_dir, "pseudo_labels.csv"))
    assert list(pseudo.columns) == ['path', 'p_acceptable', 'label',
                                    'source']
    assert (pseudo['source'] == 'pseudo').all()
    if len(kept):
        assert kept.load(0).duration == pytest.approx(10.0)


def test_screening_pipeline(corpus, workspace, monkeypatch):
    directory, config_path = workspace
    pretrain_dir = os.path.join(directory, "pretrain")
    run(monkeypatch, pcg_pretrain, '-m', corpus, '-o', pretrain_dir,
        '-c', config_path)
    log = pd.read_csv(os.path.join(pretrain_dir, "loss_log.csv"))
    assert len(log) == 1
    encoder_dir = os.path.join(pretrain_dir, "encoder")
    with open(os.path.join(encoder_dir, "params.bin"), 'rb') as f:
        encoder_bytes = f.read()

    train_dir = os.path.join(directory, "train")
    run(monkeypatch, pcg_train, '-m', corpus, '-e', encoder_dir,
        '-o', train_dir, '--fusion', 'audio+demo', '-c', config_path)
    train_log = pd.read_csv(os.path.join(train_dir, "train_log.csv"))
    assert list(train_log.columns) == ['epoch', 'loss', 'lr']
    with open(os.path.join(encoder_dir, "params.bin"), 'rb') as f:
        assert f.read() == encoder_bytes

    eval_dir = os.path.join(directory, "evaluate")
    run(monkeypatch, pcg_evaluate, '-M', os.path.join(train_dir, "model"),
        '-m', corpus, '-o', eval_dir, '-c', config_path)
    report = read_json(os.path.join(eval_dir, "report.json"))
    assert report['positive_class'] == 'abnormal'
    assert 'cost' in report
    assert 'patient_level' in report
    predictions = pd.read_csv(os.path.join(eval_dir, "predictions.csv"))
    assert len(predictions) == 20

    rescored = os.path.join(directory, "rescored")
    run(monkeypatch, pcg_evaluate, '-p',
        os.path.join(eval_dir, "predictions.csv"), '-m', corpus,
        '-o', rescored)
    assert read_json(os.path.join(rescored, "report.json"))['cost'] == \
        pytest.approx(report['cost'])


def test_error_reporting(workspace, monkeypatch, capsys):
    directory, _ = workspace
    with pytest.raises(SystemExit) as err:
        run(monkeypatch, pcg_quality_train, '-m',
            os.path.join(directory, "missing.csv"), '-o', directory)
    assert err.value.code == 1
    payload = json.loads(capsys.readouterr().err.strip())
    assert payload['error'] == 'FileNotFoundError'

    bad_config = os.path.join(directory, "bad.yml")
    with open(bad_config, 'w') as f:
        f.write("seed: 0\nquality:\n  treshold: 0.4\n")
    with pytest.raises(SystemExit):
        run(monkeypatch, pcg_synth, '-n', '2', '-o', directory,
            '-c', bad_config)
    assert json.loads(capsys.readouterr().err.strip())['error'] == \
        'ConfigError'


def test_generate_config(tmp_path, monkeypatch):
    path = str(tmp_path / "config.yml")
    run(monkeypatch, generate_pcg_config, '-o', path)
    with open(path) as f:
        text = f.read()
    assert text.startswith("# ")
    assert yaml.safe_load(text) == DEFAULT_CONFIG

    bare = str(tmp_path / "bare.yml")
    run(monkeypatch, generate_pcg_config, '-o', bare, '--bare')
    with open(bare) as f:
        text = f.read()
    assert '#' not in text
    assert yaml.safe_load(text) == DEFAULT_CONFIG


def last_error(capsys):
    return json.loads(capsys.readouterr().err.strip().splitlines()[-1])


def test_quality_config_errors(corpus, workspace, monkeypatch, capsys):
    directory, _ = workspace
    members_config = os.path.join(directory, "members.yml")
    with open(members_config, 'w') as f:
        yaml.safe_dump(dict(seed=0, quality=dict(members=['svm', 'knn'])), f)
    with pytest.raises(SystemExit) as err:
        run(monkeypatch, pcg_quality_train, '-m', corpus,
            '-o', os.path.join(directory, "members"), '-c', members_config)
    assert err.value.code == 1
    payload = last_error(capsys)
    assert payload['error'] == 'ConfigError'
    assert 'knn' in payload['message']

    df = pd.read_csv(corpus, dtype=str, keep_default_na=False).head(4)
    df['quality_score'] = ['5', '5', '1', '1']
    small = os.path.join(os.path.dirname(corpus), "small.csv")
    df.to_csv(small, index=False)
    with pytest.raises(SystemExit) as err:
        run(monkeypatch, pcg_quality_train, '-m', small,
            '-o', os.path.join(directory, "small"))
    assert err.value.code == 1
    payload = last_error(capsys)
    assert payload['error'] == 'EmptyData'
    assert 'at least 10 samples' in payload['message']


def test_run_reproducible(tmp_path, workspace, monkeypatch):
    _, config_path = workspace
    runs = []
    for name in ("first", "second"):
        directory = str(tmp_path / name)
        run(monkeypatch, pcg_synth, '-n', '20', '-o',
            os.path.join(directory, "corpus"), '-c', config_path)
        run(monkeypatch, pcg_quality_train, '-m',
            os.path.join(directory, "corpus", "manifest.csv"),
            '-o', os.path.join(directory, "quality"), '-c', config_path)
        runs.append(directory)

    compared = ["corpus/manifest.csv", "quality/report.json",
                "quality/feature_ranking.csv", "quality/roc.csv"]
    model_files = sorted(os.listdir(
        os.path.join(runs[0], "quality", "quality_model")
    ))
    assert model_files == sorted(os.listdir(
        os.path.join(runs[1], "quality", "quality_model")
    ))
    compared += ["quality/quality_model/" + f for f in model_files]
    for path in compared:
        with open(os.path.join(runs[0], path), 'rb') as f1, \
                open(os.path.join(runs[1], path), 'rb') as f2:
            assert f1.read() == f2.read(), path


def test_generate_config_default_path(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    run(monkeypatch, generate_pcg_config)
    with open(str(tmp_path / "pcg_config.yml")) as f:
        assert yaml.safe_load(f) == DEFAULT_CONFIG
