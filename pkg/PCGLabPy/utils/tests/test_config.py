import os
import pytest
import yaml
from PCGLabPy.core.errors import ConfigError
from PCGLabPy.utils.config import (
    resolve_config, dump_config, save_config, DEFAULT_CONFIG, CONFIG_SECTIONS
)


def write(tmp_path, text, name="config.yml"):
    path = str(tmp_path / name)
    with open(path, 'w') as f:
        f.write(text)
    return path


def test_defaults():
    config = resolve_config()
    assert config == DEFAULT_CONFIG
    assert config is not DEFAULT_CONFIG
    config['quality']['threshold'] = 0.9
    assert DEFAULT_CONFIG['quality']['threshold'] == 0.5


def test_deep_merge(tmp_path):
    path = write(tmp_path, "seed: 4\nclassifiers:\n  rf:\n    n_trees: 7\n")
    config = resolve_config(path=path)
    assert config['seed'] == 4
    assert config['classifiers']['rf']['n_trees'] == 7
    assert config['classifiers']['rf']['max_features'] == 'sqrt'
    assert config['classifiers']['gb'] == DEFAULT_CONFIG['classifiers']['gb']

    overridden = resolve_config(dict(seed=9), path)
    assert overridden['seed'] == 9
    assert overridden['classifiers']['rf']['n_trees'] == 7


def test_json_config(tmp_path):
    path = write(tmp_path, '{"seed": 2, "head": {"epochs": 3}}',
                 name="config.json")
    config = resolve_config(path=path)
    assert config['head']['epochs'] == 3
    assert config['head']['lr'] == 1e-4


def test_rejected(tmp_path):
    with pytest.raises(ConfigError):
        resolve_config(path=write(tmp_path, "seed: 0\nmel:\n  nmels: 32\n"))
    with pytest.raises(ConfigError):
        resolve_config(path=write(tmp_path, "seed: 0\nunknown: 1\n"))
    with pytest.raises(ConfigError):
        resolve_config(path=write(tmp_path, "seed: 0\nmel: 3\n"))
    with pytest.raises(ConfigError):
        resolve_config(path=write(tmp_path, "mel:\n  n_mels: 32\n"))
    with pytest.raises(ConfigError):
        resolve_config(path=write(tmp_path, "seed: 0\nmel: [unclosed\n"))
    with pytest.raises(ConfigError):
        resolve_config(path=write(tmp_path, "- seed\n"))
    with pytest.raises(ConfigError):
        resolve_config(dict(seed=1.5))
    with pytest.raises(ConfigError):
        resolve_config(dict(seed=True))
    with pytest.raises(FileNotFoundError):
        resolve_config(path=str(tmp_path / "missing.yml"))


def test_dump_round_trip(tmp_path):
    config = resolve_config(dict(seed=11, ssl=dict(epochs=2)))
    text = dump_config(config)
    assert yaml.safe_load(text) == config
    headers = [line for line in text.splitlines() if line.startswith('#')]
    assert len(headers) == len(CONFIG_SECTIONS)

    path = save_config(config, str(tmp_path / "run"))
    assert os.path.basename(path) == "config.yml"
    assert resolve_config(path=path) == config
    with open(path) as f:
        assert f.read() == text
