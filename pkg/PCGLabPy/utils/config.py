"""
Run configuration: a nested dict of defaults, deep-merged with a YAML (or
JSON) file. Unknown keys are rejected so a typo can never silently fall
back to a default.
"""
import copy
import os
import yaml
from PCGLabPy.core.errors import ConfigError
from PCGLabPy.utils.files import create_directory

CONFIG_SECTIONS = (
    'seed', 'io', 'quality', 'selection', 'classifiers', 'mel', 'ssl',
    'head', 'metrics',
)

DEFAULT_CONFIG = dict(
    seed=0,
    io=dict(
        wav_subtype='int16',
        target_rate_hz=None,
        min_seconds=None,
        chunk_seconds=None,
    ),
    quality=dict(
        min_seconds=6.0,
        test_fraction=0.2,
        threshold=0.5,
        members=['svm', 'rf', 'gb'],
        compare_all_features=True,
    ),
    selection=dict(
        keep_fraction=0.2,
        n_bins=10,
    ),
    classifiers=dict(
        svm=dict(kernel='rbf', C=1.0, gamma='scale', tol=1e-3,
                 max_iter=100000),
        rf=dict(n_trees=200, max_depth=None, min_samples_leaf=1,
                max_features='sqrt', bootstrap=True),
        gb=dict(n_rounds=100, learning_rate=0.1, max_depth=3,
                min_samples_leaf=1),
    ),
    mel=dict(
        rate_hz=1000,
        n_mels=64,
        n_frames=96,
        win_s=0.064,
        hop_s=0.010,
        n_fft=None,
        fmin_hz=20.0,
        fmax_fraction=0.45,
        log_floor=1e-10,
        std_floor=1e-6,
        norm_mode='instance',
        max_pitch_shift=8,
        stretch_range=[0.8, 1.25],
    ),
    ssl=dict(
        embed_dim=3072,
        channels=[16, 32, 64],
        projector_hidden=256,
        projection_dim=128,
        tau=0.99,
        epochs=30,
        batch_size=32,
        lr=1e-4,
    ),
    head=dict(
        hidden=256,
        dropout=0.5,
        epochs=20,
        batch_size=32,
        lr=1e-4,
        lr_step_epochs=5,
        lr_gamma=0.1,
        acbmi_cutoffs=dict(
            neonate=[11.0, 14.5, 16.5],
            infant=[14.0, 18.0, 19.5],
            child=[14.0, 18.0, 22.0],
            adolescent=[17.0, 24.0, 28.0],
        ),
    ),
    metrics=dict(
        cost=dict(
            c_algorithm=10.0,
            c_treatment=10000.0,
            c_error=50000.0,
            a0=25.0,
            a1=397.0,
            a2=-1718.0,
            a4=11296.0,
        ),
    ),
)

SECTION_DOCS = dict(
    seed="Seed of every random draw (splits, bootstraps, crops, init)",
    io="Corpus preparation (pcg_preprocess): optional resampling, "
       "replication padding and chunking",
    quality="Quality gate: minimum duration after padding, "
            "held-out fraction, decision threshold on p_acceptable and "
            "ensemble members",
    selection="Mutual information ranking: kept fraction and number of "
              "equal-frequency bins",
    classifiers="Hyperparameters of the ensemble members",
    mel="Log-mel frontend and augmentations (rate_hz: operating rate, "
        "norm_mode: instance or corpus)",
    ssl="Encoder and self-supervised pretraining",
    head="Screening head, training recipe and age-corrected BMI cutoffs "
         "(t1, t2, t3 per age group)",
    metrics="Expert-screening cost: c_algorithm * t + "
            "(a0 + a1 x + a2 x^2 + a4 x^4) * t + c_treatment * tp + "
            "c_error * fn, x = referred / total",
)


def _merge(default, override, path):
    out = copy.deepcopy(default)
    for key, value in override.items():
        where = "{}.{}".format(path, key) if path else key
        if key not in default:
            raise ConfigError("Unknown config key: {}".format(where))
        if isinstance(default[key], dict):
            if not isinstance(value, dict):
                raise ConfigError("Config key {} must be a mapping"
                                  .format(where))
            out[key] = _merge(default[key], value, where)
        else:
            out[key] = copy.deepcopy(value)
    return out


def _load_file(path):
    print("Loading configuration from: {}".format(path))
    if not os.path.exists(path):
        raise FileNotFoundError("File does not exist: {}".format(path))
    with open(path, 'r') as file:
        try:
            config = yaml.safe_load(file)
        except yaml.YAMLError as err:
            raise ConfigError("Cannot parse {}: {}".format(path, err))
    if config is None:
        config = {}
    if not isinstance(config, dict):
        raise ConfigError("{} does not hold a mapping".format(path))
    if 'seed' not in config:
        raise ConfigError("{} must define 'seed'".format(path))
    return config


def resolve_config(config=None, path=None):
    """
    Resolve the run configuration.

    Parameters
    ----------
    config : dict
        Overrides, merged last
    path : str
        YAML/JSON config file, which must define `seed`

    Returns
    -------
    dict
        Complete configuration
    """
    resolved = copy.deepcopy(DEFAULT_CONFIG)
    if path:
        resolved = _merge(resolved, _load_file(path), '')
    if config:
        resolved = _merge(resolved, config, '')
    if not isinstance(resolved['seed'], int) or isinstance(
            resolved['seed'], bool):
        raise ConfigError("seed must be an integer")
    return resolved


def dump_config(config):
    """
    YAML text of a config, sections in their documented order
    """
    lines = []
    for section in CONFIG_SECTIONS:
        lines.append("# {}\n".format(SECTION_DOCS[section]))
        lines.append(yaml.safe_dump({section: config[section]},
                                    default_flow_style=False,
                                    sort_keys=True))
        lines.append("\n")
    return "".join(lines)


def save_config(config, directory, name="config.yml"):
    """
    Echo the resolved config into an output directory
    """
    create_directory(directory)
    path = os.path.join(directory, name)
    with open(path, 'w', newline='\n') as f:
        f.write(dump_config(config))
    return path
