"""
Network checkpoints: a manifest.json index (schema version, configuration,
name/shape/offset of every parameter array) and a float32 parameter blob.
"""
import numpy as np
from PCGLabPy.core.errors import CheckpointLoadError
from PCGLabPy.core.io.artifact import write_artifact, read_artifact
from PCGLabPy.nn.encoder import Encoder

CHECKPOINT_SCHEMA_VERSION = 1
ENCODER_ARTIFACT = 'encoder'


def pack_parameters(modules):
    """
    Parameters
    ----------
    modules : dict
        Name -> Module, stored in the given order

    Returns
    -------
    layers : list
        {name, shape, offset} of every parameter array
    blob : ndarray
        Concatenated flattened parameters
    """
    layers = []
    arrays = []
    offset = 0
    for module_name, module in modules.items():
        for name, p in module.named_parameters(module_name + '.'):
            layers.append(dict(name=name, shape=list(p.shape),
                               offset=offset))
            arrays.append(p.ravel())
            offset += p.size
    blob = np.concatenate(arrays) if arrays else np.zeros(0)
    return layers, blob


def unpack_parameters(modules, layers, blob):
    """
    Copy blob values into the parameters of `modules`, in place
    """
    entries = {layer['name']: layer for layer in layers}
    for module_name, module in modules.items():
        for name, p in module.named_parameters(module_name + '.'):
            if name not in entries:
                raise CheckpointLoadError("Checkpoint lacks parameter {}"
                                          .format(name))
            entry = entries.pop(name)
            if tuple(entry['shape']) != p.shape:
                raise CheckpointLoadError(
                    "Parameter {} has shape {} in the checkpoint, {} "
                    "expected".format(name, tuple(entry['shape']), p.shape)
                )
            values = blob[entry['offset']:entry['offset'] + p.size]
            if values.size != p.size:
                raise CheckpointLoadError("Parameter blob is truncated")
            p[...] = values.reshape(p.shape)
    if entries:
        raise CheckpointLoadError("Unexpected parameters in checkpoint: {}"
                                  .format(sorted(entries)[:5]))


def save_checkpoint(directory, artifact, modules, payload):
    layers, blob = pack_parameters(modules)
    index = dict(payload)
    index['schema_version'] = CHECKPOINT_SCHEMA_VERSION
    index['layers'] = layers
    write_artifact(directory, artifact, index, blob)


def read_checkpoint(directory, artifact):
    try:
        index, blob = read_artifact(directory, artifact)
    except (OSError, ValueError) as err:
        raise CheckpointLoadError("Cannot read {} checkpoint {}: {}"
                                  .format(artifact, directory, err))
    if index.get('schema_version') != CHECKPOINT_SCHEMA_VERSION:
        raise CheckpointLoadError("Unsupported checkpoint version: {}"
                                  .format(index.get('schema_version')))
    if blob is None:
        raise CheckpointLoadError("Checkpoint {} has no parameter blob"
                                  .format(directory))
    return index, blob


def save_encoder(directory, encoder, mel_config=None, norm_stats=None):
    """
    Write an encoder checkpoint.

    Parameters
    ----------
    directory : str
    encoder : Encoder
    mel_config : dict
        Frontend parameters the encoder was trained with
    norm_stats : tuple
        Corpus normalisation statistics, if used
    """
    payload = dict(
        encoder=encoder.config,
        mel=mel_config,
        norm_stats=None if norm_stats is None else list(norm_stats),
    )
    save_checkpoint(directory, ENCODER_ARTIFACT, dict(encoder=encoder),
                    payload)


def encoder_from_index(index, blob, prefix='encoder'):
    config = index['encoder']
    encoder = Encoder(config['embed_dim'], config['channels'],
                      config['n_frames'], config['n_mels'])
    unpack_parameters({prefix: encoder}, [
        layer for layer in index['layers']
        if layer['name'].startswith(prefix + '.')
    ], blob)
    return encoder


def load_encoder(directory, expected=None):
    """
    Read an encoder checkpoint.

    Parameters
    ----------
    directory : str
    expected : dict
        Encoder configuration (embed_dim, channels, n_frames, n_mels)
        the checkpoint must match

    Returns
    -------
    encoder : Encoder
    index : dict
        Checkpoint index (mel config, norm_stats)
    """
    index, blob = read_checkpoint(directory, ENCODER_ARTIFACT)
    config = index.get('encoder')
    if not config:
        raise CheckpointLoadError("Checkpoint {} has no encoder"
                                  .format(directory))
    if expected is not None:
        for key, value in expected.items():
            if key in config and config[key] != value:
                raise CheckpointLoadError(
                    "Checkpoint {} has {} = {}, configuration requires {}"
                    .format(directory, key, config[key], value)
                )
    return encoder_from_index(index, blob), index
