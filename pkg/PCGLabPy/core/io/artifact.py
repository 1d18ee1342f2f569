"""
Artifact directories: a `manifest.json` index, optionally accompanied by a
raw little-endian float32 parameter blob. JSON is written with sorted keys
and no timestamps, so identical inputs give byte-identical artifacts.
"""
import json
import os
import warnings
import numpy as np
from packaging.version import parse
from PCGLabPy import __version__
from PCGLabPy.utils.files import create_directory

INDEX_NAME = "manifest.json"
BLOB_NAME = "params.bin"
BLOB_DTYPE = np.dtype('<f4')


def _default(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError("Object of type {} is not JSON serializable"
                    .format(type(obj).__name__))


def dumps_json(obj):
    return json.dumps(obj, sort_keys=True, indent=2, default=_default) + "\n"


def write_json(obj, path):
    create_directory(os.path.dirname(path))
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(dumps_json(obj))


def read_json(path):
    if not os.path.exists(path):
        raise FileNotFoundError("File does not exist: {}".format(path))
    with open(path, 'r', encoding='utf-8') as f:
        return json.load(f)


def write_artifact(directory, artifact, payload, blob=None):
    """
    Write an artifact directory.

    Parameters
    ----------
    directory : str
    artifact : str
        Kind of artifact (e.g. "quality_model", "encoder")
    payload : dict
        JSON-compatible content of the index
    blob : ndarray
        Optional parameters, stored as little-endian float32
    """
    print("Writing {} to: {}".format(artifact, directory))
    create_directory(directory)
    index = dict(payload)
    index['artifact'] = artifact
    index['pcglabpy_version'] = __version__
    if blob is not None:
        data = np.ascontiguousarray(blob, dtype=BLOB_DTYPE)
        with open(os.path.join(directory, BLOB_NAME), 'wb') as f:
            f.write(data.tobytes())
        index['blob'] = dict(file=BLOB_NAME, dtype='float32-le',
                             n_values=int(data.size))
    write_json(index, os.path.join(directory, INDEX_NAME))


def _check_version(version, path):
    if version is None:
        return
    if parse(version).release[0] < parse(__version__).release[0]:
        warnings.warn("Artifact {} created with older version of PCGLabPy"
                      .format(path), UserWarning)
    elif parse(version).release[0] > parse(__version__).release[0]:
        warnings.warn("Artifact {} created with newer version of PCGLabPy"
                      .format(path), UserWarning)


def read_artifact(directory, artifact):
    """
    Read an artifact directory written by `write_artifact`.

    Returns
    -------
    index : dict
    blob : ndarray or None
        float64 copy of the parameter blob
    """
    path = os.path.join(directory, INDEX_NAME)
    print("Loading {} from: {}".format(artifact, directory))
    index = read_json(path)
    if index.get('artifact') != artifact:
        raise ValueError("{} holds a '{}' artifact, expected '{}'".format(
            directory, index.get('artifact'), artifact
        ))
    _check_version(index.get('pcglabpy_version'), directory)
    blob = None
    if 'blob' in index:
        blob_path = os.path.join(directory, index['blob']['file'])
        blob = np.fromfile(blob_path, dtype=BLOB_DTYPE).astype(np.float64)
        if blob.size != index['blob']['n_values']:
            raise IOError("{} holds {} values, index declares {}".format(
                blob_path, blob.size, index['blob']['n_values']
            ))
    return index, blob
