"""
Preparation of a whole corpus: every recording of a manifest is
resampled, replicate-padded and/or cut into chunks, and written with a
derived manifest
"""
import os
from tqdm import tqdm
from PCGLabPy.core.errors import TooShort
from PCGLabPy.core.io import Manifest, write_wav
from PCGLabPy.signal.preprocessing import resample, pad_by_replication, chunk

AUDIO_DIR = "recordings"


def prepare_recording(recording, target_rate_hz=None, min_seconds=None,
                      chunk_seconds=None):
    """
    Apply the configured preparation steps to a recording, in the order
    resample, pad, chunk.

    Returns
    -------
    list of PcgRecording
        A single recording unless `chunk_seconds` is given
    """
    if target_rate_hz:
        recording = resample(recording, target_rate_hz)
    if min_seconds:
        recording = pad_by_replication(recording, min_seconds)
    if chunk_seconds:
        return chunk(recording, chunk_seconds)
    return [recording]


def output_stem(index, path):
    """
    File name (without extension) of a prepared row: the zero-padded
    manifest row index, then the source file name.
    """
    stem = os.path.splitext(os.path.basename(path))[0]
    return "{:05d}_{}".format(index, stem)


def prepare_corpus(manifest, output_dir, target_rate_hz=None,
                   min_seconds=None, chunk_seconds=None, wav_subtype='int16'):
    """
    Prepare every recording of a manifest and write the results under
    `output_dir/recordings` together with `output_dir/manifest.csv`.

    Output files are named by `output_stem`. Rows keep their labels and
    demographics. When recordings are chunked, each chunk becomes its own
    row and the subject of a chunk is the subject of its parent recording
    (its path if the manifest carries no subject ids), so patient-level
    evaluation regroups them.

    Parameters
    ----------
    manifest : Manifest
    output_dir : str
    target_rate_hz : int
        Resample to this rate, if given
    min_seconds : float
        Replicate-pad to this duration, if given
    chunk_seconds : float
        Cut into chunks of this duration, if given
    wav_subtype : str
        "int16" or "float32"

    Returns
    -------
    Manifest
    """
    records = []
    for index, row in enumerate(tqdm(manifest, total=len(manifest),
                                     desc="Preparing recordings")):
        recording = manifest.load(index)
        stem = output_stem(index, row['path'])
        recording = recording.replace(source_id=stem)
        parts = prepare_recording(recording, target_rate_hz, min_seconds,
                                  chunk_seconds)
        for part in parts:
            path = "{}/{}.wav".format(AUDIO_DIR, part.source_id)
            write_wav(part, os.path.join(output_dir, path), wav_subtype)
            record = dict(row, path=path)
            if chunk_seconds and not record.get('subject_id'):
                record['subject_id'] = row['path']
            records.append(record)
    if not records:
        raise TooShort("No recording is long enough for one chunk")

    prepared = Manifest.from_records(records, base_dir=output_dir)
    prepared.write(os.path.join(output_dir, "manifest.csv"))
    return prepared
