"""
This module contains the preparation steps applied to recordings before
feature extraction or spectrogram computation
"""
import numpy as np
from math import gcd
from scipy.signal import firwin, resample_poly

TAPS_PER_PHASE = 64
CUTOFF_FRACTION = 0.45


def design_resampling_filter(source_hz, target_hz):
    """
    Hann-windowed sinc low-pass for polyphase resampling, designed at the
    intermediate (upsampled) rate.

    Parameters
    ----------
    source_hz : int
    target_hz : int

    Returns
    -------
    h : ndarray
        Filter coefficients with unity gain at DC
    up : int
    down : int
    """
    g = gcd(int(source_hz), int(target_hz))
    up = int(target_hz) // g
    down = int(source_hz) // g
    numtaps = TAPS_PER_PHASE * max(up, down) + 1
    cutoff = CUTOFF_FRACTION * min(source_hz, target_hz)
    h = firwin(numtaps, cutoff, window='hann', fs=source_hz * up)
    return h, up, down


def resample(recording, target_hz):
    """
    Resample a recording with a windowed-sinc polyphase filter. An
    anti-alias low-pass at 0.45 * target_hz is applied before decimation.

    Parameters
    ----------
    recording : PcgRecording
    target_hz : int

    Returns
    -------
    PcgRecording
        Recording at `target_hz` with round(len * target / source) samples
    """
    target_hz = int(target_hz)
    if target_hz <= 0:
        raise ValueError("target_hz must be positive, got {}"
                         .format(target_hz))
    source_hz = recording.sample_rate_hz
    if target_hz == source_hz:
        return recording

    h, up, down = design_resampling_filter(source_hz, target_hz)
    y = resample_poly(recording.samples, up, down, window=h)

    n_out = int(np.floor(recording.samples.size * target_hz / source_hz
                         + 0.5))
    n_out = max(n_out, 1)
    if y.size >= n_out:
        y = y[:n_out]
    else:
        y = np.concatenate([y, np.zeros(n_out - y.size)])
    return recording.replace(samples=np.clip(y, -1, 1),
                             sample_rate_hz=target_hz)


def pad_by_replication(recording, min_seconds):
    """
    Append whole copies of a short recording to itself until it lasts at
    least `min_seconds`.

    Parameters
    ----------
    recording : PcgRecording
    min_seconds : float

    Returns
    -------
    PcgRecording
    """
    if min_seconds <= 0:
        raise ValueError("min_seconds must be positive")
    n = recording.samples.size
    n_required = int(np.ceil(round(min_seconds * recording.sample_rate_hz,
                                   6)))
    if n >= n_required:
        return recording
    n_copies = -(-n_required // n)
    return recording.replace(samples=np.tile(recording.samples, n_copies))


def chunk(recording, chunk_seconds):
    """
    Cut a recording into consecutive, non-overlapping chunks. A trailing
    partial chunk is dropped.

    Parameters
    ----------
    recording : PcgRecording
    chunk_seconds : float

    Returns
    -------
    list of PcgRecording
        Chunk `i` has source_id "<parent>_<i:04d>"
    """
    if chunk_seconds <= 0:
        raise ValueError("chunk_seconds must be positive")
    n_chunk = int(round(chunk_seconds * recording.sample_rate_hz))
    if n_chunk <= 0:
        raise ValueError("chunk_seconds shorter than one sample")
    n_chunks = recording.samples.size // n_chunk
    return [
        recording.replace(
            samples=recording.samples[i * n_chunk:(i + 1) * n_chunk],
            source_id="{}_{:04d}".format(recording.source_id, i),
        )
        for i in range(n_chunks)
    ]


def prepare(recording, rate_hz, min_seconds=None):
    """
    Resample to the operating rate then replicate-pad to a minimum length;
    the order used everywhere in the package.
    """
    recording = resample(recording, rate_hz)
    if min_seconds:
        recording = pad_by_replication(recording, min_seconds)
    return recording
