import os
import warnings
import numpy as np
from scipy.io import wavfile
from PCGLabPy.core.errors import UnsupportedFormat, CorruptHeader, EmptyAudio
from PCGLabPy.utils.files import create_directory

INT16_SCALE = 32768.0


class PcgRecording:
    def __init__(self, samples, sample_rate_hz, source_id='', subject_id=None):
        """
        Mono phonocardiogram recording, the signal carrier passed between
        every stage of the package.

        Parameters
        ----------
        samples : ndarray
            Amplitudes in [-1, 1]
        sample_rate_hz : int
            Sampling frequency of `samples`
        source_id : str
            Identifier of the recording (typically the manifest path)
        subject_id : str or None
            Identifier of the subject the recording belongs to
        """
        samples = np.asarray(samples, dtype=np.float64)
        if samples.ndim != 1:
            raise UnsupportedFormat("PcgRecording samples must be 1-D")
        if samples.size == 0:
            raise EmptyAudio("PcgRecording contains no samples")
        if not np.isfinite(samples).all():
            raise ValueError("PcgRecording contains non-finite samples")
        if int(sample_rate_hz) <= 0:
            raise ValueError("sample_rate_hz must be positive")

        self.samples = samples
        self.samples.setflags(write=False)
        self.sample_rate_hz = int(sample_rate_hz)
        self.source_id = source_id
        self.subject_id = subject_id

    def __len__(self):
        return self.samples.size

    def __repr__(self):
        return "PcgRecording({}, {} Hz, {:.3f} s)".format(
            self.source_id, self.sample_rate_hz, self.duration
        )

    @property
    def duration(self):
        return self.samples.size / self.sample_rate_hz

    def replace(self, samples=None, sample_rate_hz=None, source_id=None):
        """
        Obtain a new recording sharing the provenance of this one.
        """
        return PcgRecording(
            self.samples if samples is None else samples,
            self.sample_rate_hz if sample_rate_hz is None else sample_rate_hz,
            self.source_id if source_id is None else source_id,
            self.subject_id,
        )


def load_wav(path, source_id=None, subject_id=None):
    """
    Read a mono PCM WAV file (16-bit integer or 32-bit float).

    Integer samples are scaled into [-1, 1] by dividing by 32768.

    Parameters
    ----------
    path : str
    source_id : str
        Defaults to `path`
    subject_id : str or None

    Returns
    -------
    PcgRecording
    """
    if not os.path.exists(path):
        raise FileNotFoundError("File does not exist: {}".format(path))
    try:
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', wavfile.WavFileWarning)
            rate, data = wavfile.read(path)
    except ValueError as err:
        raise CorruptHeader("Cannot parse WAV header of {}: {}"
                            .format(path, err)) from err

    if data.ndim != 1:
        raise UnsupportedFormat(
            "{} has {} channels, only mono recordings are supported"
            .format(path, data.shape[1])
        )
    if data.dtype == np.int16:
        samples = data.astype(np.float64) / INT16_SCALE
    elif data.dtype == np.float32:
        samples = data.astype(np.float64)
        if not np.isfinite(samples).all():
            raise UnsupportedFormat("{} contains non-finite samples"
                                    .format(path))
        if np.abs(samples).max(initial=0) > 1:
            warnings.warn("Clipping float samples of {} to [-1, 1]"
                          .format(path), UserWarning)
            samples = np.clip(samples, -1, 1)
    else:
        raise UnsupportedFormat(
            "{} has sample type {}, expected 16-bit PCM or 32-bit float"
            .format(path, data.dtype)
        )
    if samples.size == 0:
        raise EmptyAudio("{} contains no samples".format(path))
    if rate <= 0:
        raise CorruptHeader("{} declares a sample rate of {}"
                            .format(path, rate))

    source_id = path if source_id is None else source_id
    return PcgRecording(samples, rate, source_id, subject_id)


def write_wav(recording, path, subtype='int16'):
    """
    Write a recording to a mono WAV file.

    Parameters
    ----------
    recording : PcgRecording
    path : str
    subtype : str
        'int16' (PCM, amplitude * 32768 rounded and clipped) or 'float32'
    """
    create_directory(os.path.dirname(path))
    if subtype == 'int16':
        data = np.round(recording.samples * INT16_SCALE)
        data = np.clip(data, -32768, 32767).astype(np.int16)
    elif subtype == 'float32':
        data = recording.samples.astype(np.float32)
    else:
        raise UnsupportedFormat("Unknown WAV subtype: {}".format(subtype))
    wavfile.write(path, recording.sample_rate_hz, data)
