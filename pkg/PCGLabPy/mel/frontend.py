"""
Log-mel spectrograms of fixed shape (n_frames x n_mels), the input of the
spectrogram encoder
"""
import os
import numpy as np
import pandas as pd
import librosa
from tqdm import tqdm
from PCGLabPy.core.errors import ShapeMismatch
from PCGLabPy.signal.preprocessing import resample, pad_by_replication
from PCGLabPy.stats.welfords import RunningStats
from PCGLabPy.utils.files import create_directory

NORM_MODES = ('instance', 'corpus')


class MelSpectrogram:
    def __init__(self, grid, rate_hz, norm_stats=None):
        """
        Normalised time x mel grid.

        Parameters
        ----------
        grid : ndarray
            Shape (n_frames, n_mels), time-major
        rate_hz : int
            Operating rate of the recording it was computed from
        norm_stats : tuple
            (mean, std) that were removed from the log-mel values
        """
        grid = np.asarray(grid, dtype=np.float64)
        if grid.ndim != 2:
            raise ShapeMismatch("MelSpectrogram grid must be 2-D")
        self.grid = grid
        self.rate_hz = int(rate_hz)
        self.norm_stats = norm_stats

    @property
    def shape(self):
        return self.grid.shape

    def replace(self, grid):
        return MelSpectrogram(grid, self.rate_hz, self.norm_stats)

    def __repr__(self):
        return "MelSpectrogram({}x{}, {} Hz)".format(*self.shape,
                                                    self.rate_hz)


def standardize(grid, std_floor=1e-6):
    """
    Zero mean, unit standard deviation (std floored at `std_floor`)

    Returns
    -------
    grid : ndarray
    stats : tuple
        (mean, std) removed
    """
    mean = float(grid.mean())
    std = max(float(grid.std()), std_floor)
    return (grid - mean) / std, (mean, std)


class MelFrontend:
    def __init__(self, rate_hz=1000, n_mels=64, n_frames=96, win_s=0.064,
                 hop_s=0.010, n_fft=None, fmin_hz=20.0, fmax_fraction=0.45,
                 log_floor=1e-10, std_floor=1e-6, norm_mode='instance',
                 norm_stats=None, max_pitch_shift=8,
                 stretch_range=(0.8, 1.25)):
        """
        STFT (Hann window) -> mel filterbank -> log -> crop to `n_frames`
        -> standardisation.

        Parameters
        ----------
        rate_hz : int
            Recordings are resampled to this rate
        n_mels : int
        n_frames : int
        win_s : float
            STFT window length
        hop_s : float
            STFT hop
        n_fft : int
            FFT size, defaults to the smallest power of two covering both
            the window and one second (bins of at most 1 Hz)
        fmin_hz : float
            Lowest mel edge
        fmax_fraction : float
            Highest mel edge, as a fraction of `rate_hz`
        log_floor : float
            Added to the mel power before the log
        std_floor : float
        norm_mode : str
            "instance" standardises every spectrogram by its own statistics,
            "corpus" by `norm_stats`
        norm_stats : tuple
            Corpus (mean, std) of the log-mel values
        max_pitch_shift : int
            Largest mel-bin shift drawn by `make_views`
        stretch_range : tuple
            Range of the time-stretch factor drawn by `make_views`
        """
        if norm_mode not in NORM_MODES:
            raise ValueError("norm_mode must be one of {}".format(NORM_MODES))
        self.rate_hz = int(rate_hz)
        self.n_mels = int(n_mels)
        self.n_frames = int(n_frames)
        self.win = int(round(win_s * self.rate_hz))
        self.hop = int(round(hop_s * self.rate_hz))
        if self.win < 2 or self.hop < 1:
            raise ValueError("STFT window/hop too short for {} Hz"
                             .format(self.rate_hz))
        if n_fft is None:
            n_fft = 1 << int(np.ceil(np.log2(max(self.win, self.rate_hz))))
        self.n_fft = int(n_fft)
        self.fmin_hz = float(fmin_hz)
        self.fmax_hz = float(fmax_fraction) * self.rate_hz
        self.log_floor = float(log_floor)
        self.std_floor = float(std_floor)
        self.norm_mode = norm_mode
        self.norm_stats = None if norm_stats is None else tuple(norm_stats)
        self.max_pitch_shift = int(max_pitch_shift)
        self.stretch_range = tuple(float(f) for f in stretch_range)
        self._filterbank = None

    @classmethod
    def from_config(cls, config, norm_stats=None):
        """
        Frontend of a resolved run configuration
        """
        return cls(norm_stats=norm_stats, **config['mel'])

    @property
    def filterbank(self):
        """Slaney-normalised mel filters, shape (n_mels, n_fft // 2 + 1)"""
        if self._filterbank is None:
            self._filterbank = librosa.filters.mel(
                sr=self.rate_hz, n_fft=self.n_fft, n_mels=self.n_mels,
                fmin=self.fmin_hz, fmax=self.fmax_hz
            )
        return self._filterbank

    @property
    def center_frequencies(self):
        return librosa.mel_frequencies(self.n_mels + 2, fmin=self.fmin_hz,
                                       fmax=self.fmax_hz)[1:-1]

    @property
    def min_seconds(self):
        """Shortest recording giving n_frames full frames"""
        return ((self.n_frames - 1) * self.hop + self.win // 2) / self.rate_hz

    def prepare(self, recording):
        recording = resample(recording, self.rate_hz)
        return pad_by_replication(recording, self.min_seconds)

    def log_mel_full(self, recording):
        """
        Log-mel power of the whole recording, shape (frames, n_mels)
        """
        recording = self.prepare(recording)
        stft = librosa.stft(
            np.asarray(recording.samples, dtype=np.float64),
            n_fft=self.n_fft, hop_length=self.hop, win_length=self.win,
            window='hann', center=True, pad_mode='constant',
        )
        power = np.abs(stft) ** 2
        mel = self.filterbank @ power
        return np.log(mel + self.log_floor).T

    def crop(self, grid, rng=None):
        """
        `n_frames` consecutive frames: a random window when `rng` is given,
        the central window otherwise
        """
        n = grid.shape[0]
        excess = n - self.n_frames
        if excess < 0:
            raise ShapeMismatch("{} frames available, {} required"
                                .format(n, self.n_frames))
        start = excess // 2 if rng is None else rng.randint(0, excess + 1)
        return grid[start:start + self.n_frames]

    def normalize(self, grid):
        if self.norm_mode == 'instance':
            return standardize(grid, self.std_floor)
        if self.norm_stats is None:
            raise ValueError("Corpus normalisation requires norm_stats")
        mean, std = self.norm_stats
        return (grid - mean) / max(std, self.std_floor), self.norm_stats

    def log_mel(self, recording, rng=None):
        """
        Normalised log-mel spectrogram of a recording.

        Parameters
        ----------
        recording : PcgRecording
            At any rate and length (short recordings are replicate-padded)
        rng : np.random.RandomState
            Random crop when given (training), central crop otherwise

        Returns
        -------
        MelSpectrogram
        """
        grid = self.crop(self.log_mel_full(recording), rng)
        grid, stats = self.normalize(grid)
        return MelSpectrogram(grid, self.rate_hz, stats)


def log_mel(recording, config=None, rng=None):
    """
    Normalised (n_frames x n_mels) log-mel spectrogram with the frontend
    parameters of the `mel` config section
    """
    from PCGLabPy.utils.config import resolve_config
    return MelFrontend.from_config(resolve_config(config)).log_mel(
        recording, rng
    )


def corpus_norm_stats(manifests, frontend):
    """
    Mean and standard deviation of the centre-cropped log-mel values of
    every recording of one or more manifests.

    Returns
    -------
    tuple
        (mean, std)
    """
    if not isinstance(manifests, (list, tuple)):
        manifests = [manifests]
    stats = RunningStats()
    items = [(m, i) for m in manifests for i in range(len(m))]
    for manifest, index in tqdm(items, desc="Corpus log-mel stats"):
        grid = frontend.crop(frontend.log_mel_full(manifest.load(index)))
        stats.update(grid)
    return stats.mean, stats.std


def write_mel_csv(spec, path):
    create_directory(os.path.dirname(path))
    df = pd.DataFrame(
        spec.grid, columns=["mel_{}".format(i) for i in range(spec.shape[1])]
    )
    df.index.name = 'frame'
    df.to_csv(path, float_format='%.9g', lineterminator='\n')


def write_mel_blob(spec, path):
    """
    Raw little-endian float32 values, row-major (time-major)
    """
    create_directory(os.path.dirname(path))
    with open(path, 'wb') as f:
        f.write(np.ascontiguousarray(spec.grid, dtype='<f4').tobytes())


def read_mel_blob(path, n_frames=96, n_mels=64, rate_hz=1000):
    grid = np.fromfile(path, dtype='<f4').astype(np.float64)
    if grid.size != n_frames * n_mels:
        raise ShapeMismatch("{} holds {} values, expected {}x{}".format(
            path, grid.size, n_frames, n_mels
        ))
    return MelSpectrogram(grid.reshape(n_frames, n_mels), rate_hz)
