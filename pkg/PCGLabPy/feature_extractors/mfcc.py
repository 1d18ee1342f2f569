import warnings
import numpy as np
import librosa
from scipy.fft import dct
from PCGLabPy.core.extractor import FeatureExtractor, multicolumn

N_MFCC = 13
N_MELS = 26
FRAME_S = 0.025
HOP_S = 0.010
N_FFT = 256
LOG_FLOOR = 1e-10


def _mfcc_names():
    return (["mfcc_{}_mean".format(i) for i in range(N_MFCC)] +
            ["mfcc_{}_std".format(i) for i in range(N_MFCC)])


class Mfcc(FeatureExtractor):
    """
    Mel-frequency cepstral coefficients of 25 ms Hann frames (10 ms hop),
    26 mel filters between 0 Hz and Nyquist, summarised by their mean and
    standard deviation over frames. The FFT has 256 points, or one frame
    when a frame is longer.
    """
    order = 40

    def __init__(self, **kwargs):
        super().__init__(**kwargs)
        self._filterbanks = {}

    def _filterbank(self, rate_hz, n_fft):
        key = (rate_hz, n_fft)
        if key not in self._filterbanks:
            with warnings.catch_warnings():
                warnings.simplefilter('ignore', UserWarning)
                self._filterbanks[key] = librosa.filters.mel(
                    sr=rate_hz, n_fft=n_fft, n_mels=N_MELS,
                    fmin=0.0, fmax=rate_hz / 2
                )
        return self._filterbanks[key]

    def coefficients(self):
        """
        MFCC matrix of the recording, shape (N_MFCC, n_frames)
        """
        rate = self.context.rate_hz
        win_length = int(round(FRAME_S * rate))
        hop_length = int(round(HOP_S * rate))
        n_fft = max(N_FFT, win_length)
        spectrum = librosa.stft(
            self.context.samples, n_fft=n_fft, hop_length=hop_length,
            win_length=win_length, window='hann', center=True
        )
        power = np.abs(spectrum) ** 2
        mel = self._filterbank(rate, n_fft) @ power
        log_mel = np.log(mel + LOG_FLOOR)
        return dct(log_mel, type=2, axis=0, norm='ortho')[:N_MFCC]

    @multicolumn(_mfcc_names())
    def mfcc(self):
        c = self.coefficients()
        return np.concatenate([c.mean(axis=1), c.std(axis=1)])
