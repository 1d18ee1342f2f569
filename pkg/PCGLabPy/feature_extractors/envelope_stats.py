import numpy as np
from scipy.signal import correlate
from scipy.stats import skew, kurtosis
from PCGLabPy.core.extractor import FeatureExtractor, column
from PCGLabPy.signal.envelope import _peaks

ACF_MIN_LAG_S = 0.3
ACF_MAX_LAG_S = 2.0


class EnvelopeStats(FeatureExtractor):
    """
    Statistics of the homomorphic envelope, including its periodicity
    (autocorrelation peak between 0.3 and 2 s, i.e. 30-200 bpm).
    """
    order = 60

    @column
    def envelope_mean(self):
        return float(self.context.envelope.mean())

    @column
    def envelope_std(self):
        return float(self.context.envelope.std())

    @column
    def envelope_skewness(self):
        return float(skew(self.context.envelope))

    @column
    def envelope_kurtosis(self):
        return float(kurtosis(self.context.envelope))

    @column
    def envelope_peak_rate(self):
        """
        Number of envelope peaks per second
        """
        peaks = _peaks(self.context.envelope, self.context.rate_hz)
        return peaks.size / self.context.recording.duration

    def _acf(self):
        env = self.context.envelope
        centred = env - env.mean()
        acf = correlate(centred, centred, mode='full', method='fft')
        acf = acf[centred.size - 1:]
        if acf[0] <= 0:
            return None
        rate = self.context.rate_hz
        lo = int(round(ACF_MIN_LAG_S * rate))
        hi = min(int(round(ACF_MAX_LAG_S * rate)), acf.size - 1)
        if hi <= lo:
            return None
        window = acf[lo:hi + 1] / acf[0]
        return window, lo

    @column
    def envelope_acf_max(self):
        acf = self._acf()
        if acf is None:
            return np.nan
        window, _ = acf
        return float(window.max())

    @column
    def envelope_acf_lag(self):
        """
        Lag (s) of the autocorrelation maximum
        """
        acf = self._acf()
        if acf is None:
            return np.nan
        window, lo = acf
        return (lo + int(np.argmax(window))) / self.context.rate_hz
