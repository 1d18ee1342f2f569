import numpy as np
from PCGLabPy.core.extractor import FeatureExtractor, column

ROLLOFF_FRACTION = 0.85


class SpectralShape(FeatureExtractor):
    """
    Descriptors of the shape of the Welch periodogram. All are 0 for a
    signal without power.
    """
    order = 30

    def _distribution(self):
        total = self.context.total_power
        if total <= 0:
            return None
        return self.context.psd / total

    @column
    def spectral_centroid(self):
        p = self._distribution()
        if p is None:
            return 0.0
        return float(np.sum(self.context.frequencies * p))

    @column
    def spectral_bandwidth(self):
        p = self._distribution()
        if p is None:
            return 0.0
        f = self.context.frequencies
        centroid = np.sum(f * p)
        return float(np.sqrt(np.sum((f - centroid) ** 2 * p)))

    @column
    def spectral_rolloff(self):
        """
        Frequency below which 85% of the power lies
        """
        p = self._distribution()
        if p is None:
            return 0.0
        idx = np.searchsorted(np.cumsum(p), ROLLOFF_FRACTION)
        idx = min(idx, p.size - 1)
        return float(self.context.frequencies[idx])

    @column
    def spectral_flatness(self):
        """
        Geometric over arithmetic mean of the periodogram
        """
        psd = self.context.psd
        mean = psd.mean()
        if mean <= 0:
            return 0.0
        tiny = np.finfo(float).tiny
        return float(np.exp(np.mean(np.log(np.maximum(psd, tiny)))) / mean)

    @column
    def spectral_crest(self):
        psd = self.context.psd
        mean = psd.mean()
        if mean <= 0:
            return 0.0
        return float(psd.max() / mean)
