import numpy as np
from scipy.stats import skew, kurtosis
from PCGLabPy.core.extractor import FeatureExtractor, column


class SignalStats(FeatureExtractor):
    """
    Time-domain statistics of the raw samples
    """
    order = 70

    @column
    def rms(self):
        return float(np.sqrt(np.mean(self.context.samples ** 2)))

    @column
    def skewness(self):
        return float(skew(self.context.samples))

    @column
    def kurtosis(self):
        return float(kurtosis(self.context.samples))

    @staticmethod
    def _mobility(x):
        return np.sqrt(np.var(np.diff(x)) / np.var(x))

    @column
    def hjorth_mobility(self):
        return float(self._mobility(self.context.samples))

    @column
    def hjorth_complexity(self):
        x = self.context.samples
        return float(self._mobility(np.diff(x)) / self._mobility(x))
