import numpy as np
from PCGLabPy.core.extractor import FeatureExtractor, multicolumn
from PCGLabPy.feature_extractors.context import BAND_LABELS


class BandPower(FeatureExtractor):
    """
    Relative power of the Welch periodogram (1024-point Hann, 50% overlap)
    in fixed frequency bands between 0 and 500 Hz.
    """
    order = 20

    @multicolumn(["band_power_" + b for b in BAND_LABELS])
    def band_power(self):
        return self.context.band_powers


class BandEntropy(FeatureExtractor):
    """
    Normalised Shannon entropy of the periodogram inside each band: 1 for a
    flat spectrum across the band, 0 for a single line or no power.
    """
    order = 100

    @multicolumn(["band_entropy_" + b for b in BAND_LABELS])
    def band_entropy(self):
        psd = self.context.psd
        out = np.zeros(len(BAND_LABELS))
        for i, mask in enumerate(self.context.band_masks):
            p = psd[mask]
            total = p.sum()
            if p.size < 2 or total <= 0:
                continue
            p = p[p > 0] / total
            out[i] = -np.sum(p * np.log(p)) / np.log(mask.sum())
        return out


class BandRatio(FeatureExtractor):
    """
    Power of each band divided by the power of the band below it.
    Undefined ratios (empty lower band) are imputed by the chain.
    """
    order = 110

    @multicolumn([
        "band_ratio_{}_over_{}".format(hi, lo)
        for lo, hi in zip(BAND_LABELS[:-1], BAND_LABELS[1:])
    ])
    def band_ratio(self):
        p = self.context.band_powers
        with np.errstate(divide='ignore', invalid='ignore'):
            return p[1:] / p[:-1]
