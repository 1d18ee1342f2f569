import librosa
import numpy as np
from PCGLabPy.core.extractor import FeatureExtractor, column

FRAME_S = 0.025
HOP_S = 0.010


class ZeroCrossing(FeatureExtractor):
    """
    Zero-crossing rate of 25 ms frames with a 10 ms hop
    """
    order = 50

    def _rate(self):
        rate = self.context.rate_hz
        return librosa.feature.zero_crossing_rate(
            np.ascontiguousarray(self.context.samples),
            frame_length=int(round(FRAME_S * rate)),
            hop_length=int(round(HOP_S * rate)),
            center=True,
        )[0]

    @column
    def zcr_mean(self):
        return float(self._rate().mean())

    @column
    def zcr_std(self):
        return float(self._rate().std())
