"""
Intermediate results shared between the feature families of one recording
"""
import numpy as np
from scipy.signal import welch
from PCGLabPy.core.errors import SegmentationError
from PCGLabPy.signal.envelope import homomorphic_envelope, segment_envelope

WELCH_NPERSEG = 1024
BAND_EDGES_HZ = (0, 25, 50, 100, 150, 200, 300, 400, 500)


def band_label(low, high):
    return "{}_{}".format(low, high)


BAND_LABELS = [
    band_label(lo, hi) for lo, hi in zip(BAND_EDGES_HZ[:-1], BAND_EDGES_HZ[1:])
]


class SignalContext:
    def __init__(self, recording):
        """
        Lazily computed, cached intermediate results of a recording, handed
        to every `FeatureExtractor` of the `FeatureChain` so the envelope,
        segmentation and periodogram are only computed once.

        Parameters
        ----------
        recording : PcgRecording
            Recording at 1 kHz
        """
        self.recording = recording
        self._cache = {}

    def _cached(self, key, func):
        if key not in self._cache:
            self._cache[key] = func()
        return self._cache[key]

    @property
    def samples(self):
        return self.recording.samples

    @property
    def rate_hz(self):
        return self.recording.sample_rate_hz

    @property
    def envelope(self):
        return self._cached(
            'envelope', lambda: homomorphic_envelope(self.recording)
        )

    def _segment(self):
        try:
            return segment_envelope(self.envelope, self.rate_hz)
        except SegmentationError:
            return None

    @property
    def segmentation(self):
        """
        `Segmentation` of the recording, or None if the envelope peaks
        could not be paired into cycles.
        """
        return self._cached('segmentation', self._segment)

    def _welch(self):
        x = self.samples
        nperseg = min(WELCH_NPERSEG, x.size)
        return welch(x, fs=self.rate_hz, window='hann', nperseg=nperseg,
                     noverlap=nperseg // 2)

    @property
    def frequencies(self):
        return self._cached('welch', self._welch)[0]

    @property
    def psd(self):
        return self._cached('welch', self._welch)[1]

    @property
    def total_power(self):
        return float(self.psd.sum())

    @property
    def band_masks(self):
        """
        Boolean masks of the periodogram bins in each band. Bands are
        closed on the left, the last band also contains the Nyquist bin.
        """
        def masks():
            f = self.frequencies
            out = []
            n_bands = len(BAND_EDGES_HZ) - 1
            for i in range(n_bands):
                lo, hi = BAND_EDGES_HZ[i], BAND_EDGES_HZ[i + 1]
                if i == n_bands - 1:
                    out.append((f >= lo) & (f <= hi))
                else:
                    out.append((f >= lo) & (f < hi))
            return out
        return self._cached('band_masks', masks)

    @property
    def band_powers(self):
        """
        Relative power of each band (zeros when the signal has no power)
        """
        def powers():
            total = self.total_power
            if total <= 0:
                return np.zeros(len(BAND_LABELS))
            return np.array([self.psd[m].sum() / total
                             for m in self.band_masks])
        return self._cached('band_powers', powers)
