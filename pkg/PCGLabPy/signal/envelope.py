"""
Envelope extraction and envelope-peak segmentation of heart sounds into
S1, systole, S2 and diastole intervals
"""
import numpy as np
from scipy.signal import hilbert, butter, filtfilt, find_peaks
from PCGLabPy.core.errors import (
    WrongSampleRate, TooFewPeaks, DegenerateSegmentation
)

ENVELOPE_RATE_HZ = 1000
ENVELOPE_EPS = 1e-10
ENVELOPE_CUTOFF_HZ = 8.0
MIN_PEAK_DISTANCE_S = 0.2
PROMINENCE_FRACTION = 0.25
SOUND_HALF_WIDTH_S = 0.05
MIN_PEAKS = 4

# Alternating gaps closer than this ratio cannot be told apart as
# systole/diastole
DEGENERATE_GAP_RATIO = 0.9


def homomorphic_envelope(recording):
    """
    Homomorphic envelope: exp(lowpass(log(|analytic(x)| + eps))) with a
    first-order 8 Hz low-pass applied forwards and backwards.

    Parameters
    ----------
    recording : PcgRecording
        Recording at 1 kHz

    Returns
    -------
    envelope : ndarray
        Strictly positive, same length as the recording
    """
    if recording.sample_rate_hz != ENVELOPE_RATE_HZ:
        raise WrongSampleRate(
            "Envelope requires {} Hz, got {} Hz"
            .format(ENVELOPE_RATE_HZ, recording.sample_rate_hz)
        )
    x = recording.samples
    log_magnitude = np.log(np.abs(hilbert(x)) + ENVELOPE_EPS)
    b, a = butter(1, ENVELOPE_CUTOFF_HZ, btype='low', fs=ENVELOPE_RATE_HZ)
    if x.size > 3 * max(len(a), len(b)):
        smoothed = filtfilt(b, a, log_magnitude)
    else:
        smoothed = np.full_like(log_magnitude, log_magnitude.mean())
    return np.exp(smoothed)


class Segmentation:
    def __init__(self, s1_peaks, s2_peaks, duration,
                 half_width=SOUND_HALF_WIDTH_S):
        """
        Cardiac-cycle segmentation built from paired S1/S2 peak times.

        Intervals are lists of (start_s, end_s). S1/S2 intervals are
        +-`half_width` around each peak (clipped to the recording); systole
        runs from the end of an S1 interval to the start of the following S2
        interval, diastole from the end of an S2 interval to the start of
        the following S1 interval.

        Parameters
        ----------
        s1_peaks : ndarray
            S1 peak times in seconds
        s2_peaks : ndarray
            S2 peak times in seconds
        duration : float
            Duration of the recording in seconds
        half_width : float
        """
        self.s1_peaks = np.sort(np.asarray(s1_peaks, dtype=float))
        self.s2_peaks = np.sort(np.asarray(s2_peaks, dtype=float))
        self.duration = duration

        def around(peaks):
            return [
                (max(0.0, p - half_width), min(duration, p + half_width))
                for p in peaks
            ]

        self.s1_intervals = around(self.s1_peaks)
        self.s2_intervals = around(self.s2_peaks)

        events = sorted(
            [(p, 1) for p in self.s1_peaks] + [(p, 2) for p in self.s2_peaks]
        )
        self.systole_intervals = []
        self.diastole_intervals = []
        self.systole_durations = []
        self.diastole_durations = []
        for (t0, k0), (t1, k1) in zip(events[:-1], events[1:]):
            start = min(duration, t0 + half_width)
            end = max(0.0, t1 - half_width)
            if k0 == 1 and k1 == 2:
                self.systole_durations.append(t1 - t0)
                if end > start:
                    self.systole_intervals.append((start, end))
            elif k0 == 2 and k1 == 1:
                self.diastole_durations.append(t1 - t0)
                if end > start:
                    self.diastole_intervals.append((start, end))

    def __repr__(self):
        return "Segmentation(n_s1={}, n_s2={})".format(
            self.s1_peaks.size, self.s2_peaks.size
        )


def _peaks(envelope, rate_hz):
    distance = max(1, int(round(MIN_PEAK_DISTANCE_S * rate_hz)))
    candidates, _ = find_peaks(envelope, distance=distance)
    if candidates.size == 0:
        return candidates
    threshold = PROMINENCE_FRACTION * np.median(envelope[candidates])
    peaks, _ = find_peaks(envelope, distance=distance, prominence=threshold)
    return peaks


def segment_envelope(envelope, rate_hz):
    """
    Label envelope peaks as S1 or S2 and derive the cycle intervals.

    Peaks are picked with a 200 ms minimum distance and a prominence of at
    least a quarter of the median candidate height. Peaks alternate S1/S2;
    the phase is chosen so that S1 -> S2 gaps (systole) are on average
    shorter than S2 -> S1 gaps (diastole).

    Parameters
    ----------
    envelope : ndarray
    rate_hz : int

    Returns
    -------
    Segmentation

    Raises
    ------
    TooFewPeaks
        Fewer than four usable peaks
    DegenerateSegmentation
        Alternating gaps are indistinguishable (single event per cycle)
    """
    envelope = np.asarray(envelope, dtype=float)
    peaks = _peaks(envelope, rate_hz)
    if peaks.size < MIN_PEAKS:
        raise TooFewPeaks("Found {} envelope peaks, need at least {}"
                          .format(peaks.size, MIN_PEAKS))

    times = peaks / rate_hz
    gaps = np.diff(times)
    even = gaps[0::2].mean()
    odd = gaps[1::2].mean()
    short, long_ = min(even, odd), max(even, odd)
    if short / long_ > DEGENERATE_GAP_RATIO:
        raise DegenerateSegmentation(
            "Alternating peak gaps ({:.3f} s, {:.3f} s) cannot be paired"
            .format(even, odd)
        )
    if even <= odd:
        s1, s2 = times[0::2], times[1::2]
    else:
        s1, s2 = times[1::2], times[0::2]
    return Segmentation(s1, s2, envelope.size / rate_hz)


def _mean_over(envelope, rate_hz, intervals):
    if not intervals:
        return 0.0
    idx = np.concatenate([
        np.arange(int(round(a * rate_hz)),
                  max(int(round(a * rate_hz)) + 1, int(round(b * rate_hz))))
        for a, b in intervals
    ])
    idx = idx[(idx >= 0) & (idx < envelope.size)]
    if idx.size == 0:
        return 0.0
    return float(envelope[idx].mean())


def _quality_factor(envelope, segmentation, rate_hz, sound_intervals):
    sound = _mean_over(envelope, rate_hz, sound_intervals)
    systole = _mean_over(envelope, rate_hz, segmentation.systole_intervals)
    diastole = _mean_over(envelope, rate_hz, segmentation.diastole_intervals)
    denominator = 0.5 * (systole + diastole)
    if denominator < 1e-12:
        return 0.0
    return sound / denominator


def s2_quality_factor(envelope, segmentation, rate_hz=ENVELOPE_RATE_HZ):
    """
    Mean envelope height over the S2 intervals divided by the average of
    the mean heights over systole and diastole. 0 when the denominator
    vanishes.
    """
    return _quality_factor(envelope, segmentation, rate_hz,
                           segmentation.s2_intervals)


def s1_quality_factor(envelope, segmentation, rate_hz=ENVELOPE_RATE_HZ):
    """
    Same as `s2_quality_factor` with the S1 intervals in the numerator.
    """
    return _quality_factor(envelope, segmentation, rate_hz,
                           segmentation.s1_intervals)
