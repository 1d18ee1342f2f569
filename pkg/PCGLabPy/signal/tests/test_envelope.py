import numpy as np
import pytest
from PCGLabPy.core.errors import (
    WrongSampleRate, TooFewPeaks, DegenerateSegmentation
)
from PCGLabPy.signal.envelope import (
    homomorphic_envelope, segment_envelope, s1_quality_factor,
    s2_quality_factor
)
from PCGLabPy.signal.synth import SynthSpec, synthesize


def envelope_of(**kwargs):
    spec = SynthSpec(**dict(dict(heart_rate_bpm=60, duration_s=10), **kwargs))
    return homomorphic_envelope(synthesize(spec))


def test_envelope_positive():
    envelope = envelope_of(snr_db=10)
    assert envelope.shape == (10000,)
    assert (envelope > 0).all()
    with pytest.raises(WrongSampleRate):
        homomorphic_envelope(synthesize(SynthSpec(sample_rate_hz=4000)))


def test_segmentation_timing():
    segmentation = segment_envelope(envelope_of(), 1000)
    s1 = segmentation.s1_peaks
    s2 = segmentation.s2_peaks
    assert len(s1) >= 9
    assert len(s2) >= 9
    assert np.abs(s1 - np.round(s1)).max() <= 0.010
    assert np.abs(s2 - 0.35 - np.round(s2 - 0.35)).max() <= 0.010


@pytest.mark.parametrize("snr_db", [np.inf, 20.0, 30.0])
def test_envelope_peak_timing(snr_db):
    spec = SynthSpec(heart_rate_bpm=75, duration_s=8, snr_db=snr_db, seed=4)
    envelope = homomorphic_envelope(synthesize(spec))
    scheduled = np.r_[spec.s1_times[1:], spec.s2_times]
    scheduled = scheduled[scheduled < spec.duration_s - 0.1]
    for t0 in scheduled:
        start = int(round((t0 - 0.1) * 1000))
        window = envelope[start:start + 200]
        assert abs((start + np.argmax(window)) / 1000 - t0) <= 0.010


def test_single_event_autocorrelation():
    envelope = envelope_of(s2_amp_ratio=0.0)
    x = envelope - envelope.mean()
    lags = np.arange(300, 1500)
    corr = [np.dot(x[:-lag], x[lag:]) for lag in lags]
    assert lags[int(np.argmax(corr))] / 1000 == pytest.approx(1.0, abs=0.02)
    with pytest.raises(DegenerateSegmentation):
        segment_envelope(envelope, 1000)


def test_too_few_peaks():
    with pytest.raises(TooFewPeaks):
        segment_envelope(envelope_of(duration_s=1.2), 1000)
    with pytest.raises(TooFewPeaks):
        segment_envelope(np.ones(5000), 1000)


def test_quality_factors():
    clean = envelope_of()
    noisy = envelope_of(snr_db=0)
    clean_seg = segment_envelope(clean, 1000)
    assert s1_quality_factor(clean, clean_seg) > 1
    assert s2_quality_factor(clean, clean_seg) > 1
    assert s1_quality_factor(clean, clean_seg) > \
        s1_quality_factor(noisy, clean_seg)
