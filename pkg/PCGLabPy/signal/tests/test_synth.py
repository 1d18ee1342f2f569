import os
import numpy as np
import pytest
from numpy.testing import assert_array_equal
from PCGLabPy.core.io import Manifest
from PCGLabPy.signal.synth import (
    SynthSpec, synthesize, synthesize_components, snr_to_score, make_corpus,
    murmur_to_outcome
)


def test_deterministic():
    spec = SynthSpec(murmur=True, snr_db=5, seed=7)
    assert_array_equal(synthesize(spec).samples, synthesize(spec).samples)
    other = synthesize(SynthSpec(murmur=True, snr_db=5, seed=8)).samples
    assert not np.array_equal(synthesize(spec).samples, other)


@pytest.mark.parametrize("snr_db", [-10.0, 0.0, 12.5, 30.0])
def test_measured_snr(snr_db):
    clean, noise = synthesize_components(SynthSpec(snr_db=snr_db, seed=3))
    measured = 10 * np.log10(np.mean(clean ** 2) / np.mean(noise ** 2))
    assert measured == pytest.approx(snr_db, abs=0.5)
    recording = synthesize(SynthSpec(snr_db=snr_db, seed=3))
    assert np.abs(recording.samples).max() <= 1


def test_noiseless():
    clean, noise = synthesize_components(SynthSpec())
    assert not noise.any()
    assert len(clean) == 10000


def test_schedule():
    spec = SynthSpec(heart_rate_bpm=60, duration_s=10)
    assert len(spec.s1_times) == 10
    np.testing.assert_allclose(np.diff(spec.s1_times), 1.0)
    np.testing.assert_allclose(spec.s2_times - spec.s1_times, 0.35)


def test_murmur_inside_systole():
    base = dict(heart_rate_bpm=60, duration_s=4, seed=2, murmur_amp=0.1)
    plain = synthesize(SynthSpec(**base)).samples
    murmur = synthesize(SynthSpec(murmur=True, **base)).samples
    diff = np.abs(murmur - plain)
    t = np.arange(diff.size) / 1000
    phase = t % 1.0
    assert diff[(phase > 0.5) & (phase < 0.95)].max() == 0
    assert diff[(phase > 0.1) & (phase < 0.25)].max() > 0


def test_spec_validation():
    with pytest.raises(ValueError):
        SynthSpec(heart_rate_bpm=30)
    with pytest.raises(ValueError):
        SynthSpec(systole_fraction=0.6)
    with pytest.raises(ValueError):
        SynthSpec(sample_rate_hz=500, murmur_band_hz=(150, 400))


def test_snr_to_score():
    assert snr_to_score(20) == 5
    assert snr_to_score(15) == 5
    assert snr_to_score(12) == 4
    assert snr_to_score(7) == 3
    assert snr_to_score(0) == 2
    assert snr_to_score(-3) == 1
    assert murmur_to_outcome(True) == 'abnormal'


def test_make_corpus(tmp_path):
    out1 = str(tmp_path / "one")
    manifest, specs = make_corpus(10, out1, seed=5, duration_s=1.0)
    assert len(manifest) == 10
    assert len(specs) == 10
    assert len(os.listdir(os.path.join(out1, "recordings"))) == 10
    outcomes = list(manifest.df['outcome_label'])
    assert outcomes.count('abnormal') == 5
    for row, spec in zip(manifest, specs):
        assert row['quality_score'] == snr_to_score(spec.snr_db)
        assert row['outcome_label'] == murmur_to_outcome(spec.murmur)

    reread = Manifest.read(os.path.join(out1, "manifest.csv"))
    assert reread.paths == manifest.paths
    assert reread.load(0).duration == pytest.approx(1.0)

    out2 = str(tmp_path / "two")
    make_corpus(10, out2, seed=5, duration_s=1.0)
    with open(os.path.join(out1, "manifest.csv")) as f1, \
            open(os.path.join(out2, "manifest.csv")) as f2:
        assert f1.read() == f2.read()

    with pytest.raises(ValueError):
        make_corpus(0, out2)
