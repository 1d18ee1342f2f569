"""
Synthetic phonocardiograms with a known schedule of heart sounds, murmur
content and noise level. They are the ground truth used throughout the
test-suite and by the `pcg_synth` executable.
"""
import os
import numpy as np
from scipy.signal import butter, sosfiltfilt
from tqdm import tqdm
from PCGLabPy.core.io.recording import PcgRecording, write_wav
from PCGLabPy.core.io.manifest import Manifest, AGE_GROUPS
from PCGLabPy.utils.files import create_directory

SOUND_SIGMA_S = 0.025
S1_AMPLITUDE = 0.5

# (minimum snr_db, quality score), checked in order
DEFAULT_SCORE_THRESHOLDS = ((15.0, 5), (10.0, 4), (5.0, 3), (0.0, 2))


class SynthSpec:
    def __init__(self, heart_rate_bpm=72.0, duration_s=10.0,
                 sample_rate_hz=1000, s1_freq_hz=60.0, s2_freq_hz=90.0,
                 s2_amp_ratio=0.8, systole_fraction=0.35, murmur=False,
                 murmur_band_hz=(150.0, 400.0), murmur_amp=0.2,
                 snr_db=np.inf, seed=0):
        """
        Parameters of one synthetic recording.

        Parameters
        ----------
        heart_rate_bpm : float
            In [40, 200]
        duration_s : float
        sample_rate_hz : int
        s1_freq_hz, s2_freq_hz : float
            Carrier frequencies of the Gaussian-windowed heart sounds
        s2_amp_ratio : float
            S2 peak amplitude divided by S1 peak amplitude
        systole_fraction : float
            Position of S2 inside the cycle, in (0, 0.5)
        murmur : bool
            Add band-limited noise inside systole
        murmur_band_hz : tuple
        murmur_amp : float
            RMS of the murmur noise
        snr_db : float
            Ratio of clean-signal power to added white-noise power.
            np.inf adds no noise.
        seed : int
        """
        self.heart_rate_bpm = float(heart_rate_bpm)
        self.duration_s = float(duration_s)
        self.sample_rate_hz = int(sample_rate_hz)
        self.s1_freq_hz = float(s1_freq_hz)
        self.s2_freq_hz = float(s2_freq_hz)
        self.s2_amp_ratio = float(s2_amp_ratio)
        self.systole_fraction = float(systole_fraction)
        self.murmur = bool(murmur)
        self.murmur_band_hz = tuple(float(f) for f in murmur_band_hz)
        self.murmur_amp = float(murmur_amp)
        self.snr_db = float(snr_db)
        self.seed = int(seed)
        self.validate()

    def validate(self):
        if not 40 <= self.heart_rate_bpm <= 200:
            raise ValueError("heart_rate_bpm must be in [40, 200]")
        if self.duration_s <= 0:
            raise ValueError("duration_s must be positive")
        if self.sample_rate_hz <= 0:
            raise ValueError("sample_rate_hz must be positive")
        if not 0 < self.systole_fraction < 0.5:
            raise ValueError("systole_fraction must be in (0, 0.5)")
        low, high = self.murmur_band_hz
        if not 0 < low < high < self.sample_rate_hz / 2:
            raise ValueError("murmur_band_hz must lie below Nyquist")

    @property
    def cycle_s(self):
        return 60.0 / self.heart_rate_bpm

    @property
    def s1_times(self):
        n_cycles = int(np.ceil(self.duration_s / self.cycle_s))
        times = np.arange(n_cycles) * self.cycle_s
        return times[times < self.duration_s]

    @property
    def s2_times(self):
        times = self.s1_times + self.systole_fraction * self.cycle_s
        return times[times < self.duration_s]

    def as_dict(self):
        return dict(vars(self))


def _sounds(t, times, freq, amplitude):
    out = np.zeros_like(t)
    for t0 in times:
        dt = t - t0
        near = np.abs(dt) < 5 * SOUND_SIGMA_S
        out[near] += amplitude * np.exp(
            -0.5 * (dt[near] / SOUND_SIGMA_S) ** 2
        ) * np.cos(2 * np.pi * freq * dt[near])
    return out


def _systole_mask(t, spec):
    mask = np.zeros_like(t)
    for s1, s2 in zip(spec.s1_times, spec.s2_times):
        start = s1 + 2 * SOUND_SIGMA_S
        end = s2 - 2 * SOUND_SIGMA_S
        inside = (t >= start) & (t < end)
        n = int(inside.sum())
        if n > 0:
            mask[inside] = np.hanning(n + 2)[1:-1]
    return mask


def synthesize_components(spec):
    """
    Build the clean heart-sound signal and the additive noise separately.

    Both are scaled by the same factor so their sum stays inside [-1, 1].

    Returns
    -------
    clean : ndarray
        Heart sounds (+ murmur)
    noise : ndarray
        White Gaussian noise at `spec.snr_db` relative to `clean`
    """
    spec.validate()
    rng = np.random.RandomState(spec.seed)
    rate = spec.sample_rate_hz
    n = int(round(spec.duration_s * rate))
    t = np.arange(n) / rate

    clean = _sounds(t, spec.s1_times, spec.s1_freq_hz, S1_AMPLITUDE)
    clean += _sounds(t, spec.s2_times, spec.s2_freq_hz,
                     S1_AMPLITUDE * spec.s2_amp_ratio)

    if spec.murmur:
        sos = butter(4, spec.murmur_band_hz, btype='bandpass', fs=rate,
                     output='sos')
        murmur = sosfiltfilt(sos, rng.standard_normal(n))
        murmur /= np.sqrt(np.mean(murmur ** 2)) + 1e-12
        clean += spec.murmur_amp * murmur * _systole_mask(t, spec)

    noise = np.zeros(n)
    if np.isfinite(spec.snr_db):
        signal_power = np.mean(clean ** 2)
        raw = rng.standard_normal(n)
        target_power = signal_power / 10 ** (spec.snr_db / 10)
        noise = raw * np.sqrt(target_power / np.mean(raw ** 2))

    peak = np.abs(clean + noise).max(initial=0)
    if peak > 1:
        scale = 0.999 / peak
        clean *= scale
        noise *= scale
    return clean, noise


def synthesize(spec, source_id='synthetic', subject_id=None):
    """
    Synthesize a recording. Per cycle of 60 / heart_rate_bpm seconds: S1 at
    the cycle start, S2 at `systole_fraction` of the cycle (both Gaussian
    windowed tones, sigma 25 ms), optional murmur inside systole, and white
    noise at `snr_db`. Identical specs give bit-identical samples.

    Returns
    -------
    PcgRecording
    """
    clean, noise = synthesize_components(spec)
    return PcgRecording(clean + noise, spec.sample_rate_hz, source_id,
                        subject_id)


def snr_to_score(snr_db, thresholds=DEFAULT_SCORE_THRESHOLDS):
    """
    Quality score (1-5) of a synthetic recording from its SNR.
    """
    for minimum, score in thresholds:
        if snr_db >= minimum:
            return score
    return 1


def murmur_to_outcome(murmur):
    return 'abnormal' if murmur else 'normal'


def _random_demographics(rng):
    age_group = AGE_GROUPS[rng.randint(len(AGE_GROUPS))]
    height_range = dict(neonate=(45, 60), infant=(60, 90),
                        child=(90, 150), adolescent=(140, 185))[age_group]
    bmi_range = dict(neonate=(10, 17), infant=(13, 20),
                     child=(12, 24), adolescent=(15, 32))[age_group]
    height = rng.uniform(*height_range)
    weight = rng.uniform(*bmi_range) * (height / 100) ** 2
    sex = 'female' if rng.rand() < 0.5 else 'male'
    pregnant = bool(sex == 'female' and age_group == 'adolescent'
                    and rng.rand() < 0.1)
    record = dict(sex=sex, age_group=age_group,
                  height_cm=round(height, 1), weight_kg=round(weight, 1),
                  pregnant=pregnant)
    for key in record:
        if rng.rand() < 0.05:
            record[key] = None
    return record


def random_spec(rng, murmur, sample_rate_hz=1000, duration_s=10.0,
                snr_range=(-10.0, 25.0), seed=0):
    """
    Draw a randomized `SynthSpec` for corpus generation.
    """
    return SynthSpec(
        heart_rate_bpm=rng.uniform(55, 130),
        duration_s=duration_s,
        sample_rate_hz=sample_rate_hz,
        s1_freq_hz=rng.uniform(40, 80),
        s2_freq_hz=rng.uniform(70, 120),
        s2_amp_ratio=rng.uniform(0.5, 1.0),
        systole_fraction=rng.uniform(0.3, 0.4),
        murmur=murmur,
        murmur_amp=rng.uniform(0.1, 0.3),
        snr_db=rng.uniform(*snr_range),
        seed=seed,
    )


def make_corpus(n, output_dir, quality_rule=snr_to_score,
                outcome_rule=murmur_to_outcome, seed=0, sample_rate_hz=1000,
                duration_s=10.0, snr_range=(-10.0, 25.0)):
    """
    Generate a labelled synthetic corpus: WAV files under
    `output_dir/recordings` and `output_dir/manifest.csv`.

    Half of the recordings (rounded down) carry a murmur. Quality scores
    come from `quality_rule(snr_db)`, outcomes from `outcome_rule(murmur)`.

    Parameters
    ----------
    n : int
    output_dir : str
    quality_rule : callable
    outcome_rule : callable
    seed : int
    sample_rate_hz : int
    duration_s : float
    snr_range : tuple
        Uniform range the SNR of each recording is drawn from

    Returns
    -------
    manifest : Manifest
    specs : list of SynthSpec
    """
    if n <= 0:
        raise ValueError("n must be positive")
    rng = np.random.RandomState(seed)
    murmurs = rng.permutation(np.arange(n) < n // 2)
    item_seeds = rng.randint(0, 2 ** 31 - 1, size=n)

    audio_dir = os.path.join(output_dir, "recordings")
    create_directory(audio_dir)
    records = []
    specs = []
    for i in tqdm(range(n), desc="Synthesizing recordings"):
        item_rng = np.random.RandomState(item_seeds[i])
        spec = random_spec(item_rng, bool(murmurs[i]), sample_rate_hz,
                           duration_s, snr_range, seed=int(item_seeds[i]))
        path = "recordings/pcg_{:05d}.wav".format(i)
        write_wav(synthesize(spec, source_id=path),
                  os.path.join(output_dir, path))
        record = dict(
            path=path,
            quality_score=quality_rule(spec.snr_db),
            outcome_label=outcome_rule(spec.murmur),
            split_tag=None,
            subject_id="subject_{:05d}".format(i),
        )
        record.update(_random_demographics(item_rng))
        records.append(record)
        specs.append(spec)

    manifest = Manifest.from_records(records, base_dir=output_dir)
    manifest.write(os.path.join(output_dir, "manifest.csv"))
    return manifest, specs
