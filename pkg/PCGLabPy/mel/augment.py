"""
Augmentations of normalised log-mel spectrograms: pitch shift as a roll of
the mel axis and time stretch by linear interpolation of the time axis
"""
import numpy as np
from scipy.interpolate import interp1d
from PCGLabPy.core.errors import ShiftTooLarge, FactorOutOfRange
from PCGLabPy.mel.frontend import standardize

MAX_PITCH_SHIFT = 8
STRETCH_LIMITS = (0.6, 1.5)


def pitch_shift(spec, shift_bins, max_shift=MAX_PITCH_SHIFT):
    """
    Move the content `shift_bins` mel bins up (positive) or down. Vacated
    bins take the minimum of the spectrogram.

    Returns
    -------
    MelSpectrogram
    """
    shift = int(shift_bins)
    if shift != shift_bins or abs(shift) > max_shift:
        raise ShiftTooLarge("Pitch shift must be an integer in [-{0}, {0}], "
                            "got {1}".format(max_shift, shift_bins))
    grid = spec.grid
    if shift == 0:
        return spec.replace(grid.copy())
    out = np.full_like(grid, grid.min())
    if shift > 0:
        out[:, shift:] = grid[:, :-shift]
    else:
        out[:, :shift] = grid[:, -shift:]
    return spec.replace(out)


def time_stretch(spec, factor):
    """
    Resample the time axis to round(n_frames / factor) frames by linear
    interpolation, then centre-crop, or pad by repeating the last frame,
    back to n_frames.

    Returns
    -------
    MelSpectrogram
    """
    low, high = STRETCH_LIMITS
    if not low <= factor <= high:
        raise FactorOutOfRange("Stretch factor must be in [{}, {}], got {}"
                               .format(low, high, factor))
    grid = spec.grid
    if factor == 1:
        return spec.replace(grid.copy())
    n = grid.shape[0]
    n_new = int(np.floor(n / factor + 0.5))
    positions = np.linspace(0, n - 1, n_new)
    stretched = interp1d(np.arange(n), grid, axis=0)(positions)
    if n_new >= n:
        start = (n_new - n) // 2
        out = stretched[start:start + n]
    else:
        pad = np.repeat(stretched[-1:], n - n_new, axis=0)
        out = np.concatenate([stretched, pad], axis=0)
    return spec.replace(out)


def augment(spec, rng, max_pitch_shift=MAX_PITCH_SHIFT,
            stretch_range=(0.8, 1.25), std_floor=1e-6):
    """
    One random view: time stretch, pitch shift, re-standardisation
    """
    factor = rng.uniform(*stretch_range)
    shift = rng.randint(-max_pitch_shift, max_pitch_shift + 1)
    view = pitch_shift(time_stretch(spec, factor), shift, max_pitch_shift)
    grid, _ = standardize(view.grid, std_floor)
    return view.replace(grid)


def make_views(spec, rng, max_pitch_shift=MAX_PITCH_SHIFT,
               stretch_range=(0.8, 1.25), std_floor=1e-6):
    """
    Two independently augmented views of a normalised spectrogram.

    Parameters
    ----------
    spec : MelSpectrogram
    rng : np.random.RandomState
    max_pitch_shift : int
        Shifts are drawn uniformly from [-max_pitch_shift, max_pitch_shift]
    stretch_range : tuple
        Stretch factors are drawn uniformly from this range
    std_floor : float

    Returns
    -------
    view1, view2 : MelSpectrogram
    """
    return tuple(
        augment(spec, rng, max_pitch_shift, stretch_range, std_floor)
        for _ in range(2)
    )
