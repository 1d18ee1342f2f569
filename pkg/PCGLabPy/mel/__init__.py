"""
Log-mel frontend of the screening models and the augmentations used for
self-supervised pretraining.
"""
from .frontend import (
    MelSpectrogram, MelFrontend, log_mel, standardize, corpus_norm_stats,
    write_mel_csv, write_mel_blob, read_mel_blob
)
from .augment import pitch_shift, time_stretch, augment, make_views
