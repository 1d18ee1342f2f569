"""
Signal-level operations on `PcgRecording`: preparation, envelope
segmentation and synthetic recordings.
"""
from .preprocessing import resample, pad_by_replication, chunk, prepare
from .corpus import prepare_recording, prepare_corpus
