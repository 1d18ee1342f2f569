"""
Exceptions raised by PCGLabPy.

Every error inherits from `PCGLabError` and from the closest builtin, so it
can be caught either way (e.g. `except ValueError`).
"""


class PCGLabError(Exception):
    pass


# Signal I/O
class UnsupportedFormat(PCGLabError, ValueError):
    pass


class CorruptHeader(PCGLabError, IOError):
    pass


class EmptyAudio(PCGLabError, ValueError):
    pass


class MissingColumn(PCGLabError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class BadScore(PCGLabError, ValueError):
    pass


class BadLabel(PCGLabError, ValueError):
    pass


class DuplicatePath(PCGLabError, ValueError):
    pass


# Features
class WrongSampleRate(PCGLabError, ValueError):
    pass


class TooShort(PCGLabError, ValueError):
    pass


class SegmentationError(PCGLabError, ValueError):
    pass


class TooFewPeaks(SegmentationError):
    pass


class DegenerateSegmentation(SegmentationError):
    pass


class DegenerateLabels(PCGLabError, ValueError):
    pass


class SchemaMismatch(PCGLabError, ValueError):
    pass


# Classifiers
class EmptyData(PCGLabError, ValueError):
    pass


class SingleClass(PCGLabError, ValueError):
    pass


class DegenerateClass(PCGLabError, ValueError):
    pass


class OutOfRange(PCGLabError, ValueError):
    pass


# Spectrograms and networks
class ShiftTooLarge(PCGLabError, ValueError):
    pass


class FactorOutOfRange(PCGLabError, ValueError):
    pass


class ShapeMismatch(PCGLabError, ValueError):
    pass


class CheckpointLoadError(PCGLabError, IOError):
    pass


# Screening
class BadCutoffTable(PCGLabError, ValueError):
    pass


class DimMismatch(PCGLabError, ValueError):
    pass


class ModalityMismatch(PCGLabError, ValueError):
    pass


# Metrics
class LengthMismatch(PCGLabError, ValueError):
    pass


class IdMismatch(PCGLabError, ValueError):
    pass


# Configuration
class ConfigError(PCGLabError, ValueError):
    pass
