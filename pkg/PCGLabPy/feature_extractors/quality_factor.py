from PCGLabPy.core.extractor import FeatureExtractor, column
from PCGLabPy.signal.envelope import s1_quality_factor, s2_quality_factor


class QualityFactor(FeatureExtractor):
    """
    Envelope quality factors: mean envelope height over the heart sounds
    relative to the silent intervals between them. Both are 0 when the
    recording cannot be segmented.
    """
    order = 10

    @column
    def s1_quality_factor(self):
        seg = self.context.segmentation
        if seg is None:
            return 0.0
        return s1_quality_factor(self.context.envelope, seg,
                                 self.context.rate_hz)

    @column
    def s2_quality_factor(self):
        seg = self.context.segmentation
        if seg is None:
            return 0.0
        return s2_quality_factor(self.context.envelope, seg,
                                 self.context.rate_hz)


class SegmentationFlag(FeatureExtractor):
    order = 90

    @column
    def segmentation_degenerate(self):
        """
        1 if the envelope peaks could not be paired into cardiac cycles
        """
        return float(self.context.segmentation is None)
