import hashlib
import warnings
import numpy as np
import pandas as pd
from PCGLabPy.core import child_subclasses
from PCGLabPy.core.errors import WrongSampleRate, TooShort
from PCGLabPy.core.extractor import FeatureExtractor

FEATURE_RATE_HZ = 1000
MIN_DURATION_S = 6.0


class FeatureVector:
    def __init__(self, values, names, imputed=()):
        """
        Named, fixed-order quality features of one recording.

        Parameters
        ----------
        values : ndarray
            Finite feature values
        names : list
            Feature names, same length as `values`
        imputed : list
            Names whose computed value was non-finite and replaced by 0
        """
        self.values = np.asarray(values, dtype=float)
        self.names = list(names)
        self.imputed = list(imputed)
        if self.values.size != len(self.names):
            raise ValueError("FeatureVector has {} values for {} names"
                             .format(self.values.size, len(self.names)))

    def __len__(self):
        return len(self.names)

    def as_dict(self):
        return dict(zip(self.names, self.values))

    def as_series(self, name=None):
        return pd.Series(self.values, index=self.names, name=name)


def _default_extractors():
    import PCGLabPy.feature_extractors  # Required to add extractors to global
    return [
        e for e in child_subclasses(FeatureExtractor)
        if e.__module__.startswith(PCGLabPy.feature_extractors.__name__)
    ]


class FeatureChain:
    def __init__(self, extractors=None, **kwargs):
        """
        Builds the chain of `FeatureExtractors` producing the quality
        feature vector. Families are ordered by their `order` attribute
        (then by name) so the schema is identical on every run.

        A `FeatureExtractor` is only included in the chain if at least one
        of its columns is active.

        Parameters
        ----------
        extractors : list
            `FeatureExtractor` classes to chain. Defaults to every family
            inside `PCGLabPy.feature_extractors`.
        kwargs
            Columns can be deactivated by passing their "name"=False via the
            kwargs. Configuration to the `FeatureExtractor` can also be
            passed via kwargs.
        """
        if extractors is None:
            extractors = _default_extractors()
        extractors = sorted(extractors, key=lambda e: (e.order, e.__name__))
        self.chain = self._build_chain(extractors, **kwargs)
        self.names = [n for e in self.chain for n in e.feature_names]
        if len(set(self.names)) != len(self.names):
            raise ValueError("FeatureChain contains duplicate feature names")

    @staticmethod
    def _build_chain(extractors, **config):
        print("Building FeatureChain:")
        chain = []
        for e in extractors:
            if len(e.get_active_columns(**config)) > 0:
                extractor = e(**config)
                chain.append(extractor)
                for c in extractor.active_columns:
                    print("\t{}.{}".format(e.__name__, c))
        return chain

    @property
    def schema_id(self):
        """
        Short digest of the ordered feature names
        """
        digest = hashlib.sha1("\n".join(self.names).encode('utf-8'))
        return digest.hexdigest()[:16]

    def process(self, recording):
        """
        Iterate through the chain, calling the `process` method of each
        `FeatureExtractor` on a shared `SignalContext`. Non-finite values
        are replaced by 0 and reported in `FeatureVector.imputed`.

        Parameters
        ----------
        recording : PcgRecording

        Returns
        -------
        FeatureVector
        """
        from PCGLabPy.feature_extractors.context import SignalContext
        context = SignalContext(recording)
        d = {}
        with warnings.catch_warnings(), np.errstate(all='ignore'):
            warnings.simplefilter('ignore', RuntimeWarning)
            for extractor in self.chain:
                d.update(extractor.process(context))
        values = np.array([d[n] for n in self.names], dtype=float)
        bad = ~np.isfinite(values)
        values[bad] = 0.0
        imputed = [n for n, b in zip(self.names, bad) if b]
        return FeatureVector(values, self.names, imputed)


_DEFAULT_CHAIN = None


def default_chain():
    global _DEFAULT_CHAIN
    if _DEFAULT_CHAIN is None:
        _DEFAULT_CHAIN = FeatureChain()
    return _DEFAULT_CHAIN


def extract_features(recording, chain=None):
    """
    Extract the quality feature vector of a prepared recording.

    Parameters
    ----------
    recording : PcgRecording
        Recording at 1 kHz, at least 6 s long
    chain : FeatureChain
        Defaults to the full feature schema

    Returns
    -------
    FeatureVector
    """
    if recording.sample_rate_hz != FEATURE_RATE_HZ:
        raise WrongSampleRate("Features require {} Hz, got {} Hz".format(
            FEATURE_RATE_HZ, recording.sample_rate_hz
        ))
    if recording.duration < MIN_DURATION_S - 1e-9:
        raise TooShort("Features require {} s, got {:.3f} s".format(
            MIN_DURATION_S, recording.duration
        ))
    chain = default_chain() if chain is None else chain
    return chain.process(recording)
