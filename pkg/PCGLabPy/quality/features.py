"""
Feature matrix of a manifest: every recording is loaded, resampled to
1 kHz, replicate-padded and passed through the feature chain
"""
from multiprocessing import Pool
import pandas as pd
from tqdm import tqdm
from PCGLabPy.core.chain import (
    default_chain, extract_features, FEATURE_RATE_HZ, MIN_DURATION_S
)
from PCGLabPy.signal.preprocessing import prepare


def recording_features(recording, min_seconds=MIN_DURATION_S):
    """
    Quality features of a recording at any sample rate.

    Returns
    -------
    FeatureVector
    """
    prepared = prepare(recording, FEATURE_RATE_HZ, min_seconds)
    return extract_features(prepared)


class FeatureApplier:
    def __init__(self, manifest, min_seconds=MIN_DURATION_S):
        self.manifest = manifest
        self.min_seconds = min_seconds

    def _apply_row(self, index):
        recording = self.manifest.load(index)
        return recording_features(recording, self.min_seconds).values

    def multiprocess(self, n_processes):
        n_rows = len(self.manifest)
        print("Multiprocessing feature extraction (n_processes = {})"
              .format(n_processes))
        with Pool(n_processes) as pool:
            return pool.map(self._apply_row,
                            tqdm(range(n_rows), desc="Extracting features"))

    def process(self):
        return [self._apply_row(index) for index in
                tqdm(range(len(self.manifest)), desc="Extracting features")]


def feature_matrix(manifest, min_seconds=MIN_DURATION_S, threads=1):
    """
    Quality features of every manifest row.

    Parameters
    ----------
    manifest : Manifest
    min_seconds : float
        Minimum duration after replication padding
    threads : int
        Worker processes

    Returns
    -------
    pd.DataFrame
        One row per recording (indexed by manifest path), one column per
        feature, in schema order
    """
    applier = FeatureApplier(manifest, min_seconds)
    rows = applier.multiprocess(threads) if threads > 1 else applier.process()
    return pd.DataFrame(rows, columns=default_chain().names,
                        index=pd.Index(manifest.paths, name='path'))
