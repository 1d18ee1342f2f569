"""
Gating of a corpus with a trained QualityModel: every recording is scored
and the manifest is split into kept (acceptable) and removed rows.
"""
import os
import numpy as np
import pandas as pd
from PCGLabPy.core.io import write_json
from PCGLabPy.quality.features import feature_matrix
from PCGLabPy.quality.labels import LABEL_NAMES, ACCEPTABLE

PSEUDO_LABEL_COLUMNS = ['path', 'p_acceptable', 'label', 'source']


def score_manifest(model, manifest, threads=1):
    """
    Pseudo-labels of every manifest row. They are only ever used to gate
    recordings, never to retrain the quality model.

    Returns
    -------
    pd.DataFrame
        Columns path, p_acceptable, label, source (always "pseudo")
    """
    model.check_schema()
    X = feature_matrix(manifest, model.min_seconds, threads)
    p = model.score_features(X)
    labels = model.label(p)
    return pd.DataFrame(dict(
        path=manifest.paths,
        p_acceptable=p,
        label=[LABEL_NAMES[v] for v in labels],
        source='pseudo',
    ), columns=PSEUDO_LABEL_COLUMNS)


def _counts(kept_mask):
    total = int(kept_mask.size)
    kept = int(kept_mask.sum())
    return dict(
        total=total,
        kept=kept,
        removed=total - kept,
        removed_fraction=(total - kept) / total if total else 0.0,
    )


def gate_manifest(model, manifest, threads=1, scores=None):
    """
    Partition a manifest by predicted quality.

    Parameters
    ----------
    model : QualityModel
    manifest : Manifest
    threads : int
    scores : pd.DataFrame
        Output of `score_manifest`, computed if not given

    Returns
    -------
    kept : Manifest
    removed : Manifest
    report : dict
        Counts and removed fraction, overall and per outcome label
    """
    if scores is None:
        scores = score_manifest(model, manifest, threads)
    if list(scores['path']) != manifest.paths:
        raise ValueError("Scores do not match the manifest rows")
    keep = np.asarray(scores['label'] == LABEL_NAMES[ACCEPTABLE])

    report = _counts(keep)
    outcomes = np.array([
        'unlabelled' if v is None else v
        for v in manifest.df['outcome_label']
    ], dtype=object)
    report['per_outcome_counts'] = {
        outcome: _counts(keep[outcomes == outcome])
        for outcome in sorted(set(outcomes))
    }
    report['threshold'] = model.threshold
    print("[QualityModel] Removed {removed} of {total} recordings "
          "({removed_fraction:.1%})".format(**report))
    return manifest.subset(keep), manifest.subset(~keep), report


def write_gate(output_dir, kept, removed, report, scores):
    """
    Write the kept and removed manifests (paths rewritten relative to
    `output_dir`), the gate report and the pseudo-labels of a gating run.
    """
    for name, manifest in (("kept", kept), ("removed", removed)):
        path = os.path.join(output_dir, "{}_manifest.csv".format(name))
        manifest.rebase(output_dir).write(path)
    path = os.path.join(output_dir, "gate_report.json")
    print("Writing gate report to: {}".format(path))
    write_json(report, path)
    path = os.path.join(output_dir, "pseudo_labels.csv")
    print("Writing pseudo-labels to: {}".format(path))
    scores.to_csv(path, index=False, float_format='%.10g',
                  lineterminator='\n')
