import numpy as np
import pandas as pd
from PCGLabPy.core.chain import default_chain, FEATURE_RATE_HZ, MIN_DURATION_S
from PCGLabPy.core.classifier import MODEL_SCHEMA_VERSION
from PCGLabPy.core.errors import SchemaMismatch, ConfigError
from PCGLabPy.core.factory import ClassifierFactory
from PCGLabPy.core.io.artifact import write_artifact, read_artifact
from PCGLabPy.classifiers import SoftVoting
from PCGLabPy.metrics import confusion, basic_metrics, auroc, roc_curve
from PCGLabPy.quality.features import feature_matrix, recording_features
from PCGLabPy.quality.labels import (
    quality_labels, check_classes, ACCEPTABLE, UNACCEPTABLE, LABEL_NAMES
)
from PCGLabPy.stats import fit_selection, apply_selection, SelectionModel
from PCGLabPy.utils.config import resolve_config

ARTIFACT = 'quality_model'
SEEDED_KINDS = ('rf', 'gb')


class QualityModel:
    def __init__(self, selection, ensemble, feature_schema_id,
                 threshold=0.5, min_seconds=MIN_DURATION_S):
        """
        Fitted quality gate: the mutual-information selection of the
        feature schema followed by a soft-voting ensemble.

        Parameters
        ----------
        selection : SelectionModel
        ensemble : SoftVoting
        feature_schema_id : str
            `FeatureChain.schema_id` of the features it was trained on
        threshold : float
            A recording is acceptable when p_acceptable > threshold
        min_seconds : float
            Replication padding applied before feature extraction
        """
        self.selection = selection
        self.ensemble = ensemble
        self.feature_schema_id = feature_schema_id
        self.threshold = float(threshold)
        self.min_seconds = float(min_seconds)
        self.operating_rate_hz = FEATURE_RATE_HZ

    def __repr__(self):
        return "QualityModel(members={}, features={})".format(
            self.ensemble.names, self.selection.selected_names
        )

    def check_schema(self, chain=None):
        chain = default_chain() if chain is None else chain
        if chain.schema_id != self.feature_schema_id:
            raise SchemaMismatch(
                "QualityModel trained on feature schema {}, the installed "
                "schema is {}".format(self.feature_schema_id, chain.schema_id)
            )

    def score_features(self, X):
        """
        Probability of acceptable quality for a feature matrix.

        Parameters
        ----------
        X : pd.DataFrame
            Columns named after the feature schema (any superset)

        Returns
        -------
        ndarray
        """
        Xs = apply_selection(self.selection, X)
        return self.ensemble.predict_proba(Xs)[:, 1]

    def member_scores(self, X):
        Xs = apply_selection(self.selection, X)
        out = {n: p[:, 1] for n, p in self.ensemble.member_proba(Xs).items()}
        out['voting'] = self.ensemble.predict_proba(Xs)[:, 1]
        return out

    def label(self, p):
        """Ties at the threshold are unacceptable"""
        p = np.asarray(p)
        return np.where(p > self.threshold, ACCEPTABLE, UNACCEPTABLE)

    def to_dict(self):
        return dict(
            schema_version=MODEL_SCHEMA_VERSION,
            feature_schema_id=self.feature_schema_id,
            operating_rate_hz=self.operating_rate_hz,
            min_seconds=self.min_seconds,
            threshold=self.threshold,
            selection=self.selection.to_dict(),
            ensemble=self.ensemble.to_dict(),
        )

    @classmethod
    def from_dict(cls, d):
        if d.get('schema_version') != MODEL_SCHEMA_VERSION:
            raise SchemaMismatch("Unsupported quality model version: {}"
                                 .format(d.get('schema_version')))
        if d.get('operating_rate_hz') != FEATURE_RATE_HZ:
            raise SchemaMismatch("Quality model operating rate must be {} Hz"
                                 .format(FEATURE_RATE_HZ))
        return cls(
            selection=SelectionModel.from_dict(d['selection']),
            ensemble=ClassifierFactory.load(d['ensemble']),
            feature_schema_id=d['feature_schema_id'],
            threshold=d['threshold'],
            min_seconds=d['min_seconds'],
        )

    def save(self, directory):
        write_artifact(directory, ARTIFACT, self.to_dict())

    @classmethod
    def load(cls, directory):
        index, _ = read_artifact(directory, ARTIFACT)
        model = cls.from_dict(index)
        model.check_schema()
        return model


def build_members(config):
    """
    Unfitted ensemble members named in `config['quality']['members']`,
    with their hyperparameters from `config['classifiers']`.
    """
    kinds = {c.kind: c for c in ClassifierFactory.subclasses
             if c.kind is not None}
    members = []
    names = list(config['quality']['members'])
    for name in names:
        if name not in config['classifiers'] or name not in kinds:
            raise ConfigError('No classifier of kind "{}"'.format(name))
        kwargs = dict(config['classifiers'][name])
        if name in SEEDED_KINDS:
            kwargs['seed'] = config['seed']
        members.append(kinds[name](**kwargs))
    return members, names


def fit_quality_model(X, y, config=None, keep_fraction=None):
    """
    Fit the selection and the ensemble on a feature matrix.

    Parameters
    ----------
    X : pd.DataFrame
        Output of `feature_matrix`
    y : ndarray
        0/1 quality labels
    config : dict
        Resolved run configuration
    keep_fraction : float
        Overrides `config['selection']['keep_fraction']`

    Returns
    -------
    QualityModel
    """
    config = resolve_config(config)
    y = np.asarray(y, dtype=np.int64)
    check_classes(y, minimum=1)
    if keep_fraction is None:
        keep_fraction = config['selection']['keep_fraction']
    selection = fit_selection(X, y, keep_fraction=keep_fraction,
                              n_bins=config['selection']['n_bins'])
    print("[QualityModel] Selected features: {}"
          .format(selection.selected_names))
    members, names = build_members(config)
    ensemble = SoftVoting(members, names)
    ensemble.fit(apply_selection(selection, X), y)
    return QualityModel(
        selection, ensemble, default_chain().schema_id,
        threshold=config['quality']['threshold'],
        min_seconds=config['quality']['min_seconds'],
    )


def train_quality(manifest, config=None, threads=1, features=None):
    """
    Train the quality gate on an annotated manifest: resample to 1 kHz,
    replicate-pad, extract features, select by mutual information, fit
    the members and combine them by soft voting.

    Parameters
    ----------
    manifest : Manifest
        Rows with quality scores
    config : dict
    threads : int
    features : pd.DataFrame
        Precomputed `feature_matrix` of the manifest

    Returns
    -------
    QualityModel
    """
    config = resolve_config(config)
    y = quality_labels(manifest)
    check_classes(y, minimum=1)
    if features is None:
        features = feature_matrix(manifest, config['quality']['min_seconds'],
                                  threads)
    return fit_quality_model(features, y, config)


def score_quality(model, recording):
    """
    Probability that a recording is of acceptable quality.

    Parameters
    ----------
    model : QualityModel
    recording : PcgRecording
        At any sample rate

    Returns
    -------
    p_acceptable : float
    label : int
        1 if p_acceptable > model.threshold
    """
    vector = recording_features(recording, model.min_seconds)
    X = pd.DataFrame([vector.values], columns=vector.names)
    p = float(model.score_features(X)[0])
    return p, int(model.label(p))


def evaluate_quality(model, X, y):
    """
    Held-out metrics of every ensemble member and of the voting classifier
    (positive class = acceptable).

    Returns
    -------
    report : dict
        Metrics keyed by member name
    roc : pd.DataFrame
        ROC points of the voting classifier
    """
    y = np.asarray(y, dtype=np.int64)
    report = {}
    scores = model.member_scores(X)
    for name, p in scores.items():
        prediction = model.label(p)
        metrics = basic_metrics(confusion(y, prediction))
        metrics['auroc'] = auroc(p, y) if np.unique(y).size == 2 else None
        report[name] = metrics
    report['positive_class'] = LABEL_NAMES[ACCEPTABLE]
    report['n'] = int(y.size)
    roc = None
    if np.unique(y).size == 2:
        roc = roc_curve(scores['voting'], y)
    return report, roc
