import warnings
import pandas as pd
from PCGLabPy.core.errors import (
    ModalityMismatch, BadLabel, CheckpointLoadError
)
from PCGLabPy.mel import MelFrontend
from PCGLabPy.metrics.evaluation import (
    outcome_to_int, POSITIVE_CLASS, NEGATIVE_CLASS, PREDICTION_COLUMNS
)
from PCGLabPy.nn.checkpoint import (
    save_checkpoint, read_checkpoint, unpack_parameters, encoder_from_index
)
from PCGLabPy.nn.pretrain import encode_spectrograms, centre_spectrograms
from PCGLabPy.screening.demographics import (
    encode_demographics, demographic_matrix, check_cutoffs, fuse, DEMO_DIM
)
from PCGLabPy.screening.head import (
    HeadModel, train_head, outcome_probabilities
)
from PCGLabPy.utils.config import resolve_config

ARTIFACT = 'screening_model'
FUSIONS = ('audio', 'audio+demo')


class ScreeningModel:
    def __init__(self, encoder, head, fusion='audio', mode='frozen',
                 mel=None, norm_stats=None, cutoffs=None):
        """
        Outcome classifier: log-mel frontend, encoder, optional fusion of
        encoded demographics and the classification head.

        Parameters
        ----------
        encoder : Encoder
        head : HeadModel
        fusion : str
            "audio" or "audio+demo"
        mode : str
            How the head was trained ("frozen" or "finetune")
        mel : dict
            Frontend parameters (`mel` config section)
        norm_stats : tuple
            Corpus normalisation statistics, if used
        cutoffs : dict
            acBMI cutoff table of the demographic encoding
        """
        if fusion not in FUSIONS:
            raise ValueError("fusion must be one of {}".format(FUSIONS))
        self.encoder = encoder
        self.head = head
        self.fusion = fusion
        self.mode = mode
        self.mel = dict(resolve_config()['mel'] if mel is None else mel)
        self.norm_stats = None if norm_stats is None else tuple(norm_stats)
        if cutoffs is None:
            cutoffs = resolve_config()['head']['acbmi_cutoffs']
        check_cutoffs(cutoffs)
        self.cutoffs = cutoffs
        expected = encoder.embed_dim + (DEMO_DIM if self.multimodal else 0)
        if head.input_dim != expected:
            raise ModalityMismatch(
                "Head expects {} inputs, a {} model provides {}"
                .format(head.input_dim, fusion, expected)
            )

    def __repr__(self):
        return "ScreeningModel(fusion={}, mode={}, embed_dim={})".format(
            self.fusion, self.mode, self.encoder.embed_dim
        )

    @property
    def multimodal(self):
        return self.fusion == 'audio+demo'

    @property
    def frontend(self):
        return MelFrontend(norm_stats=self.norm_stats, **self.mel)

    def logits(self, grids, demo=None):
        """
        Head logits of a stack of normalised spectrograms

        Parameters
        ----------
        grids : ndarray
            (n, n_frames, n_mels)
        demo : ndarray
            (n, 10), required by multimodal models
        """
        x = encode_spectrograms(self.encoder, grids)
        if self.multimodal:
            if demo is None:
                raise ModalityMismatch("Multimodal model requires "
                                       "demographics")
            x = fuse(x, demo, self.encoder.embed_dim)
        return self.head.forward(x)

    def save(self, directory):
        payload = dict(
            encoder=self.encoder.config,
            head=self.head.config,
            fusion=self.fusion,
            mode=self.mode,
            mel=self.mel,
            norm_stats=None if self.norm_stats is None
            else list(self.norm_stats),
            acbmi_cutoffs=self.cutoffs,
        )
        save_checkpoint(directory, ARTIFACT,
                        dict(encoder=self.encoder, head=self.head), payload)

    @classmethod
    def load(cls, directory):
        index, blob = read_checkpoint(directory, ARTIFACT)
        try:
            encoder = encoder_from_index(index, blob)
            head = HeadModel(**index['head'])
        except KeyError as err:
            raise CheckpointLoadError("Screening model {} lacks {}"
                                      .format(directory, err))
        unpack_parameters(dict(head=head), [
            layer for layer in index['layers']
            if layer['name'].startswith('head.')
        ], blob)
        return cls(encoder, head, index['fusion'], index['mode'],
                   index['mel'], index['norm_stats'], index['acbmi_cutoffs'])


def _label(abnormal):
    return POSITIVE_CLASS if abnormal else NEGATIVE_CLASS


def predict_outcome(model, recording, demographics=None, encoder=None):
    """
    Outcome of one recording.

    Parameters
    ----------
    model : ScreeningModel
    recording : PcgRecording
        At any rate (resampled to the operating rate)
    demographics : DemographicRecord
        Required by multimodal models, ignored (with a warning) otherwise
    encoder : Encoder
        Replaces the encoder bundled with the model

    Returns
    -------
    p_abnormal : float
    label : str
        "abnormal" when p_abnormal >= 0.5
    """
    if model.multimodal and demographics is None:
        raise ModalityMismatch("Multimodal model requires demographics")
    demo = None
    if model.multimodal:
        demo = encode_demographics(demographics, model.cutoffs)[None]
    elif demographics is not None:
        warnings.warn("Audio-only model: demographics ignored", UserWarning)
    if encoder is not None and encoder is not model.encoder:
        model = ScreeningModel(encoder, model.head, model.fusion, model.mode,
                               model.mel, model.norm_stats, model.cutoffs)
    grid = model.frontend.log_mel(recording).grid
    p, abnormal = outcome_probabilities(model.logits(grid[None], demo))
    return float(p[0]), _label(abnormal[0])


def predict_manifest(model, manifest):
    """
    Prediction table (id, p_abnormal, label) of every manifest row, the id
    being the manifest path
    """
    demo = None
    if model.multimodal:
        if not manifest.has_demographics:
            raise ModalityMismatch("Multimodal model requires a manifest "
                                   "with demographic columns")
        demo = demographic_matrix(manifest, model.cutoffs)
    grids = centre_spectrograms(manifest, model.frontend)
    p, abnormal = outcome_probabilities(model.logits(grids, demo))
    return pd.DataFrame(dict(
        id=manifest.paths,
        p_abnormal=p,
        label=[_label(a) for a in abnormal],
    ), columns=PREDICTION_COLUMNS)


def outcome_labels(manifest):
    """
    0/1 outcome labels (abnormal = 1) of a manifest
    """
    outcomes = list(manifest.df['outcome_label'])
    missing = [p for p, o in zip(manifest.paths, outcomes) if o is None]
    if missing:
        raise BadLabel("{} rows lack an outcome_label, e.g. {}"
                       .format(len(missing), missing[0]))
    return outcome_to_int(outcomes)


def train_screening(manifest, encoder, config=None, mode='frozen',
                    fusion='audio', norm_stats=None):
    """
    Train a screening model on a labelled manifest.

    Parameters
    ----------
    manifest : Manifest
        Rows with outcome labels (and demographics for "audio+demo")
    encoder : Encoder
        Pretrained (or randomly initialised) encoder; never modified
    config : dict
        Run configuration (`seed`, `mel`, `head` sections)
    mode : str
        "frozen" trains the head on fixed embeddings, "finetune" trains the
        encoder jointly
    fusion : str
        "audio" or "audio+demo"
    norm_stats : tuple
        Corpus normalisation statistics of the encoder, if used

    Returns
    -------
    model : ScreeningModel
    log : pd.DataFrame
        Per-epoch training loss and learning rate
    """
    config = resolve_config(config)
    if fusion not in FUSIONS:
        raise ValueError("fusion must be one of {}".format(FUSIONS))
    labels = outcome_labels(manifest)
    cutoffs = config['head']['acbmi_cutoffs']
    demo = None
    if fusion == 'audio+demo':
        if not manifest.has_demographics:
            raise ModalityMismatch("audio+demo fusion requires a manifest "
                                   "with demographic columns")
        demo = demographic_matrix(manifest, cutoffs)

    frontend = MelFrontend.from_config(config, norm_stats)
    grids = centre_spectrograms(manifest, frontend)
    if mode == 'frozen':
        inputs = encode_spectrograms(encoder, grids)
    else:
        inputs = grids
    head, trained, log = train_head(inputs, labels, config, mode, encoder,
                                    demo)
    if trained is None:
        trained = encoder
    model = ScreeningModel(trained, head, fusion, mode, config['mel'],
                           norm_stats, cutoffs)
    return model, log
