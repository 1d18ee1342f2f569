"""
Corpus-level pretraining of the encoder and extraction of frozen
embeddings
"""
import os
import numpy as np
import pandas as pd
from tqdm import tqdm
from PCGLabPy.core.errors import CheckpointLoadError
from PCGLabPy.mel import MelFrontend, MelSpectrogram, make_views
from PCGLabPy.mel.frontend import corpus_norm_stats
from PCGLabPy.nn.byol import new_state, fit_byol
from PCGLabPy.nn.checkpoint import save_encoder, load_encoder
from PCGLabPy.nn.encoder import Encoder
from PCGLabPy.utils.config import resolve_config

INIT_MODES = ('random', 'checkpoint')
ENCODE_BATCH = 64


def encoder_config(config):
    """
    Encoder shape implied by the `ssl` and `mel` config sections
    """
    return dict(
        embed_dim=config['ssl']['embed_dim'],
        channels=list(config['ssl']['channels']),
        n_frames=config['mel']['n_frames'],
        n_mels=config['mel']['n_mels'],
    )


def corpus_items(manifests):
    if not isinstance(manifests, (list, tuple)):
        manifests = [manifests]
    return [(m, i) for m in manifests for i in range(len(m))]


def pretrain(manifests, config=None, init='random', checkpoint=None,
             output_dir=None):
    """
    Self-supervised pretraining of the spectrogram encoder.

    Parameters
    ----------
    manifests : Manifest or list
        Unlabelled corpora (raw or gated)
    config : dict
        Run configuration (`seed`, `mel`, `ssl` sections)
    init : str
        "random" for a freshly initialised encoder, "checkpoint" to
        continue from the encoder stored in `checkpoint`
    checkpoint : str
        Encoder checkpoint directory, for init="checkpoint"
    output_dir : str
        The encoder checkpoint is written to `output_dir/encoder` after
        every epoch

    Returns
    -------
    encoder : Encoder
    log : pd.DataFrame
        Per-epoch mean loss and learning rate
    norm_stats : tuple or None
        Corpus normalisation statistics when mel.norm_mode is "corpus"
    """
    config = resolve_config(config)
    if init not in INIT_MODES:
        raise ValueError("init must be one of {}".format(INIT_MODES))
    rng = np.random.RandomState(config['seed'])

    encoder = None
    norm_stats = None
    if init == 'checkpoint':
        if checkpoint is None:
            raise CheckpointLoadError("init=checkpoint requires a checkpoint")
        encoder, index = load_encoder(checkpoint, encoder_config(config))
        if index.get('norm_stats') is not None:
            norm_stats = tuple(index['norm_stats'])

    frontend = MelFrontend.from_config(config, norm_stats)
    if frontend.norm_mode == 'corpus' and norm_stats is None:
        norm_stats = corpus_norm_stats(manifests, frontend)
        frontend.norm_stats = norm_stats
    elif frontend.norm_mode == 'instance':
        norm_stats = None

    items = corpus_items(manifests)
    full = [
        frontend.log_mel_full(m.load(i)).astype(np.float32)
        for m, i in tqdm(items, desc="Computing log-mel spectrograms")
    ]

    def views(index, item_rng):
        grid = frontend.crop(full[index].astype(np.float64), item_rng)
        grid, stats = frontend.normalize(grid)
        spec = MelSpectrogram(grid, frontend.rate_hz, stats)
        v1, v2 = make_views(spec, item_rng, frontend.max_pitch_shift,
                            frontend.stretch_range, frontend.std_floor)
        return v1.grid, v2.grid

    def on_epoch(epoch, state):
        if output_dir:
            save_encoder(os.path.join(output_dir, "encoder"), state.encoder,
                         config['mel'], norm_stats)

    state = new_state(config, rng, encoder)
    ssl = config['ssl']
    log = fit_byol(state, views, len(items), ssl['epochs'],
                   ssl['batch_size'], ssl['lr'], rng, on_epoch)
    return state.encoder, log, norm_stats


def random_encoder(config=None):
    """
    Randomly initialised encoder of a config (seeded by `seed`)
    """
    config = resolve_config(config)
    c = encoder_config(config)
    return Encoder(c['embed_dim'], c['channels'], c['n_frames'], c['n_mels'],
                   np.random.RandomState(config['seed']))


def encode_spectrograms(encoder, grids):
    """
    Embeddings of a stack of spectrograms, computed in batches
    """
    grids = np.asarray(grids, dtype=np.float64)
    out = [encoder.forward(grids[start:start + ENCODE_BATCH])
           for start in range(0, grids.shape[0], ENCODE_BATCH)]
    return np.concatenate(out) if out else np.zeros((0, encoder.embed_dim))


def centre_spectrograms(manifest, frontend):
    """
    Evaluation (centre-crop) spectrograms of every manifest row
    """
    desc = "Computing log-mel spectrograms"
    return np.stack([
        frontend.log_mel(manifest.load(i)).grid
        for i in tqdm(range(len(manifest)), desc=desc)
    ])


def encode_frozen(encoder, manifest, frontend):
    """
    Embedding of every recording of a manifest with a frozen encoder.

    Returns
    -------
    pd.DataFrame
        Columns id, e_0 .. e_{d-1}, one row per manifest row
    """
    embeddings = encode_spectrograms(encoder,
                                     centre_spectrograms(manifest, frontend))
    return embedding_table(manifest.paths, embeddings)


def embedding_table(ids, embeddings):
    columns = ["e_{}".format(i) for i in range(embeddings.shape[1])]
    df = pd.DataFrame(embeddings, columns=columns)
    df.insert(0, 'id', list(ids))
    return df
