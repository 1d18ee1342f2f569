"""
Self-supervised pretraining of the encoder with an online network
(encoder, projector, predictor) regressing the output of a target network
(encoder, projector) that follows the online weights by exponential moving
average.
"""
import copy
import numpy as np
import pandas as pd
from tqdm import trange
from PCGLabPy.nn.encoder import Encoder
from PCGLabPy.nn.layers import mlp, l2_normalize, l2_normalize_backward
from PCGLabPy.nn.optim import Adam


def normalized_mse(p, z):
    """
    Squared distance of the unit-normalised rows, 2 - 2 cos(p, z)

    Returns
    -------
    terms : ndarray
        One value in [0, 4] per row
    dp : ndarray
        Gradient of sum(terms) with respect to p
    """
    p_hat, p_norm = l2_normalize(p)
    z_hat, _ = l2_normalize(z)
    diff = p_hat - z_hat
    terms = np.sum(diff ** 2, axis=1)
    dp = l2_normalize_backward(2 * diff, p_hat, p_norm)
    return terms, dp


class ByolState:
    def __init__(self, encoder, projector_hidden=256, projection_dim=128,
                 tau=0.99, rng=None):
        """
        Online and target networks.

        Parameters
        ----------
        encoder : Encoder
            Initial online encoder, copied into the target
        projector_hidden : int
        projection_dim : int
        tau : float
            EMA decay of the target, in [0, 1]
        rng : np.random.RandomState
        """
        if not 0 <= tau <= 1:
            raise ValueError("tau must be in [0, 1], got {}".format(tau))
        if rng is None:
            rng = np.random.RandomState(0)
        self.tau = float(tau)
        self.encoder = encoder
        self.projector = mlp(
            [encoder.embed_dim, projector_hidden, projection_dim], rng
        )
        self.predictor = mlp(
            [projection_dim, projector_hidden, projection_dim], rng
        )
        self.target_encoder = copy.deepcopy(encoder)
        self.target_projector = copy.deepcopy(self.projector)
        self.step = 0

    def online_parameters(self):
        return self.encoder.parameters() + self.projector.parameters() \
            + self.predictor.parameters()

    def online_gradients(self):
        return self.encoder.gradients() + self.projector.gradients() \
            + self.predictor.gradients()

    def online(self, x, training=True):
        h = self.encoder.forward(x, training)
        return self.predictor.forward(self.projector.forward(h, training),
                                      training)

    def online_backward(self, dp):
        d = self.predictor.backward(dp)
        d = self.projector.backward(d)
        return self.encoder.backward(d)

    def target(self, x):
        return self.target_projector.forward(self.target_encoder.forward(x))


def _as_batch(view):
    grid = np.asarray(getattr(view, 'grid', view), dtype=np.float64)
    return grid[None] if grid.ndim == 2 else grid


def byol_loss(state, view1, view2, backward=False):
    """
    Symmetric loss: the online prediction of each view regresses the target
    projection of the other one. Batches are averaged over examples.

    Parameters
    ----------
    state : ByolState
    view1, view2 : MelSpectrogram or ndarray
        Single (n_frames, n_mels) views or batches of them
    backward : bool
        Backpropagate into the online gradients

    Returns
    -------
    float
        Sum of both terms (each in [0, 4]), averaged over the batch
    """
    v1 = _as_batch(view1)
    v2 = _as_batch(view2)
    n = v1.shape[0]
    x = np.concatenate([v1, v2])
    p = state.online(x, training=backward)
    z = state.target(x)
    # pair the prediction of view1 with the target of view2 and vice versa
    z_swapped = np.concatenate([z[n:], z[:n]])
    terms, dp = normalized_mse(p, z_swapped)
    if backward:
        state.online_backward(dp / n)
    return float(terms.sum() / n)


def ema_update(state):
    """
    theta_target <- tau * theta_target + (1 - tau) * theta_online,
    in place
    """
    tau = state.tau
    pairs = [
        (state.target_encoder, state.encoder),
        (state.target_projector, state.projector),
    ]
    for target, online in pairs:
        for t, o in zip(target.parameters(), online.parameters()):
            if t.shape != o.shape:
                raise ValueError("Online and target shapes differ")
            t *= tau
            t += (1 - tau) * o
    return state


class ByolTrainer:
    def __init__(self, state, lr=1e-4):
        self.state = state
        self.optimizer = Adam(state.online_parameters(), lr=lr)

    def train_step(self, view1, view2):
        """
        One optimisation step: loss, backpropagation, Adam update of the
        online network, EMA update of the target
        """
        loss = byol_loss(self.state, view1, view2, backward=True)
        self.optimizer.step(self.state.online_gradients())
        ema_update(self.state)
        self.state.step += 1
        return loss


def new_state(config, rng, encoder=None):
    """
    ByolState of the `ssl` and `mel` config sections
    """
    ssl = config['ssl']
    if encoder is None:
        encoder = Encoder(ssl['embed_dim'], ssl['channels'],
                          config['mel']['n_frames'], config['mel']['n_mels'],
                          rng)
    return ByolState(encoder, ssl['projector_hidden'], ssl['projection_dim'],
                     ssl['tau'], rng)


def fit_byol(state, spectrogram_source, n_items, epochs, batch_size, lr, rng,
             on_epoch=None):
    """
    Training loop over a corpus.

    Parameters
    ----------
    state : ByolState
    spectrogram_source : callable
        spectrogram_source(index, rng) -> (view1, view2) grids of one item
    n_items : int
    epochs : int
    batch_size : int
    lr : float
    rng : np.random.RandomState
    on_epoch : callable
        Called with (epoch, state) after every epoch

    Returns
    -------
    pd.DataFrame
        Per-epoch mean loss and learning rate
    """
    trainer = ByolTrainer(state, lr)
    rows = []
    for epoch in trange(1, epochs + 1, desc="Pretraining"):
        order = rng.permutation(n_items)
        losses = []
        for start in range(0, n_items, batch_size):
            views = [spectrogram_source(i, rng)
                     for i in order[start:start + batch_size]]
            v1 = np.stack([v[0] for v in views])
            v2 = np.stack([v[1] for v in views])
            losses.append(trainer.train_step(v1, v2))
        rows.append(dict(epoch=epoch, loss=float(np.mean(losses)),
                         lr=trainer.optimizer.lr, steps=state.step))
        if on_epoch is not None:
            on_epoch(epoch, state)
    return pd.DataFrame(rows, columns=['epoch', 'loss', 'lr', 'steps'])
