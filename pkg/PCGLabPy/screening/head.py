import copy
import numpy as np
import pandas as pd
from tqdm import trange
from PCGLabPy.core.errors import SingleClass, DimMismatch
from PCGLabPy.nn.layers import Sequential, mlp, cross_entropy, softmax
from PCGLabPy.nn.optim import Adam, StepLR
from PCGLabPy.screening.demographics import fuse, DEMO_DIM
from PCGLabPy.utils.config import resolve_config

MODES = ('frozen', 'finetune')


class HeadModel(Sequential):
    def __init__(self, input_dim, hidden=256, dropout=0.5, rng=None):
        """
        Classification head: two relu hidden layers of `hidden` units with
        dropout, and two output logits (normal, abnormal).

        Parameters
        ----------
        input_dim : int
            Embedding size, plus 10 for fused demographics
        hidden : int
        dropout : float
            Active only when training
        rng : np.random.RandomState
            Initialisation and dropout masks
        """
        if rng is None:
            rng = np.random.RandomState(0)
        self.input_dim = int(input_dim)
        self.hidden = int(hidden)
        self.dropout = float(dropout)
        net = mlp([self.input_dim, self.hidden, self.hidden, 2], rng,
                  self.dropout)
        super().__init__(list(net.layers.items()))

    @property
    def config(self):
        return dict(input_dim=self.input_dim, hidden=self.hidden,
                    dropout=self.dropout)

    def forward(self, x, training=False):
        x = np.asarray(x, dtype=np.float64)
        if x.ndim != 2 or x.shape[1] != self.input_dim:
            raise DimMismatch("Head expects {} input values, got shape {}"
                              .format(self.input_dim, x.shape))
        return super().forward(x, training)


def outcome_probabilities(logits):
    """
    Returns
    -------
    p_abnormal : ndarray
    abnormal : ndarray
        True where the abnormal logit is not below the normal one (ties are
        abnormal)
    """
    logits = np.atleast_2d(logits)
    return softmax(logits)[:, 1], logits[:, 1] >= logits[:, 0]


def head_inputs(x, encoder=None, demo=None, training=False):
    """
    Head input of a batch: `x` are embeddings, or spectrograms passed
    through `encoder` when one is given; demographics are fused after.
    """
    if encoder is not None:
        x = encoder.forward(x, training)
    if demo is not None:
        x = fuse(x, demo)
    return x


def head_loss(head, x, labels, encoder=None, demo=None, training=False,
              backward=False):
    """
    Mean cross-entropy of a batch.

    Parameters
    ----------
    head : HeadModel
    x : ndarray
        Embeddings (n, d), or spectrograms (n, T, F) with `encoder`
    labels : ndarray
        0 normal, 1 abnormal
    encoder : Encoder
        Trained jointly when given
    demo : ndarray
        Encoded demographics (n, 10)
    training : bool
        Dropout active
    backward : bool
        Store parameter gradients in `head` (and `encoder`)

    Returns
    -------
    float
    """
    inputs = head_inputs(x, encoder, demo, training)
    loss, dlogits = cross_entropy(head.forward(inputs, training), labels)
    if backward:
        dx = head.backward(dlogits)
        if encoder is not None:
            encoder.backward(dx[:, :encoder.embed_dim])
    return loss


def _check_labels(labels):
    labels = np.asarray(labels)
    if not np.isin(labels, (0, 1)).all():
        raise ValueError("Outcome labels must be 0 (normal) or 1 (abnormal)")
    if np.unique(labels).size < 2:
        raise SingleClass("Outcome labels hold a single class")
    return labels.astype(np.int64)


def train_head(inputs, labels, config=None, mode='frozen', encoder=None,
               demo=None):
    """
    Train the classification head with the recipe of the `head` config
    section: Adam, cross-entropy, learning rate multiplied by lr_gamma every
    lr_step_epochs epochs, dropout while training.

    Parameters
    ----------
    inputs : ndarray
        "frozen": embeddings (n, d) of a fixed encoder.
        "finetune": spectrograms (n, n_frames, n_mels), passed through
        `encoder`, which is trained jointly.
    labels : ndarray
        0 normal, 1 abnormal
    config : dict
    mode : str
        "frozen" or "finetune"
    encoder : Encoder
        Required for "finetune"; a trained copy is returned, the given
        encoder is never modified
    demo : ndarray
        Encoded demographics (n, 10), fused after the embedding

    Returns
    -------
    head : HeadModel
    encoder : Encoder
        The given encoder ("frozen") or its fine-tuned copy
    log : pd.DataFrame
        Per-epoch mean training loss and learning rate
    """
    config = resolve_config(config)
    params = config['head']
    if mode not in MODES:
        raise ValueError("mode must be one of {}".format(MODES))
    labels = _check_labels(labels)
    inputs = np.asarray(inputs, dtype=np.float64)
    n = labels.size
    if inputs.shape[0] != n:
        raise DimMismatch("{} inputs but {} labels"
                          .format(inputs.shape[0], n))
    if demo is not None:
        demo = np.asarray(demo, dtype=np.float64)

    rng = np.random.RandomState(config['seed'])
    if mode == 'finetune':
        if encoder is None:
            raise ValueError("finetune mode requires an encoder")
        encoder = copy.deepcopy(encoder)
        input_dim = encoder.embed_dim
    else:
        input_dim = inputs.shape[1]
    if demo is not None:
        input_dim += DEMO_DIM
    head = HeadModel(input_dim, params['hidden'], params['dropout'], rng)

    trainable = head.parameters()
    joint = encoder if mode == 'finetune' else None
    if joint is not None:
        trainable = joint.parameters() + trainable
    optimizer = Adam(trainable, lr=params['lr'])
    scheduler = StepLR(optimizer, params['lr_step_epochs'],
                       params['lr_gamma'])
    print("[HeadModel] Training {} head: {} examples, input dim {}"
          .format(mode, n, input_dim))

    rows = []
    batch_size = params['batch_size']
    for epoch in trange(1, params['epochs'] + 1, desc="Training head"):
        lr = scheduler.set_epoch(epoch)
        order = rng.permutation(n)
        total = 0.0
        for start in range(0, n, batch_size):
            idx = order[start:start + batch_size]
            loss = head_loss(
                head, inputs[idx], labels[idx], joint,
                None if demo is None else demo[idx],
                training=True, backward=True,
            )
            grads = head.gradients()
            if joint is not None:
                grads = joint.gradients() + grads
            optimizer.step(grads)
            total += loss * idx.size
        rows.append(dict(epoch=epoch, loss=total / n, lr=lr))
    return head, encoder, pd.DataFrame(rows, columns=['epoch', 'loss', 'lr'])
