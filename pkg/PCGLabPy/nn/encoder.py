import numpy as np
from PCGLabPy.core.errors import ShapeMismatch
from PCGLabPy.nn.layers import (
    Sequential, Conv2d, Relu, TemporalPooling, Linear
)


class Encoder(Sequential):
    def __init__(self, embed_dim=3072, channels=(16, 32, 64), n_frames=96,
                 n_mels=64, rng=None):
        """
        Spectrogram encoder: three 3x3 stride-2 convolution blocks with
        relu, mean + max pooling over time of the last feature map, and a
        linear projection to `embed_dim`.

        Parameters
        ----------
        embed_dim : int
        channels : tuple
            Output channels of the convolution blocks
        n_frames : int
            Time frames of the input spectrogram
        n_mels : int
            Mel bins of the input spectrogram
        rng : np.random.RandomState
            Initialisation
        """
        if rng is None:
            rng = np.random.RandomState(0)
        self.embed_dim = int(embed_dim)
        self.channels = tuple(int(c) for c in channels)
        self.n_frames = int(n_frames)
        self.n_mels = int(n_mels)

        layers = []
        c_in, h, w = 1, self.n_frames, self.n_mels
        for i, c_out in enumerate(self.channels):
            conv = Conv2d(c_in, c_out, rng)
            layers.append(("conv{}".format(i), conv))
            layers.append(("relu{}".format(i), Relu()))
            h, w = conv.output_shape(h, w)
            c_in = c_out
        layers.append(("pool", TemporalPooling()))
        layers.append(("proj", Linear(2 * c_in * w, self.embed_dim, rng)))
        super().__init__(layers)

    @property
    def config(self):
        return dict(embed_dim=self.embed_dim, channels=list(self.channels),
                    n_frames=self.n_frames, n_mels=self.n_mels)

    def check_input(self, x):
        """
        Spectrogram(s) as a (N, 1, n_frames, n_mels) batch
        """
        x = np.asarray(x, dtype=np.float64)
        if x.ndim == 2:
            x = x[None]
        if x.ndim == 3:
            x = x[:, None]
        if x.ndim != 4 or x.shape[1:] != (1, self.n_frames, self.n_mels):
            raise ShapeMismatch("Encoder expects ({}, {}) spectrograms, got "
                                "shape {}".format(self.n_frames, self.n_mels,
                                                  x.shape))
        return x

    def forward(self, x, training=False):
        return super().forward(self.check_input(x), training)


def forward_encoder(encoder, spec):
    """
    Embedding of one spectrogram.

    Parameters
    ----------
    encoder : Encoder
    spec : MelSpectrogram or ndarray
        Shape (n_frames, n_mels)

    Returns
    -------
    ndarray
        Shape (embed_dim,)
    """
    grid = getattr(spec, 'grid', spec)
    if np.ndim(grid) != 2:
        raise ShapeMismatch("Expected a single (n_frames, n_mels) "
                            "spectrogram")
    return encoder.forward(grid)[0]
