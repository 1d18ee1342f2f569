"""
Layers of the spectrogram networks, in float64 numpy with explicit
backward passes. Every layer caches what its backward pass needs during
`forward`; `backward` returns the gradient with respect to the input and
stores parameter gradients in `grads`.
"""
from collections import OrderedDict
import numpy as np
from numpy.lib.stride_tricks import sliding_window_view


class Module:
    def __init__(self):
        self.params = OrderedDict()
        self.grads = OrderedDict()

    def named_parameters(self, prefix=''):
        return [(prefix + name, p) for name, p in self.params.items()]

    def parameters(self):
        return [p for _, p in self.named_parameters()]

    def gradients(self):
        """
        Gradients of the last backward pass, in `parameters` order
        """
        return [self.grads[name] for name in self.params]

    def n_parameters(self):
        return int(sum(p.size for p in self.parameters()))

    def forward(self, x, training=False):
        raise NotImplementedError

    def backward(self, dout):
        raise NotImplementedError

    def __call__(self, x, training=False):
        return self.forward(x, training)


class Linear(Module):
    def __init__(self, n_in, n_out, rng):
        """
        y = x W + b, He-initialised weights, zero bias
        """
        super().__init__()
        self.params['weight'] = rng.standard_normal((n_in, n_out)) \
            * np.sqrt(2.0 / n_in)
        self.params['bias'] = np.zeros(n_out)
        self._x = None

    def forward(self, x, training=False):
        self._x = x
        return x @ self.params['weight'] + self.params['bias']

    def backward(self, dout):
        self.grads['weight'] = self._x.T @ dout
        self.grads['bias'] = dout.sum(axis=0)
        return dout @ self.params['weight'].T


class Relu(Module):
    def __init__(self):
        super().__init__()
        self._mask = None

    def forward(self, x, training=False):
        self._mask = x > 0
        return np.where(self._mask, x, 0.0)

    def backward(self, dout):
        return np.where(self._mask, dout, 0.0)


class Dropout(Module):
    def __init__(self, rate, rng):
        """
        Inverted dropout, only active when `training` is True
        """
        super().__init__()
        if not 0 <= rate < 1:
            raise ValueError("Dropout rate must be in [0, 1)")
        self.rate = float(rate)
        self.rng = rng
        self._scale = None

    def forward(self, x, training=False):
        if not training or self.rate == 0:
            self._scale = None
            return x
        keep = self.rng.random_sample(x.shape) >= self.rate
        self._scale = keep / (1 - self.rate)
        return x * self._scale

    def backward(self, dout):
        if self._scale is None:
            return dout
        return dout * self._scale


class Conv2d(Module):
    def __init__(self, c_in, c_out, rng, kernel=3, stride=2, padding=1):
        """
        2-D convolution of (N, C, H, W) inputs, computed as a matrix
        product over extracted patches
        """
        super().__init__()
        fan_in = c_in * kernel * kernel
        self.params['weight'] = rng.standard_normal(
            (c_out, c_in, kernel, kernel)
        ) * np.sqrt(2.0 / fan_in)
        self.params['bias'] = np.zeros(c_out)
        self.kernel = kernel
        self.stride = stride
        self.padding = padding
        self._cols = None
        self._shape = None

    def output_shape(self, h, w):
        k, s, p = self.kernel, self.stride, self.padding
        return (h + 2 * p - k) // s + 1, (w + 2 * p - k) // s + 1

    def forward(self, x, training=False):
        n, c, h, w = x.shape
        k, s, p = self.kernel, self.stride, self.padding
        ho, wo = self.output_shape(h, w)
        xp = np.pad(x, ((0, 0), (0, 0), (p, p), (p, p)))
        windows = sliding_window_view(xp, (k, k), axis=(2, 3))
        windows = windows[:, :, ::s, ::s][:, :, :ho, :wo]
        cols = windows.transpose(0, 2, 3, 1, 4, 5).reshape(n * ho * wo, -1)
        weight = self.params['weight'].reshape(
            self.params['weight'].shape[0], -1
        )
        out = cols @ weight.T + self.params['bias']
        self._cols = cols
        self._shape = x.shape
        return out.reshape(n, ho, wo, -1).transpose(0, 3, 1, 2)

    def backward(self, dout):
        n, c, h, w = self._shape
        k, s, p = self.kernel, self.stride, self.padding
        _, c_out, ho, wo = dout.shape
        d2 = dout.transpose(0, 2, 3, 1).reshape(-1, c_out)
        weight = self.params['weight'].reshape(c_out, -1)
        self.grads['weight'] = (d2.T @ self._cols).reshape(
            self.params['weight'].shape
        )
        self.grads['bias'] = d2.sum(axis=0)
        dcols = (d2 @ weight).reshape(n, ho, wo, c, k, k)
        dxp = np.zeros((n, c, h + 2 * p, w + 2 * p))
        for i in range(k):
            for j in range(k):
                dxp[:, :, i:i + s * ho:s, j:j + s * wo:s] += \
                    dcols[:, :, :, :, i, j].transpose(0, 3, 1, 2)
        return dxp[:, :, p:p + h, p:p + w]


class TemporalPooling(Module):
    """
    (N, C, T, F) feature maps -> (N, 2 * C * F): mean over time
    concatenated with max over time
    """
    def __init__(self):
        super().__init__()
        self._shape = None
        self._argmax = None

    def forward(self, x, training=False):
        n, c, t, f = x.shape
        z = x.transpose(0, 1, 3, 2).reshape(n, c * f, t)
        self._shape = x.shape
        self._argmax = z.argmax(axis=2)
        return np.concatenate([z.mean(axis=2), z.max(axis=2)], axis=1)

    def backward(self, dout):
        n, c, t, f = self._shape
        m = c * f
        dz = np.repeat(dout[:, :m, None] / t, t, axis=2)
        rows, cols = np.indices((n, m))
        dz[rows, cols, self._argmax] += dout[:, m:]
        return dz.reshape(n, c, f, t).transpose(0, 1, 3, 2)


class Sequential(Module):
    def __init__(self, layers):
        """
        Chain of named layers

        Parameters
        ----------
        layers : list
            (name, Module) pairs
        """
        super().__init__()
        self.layers = OrderedDict(layers)

    def named_parameters(self, prefix=''):
        out = []
        for name, layer in self.layers.items():
            out.extend(layer.named_parameters(prefix + name + '.'))
        return out

    def gradients(self):
        return [g for layer in self.layers.values()
                for g in layer.gradients()]

    def forward(self, x, training=False):
        for layer in self.layers.values():
            x = layer.forward(x, training)
        return x

    def backward(self, dout):
        for layer in reversed(list(self.layers.values())):
            dout = layer.backward(dout)
        return dout


def mlp(dims, rng, dropout=0.0):
    """
    Fully-connected network: relu (and dropout) after every layer but the
    last.

    Parameters
    ----------
    dims : list
        Layer widths, input first
    rng : np.random.RandomState
    dropout : float

    Returns
    -------
    Sequential
    """
    layers = []
    for i, (n_in, n_out) in enumerate(zip(dims[:-1], dims[1:])):
        layers.append(("linear{}".format(i), Linear(n_in, n_out, rng)))
        if i < len(dims) - 2:
            layers.append(("relu{}".format(i), Relu()))
            if dropout > 0:
                layers.append(("dropout{}".format(i), Dropout(dropout, rng)))
    return Sequential(layers)


def l2_normalize(x, eps=1e-12):
    """
    Row-wise unit L2 normalisation; zero rows stay zero

    Returns
    -------
    y : ndarray
    norm : ndarray
        Row norms, for `l2_normalize_backward`
    """
    norm = np.sqrt(np.sum(x ** 2, axis=1, keepdims=True))
    safe = np.where(norm > eps, norm, 1.0)
    y = np.where(norm > eps, x / safe, 0.0)
    return y, norm


def l2_normalize_backward(dy, y, norm, eps=1e-12):
    safe = np.where(norm > eps, norm, 1.0)
    dx = (dy - y * np.sum(y * dy, axis=1, keepdims=True)) / safe
    return np.where(norm > eps, dx, 0.0)


def softmax(logits):
    z = logits - logits.max(axis=1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=1, keepdims=True)


def cross_entropy(logits, labels):
    """
    Mean softmax cross-entropy of integer labels

    Returns
    -------
    loss : float
    dlogits : ndarray
    """
    n = logits.shape[0]
    z = logits - logits.max(axis=1, keepdims=True)
    log_p = z - np.log(np.exp(z).sum(axis=1, keepdims=True))
    loss = -log_p[np.arange(n), labels].mean()
    dlogits = np.exp(log_p)
    dlogits[np.arange(n), labels] -= 1
    return float(loss), dlogits / n
