"""
Numpy networks of the screening pipeline: layers with explicit backward
passes, Adam, the spectrogram encoder, self-supervised pretraining and
the checkpoint format.
"""
from .layers import (
    Module, Linear, Relu, Dropout, Conv2d, TemporalPooling, Sequential, mlp,
    l2_normalize, softmax, cross_entropy
)
from .optim import Adam, StepLR
from .encoder import Encoder, forward_encoder
from .byol import (
    ByolState, ByolTrainer, byol_loss, ema_update, normalized_mse, fit_byol
)
from .checkpoint import save_encoder, load_encoder
from .pretrain import pretrain, encode_frozen, random_encoder
