import numpy as np


class Adam:
    def __init__(self, params, lr=1e-4, betas=(0.9, 0.999), eps=1e-8):
        """
        Adam optimiser updating a list of parameter arrays in place.

        Parameters
        ----------
        params : list
            Parameter arrays (e.g. `Module.parameters()`)
        lr : float
        betas : tuple
        eps : float
        """
        self.params = list(params)
        self.lr = float(lr)
        self.beta1, self.beta2 = betas
        self.eps = float(eps)
        self.m = [np.zeros_like(p) for p in self.params]
        self.v = [np.zeros_like(p) for p in self.params]
        self.t = 0

    def step(self, grads):
        """
        Parameters
        ----------
        grads : list
            Gradients, in `params` order
        """
        if len(grads) != len(self.params):
            raise ValueError("Adam expects {} gradients, got {}"
                             .format(len(self.params), len(grads)))
        self.t += 1
        c1 = 1 - self.beta1 ** self.t
        c2 = 1 - self.beta2 ** self.t
        for p, g, m, v in zip(self.params, grads, self.m, self.v):
            m *= self.beta1
            m += (1 - self.beta1) * g
            v *= self.beta2
            v += (1 - self.beta2) * g * g
            p -= self.lr * (m / c1) / (np.sqrt(v / c2) + self.eps)


class StepLR:
    def __init__(self, optimizer, step_size=5, gamma=0.1):
        """
        Decay the learning rate by `gamma` every `step_size` epochs.
        Epochs are counted from 1.
        """
        self.optimizer = optimizer
        self.base_lr = optimizer.lr
        self.step_size = int(step_size)
        self.gamma = float(gamma)

    def lr_at(self, epoch):
        return self.base_lr * self.gamma ** ((epoch - 1) // self.step_size)

    def set_epoch(self, epoch):
        self.optimizer.lr = self.lr_at(epoch)
        return self.optimizer.lr
