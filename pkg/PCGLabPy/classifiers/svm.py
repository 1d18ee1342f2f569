import warnings
import numpy as np
from numba import njit
from PCGLabPy.core.classifier import Classifier, check_xy
from PCGLabPy.core.errors import SingleClass

TAU = 1e-12
PLATT_MAX_ITER = 100
PLATT_MIN_STEP = 1e-10
PLATT_SIGMA = 1e-12
PLATT_EPS = 1e-5


def kernel_matrix(A, B, kernel, gamma):
    """
    Gram matrix between the rows of A and B.

    Parameters
    ----------
    A, B : ndarray
    kernel : str
        'linear' or 'rbf'
    gamma : float
        Width of the rbf kernel exp(-gamma * |a - b|^2)
    """
    if kernel == 'linear':
        return A @ B.T
    if kernel == 'rbf':
        sq = (np.sum(A ** 2, axis=1)[:, None] + np.sum(B ** 2, axis=1)[None]
              - 2 * A @ B.T)
        return np.exp(-gamma * np.maximum(sq, 0))
    raise ValueError("Unknown kernel: {}".format(kernel))


@njit
def _smo(K, y, C, eps, max_iter):
    """
    Sequential minimal optimisation of the SVM dual with second order
    working set selection.

    Minimises 0.5 a^T Q a - sum(a) subject to 0 <= a <= C and y^T a = 0,
    with Q_ij = y_i y_j K_ij.

    Returns
    -------
    alpha : ndarray
    rho : float
        Offset, decision(x) = sum_i alpha_i y_i K(x_i, x) - rho
    gap : float
        Maximal KKT violation at exit
    n_iter : int
    """
    n = y.size
    alpha = np.zeros(n)
    G = -np.ones(n)
    gap = np.inf
    n_iter = 0
    while n_iter < max_iter:
        # Select i: maximal violation from the "up" set
        g_max = -np.inf
        i = -1
        for t in range(n):
            if y[t] == 1:
                if alpha[t] < C and -G[t] >= g_max:
                    g_max = -G[t]
                    i = t
            else:
                if alpha[t] > 0 and G[t] >= g_max:
                    g_max = G[t]
                    i = t

        # Select j: maximal decrease of the objective from the "low" set
        g_max2 = -np.inf
        j = -1
        obj_diff_min = np.inf
        for t in range(n):
            if y[t] == 1:
                if alpha[t] > 0:
                    grad_diff = g_max + G[t]
                    if G[t] >= g_max2:
                        g_max2 = G[t]
                    if grad_diff > 0 and i >= 0:
                        quad = K[i, i] + K[t, t] - 2.0 * K[i, t]
                        if quad <= 0:
                            quad = TAU
                        obj_diff = -(grad_diff * grad_diff) / quad
                        if obj_diff <= obj_diff_min:
                            j = t
                            obj_diff_min = obj_diff
            else:
                if alpha[t] < C:
                    grad_diff = g_max - G[t]
                    if -G[t] >= g_max2:
                        g_max2 = -G[t]
                    if grad_diff > 0 and i >= 0:
                        quad = K[i, i] + K[t, t] - 2.0 * K[i, t]
                        if quad <= 0:
                            quad = TAU
                        obj_diff = -(grad_diff * grad_diff) / quad
                        if obj_diff <= obj_diff_min:
                            j = t
                            obj_diff_min = obj_diff

        gap = g_max + g_max2
        if gap < eps or i < 0 or j < 0:
            break
        n_iter += 1

        old_ai = alpha[i]
        old_aj = alpha[j]
        q_ij = y[i] * y[j] * K[i, j]
        if y[i] != y[j]:
            quad = K[i, i] + K[j, j] + 2.0 * q_ij
            if quad <= 0:
                quad = TAU
            delta = (-G[i] - G[j]) / quad
            diff = alpha[i] - alpha[j]
            alpha[i] += delta
            alpha[j] += delta
            if diff > 0:
                if alpha[j] < 0:
                    alpha[j] = 0.0
                    alpha[i] = diff
            else:
                if alpha[i] < 0:
                    alpha[i] = 0.0
                    alpha[j] = -diff
            if diff > 0:
                if alpha[i] > C:
                    alpha[i] = C
                    alpha[j] = C - diff
            else:
                if alpha[j] > C:
                    alpha[j] = C
                    alpha[i] = C + diff
        else:
            quad = K[i, i] + K[j, j] - 2.0 * q_ij
            if quad <= 0:
                quad = TAU
            delta = (G[i] - G[j]) / quad
            total = alpha[i] + alpha[j]
            alpha[i] -= delta
            alpha[j] += delta
            if total > C:
                if alpha[i] > C:
                    alpha[i] = C
                    alpha[j] = total - C
            else:
                if alpha[j] < 0:
                    alpha[j] = 0.0
                    alpha[i] = total
            if total > C:
                if alpha[j] > C:
                    alpha[j] = C
                    alpha[i] = total - C
            else:
                if alpha[i] < 0:
                    alpha[i] = 0.0
                    alpha[j] = total

        d_ai = alpha[i] - old_ai
        d_aj = alpha[j] - old_aj
        for t in range(n):
            G[t] += y[t] * (y[i] * K[t, i] * d_ai + y[j] * K[t, j] * d_aj)

    # Offset from the free support vectors, else the midpoint of the bounds
    n_free = 0
    sum_free = 0.0
    ub = np.inf
    lb = -np.inf
    for t in range(n):
        yg = y[t] * G[t]
        if alpha[t] >= C:
            if y[t] == -1:
                ub = min(ub, yg)
            else:
                lb = max(lb, yg)
        elif alpha[t] <= 0:
            if y[t] == 1:
                ub = min(ub, yg)
            else:
                lb = max(lb, yg)
        else:
            n_free += 1
            sum_free += yg
    if n_free > 0:
        rho = sum_free / n_free
    else:
        rho = 0.5 * (ub + lb)
    return alpha, rho, gap, n_iter


def platt_scaling(decision, y):
    """
    Fit the sigmoid P(y=1 | f) = 1 / (1 + exp(A f + B)) to decision values
    by Newton iterations with backtracking, on regularised targets.

    Parameters
    ----------
    decision : ndarray
    y : ndarray
        Labels in {0, 1}

    Returns
    -------
    A, B : float
    """
    decision = np.asarray(decision, dtype=float)
    prior1 = float(np.sum(y == 1))
    prior0 = float(np.sum(y == 0))
    target = np.where(y == 1, (prior1 + 1) / (prior1 + 2), 1 / (prior0 + 2))

    def objective(a, b):
        f = decision * a + b
        return np.sum(np.where(
            f >= 0, target * f + np.log1p(np.exp(-np.abs(f))),
            (target - 1) * f + np.log1p(np.exp(-np.abs(f)))
        ))

    a, b = 0.0, np.log((prior0 + 1) / (prior1 + 1))
    fval = objective(a, b)
    for _ in range(PLATT_MAX_ITER):
        f = decision * a + b
        p = np.exp(-np.logaddexp(0, f))  # 1 / (1 + exp(f))
        q = 1 - p
        d2 = p * q
        h11 = PLATT_SIGMA + np.sum(decision ** 2 * d2)
        h22 = PLATT_SIGMA + np.sum(d2)
        h21 = np.sum(decision * d2)
        d1 = target - p
        g1 = np.sum(decision * d1)
        g2 = np.sum(d1)
        if abs(g1) < PLATT_EPS and abs(g2) < PLATT_EPS:
            break

        det = h11 * h22 - h21 * h21
        da = -(h22 * g1 - h21 * g2) / det
        db = -(-h21 * g1 + h11 * g2) / det
        gd = g1 * da + g2 * db
        step = 1.0
        while step >= PLATT_MIN_STEP:
            new_a = a + step * da
            new_b = b + step * db
            new_f = objective(new_a, new_b)
            if new_f < fval + 1e-4 * step * gd:
                a, b, fval = new_a, new_b, new_f
                break
            step /= 2
        if step < PLATT_MIN_STEP:
            break
    return float(a), float(b)


class Svm(Classifier):
    """
    Soft-margin support vector machine trained by SMO on standardised
    features, with Platt-scaled probabilities.
    """
    kind = 'svm'

    def __init__(self, kernel='rbf', C=1.0, gamma='scale', tol=1e-3,
                 max_iter=100000, **kwargs):
        """
        Parameters
        ----------
        kernel : str
            'rbf' or 'linear'
        C : float
            Box constraint
        gamma : float or 'scale'
            rbf width; 'scale' uses 1 / (n_features * var(X)) of the
            standardised training matrix
        tol : float
            KKT tolerance
        max_iter : int
        """
        super().__init__(**kwargs)
        self.kernel = kernel
        self.C = float(C)
        self.gamma = gamma
        self.tol = float(tol)
        self.max_iter = int(max_iter)
        self.mean = None
        self.scale = None
        self.gamma_ = None
        self.support_vectors = None
        self.dual_coef = None
        self.alpha = None
        self.rho = None
        self.platt = None
        self.kkt_gap = None
        self.n_iter = None
        self.converged = None

    def _standardize(self, X):
        return (X - self.mean) / self.scale

    def fit(self, X, y):
        X, y = check_xy(X, y)
        if np.unique(y).size < 2:
            raise SingleClass("Svm requires both classes")
        self.mean = X.mean(axis=0)
        std = X.std(axis=0)
        self.scale = np.where(std > 0, std, 1.0)
        Z = self._standardize(X)
        if self.gamma == 'scale':
            var = Z.var()
            self.gamma_ = 1.0 / (Z.shape[1] * var) if var > 0 else 1.0
        else:
            self.gamma_ = float(self.gamma)

        signs = np.where(y == 1, 1.0, -1.0)
        K = kernel_matrix(Z, Z, self.kernel, self.gamma_)
        alpha, rho, gap, n_iter = _smo(K, signs, self.C, self.tol,
                                       self.max_iter)
        self.kkt_gap = float(gap)
        self.n_iter = int(n_iter)
        self.converged = bool(gap < self.tol)
        if not self.converged:
            warnings.warn("Svm did not converge after {} iterations "
                          "(KKT gap {:.3g})".format(n_iter, gap), UserWarning)

        support = alpha > 0
        self.alpha = alpha
        self.support_vectors = Z[support]
        self.dual_coef = alpha[support] * signs[support]
        self.rho = float(rho)
        self.n_features = X.shape[1]

        decision = K[:, support] @ self.dual_coef - self.rho
        self.platt = platt_scaling(decision, y)
        return self

    def decision_function(self, X):
        X = self._check_fitted(X)
        return self._decision(X)

    def _decision(self, X):
        K = kernel_matrix(self._standardize(X), self.support_vectors,
                          self.kernel, self.gamma_)
        return K @ self.dual_coef - self.rho

    def _positive_proba(self, X):
        a, b = self.platt
        return np.exp(-np.logaddexp(0, a * self._decision(X) + b))

    def to_dict(self):
        d = self._base_dict()
        d.update(kernel=self.kernel, C=self.C, gamma=self.gamma_,
                 tol=self.tol, max_iter=self.max_iter,
                 mean=self.mean.tolist(), scale=self.scale.tolist(),
                 support_vectors=self.support_vectors.tolist(),
                 dual_coef=self.dual_coef.tolist(), rho=self.rho,
                 platt=list(self.platt), kkt_gap=self.kkt_gap,
                 n_iter=self.n_iter, converged=self.converged)
        return d

    @classmethod
    def from_dict(cls, d):
        model = cls(d['kernel'], d['C'], d['gamma'], d['tol'], d['max_iter'])
        model.gamma_ = d['gamma']
        model.mean = np.asarray(d['mean'])
        model.scale = np.asarray(d['scale'])
        model.support_vectors = np.asarray(
            d['support_vectors'], dtype=float
        ).reshape(-1, d['n_features'])
        model.dual_coef = np.asarray(d['dual_coef'], dtype=float)
        model.rho = d['rho']
        model.platt = tuple(d['platt'])
        model.kkt_gap = d['kkt_gap']
        model.n_iter = d['n_iter']
        model.converged = d['converged']
        model.n_features = d['n_features']
        return model
