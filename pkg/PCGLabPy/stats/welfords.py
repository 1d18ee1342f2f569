import numpy as np
from numba import njit


@njit
def welfords_online_algorithm(samples, mean, count, m2):
    """
    Feed samples into Welford's online algorithm to stably calculate the
    running mean and standard deviation

    https://en.wikipedia.org/wiki/Algorithms_for_calculating_variance#Welford's_online_algorithm

    Parameters
    ----------
    samples : ndarray
        1-D float64 samples to add to the calculation
    mean : float
        Latest value for the mean
    count : int
        Amount of values contributed so far
    m2 : float
        Sum of squares of differences from the current mean

    Returns
    -------
    mean : float
    count : int
    m2 : float
    """
    for sample in samples:
        delta = sample - mean
        count += 1
        mean += delta / count
        delta2 = sample - mean
        m2 += delta * delta2
    return mean, count, m2


class RunningStats:
    """
    Mean and population standard deviation of a stream of arrays
    """
    def __init__(self):
        self.mean = 0.0
        self.count = 0
        self.m2 = 0.0

    def update(self, values):
        values = np.ascontiguousarray(values, dtype=np.float64).ravel()
        self.mean, self.count, self.m2 = welfords_online_algorithm(
            values, self.mean, self.count, self.m2
        )

    @property
    def std(self):
        if self.count == 0:
            return 0.0
        return float(np.sqrt(self.m2 / self.count))
