import numpy as np
from numba import njit
from scipy.signal import decimate
from PCGLabPy.core.extractor import FeatureExtractor, column

EMBEDDING_DIM = 2
TOLERANCE_FRACTION = 0.2
DECIMATION = 4


@njit
def sample_entropy_kernel(x, m, r):
    """
    Sample entropy -ln(A/B), where B counts pairs of length-m templates
    within Chebyshev distance r and A the pairs that stay within r when
    extended to length m + 1. NaN when either count is zero.
    """
    n = x.size
    a = 0
    b = 0
    for i in range(n - m):
        for j in range(i + 1, n - m):
            match = True
            for k in range(m):
                if abs(x[i + k] - x[j + k]) > r:
                    match = False
                    break
            if match:
                b += 1
                if abs(x[i + m] - x[j + m]) <= r:
                    a += 1
    if a == 0 or b == 0:
        return np.nan
    return -np.log(a / b)


class SampleEntropy(FeatureExtractor):
    order = 80

    @column
    def sample_entropy(self):
        """
        Sample entropy (m=2, r=0.2*std) of the 4x decimated signal
        """
        x = decimate(self.context.samples, DECIMATION, ftype='fir',
                     zero_phase=True)
        x = np.ascontiguousarray(x, dtype=np.float64)
        r = TOLERANCE_FRACTION * x.std()
        return sample_entropy_kernel(x, EMBEDDING_DIM, r)
