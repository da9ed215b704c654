from typing import Union
from nptyping import NDArray
from nptyping import Shape
from nptyping import Float64

from dataclasses import dataclass

from numpy import asarray
from numpy import float64
from numpy import isfinite
from scipy.stats import norm

from acsim.exceptions import ContractViolation
from acsim.exceptions import DesignOutOfRange
from acsim.exceptions import DimensionMismatch


@dataclass(frozen=True)
class GmmParams:
    """Two-component Gaussian mixture, defaulting to the toy benchmark values."""
    w1: float = 0.51
    w2: float = 0.49
    mu1: float = -0.7
    mu2: float = 0.7
    sigma1: float = 0.6
    sigma2: float = 0.6

    def __post_init__(self):
        if not (self.w1 > 0 and self.w2 > 0):
            raise ContractViolation('mixture weights must be positive')
        if not (self.sigma1 > 0 and self.sigma2 > 0):
            raise ContractViolation('mixture standard deviations must be positive')


def _scalar(x) -> float:
    v = asarray(x, dtype=float64).ravel()
    if v.shape[0] != 1:
        raise DimensionMismatch('the mixture objective takes a scalar design, got {} values'.format(v.shape[0]))
    return float(v[0])


def gmm_score(params: GmmParams, x: Union[float, NDArray[Shape["1"], Float64]]) -> float:
    """Mixture density at a design in ``(-1, 1)``."""
    x = _scalar(x)
    if not isfinite(x) or abs(x) >= 1:
        raise DesignOutOfRange('design {} outside (-1, 1)'.format(x))
    return float(params.w1 * norm.pdf(x, params.mu1, params.sigma1) + params.w2 * norm.pdf(x, params.mu2, params.sigma2))


class GmmObjective:
    """Black-box wrapper of :func:`gmm_score`."""

    design_dim = 1

    def __init__(self, params: GmmParams = GmmParams()):
        self.params = params

    def __call__(self, x) -> float:
        return gmm_score(self.params, x)
