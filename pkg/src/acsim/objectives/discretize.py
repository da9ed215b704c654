from typing import Callable
from nptyping import NDArray
from nptyping import Shape
from nptyping import Float64

from numpy import arange
from numpy import array

from acsim.exceptions import ContractViolation
from acsim.exceptions import DesignOutOfRange


def grid_points(n: int) -> NDArray[Shape["*"], Float64]:
    """Midpoints ``-1 + 2 (k + 0.5) / n`` of ``n`` equal cells of ``(-1, 1)``."""
    if n < 2:
        raise ContractViolation('a discretized space needs at least 2 designs, got {}'.format(n))
    return -1.0 + 2.0 * (arange(n) + 0.5) / n


class DiscreteObjective:
    """Finite scorer over designs ``0..n-1`` built from a scalar continuous objective."""

    def __init__(self, objective: Callable, n: int):
        self.objective = objective
        self.points = grid_points(n)
        self.n_designs = n

    def __call__(self, k: int) -> float:
        k = int(k)
        if not 0 <= k < self.n_designs:
            raise DesignOutOfRange('design index {} outside 0..{}'.format(k, self.n_designs - 1))
        return float(self.objective(array([self.points[k]])))

    def scores(self) -> NDArray[Shape["*"], Float64]:
        """Objective values of all designs."""
        return array([self(k) for k in range(self.n_designs)])


def discretize(objective: Callable, n: int) -> DiscreteObjective:
    return DiscreteObjective(objective, n)
