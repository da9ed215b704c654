from typing import Tuple
from nptyping import NDArray
from nptyping import Shape
from nptyping import Float64

from dataclasses import dataclass

from numpy import asarray
from numpy import float64
from numpy import isfinite
from numpy import sqrt
from numpy import zeros

from acsim.exceptions import ContractViolation
from acsim.exceptions import DimensionMismatch
from acsim.exceptions import NonFiniteValue

from .network import ParamVector


@dataclass(frozen=True, eq=False)
class AdamState:
    """Moment estimates of the Adam optimizer for one parameter vector."""
    first_moment: NDArray[Shape["*"], Float64]
    second_moment: NDArray[Shape["*"], Float64]
    step_count: int = 0
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8

    def __post_init__(self):
        if self.first_moment.shape != self.second_moment.shape:
            raise DimensionMismatch('moment vectors differ in shape')
        if self.step_count < 0:
            raise ContractViolation('step count must be nonnegative')

    @classmethod
    def fresh(cls, size: int, beta1: float = 0.9, beta2: float = 0.999, epsilon: float = 1e-8) -> 'AdamState':
        return cls(zeros(size), zeros(size), 0, beta1, beta2, epsilon)

    @classmethod
    def for_params(cls, params: ParamVector, **kwargs) -> 'AdamState':
        return cls.fresh(params.spec.parameter_count, **kwargs)


def adam_step(state: AdamState,
              params: ParamVector,
              grad: NDArray[Shape["*"], Float64],
              lr: float) -> Tuple[AdamState, ParamVector]:
    """One bias-corrected Adam descent step.

    Callers that maximize pass the negated gradient.
    """
    g = asarray(grad, dtype=float64)
    if g.shape != params.values.shape or g.shape != state.first_moment.shape:
        raise DimensionMismatch('gradient of shape {} for {} parameters'.format(g.shape, params.values.shape[0]))
    if not lr > 0:
        raise ContractViolation('learning rate must be positive, got {}'.format(lr))
    if not isfinite(g).all():
        raise NonFiniteValue('gradient has non-finite entries')

    t = state.step_count + 1
    m = state.beta1 * state.first_moment + (1.0 - state.beta1) * g
    v = state.beta2 * state.second_moment + (1.0 - state.beta2) * g * g
    m_hat = m / (1.0 - state.beta1 ** t)
    v_hat = v / (1.0 - state.beta2 ** t)
    values = params.values - lr * m_hat / (sqrt(v_hat) + state.epsilon)

    new_state = AdamState(m, v, t, state.beta1, state.beta2, state.epsilon)
    return new_state, params.with_values(values)
