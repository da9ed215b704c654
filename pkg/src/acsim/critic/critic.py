from typing import Iterable
from typing import List
from typing import Sequence
from typing import Tuple
from typing import Union
from nptyping import NDArray
from nptyping import Shape
from nptyping import Float64

from dataclasses import dataclass

from numpy import array
from numpy import asarray
from numpy import float64
from numpy import integer
from numpy import isfinite
from numpy import ones
from numpy import stack
from numpy import zeros

from acsim.exceptions import DimensionMismatch
from acsim.exceptions import EmptyBatch
from acsim.exceptions import NonFiniteValue
from acsim.nn import AdamState
from acsim.nn import NetworkSpec
from acsim.nn import ParamVector
from acsim.nn import adam_step
from acsim.nn import backward
from acsim.nn import forward
from acsim.nn import init_params


# a bounded real vector (continuous spaces) or a category index (finite spaces)
Design = Union[NDArray[Shape["*"], Float64], int]


@dataclass(frozen=True, eq=False)
class Critic:
    """Surrogate of the black-box objective.

    Parameters
    ----------
    params : :class:`acsim.nn.ParamVector`
        Network parameters, with a single output.
    input_dim : int
        Design dimension, or the number of designs of a finite space (one-hot width).

    """
    params: ParamVector
    input_dim: int

    def __post_init__(self):
        spec = self.params.spec
        if spec.output_width != 1:
            raise DimensionMismatch('a critic has exactly one output, got {}'.format(spec.output_width))
        if spec.input_width != self.input_dim:
            raise DimensionMismatch('critic network takes {} inputs, not {}'.format(spec.input_width, self.input_dim))

    def with_params(self, params: ParamVector) -> 'Critic':
        return Critic(params, self.input_dim)


@dataclass(frozen=True, eq=False)
class ScoredDesign:
    """A queried design and the score the objective returned for it."""
    design: Design
    score: float

    def __post_init__(self):
        score = float(self.score)
        if not isfinite(score):
            raise NonFiniteValue('score must be finite, got {}'.format(score))
        object.__setattr__(self, 'score', score)
        if not is_index(self.design):
            design = array(self.design, dtype=float64)
            design.setflags(write=False)
            object.__setattr__(self, 'design', design)


def is_index(design) -> bool:
    return isinstance(design, (int, integer)) and not isinstance(design, bool)


def one_hot(index: int, width: int) -> NDArray[Shape["*"], Float64]:
    if not 0 <= index < width:
        raise DimensionMismatch('design index {} outside 0..{}'.format(index, width - 1))
    v = zeros(width)
    v[index] = 1.0
    return v


def encode_design(design: Design, input_dim: int) -> NDArray[Shape["*"], Float64]:
    """Network input for a design: one-hot for category indices, the vector itself otherwise."""
    if is_index(design):
        return one_hot(int(design), input_dim)
    x = asarray(design, dtype=float64).ravel()
    if x.shape[0] != input_dim:
        raise DimensionMismatch('design of length {} for a critic of input dimension {}'.format(x.shape[0], input_dim))
    return x


def make_critic(input_dim: int,
                rng,
                hidden: Sequence[int] = (64, 64),
                activation: str = 'tanh') -> Critic:
    spec = NetworkSpec.from_widths((input_dim,) + tuple(hidden) + (1,), activation)
    return Critic(init_params(spec, rng), input_dim)


def predict(critic: Critic, x: Design) -> float:
    """Predicted score of a single design."""
    return float(forward(critic.params, encode_design(x, critic.input_dim))[0])


def predict_batch(critic: Critic, designs: Iterable[Design]) -> NDArray[Shape["*"], Float64]:
    X = stack([encode_design(x, critic.input_dim) for x in designs])
    return forward(critic.params, X)[:, 0]


def _stack(critic: Critic, batch: Sequence[ScoredDesign]) -> Tuple[NDArray, NDArray]:
    if not batch:
        raise EmptyBatch('critic batch is empty')
    X = stack([encode_design(entry.design, critic.input_dim) for entry in batch])
    y = array([entry.score for entry in batch])
    return X, y


def critic_loss(critic: Critic, batch: Sequence[ScoredDesign]) -> float:
    """Mean squared-error loss ``mean(0.5 * (Q(x) - y) ** 2)`` over the batch."""
    X, y = _stack(critic, batch)
    r = forward(critic.params, X)[:, 0] - y
    return float(0.5 * (r * r).mean())


def critic_gradient(critic: Critic, batch: Sequence[ScoredDesign]) -> NDArray[Shape["*"], Float64]:
    """Gradient of :func:`critic_loss` with respect to the critic parameters."""
    X, y = _stack(critic, batch)
    r = forward(critic.params, X)[:, 0] - y
    grad, _ = backward(critic.params, X, (r / len(batch)).reshape((-1, 1)))
    return grad


def critic_update(critic: Critic,
                  batch: Sequence[ScoredDesign],
                  opt: AdamState,
                  lr: float) -> Tuple[Critic, AdamState]:
    """One optimizer step on the regression loss."""
    grad = critic_gradient(critic, batch)
    opt, params = adam_step(opt, critic.params, grad, lr)
    return critic.with_params(params), opt


def critic_input_gradient(critic: Critic, X: NDArray[Shape["*, *"], Float64]) -> NDArray[Shape["*, *"], Float64]:
    """Gradient of the predicted score with respect to each input row of ``X``."""
    X = asarray(X, dtype=float64)
    _, input_grad = backward(critic.params, X, ones((X.shape[0], 1)))
    return input_grad


def scored_designs(designs: Iterable[Design], scores: Iterable[float]) -> List[ScoredDesign]:
    return [ScoredDesign(x, y) for x, y in zip(designs, scores)]
