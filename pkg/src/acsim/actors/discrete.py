from typing import Sequence
from typing import Tuple
from nptyping import NDArray
from nptyping import Shape
from nptyping import Float64

from dataclasses import dataclass

from numpy import abs as np_abs
from numpy import arange
from numpy import asarray
from numpy import finfo
from numpy import float64
from numpy import isfinite
from numpy import log
from numpy import maximum
from numpy import ones
from scipy.special import logsumexp
from scipy.special import softmax

from acsim.critic import Critic
from acsim.critic import predict_batch
from acsim.exceptions import ContractViolation
from acsim.exceptions import DimensionMismatch
from acsim.exceptions import NonFiniteValue
from acsim.nn import AdamState
from acsim.nn import NetworkSpec
from acsim.nn import ParamVector
from acsim.nn import adam_step
from acsim.nn import backward
from acsim.nn import forward
from acsim.nn import init_params


Vector = NDArray[Shape["*"], Float64]

TINY = finfo(float64).tiny


@dataclass(frozen=True, eq=False)
class DiscreteActor:
    """Softmax policy over a finite set of ``n_designs`` designs, fed a constant scalar input."""
    params: ParamVector
    n_designs: int

    def __post_init__(self):
        spec = self.params.spec
        if spec.output_width != self.n_designs:
            raise DimensionMismatch('actor network must output {} logits, got {}'.format(self.n_designs, spec.output_width))
        if spec.input_width != 1:
            raise DimensionMismatch('the discrete actor takes a single constant input')

    def with_params(self, params: ParamVector) -> 'DiscreteActor':
        return DiscreteActor(params, self.n_designs)


@dataclass(frozen=True, eq=False)
class ProbabilityVector:
    """Strictly positive probabilities summing to one."""
    probs: Vector

    def __post_init__(self):
        p = asarray(self.probs, dtype=float64).ravel()
        if not isfinite(p).all():
            raise NonFiniteValue('probabilities must be finite')
        if (p <= 0).any():
            raise ContractViolation('probabilities must be strictly positive')
        if abs(p.sum() - 1.0) > 1e-12:
            raise ContractViolation('probabilities sum to {!r}, not 1'.format(p.sum()))
        p.setflags(write=False)
        object.__setattr__(self, 'probs', p)

    def __len__(self):
        return self.probs.shape[0]

    @classmethod
    def from_logits(cls, logits: Vector) -> 'ProbabilityVector':
        """Softmax of the logits, floored at the smallest normal float so no entry underflows to zero."""
        p = maximum(softmax(asarray(logits, dtype=float64)), TINY)
        return cls(p / p.sum())


ACTOR_INPUT = ones(1)


def make_discrete_actor(n_designs: int,
                        rng,
                        hidden: Sequence[int] = (64, 64),
                        activation: str = 'tanh') -> DiscreteActor:
    spec = NetworkSpec.from_widths((1,) + tuple(hidden) + (n_designs,), activation)
    return DiscreteActor(init_params(spec, rng), n_designs)


def actor_logits(actor: DiscreteActor) -> Vector:
    return forward(actor.params, ACTOR_INPUT)


def design_distribution(actor: DiscreteActor) -> ProbabilityVector:
    return ProbabilityVector.from_logits(actor_logits(actor))


def sample_index(P: ProbabilityVector, rng) -> int:
    return int(rng.choice(len(P), p=P.probs))


def _values(P: ProbabilityVector, Q_values: Vector) -> Vector:
    q = asarray(Q_values, dtype=float64).ravel()
    if q.shape[0] != len(P):
        raise DimensionMismatch('{} scores for {} designs'.format(q.shape[0], len(P)))
    return q


def discrete_objective(P: ProbabilityVector, Q_values: Vector, alpha: float) -> float:
    """Expected score plus ``alpha`` times the entropy of ``P``."""
    if alpha < 0:
        raise ContractViolation('alpha must be nonnegative, got {}'.format(alpha))
    q = _values(P, Q_values)
    p = P.probs
    return float((p * (q - alpha * log(p))).sum())


def critic_values(actor: DiscreteActor, critic: Critic) -> Vector:
    """Critic predictions for every design of the finite space."""
    if critic.input_dim != actor.n_designs:
        raise DimensionMismatch('critic of input dimension {} for {} designs'.format(critic.input_dim, actor.n_designs))
    return predict_batch(critic, arange(actor.n_designs).tolist())


def objective_gradient(actor: DiscreteActor, Q_values: Vector, alpha: float) -> Vector:
    """Exact gradient of the regularized objective with respect to the actor parameters.

    The bracket ``Q - alpha * log P - alpha`` is pulled back through the softmax
    Jacobian; its constant ``-alpha`` part contributes nothing since the
    probabilities sum to one.
    """
    P = design_distribution(actor)
    q = _values(P, Q_values)
    p = P.probs
    bracket = q - alpha * log(p) - alpha
    logits_grad = p * (bracket - (p * bracket).sum())
    grad, _ = backward(actor.params, ACTOR_INPUT, logits_grad)
    return grad


def actor_update_discrete(actor: DiscreteActor,
                          critic: Critic,
                          alpha: float,
                          opt: AdamState,
                          lr: float) -> Tuple[DiscreteActor, AdamState]:
    """One ascent step, with the critic queried on every design."""
    if alpha < 0:
        raise ContractViolation('alpha must be nonnegative, got {}'.format(alpha))
    grad = objective_gradient(actor, critic_values(actor, critic), alpha)
    opt, params = adam_step(opt, actor.params, -grad, lr)
    return actor.with_params(params), opt


def optimal_distribution(Q_values: Vector, alpha: float) -> ProbabilityVector:
    """Energy-based maximizer ``exp(Q / alpha) / sum(exp(Q / alpha))`` of the regularized objective."""
    if not alpha > 0:
        raise ContractViolation('alpha must be strictly positive, got {}'.format(alpha))
    return ProbabilityVector.from_logits(asarray(Q_values, dtype=float64) / alpha)


def log_partition_value(Q_values: Vector, alpha: float) -> float:
    """Optimal objective value ``alpha * log(sum(exp(Q / alpha)))``."""
    if not alpha > 0:
        raise ContractViolation('alpha must be strictly positive, got {}'.format(alpha))
    return float(alpha * logsumexp(asarray(Q_values, dtype=float64) / alpha))


def total_variation(p: ProbabilityVector, q: ProbabilityVector) -> float:
    if len(p) != len(q):
        raise DimensionMismatch('distributions over {} and {} designs'.format(len(p), len(q)))
    return float(0.5 * np_abs(p.probs - q.probs).sum())
