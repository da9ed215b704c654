from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple
from typing import Union
from nptyping import NDArray
from nptyping import Shape
from nptyping import Float64

from dataclasses import dataclass

from numpy import asarray
from numpy import clip
from numpy import concatenate
from numpy import exp
from numpy import float64
from numpy import log
from numpy import logaddexp
from numpy import nextafter
from numpy import ones
from numpy import pi
from numpy import stack
from numpy import tanh

from acsim.critic import Critic
from acsim.critic import critic_input_gradient
from acsim.exceptions import ContractViolation
from acsim.exceptions import DimensionMismatch
from acsim.exceptions import EmptyBatch
from acsim.nn import AdamState
from acsim.nn import NetworkSpec
from acsim.nn import ParamVector
from acsim.nn import adam_step
from acsim.nn import backward
from acsim.nn import forward
from acsim.nn import init_params


Vector = NDArray[Shape["*"], Float64]
Batch = NDArray[Shape["*, *"], Float64]

LOG_SIGMA_BOUNDS = (-5.0, 2.0)
HALF_LOG_2PI = 0.5 * log(2.0 * pi)
LOG_2 = log(2.0)
# largest float64 below 1; tanh rounds to exactly 1 for |u| > 19
OPEN_BOUND = nextafter(1.0, 0.0)


@dataclass(frozen=True, eq=False)
class ContinuousActor:
    """Squashed-Gaussian generator of designs in the open box ``(-1, 1)^d``.

    The network maps its input to ``2d`` outputs: the mean head followed by
    the log standard deviation head, which is clamped to ``log_sigma_bounds``.

    Parameters
    ----------
    params : :class:`acsim.nn.ParamVector`
        Network parameters.
    design_dim : int
        Dimension ``d`` of the design space.
    noise_dim : int, optional
        Width of the network input.
    log_sigma_bounds : tuple of float, optional
        Clamp interval of the log standard deviation head.
    stochastic_input : bool, optional
        If True, every sample feeds its own standard-normal network input,
        otherwise the input is the constant all-ones vector.

    """
    params: ParamVector
    design_dim: int
    noise_dim: int = 1
    log_sigma_bounds: Tuple[float, float] = LOG_SIGMA_BOUNDS
    stochastic_input: bool = False

    def __post_init__(self):
        spec = self.params.spec
        if spec.output_width != 2 * self.design_dim:
            raise DimensionMismatch('actor network must output {} values, got {}'.format(2 * self.design_dim, spec.output_width))
        if spec.input_width != self.noise_dim:
            raise DimensionMismatch('actor network takes {} inputs, not {}'.format(spec.input_width, self.noise_dim))
        lo, hi = self.log_sigma_bounds
        if not lo < hi:
            raise ContractViolation('invalid log sigma bounds: {}'.format(self.log_sigma_bounds))

    def with_params(self, params: ParamVector) -> 'ContinuousActor':
        return ContinuousActor(params, self.design_dim, self.noise_dim, self.log_sigma_bounds, self.stochastic_input)


@dataclass(frozen=True, eq=False)
class NoiseSample:
    """Standard-normal noise ``xi`` of one design, and the network input ``z`` it was drawn with."""
    xi: Vector
    z: Optional[Vector] = None

    def __post_init__(self):
        object.__setattr__(self, 'xi', asarray(self.xi, dtype=float64).ravel())
        if self.z is not None:
            object.__setattr__(self, 'z', asarray(self.z, dtype=float64).ravel())


def make_continuous_actor(design_dim: int,
                          rng,
                          hidden: Sequence[int] = (64, 64),
                          activation: str = 'tanh',
                          noise_dim: int = 1,
                          log_sigma_bounds: Tuple[float, float] = LOG_SIGMA_BOUNDS,
                          stochastic_input: bool = False) -> ContinuousActor:
    spec = NetworkSpec.from_widths((noise_dim,) + tuple(hidden) + (2 * design_dim,), activation)
    return ContinuousActor(init_params(spec, rng), design_dim, noise_dim, tuple(log_sigma_bounds), stochastic_input)


def draw_noise(actor: ContinuousActor, n: int, rng) -> List[NoiseSample]:
    """Draw ``n`` noise samples for the actor."""
    xi = rng.standard_normal((n, actor.design_dim))
    if actor.stochastic_input:
        z = rng.standard_normal((n, actor.noise_dim))
        return [NoiseSample(xi[i], z[i]) for i in range(n)]
    return [NoiseSample(xi[i]) for i in range(n)]


def _as_noise(xi: Union[NoiseSample, Vector]) -> NoiseSample:
    return xi if isinstance(xi, NoiseSample) else NoiseSample(xi)


def _network_input(actor: ContinuousActor, noise: NoiseSample) -> Vector:
    return ones(actor.noise_dim) if noise.z is None else noise.z


def log_one_minus_tanh_squared(u):
    """``log(1 - tanh(u) ** 2)`` without cancellation for large ``|u|``."""
    return 2.0 * (LOG_2 - u - logaddexp(0.0, -2.0 * u))


def _squash(u):
    return clip(tanh(u), -OPEN_BOUND, OPEN_BOUND)


def _heads(actor: ContinuousActor, Z: Batch) -> Tuple[Batch, Batch, Batch]:
    out = forward(actor.params, Z)
    d = actor.design_dim
    lo, hi = actor.log_sigma_bounds
    raw = out[:, d:]
    return out[:, :d], clip(raw, lo, hi), raw


def _path(actor: ContinuousActor, noise_batch: Sequence[Union[NoiseSample, Vector]]):
    if len(noise_batch) == 0:
        raise EmptyBatch('noise batch is empty')
    noise = [_as_noise(xi) for xi in noise_batch]
    XI = stack([n.xi for n in noise])
    if XI.shape[1] != actor.design_dim:
        raise DimensionMismatch('noise of length {} for design dimension {}'.format(XI.shape[1], actor.design_dim))
    Z = stack([_network_input(actor, n) for n in noise])
    mu, log_sigma, raw = _heads(actor, Z)
    sigma = exp(log_sigma)
    u = mu + sigma * XI
    return XI, Z, log_sigma, raw, sigma, u


def _log_density(XI: Batch, log_sigma: Batch, u: Batch) -> Vector:
    # Gaussian log-density of u along the sampling path minus the log-Jacobian of tanh
    log_normal = -0.5 * XI * XI - log_sigma - HALF_LOG_2PI
    return (log_normal - log_one_minus_tanh_squared(u)).sum(axis=1)


def actor_heads(actor: ContinuousActor, noise_input: Vector) -> Tuple[Vector, Vector]:
    """Mean and standard deviation produced for one network input."""
    z = asarray(noise_input, dtype=float64).ravel()
    if z.shape[0] != actor.noise_dim:
        raise DimensionMismatch('actor input of length {}, expected {}'.format(z.shape[0], actor.noise_dim))
    mu, log_sigma, _ = _heads(actor, z.reshape((1, -1)))
    return mu[0], exp(log_sigma[0])


def sample_design(actor: ContinuousActor, xi: Union[NoiseSample, Vector]) -> Vector:
    """The design ``tanh(mu + sigma * xi)``."""
    _, _, _, _, _, u = _path(actor, [xi])
    return _squash(u[0])


def sample_designs(actor: ContinuousActor, noise_batch: Sequence[Union[NoiseSample, Vector]]) -> Batch:
    _, _, _, _, _, u = _path(actor, noise_batch)
    return _squash(u)


def log_density(actor: ContinuousActor, xi: Union[NoiseSample, Vector]) -> float:
    """Log-density of the design generated by ``xi``, evaluated along the sampling path."""
    XI, _, log_sigma, _, _, u = _path(actor, [xi])
    return float(_log_density(XI, log_sigma, u)[0])


def entropy_estimate(actor: ContinuousActor, noise_batch: Sequence[Union[NoiseSample, Vector]]) -> float:
    """Monte-Carlo estimate of the entropy of the design distribution."""
    XI, _, log_sigma, _, _, u = _path(actor, noise_batch)
    return float(-_log_density(XI, log_sigma, u).mean())


def _check(actor: ContinuousActor, critic: Critic, alpha: float) -> None:
    if alpha < 0:
        raise ContractViolation('alpha must be nonnegative, got {}'.format(alpha))
    if critic.input_dim != actor.design_dim:
        raise DimensionMismatch('critic of input dimension {} for designs of dimension {}'.format(critic.input_dim, actor.design_dim))


def objective_estimate(actor: ContinuousActor,
                       critic: Critic,
                       noise_batch: Sequence[Union[NoiseSample, Vector]],
                       alpha: float) -> float:
    """Sample mean of ``Q(x) - alpha * log h(x)`` over the designs generated by the noise batch."""
    _check(actor, critic, alpha)
    XI, _, log_sigma, _, _, u = _path(actor, noise_batch)
    q = forward(critic.params, tanh(u))[:, 0]
    return float((q - alpha * _log_density(XI, log_sigma, u)).mean())


def objective_gradient(actor: ContinuousActor,
                       critic: Critic,
                       noise_batch: Sequence[Union[NoiseSample, Vector]],
                       alpha: float) -> Vector:
    """Reparameterized gradient of :func:`objective_estimate` with respect to the actor parameters.

    The noise batch is held fixed and the critic parameters are frozen; the
    gradient flows through the designs into the critic input and through both
    heads into the log-density.
    """
    _check(actor, critic, alpha)
    XI, Z, log_sigma, raw, sigma, u = _path(actor, noise_batch)
    lo, hi = actor.log_sigma_bounds
    x = tanh(u)
    dq_du = critic_input_gradient(critic, x) * exp(log_one_minus_tanh_squared(u))
    # d/du of the log-density is 2 tanh(u); d/dlog_sigma is -1
    g_u = dq_du - 2.0 * alpha * x
    g_mu = g_u
    g_log_sigma = (g_u * sigma * XI + alpha) * ((raw > lo) & (raw < hi))
    out_grad = concatenate([g_mu, g_log_sigma], axis=1) / XI.shape[0]
    grad, _ = backward(actor.params, Z, out_grad)
    return grad


def actor_update_continuous(actor: ContinuousActor,
                            critic: Critic,
                            noise_batch: Sequence[Union[NoiseSample, Vector]],
                            alpha: float,
                            opt: AdamState,
                            lr: float) -> Tuple[ContinuousActor, AdamState]:
    """One gradient-ascent step on the entropy-regularized objective."""
    grad = objective_gradient(actor, critic, noise_batch, alpha)
    opt, params = adam_step(opt, actor.params, -grad, lr)
    return actor.with_params(params), opt
