from typing import NamedTuple
from typing import Tuple

from math import cos
from math import pi
from math import sin

from numpy import asarray
from numpy import dot
from numpy import float64
from numpy import mean
from numpy.random import default_rng

from acsim.exceptions import ContractViolation
from acsim.exceptions import DimensionMismatch


GRAVITY = 9.8
CART_MASS = 1.0
POLE_MASS = 0.1
TOTAL_MASS = CART_MASS + POLE_MASS
HALF_LENGTH = 0.5
POLE_MASS_LENGTH = POLE_MASS * HALF_LENGTH
FORCE_MAG = 10.0
TAU = 0.02

THETA_LIMIT = 12 * 2 * pi / 360
X_LIMIT = 2.4
MAX_STEPS = 200
POLICY_SCALE = 5.0


class CartPoleState(NamedTuple):
    x: float
    x_dot: float
    theta: float
    theta_dot: float


def is_terminal(state: CartPoleState) -> bool:
    return abs(state.x) > X_LIMIT or abs(state.theta) > THETA_LIMIT


def cartpole_step(state: CartPoleState, action: int) -> Tuple[CartPoleState, bool]:
    """Advance the cart-pole by one explicit Euler step; action 1 pushes right, 0 left."""
    if action not in (0, 1):
        raise ContractViolation('action must be 0 or 1, got {!r}'.format(action))
    force = FORCE_MAG if action == 1 else -FORCE_MAG
    x, x_dot, theta, theta_dot = state
    costheta = cos(theta)
    sintheta = sin(theta)
    temp = (force + POLE_MASS_LENGTH * theta_dot ** 2 * sintheta) / TOTAL_MASS
    thetaacc = (GRAVITY * sintheta - costheta * temp) / (HALF_LENGTH * (4.0 / 3.0 - POLE_MASS * costheta ** 2 / TOTAL_MASS))
    xacc = temp - POLE_MASS_LENGTH * thetaacc * costheta / TOTAL_MASS
    state = CartPoleState(x + TAU * x_dot,
                          x_dot + TAU * xacc,
                          theta + TAU * theta_dot,
                          theta_dot + TAU * thetaacc)
    return state, is_terminal(state)


def initial_state(episode_seed: int) -> CartPoleState:
    rng = default_rng(episode_seed)
    return CartPoleState(*(float(v) for v in rng.uniform(-0.05, 0.05, size=4)))


def policy_return(zeta, episode_seed: int) -> float:
    """Steps survived by the linear threshold policy encoded by ``zeta``.

    The design ``zeta`` in ``(-1, 1)^5`` is scaled to weights ``w`` and bias
    ``b``; the policy pushes right when ``w . s + b > 0``.
    """
    z = asarray(zeta, dtype=float64).ravel()
    if z.shape[0] != 5:
        raise DimensionMismatch('a cart-pole policy has 5 parameters, got {}'.format(z.shape[0]))
    w = POLICY_SCALE * z[:4]
    b = POLICY_SCALE * z[4]
    state = initial_state(episode_seed)
    steps = 0
    for _ in range(MAX_STEPS):
        action = 1 if dot(w, state) + b > 0 else 0
        state, terminated = cartpole_step(state, action)
        steps += 1
        if terminated:
            break
    return float(steps)


class CartPoleObjective:
    """Mean return of a policy design over a fixed set of seeded episodes."""

    design_dim = 5

    def __init__(self, episodes_per_query: int = 5, seed: int = 0):
        if episodes_per_query < 1:
            raise ContractViolation('episodes_per_query must be at least 1')
        self.episodes_per_query = episodes_per_query
        self.seed = seed

    def __call__(self, zeta) -> float:
        return float(mean([policy_return(zeta, self.seed + k) for k in range(self.episodes_per_query)]))
