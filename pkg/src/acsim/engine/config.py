from typing import Optional
from typing import Tuple

from dataclasses import dataclass
from dataclasses import fields

from numpy import isfinite

from acsim.exceptions import ConfigError
from acsim.exceptions import ContractViolation
from acsim.nn.network import ACTIVATIONS


@dataclass(frozen=True)
class RunConfig:
    """Hyper-parameters of one optimization run.

    ``episodes`` is the number of objective queries, ``rounds_per_phase`` the
    number of critic updates and of actor updates per episode.
    """
    episodes: int = 2000
    rounds_per_phase: int = 10
    critic_batch: int = 64
    actor_batch: int = 64
    alpha_initial: float = 1e-1
    alpha_final: float = 1e-3
    alpha_decay: Optional[float] = None
    lr_actor: float = 3e-4
    lr_critic: float = 3e-4
    seed: int = 0
    actor_hidden: Tuple[int, ...] = (64, 64)
    critic_hidden: Tuple[int, ...] = (64, 64)
    activation: str = 'tanh'
    buffer_capacity: Optional[int] = None
    warmup_episodes: Optional[int] = None
    log_sigma_min: float = -5.0
    log_sigma_max: float = 2.0
    noise_dim: int = 1
    stochastic_input: bool = False
    log_interval: int = 100

    def __post_init__(self):
        object.__setattr__(self, 'actor_hidden', tuple(self.actor_hidden))
        object.__setattr__(self, 'critic_hidden', tuple(self.critic_hidden))
        for name in ('alpha_initial', 'alpha_final', 'alpha_decay', 'lr_actor', 'lr_critic', 'log_sigma_min', 'log_sigma_max'):
            value = getattr(self, name)
            if value is not None and not isfinite(value):
                raise ConfigError(name, 'must be finite, got {}'.format(value))
        for name in ('episodes', 'critic_batch', 'actor_batch', 'noise_dim', 'log_interval'):
            if getattr(self, name) < 1:
                raise ConfigError(name, 'must be at least 1, got {}'.format(getattr(self, name)))
        if self.rounds_per_phase < 0:
            raise ConfigError('rounds_per_phase', 'must be nonnegative, got {}'.format(self.rounds_per_phase))
        if not self.alpha_final > 0:
            raise ConfigError('alpha_final', 'must be positive, got {}'.format(self.alpha_final))
        if self.alpha_final > self.alpha_initial:
            raise ConfigError('alpha_final', 'must not exceed alpha_initial ({} > {})'.format(self.alpha_final, self.alpha_initial))
        if self.alpha_decay is not None and not 0 < self.alpha_decay <= 1:
            raise ConfigError('alpha_decay', 'must lie in (0, 1], got {}'.format(self.alpha_decay))
        for name in ('lr_actor', 'lr_critic'):
            if not getattr(self, name) > 0:
                raise ConfigError(name, 'must be positive, got {}'.format(getattr(self, name)))
        for name in ('actor_hidden', 'critic_hidden'):
            if any(w < 1 for w in getattr(self, name)):
                raise ConfigError(name, 'widths must be positive, got {}'.format(getattr(self, name)))
        if self.activation not in ACTIVATIONS:
            raise ConfigError('activation', 'unknown activation {!r}'.format(self.activation))
        if self.buffer_capacity is not None and self.buffer_capacity < 1:
            raise ConfigError('buffer_capacity', 'must be positive, got {}'.format(self.buffer_capacity))
        if self.warmup_episodes is not None and self.warmup_episodes < 0:
            raise ConfigError('warmup_episodes', 'must be nonnegative, got {}'.format(self.warmup_episodes))
        if not self.log_sigma_min < self.log_sigma_max:
            raise ConfigError('log_sigma_max', 'must exceed log_sigma_min')

    @property
    def warmup(self) -> int:
        """Number of initial episodes without actor updates."""
        if self.warmup_episodes is not None:
            return self.warmup_episodes
        return max(self.critic_batch, 10)

    @classmethod
    def field_names(cls) -> Tuple[str, ...]:
        return tuple(f.name for f in fields(cls))


def alpha_at(config: RunConfig, episode: int) -> float:
    """Entropy weight of an episode, decayed from ``alpha_initial`` to ``alpha_final``.

    Without ``alpha_decay`` the decay is geometric over the run, so the first
    episode uses ``alpha_initial`` and the last ``alpha_final``. With it, the
    weight is multiplied by ``alpha_decay`` every episode until it reaches
    ``alpha_final``.
    """
    M = config.episodes
    if not 1 <= episode <= M:
        raise ContractViolation('episode {} outside 1..{}'.format(episode, M))
    a0, a1 = config.alpha_initial, config.alpha_final
    if config.alpha_decay is not None:
        alpha = a0 * config.alpha_decay ** (episode - 1)
    elif M == 1:
        alpha = a0
    else:
        alpha = a0 * (a1 / a0) ** ((episode - 1) / (M - 1))
    return min(max(alpha, a1), a0)
