import os

from typing import Callable
from typing import Dict
from typing import Optional
from typing import Tuple

from dataclasses import dataclass
from dataclasses import field
from dataclasses import fields
from dataclasses import replace

from numpy import isfinite

from acsim.engine import RunConfig
from acsim.exceptions import ConfigError
from acsim.objectives import GmmParams


EXPERIMENTS = ('toy-continuous', 'toy-discrete', 'attack-free', 'attack-perturb', 'cartpole')


def _optional(convert: Callable) -> Callable:
    def parse(text):
        return None if text.lower() == 'none' else convert(text)
    return parse


def _widths(text: str) -> Tuple[int, ...]:
    return tuple(int(w) for w in text.split(',') if w.strip())


def _boolean(text: str) -> bool:
    value = text.lower()
    if value not in ('true', 'false'):
        raise ValueError('expected true or false, got {!r}'.format(text))
    return value == 'true'


RUN_KEYS: Dict[str, Callable] = {
    'episodes': int,
    'rounds_per_phase': int,
    'critic_batch': int,
    'actor_batch': int,
    'alpha_initial': float,
    'alpha_final': float,
    'alpha_decay': _optional(float),
    'lr_actor': float,
    'lr_critic': float,
    'seed': int,
    'actor_hidden': _widths,
    'critic_hidden': _widths,
    'activation': str,
    'buffer_capacity': _optional(int),
    'warmup_episodes': _optional(int),
    'log_sigma_min': float,
    'log_sigma_max': float,
    'noise_dim': int,
    'stochastic_input': _boolean,
    'log_interval': int,
}

EXPERIMENT_KEYS: Dict[str, Callable] = {
    'n_designs': int,
    'target_class': int,
    'base_class': int,
    'delta': float,
    'episodes_per_query': int,
    'gmm_w1': float,
    'gmm_w2': float,
    'gmm_mu1': float,
    'gmm_mu2': float,
    'gmm_sigma1': float,
    'gmm_sigma2': float,
    'classifier_path': _optional(str),
    'eval_interval': int,
    'eval_samples': int,
    'eval_seed': int,
}


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything one experiment run needs: the study, the run hyper-parameters and study-specific settings."""
    experiment: str
    run: RunConfig = field(default_factory=RunConfig)
    n_designs: int = 21
    target_class: int = 1
    base_class: int = 6
    delta: float = 0.2
    episodes_per_query: int = 5
    gmm_w1: float = 0.51
    gmm_w2: float = 0.49
    gmm_mu1: float = -0.7
    gmm_mu2: float = 0.7
    gmm_sigma1: float = 0.6
    gmm_sigma2: float = 0.6
    classifier_path: Optional[str] = None
    eval_interval: int = 0
    eval_samples: int = 300
    eval_seed: int = 12345

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError('experiment', 'unknown experiment {!r}, expected one of {}'.format(self.experiment, ', '.join(EXPERIMENTS)))
        if self.n_designs < 2:
            raise ConfigError('n_designs', 'must be at least 2, got {}'.format(self.n_designs))
        for name in ('target_class', 'base_class'):
            if not 0 <= getattr(self, name) < 10:
                raise ConfigError(name, 'must be a digit class 0..9, got {}'.format(getattr(self, name)))
        if self.experiment == 'attack-perturb' and self.base_class == self.target_class:
            raise ConfigError('base_class', 'must differ from target_class')
        for name in ('delta', 'gmm_w1', 'gmm_w2', 'gmm_mu1', 'gmm_mu2', 'gmm_sigma1', 'gmm_sigma2'):
            if not isfinite(getattr(self, name)):
                raise ConfigError(name, 'must be finite, got {}'.format(getattr(self, name)))
        if not 0 < self.delta <= 1:
            raise ConfigError('delta', 'must lie in (0, 1], got {}'.format(self.delta))
        for name in ('episodes_per_query', 'eval_samples'):
            if getattr(self, name) < 1:
                raise ConfigError(name, 'must be at least 1, got {}'.format(getattr(self, name)))
        if self.eval_interval < 0:
            raise ConfigError('eval_interval', 'must be nonnegative, got {}'.format(self.eval_interval))
        if self.classifier_path is not None and not os.path.exists(self.classifier_path):
            raise ConfigError('classifier_path', 'no such file: {}'.format(self.classifier_path))
        try:
            self.gmm
        except ValueError as e:
            raise ConfigError('gmm_w1', str(e)) from e

    @property
    def gmm(self) -> GmmParams:
        return GmmParams(self.gmm_w1, self.gmm_w2, self.gmm_mu1, self.gmm_mu2, self.gmm_sigma1, self.gmm_sigma2)

    def with_seed(self, seed: int) -> 'ExperimentConfig':
        return replace(self, run=replace(self.run, seed=seed))


def parse_config(text: str) -> ExperimentConfig:
    """Parse a flat ``key = value`` experiment file."""
    values = {}
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ConfigError('line {}'.format(number), 'expected "key = value", got {!r}'.format(line))
        key, value = (part.strip() for part in line.split('=', 1))
        if key in values:
            raise ConfigError(key, 'given more than once')
        values[key] = value

    if 'experiment' not in values:
        raise ConfigError('experiment', 'missing')
    run_kwargs = {}
    kwargs = {}
    for key, value in values.items():
        if key == 'experiment':
            continue
        if key in RUN_KEYS:
            target, convert = run_kwargs, RUN_KEYS[key]
        elif key in EXPERIMENT_KEYS:
            target, convert = kwargs, EXPERIMENT_KEYS[key]
        else:
            raise ConfigError(key, 'unknown key')
        try:
            target[key] = convert(value)
        except ValueError as e:
            raise ConfigError(key, 'cannot parse {!r}: {}'.format(value, e)) from e

    return ExperimentConfig(values['experiment'], RunConfig(**run_kwargs), **kwargs)


def _format(value) -> str:
    if value is None:
        return 'none'
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, tuple):
        return ','.join(str(v) for v in value)
    return str(value)


def dump_config(config: ExperimentConfig) -> str:
    """Serialize a config to the text format read by :func:`parse_config`."""
    lines = ['experiment = {}'.format(config.experiment)]
    for f in fields(RunConfig):
        lines.append('{} = {}'.format(f.name, _format(getattr(config.run, f.name))))
    for name in EXPERIMENT_KEYS:
        lines.append('{} = {}'.format(name, _format(getattr(config, name))))
    return '\n'.join(lines) + '\n'


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path) as f:
            text = f.read()
    except OSError as e:
        raise ConfigError('config_path', 'cannot read {}: {}'.format(path, e)) from e
    return parse_config(text)
