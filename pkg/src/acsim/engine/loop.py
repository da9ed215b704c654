import logging

from typing import Callable
from typing import Optional
from typing import Tuple

from numpy import isfinite
from numpy import nan
from numpy.random import default_rng

from acsim.actors import ContinuousActor
from acsim.actors import DiscreteActor
from acsim.actors import actor_update_continuous
from acsim.actors import actor_update_discrete
from acsim.actors import critic_values
from acsim.actors import design_distribution
from acsim.actors import discrete_objective
from acsim.actors import draw_noise
from acsim.actors import make_continuous_actor
from acsim.actors import make_discrete_actor
from acsim.actors import objective_estimate
from acsim.actors import optimal_distribution
from acsim.actors import sample_design
from acsim.actors import sample_index
from acsim.critic import Critic
from acsim.critic import Design
from acsim.critic import ScoredDesign
from acsim.critic import critic_loss
from acsim.critic import critic_update
from acsim.critic import make_critic
from acsim.exceptions import ObjectiveFailure
from acsim.nn import AdamState

from .buffer import ReplayBuffer
from .buffer import buffer_sample
from .buffer import buffer_store
from .config import RunConfig
from .config import alpha_at
from .result import DistributionReport
from .result import EpisodeRow
from .result import RunReport


logger = logging.getLogger(__name__)


def run_continuous(config: RunConfig,
                   objective: Callable,
                   rng=None,
                   design_dim: Optional[int] = None,
                   monitor: Optional[Callable[[ContinuousActor], float]] = None,
                   eval_interval: int = 0) -> RunReport:
    """Optimize a black-box objective over the open box ``(-1, 1)^d``.

    Every episode queries the objective once with a design drawn from the actor,
    stores the pair, then runs ``rounds_per_phase`` critic updates on replayed
    mini-batches followed by as many actor updates on fresh noise batches.

    Parameters
    ----------
    config : :class:`RunConfig`
        Run hyper-parameters.
    objective : callable
        Maps a design vector to a finite score. Its ``design_dim`` attribute
        is used when ``design_dim`` is not given.
    rng : :class:`numpy.random.Generator`, optional
        Source of all randomness of the run. Seeded from ``config.seed`` by default.
    design_dim : int, optional
        Dimension of the design space.
    monitor : callable, optional
        Evaluated on the untrained actor, every ``eval_interval`` episodes and after the last one.
    eval_interval : int, optional
        Episodes between monitor evaluations; 0 evaluates only at the end.

    Returns
    -------
    :class:`RunReport`

    Raises
    ------
    :class:`acsim.exceptions.ObjectiveFailure`
        If the objective raises or returns a non-finite score.

    """
    rng = default_rng(config.seed) if rng is None else rng
    d = design_dim if design_dim is not None else objective.design_dim
    actor = make_continuous_actor(d, rng,
                                  hidden=config.actor_hidden,
                                  activation=config.activation,
                                  noise_dim=config.noise_dim,
                                  log_sigma_bounds=(config.log_sigma_min, config.log_sigma_max),
                                  stochastic_input=config.stochastic_input)
    critic = make_critic(d, rng, hidden=config.critic_hidden, activation=config.activation)
    actor_opt = AdamState.for_params(actor.params)
    critic_opt = AdamState.for_params(critic.params)
    buf = ReplayBuffer(config.buffer_capacity)
    rows = []
    evaluations = []
    if monitor is not None:
        evaluations.append((0, float(monitor(actor))))

    for episode in range(1, config.episodes + 1):
        alpha = alpha_at(config, episode)
        x = sample_design(actor, draw_noise(actor, 1, rng)[0])
        y = _query(objective, x, episode)
        buffer_store(buf, ScoredDesign(x, y))

        critic, critic_opt, loss = _fit_critic(config, critic, critic_opt, buf, rng)
        estimate = nan
        if episode > config.warmup:
            actor, actor_opt, estimate = _improve_continuous(config, actor, actor_opt, critic, alpha, rng)

        rows.append(EpisodeRow(episode, x, y, alpha, buf.best.score, loss, estimate))
        _log_episode(config, rows[-1])
        if monitor is not None and _is_evaluated(config, episode, eval_interval):
            evaluations.append((episode, float(monitor(actor))))

    return RunReport(rows, buf.best, config.seed, evaluations, None, actor, critic)


def run_discrete(config: RunConfig,
                 objective: Callable,
                 rng=None,
                 n_designs: Optional[int] = None,
                 monitor: Optional[Callable[[DiscreteActor], float]] = None,
                 eval_interval: int = 0) -> RunReport:
    """Optimize a black-box objective over the designs ``0..n-1``.

    Same schedule as :func:`run_continuous`; designs are drawn from the softmax
    policy and the actor update uses the exact expectation over all designs.
    The report additionally holds the final policy and the energy-based optimum
    of the final critic at ``alpha_final``.
    """
    rng = default_rng(config.seed) if rng is None else rng
    n = n_designs if n_designs is not None else objective.n_designs
    actor = make_discrete_actor(n, rng, hidden=config.actor_hidden, activation=config.activation)
    critic = make_critic(n, rng, hidden=config.critic_hidden, activation=config.activation)
    actor_opt = AdamState.for_params(actor.params)
    critic_opt = AdamState.for_params(critic.params)
    buf = ReplayBuffer(config.buffer_capacity)
    rows = []
    evaluations = []
    if monitor is not None:
        evaluations.append((0, float(monitor(actor))))

    for episode in range(1, config.episodes + 1):
        alpha = alpha_at(config, episode)
        x = sample_index(design_distribution(actor), rng)
        y = _query(objective, x, episode)
        buffer_store(buf, ScoredDesign(x, y))

        critic, critic_opt, loss = _fit_critic(config, critic, critic_opt, buf, rng)
        estimate = nan
        if episode > config.warmup:
            actor, actor_opt, estimate = _improve_discrete(config, actor, actor_opt, critic, alpha)

        rows.append(EpisodeRow(episode, x, y, alpha, buf.best.score, loss, estimate))
        _log_episode(config, rows[-1])
        if monitor is not None and _is_evaluated(config, episode, eval_interval):
            evaluations.append((episode, float(monitor(actor))))

    q = critic_values(actor, critic)
    distribution = DistributionReport(design_distribution(actor), optimal_distribution(q, config.alpha_final), q)
    return RunReport(rows, buf.best, config.seed, evaluations, distribution, actor, critic)


def _query(objective: Callable, x: Design, episode: int) -> float:
    try:
        y = float(objective(x))
    except Exception as e:
        raise ObjectiveFailure(episode, 'objective raised {!r}'.format(e)) from e
    if not isfinite(y):
        raise ObjectiveFailure(episode, 'objective returned a non-finite score {!r}'.format(y))
    return y


def _fit_critic(config: RunConfig,
                critic: Critic,
                opt: AdamState,
                buf: ReplayBuffer,
                rng) -> Tuple[Critic, AdamState, float]:
    """Run the critic phase; returns the loss on the last mini-batch after its update."""
    loss = nan
    for _ in range(config.rounds_per_phase):
        batch = buffer_sample(buf, config.critic_batch, rng)
        critic, opt = critic_update(critic, batch, opt, config.lr_critic)
        loss = critic_loss(critic, batch)
    return critic, opt, loss


def _improve_continuous(config: RunConfig,
                        actor: ContinuousActor,
                        opt: AdamState,
                        critic: Critic,
                        alpha: float,
                        rng) -> Tuple[ContinuousActor, AdamState, float]:
    """Run the actor phase; returns the objective estimate on the last noise batch before its update."""
    estimate = nan
    for _ in range(config.rounds_per_phase):
        noise = draw_noise(actor, config.actor_batch, rng)
        estimate = objective_estimate(actor, critic, noise, alpha)
        actor, opt = actor_update_continuous(actor, critic, noise, alpha, opt, config.lr_actor)
    return actor, opt, estimate


def _improve_discrete(config: RunConfig,
                      actor: DiscreteActor,
                      opt: AdamState,
                      critic: Critic,
                      alpha: float) -> Tuple[DiscreteActor, AdamState, float]:
    estimate = nan
    if config.rounds_per_phase:
        estimate = discrete_objective(design_distribution(actor), critic_values(actor, critic), alpha)
    for _ in range(config.rounds_per_phase):
        actor, opt = actor_update_discrete(actor, critic, alpha, opt, config.lr_actor)
    return actor, opt, estimate


def _is_evaluated(config: RunConfig, episode: int, eval_interval: int) -> bool:
    if episode == config.episodes:
        return True
    return eval_interval > 0 and episode % eval_interval == 0


def _log_episode(config: RunConfig, row: EpisodeRow) -> None:
    logger.debug('episode %d score=%.6g best=%.6g alpha=%.3g', row.episode, row.score, row.best_score, row.alpha)
    if row.episode % config.log_interval == 0 or row.episode == config.episodes:
        logger.info('episode %d/%d: best score %.6g, critic loss %.3g, actor objective %.4g',
                    row.episode, config.episodes, row.best_score, row.critic_loss, row.actor_objective)
