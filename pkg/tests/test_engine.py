import io

from dataclasses import replace

import numpy as np
import pytest

from scipy.stats import chisquare

from acsim.actors import design_distribution
from acsim.actors import draw_noise
from acsim.actors import sample_designs
from acsim.actors import total_variation
from acsim.critic import ScoredDesign
from acsim.engine import RUN_HEADER
from acsim.engine import ReplayBuffer
from acsim.engine import RunConfig
from acsim.engine import alpha_at
from acsim.engine import buffer_sample
from acsim.engine import buffer_store
from acsim.engine import run_continuous
from acsim.engine import run_discrete
from acsim.engine import write_best_design_csv
from acsim.engine import write_distribution_csv
from acsim.engine import write_evaluation_csv
from acsim.engine import write_run_csv
from acsim.exceptions import ConfigError
from acsim.exceptions import ContractViolation
from acsim.exceptions import EmptyBatch
from acsim.exceptions import NonFiniteValue
from acsim.exceptions import ObjectiveFailure
from acsim.objectives import GmmObjective
from acsim.objectives import GmmParams
from acsim.objectives import discretize
from acsim.objectives import gmm_score


SMALL = RunConfig(episodes=30, rounds_per_phase=2, critic_batch=8, actor_batch=8,
                  actor_hidden=(8,), critic_hidden=(8,), lr_actor=1e-3, lr_critic=1e-3)


class Counting:
    """Objective wrapper counting its calls."""

    def __init__(self, objective, design_dim=None, n_designs=None):
        self.objective = objective
        self.design_dim = design_dim
        self.n_designs = n_designs
        self.calls = 0

    def __call__(self, x):
        self.calls += 1
        return self.objective(x)


def entry(score, x=0.0):
    return ScoredDesign(np.array([x]), score)


def test_best_tracks_maximum():
    buf = ReplayBuffer()
    first = entry(1.0)
    buffer_store(buf, first)
    buffer_store(buf, entry(0.5, 0.3))
    assert buf.best is first


def test_ties_keep_earliest():
    buf = ReplayBuffer()
    first = entry(2.0, 0.1)
    buffer_store(buf, first)
    buffer_store(buf, entry(2.0, 0.2))
    assert buf.best is first


def test_eviction_recomputes_best():
    buf = ReplayBuffer(capacity=2)
    a, b, c = entry(3.0, 0.1), entry(1.0, 0.2), entry(2.0, 0.3)
    for e in (a, b, c):
        buffer_store(buf, e)
    assert buf.entries == (b, c)
    assert buf.best is c


def test_eviction_keeps_earliest_of_tied_retained():
    buf = ReplayBuffer(capacity=2)
    a, b, c = entry(5.0), entry(1.0), entry(1.0)
    for e in (a, b, c):
        buffer_store(buf, e)
    assert buf.best is b


def test_invalid_capacity():
    with pytest.raises(ContractViolation):
        ReplayBuffer(capacity=0)


def test_non_finite_score_rejected():
    with pytest.raises(NonFiniteValue):
        entry(np.inf)


def test_sample_single_entry(rng):
    buf = ReplayBuffer()
    only = entry(1.0)
    buffer_store(buf, only)
    assert buffer_sample(buf, 4, rng) == [only] * 4


def test_sample_empty_buffer(rng):
    with pytest.raises(EmptyBatch):
        buffer_sample(ReplayBuffer(), 1, rng)


def test_sample_is_uniform():
    buf = ReplayBuffer()
    entries = [entry(float(k)) for k in range(10)]
    for e in entries:
        buffer_store(buf, e)
    draws = buffer_sample(buf, 100000, np.random.default_rng(1))
    counts = np.bincount([int(d.score) for d in draws], minlength=10)
    assert chisquare(counts).pvalue > 0.01


def test_sample_is_reproducible():
    buf = ReplayBuffer()
    for k in range(10):
        buffer_store(buf, entry(float(k)))
    a = buffer_sample(buf, 50, np.random.default_rng(3))
    b = buffer_sample(buf, 50, np.random.default_rng(3))
    assert [e.score for e in a] == [e.score for e in b]


def test_alpha_schedule_endpoints():
    config = RunConfig(episodes=100, alpha_initial=0.1, alpha_final=1e-3)
    assert alpha_at(config, 1) == 0.1
    assert np.isclose(alpha_at(config, 100), 1e-3, rtol=1e-12)
    alphas = [alpha_at(config, e) for e in range(1, 101)]
    assert np.all(np.diff(alphas) <= 0)


def test_alpha_schedule_midpoint():
    config = RunConfig(episodes=3, alpha_initial=1e-1, alpha_final=1e-3)
    assert np.isclose(alpha_at(config, 2), 1e-2, rtol=1e-12)


def test_alpha_single_episode():
    assert alpha_at(RunConfig(episodes=1), 1) == RunConfig().alpha_initial


def test_alpha_decay_factor():
    config = RunConfig(episodes=100, alpha_initial=0.1, alpha_final=0.02, alpha_decay=0.5)
    assert np.isclose(alpha_at(config, 2), 0.05)
    assert alpha_at(config, 4) == 0.02


def test_alpha_out_of_range():
    with pytest.raises(ContractViolation):
        alpha_at(RunConfig(episodes=5), 6)
    with pytest.raises(ContractViolation):
        alpha_at(RunConfig(episodes=5), 0)


@pytest.mark.parametrize('field, value', [
    ('episodes', 0),
    ('critic_batch', 0),
    ('lr_actor', -1e-3),
    ('lr_critic', 0.0),
    ('alpha_final', 0.5),
    ('buffer_capacity', 0),
    ('activation', 'sigmoid'),
    ('alpha_initial', float('nan')),
    ('alpha_decay', float('nan')),
    ('lr_actor', float('inf')),
    ('log_sigma_max', float('inf')),
    ('log_sigma_min', -float('inf')),
])
def test_config_validation_names_field(field, value):
    with pytest.raises(ConfigError) as info:
        RunConfig(**{field: value})
    assert info.value.field == field
    assert field in str(info.value)


def test_warmup_default():
    assert RunConfig(critic_batch=64).warmup == 64
    assert RunConfig(critic_batch=4).warmup == 10
    assert RunConfig(warmup_episodes=0).warmup == 0


def test_single_episode_without_updates():
    objective = Counting(GmmObjective(), design_dim=1)
    report = run_continuous(replace(SMALL, episodes=1, rounds_per_phase=0), objective)
    assert len(report.rows) == 1
    assert objective.calls == 1
    row = report.rows[0]
    np.testing.assert_array_equal(report.final_best.design, row.design)
    assert report.final_best.score == row.score
    assert np.isnan(row.critic_loss)


def test_continuous_run_contract():
    objective = Counting(GmmObjective(), design_dim=1)
    report = run_continuous(replace(SMALL, warmup_episodes=10), objective)
    assert objective.calls == SMALL.episodes
    assert [row.episode for row in report.rows] == list(range(1, 31))
    best = [row.best_score for row in report.rows]
    assert np.all(np.diff(best) >= 0)
    assert report.final_best.score == max(row.score for row in report.rows)
    assert all(np.isnan(row.actor_objective) for row in report.rows[:10])
    assert all(np.isfinite(row.actor_objective) for row in report.rows[10:])
    assert all(np.all(np.abs(row.design) < 1) for row in report.rows)
    assert report.seed == SMALL.seed


def test_continuous_run_is_deterministic():
    a = run_continuous(SMALL, GmmObjective())
    b = run_continuous(SMALL, GmmObjective())
    out_a, out_b = io.StringIO(), io.StringIO()
    write_run_csv(a, out_a)
    write_run_csv(b, out_b)
    assert out_a.getvalue() == out_b.getvalue()
    np.testing.assert_array_equal(a.actor.params.values, b.actor.params.values)


def test_seed_changes_run():
    a = run_continuous(SMALL, GmmObjective())
    b = run_continuous(replace(SMALL, seed=1), GmmObjective())
    assert [r.score for r in a.rows] != [r.score for r in b.rows]


def test_objective_failure_carries_episode():
    def failing(x):
        failing.calls += 1
        if failing.calls == 5:
            raise RuntimeError('solver diverged')
        return 0.0
    failing.calls = 0

    with pytest.raises(ObjectiveFailure) as info:
        run_continuous(SMALL, failing, design_dim=2)
    assert info.value.episode == 5
    assert isinstance(info.value.__cause__, RuntimeError)


def test_non_finite_score_aborts_run():
    with pytest.raises(ObjectiveFailure) as info:
        run_continuous(SMALL, lambda x: np.nan, design_dim=1)
    assert info.value.episode == 1


def test_monitor_schedule():
    seen = []

    def monitor(actor):
        seen.append(actor)
        return float(len(seen))

    report = run_continuous(SMALL, GmmObjective(), monitor=monitor, eval_interval=10)
    assert [episode for episode, _ in report.evaluations] == [0, 10, 20, 30]
    assert report.evaluations[-1][1] == 4.0


def test_monitor_at_end_only():
    report = run_continuous(SMALL, GmmObjective(), monitor=lambda actor: 1.0)
    assert [episode for episode, _ in report.evaluations] == [0, 30]


def test_discrete_run_contract():
    objective = Counting(discretize(GmmObjective(), 7), n_designs=7)
    report = run_discrete(SMALL, objective)
    assert objective.calls == SMALL.episodes
    assert all(0 <= row.design < 7 for row in report.rows)
    assert np.all(np.diff([row.best_score for row in report.rows]) >= 0)
    distribution = report.distribution
    assert abs(distribution.p_theta.probs.sum() - 1) <= 1e-12
    assert abs(distribution.p_star.probs.sum() - 1) <= 1e-12
    assert distribution.q_values.shape == (7,)


def test_discrete_singleton_space():
    report = run_discrete(replace(SMALL, episodes=3), lambda k: 1.0, n_designs=1)
    assert report.rows[0].best_score == 1.0
    assert report.final_best.design == 0
    np.testing.assert_array_equal(report.distribution.p_theta.probs, [1.0])


def test_discrete_run_is_deterministic():
    objective = discretize(GmmObjective(), 7)
    a = run_discrete(SMALL, objective)
    b = run_discrete(SMALL, objective)
    assert [r.design for r in a.rows] == [r.design for r in b.rows]
    np.testing.assert_array_equal(a.distribution.p_theta.probs, b.distribution.p_theta.probs)


def read_rows(text):
    lines = text.splitlines()
    assert lines[0] == '# seed=0'
    return [line.split(',') for line in lines[1:]]


def test_run_csv_layout():
    report = run_continuous(SMALL, GmmObjective())
    out = io.StringIO()
    write_run_csv(report, out)
    rows = read_rows(out.getvalue())
    assert tuple(rows[0]) == RUN_HEADER
    assert len(rows) == SMALL.episodes + 1
    assert float(rows[-1][2]) == report.final_best.score


def test_best_design_csv():
    report = run_continuous(SMALL, GmmObjective())
    out = io.StringIO()
    write_best_design_csv(report, out)
    rows = read_rows(out.getvalue())
    assert rows[0] == ['name', 'value']
    assert rows[1] == ['score', repr(report.final_best.score)]
    assert rows[2][0] == 'x0'
    assert float(rows[2][1]) == report.final_best.design[0]

    discrete = run_discrete(SMALL, discretize(GmmObjective(), 5))
    out = io.StringIO()
    write_best_design_csv(discrete, out)
    assert read_rows(out.getvalue())[2] == ['design_index', str(discrete.final_best.design)]


def test_distribution_and_evaluation_csv():
    report = run_discrete(SMALL, discretize(GmmObjective(), 5), monitor=lambda actor: 0.5)
    out = io.StringIO()
    write_distribution_csv(report, out)
    rows = read_rows(out.getvalue())
    assert rows[0] == ['design_index', 'p_theta', 'p_star']
    assert abs(sum(float(r[1]) for r in rows[1:]) - 1) <= 1e-9
    out = io.StringIO()
    write_evaluation_csv(report, out)
    assert read_rows(out.getvalue()) == [['episode', 'value'], ['0', '0.5'], ['30', '0.5']]


def test_distribution_csv_needs_discrete_run():
    with pytest.raises(ValueError):
        write_distribution_csv(run_continuous(replace(SMALL, episodes=2), GmmObjective()), io.StringIO())


TOY = RunConfig(lr_actor=1e-3, lr_critic=1e-3)


def grid_maximum():
    grid = np.linspace(-0.9999, 0.9999, 10000)
    scores = np.array([gmm_score(GmmParams(), x) for x in grid])
    return grid[scores.argmax()], scores.max()


@pytest.mark.slow
def test_mixture_toy_finds_maximum():
    _, best = grid_maximum()
    hits = sum(run_continuous(replace(TOY, seed=seed), GmmObjective()).final_best.score >= 0.99 * best
               for seed in range(10))
    assert hits >= 9


def score_variance(report, samples=2000):
    objective = GmmObjective()
    designs = sample_designs(report.actor, draw_noise(report.actor, samples, np.random.default_rng(99)))
    return np.var([objective(x) for x in designs])


@pytest.mark.slow
def test_entropy_weight_keeps_distribution_spread():
    wide = run_continuous(replace(TOY, alpha_initial=1e-1, alpha_final=1e-1), GmmObjective())
    narrow = run_continuous(replace(TOY, alpha_initial=1e-3, alpha_final=1e-3), GmmObjective())
    assert score_variance(wide) > score_variance(narrow)


@pytest.mark.slow
def test_discrete_toy_matches_energy_optimum():
    objective = discretize(GmmObjective(), 21)
    true_argmax = int(np.argmax(objective.scores()))
    hits = 0
    for seed in range(10):
        report = run_discrete(replace(TOY, seed=seed, alpha_final=1e-2), objective)
        p_theta = report.distribution.p_theta
        if seed == 0:
            assert total_variation(p_theta, report.distribution.p_star) <= 0.05
        hits += int(np.argmax(design_distribution(report.actor).probs)) == true_argmax
    assert hits >= 9
