import csv
import io
import logging
import os

import numpy as np
import pytest

from acsim.cli import ExperimentConfig
from acsim.cli import dump_config
from acsim.cli import parse_config
from acsim.cli import read_run_csv
from acsim.cli import replay_report
from acsim.cli import run_experiment
from acsim.cli import write_atomic
from acsim.cli import write_pgm
from acsim.cli.__main__ import build_parser
from acsim.cli.__main__ import main
from acsim.cli.experiments import ToyContinuous
from acsim.engine import RunConfig
from acsim.exceptions import ConfigError
from acsim.exceptions import ContractViolation
from acsim.exceptions import NonFiniteValue
from acsim.objectives import AttackSpec
from acsim.objectives import classify
from acsim.objectives import perturbed_image
from acsim.objectives import save_classifier
from acsim.objectives import select_base_image


HERE = os.path.dirname(__file__)
CONFIGS = os.path.join(HERE, '..', 'configs')

SMALL_RUN = """
episodes = 40
rounds_per_phase = 2
critic_batch = 8
actor_batch = 8
actor_hidden = 8
critic_hidden = 8
lr_actor = 0.001
lr_critic = 0.001
seed = 3
"""


def write_config(folder, experiment, extra=''):
    path = folder / '{}.txt'.format(experiment)
    path.write_text('experiment = {}\n{}\n{}'.format(experiment, SMALL_RUN, extra))
    return str(path)


def read_csv(path):
    with open(path, newline='') as f:
        return list(csv.reader(line for line in f if not line.startswith('#')))


def write_curve(folder, scores):
    path = folder / 'run.csv'
    lines = ['# seed=0', 'episode,score,best_score,alpha,critic_loss,actor_objective']
    best = -np.inf
    for episode, score in enumerate(scores, start=1):
        best = max(best, score)
        lines.append('{},{!r},{!r},0.1,0.0,0.0'.format(episode, float(score), float(best)))
    path.write_text('\n'.join(lines) + '\n')
    return str(path)


# ==============================================================================
# Configs
# ==============================================================================

def test_config_round_trip():
    config = ExperimentConfig('toy-discrete', RunConfig(alpha_decay=0.99, actor_hidden=(16, 4), stochastic_input=True), n_designs=11)
    assert parse_config(dump_config(config)) == config


@pytest.mark.parametrize('name', ['toy-continuous', 'toy-discrete', 'attack-free', 'attack-perturb', 'cartpole'])
def test_bundled_configs_parse(name):
    with open(os.path.join(CONFIGS, '{}.txt'.format(name))) as f:
        config = parse_config(f.read())
    assert config.experiment == name


def test_toy_discrete_config_matches_acceptance_run():
    with open(os.path.join(CONFIGS, 'toy-discrete.txt')) as f:
        config = parse_config(f.read())
    assert config.n_designs == 21
    assert config.run.episodes == 2000
    assert config.run.alpha_final == 1e-2


def test_config_comments_and_defaults():
    config = parse_config('# a comment\nexperiment = cartpole  # inline\nepisodes = 12\n')
    assert config.run.episodes == 12
    assert config.run.critic_batch == RunConfig().critic_batch


@pytest.mark.parametrize('text, field', [
    ('episodes = 10\n', 'experiment'),
    ('experiment = toy-continuous\nlr_actor = -0.1\n', 'lr_actor'),
    ('experiment = toy-continuous\nepisodes = many\n', 'episodes'),
    ('experiment = toy-continuous\ncolour = red\n', 'colour'),
    ('experiment = toy-continuous\nepisodes = 1\nepisodes = 2\n', 'episodes'),
    ('experiment = toy-discrete\nn_designs = 1\n', 'n_designs'),
    ('experiment = attack-perturb\nbase_class = 1\ntarget_class = 1\n', 'base_class'),
    ('experiment = chess\n', 'experiment'),
    ('experiment = toy-continuous\ngmm_sigma1 = inf\n', 'gmm_sigma1'),
])
def test_config_errors_name_the_field(text, field):
    with pytest.raises(ConfigError) as info:
        parse_config(text)
    assert info.value.field == field
    assert field in str(info.value)


# ==============================================================================
# Runs
# ==============================================================================

def test_invalid_config_exits_with_one(tmp_path, caplog):
    path = write_config(tmp_path, 'toy-continuous', 'lr_critic = -1\n')
    with caplog.at_level(logging.ERROR):
        assert run_experiment(path, str(tmp_path / 'out')) == 1
    assert 'lr_critic' in caplog.text
    assert not (tmp_path / 'out').exists()


def test_missing_config_exits_with_one(tmp_path):
    assert run_experiment(str(tmp_path / 'absent.txt'), str(tmp_path / 'out')) == 1


def test_non_finite_config_exits_with_one(tmp_path, caplog):
    path = write_config(tmp_path, 'toy-continuous', 'alpha_initial = nan\n')
    with caplog.at_level(logging.ERROR):
        assert run_experiment(path, str(tmp_path / 'out')) == 1
    assert 'alpha_initial' in caplog.text


def test_contract_violation_during_run_exits_with_two(tmp_path, caplog, monkeypatch):
    def fail(self):
        raise NonFiniteValue('critic loss is nan')

    monkeypatch.setattr(ToyContinuous, 'run', fail)
    with caplog.at_level(logging.ERROR):
        assert run_experiment(write_config(tmp_path, 'toy-continuous'), str(tmp_path / 'out')) == 2
    assert 'critic loss is nan' in caplog.text
    assert not (tmp_path / 'out').exists()


def test_unwritable_output_exits_with_two(tmp_path, caplog):
    out = tmp_path / 'out'
    out.write_text('a file where the output folder should go')
    with caplog.at_level(logging.ERROR):
        assert run_experiment(write_config(tmp_path, 'toy-continuous'), str(out)) == 2
    assert 'cannot write outputs' in caplog.text
    assert out.read_text() == 'a file where the output folder should go'


def test_toy_continuous_run(tmp_path):
    out = tmp_path / 'out'
    assert run_experiment(write_config(tmp_path, 'toy-continuous'), str(out)) == 0
    assert sorted(os.listdir(str(out))) == ['best_design.csv', 'config.txt', 'run.csv']
    rows = read_run_csv(str(out / 'run.csv'))
    assert [int(row['episode']) for row in rows] == list(range(1, 41))
    best = read_csv(str(out / 'best_design.csv'))
    assert best[0] == ['name', 'value']
    assert best[1][0] == 'score' and float(best[1][1]) == rows[-1]['best_score']
    assert best[2][0] == 'x0' and -1 < float(best[2][1]) < 1
    assert parse_config((out / 'config.txt').read_text()).run.seed == 3


def test_toy_discrete_run(tmp_path):
    out = tmp_path / 'out'
    assert run_experiment(write_config(tmp_path, 'toy-discrete', 'n_designs = 7\n'), str(out)) == 0
    table = read_csv(str(out / 'distribution.csv'))
    assert table[0] == ['design_index', 'p_theta', 'p_star']
    assert [int(r[0]) for r in table[1:]] == list(range(7))
    assert abs(sum(float(r[1]) for r in table[1:]) - 1) <= 1e-9
    assert abs(sum(float(r[2]) for r in table[1:]) - 1) <= 1e-9
    assert read_csv(str(out / 'best_design.csv'))[2][0] == 'design_index'


def test_seed_override(tmp_path):
    path = write_config(tmp_path, 'toy-continuous')
    assert run_experiment(path, str(tmp_path / 'a'), seed=11) == 0
    assert run_experiment(path, str(tmp_path / 'b'), seed=11) == 0
    assert run_experiment(path, str(tmp_path / 'c')) == 0
    a = (tmp_path / 'a' / 'run.csv').read_text()
    assert a.startswith('# seed=11\n')
    assert a == (tmp_path / 'b' / 'run.csv').read_text()
    assert a != (tmp_path / 'c' / 'run.csv').read_text()


def test_cartpole_monitor_writes_evaluations(tmp_path):
    out = tmp_path / 'out'
    extra = 'episodes_per_query = 1\neval_interval = 20\neval_samples = 3\n'
    assert run_experiment(write_config(tmp_path, 'cartpole', extra), str(out)) == 0
    table = read_csv(str(out / 'evaluation.csv'))
    assert table[0] == ['episode', 'value']
    assert [int(r[0]) for r in table[1:]] == [0, 20, 40]
    assert all(1 <= float(r[1]) <= 200 for r in table[1:])


def test_attack_run_writes_graymap(tmp_path, classifier):
    weights = tmp_path / 'weights.txt'
    save_classifier(classifier, str(weights))
    out = tmp_path / 'out'
    path = write_config(tmp_path, 'attack-free', 'classifier_path = {}\n'.format(weights))
    assert run_experiment(path, str(out)) == 0
    lines = (out / 'best_design.pgm').read_text().splitlines()
    assert lines[:4] == ['P2', '# seed=3', '16 16', '255']
    assert len(lines) == 4 + 16


def test_atomic_write_leaves_no_partial_file(tmp_path):
    path = str(tmp_path / 'run.csv')

    def fail(stream):
        stream.write('partial')
        raise RuntimeError('disk full')

    with pytest.raises(RuntimeError):
        write_atomic(path, fail)
    assert os.listdir(str(tmp_path)) == []
    write_atomic(path, lambda stream: stream.write('done\n'))
    assert os.listdir(str(tmp_path)) == ['run.csv']


def test_write_pgm():
    stream = io.StringIO()
    write_pgm(np.array([[0.0, 1.0, 0.5]]), stream, comment='seed=1')
    assert stream.getvalue() == 'P2\n# seed=1\n3 1\n255\n0 255 128\n'


# ==============================================================================
# Reports
# ==============================================================================

def test_report_of_single_episode(tmp_path):
    stream = io.StringIO()
    summary = replay_report(write_curve(tmp_path, [0.25]), stream)
    assert summary == (0.25, 1, 0.25)
    assert stream.getvalue().splitlines() == [
        'best score: 0.25',
        'first episode within 99% of best: 1',
        'mean of last 1 scores: 0.25',
    ]


def test_report_of_rising_curve(tmp_path):
    summary = replay_report(write_curve(tmp_path, range(1, 101)), io.StringIO())
    assert summary.best_score == 100
    assert summary.first_episode_99 == 99
    assert summary.mean_last_100 == 50.5


def test_report_uses_last_hundred_scores(tmp_path):
    summary = replay_report(write_curve(tmp_path, [0.0] * 50 + [1.0] * 100), io.StringIO())
    assert summary.mean_last_100 == 1.0
    assert summary.first_episode_99 == 51


def test_report_is_deterministic(tmp_path):
    path = write_curve(tmp_path, np.random.default_rng(2).uniform(size=300))
    first, second = io.StringIO(), io.StringIO()
    replay_report(path, first)
    replay_report(path, second)
    assert first.getvalue() == second.getvalue()


def test_report_rejects_other_files(tmp_path):
    path = tmp_path / 'other.csv'
    path.write_text('design_index,p_theta,p_star\n0,0.5,0.5\n')
    with pytest.raises(ContractViolation):
        read_run_csv(str(path))
    path.write_text('episode,score,best_score,alpha,critic_loss,actor_objective\n')
    with pytest.raises(ContractViolation):
        read_run_csv(str(path))


def test_main_report(tmp_path, capsys):
    assert main(['report', write_curve(tmp_path, [1.0, 2.0])]) == 0
    assert 'best score: 2.0' in capsys.readouterr().out
    assert main(['report', str(tmp_path / 'absent.csv')]) == 1


def test_main_run(tmp_path):
    out = tmp_path / 'out'
    assert main(['run', write_config(tmp_path, 'toy-continuous'), '--out', str(out), '--seed', '5']) == 0
    assert (out / 'run.csv').read_text().startswith('# seed=5\n')


def test_parser_requires_a_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])
    with pytest.raises(SystemExit):
        build_parser().parse_args(['run', 'config.txt'])


# ==============================================================================
# Acceptance
# ==============================================================================

def evaluation_means(out):
    return [float(r[1]) for r in read_csv(str(out / 'evaluation.csv'))[1:]]


@pytest.mark.slow
def test_attack_reaches_confidence(tmp_path, classifier):
    reached = 0
    for seed in range(10):
        out = tmp_path / 'seed{}'.format(seed)
        assert run_experiment(os.path.join(CONFIGS, 'attack-free.txt'), str(out), seed=seed) == 0
        reached += max(evaluation_means(out)) >= 0.9
    assert reached >= 7


@pytest.mark.slow
def test_perturbation_flips_label(tmp_path, classifier):
    weights = tmp_path / 'weights.txt'
    save_classifier(classifier, str(weights))
    config = tmp_path / 'perturb.txt'
    with open(os.path.join(CONFIGS, 'attack-perturb.txt')) as f:
        config.write_text(f.read() + 'classifier_path = {}\n'.format(weights))
    assert run_experiment(str(config), str(tmp_path / 'out')) == 0
    best = read_csv(str(tmp_path / 'out' / 'best_design.csv'))
    x = np.array([float(r[1]) for r in best[2:]])
    base = select_base_image(classifier, 6, 12345)
    image = perturbed_image(classifier, AttackSpec(1, base, 6, 0.2), x)
    assert np.argmax(classify(classifier, base).probs) == 6
    assert np.argmax(classify(classifier, image).probs) == 1


@pytest.mark.slow
def test_cartpole_policy_improves(tmp_path):
    untrained, trained, reached = [], [], 0
    for seed in range(10):
        out = tmp_path / 'seed{}'.format(seed)
        assert run_experiment(os.path.join(CONFIGS, 'cartpole.txt'), str(out), seed=seed) == 0
        values = evaluation_means(out)
        untrained.append(values[0])
        trained.append(values[-1])
        reached += max(values) >= 150
    assert np.mean(trained) >= 3 * np.mean(untrained)
    assert reached >= 5
