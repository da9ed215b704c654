"""Entropy-weight ablation on the mixture toy.

Runs the continuous and the discretized problem with alpha held fixed at each
given value and writes one run.csv per run under ``<out>/<space>/alpha-<value>/``.
Prints the score variance of the final design distribution: a large fixed alpha
keeps the actor spread over both modes, a small one lets it settle on the higher one.
"""
import argparse
import logging
import os

from dataclasses import replace

from numpy import array
from numpy import dot
from numpy.random import default_rng

from acsim.actors import design_distribution
from acsim.actors import draw_noise
from acsim.actors import sample_designs
from acsim.cli import write_atomic
from acsim.engine import RunConfig
from acsim.engine import run_continuous
from acsim.engine import run_discrete
from acsim.engine import write_run_csv
from acsim.objectives import GmmObjective
from acsim.objectives import discretize


logger = logging.getLogger('alpha_ablation')


def continuous_variance(report, seed, samples=1000):
    objective = GmmObjective()
    designs = sample_designs(report.actor, draw_noise(report.actor, samples, default_rng(seed)))
    return array([objective(x) for x in designs]).var()


def discrete_variance(report, objective):
    p = design_distribution(report.actor).probs
    scores = objective.scores()
    mean = dot(p, scores)
    return dot(p, (scores - mean) ** 2)


parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
parser.add_argument('--out', default='ablation', help='output folder')
parser.add_argument('--episodes', type=int, default=2000)
parser.add_argument('--seed', type=int, default=0)
parser.add_argument('--alphas', type=float, nargs='+', default=[1e-1, 1e-2, 1e-3])
parser.add_argument('--n-designs', type=int, default=21)
args = parser.parse_args()

logging.basicConfig(level=logging.INFO, format='%(levelname)s %(name)s: %(message)s')

base = RunConfig(episodes=args.episodes, seed=args.seed, lr_actor=1e-3, lr_critic=1e-3)
table = discretize(GmmObjective(), args.n_designs)

print('space,alpha,score_variance')
for alpha in args.alphas:
    config = replace(base, alpha_initial=alpha, alpha_final=alpha)
    for space in ('continuous', 'discrete'):
        if space == 'continuous':
            report = run_continuous(config, GmmObjective())
            variance = continuous_variance(report, args.seed + 1)
        else:
            report = run_discrete(config, table)
            variance = discrete_variance(report, table)
        folder = os.path.join(args.out, space, 'alpha-{:g}'.format(alpha))
        os.makedirs(folder, exist_ok=True)
        write_atomic(os.path.join(folder, 'run.csv'), lambda stream: write_run_csv(report, stream))
        logger.info('wrote %s', folder)
        print('{},{!r},{!r}'.format(space, alpha, float(variance)))
