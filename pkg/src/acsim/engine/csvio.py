import csv

from typing import TextIO

from numpy import asarray
from numpy import float64

from acsim.critic import is_index

from .result import RunReport


RUN_HEADER = ('episode', 'score', 'best_score', 'alpha', 'critic_loss', 'actor_objective')
DISTRIBUTION_HEADER = ('design_index', 'p_theta', 'p_star')
EVALUATION_HEADER = ('episode', 'value')
BEST_DESIGN_HEADER = ('name', 'value')


def _number(value) -> str:
    # repr round-trips float64 exactly
    return repr(float(value))


def _provenance(stream: TextIO, report: RunReport) -> None:
    stream.write('# seed={}\n'.format(report.seed))


def write_run_csv(report: RunReport, stream: TextIO) -> None:
    """Learning curve, one row per episode."""
    _provenance(stream, report)
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(RUN_HEADER)
    for row in report.rows:
        writer.writerow([row.episode] + [_number(v) for v in (row.score, row.best_score, row.alpha, row.critic_loss, row.actor_objective)])


def write_best_design_csv(report: RunReport, stream: TextIO) -> None:
    """Best stored design: its score, then its index or one row per coordinate."""
    _provenance(stream, report)
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(BEST_DESIGN_HEADER)
    best = report.final_best
    writer.writerow(['score', _number(best.score)])
    if is_index(best.design):
        writer.writerow(['design_index', int(best.design)])
    else:
        for i, value in enumerate(asarray(best.design, dtype=float64).ravel()):
            writer.writerow(['x{}'.format(i), _number(value)])


def write_distribution_csv(report: RunReport, stream: TextIO) -> None:
    """Final policy against the energy-based optimum of the final critic."""
    if report.distribution is None:
        raise ValueError('the report holds no final distribution')
    _provenance(stream, report)
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(DISTRIBUTION_HEADER)
    p_theta = report.distribution.p_theta.probs
    p_star = report.distribution.p_star.probs
    for i in range(p_theta.shape[0]):
        writer.writerow([i, _number(p_theta[i]), _number(p_star[i])])


def write_evaluation_csv(report: RunReport, stream: TextIO) -> None:
    _provenance(stream, report)
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(EVALUATION_HEADER)
    for episode, value in report.evaluations:
        writer.writerow([episode, _number(value)])
