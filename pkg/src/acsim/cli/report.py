import csv
import sys

from typing import NamedTuple
from typing import Optional
from typing import TextIO

from acsim.engine import RUN_HEADER
from acsim.exceptions import ContractViolation


class ReportSummary(NamedTuple):
    best_score: float
    first_episode_99: int
    mean_last_100: float


def read_run_csv(path: str):
    """Rows of a learning-curve file as dicts of floats keyed by column."""
    with open(path, newline='') as f:
        lines = [line for line in f if not line.startswith('#')]
    reader = csv.reader(lines)
    header = next(reader, None)
    if header is None or tuple(h.strip() for h in header) != RUN_HEADER:
        raise ContractViolation('{}: expected header {}, got {}'.format(path, ','.join(RUN_HEADER), header))
    rows = []
    for number, record in enumerate(reader, start=2):
        if len(record) != len(RUN_HEADER):
            raise ContractViolation('{}: row {} has {} fields'.format(path, number, len(record)))
        try:
            rows.append({key: float(value) for key, value in zip(RUN_HEADER, record)})
        except ValueError as e:
            raise ContractViolation('{}: row {}: {}'.format(path, number, e)) from e
    if not rows:
        raise ContractViolation('{}: no episodes recorded'.format(path))
    return rows


def replay_report(csv_path: str, stream: Optional[TextIO] = None) -> ReportSummary:
    """Summarize a learning curve: final best score, first episode within 99% of it, mean of the last 100 scores."""
    if stream is None:
        stream = sys.stdout
    rows = read_run_csv(csv_path)
    best = rows[-1]['best_score']
    threshold = best - 0.01 * abs(best)
    first = next(int(row['episode']) for row in rows if row['best_score'] >= threshold)
    tail = [row['score'] for row in rows[-100:]]
    summary = ReportSummary(best, first, sum(tail) / len(tail))
    stream.write('best score: {!r}\n'.format(summary.best_score))
    stream.write('first episode within 99% of best: {}\n'.format(summary.first_episode_99))
    stream.write('mean of last {} scores: {!r}\n'.format(len(tail), summary.mean_last_100))
    return summary
