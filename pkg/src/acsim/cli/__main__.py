import argparse
import logging
import sys

from acsim.exceptions import ContractViolation

from .report import replay_report
from .runner import EXIT_CONFIG
from .runner import EXIT_OK
from .runner import run_experiment


logger = logging.getLogger('acsim')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='acsim', description='Actor-critic optimization of black-box simulation models.')
    parser.add_argument('-v', '--verbose', action='store_true', help='log every episode')
    commands = parser.add_subparsers(dest='command', required=True)

    run = commands.add_parser('run', help='run an experiment from a config file')
    run.add_argument('config', help='path of the experiment config')
    run.add_argument('--out', required=True, help='output folder')
    run.add_argument('--seed', type=int, default=None, help='override the seed of the config')

    report = commands.add_parser('report', help='summarize a run.csv learning curve')
    report.add_argument('csv', help='path of a run.csv file')
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format='%(levelname)s %(name)s: %(message)s')
    if args.command == 'run':
        return run_experiment(args.config, args.out, args.seed)
    try:
        replay_report(args.csv)
    except (OSError, ContractViolation) as e:
        logger.error('cannot summarize %s: %s', args.csv, e)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
