"""
******************
acsim.cli
******************

.. currentmodule:: acsim.cli

Experiment runner: ``acsim run <config> --out <dir> [--seed N]`` and ``acsim report <csv>``.


Classes
=======

.. autosummary::
    :toctree: generated/
    :nosignatures:

    ExperimentConfig
    Experiment
    ReportSummary


Functions
=========

.. autosummary::
    :toctree: generated/
    :nosignatures:

    parse_config
    dump_config
    load_config
    run_experiment
    replay_report
    write_pgm

"""
from __future__ import print_function
from __future__ import absolute_import
from __future__ import division

from .config import EXPERIMENTS
from .config import ExperimentConfig
from .config import parse_config
from .config import dump_config
from .config import load_config
from .experiments import Experiment
from .pgm import write_pgm
from .report import ReportSummary
from .report import read_run_csv
from .report import replay_report
from .runner import write_atomic
from .runner import run_experiment

__all__ = [
    'EXPERIMENTS',
    'ExperimentConfig',
    'parse_config',
    'dump_config',
    'load_config',
    'Experiment',
    'write_pgm',
    'ReportSummary',
    'read_run_csv',
    'replay_report',
    'write_atomic',
    'run_experiment',
]
