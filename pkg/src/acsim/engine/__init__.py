"""
******************
acsim.engine
******************

.. currentmodule:: acsim.engine

Outer optimization loops, replay buffer and run reporting.


Classes
=======

.. autosummary::
    :toctree: generated/
    :nosignatures:

    ReplayBuffer
    RunConfig
    RunReport
    EpisodeRow
    DistributionReport


Functions
=========

.. autosummary::
    :toctree: generated/
    :nosignatures:

    buffer_store
    buffer_sample
    alpha_at
    run_continuous
    run_discrete
    write_run_csv
    write_best_design_csv
    write_distribution_csv
    write_evaluation_csv

"""
from __future__ import print_function
from __future__ import absolute_import
from __future__ import division

from .buffer import ReplayBuffer
from .buffer import buffer_store
from .buffer import buffer_sample
from .config import RunConfig
from .config import alpha_at
from .result import EpisodeRow
from .result import DistributionReport
from .result import RunReport
from .loop import run_continuous
from .loop import run_discrete
from .csvio import RUN_HEADER
from .csvio import write_run_csv
from .csvio import write_best_design_csv
from .csvio import write_distribution_csv
from .csvio import write_evaluation_csv

__all__ = [
    'ReplayBuffer',
    'buffer_store',
    'buffer_sample',
    'RunConfig',
    'alpha_at',
    'EpisodeRow',
    'DistributionReport',
    'RunReport',
    'run_continuous',
    'run_discrete',
    'RUN_HEADER',
    'write_run_csv',
    'write_best_design_csv',
    'write_distribution_csv',
    'write_evaluation_csv',
]
