"""
******************
acsim.nn
******************

.. currentmodule:: acsim.nn

Small feedforward networks with exact reverse-mode gradients.


Classes
=======

.. autosummary::
    :toctree: generated/
    :nosignatures:

    NetworkSpec
    ParamVector
    AdamState


Functions
=========

.. autosummary::
    :toctree: generated/
    :nosignatures:

    init_params
    forward
    backward
    adam_step

"""
from __future__ import print_function
from __future__ import absolute_import
from __future__ import division

from .network import NetworkSpec
from .network import ParamVector
from .network import init_params
from .network import forward
from .network import backward
from .adam import AdamState
from .adam import adam_step

__all__ = [
    'NetworkSpec',
    'ParamVector',
    'AdamState',
    'init_params',
    'forward',
    'backward',
    'adam_step',
]
