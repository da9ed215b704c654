"""
******************
acsim.critic
******************

.. currentmodule:: acsim.critic

Neural surrogate of the black-box objective, fitted by least-squares regression.


Classes
=======

.. autosummary::
    :toctree: generated/
    :nosignatures:

    Critic
    ScoredDesign


Functions
=========

.. autosummary::
    :toctree: generated/
    :nosignatures:

    make_critic
    encode_design
    predict
    predict_batch
    critic_loss
    critic_gradient
    critic_update
    critic_input_gradient

"""
from __future__ import print_function
from __future__ import absolute_import
from __future__ import division

from .critic import Design
from .critic import Critic
from .critic import ScoredDesign
from .critic import is_index
from .critic import one_hot
from .critic import encode_design
from .critic import make_critic
from .critic import predict
from .critic import predict_batch
from .critic import critic_loss
from .critic import critic_gradient
from .critic import critic_update
from .critic import critic_input_gradient
from .critic import scored_designs

__all__ = [
    'Design',
    'Critic',
    'ScoredDesign',
    'is_index',
    'one_hot',
    'encode_design',
    'make_critic',
    'predict',
    'predict_batch',
    'critic_loss',
    'critic_gradient',
    'critic_update',
    'critic_input_gradient',
    'scored_designs',
]
