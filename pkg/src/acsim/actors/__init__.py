"""
******************
acsim.actors
******************

.. currentmodule:: acsim.actors

Sampling policies over the design space.


Continuous designs
==================

.. autosummary::
    :toctree: generated/
    :nosignatures:

    ContinuousActor
    NoiseSample
    make_continuous_actor
    draw_noise
    actor_heads
    sample_design
    log_density
    objective_estimate
    actor_update_continuous


Finite designs
==============

.. autosummary::
    :toctree: generated/
    :nosignatures:

    DiscreteActor
    ProbabilityVector
    make_discrete_actor
    design_distribution
    discrete_objective
    actor_update_discrete
    optimal_distribution
    total_variation

"""
from __future__ import print_function
from __future__ import absolute_import
from __future__ import division

from .continuous import ContinuousActor
from .continuous import NoiseSample
from .continuous import make_continuous_actor
from .continuous import draw_noise
from .continuous import actor_heads
from .continuous import sample_design
from .continuous import sample_designs
from .continuous import log_density
from .continuous import entropy_estimate
from .continuous import objective_estimate
from .continuous import actor_update_continuous

from .discrete import DiscreteActor
from .discrete import ProbabilityVector
from .discrete import make_discrete_actor
from .discrete import actor_logits
from .discrete import design_distribution
from .discrete import sample_index
from .discrete import discrete_objective
from .discrete import critic_values
from .discrete import actor_update_discrete
from .discrete import optimal_distribution
from .discrete import log_partition_value
from .discrete import total_variation

__all__ = [
    'ContinuousActor',
    'NoiseSample',
    'make_continuous_actor',
    'draw_noise',
    'actor_heads',
    'sample_design',
    'sample_designs',
    'log_density',
    'entropy_estimate',
    'objective_estimate',
    'actor_update_continuous',
    'DiscreteActor',
    'ProbabilityVector',
    'make_discrete_actor',
    'actor_logits',
    'design_distribution',
    'sample_index',
    'discrete_objective',
    'critic_values',
    'actor_update_discrete',
    'optimal_distribution',
    'log_partition_value',
    'total_variation',
]
