"""
******************
acsim.objectives
******************

.. currentmodule:: acsim.objectives

Benchmark simulation models behind a uniform black-box interface.
Continuous objectives expose ``design_dim``, finite ones ``n_designs``.


Toy mixture
===========

.. autosummary::
    :toctree: generated/
    :nosignatures:

    GmmParams
    GmmObjective
    gmm_score
    discretize
    DiscreteObjective


Classifier attacks
==================

.. autosummary::
    :toctree: generated/
    :nosignatures:

    Classifier
    classify
    train_classifier
    load_or_train_classifier
    AttackSpec
    attack_score
    perturb_score
    AttackObjective
    PerturbationObjective


Cart-pole
=========

.. autosummary::
    :toctree: generated/
    :nosignatures:

    CartPoleState
    cartpole_step
    policy_return
    CartPoleObjective

"""
from __future__ import print_function
from __future__ import absolute_import
from __future__ import division

from .gmm import GmmParams
from .gmm import GmmObjective
from .gmm import gmm_score
from .discretize import DiscreteObjective
from .discretize import discretize
from .discretize import grid_points
from .digits import render_digit
from .digits import make_digit_corpus
from .classifier import WEIGHTS_FILE
from .classifier import HOLDOUT_SEED
from .classifier import Classifier
from .classifier import classify
from .classifier import classify_batch
from .classifier import classifier_accuracy
from .classifier import train_classifier
from .classifier import save_classifier
from .classifier import load_classifier
from .classifier import load_or_train_classifier
from .attack import AttackSpec
from .attack import design_to_image
from .attack import clip_image
from .attack import perturbed_image
from .attack import attack_score
from .attack import perturb_score
from .attack import select_base_image
from .attack import AttackObjective
from .attack import PerturbationObjective
from .cartpole import CartPoleState
from .cartpole import is_terminal
from .cartpole import cartpole_step
from .cartpole import initial_state
from .cartpole import policy_return
from .cartpole import CartPoleObjective

__all__ = [
    'GmmParams',
    'GmmObjective',
    'gmm_score',
    'DiscreteObjective',
    'discretize',
    'grid_points',
    'render_digit',
    'make_digit_corpus',
    'WEIGHTS_FILE',
    'HOLDOUT_SEED',
    'Classifier',
    'classify',
    'classify_batch',
    'classifier_accuracy',
    'train_classifier',
    'save_classifier',
    'load_classifier',
    'load_or_train_classifier',
    'AttackSpec',
    'design_to_image',
    'clip_image',
    'perturbed_image',
    'attack_score',
    'perturb_score',
    'select_base_image',
    'AttackObjective',
    'PerturbationObjective',
    'CartPoleState',
    'is_terminal',
    'cartpole_step',
    'initial_state',
    'policy_return',
    'CartPoleObjective',
]
