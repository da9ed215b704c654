from __future__ import print_function
from __future__ import absolute_import
from __future__ import division


class ContractViolation(ValueError):
    pass


class DimensionMismatch(ContractViolation):
    pass


class NonFiniteValue(ContractViolation):
    pass


class EmptyBatch(ContractViolation):
    pass


class DesignOutOfRange(ContractViolation):
    pass


class ConfigError(ContractViolation):
    """Invalid configuration value; the offending field is named in the message."""

    def __init__(self, field, message):
        super(ConfigError, self).__init__('{}: {}'.format(field, message))
        self.field = field


class ObjectiveFailure(RuntimeError):
    """The black-box objective failed during an episode."""

    def __init__(self, episode, message):
        super(ObjectiveFailure, self).__init__('episode {}: {}'.format(episode, message))
        self.episode = episode
