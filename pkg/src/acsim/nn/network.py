from typing import Callable
from typing import Dict
from typing import List
from typing import Sequence
from typing import Tuple
from typing import Union
from nptyping import NDArray
from nptyping import Shape
from nptyping import Float64

from dataclasses import dataclass

from numpy import asarray
from numpy import atleast_2d
from numpy import concatenate
from numpy import float64
from numpy import isfinite
from numpy import maximum
from numpy import ones_like
from numpy import sqrt
from numpy import tanh
from numpy import zeros

from acsim.exceptions import ContractViolation
from acsim.exceptions import DimensionMismatch
from acsim.exceptions import NonFiniteValue


Vector = NDArray[Shape["*"], Float64]
Batch = NDArray[Shape["*, *"], Float64]


def _identity(z):
    return z


def _relu(z):
    return maximum(z, 0.0)


# activation -> (function of pre-activation, derivative as a function of the activation)
ACTIVATIONS: Dict[str, Tuple[Callable, Callable]] = {
    'tanh': (tanh, lambda a: 1.0 - a * a),
    'relu': (_relu, lambda a: (a > 0.0).astype(float64)),
    'identity': (_identity, ones_like),
}


@dataclass(frozen=True)
class NetworkSpec:
    """Shape of a fully connected feedforward network.

    Parameters
    ----------
    layer_widths : tuple of int
        Widths of all layers, input and output included.
    activations : tuple of str
        One activation per hidden layer.
    output_activation : str, optional
        Activation of the output layer.

    """
    layer_widths: Tuple[int, ...]
    activations: Tuple[str, ...]
    output_activation: str = 'identity'

    def __post_init__(self):
        object.__setattr__(self, 'layer_widths', tuple(int(w) for w in self.layer_widths))
        object.__setattr__(self, 'activations', tuple(self.activations))
        if len(self.layer_widths) < 2:
            raise ContractViolation('a network needs at least an input and an output layer')
        if any(w < 1 for w in self.layer_widths):
            raise ContractViolation('layer widths must be positive: {}'.format(self.layer_widths))
        if len(self.activations) != len(self.layer_widths) - 2:
            raise ContractViolation('expected {} hidden activations, got {}'.format(len(self.layer_widths) - 2, len(self.activations)))
        for name in self.activations:
            if name not in ACTIVATIONS:
                raise ContractViolation('unknown activation: {}'.format(name))
        if self.output_activation != 'identity':
            raise ContractViolation('only identity output layers are supported')

    @classmethod
    def from_widths(cls, widths: Sequence[int], activation: str = 'tanh') -> 'NetworkSpec':
        """Construct a spec using the same activation on every hidden layer."""
        return cls(tuple(widths), (activation,) * (len(widths) - 2))

    @property
    def input_width(self) -> int:
        return self.layer_widths[0]

    @property
    def output_width(self) -> int:
        return self.layer_widths[-1]

    @property
    def layer_activations(self) -> Tuple[str, ...]:
        return self.activations + (self.output_activation,)

    @property
    def parameter_count(self) -> int:
        widths = self.layer_widths
        return sum((w_in + 1) * w_out for w_in, w_out in zip(widths[:-1], widths[1:]))


@dataclass(frozen=True, eq=False)
class ParamVector:
    """Flat parameter store of a network.

    Each layer contributes its weight matrix (row-major, shape ``(w_out, w_in)``)
    followed by its bias vector.
    """
    values: Vector
    spec: NetworkSpec

    def __post_init__(self):
        values = asarray(self.values, dtype=float64).copy()
        if values.ndim != 1 or values.shape[0] != self.spec.parameter_count:
            raise DimensionMismatch('expected {} parameters, got shape {}'.format(self.spec.parameter_count, values.shape))
        if not isfinite(values).all():
            raise NonFiniteValue('parameters must be finite')
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)

    @classmethod
    def zeros(cls, spec: NetworkSpec) -> 'ParamVector':
        return cls(zeros(spec.parameter_count), spec)

    def with_values(self, values: Vector) -> 'ParamVector':
        """Return a parameter vector for the same network holding other values."""
        return ParamVector(values, self.spec)

    def layers(self) -> List[Tuple[Batch, Vector]]:
        """Read-only ``(W, b)`` views into the flat vector, one pair per layer."""
        widths = self.spec.layer_widths
        layers = []
        start = 0
        for w_in, w_out in zip(widths[:-1], widths[1:]):
            stop = start + w_in * w_out
            W = self.values[start:stop].reshape((w_out, w_in))
            b = self.values[stop:stop + w_out]
            layers.append((W, b))
            start = stop + w_out
        return layers


def init_params(spec: NetworkSpec, rng) -> ParamVector:
    """Glorot-uniform weights and zero biases."""
    widths = spec.layer_widths
    chunks = []
    for w_in, w_out in zip(widths[:-1], widths[1:]):
        limit = sqrt(6.0 / (w_in + w_out))
        chunks.append(rng.uniform(-limit, limit, size=w_in * w_out))
        chunks.append(zeros(w_out))
    return ParamVector(concatenate(chunks), spec)


def _check_input(spec: NetworkSpec, inputs) -> Union[Vector, Batch]:
    x = asarray(inputs, dtype=float64)
    if x.ndim not in (1, 2) or x.shape[-1] != spec.input_width:
        raise DimensionMismatch('expected input width {}, got shape {}'.format(spec.input_width, x.shape))
    if not isfinite(x).all():
        raise NonFiniteValue('network inputs must be finite')
    return x


def forward(params: ParamVector, inputs: Union[Vector, Batch]) -> Union[Vector, Batch]:
    """Evaluate the network.

    Parameters
    ----------
    params : :class:`ParamVector`
        Network parameters.
    inputs : array
        A single input vector, or a 2-D batch with one input per row.

    Returns
    -------
    array
        The output vector, or one output row per input row.

    """
    a = _check_input(params.spec, inputs)
    for (W, b), name in zip(params.layers(), params.spec.layer_activations):
        a = ACTIVATIONS[name][0](a.dot(W.T) + b)
    return a


def backward(params: ParamVector,
             inputs: Union[Vector, Batch],
             output_grad: Union[Vector, Batch]) -> Tuple[Vector, Union[Vector, Batch]]:
    """Reverse-mode gradients of ``output_grad . forward(params, inputs)``.

    Parameters
    ----------
    params : :class:`ParamVector`
        Network parameters.
    inputs : array
        A single input vector, or a 2-D batch with one input per row.
    output_grad : array
        Cotangent of the output, same leading shape as the inputs.

    Returns
    -------
    param_grad : array
        Flat gradient with respect to the parameters, summed over the batch.
    input_grad : array
        Gradient with respect to the inputs, one row per input row.

    """
    spec = params.spec
    x = _check_input(spec, inputs)
    g = asarray(output_grad, dtype=float64)
    if g.shape != x.shape[:-1] + (spec.output_width,):
        raise DimensionMismatch('expected output gradient of shape {}, got {}'.format(x.shape[:-1] + (spec.output_width,), g.shape))

    layers = params.layers()
    activations = [atleast_2d(x)]
    for (W, b), name in zip(layers, spec.layer_activations):
        activations.append(ACTIVATIONS[name][0](activations[-1].dot(W.T) + b))

    chunks = []
    delta = atleast_2d(g)
    for index in reversed(range(len(layers))):
        W, _ = layers[index]
        delta = delta * ACTIVATIONS[spec.layer_activations[index]][1](activations[index + 1])
        chunks.append((delta.T.dot(activations[index]).ravel(), delta.sum(axis=0)))
        delta = delta.dot(W)

    param_grad = concatenate([chunk for pair in reversed(chunks) for chunk in pair])
    input_grad = delta if x.ndim == 2 else delta[0]
    return param_grad, input_grad
