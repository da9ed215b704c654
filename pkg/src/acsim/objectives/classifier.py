"""Frozen digit classifier behind the attack objectives.

Weights file layout
-------------------
Plain text, one 64-bit float per line written with 17 significant digits,
preceded by a header of ``#`` lines::

    # acsim digit classifier
    # widths 256 64 10
    # activations tanh
    # image 16 16

The values follow the flat parameter layout of :class:`acsim.nn.ParamVector`.
"""
import logging
import os
import tempfile

from typing import Optional
from typing import Sequence
from nptyping import NDArray
from nptyping import Shape
from nptyping import Float64

from dataclasses import dataclass

from numpy import argmax
from numpy import asarray
from numpy import eye
from numpy import float64
from numpy import isfinite
from numpy import loadtxt
from numpy import savetxt
from numpy.random import default_rng
from scipy.special import softmax

import acsim
from acsim.actors import ProbabilityVector
from acsim.exceptions import ContractViolation
from acsim.exceptions import DimensionMismatch
from acsim.exceptions import NonFiniteValue
from acsim.nn import AdamState
from acsim.nn import NetworkSpec
from acsim.nn import ParamVector
from acsim.nn import adam_step
from acsim.nn import backward
from acsim.nn import forward
from acsim.nn import init_params

from .digits import IMAGE_SIZE
from .digits import make_digit_corpus


logger = logging.getLogger(__name__)

N_CLASSES = 10
WEIGHTS_FILE = 'digit_classifier.txt'
TRAINING_SEED = 20211
HOLDOUT_SEED = 20212


@dataclass(frozen=True, eq=False)
class Classifier:
    """Frozen network mapping a ``height x width`` image to class probabilities."""
    params: ParamVector
    width: int = IMAGE_SIZE
    height: int = IMAGE_SIZE
    n_classes: int = N_CLASSES

    def __post_init__(self):
        spec = self.params.spec
        if spec.input_width != self.width * self.height or spec.output_width != self.n_classes:
            raise DimensionMismatch('classifier network {} does not match {}x{} images and {} classes'.format(
                spec.layer_widths, self.height, self.width, self.n_classes))


def _check_images(clf: Classifier, images) -> NDArray:
    x = asarray(images, dtype=float64)
    if x.shape[-2:] != (clf.height, clf.width):
        raise DimensionMismatch('expected {}x{} images, got shape {}'.format(clf.height, clf.width, x.shape))
    if not isfinite(x).all():
        raise NonFiniteValue('image has non-finite pixels')
    if (x < 0).any() or (x > 1).any():
        raise ContractViolation('pixel values must lie in [0, 1]')
    return x


def classify(clf: Classifier, image: NDArray[Shape["*, *"], Float64]) -> ProbabilityVector:
    """Class probabilities of one image with pixels in ``[0, 1]``."""
    x = _check_images(clf, image)
    if x.ndim != 2:
        raise DimensionMismatch('expected a single image, got shape {}'.format(x.shape))
    return ProbabilityVector.from_logits(forward(clf.params, x.ravel()))


def classify_batch(clf: Classifier, images: NDArray[Shape["*, *, *"], Float64]) -> NDArray[Shape["*, *"], Float64]:
    """Class probabilities, one row per image."""
    x = _check_images(clf, images)
    return softmax(forward(clf.params, x.reshape((x.shape[0], -1))), axis=1)


def classifier_accuracy(clf: Classifier, images, labels) -> float:
    predicted = argmax(classify_batch(clf, images), axis=1)
    return float((predicted == asarray(labels)).mean())


def train_classifier(seed: int = TRAINING_SEED,
                     n_train: int = 5000,
                     hidden: Sequence[int] = (64,),
                     epochs: int = 20,
                     batch_size: int = 64,
                     lr: float = 3e-3) -> Classifier:
    """Fit a softmax classifier on the synthetic digit corpus by cross-entropy descent."""
    rng = default_rng(seed)
    images, labels = make_digit_corpus(n_train, seed)
    X = images.reshape((n_train, -1))
    Y = eye(N_CLASSES)[labels]
    spec = NetworkSpec.from_widths((IMAGE_SIZE * IMAGE_SIZE,) + tuple(hidden) + (N_CLASSES,), 'tanh')
    params = init_params(spec, rng)
    opt = AdamState.for_params(params)
    for epoch in range(epochs):
        order = rng.permutation(n_train)
        for start in range(0, n_train, batch_size):
            rows = order[start:start + batch_size]
            p = softmax(forward(params, X[rows]), axis=1)
            grad, _ = backward(params, X[rows], (p - Y[rows]) / rows.shape[0])
            opt, params = adam_step(opt, params, grad, lr)
        logger.debug('classifier epoch %d done', epoch + 1)
    return Classifier(params)


def save_classifier(clf: Classifier, path: str) -> None:
    """Write the frozen weights; the file is replaced atomically."""
    spec = clf.params.spec
    header = '\n'.join([
        'acsim digit classifier',
        'widths {}'.format(' '.join(str(w) for w in spec.layer_widths)),
        'activations {}'.format(' '.join(spec.activations)),
        'image {} {}'.format(clf.height, clf.width),
    ])
    folder = os.path.dirname(os.path.abspath(path))
    os.makedirs(folder, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=folder, suffix='.tmp')
    try:
        with os.fdopen(fd, 'w') as f:
            savetxt(f, clf.params.values, fmt='%.17g', header=header)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def load_classifier(path: str) -> Classifier:
    header = {}
    with open(path) as f:
        for line in f:
            if not line.startswith('#'):
                break
            parts = line[1:].split()
            if len(parts) > 1:
                header[parts[0]] = parts[1:]
    try:
        widths = [int(w) for w in header['widths']]
        activations = header.get('activations', [])
        height, width = (int(v) for v in header['image'])
    except (KeyError, ValueError) as e:
        raise ContractViolation('malformed classifier header in {}'.format(path)) from e
    spec = NetworkSpec(tuple(widths), tuple(activations))
    values = loadtxt(path, comments='#', ndmin=1)
    return Classifier(ParamVector(values, spec), width, height, widths[-1])


def load_or_train_classifier(path: Optional[str] = None) -> Classifier:
    """Load the frozen classifier, training and saving it first if the weights file is missing."""
    path = path or acsim.get(WEIGHTS_FILE)
    if os.path.exists(path):
        return load_classifier(path)
    logger.info('no classifier weights at %s, training with seed %d', path, TRAINING_SEED)
    clf = train_classifier()
    images, labels = make_digit_corpus(1000, HOLDOUT_SEED)
    logger.info('held-out accuracy %.4f', classifier_accuracy(clf, images, labels))
    save_classifier(clf, path)
    return clf
