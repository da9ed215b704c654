from typing import Optional
from nptyping import NDArray
from nptyping import Shape
from nptyping import Float64

from dataclasses import dataclass

from numpy import argmax
from numpy import asarray
from numpy import clip
from numpy import float64
from numpy import nextafter

from acsim.exceptions import ContractViolation
from acsim.exceptions import DimensionMismatch

from .classifier import Classifier
from .classifier import classify
from .classifier import classify_batch
from .digits import make_digit_corpus


Image = NDArray[Shape["*, *"], Float64]

# softmax saturates to exactly 1 once a logit leads by about 37; scores stay inside (0, 1)
SCORE_CEILING = float(nextafter(1.0, 0.0))


@dataclass(frozen=True, eq=False)
class AttackSpec:
    """Target of an attack on the classifier.

    Parameters
    ----------
    target_class : int
        Class whose confidence is maximized.
    base_image : array, optional
        Clean image the perturbation is added to.
    base_class : int, optional
        True class of the base image; must differ from the target.
    delta : float, optional
        Noise level of the perturbation, in ``(0, 1]``.

    """
    target_class: int
    base_image: Optional[Image] = None
    base_class: Optional[int] = None
    delta: float = 0.2

    def __post_init__(self):
        if not 0 <= self.target_class < 10:
            raise ContractViolation('target class {} outside 0..9'.format(self.target_class))
        if not 0 < self.delta <= 1:
            raise ContractViolation('noise level must lie in (0, 1], got {}'.format(self.delta))
        if self.base_image is not None:
            image = asarray(self.base_image, dtype=float64)
            if (image < 0).any() or (image > 1).any():
                raise ContractViolation('base image values must lie in [0, 1]')
            image.setflags(write=False)
            object.__setattr__(self, 'base_image', image)
        if self.base_class is not None and self.base_class == self.target_class:
            raise ContractViolation('base class and target class must differ')


def design_to_image(x, width: int, height: int) -> Image:
    """Map a design in ``[-1, 1]^(W H)`` linearly to an image in ``[0, 1]``."""
    v = asarray(x, dtype=float64).ravel()
    if v.shape[0] != width * height:
        raise DimensionMismatch('design of length {} for {}x{} images'.format(v.shape[0], height, width))
    return ((v + 1.0) / 2.0).reshape((height, width))


def clip_image(image: Image) -> Image:
    return clip(image, 0.0, 1.0)


def perturbed_image(clf: Classifier, spec: AttackSpec, x) -> Image:
    if spec.base_image is None:
        raise ContractViolation('the perturbation attack needs a base image')
    return clip_image(design_to_image(x, clf.width, clf.height) * spec.delta + spec.base_image)


def attack_score(clf: Classifier, spec: AttackSpec, x) -> float:
    """Confidence of the target class on the image generated from the design."""
    return min(float(classify(clf, design_to_image(x, clf.width, clf.height)).probs[spec.target_class]), SCORE_CEILING)


def perturb_score(clf: Classifier, spec: AttackSpec, x) -> float:
    """Confidence of the target class on the base image plus the scaled, clipped design noise."""
    return min(float(classify(clf, perturbed_image(clf, spec, x)).probs[spec.target_class]), SCORE_CEILING)


def select_base_image(clf: Classifier, digit: int, seed: int) -> Image:
    """First image of ``digit`` in a seeded corpus that the classifier labels correctly."""
    images, labels = make_digit_corpus(200, seed)
    candidates = images[labels == digit]
    predicted = argmax(classify_batch(clf, candidates), axis=1)
    for image, label in zip(candidates, predicted):
        if label == digit:
            return image
    raise ContractViolation('the classifier labels no corpus image of digit {} correctly'.format(digit))


class AttackObjective:
    """Black-box wrapper of :func:`attack_score`."""

    def __init__(self, clf: Classifier, spec: AttackSpec):
        self.clf = clf
        self.spec = spec
        self.design_dim = clf.width * clf.height

    def __call__(self, x) -> float:
        return attack_score(self.clf, self.spec, x)


class PerturbationObjective(AttackObjective):
    """Black-box wrapper of :func:`perturb_score`."""

    def __call__(self, x) -> float:
        return perturb_score(self.clf, self.spec, x)
