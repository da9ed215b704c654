from typing import Tuple
from nptyping import NDArray
from nptyping import Shape
from nptyping import Float64
from nptyping import Int

from numpy import clip
from numpy import roll
from numpy import stack
from numpy import zeros
from numpy.random import default_rng


IMAGE_SIZE = 16

# rows, cols of the seven segments of a glyph in a 16 x 16 frame
SEGMENTS = {
    'a': (slice(2, 4), slice(4, 12)),
    'b': (slice(2, 9), slice(10, 12)),
    'c': (slice(7, 14), slice(10, 12)),
    'd': (slice(12, 14), slice(4, 12)),
    'e': (slice(7, 14), slice(4, 6)),
    'f': (slice(2, 9), slice(4, 6)),
    'g': (slice(7, 9), slice(4, 12)),
}

DIGIT_SEGMENTS = {
    0: 'abcdef',
    1: 'bc',
    2: 'abdeg',
    3: 'abcdg',
    4: 'bcfg',
    5: 'acdfg',
    6: 'acdefg',
    7: 'abc',
    8: 'abcdefg',
    9: 'abcdfg',
}


def render_digit(digit: int, rng=None) -> NDArray[Shape["16, 16"], Float64]:
    """Render a seven-segment digit, jittered when a generator is given.

    Jitter shifts the glyph by up to two pixels in each direction, scales its
    intensity in ``[0.7, 1]`` and adds clipped Gaussian pixel noise.
    """
    image = zeros((IMAGE_SIZE, IMAGE_SIZE))
    for segment in DIGIT_SEGMENTS[digit]:
        image[SEGMENTS[segment]] = 1.0
    if rng is None:
        return image
    dy, dx = rng.integers(-2, 3, size=2)
    image = roll(image, (dy, dx), axis=(0, 1))
    image = image * rng.uniform(0.7, 1.0) + rng.normal(0.0, 0.05, size=image.shape)
    return clip(image, 0.0, 1.0)


def make_digit_corpus(n: int, seed: int) -> Tuple[NDArray[Shape["*, 16, 16"], Float64], NDArray[Shape["*"], Int]]:
    """Deterministic corpus of ``n`` jittered digits with balanced labels."""
    rng = default_rng(seed)
    labels = rng.permutation([k % 10 for k in range(n)])
    images = stack([render_digit(int(label), rng) for label in labels])
    return images, labels
