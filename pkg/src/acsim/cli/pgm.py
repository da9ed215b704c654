from typing import Optional
from typing import TextIO

from numpy import asarray
from numpy import clip
from numpy import float64
from numpy import rint


def write_pgm(image, stream: TextIO, maxval: int = 255, comment: Optional[str] = None) -> None:
    """Write an image with values in ``[0, 1]`` as a plain (P2) graymap."""
    pixels = rint(clip(asarray(image, dtype=float64), 0.0, 1.0) * maxval).astype(int)
    height, width = pixels.shape
    stream.write('P2\n')
    if comment:
        stream.write('# {}\n'.format(comment))
    stream.write('{} {}\n{}\n'.format(width, height, maxval))
    for row in pixels:
        stream.write(' '.join(str(v) for v in row) + '\n')
