from typing import Iterator
from typing import List
from typing import Optional
from typing import Tuple

from collections import deque

from acsim.critic import ScoredDesign
from acsim.exceptions import ContractViolation
from acsim.exceptions import EmptyBatch


class ReplayBuffer:
    """Store of every queried (design, score) pair.

    Parameters
    ----------
    capacity : int, optional
        Maximum number of retained entries, oldest evicted first.
        Unbounded by default.

    Notes
    -----
    The best entry is the earliest stored entry among those with the
    maximal score.

    """

    def __init__(self, capacity: Optional[int] = None):
        if capacity is not None and capacity < 1:
            raise ContractViolation('buffer capacity must be positive, got {}'.format(capacity))
        self.capacity = capacity
        self._entries = deque(maxlen=capacity)
        self._best = None

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[ScoredDesign]:
        return iter(self._entries)

    @property
    def entries(self) -> Tuple[ScoredDesign, ...]:
        return tuple(self._entries)

    @property
    def best(self) -> Optional[ScoredDesign]:
        return self._best

    def store(self, entry: ScoredDesign) -> 'ReplayBuffer':
        evicted = None
        if self.capacity is not None and len(self._entries) == self.capacity:
            evicted = self._entries[0]
        self._entries.append(entry)
        if evicted is not None and evicted is self._best:
            self._best = None
            for retained in self._entries:
                if self._best is None or retained.score > self._best.score:
                    self._best = retained
        elif self._best is None or entry.score > self._best.score:
            self._best = entry
        return self

    def sample(self, n: int, rng) -> List[ScoredDesign]:
        if not self._entries:
            raise EmptyBatch('cannot sample from an empty replay buffer')
        if n < 1:
            raise ContractViolation('sample size must be positive, got {}'.format(n))
        indices = rng.integers(0, len(self._entries), size=n)
        return [self._entries[i] for i in indices]


def buffer_store(buf: ReplayBuffer, entry: ScoredDesign) -> ReplayBuffer:
    """Append an entry, updating the best entry if it scores strictly higher."""
    return buf.store(entry)


def buffer_sample(buf: ReplayBuffer, n: int, rng) -> List[ScoredDesign]:
    """Draw ``n`` entries uniformly with replacement."""
    return buf.sample(n, rng)
