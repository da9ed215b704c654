from typing import Any
from typing import List
from typing import NamedTuple
from typing import Optional
from typing import Tuple
from nptyping import NDArray
from nptyping import Shape
from nptyping import Float64

from acsim.actors import ProbabilityVector
from acsim.critic import Design
from acsim.critic import ScoredDesign


class EpisodeRow(NamedTuple):
    episode: int
    design: Design
    score: float
    alpha: float
    best_score: float
    critic_loss: float
    actor_objective: float


class DistributionReport(NamedTuple):
    p_theta: ProbabilityVector
    p_star: ProbabilityVector
    q_values: NDArray[Shape["*"], Float64]


class RunReport(NamedTuple):
    rows: List[EpisodeRow]
    final_best: ScoredDesign
    seed: int
    evaluations: List[Tuple[int, float]]
    distribution: Optional[DistributionReport] = None
    actor: Any = None
    critic: Any = None
