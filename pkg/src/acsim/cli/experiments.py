import logging

from typing import Callable
from typing import Dict
from typing import Optional
from typing import TextIO

from numpy import clip
from numpy import mean
from numpy.random import default_rng

from acsim.actors import draw_noise
from acsim.actors import sample_designs
from acsim.engine import RunReport
from acsim.engine import run_continuous
from acsim.engine import run_discrete
from acsim.engine import write_best_design_csv
from acsim.engine import write_distribution_csv
from acsim.engine import write_evaluation_csv
from acsim.engine import write_run_csv
from acsim.exceptions import ConfigError
from acsim.exceptions import ContractViolation
from acsim.objectives import AttackObjective
from acsim.objectives import AttackSpec
from acsim.objectives import CartPoleObjective
from acsim.objectives import GmmObjective
from acsim.objectives import PerturbationObjective
from acsim.objectives import classify_batch
from acsim.objectives import design_to_image
from acsim.objectives import discretize
from acsim.objectives import load_or_train_classifier
from acsim.objectives import perturbed_image
from acsim.objectives import policy_return
from acsim.objectives import select_base_image

from .config import ExperimentConfig
from .config import dump_config
from .pgm import write_pgm


logger = logging.getLogger(__name__)

Writer = Callable[[TextIO], None]


class Experiment:
    """A study: builds its objective, runs the matching loop and declares its output files.

    Subclasses are looked up by experiment name through :meth:`register`.
    """

    REGISTRY = {}

    def __init__(self, config: ExperimentConfig):
        self.config = config

    @staticmethod
    def register(name, cls):
        Experiment.REGISTRY[name] = cls

    @staticmethod
    def create(config: ExperimentConfig) -> 'Experiment':
        cls = Experiment.REGISTRY.get(config.experiment)
        if cls is None:
            raise ConfigError('experiment', 'no experiment is registered as {!r}'.format(config.experiment))
        return cls(config)

    def objective(self) -> Callable:
        raise NotImplementedError

    def monitor(self) -> Optional[Callable]:
        return None

    def run(self) -> RunReport:
        return run_continuous(self.config.run, self.objective(),
                              monitor=self.monitor(),
                              eval_interval=self.config.eval_interval)

    def outputs(self, report: RunReport) -> Dict[str, Writer]:
        """File names mapped to the writers producing them."""
        outputs = {
            'run.csv': lambda stream: write_run_csv(report, stream),
            'best_design.csv': lambda stream: write_best_design_csv(report, stream),
            'config.txt': lambda stream: stream.write(dump_config(self.config)),
        }
        if report.evaluations:
            outputs['evaluation.csv'] = lambda stream: write_evaluation_csv(report, stream)
        return outputs


class ToyContinuous(Experiment):

    def objective(self):
        return GmmObjective(self.config.gmm)


class ToyDiscrete(Experiment):

    def objective(self):
        return discretize(GmmObjective(self.config.gmm), self.config.n_designs)

    def run(self) -> RunReport:
        return run_discrete(self.config.run, self.objective())

    def outputs(self, report):
        outputs = super(ToyDiscrete, self).outputs(report)
        outputs['distribution.csv'] = lambda stream: write_distribution_csv(report, stream)
        return outputs


class AttackFree(Experiment):

    def __init__(self, config):
        super(AttackFree, self).__init__(config)
        self.clf = load_or_train_classifier(config.classifier_path)
        self.spec = self.attack_spec()

    def attack_spec(self) -> AttackSpec:
        return AttackSpec(self.config.target_class, delta=self.config.delta)

    def objective(self):
        return AttackObjective(self.clf, self.spec)

    def images(self, designs):
        return ((designs + 1.0) / 2.0).reshape((-1, self.clf.height, self.clf.width))

    def best_image(self, report):
        return design_to_image(report.final_best.design, self.clf.width, self.clf.height)

    def monitor(self):
        def mean_confidence(actor):
            rng = default_rng(self.config.eval_seed)
            designs = sample_designs(actor, draw_noise(actor, self.config.eval_samples, rng))
            return float(classify_batch(self.clf, self.images(designs))[:, self.spec.target_class].mean())
        return mean_confidence

    def outputs(self, report):
        outputs = super(AttackFree, self).outputs(report)
        image = self.best_image(report)
        outputs['best_design.pgm'] = lambda stream: write_pgm(image, stream, comment='seed={}'.format(report.seed))
        return outputs


class AttackPerturb(AttackFree):

    def attack_spec(self):
        try:
            base = select_base_image(self.clf, self.config.base_class, self.config.eval_seed)
            return AttackSpec(self.config.target_class, base, self.config.base_class, self.config.delta)
        except ContractViolation as e:
            raise ConfigError('base_class', str(e)) from e

    def objective(self):
        return PerturbationObjective(self.clf, self.spec)

    def images(self, designs):
        return clip(super(AttackPerturb, self).images(designs) * self.spec.delta + self.spec.base_image, 0.0, 1.0)

    def best_image(self, report):
        return perturbed_image(self.clf, self.spec, report.final_best.design)


class CartPole(Experiment):

    def objective(self):
        return CartPoleObjective(self.config.episodes_per_query, self.config.run.seed)

    def monitor(self):
        def mean_return(actor):
            rng = default_rng(self.config.eval_seed)
            designs = sample_designs(actor, draw_noise(actor, self.config.eval_samples, rng))
            return float(mean([policy_return(z, self.config.eval_seed + k) for k, z in enumerate(designs)]))
        return mean_return


Experiment.register('toy-continuous', ToyContinuous)
Experiment.register('toy-discrete', ToyDiscrete)
Experiment.register('attack-free', AttackFree)
Experiment.register('attack-perturb', AttackPerturb)
Experiment.register('cartpole', CartPole)
