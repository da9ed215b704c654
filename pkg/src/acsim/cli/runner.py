import logging
import os
import tempfile

from typing import Callable
from typing import Optional
from typing import TextIO

from acsim.exceptions import ContractViolation
from acsim.exceptions import ObjectiveFailure

from .config import load_config
from .experiments import Experiment


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUNTIME = 2


def write_atomic(path: str, write: Callable[[TextIO], None]) -> None:
    """Write through a temporary file in the target folder, then rename it into place."""
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix='.' + os.path.basename(path), suffix='.tmp')
    try:
        with os.fdopen(fd, 'w', newline='') as stream:
            write(stream)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def run_experiment(config_path: str, output_dir: str, seed: Optional[int] = None) -> int:
    """Run the experiment described by a config file and write its outputs.

    Returns
    -------
    int
        0 on success, 1 for an invalid config, 2 if the run or the writing of
        its outputs failed.

    """
    try:
        config = load_config(config_path)
        if seed is not None:
            config = config.with_seed(seed)
        experiment = Experiment.create(config)
    except ContractViolation as e:
        logger.error('invalid config %s: %s', config_path, e)
        return EXIT_CONFIG

    logger.info('running %s with seed %d for %d episodes', config.experiment, config.run.seed, config.run.episodes)
    try:
        report = experiment.run()
    except ObjectiveFailure as e:
        logger.error('objective failed at episode %d: %s', e.episode, e)
        return EXIT_RUNTIME
    except ContractViolation as e:
        logger.error('run of %s failed: %s', config.experiment, e)
        return EXIT_RUNTIME

    try:
        os.makedirs(output_dir, exist_ok=True)
        for name, write in experiment.outputs(report).items():
            path = os.path.join(output_dir, name)
            write_atomic(path, write)
            logger.info('wrote %s', path)
    except OSError as e:
        logger.error('cannot write outputs to %s: %s', output_dir, e)
        return EXIT_RUNTIME
    logger.info('best score %.6g', report.final_best.score)
    return EXIT_OK
