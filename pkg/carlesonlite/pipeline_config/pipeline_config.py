import json
import math
from dataclasses import dataclass, asdict, field
from pathlib import Path
from typing import List

from ..errors import RangeError

__all__ = ['CONFIG_FILENAME', 'PipelineConfig', 'validate_pipeline_config', 'create_pipeline_config',
           'load_pipeline_config']

CONFIG_FILENAME = 'pipeline_config.json'


@dataclass(frozen=True)
class PipelineConfig:
    '''Every parameter of a pipeline run. Build it with ``create_pipeline_config``
    or ``load_pipeline_config`` so that ranges are checked.'''
    ratio: float = 1 / 3
    depth: int = 6
    exponent: float = 2.0
    grid_size: int = 2 ** 16
    generation: int = 4
    count_cap: int = 64
    alpha_phase: float = 0.0
    epsilons: List[float] = field(default_factory=lambda: [0.1])
    orbit_steps: int = 1000
    seed: int = 0
    out_dir: str = 'pipeline_output'
    extra_node_angles: List[float] = field(default_factory=list)
    resolvent_points: List[List[float]] = field(default_factory=lambda: [[0.0, 0.0], [2.0, 0.0], [0.0, 3.0]])
    random_checks: int = 100

    @property
    def alpha(self) -> complex:
        return complex(math.cos(self.alpha_phase), math.sin(self.alpha_phase))

    def to_dict(self):
        return asdict(self)


def _is_int(value):
    return isinstance(value, int) and not isinstance(value, bool)


def validate_pipeline_config(config):
    '''Raise RangeError for the first parameter outside its range.'''
    if not (0 < config.ratio < 1):
        raise RangeError(f'ratio must lie in (0, 1). Get: {config.ratio}')
    if not _is_int(config.depth) or not (0 <= config.depth <= 30):
        raise RangeError(f'depth must be an integer in [0, 30]. Get: {config.depth}')
    if config.exponent < 1:
        raise RangeError(f'exponent must be at least 1. Get: {config.exponent}')
    n = config.grid_size
    if not _is_int(n) or not (2 ** 8 <= n <= 2 ** 22) or n & (n - 1):
        raise RangeError(f'grid_size must be a power of two in [256, 2^22]. Get: {n}')
    if not _is_int(config.generation) or not (1 <= config.generation <= config.depth):
        raise RangeError(f'generation must be an integer in [1, depth = {config.depth}]. '
                         f'Get: {config.generation}')
    if not _is_int(config.count_cap) or config.count_cap < 2:
        raise RangeError(f'count_cap must be an integer >= 2. Get: {config.count_cap}')
    if not config.epsilons or any(e <= 0 for e in config.epsilons):
        raise RangeError(f'epsilons must be a nonempty list of positive numbers. Get: {config.epsilons}')
    if not _is_int(config.orbit_steps) or not (0 <= config.orbit_steps <= 10 ** 6):
        raise RangeError(f'orbit_steps must be an integer in [0, 10^6]. Get: {config.orbit_steps}')
    if not _is_int(config.seed) or config.seed < 0:
        raise RangeError(f'seed must be a nonnegative integer. Get: {config.seed}')
    if not _is_int(config.random_checks) or config.random_checks < 1:
        raise RangeError(f'random_checks must be a positive integer. Get: {config.random_checks}')
    if any(len(point) != 2 for point in config.resolvent_points):
        raise RangeError(f'resolvent_points must be [re, im] pairs. Get: {config.resolvent_points}')
    return config


def create_pipeline_config(path=None, **parameters):
    '''Validate the parameters and write them as ``pipeline_config.json``.

    Args:
        path (PathLikeObject(str, pathlib.Path, etc...), optional): Target file.
            Defaults to pipeline_config.json under the current working directory.
        **parameters: fields of PipelineConfig; missing fields take their defaults.

    Raises:
        RangeError: a parameter is out of range.
        TypeError: an unknown parameter name.

    Returns:
        PipelineConfig: the written configuration.
    '''
    config = validate_pipeline_config(PipelineConfig(**parameters))
    if not path:
        path = Path.cwd() / CONFIG_FILENAME

    with open(path, 'w') as fp:
        json.dump(config.to_dict(), fp, sort_keys=True, indent=2)
    return config


def load_pipeline_config(path=None):
    '''Load and validate a configuration file.

    Args:
        path (PathLikeObject(str, pathlib.Path, etc...), optional): The file.
            Defaults to pipeline_config.json under the current working directory.

    Returns:
        PipelineConfig: the configuration.
    '''
    if not path:
        path = Path.cwd() / CONFIG_FILENAME
    with open(path, 'r') as fp:
        parameters = json.load(fp)
    return validate_pipeline_config(PipelineConfig(**parameters))
