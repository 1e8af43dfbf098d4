__version__ = '0.1.0'

from .errors import *
from .carleson_sets import *
from .outer_builder import *
from .hstar_space import *
from .truncated_operator import *
from .grivaux_checker import *
from .clark import *
from .pipeline_config.pipeline_config import create_pipeline_config, load_pipeline_config, PipelineConfig
from .pipeline import *
