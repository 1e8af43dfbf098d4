from .pipeline_config import *
