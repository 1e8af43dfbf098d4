from .report_utils import *
from .pipeline import *

'''Philosophy

One stage, one report

PipelineConfig
  -> (Pipeline.run) stages in a fixed order, each written as <stage>.json
  -> summary.json with the exit code

A check that does not pass stops the run

'''
