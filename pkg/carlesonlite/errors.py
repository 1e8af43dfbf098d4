'''
Exceptions raised by carlesonlite.

Every class derives from the builtin exception a caller would expect
(ValueError for bad input, RuntimeError for numerical failures), so plain
``except ValueError`` keeps working.
'''

__all__ = ['RangeError', 'ResolutionError', 'DomainError', 'InsufficientDataError',
           'ConsistencyError', 'IllConditionedError', 'MetricCorruptionError',
           'PoleError', 'ResolventSingularError', 'CertificateRefusedError',
           'DegenerateComplementError', 'UnsupportedInnerFunctionError',
           'RootTrackingError', 'StageFailure']


class RangeError(ValueError):
    '''A parameter is outside its declared range.'''


class ResolutionError(ValueError):
    '''The boundary grid is too coarse for the set.

    Args:
        message (str): the error message.
        required_grid_size (int): the smallest admissible grid size.
    '''
    def __init__(self, message, required_grid_size):
        super().__init__(message)
        self.required_grid_size = required_grid_size


class DomainError(ValueError):
    '''A point lies outside the domain of an evaluation.'''


class InsufficientDataError(ValueError):
    '''Not enough samples for a diagnostic fit.'''


class ConsistencyError(RuntimeError):
    '''A constructed object violates an invariant of its generator.'''


class IllConditionedError(RuntimeError):
    '''The Gram matrix is numerically singular.

    Args:
        message (str): the error message.
        closest_pair (tuple): indices (j, k) of the chordally closest nodes.
    '''
    def __init__(self, message, closest_pair=None):
        super().__init__(message)
        self.closest_pair = closest_pair


class MetricCorruptionError(RuntimeError):
    '''A Gram quadratic form came out negative.'''


class PoleError(ZeroDivisionError):
    '''Evaluation requested at a pole of a kernel sum.'''


class ResolventSingularError(RuntimeError):
    '''The spectral parameter is too close to an eigenvalue.'''


class CertificateRefusedError(RuntimeError):
    '''The boundedness certificate is not guaranteed for this exponent.'''


class DegenerateComplementError(RuntimeError):
    '''The orthogonal complement of S*H_1 is numerically degenerate.'''


class UnsupportedInnerFunctionError(ValueError):
    '''The inner function has factors the operation cannot handle.'''


class RootTrackingError(RuntimeError):
    '''Boundary phase tracking found the wrong number of solutions.'''


class StageFailure(RuntimeError):
    '''A pipeline stage failed.

    Args:
        stage (str): name of the failing stage.
        message (str): the error message.
    '''
    def __init__(self, stage, message):
        super().__init__(f'Stage {stage} failed: {message}')
        self.stage = stage
