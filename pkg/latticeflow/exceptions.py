""" Contains specific Exceptions """


class LatticeFlowException(Exception):
    """ Base exception class """

class ValidationError(LatticeFlowException, ValueError):
    """ Throw this when an input breaks the invariants of a lattice, weight or network object """

class ParseError(ValidationError):
    """ Throw this when a generating vector, checkpoint, config or dataset file cannot be parsed """
    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ''
        if path is not None:
            where = f'{path}'
            if line is not None:
                where += f':{line}'
            where += ': '
        super().__init__(where + message)

class ConfigError(ParseError):
    """ Unknown or malformed configuration key """

class OverflowGuardError(LatticeFlowException, OverflowError):
    """ A partial product of an order recursion or a factorial left the float64 range """
    def __init__(self, order, message=None):
        self.order = order
        if message is None:
            message = f'Partial product overflow at order {order}'
        super().__init__(message)

class InadmissibleWeightsError(LatticeFlowException, ArithmeticError):
    """ The series behind an appendix constant diverges for the chosen λ """
    def __init__(self, lam, message=None):
        self.lam = lam
        super().__init__(message or f'weights inadmissible for this λ = {lam}')

class SingularKernelError(LatticeFlowException, ArithmeticError):
    """ A circulant kernel matrix has a vanishing eigenvalue """

class TrainingAborted(LatticeFlowException, FloatingPointError):
    """ Throw this when the training objective becomes NaN or infinite """
    def __init__(self, epoch, value=None):
        self.epoch = epoch
        self.value = value
        super().__init__(f'Non-finite objective {value} at epoch {epoch}')
