""" Custom Errors """


class NoetherError(Exception):
    pass


class ExprSyntaxError(NoetherError):

    def __init__(self, text, position, message='unexpected input'):
        super().__init__(
            '%s at offset %d in %r' % (message, position, text))
        self.text = text
        self.position = position
        self.message = message


class UnknownSymbolError(NoetherError):

    def __init__(self, name, position):
        super().__init__('Unknown symbol: %s (offset %d)' % (name, position))
        self.name = name
        self.position = position


class EvaluationError(NoetherError):

    def __init__(self, expr, point=None):
        super().__init__('Cannot evaluate %s at %s' % (expr, point))
        self.expr = expr
        self.point = point


class DegenerateLagrangianError(NoetherError):

    def __init__(self, lagrangian):
        super().__init__(
            'Degenerate Lagrangian, d2L/du1^2 vanishes: %s' % lagrangian)
        self.lagrangian = lagrangian


class AnsatzMismatchError(NoetherError):

    def __init__(self, detail):
        super().__init__('Lagrangian outside the supported class: %s' % detail)
        self.detail = detail


class RegimeResolutionError(NoetherError):

    def __init__(self, discriminant):
        super().__init__(
            'Cannot decide the sign of c^2 - 4km = %s' % discriminant)
        self.discriminant = discriminant


class NotASymmetryError(NoetherError):
    pass


class StepOverflowError(NoetherError):

    def __init__(self, steps, limit):
        super().__init__(
            'Integration needs %d steps, the limit is %d' % (steps, limit))
        self.steps = steps
        self.limit = limit


class NonAffineIntegralError(NoetherError):
    pass


class SingularSystemError(NoetherError):
    pass


class NotClosedError(NoetherError):

    def __init__(self, i, j):
        super().__init__(
            'Bracket [%d, %d] is not in the span of the basis' % (i, j))
        self.i = i
        self.j = j


class DependentBasisError(NoetherError):

    def __init__(self, rank, size):
        super().__init__(
            'Basis of %d fields has rank %d' % (size, rank))
        self.rank = rank
        self.size = size


class VerificationError(NoetherError):
    """A derived quantity failed its own invariant. """

    def __init__(self, item):
        super().__init__('Verification failed: %s' % item)
        self.item = item
