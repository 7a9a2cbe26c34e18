"""Exception hierarchy shared by all npconfig modules."""


class NPConfigError(Exception):
    """Base class for every numerical or input failure raised by npconfig."""


class NotHermitian(NPConfigError, ValueError):
    pass


class NoConvergence(NPConfigError, ArithmeticError):
    pass


class NonFinite(NPConfigError, ArithmeticError):
    pass


class DegenerateDomain(NPConfigError, ValueError):
    pass


class NonConvex(NPConfigError, ValueError):
    pass


class DegenerateInput(NPConfigError, ValueError):
    pass


class CoincidentPoints(NPConfigError, ValueError):
    pass


class OffBoundary(NPConfigError, ValueError):
    pass


class SampleMismatch(NPConfigError, ValueError):
    pass


class NotInterior(NPConfigError, ValueError):
    pass


class NonPositiveAxis(NPConfigError, ValueError):
    pass


class DimensionTooLarge(NPConfigError, ValueError):
    pass


class EmptyInterior(NPConfigError, ValueError):
    """Numerical range is a segment or a point (normal-like operator)."""


class ZeroPolynomial(NPConfigError, ValueError):
    pass


class UnknownSuite(NPConfigError, ValueError):
    pass
