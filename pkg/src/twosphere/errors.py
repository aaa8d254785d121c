"""Exception hierarchy shared by all modules."""


class TwoSphereError(Exception):
    pass


class DegenerateTriangle(TwoSphereError, ValueError):
    pass


class NotEdgeConnected(TwoSphereError, ValueError):
    pass


class IdentificationCollapse(TwoSphereError):
    """A vertex quotient produced a degenerate triangle or merged two triangles."""


class NotPuncturedSphere(TwoSphereError, ValueError):
    pass


class InvalidBudget(TwoSphereError, ValueError):
    pass


class OracleTooLarge(TwoSphereError):
    pass


class GuardExceeded(TwoSphereError):
    pass


class SelectionOutOfSet(TwoSphereError, ValueError):
    pass


class FormatError(TwoSphereError):
    def __init__(self, message, line=None, path=None):
        self.message = message
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
