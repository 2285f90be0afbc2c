"""Exception hierarchy.

Everything derives from ``WGError``. ``PreconditionError`` subclasses map to
CLI exit code 2, ``ConstructionError`` subclasses to exit code 3.
"""


class WGError(Exception):
    pass


class PreconditionError(WGError):
    pass


class ConstructionError(WGError):
    pass


class CurveError(PreconditionError):
    pass


class RegularityError(CurveError):
    pass


class AliasingError(CurveError):
    pass


class MonotonicityError(CurveError):
    pass


class GenericityError(CurveError):
    pass


class NonZeroAreaError(PreconditionError):
    def __init__(self, area, t=None):
        self.area = float(area)
        self.t = t
        where = "" if t is None else f" at t={t:.6g}"
        super().__init__(f"signed area {self.area:.6g} is not zero{where}")


class InconsistentWordError(PreconditionError):
    pass


class NotCancellable(PreconditionError):
    pass


class IncompatibleLabels(PreconditionError):
    pass


class WordMismatch(PreconditionError):
    pass


class MismatchedEndpoints(PreconditionError):
    pass


class RotationMismatch(PreconditionError):
    def __init__(self, n0, n1):
        self.n0, self.n1 = n0, n1
        super().__init__(f"rotation numbers differ: rot 1st = {n0}, rot 2nd = {n1}")


class WindowObstruction(ConstructionError):
    pass


class CertificationFailure(ConstructionError):
    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


class NormalizationFailure(ConstructionError):
    pass


class InterpolationFailure(ConstructionError):
    def __init__(self, t, s, speed):
        self.t, self.s, self.speed = float(t), float(s), float(speed)
        super().__init__(
            f"interpolation not regular: worst relative speed {self.speed:.3g} "
            f"at t={self.t:.6g}, s={self.s:.6g}"
        )


class PlannerFailure(ConstructionError):
    def __init__(self, stage, cause):
        self.stage = stage
        self.cause = cause
        super().__init__(f"planner failed at stage '{stage}': {cause}")


class ParseError(PreconditionError):
    def __init__(self, message, line=None, column=None):
        self.line, self.column = line, column
        loc = "" if line is None else f" (line {line}, column {column})"
        super().__init__(message + loc)


class VersionError(PreconditionError):
    pass


class UnknownName(PreconditionError):
    pass
