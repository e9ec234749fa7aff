"""Exception types. Each carries a short machine-readable code used by the CLI."""


class WickgitError(Exception):
    code = "error"

    def __init__(self, message: str, **detail):
        super().__init__(message)
        self.message = message
        self.detail = detail


class ShapeError(WickgitError, ValueError):
    code = "shape"


class NotSkewError(WickgitError, ValueError):
    code = "not_skew"


class NotSymmetricError(WickgitError, ValueError):
    code = "not_symmetric"


class DegenerateFormError(WickgitError, ValueError):
    code = "degenerate_form"


class AmbientMismatchError(WickgitError, ValueError):
    code = "ambient_mismatch"


class NonIntegerWeightError(WickgitError, ValueError):
    code = "non_integer_weight"


class PositiveWeightError(WickgitError, ValueError):
    code = "positive_weight"


class NotMinimalError(WickgitError, ValueError):
    code = "not_minimal"


class NonClosedOrbitError(WickgitError, ValueError):
    code = "non_closed_orbit"


class UndecidedError(WickgitError):
    code = "undecided"


class SchemaError(WickgitError, ValueError):
    code = "schema"


class PolyParseError(WickgitError, ValueError):
    code = "poly_parse"


class UnknownVariableError(WickgitError, KeyError):
    code = "unknown_variable"

    def __str__(self):
        return self.message


class FrameTagError(WickgitError, ValueError):
    code = "frame_tag"


class NotSU2Error(WickgitError, ValueError):
    code = "not_su2"


class CoordinateDegeneracyError(WickgitError, ValueError):
    code = "coordinate_degeneracy"


class JacobiError(WickgitError, ValueError):
    code = "jacobi"
