from typing import TYPE_CHECKING, Any, Optional, Sequence

if TYPE_CHECKING:
    from torus_reduction.conespline import ConeSplineTerm


class TorusReductionError(Exception):
    """
    A general torus-reduction error.
    """


class DimensionError(TorusReductionError):
    """
    An error raised when vectors, forms or polynomials of different rank are combined.
    """

    def __init__(self, expected: int, actual: int, what: str = "rank"):
        self.expected = expected
        self.actual = actual
        super().__init__(f"Mismatched {what}: expected {expected}, got {actual}.")


class SingularBasisError(TorusReductionError):
    """
    An error raised when a set of linear forms that must be a basis is dependent.
    """

    def __init__(self, forms: Sequence[Sequence[int]]):
        self.forms = [tuple(f) for f in forms]
        super().__init__(f"Forms {self.forms} are linearly dependent.")


class InvalidSpaceError(TorusReductionError):
    """
    An error raised when fixed-point data fails validation.
    """


class InvalidClassError(TorusReductionError):
    """
    An error raised when an equivariant class does not fit its space.
    """


class MissingRestrictionError(InvalidClassError):
    """
    An error raised when a class has no restriction at a fixed point.
    """

    def __init__(self, class_name: str, point_id: str):
        self.point_id = point_id
        super().__init__(f"Class '{class_name}' has no restriction at fixed point '{point_id}'.")


class GenericityError(TorusReductionError):
    """
    An error raised when a polarizing vector pairs to zero with some weight.
    """

    def __init__(self, xi: Sequence[int], weight: Sequence[int], point_id: Optional[str] = None):
        self.xi = tuple(xi)
        self.weight = tuple(weight)
        self.point_id = point_id
        location = f" at fixed point '{point_id}'" if point_id is not None else ""
        super().__init__(f"xi={self.xi} is not generic: weight {self.weight}{location} pairs to 0.")


class NotPolarizableError(TorusReductionError):
    """
    An error raised when the weights of a linear space admit no positive polarization,
    i.e. the moment map is not proper.
    """


class NonRegularValueError(TorusReductionError):
    """
    An error raised when a point of reduction lies on a wall of some cone-spline atom.
    """

    def __init__(self, t: Sequence[Any], term: Optional["ConeSplineTerm"] = None):
        self.t = tuple(t)
        self.term = term
        message = f"t={tuple(str(x) for x in self.t)} is not a regular value"
        if term is not None:
            basis = [tuple(f) for f in term.basis]
            apex = tuple(str(x) for x in term.apex)
            message = f"{message}: on a wall of the cone at apex {apex} with basis {basis}"

        super().__init__(f"{message}.")


class ChamberViolationError(TorusReductionError):
    """
    An error raised when an interpolated chamber polynomial disagrees with an exact
    evaluation inside the same chamber.
    """


class DecompositionError(TorusReductionError):
    """
    An error raised when a partial-fraction rewrite fails to decrease its termination
    measure.
    """


class PropertyCheckError(TorusReductionError):
    """
    An error raised when a structural property check of the engine fails.
    """


class CalibrationError(PropertyCheckError):
    """
    An error raised when the volume derivative disagrees with the calibrated pairing.
    """


class OracleError(TorusReductionError):
    """
    An error raised by the brute-force oracles.
    """


class InputDocumentError(TorusReductionError):
    """
    An error raised when an input document cannot be parsed or refers to unknown names.
    """
