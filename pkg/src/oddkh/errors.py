"""Exception types raised across the package."""


class OddkhError(Exception):
    """Base class for all package errors."""

    code = "error"

    def payload(self) -> dict:
        return {"error": self.code, "message": str(self)}


class MalformedToken(OddkhError):
    """A PD-code token could not be parsed."""

    code = "malformed_token"


class ArcCountViolation(OddkhError):
    """An arc label does not appear exactly twice."""

    code = "arc_count_violation"


class OrientationInconsistent(OddkhError):
    """No globally consistent strand orientation exists."""

    code = "orientation_inconsistent"


class NonPlanarDiagram(OddkhError):
    """The rotation system of the code does not embed in the plane."""

    code = "non_planar"


class NotAnEdge(OddkhError):
    code = "not_an_edge"


class NotAFace(OddkhError):
    code = "not_a_face"


class MismatchedCircleSets(OddkhError):
    code = "mismatched_circle_sets"


class InvalidRelabeling(OddkhError):
    code = "invalid_relabeling"


class InvalidBifurcation(OddkhError):
    code = "invalid_bifurcation"


class DuplicateCircle(OddkhError):
    code = "duplicate_circle"


class CannotRemovePointed(OddkhError):
    """Contraction may not remove the basepoint circle; relabel first."""

    code = "cannot_remove_pointed"


class NotABijection(OddkhError):
    code = "not_a_bijection"


class Unsolvable(OddkhError):
    """The edge sign constraint system has no solution (internal bug or bad input)."""

    code = "unsolvable"


class DifferentialNotSquareZero(OddkhError):
    code = "differential_not_square_zero"


class FiltrationViolated(OddkhError):
    code = "filtration_violated"


class NotAntiChain(OddkhError):
    code = "not_anti_chain"


class ShapeMismatch(OddkhError):
    code = "shape_mismatch"
