"""Error taxonomy shared by the computational modules and the CLI.

Domain errors (bad or unsupported input) map to exit status 1, property
violations (a verified invariant failed) to exit status 2.
"""

from __future__ import annotations

from typing import Any, Dict, Optional


class TameforgeError(Exception):
    """Base class carrying a machine-readable code and details."""

    code = "tameforge_error"
    exit_status = 1

    def __init__(self, message: str = "", details: Optional[Dict[str, Any]] = None) -> None:
        message = message or (self.__doc__ or self.code).strip()
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = dict(details or {})

    def to_dict(self) -> Dict[str, Any]:
        return {
            "error": self.code,
            "message": self.message,
            "details": self.details,
        }


class DomainError(TameforgeError, ValueError):
    """Invalid or unsupported input."""

    code = "domain_error"


class PropertyViolation(TameforgeError, AssertionError):
    """A verified invariant failed on valid input."""

    code = "property_violation"
    exit_status = 2


class TheoremViolation(PropertyViolation):
    """Both sides of a verified identity disagree."""

    code = "theorem_violation"


class NotARootSystem(DomainError):
    """Root datum axioms fail."""

    code = "not_a_root_system"


class IndexOutOfRange(DomainError):
    """Root index outside the datum."""

    code = "index_out_of_range"


class FieldCharacteristicZero(DomainError):
    """A finite field is required."""

    code = "field_characteristic_zero"


class EvenPrime(DomainError):
    """The residue characteristic must be odd."""

    code = "even_prime"


class ClosureBoundExceeded(DomainError):
    """Group closure exceeded its bound."""

    code = "closure_bound_exceeded"


class LeviNotGaloisStable(DomainError):
    """Levi subsystem is not Galois-stable."""

    code = "levi_not_galois_stable"


class MissingResidueData(DomainError):
    """Genericity was requested without residue values."""

    code = "missing_residue_data"


class InconsistentPrescription(DomainError):
    """Residue prescriptions admit no solution."""

    code = "inconsistent_prescription"


class ZeroValue(DomainError):
    """A prescribed residue value is zero."""

    code = "zero_value"


class InconsistentFunctional(DomainError):
    """Functional is nonzero on a coroot of the smaller Levi."""

    code = "inconsistent_functional"


class NotASubgroup(DomainError):
    """Subset is not closed under the group law."""

    code = "not_a_subgroup"


class NotARepresentation(DomainError):
    """Images are not multiplicative."""

    code = "not_a_representation"


class NotAPolarization(DomainError):
    """Subspaces are not complementary Lagrangians."""

    code = "not_a_polarization"


class NotSymplectic(DomainError):
    """Matrix does not preserve the symplectic form."""

    code = "not_symplectic"


class CocycleNotTrivializable(DomainError):
    """No coboundary trivializes the Weil cocycle."""

    code = "cocycle_not_trivializable"


class GroupMismatch(DomainError):
    """Class functions live on different groups."""

    code = "group_mismatch"


class OddDimension(DomainError):
    """Symplectic dimensions must be even."""

    code = "odd_dimension"


class TooLarge(DomainError):
    """Input exceeds a configured bound."""

    code = "too_large"


class NotGeneralPosition(DomainError):
    """Character equals its Frobenius twist."""

    code = "not_general_position"


class NotAnInvolution(DomainError):
    """Automorphism is not of order two."""

    code = "not_an_involution"


class ThetaDoesNotPreserveL(DomainError):
    """Involution does not preserve the torus."""

    code = "theta_does_not_preserve_l"


class SupportNotInK(DomainError):
    """Function is supported outside the subgroup."""

    code = "support_not_in_k"


class InvalidCharacterData(DomainError):
    """Depth data fails validation."""

    code = "invalid_character_data"


class InvalidInput(DomainError):
    """Malformed input file or parameter."""

    code = "invalid_input"


class _LevelError(DomainError):
    def __init__(self, level: Optional[int], message: str = "", details: Optional[Dict[str, Any]] = None) -> None:
        super().__init__(message, {"level": level, **(details or {})})
        self.level = level


class NotLeviClosed(_LevelError):
    """A tower level is not a Levi subsystem."""

    code = "not_levi_closed"


class NotGaloisStable(_LevelError):
    """A tower level is not stable under the Galois action."""

    code = "not_galois_stable"
