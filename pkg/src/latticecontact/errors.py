"""Exception types shared across the package."""


class LatticeContactError(Exception):
    """Base class for every error raised by this package."""


class DegenerateBasis(LatticeContactError):
    """Basis vectors are linearly dependent; the Gram matrix is not positive definite."""


class OverlappingLattice(LatticeContactError):
    """Shortest nonzero lattice vector is shorter than one sphere diameter."""


class UnknownPreset(LatticeContactError):
    """Lattice preset name not recognized."""


class BoxTooLarge(LatticeContactError):
    """Candidate coefficient box exceeds the configured point cap."""


class OverlapDetected(LatticeContactError):
    """Two spheres sit closer than one diameter: the input is not a packing."""

    def __init__(self, i: int, j: int, message: str | None = None):
        self.i = i
        self.j = j
        super().__init__(message or f"spheres {i} and {j} overlap")


class InstanceTooLarge(LatticeContactError):
    """Search space too large for the requested algorithm."""

    def __init__(self, subset_count: int, message: str | None = None):
        self.subset_count = subset_count
        super().__init__(
            message
            or f"{subset_count} candidate subsets exceed the exhaustive cap; "
            "use the branch-and-bound solver"
        )


class DomainError(LatticeContactError):
    """Argument outside the domain of the requested operation."""


class NotApplicable(LatticeContactError):
    """Operation does not apply to the given input."""


class ParseError(LatticeContactError):
    """Malformed input file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BoundViolation(LatticeContactError):
    """A proven upper bound was violated, which indicates an internal bug."""
