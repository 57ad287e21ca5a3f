"""Lattices as free Z-modules of rank d carrying a common sphere radius.

A lattice point is a plain tuple of integer coefficients over the basis;
tuples compare lexicographically, which is the canonical order used for
witnesses and deterministic output throughout the package.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BoxTooLarge,
    DegenerateBasis,
    DomainError,
    OverlappingLattice,
    UnknownPreset,
)

# Relative half-width of the contact band around the squared diameter (2r)^2.
CONTACT_TOL = 1e-9

# Coefficient range scanned when hunting for the shortest nonzero lattice
# vector.  Enough for every shipped preset and for any basis that is not
# badly skewed; see ``make_lattice``.
MIN_VECTOR_COEFF_BOUND = 3

# Default cap on candidate-box size, past which exact search is hopeless.
BOX_POINT_CAP = 20_000

Coeffs = tuple[int, ...]

PRESET_NAMES = ("sc", "fcc", "bcc")


@dataclass(frozen=True, eq=False)
class Lattice:
    """A rank-d lattice with basis rows ``basis[i]`` and sphere radius ``radius``.

    ``gram`` caches the pairwise inner products of the basis vectors, so the
    squared distance between lattice points is the quadratic form of their
    integer coefficient difference.  ``min_vector`` is the shortest nonzero
    vector length found by bounded enumeration; ``skewed_basis`` is set when
    that minimum was attained on the enumeration boundary, meaning the true
    minimum may lie outside the scanned range.
    """

    d: int
    basis: np.ndarray
    gram: np.ndarray
    radius: float
    name: str = "custom"
    min_vector: float = 0.0
    skewed_basis: bool = False

    def __post_init__(self):
        self.basis.setflags(write=False)
        self.gram.setflags(write=False)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Lattice(name={self.name!r}, d={self.d}, radius={self.radius})"


def _coeff_grid(d: int, bound: int) -> np.ndarray:
    """All integer coefficient vectors with |c_i| <= bound, the zero row removed."""
    rng = range(-bound, bound + 1)
    grid = np.array(list(itertools.product(rng, repeat=d)), dtype=np.int64)
    nonzero = np.any(grid != 0, axis=1)
    return grid[nonzero]


def _min_vector_sq(gram: np.ndarray, d: int, coeff_bound: int) -> tuple[float, bool]:
    """Minimum of the Gram quadratic form over the bounded nonzero grid.

    Returns the minimal squared length and whether some minimizer touches the
    enumeration boundary (the skew heuristic).
    """
    grid = _coeff_grid(d, coeff_bound)
    sq = np.einsum("ij,jk,ik->i", grid, gram, grid)
    best = float(sq.min())
    at_min = grid[np.isclose(sq, best, rtol=1e-9, atol=0.0)]
    on_boundary = bool(np.any(np.abs(at_min) == coeff_bound))
    return best, on_boundary


def make_lattice(
    basis,
    radius: float,
    *,
    name: str = "custom",
    coeff_bound: int = MIN_VECTOR_COEFF_BOUND,
) -> Lattice:
    """Build a lattice from basis row vectors and validate it as a packing lattice.

    Raises DegenerateBasis when the rows are linearly dependent and
    OverlappingLattice when some nonzero lattice vector (within the scanned
    coefficient range) is shorter than the sphere diameter.
    """
    if radius <= 0:
        raise DomainError(f"radius must be positive, got {radius}")
    b = np.array(basis, dtype=float)
    if b.ndim != 2 or b.shape[0] != b.shape[1]:
        raise DomainError(f"basis must be d vectors of d components, got shape {b.shape}")
    d = b.shape[0]
    if d < 2:
        raise DomainError(f"dimension must be at least 2, got {d}")

    gram = b @ b.T
    gram = 0.5 * (gram + gram.T)

    # Positive definiteness: Cholesky plus a relative determinant floor so a
    # numerically tiny but nonzero determinant is still rejected.
    det = np.linalg.det(gram)
    if det <= 1e-12 * float(np.prod(np.diag(gram))):
        raise DegenerateBasis("basis vectors are linearly dependent")
    try:
        np.linalg.cholesky(gram)
    except np.linalg.LinAlgError as exc:
        raise DegenerateBasis("Gram matrix is not positive definite") from exc

    min_sq, on_boundary = _min_vector_sq(gram, d, coeff_bound)
    diam_sq = 4.0 * radius * radius
    if min_sq < diam_sq * (1.0 - CONTACT_TOL):
        raise OverlappingLattice(
            f"shortest lattice vector {math.sqrt(min_sq):.6g} is below the "
            f"sphere diameter {2.0 * radius:.6g}"
        )
    return Lattice(
        d=d,
        basis=b,
        gram=gram,
        radius=float(radius),
        name=name,
        min_vector=math.sqrt(min_sq),
        skewed_basis=on_boundary,
    )


def preset_lattice(name: str, radius: float) -> Lattice:
    """Standard cubic lattices scaled so the nearest-neighbor distance is 2*radius.

    sc  : simple cubic, basis 2r*e_i
    fcc : face-centered cubic, basis r*sqrt(2)*{(0,1,1),(1,0,1),(1,1,0)}
    bcc : body-centered cubic, conventional edge a = 4r/sqrt(3), primitive
          basis a*e_1, a*e_2, (a/2)*(1,1,1)
    """
    if radius <= 0:
        raise DomainError(f"radius must be positive, got {radius}")
    r = float(radius)
    if name == "sc":
        basis = 2.0 * r * np.eye(3)
    elif name == "fcc":
        s = r * math.sqrt(2.0)
        basis = s * np.array([[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]])
    elif name == "bcc":
        a = 4.0 * r / math.sqrt(3.0)
        basis = np.array([[a, 0.0, 0.0], [0.0, a, 0.0], [a / 2.0, a / 2.0, a / 2.0]])
    else:
        raise UnknownPreset(f"unknown lattice preset {name!r} (expected one of {PRESET_NAMES})")
    return make_lattice(basis, r, name=name)


def embed(lattice: Lattice, p) -> np.ndarray:
    """Cartesian position of the lattice point p: the sum of p_i * basis[i]."""
    c = np.asarray(p, dtype=float)
    if c.shape != (lattice.d,):
        raise DomainError(f"point has {c.shape} coefficients, lattice has d={lattice.d}")
    return c @ lattice.basis


def squared_distance(lattice: Lattice, p, q) -> float:
    """Squared Cartesian distance between lattice points p and q.

    Evaluated as the Gram quadratic form on the integer coefficient
    difference, so no Cartesian coordinates are formed.
    """
    dp = np.asarray(p, dtype=float) - np.asarray(q, dtype=float)
    if dp.shape != (lattice.d,):
        raise DomainError(f"points must have {lattice.d} coefficients")
    return float(dp @ lattice.gram @ dp)


def min_vector_length(lattice: Lattice, coeff_bound: int) -> float:
    """Length of the shortest nonzero lattice vector with |coeff_i| <= coeff_bound."""
    if coeff_bound < 1:
        raise DomainError("coeff_bound must be at least 1")
    min_sq, _ = _min_vector_sq(lattice.gram, lattice.d, coeff_bound)
    return math.sqrt(min_sq)


def box_side(n: int, d: int) -> int:
    """Largest coefficient in the candidate box for n spheres: ceil(n/d)."""
    return -(-n // d)


def candidate_box(
    lattice: Lattice,
    n: int,
    *,
    k: int | None = None,
    max_points: int = BOX_POINT_CAP,
) -> list[Coeffs]:
    """All lattice points with coefficients in {0, ..., k}, sorted lexicographically.

    k defaults to ceil(n/d), the smallest box guaranteed to contain an optimal
    n-sphere packing.  Raises BoxTooLarge when (k+1)^d exceeds max_points.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    side = box_side(n, lattice.d) if k is None else k
    if side < 0:
        raise DomainError(f"box bound must be nonnegative, got {side}")
    count = (side + 1) ** lattice.d
    if count > max_points:
        raise BoxTooLarge(
            f"candidate box has {count} points, above the cap of {max_points}; "
            "the instance is beyond exact-search scale"
        )
    return [tuple(c) for c in itertools.product(range(side + 1), repeat=lattice.d)]
