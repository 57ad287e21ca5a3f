"""Upper bounds on contact counts and the octahedral lower-bound construction.

Two proven upper bounds on the number of touching pairs among n unit balls
in R^3 are exposed:

    general packings:  6n - 0.926 * n^(2/3)
    lattice packings:  6n - c * n^(2/3),  c = 3 * (18*pi)^(1/3) / pi = 3.6651...

Both are strict for n > 2.  The lattice constant is evaluated from its closed
form rather than a truncated decimal, so checks against it are conservative.

The lower-bound side is the octahedral construction: iterated FCC octahedra
of size (2k^3 + k)/3 (1, 6, 19, 44, 85, 146, ...).  Partial constructions
give contact lower bounds for every intermediate n.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .contacts import Packing, contact_count
from .errors import DomainError
from .lattice import Coeffs, preset_lattice

AMORPHOUS_COEFF = 0.926
LATTICE_COEFF = 3.0 * (18.0 * math.pi) ** (1.0 / 3.0) / math.pi


def upper_bound_general(n: int) -> float:
    """Strict upper bound on touching pairs of any packing of n > 2 unit balls."""
    if n <= 2:
        raise DomainError(f"the general bound requires n > 2, got {n}")
    return 6.0 * n - AMORPHOUS_COEFF * n ** (2.0 / 3.0)


def upper_bound_lattice(n: int) -> float:
    """Strict upper bound on touching pairs of any lattice packing of n > 2 unit balls."""
    if n <= 2:
        raise DomainError(f"the lattice bound requires n > 2, got {n}")
    return 6.0 * n - LATTICE_COEFF * n ** (2.0 / 3.0)


def bond_bound(Z: int, crystalline: bool) -> float:
    """Upper bound on chemical bonds of a monatomic compound with Z atoms.

    Crystalline compounds correspond to lattice packings and get the tighter
    bound; amorphous ones only the general bound.
    """
    if Z <= 2:
        raise DomainError(f"bond bounds require Z > 2, got {Z}")
    return upper_bound_lattice(Z) if crystalline else upper_bound_general(Z)


def octahedral_sizes(k: int) -> int:
    """Sphere count of the k-th octahedral construction: (2k^3 + k) / 3."""
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    return (2 * k**3 + k) // 3


# ---------------------------------------------------------------------------
# Octahedral construction geometry
#
# Model coordinates: scale the FCC lattice so its points are the integer
# vectors with even coordinate sum and contacts are squared distance 2.  The
# k-th octahedron is the L1 ball of radius k-1 intersected with the parity
# class sum(p) == (k-1) mod 2; for odd parity the whole set is shifted by e3
# to land on the even-sum lattice before converting to basis coefficients.
# ---------------------------------------------------------------------------


def _octa_model(k: int) -> list[tuple[int, int, int]]:
    r = k - 1
    par = r % 2
    pts = []
    for p1 in range(-r, r + 1):
        for p2 in range(-r + abs(p1), r - abs(p1) + 1):
            rest = r - abs(p1) - abs(p2)
            for p3 in range(-rest, rest + 1):
                if (p1 + p2 + p3) % 2 == par:
                    pts.append((p1, p2, p3))
    return pts


@lru_cache(maxsize=None)
def _octa_ordered(k: int) -> tuple[tuple[int, int, int], ...]:
    """Deterministic fill order whose prefix at size(k-1) is a translate of
    the (k-1)-st construction, so partial contact counts never drop when the
    iteration number steps up."""
    if k == 1:
        return ((0, 0, 0),)
    prev = [(p1, p2, p3 + 1) for (p1, p2, p3) in _octa_ordered(k - 1)]
    rest = sorted(set(_octa_model(k)) - set(prev), key=lambda p: (p[2], p[0], p[1]))
    return tuple(prev + rest)


def _model_to_packing(model_pts, k: int, radius: float) -> Packing:
    """Map model points onto nonnegative FCC basis coefficients."""
    shift = 1 if (k - 1) % 2 else 0  # odd-parity sets move by e3 onto the lattice
    lam: list[Coeffs] = []
    for p1, p2, p3 in model_pts:
        q1, q2, q3 = p1, p2, p3 + shift
        lam.append(((-q1 + q2 + q3) // 2, (q1 - q2 + q3) // 2, (q1 + q2 - q3) // 2))
    mins = [min(c[i] for c in lam) for i in range(3)]
    pts = tuple(tuple(c[i] - mins[i] for i in range(3)) for c in lam)
    return Packing(lattice=preset_lattice("fcc", radius), points=pts)


def octahedral_construction(k: int, radius: float) -> Packing:
    """The k-th FCC octahedron as a packing of (2k^3 + k)/3 spheres."""
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    return _model_to_packing(_octa_ordered(k), k, radius)


def octahedral_lower_bound(n: int) -> int:
    """Contact count of the first n spheres of the octahedral construction.

    A valid (not necessarily tight) lower bound on the maximal contact number
    of n spheres packed on the FCC lattice; nondecreasing in n.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    k = 1
    while octahedral_sizes(k) < n:
        k += 1
    prefix = _octa_ordered(k)[:n]
    if n == 1:
        return 0
    return contact_count(_model_to_packing(prefix, k, 1.0))
