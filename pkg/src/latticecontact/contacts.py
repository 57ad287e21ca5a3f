"""Packings, contact graphs, and precomputed adjacency over a candidate box."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, LatticeContactError, OverlapDetected
from .lattice import CONTACT_TOL, Coeffs, Lattice, _coeff_grid

# Coefficient range scanned for contact-length lattice vectors; the kissing
# vectors of any valid lattice whose basis passes the skew check live here.
KISSING_COEFF_BOUND = 3


def contact_band(radius: float, tol: float = CONTACT_TOL) -> tuple[float, float]:
    """Inclusive band of squared distances counted as a contact."""
    d2 = 4.0 * radius * radius
    return d2 * (1.0 - tol), d2 * (1.0 + tol)


def _pairwise_sq(lattice: Lattice, coeffs: np.ndarray) -> np.ndarray:
    """Matrix of squared distances between rows of integer coefficients."""
    c = np.asarray(coeffs, dtype=float)
    x = c @ lattice.gram @ c.T
    diag = np.diag(x)
    sq = diag[:, None] + diag[None, :] - 2.0 * x
    return np.maximum(sq, 0.0)


@dataclass(frozen=True, eq=False)
class Packing:
    """A finite set of distinct lattice points carrying the lattice's spheres.

    Points are normalized to a lexicographically sorted tuple on construction;
    duplicate points and overlapping spheres are rejected.
    """

    lattice: Lattice
    points: tuple[Coeffs, ...]

    def __post_init__(self):
        pts = tuple(tuple(int(c) for c in p) for p in self.points)
        for p in pts:
            if len(p) != self.lattice.d:
                raise DomainError(f"point {p} does not have {self.lattice.d} coefficients")
        if len(set(pts)) != len(pts):
            raise DomainError("packing points must be distinct")
        object.__setattr__(self, "points", tuple(sorted(pts)))
        if len(pts) > 1:
            lo, _ = contact_band(self.lattice.radius)
            sq = _pairwise_sq(self.lattice, np.array(self.points, dtype=np.int64))
            iu = np.triu_indices(len(self.points), k=1)
            bad = np.nonzero(sq[iu] < lo)[0]
            if bad.size:
                b = int(bad[0])
                raise OverlapDetected(int(iu[0][b]), int(iu[1][b]))

    @property
    def n(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class ContactGraph:
    """Vertices are sphere centers in sorted point order; edges are touching pairs."""

    n: int
    edges: tuple[tuple[int, int], ...]


def build_contact_graph(packing: Packing, tol: float = CONTACT_TOL) -> ContactGraph:
    """Contact graph of a packing: edge (i, j) iff spheres i and j touch.

    Vertex indices follow the packing's sorted point order.  Raises
    OverlapDetected if any pair sits below the contact band.
    """
    n = packing.n
    if n < 2:
        return ContactGraph(n=n, edges=())
    lo, hi = contact_band(packing.lattice.radius, tol)
    sq = _pairwise_sq(packing.lattice, np.array(packing.points, dtype=np.int64))
    iu, ju = np.triu_indices(n, k=1)
    vals = sq[iu, ju]
    bad = np.nonzero(vals < lo)[0]
    if bad.size:
        b = int(bad[0])
        raise OverlapDetected(int(iu[b]), int(ju[b]))
    touch = (vals >= lo) & (vals <= hi)
    edges = tuple(zip(iu[touch].tolist(), ju[touch].tolist()))
    return ContactGraph(n=n, edges=edges)


def contact_count(packing: Packing, tol: float = CONTACT_TOL) -> int:
    """Number of touching pairs in the packing."""
    return len(build_contact_graph(packing, tol).edges)


def kissing_vectors(
    lattice: Lattice,
    coeff_bound: int = KISSING_COEFF_BOUND,
    tol: float = CONTACT_TOL,
) -> list[Coeffs]:
    """All nonzero coefficient vectors of contact length, sorted lexicographically.

    The result is symmetric: v appears iff -v appears.  Its size is the
    kissing number of the lattice at the packing radius, and the maximal
    vertex degree of any contact graph over this lattice.
    """
    if coeff_bound < 1:
        raise DomainError("coeff_bound must be at least 1")
    grid = _coeff_grid(lattice.d, coeff_bound)
    fgrid = grid.astype(float)
    sq = np.einsum("ij,jk,ik->i", fgrid, lattice.gram, fgrid)
    lo, hi = contact_band(lattice.radius, tol)
    hits = grid[(sq >= lo) & (sq <= hi)]
    return sorted(tuple(int(c) for c in v) for v in hits)


@dataclass(frozen=True)
class AdjacencyStructure:
    """Per-point neighbor indices for a fixed candidate box (contact pairs only)."""

    neighbors: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.neighbors)

    @property
    def max_degree(self) -> int:
        return max((len(nb) for nb in self.neighbors), default=0)

    def bit_rows(self) -> np.ndarray:
        """Adjacency as packed uint64 bitmask rows, shape (n, ceil(n/64))."""
        n = self.n
        words = max(1, (n + 63) // 64)
        rows = np.zeros((n, words), dtype=np.uint64)
        for i, nbs in enumerate(self.neighbors):
            for j in nbs:
                rows[i, j >> 6] |= np.uint64(1) << np.uint64(j & 63)
        return rows


def _adjacency_all_pairs(box: list[Coeffs], lattice: Lattice, tol: float) -> list[list[int]]:
    n = len(box)
    nbs: list[list[int]] = [[] for _ in range(n)]
    if n < 2:
        return nbs
    lo, hi = contact_band(lattice.radius, tol)
    sq = _pairwise_sq(lattice, np.array(box, dtype=np.int64))
    iu, ju = np.triu_indices(n, k=1)
    touch = (sq[iu, ju] >= lo) & (sq[iu, ju] <= hi)
    for i, j in zip(iu[touch].tolist(), ju[touch].tolist()):
        nbs[i].append(j)
        nbs[j].append(i)
    return nbs


def adjacency_structure(
    box: list[Coeffs],
    lattice: Lattice,
    tol: float = CONTACT_TOL,
    *,
    verify: bool = False,
) -> AdjacencyStructure:
    """Contact adjacency between box points, indexed by position in the box.

    The box must be sorted and deduplicated.  Built by translating each point
    along the precomputed kissing vectors (an O(n*K) hash lookup); falls back
    to the O(n^2) all-pairs test when the lattice basis was flagged as skewed,
    since then the bounded kissing enumeration may be incomplete.  With
    ``verify=True`` the fast result is checked against the all-pairs
    definition.
    """
    index = {p: i for i, p in enumerate(box)}
    if len(index) != len(box):
        raise DomainError("box contains duplicate points")
    if sorted(box) != list(box):
        raise DomainError("box must be sorted lexicographically")

    if lattice.skewed_basis:
        nbs = _adjacency_all_pairs(box, lattice, tol)
    else:
        kiss = kissing_vectors(lattice, tol=tol)
        nbs = [[] for _ in box]
        for i, p in enumerate(box):
            for v in kiss:
                q = tuple(a + b for a, b in zip(p, v))
                j = index.get(q)
                if j is not None:
                    nbs[i].append(j)
        if verify:
            slow = _adjacency_all_pairs(box, lattice, tol)
            if [sorted(x) for x in nbs] != [sorted(x) for x in slow]:
                raise LatticeContactError(
                    "kissing-vector adjacency disagrees with the all-pairs definition"
                )
    return AdjacencyStructure(neighbors=tuple(tuple(sorted(x)) for x in nbs))
