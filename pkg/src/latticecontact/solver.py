"""Exact maximal-contact-number search over the candidate coefficient box.

Two algorithms share one contract: enumerate n-point subsets of the box in
lexicographic order and maximize the number of touching pairs.

* ``solve_exhaustive`` walks every n-subset with incremental edge counts.
  It is the ground-truth oracle and is feasible up to a few hundred million
  subsets.
* ``solve_bnb`` is a depth-first branch-and-bound over the same order.  A
  node holding t points with m picks left is cut when no completion can
  strictly beat the incumbent, using three admissible caps: the trivial
  m*K cap (K = kissing number, the one-sided degree limit), a degree-split
  cap (sum over the m best future candidates of edges into the chosen set
  plus half their future degree), and the proven upper bound on the total.

Both return the same contact number and the same canonical witness (the
lexicographically smallest maximizer): the DFS visits subsets in lex order
and the incumbent only ever moves on strict improvement, so the first
maximizer found is the lex-smallest, and admissible pruning never removes
the path leading to it.

The inner loops are numba-compiled; adjacency is carried as packed uint64
bit rows so edge counts are AND + popcount.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from numba import njit

from .bounds import octahedral_lower_bound, upper_bound_lattice
from .contacts import Packing, adjacency_structure, contact_count
from .errors import BoundViolation, DomainError, InstanceTooLarge, NotApplicable
from .lattice import Coeffs, Lattice, candidate_box

# Above this many subsets, auto dispatch switches from exhaustive search to
# branch-and-bound; exhaustive refuses outright past the subset limit.
EXHAUSTIVE_DISPATCH_LIMIT = 10**7
EXHAUSTIVE_SUBSET_LIMIT = 10**8

ALGORITHMS = ("auto", "exhaustive", "branch_and_bound")


@dataclass(frozen=True)
class SearchConfig:
    """Search parameters.

    node_limit caps explored nodes (complete subsets for the exhaustive
    walk, partial packings for branch-and-bound); hitting it returns the
    best packing found so far with optimal=False.  thread_hint is advisory
    and does not change results.  box_k overrides the candidate-box bound
    ceil(n/d); subset_limit is the refusal threshold for exhaustive search.
    """

    n: int
    algorithm: str = "auto"
    node_limit: int | None = None
    thread_hint: int | None = None
    box_k: int | None = None
    subset_limit: int = EXHAUSTIVE_SUBSET_LIMIT

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"n must be positive, got {self.n}")
        if self.algorithm not in ALGORITHMS:
            raise DomainError(f"unknown algorithm {self.algorithm!r}, expected one of {ALGORITHMS}")
        if self.node_limit is not None and self.node_limit < 1:
            raise DomainError("node_limit must be positive")


@dataclass(frozen=True)
class SearchResult:
    """Outcome of one search: the value, a witness packing, and certificate data."""

    contact_number: int
    witness: Packing
    optimal: bool
    nodes_explored: int
    theorem_bound: float | None


# ---------------------------------------------------------------------------
# numba kernels
# ---------------------------------------------------------------------------

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


@njit(cache=True, inline="always")
def _popcount(x):
    # SWAR popcount on a uint64 word
    x = x - ((x >> np.uint64(1)) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return (x * _H01) >> np.uint64(56)


@njit(cache=True, inline="always")
def _and_popcount(row, mask, words):
    total = 0
    for w in range(words):
        total += np.int64(_popcount(row[w] & mask[w]))
    return total


@njit(cache=True, inline="always")
def _mask_set(mask, i):
    mask[i >> 6] |= np.uint64(1) << np.uint64(i & 63)


@njit(cache=True, inline="always")
def _mask_clear(mask, i):
    mask[i >> 6] &= ~(np.uint64(1) << np.uint64(i & 63))


@njit(cache=True)
def _exhaustive_core(adj, n_points, n_pick, node_limit):
    """Evaluate every n_pick-subset in lex order; first strict improvement wins.

    Returns (best_edges, best_pick, leaves_examined, completed).  best_edges
    is -1 if no complete subset was examined (tiny node_limit).
    """
    big_n = n_points
    words = adj.shape[1]
    mask = np.zeros(words, np.uint64)
    pick = np.zeros(n_pick, np.int64)
    nxt = np.zeros(n_pick, np.int64)
    e_at = np.zeros(n_pick + 1, np.int64)
    best = np.int64(-1)
    best_pick = np.full(n_pick, -1, np.int64)
    leaves = np.int64(0)
    aborted = False

    t = 0
    nxt[0] = 0
    while True:
        i = nxt[t]
        lim = big_n - (n_pick - t)
        if t == n_pick - 1:
            while i <= lim:
                if node_limit >= 0 and leaves >= node_limit:
                    aborted = True
                    break
                e = e_at[t] + _and_popcount(adj[i], mask, words)
                leaves += 1
                if e > best:
                    best = e
                    for q in range(t):
                        best_pick[q] = pick[q]
                    best_pick[t] = i
                i += 1
            if aborted or t == 0:
                break
            t -= 1
            j = pick[t]
            _mask_clear(mask, j)
            nxt[t] = j + 1
        elif i <= lim:
            e = e_at[t] + _and_popcount(adj[i], mask, words)
            _mask_set(mask, i)
            pick[t] = i
            e_at[t + 1] = e
            t += 1
            nxt[t] = i + 1
        else:
            if t == 0:
                break
            t -= 1
            j = pick[t]
            _mask_clear(mask, j)
            nxt[t] = j + 1
    return best, best_pick, leaves, not aborted


@njit(cache=True)
def _future_extra(adj, suffix, mask, s, m, hist, vmax, words, n_points):
    """Admissible cap on edges addable by m more picks from indices >= s.

    A future candidate j brings exactly c_j edges into the chosen set and at
    most min(f_j, m-1) edges to the other new points, f_j being its future
    degree, so it contributes at most v_j = 2*c_j + min(f_j, m-1) half-edges.
    The m largest v_j bound the total; halve and floor.
    """
    for v in range(vmax + 1):
        hist[v] = 0
    for j in range(s, n_points):
        cj = _and_popcount(adj[j], mask, words)
        fj = _and_popcount(adj[j], suffix[s], words)
        if fj > m - 1:
            fj = m - 1
        hist[2 * cj + fj] += 1
    take = m
    total = np.int64(0)
    v = vmax
    while v > 0 and take > 0:
        c = hist[v]
        if c > 0:
            use = c if c < take else take
            total += use * v
            take -= use
        v -= 1
    return total >> 1


@njit(cache=True)
def _bnb_core(adj, suffix, n_points, n_pick, kiss, total_cap, node_limit):
    """Branch-and-bound over lex-ordered subsets with strict-improvement updates.

    Returns (best_edges, best_pick, nodes_explored, completed); nodes count
    leaf evaluations plus expanded partial packings.
    """
    big_n = n_points
    words = adj.shape[1]
    mask = np.zeros(words, np.uint64)
    pick = np.zeros(n_pick, np.int64)
    nxt = np.zeros(n_pick, np.int64)
    e_at = np.zeros(n_pick + 1, np.int64)
    vmax = 3 * kiss + 1
    hist = np.zeros(vmax + 1, np.int64)
    best = np.int64(-1)
    best_pick = np.full(n_pick, -1, np.int64)
    nodes = np.int64(0)
    aborted = False
    done = False

    t = 0
    nxt[0] = 0
    while not done:
        i = nxt[t]
        lim = big_n - (n_pick - t)
        m_after = n_pick - t - 1
        pushed = False
        while i <= lim:
            if node_limit >= 0 and nodes >= node_limit:
                aborted = True
                break
            e_i = e_at[t] + _and_popcount(adj[i], mask, words)
            if m_after == 0:
                nodes += 1
                if e_i > best:
                    best = e_i
                    for q in range(t):
                        best_pick[q] = pick[q]
                    best_pick[t] = i
                    if best >= total_cap:
                        done = True  # nothing can strictly beat the proven cap
                        break
                i += 1
                continue
            # trivial cap: each remaining pick adds at most kiss edges
            if e_i + m_after * kiss <= best:
                i += 1
                continue
            _mask_set(mask, i)
            extra = _future_extra(adj, suffix, mask, i + 1, m_after, hist, vmax, words, big_n)
            node_bound = e_i + extra
            if node_bound > total_cap:
                node_bound = total_cap
            if node_bound <= best:
                _mask_clear(mask, i)
                i += 1
                continue
            nodes += 1
            pick[t] = i
            e_at[t + 1] = e_i
            t += 1
            nxt[t] = i + 1
            pushed = True
            break
        if aborted or done:
            break
        if pushed:
            continue
        if t == 0:
            break
        t -= 1
        j = pick[t]
        _mask_clear(mask, j)
        nxt[t] = j + 1
    return best, best_pick, nodes, not aborted


# ---------------------------------------------------------------------------
# wrappers
# ---------------------------------------------------------------------------


def _search_setup(lattice: Lattice, config: SearchConfig):
    box = candidate_box(lattice, config.n, k=config.box_k)
    if len(box) < config.n:
        raise DomainError(
            f"candidate box holds {len(box)} points, fewer than n={config.n}"
        )
    adj = adjacency_structure(box, lattice)
    return box, adj, adj.bit_rows()


def _suffix_masks(n_points: int, words: int) -> np.ndarray:
    suffix = np.zeros((n_points + 1, words), dtype=np.uint64)
    for s in range(n_points - 1, -1, -1):
        suffix[s] = suffix[s + 1]
        suffix[s, s >> 6] |= np.uint64(1) << np.uint64(s & 63)
    return suffix


def _strict_int_cap(bound: float) -> int:
    """Largest integer strictly below a real upper bound."""
    cap = math.floor(bound)
    if cap == bound:
        cap -= 1
    return cap


def _finish(
    lattice: Lattice,
    box: list[Coeffs],
    config: SearchConfig,
    best: int,
    best_pick,
    nodes: int,
    completed: bool,
) -> SearchResult:
    n = config.n
    if best < 0:
        # Node limit hit before any complete subset: certify the trivial
        # lex-first subset instead so the result still carries a witness.
        indices = list(range(n))
    else:
        indices = [int(i) for i in best_pick]
    witness = Packing(lattice=lattice, points=tuple(box[i] for i in indices))
    value = contact_count(witness)
    if best >= 0 and value != best:
        raise BoundViolation(
            f"witness recount {value} disagrees with search value {best}"
        )
    theorem = upper_bound_lattice(n) if n > 2 else None
    return SearchResult(
        contact_number=value,
        witness=witness,
        optimal=completed,
        nodes_explored=int(nodes),
        theorem_bound=theorem,
    )


def solve_exhaustive(lattice: Lattice, config: SearchConfig) -> SearchResult:
    """Maximize contacts by evaluating every n-subset of the candidate box.

    Raises InstanceTooLarge when the subset count exceeds the configured
    limit; nodes_explored reports the number of subsets evaluated.
    """
    box, _, bits = _search_setup(lattice, config)
    total = math.comb(len(box), config.n)
    if total > config.subset_limit:
        raise InstanceTooLarge(total)
    limit = -1 if config.node_limit is None else config.node_limit
    best, best_pick, leaves, completed = _exhaustive_core(
        bits, len(box), config.n, limit
    )
    return _finish(lattice, box, config, int(best), best_pick, int(leaves), completed)


def solve_bnb(lattice: Lattice, config: SearchConfig) -> SearchResult:
    """Branch-and-bound search; same value and canonical witness as exhaustive."""
    box, adj, bits = _search_setup(lattice, config)
    n = config.n
    # Per-pick degree cap: the max degree inside the box, never above the
    # kissing number, and exact even on the skewed-basis adjacency fallback.
    kiss = max(1, adj.max_degree)
    cap = n * kiss // 2
    if n > 2:
        cap = min(cap, _strict_int_cap(upper_bound_lattice(n)))
    suffix = _suffix_masks(len(box), bits.shape[1])
    limit = -1 if config.node_limit is None else config.node_limit
    best, best_pick, nodes, completed = _bnb_core(
        bits, suffix, len(box), n, kiss, cap, limit
    )
    return _finish(lattice, box, config, int(best), best_pick, int(nodes), completed)


def maximal_contact_number(
    lattice: Lattice, n: int, config: SearchConfig | None = None
) -> SearchResult:
    """The maximal contact number of n spheres on the lattice, with witness.

    Dispatches to exhaustive search for small instances and branch-and-bound
    otherwise (or honors an explicit config.algorithm).  For optimal results
    with n > 2 the proven lattice upper bound is asserted; a violation raises
    BoundViolation since it can only mean an internal bug.
    """
    if config is None:
        config = SearchConfig(n=n)
    elif config.n != n:
        config = replace(config, n=n)

    algorithm = config.algorithm
    if algorithm == "auto":
        box_len = len(candidate_box(lattice, n, k=config.box_k))
        if box_len < n:
            raise DomainError(f"candidate box holds {box_len} points, fewer than n={n}")
        small = math.comb(box_len, n) <= EXHAUSTIVE_DISPATCH_LIMIT
        algorithm = "exhaustive" if small else "branch_and_bound"

    if algorithm == "exhaustive":
        result = solve_exhaustive(lattice, config)
    else:
        result = solve_bnb(lattice, config)

    if result.optimal and n > 2:
        if not result.contact_number < result.theorem_bound:
            raise BoundViolation(
                f"contact number {result.contact_number} does not beat the "
                f"proven bound {result.theorem_bound:.6f} for n={n}"
            )
    return result


def verify_against_bounds(result: SearchResult) -> bool:
    """Check an optimal result against the proven bounds.

    True iff the contact number is strictly below the lattice upper bound
    and, on the FCC preset, at least the octahedral lower bound.  A False
    return indicates a solver or construction bug.
    """
    n = result.witness.n
    if n <= 2 or not result.optimal:
        raise NotApplicable(f"bounds apply to optimal results with n > 2 (n={n})")
    if result.contact_number >= upper_bound_lattice(n):
        return False
    if result.witness.lattice.name == "fcc":
        return result.contact_number >= octahedral_lower_bound(n)
    return True
