"""Parameter sweeps over the two families and the blind-pair enumeration.

Region grids evaluate the closed-form detectability conditions cell by
cell; a random subsample can additionally be confirmed against full
Fock-space numerics.  Blind pairs are the photon-number pairs (m, n) for
which <L_x> vanishes on |n, m; r>, i.e. m(m-1) + n(n-1) - 4nm = 0, so the
fourth-order condition cannot see them.
"""

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import closed_form, fock_core, witnesses
from .errors import ParameterError
from .states import BSN, TMSN, build_bsn, build_tmsn


class Cell(NamedTuple):
    i: int
    j: int
    detectable: bool
    margin: float


@dataclass(frozen=True)
class RegionGrid:
    kind: str
    criterion: str
    parameter: complex
    shape: tuple
    cells: tuple
    axes: tuple = ("i", "j")
    confirmations: dict = field(default_factory=dict)

    def __post_init__(self):
        rows, cols = self.shape
        seen = {(c.i, c.j) for c in self.cells}
        if len(self.cells) != rows * cols or seen != {(i, j) for i in range(rows) for j in range(cols)}:
            raise ValueError("region grid must cover every cell exactly once")

    def verdict(self, i, j):
        return self.cells[i * self.shape[1] + j].detectable

    def as_array(self):
        out = np.zeros(self.shape, dtype=bool)
        for c in self.cells:
            out[c.i, c.j] = c.detectable
        return out

    @property
    def coverage(self):
        return sum(c.detectable for c in self.cells) / len(self.cells)


def _check_bounds(*bounds):
    for b in bounds:
        if isinstance(b, bool) or int(b) != b or b < 0:
            raise ParameterError(f"grid bounds must be non-negative integers, got {b!r}")


def _sample(rows, cols, k, seed):
    if k <= 0:
        return []
    rng = np.random.default_rng(seed)
    flat = rng.choice(rows * cols, size=min(k, rows * cols), replace=False)
    return sorted((int(f) // cols, int(f) % cols) for f in flat)


def tmsn_region(xi, M_max, N_max, confirm=0, seed=0):
    """Covariance-matrix detectability of |M, N; xi> on [0, M_max] x [0, N_max].

    ``confirm`` cells picked at random are rebuilt numerically and their
    Simon verdict stored in ``confirmations`` as (closed, numeric) pairs.
    """
    _check_bounds(M_max, N_max)
    xi = complex(xi)
    if not abs(xi) < 1:
        raise ParameterError(f"|xi| must be < 1, got |xi| = {abs(xi)}")
    cells = []
    for M in range(M_max + 1):
        for N in range(N_max + 1):
            margin = closed_form.tmsn_detect_margin(M, N, xi)
            cells.append(Cell(M, N, closed_form.tmsn_detectable(M, N, xi), margin))
    conf = {}
    for M, N in _sample(M_max + 1, N_max + 1, confirm, seed):
        cov = fock_core.covariance_matrix(build_tmsn(TMSN(M, N, xi)))
        numeric = witnesses.simon_criterion(cov).entangled
        conf[(M, N)] = (cells[M * (N_max + 1) + N].detectable, numeric)
    return RegionGrid("tmsn-region", "simon", xi, (M_max + 1, N_max + 1), tuple(cells), ("M", "N"), conf)


def bsn_hz_region(r, n_max, m_max, confirm=0, seed=0):
    """Closed-form HZ detectability of |n, m; r> on [0, n_max] x [0, m_max]."""
    _check_bounds(n_max, m_max)
    r = complex(r)
    if not 0 < abs(r) < math.inf:
        raise ParameterError(f"|r| must satisfy 0 < |r| < inf, got |r| = {abs(r)}")
    cells = []
    for n in range(n_max + 1):
        for m in range(m_max + 1):
            margin = closed_form.bsn_hz_margin(n, m, r)
            cells.append(Cell(n, m, closed_form.bsn_hz_detectable(n, m, r), margin))
    conf = {}
    for n, m in _sample(n_max + 1, m_max + 1, confirm, seed):
        table = fock_core.moment_table(build_bsn(BSN(n, m, r)), monos=[(1, 1, 1, 1), (0, 1, 1, 0)])
        numeric = witnesses.hz_criterion(table).entangled
        conf[(n, m)] = (cells[n * (m_max + 1) + m].detectable, numeric)
    return RegionGrid("hz-region", "hz", r, (n_max + 1, m_max + 1), tuple(cells), ("n", "m"), conf)


def hz_brute_force_region(r, n_max, m_max):
    """HZ verdict from numeric moments on every cell, as a boolean array."""
    _check_bounds(n_max, m_max)
    out = np.zeros((n_max + 1, m_max + 1), dtype=bool)
    for n in range(n_max + 1):
        for m in range(m_max + 1):
            table = fock_core.moment_table(build_bsn(BSN(n, m, r)), monos=[(1, 1, 1, 1), (0, 1, 1, 0)])
            out[n, m] = witnesses.hz_criterion(table).entangled
    return out


# -- blind pairs --------------------------------------------------------------


class BlindPair(NamedTuple):
    m: int
    n: int

    def swapped(self):
        return BlindPair(self.n, self.m)


def is_blind(m, n):
    """m(m-1) + n(n-1) - 4nm == 0, the condition for <L_x> = 0."""
    return m * (m - 1) + n * (n - 1) - 4 * n * m == 0


# Widely reproduced listing of the eleven pairs; entry 8 (0-based) reads
# (4840, 55385) and does not satisfy the defining equation.
REFERENCE_LISTING = (
    (0, 1), (1, 5), (5, 20), (20, 76), (76, 285), (285, 1065),
    (1065, 3976), (3976, 14840), (4840, 55385), (55385, 206701), (206701, 771420),
)

BRUTE_FORCE_PREFIX = 1000


def exhaustive_blind_pairs(limit):
    """Every pair 0 <= m < n <= limit, scanning all n.

    For fixed n the equation is a quadratic in m whose smaller root is
    ((4n + 1) - sqrt(12n^2 + 12n + 1)) / 2; it is checked in exact
    integer arithmetic.
    """
    out = []
    for n in range(1, limit + 1):
        disc = 12 * n * n + 12 * n + 1
        s = math.isqrt(disc)
        if s * s != disc or (4 * n + 1 - s) % 2:
            continue
        m = (4 * n + 1 - s) // 2
        if 0 <= m < n and is_blind(m, n):
            out.append(BlindPair(m, n))
    return out


def _brute_force(limit):
    return [BlindPair(m, n) for n in range(1, limit + 1) for m in range(n) if is_blind(m, n)]


def enumerate_blind_pairs(limit):
    """Blind pairs with 0 <= m < n <= limit from n_{k+1} = 4 n_k - n_{k-1} + 1.

    The chain 0, 1, 5, 20, 76, ... gives the pairs (n_k, n_{k+1}).  The
    first pairs are checked against a plain double-loop search.
    """
    if limit < 1:
        raise ParameterError(f"limit must be >= 1, got {limit}")
    out = []
    prev, cur = 0, 1
    while cur <= limit:
        if not is_blind(prev, cur):
            raise RuntimeError(f"recurrence produced a non-solution ({prev}, {cur})")
        out.append(BlindPair(prev, cur))
        prev, cur = cur, 4 * cur - prev + 1
    prefix = min(limit, BRUTE_FORCE_PREFIX)
    if [p for p in out if p.n <= prefix] != _brute_force(prefix):
        raise RuntimeError(f"recurrence disagrees with brute force below {prefix}")
    return out


def symmetric_closure(pairs):
    return sorted(set(pairs) | {p.swapped() for p in pairs})


@dataclass(frozen=True)
class ListingComparison:
    index: int
    listed: tuple
    computed: tuple
    listed_satisfies: bool

    @property
    def matches(self):
        return tuple(self.listed) == tuple(self.computed)


def compare_with_listing(pairs, listing=REFERENCE_LISTING):
    out = []
    for idx, listed in enumerate(listing):
        computed = tuple(pairs[idx]) if idx < len(pairs) else None
        out.append(ListingComparison(idx, tuple(listed), computed, is_blind(*listed)))
    return out
