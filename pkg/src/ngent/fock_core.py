"""Truncated two-mode Fock space: states, ladder action, moments, covariance.

Amplitudes are stored densely as a ``(cutoff + 1, cutoff + 1)`` complex
array indexed by ``(n_a, n_b)``.  Ladder operators never raise on
truncation; the probability mass pushed past the lattice edge is added to
``tail_bound`` instead.
"""

import functools
import itertools
import warnings
from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from ._backend import kernels
from .errors import MissingMomentError, NonPhysicalWarning, OrderOverflowError
from .operators import IDENTITY, LadderMonomial, quadratures

DEFAULT_TOL = 1e-9
MAX_ORDER = 4

OMEGA = np.kron(np.eye(2), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def _frozen(arr):
    arr = np.array(arr, dtype=np.complex128, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FockState:
    amplitudes: np.ndarray
    tail_bound: float = 0.0

    def __post_init__(self):
        amps = _frozen(self.amplitudes)
        if amps.ndim != 2 or amps.shape[0] != amps.shape[1] or amps.shape[0] == 0:
            raise ValueError(f"amplitudes must be a non-empty square table, got shape {amps.shape}")
        if not self.tail_bound >= 0:
            raise ValueError(f"tail_bound must be non-negative, got {self.tail_bound}")
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "tail_bound", float(self.tail_bound))

    @property
    def cutoff(self):
        return self.amplitudes.shape[0] - 1

    @property
    def norm_sq(self):
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    @classmethod
    def basis(cls, n_a, n_b, cutoff=None):
        cutoff = max(n_a, n_b) if cutoff is None else cutoff
        if not (0 <= n_a <= cutoff and 0 <= n_b <= cutoff):
            raise ValueError(f"|{n_a},{n_b}> does not fit cutoff {cutoff}")
        amps = np.zeros((cutoff + 1, cutoff + 1), dtype=np.complex128)
        amps[n_a, n_b] = 1.0
        return cls(amps)

    @classmethod
    def vacuum(cls, cutoff=0):
        return cls.basis(0, 0, cutoff)

    def grown(self, cutoff):
        """Zero-pad to a larger cutoff."""
        if cutoff < self.cutoff:
            raise ValueError(f"cannot grow cutoff {self.cutoff} down to {cutoff}")
        if cutoff == self.cutoff:
            return self
        amps = np.zeros((cutoff + 1, cutoff + 1), dtype=np.complex128)
        c = self.cutoff + 1
        amps[:c, :c] = self.amplitudes
        return FockState(amps, self.tail_bound)

    def normalized(self):
        n = np.sqrt(self.norm_sq)
        if n == 0:
            raise ValueError("cannot normalize the zero vector")
        return FockState(self.amplitudes / n, self.tail_bound)

    def __add__(self, other):
        c = max(self.cutoff, other.cutoff)
        x, y = self.grown(c), other.grown(c)
        return FockState(x.amplitudes + y.amplitudes, x.tail_bound + y.tail_bound)

    def __mul__(self, scalar):
        return FockState(self.amplitudes * scalar, self.tail_bound * abs(scalar) ** 2)

    __rmul__ = __mul__

    def support(self, threshold=0.0):
        """Sorted list of (n_a, n_b) with |amplitude| > threshold."""
        idx = np.argwhere(np.abs(self.amplitudes) > threshold)
        return [tuple(int(v) for v in row) for row in idx]


def _raise(amps, axis):
    d = amps.shape[0]
    out = np.zeros_like(amps)
    w = np.sqrt(np.arange(1, d))
    if axis == 0:
        out[1:, :] = w[:, None] * amps[:-1, :]
        leaked = d * float(np.sum(np.abs(amps[-1, :]) ** 2))
    else:
        out[:, 1:] = w[None, :] * amps[:, :-1]
        leaked = d * float(np.sum(np.abs(amps[:, -1]) ** 2))
    return out, leaked


def _lower(amps, axis):
    d = amps.shape[0]
    out = np.zeros_like(amps)
    w = np.sqrt(np.arange(1, d))
    if axis == 0:
        out[:-1, :] = w[:, None] * amps[1:, :]
    else:
        out[:, :-1] = w[None, :] * amps[:, 1:]
    return out


def apply_create_a(state):
    out, leaked = _raise(state.amplitudes, 0)
    return FockState(out, state.tail_bound + leaked)


def apply_create_b(state):
    out, leaked = _raise(state.amplitudes, 1)
    return FockState(out, state.tail_bound + leaked)


def apply_annihilate_a(state):
    return FockState(_lower(state.amplitudes, 0), state.tail_bound)


def apply_annihilate_b(state):
    return FockState(_lower(state.amplitudes, 1), state.tail_bound)


def inner_product(x, y):
    """<x|y>, zero-padding the smaller lattice."""
    c = max(x.cutoff, y.cutoff)
    return complex(np.vdot(x.grown(c).amplitudes, y.grown(c).amplitudes))


def monomials(max_order):
    """All monomials with total order <= max_order, in lexicographic order."""
    out = []
    for mono in itertools.product(range(max_order + 1), repeat=4):
        if sum(mono) <= max_order:
            out.append(LadderMonomial(*mono))
    return out


def moment(state, mono, max_order=MAX_ORDER):
    """<psi| a+^k a^l b+^p b^q |psi>, exact on the truncated lattice."""
    mono = LadderMonomial(*mono)
    if mono.order > max_order:
        raise OrderOverflowError(f"monomial {tuple(mono)} has order {mono.order} > {max_order}")
    return complex(kernels.moment(state.amplitudes, *mono))


@dataclass(frozen=True, eq=False)
class MomentTable:
    """Expectation values keyed by normally ordered ladder monomials."""

    entries: dict = field(default_factory=dict)
    source: str = "numeric"

    def __post_init__(self):
        clean = {LadderMonomial(*m): complex(v) for m, v in dict(self.entries).items()}
        object.__setattr__(self, "entries", MappingProxyType(clean))

    def __getitem__(self, mono):
        try:
            return self.entries[LadderMonomial(*mono)]
        except KeyError:
            raise MissingMomentError(f"moment {tuple(mono)} not in table") from None

    def __contains__(self, mono):
        return LadderMonomial(*mono) in self.entries

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(sorted(self.entries))

    @property
    def max_order(self):
        return max((m.order for m in self.entries), default=0)

    def completed(self):
        """Fill in missing conjugate partners: <m+> = conj(<m>)."""
        entries = dict(self.entries)
        for m, v in self.entries.items():
            entries.setdefault(m.adjoint(), v.conjugate())
        return MomentTable(entries, self.source)

    def conjugation_defect(self):
        """Largest |<m> - conj(<m+>)| over stored pairs."""
        worst = 0.0
        for m, v in self.entries.items():
            partner = self.entries.get(m.adjoint())
            if partner is not None:
                worst = max(worst, abs(v - partner.conjugate()))
        return worst

    def restricted(self, monos):
        return MomentTable({m: self[m] for m in monos}, self.source)


def moment_table(state, max_order=MAX_ORDER, monos=None):
    """Evaluate every monomial up to ``max_order`` (or exactly ``monos``)."""
    monos = monomials(max_order) if monos is None else [LadderMonomial(*m) for m in monos]
    if not monos:
        return MomentTable({}, "numeric")
    values = kernels.moments(state.amplitudes, np.array(monos, dtype=np.int64))
    return MomentTable(dict(zip(monos, values)), "numeric")


def partial_transpose_moment(table, mono):
    return table[LadderMonomial(*mono).partial_transpose()]


def partial_transpose(table):
    """Table of partially transposed moments: <m>_PT = <m with B exponents swapped>."""
    return MomentTable(
        {m.partial_transpose(): v for m, v in table.entries.items()}, table.source
    )


@dataclass(frozen=True, eq=False)
class CovarianceMatrix:
    gamma: np.ndarray

    def __post_init__(self):
        g = np.array(self.gamma, dtype=float, copy=True)
        if g.shape != (4, 4):
            raise ValueError(f"covariance matrix must be 4x4, got {g.shape}")
        g.setflags(write=False)
        object.__setattr__(self, "gamma", g)

    @classmethod
    def from_blocks(cls, A, B, C):
        A, B, C = (np.asarray(x, dtype=float) for x in (A, B, C))
        return cls(np.block([[A, C], [C.T, B]]))

    @property
    def A(self):
        return self.gamma[:2, :2]

    @property
    def B(self):
        return self.gamma[2:, 2:]

    @property
    def C(self):
        return self.gamma[:2, 2:]

    def is_symmetric(self, tol=DEFAULT_TOL):
        return bool(np.max(np.abs(self.gamma - self.gamma.T)) <= tol)

    def physicality_margin(self):
        """Smallest eigenvalue of gamma + i*Omega (>= 0 for physical states)."""
        return float(np.linalg.eigvalsh(self.gamma + 1j * OMEGA).min())

    def is_physical(self, tol=DEFAULT_TOL):
        return self.physicality_margin() >= -tol

    def symplectic_eigenvalues(self):
        ev = np.linalg.eigvals(1j * OMEGA @ self.gamma)
        return np.sort(np.abs(ev))[::2]


COVARIANCE_MONOMIALS = monomials(2)


@functools.lru_cache(maxsize=1)
def _symmetrized_quadratures():
    R = quadratures()
    return R, {(i, j): R[i] * R[j] + R[j] * R[i] for i in range(4) for j in range(i, 4)}


def covariance_from_table(table):
    """gamma_ij = <R_i R_j + R_j R_i> - 2 <R_i><R_j> with R = (x_A, p_A, x_B, p_B)."""
    R, sym = _symmetrized_quadratures()
    mean = np.array([r.expectation(table).real for r in R])
    g = np.empty((4, 4))
    for (i, j), op in sym.items():
        g[i, j] = g[j, i] = op.expectation(table).real - 2 * mean[i] * mean[j]
    return CovarianceMatrix(g)


def covariance_matrix(state, tol=DEFAULT_TOL):
    cov = covariance_from_table(moment_table(state, monos=COVARIANCE_MONOMIALS))
    if not cov.is_physical(tol):
        warnings.warn(
            f"covariance matrix violates gamma + i*Omega >= 0 "
            f"(min eigenvalue {cov.physicality_margin():.3e}); raise the cutoff",
            NonPhysicalWarning,
            stacklevel=2,
        )
    return cov


def identity_moment(state):
    return moment(state, IDENTITY)
