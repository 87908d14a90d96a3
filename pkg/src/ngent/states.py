"""Two-mode-squeezed number states and beam-splitted number states.

Both families are built by repeated application of nonlocal creation
operators: ``(A+)^M (B+)^N`` on the numerically built two-mode squeezed
vacuum, and ``(c+)^n (d+)^m`` on the vacuum.  No unitary is exponentiated.
"""

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ParameterError
from .fock_core import (
    FockState,
    apply_annihilate_a,
    apply_annihilate_b,
    apply_create_a,
    apply_create_b,
)

TAIL_TARGET = 1e-14
SCHMIDT_THRESHOLD = 1e-10


@dataclass(frozen=True)
class TMSN:
    """|M, N; xi> = V_xi |M>|N>, the two-mode squeezed number state."""

    M: int
    N: int
    xi: complex

    kind = "tmsn"

    def __post_init__(self):
        _check_count("M", self.M)
        _check_count("N", self.N)
        xi = complex(self.xi)
        if not math.isfinite(abs(xi)) or abs(xi) >= 1:
            raise ParameterError(f"|xi| must be < 1, got |xi| = {abs(xi)}")
        object.__setattr__(self, "xi", xi)


@dataclass(frozen=True)
class BSN:
    """|n, m; r> = U_r |n>|m>, the beam-splitted number state."""

    n: int
    m: int
    r: complex

    kind = "bsn"

    def __post_init__(self):
        _check_count("n", self.n)
        _check_count("m", self.m)
        r = complex(self.r)
        if not (0 < abs(r) < math.inf):
            raise ParameterError(f"|r| must satisfy 0 < |r| < inf, got |r| = {abs(r)}")
        object.__setattr__(self, "r", r)


StateSpec = Union[TMSN, BSN]


def _check_count(name, value):
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 0:
        raise ParameterError(f"{name} must be a non-negative integer, got {value!r}")


def _check_xi(xi):
    xi = complex(xi)
    if not abs(xi) < 1:
        raise ParameterError(f"|xi| must be < 1, got |xi| = {abs(xi)}")
    return xi


def tms_vacuum_tail(xi, cutoff):
    """Exact probability mass of the squeezed vacuum beyond ``cutoff``."""
    return abs(xi) ** (2 * (cutoff + 1))


def _tmsn_tail_estimate(xi, cutoff, excitations):
    # populations of |M,N;xi> decay like |xi|^(2n) n^(M+N)
    return tms_vacuum_tail(xi, cutoff) * float(cutoff + 1 + excitations) ** excitations


def auto_cutoff(xi, excitations=0, target=TAIL_TARGET):
    """Smallest vacuum cutoff whose tail estimate falls below ``target``."""
    xi = _check_xi(xi)
    if xi == 0:
        return 0
    c = 0
    while _tmsn_tail_estimate(xi, c, excitations) >= target:
        c += 1
    return c


def build_tms_vacuum(xi, cutoff=None):
    """sqrt(1-|xi|^2) sum_n xi^n |n, n>, truncated at ``cutoff``."""
    xi = _check_xi(xi)
    if cutoff is None:
        cutoff = auto_cutoff(xi)
    if cutoff < 0:
        raise ParameterError(f"cutoff must be >= 0, got {cutoff}")
    n = np.arange(cutoff + 1)
    amps = np.zeros((cutoff + 1, cutoff + 1), dtype=np.complex128)
    amps[n, n] = math.sqrt(1 - abs(xi) ** 2) * xi**n
    return FockState(amps, tms_vacuum_tail(xi, cutoff))


def _nonlocal_create_A(state, xi):
    # A+ = (a+ - xi* b) / sqrt(1 - |xi|^2)
    s = 1 / math.sqrt(1 - abs(xi) ** 2)
    return (apply_create_a(state) + apply_annihilate_b(state) * (-xi.conjugate())) * s


def _nonlocal_create_B(state, xi):
    # B+ = (b+ - xi* a) / sqrt(1 - |xi|^2)
    s = 1 / math.sqrt(1 - abs(xi) ** 2)
    return (apply_create_b(state) + apply_annihilate_a(state) * (-xi.conjugate())) * s


def nonlocal_annihilators(state, xi):
    """(A|psi>, B|psi>) with A = (a - xi b+)/sqrt(1-|xi|^2), B = (b - xi a+)/sqrt(1-|xi|^2)."""
    xi = _check_xi(xi)
    s = 1 / math.sqrt(1 - abs(xi) ** 2)
    A = (apply_annihilate_a(state) + apply_create_b(state) * (-xi)) * s
    B = (apply_annihilate_b(state) + apply_create_a(state) * (-xi)) * s
    return A, B


def build_tmsn(spec, cutoff=None, headroom=0):
    """Build |M, N; xi> on a lattice of ``cutoff + headroom``.

    ``cutoff`` is the lattice that holds the state itself; the squeezed
    vacuum is built ``M + N`` below it so the creation steps never leak.
    When omitted it is chosen so the estimated tail mass is below 1e-14.
    """
    M, N, xi = spec.M, spec.N, spec.xi
    exc = M + N
    if cutoff is None:
        c0 = auto_cutoff(xi, exc)
    else:
        c0 = cutoff - exc
        if c0 < 0:
            raise ParameterError(f"cutoff {cutoff} leaves no room for M + N = {exc} excitations")
    state = build_tms_vacuum(xi, c0).grown(c0 + exc + headroom)
    for k in range(1, M + 1):
        state = _nonlocal_create_A(state, xi) * (1 / math.sqrt(k))
    for k in range(1, N + 1):
        state = _nonlocal_create_B(state, xi) * (1 / math.sqrt(k))
    raw = state.norm_sq
    tail = max(_tmsn_tail_estimate(xi, c0, exc), abs(1 - raw))
    return FockState(state.amplitudes / math.sqrt(raw), tail)


def build_bsn(spec, cutoff=None, headroom=0):
    """Build |n, m; r> = (c+)^n (d+)^m |0,0> / sqrt(n! m!)."""
    n, m, r = spec.n, spec.m, spec.r
    total = n + m
    if cutoff is None:
        cutoff = total
    if cutoff < total:
        raise ParameterError(f"cutoff {cutoff} < n + m = {total}: state does not fit")
    s = 1 / math.sqrt(1 + abs(r) ** 2)
    state = FockState.vacuum(cutoff + headroom)
    for k in range(1, n + 1):
        # c+ = (a+ - r* b+) / sqrt(1 + |r|^2)
        state = (apply_create_a(state) + apply_create_b(state) * (-r.conjugate())) * (s / math.sqrt(k))
    for k in range(1, m + 1):
        # d+ = (r a+ + b+) / sqrt(1 + |r|^2)
        state = (apply_create_a(state) * r + apply_create_b(state)) * (s / math.sqrt(k))
    return FockState(state.amplitudes / math.sqrt(state.norm_sq), 0.0)


def build_state(spec, cutoff=None, headroom=0):
    if isinstance(spec, TMSN):
        return build_tmsn(spec, cutoff, headroom)
    if isinstance(spec, BSN):
        return build_bsn(spec, cutoff, headroom)
    raise TypeError(f"unknown state spec {spec!r}")


@dataclass(frozen=True)
class SchmidtProfile:
    coefficients: tuple
    rank: int
    basis_labels: tuple


def schmidt_profile(state, threshold=SCHMIDT_THRESHOLD):
    """Singular values of the amplitude table, descending.

    ``basis_labels`` pairs the dominant Fock index of each left and right
    Schmidt vector; for the banded families these are exact Fock pairs.
    """
    u, s, vh = np.linalg.svd(state.amplitudes)
    keep = s > threshold
    coeffs = tuple(float(x) for x in s[keep])
    labels = tuple(
        (int(np.argmax(np.abs(u[:, i]))), int(np.argmax(np.abs(vh[i, :]))))
        for i in np.flatnonzero(keep)
    )
    return SchmidtProfile(coeffs, len(coeffs), labels)


def verify_edge_coefficients(spec):
    """(<n+m, 0 | n, m; r>, <0, n+m | n, m; r>); both are non-zero."""
    total = spec.n + spec.m
    if total < 1:
        raise ParameterError("edge coefficients need n + m >= 1")
    amps = build_bsn(spec).amplitudes
    return complex(amps[total, 0]), complex(amps[0, total])
