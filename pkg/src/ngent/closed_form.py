"""Analytic expressions for both state families, in their reference form.

These are deliberately independent of the Fock-space engine: each function
evaluates a closed-form expression from its parameters only.  Where a
reference expression disagrees with the numerics it is still returned
unchanged; :func:`cross_check` reports the disagreement.
"""

import cmath
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .fock_core import CovarianceMatrix


class FormulaDiscrepancyWarning(UserWarning):
    pass


def _xi(xi):
    xi = complex(xi)
    if not abs(xi) < 1:
        raise ParameterError(f"|xi| must be < 1, got |xi| = {abs(xi)}")
    return xi


def _r(r):
    r = complex(r)
    if not 0 < abs(r) < math.inf:
        raise ParameterError(f"|r| must satisfy 0 < |r| < inf, got |r| = {abs(r)}")
    return r


def _counts(*vals):
    for v in vals:
        if isinstance(v, bool) or int(v) != v or v < 0:
            raise ParameterError(f"photon numbers must be non-negative integers, got {v!r}")


# -- two-mode squeezed number states ----------------------------------------


def tmsn_covariance(M, N, xi):
    _counts(M, N)
    xi = _xi(xi)
    x2 = abs(xi) ** 2
    theta = cmath.phase(xi)
    a = (1 + 2 * M + (1 + 2 * N) * x2) / (1 - x2)
    b = (1 + 2 * N + (1 + 2 * M) * x2) / (1 - x2)
    c = 2 * abs(xi) * (1 + M + N) / (1 - x2)
    C = c * np.array([[math.cos(theta), math.sin(theta)], [math.sin(theta), -math.cos(theta)]])
    return CovarianceMatrix.from_blocks(a * np.eye(2), b * np.eye(2), C)


def tmsn_simon_D(M, N, xi):
    _counts(M, N)
    xi = _xi(xi)
    x2 = abs(xi) ** 2
    return (
        (4 / (1 - x2)) ** 2
        * ((1 + N) * (1 + M) * x2 - N * M)
        * (M * N * x2 - (1 + N) * (1 + M))
    )


def tmsn_detect_margin(M, N, xi):
    """(M - t)(N - t) - t/(1-|xi|^2) with t = |xi|^2/(1-|xi|^2); negative means detectable."""
    _counts(M, N)
    xi = _xi(xi)
    x2 = abs(xi) ** 2
    t = x2 / (1 - x2)
    return (M - t) * (N - t) - x2 / (1 - x2) ** 2


# margins are differences of O(M N) terms; cells sitting exactly on the
# boundary must not flip on rounding
BOUNDARY_RTOL = 1e-12


def tmsn_detectable(M, N, xi):
    x2 = abs(complex(xi)) ** 2
    scale = max(1.0, (M + 1) * (N + 1) / (1 - x2) ** 2) if x2 < 1 else 1.0
    return tmsn_detect_margin(M, N, xi) < -BOUNDARY_RTOL * scale


def tmsn_Kx(M, N, xi):
    _counts(M, N)
    xi = _xi(xi)
    return ((xi + xi.conjugate()) / (2 * (1 - abs(xi) ** 2))).real * (M + N + 1)


# -- beam-splitted number states ---------------------------------------------


def bsn_covariance(n, m, r):
    _counts(n, m)
    r = _r(r)
    r2 = abs(r) ** 2
    phi = cmath.phase(r)
    a = (1 + r2 + 2 * (n + r2 * m)) / (1 + r2)
    b = (1 + r2 + 2 * (r2 * n + m)) / (1 + r2)
    c = 2 * abs(r) * (m - n) / (1 + r2)
    C = c * np.array([[math.cos(phi), -math.sin(phi)], [math.sin(phi), math.cos(phi)]])
    return CovarianceMatrix.from_blocks(a * np.eye(2), b * np.eye(2), C)


def bsn_simon_D(n, m, r):
    _counts(n, m)
    r = _r(r)
    r2 = abs(r) ** 2
    return (
        16 / (1 + r2) ** 2
        * (m * (1 + n) + (1 + m) * n * r2)
        * ((1 + m) * n + m * (1 + n) * r2)
    )


def bsn_hz_moments(n, m, r):
    """(<a+a b+b>, <a b+>) in the reference form.

    The reference <a+a b+b> agrees with the numerics only at |r| = 1; see
    :func:`cross_check`.
    """
    _counts(n, m)
    r = _r(r)
    r2 = abs(r) ** 2
    nanb = ((1 - r2) ** 2 + r2 * (m * (m - 1) + n * (n - 1))) / (1 + r2) ** 2
    ab_dag = r / (1 + r2) * (m - n)
    return nanb, ab_dag


def bsn_hz_margin(n, m, r):
    """(m - u)(n - u) - u^2 with u = |r|^2/(1+|r|^4); negative means detectable."""
    _counts(n, m)
    r = _r(r)
    r2 = abs(r) ** 2
    u = r2 / (1 + r2**2)
    return (m - u) * (n - u) - u**2


def bsn_hz_detectable(n, m, r):
    return bsn_hz_margin(n, m, r) < -BOUNDARY_RTOL * max(1.0, n * m)


def bsn_Jx(n, m, r):
    _counts(n, m)
    r = _r(r)
    return ((r + r.conjugate()) / (2 * (1 + abs(r) ** 2))).real * (n - m)


def bsn_Lx(n, m, r):
    _counts(n, m)
    r = _r(r)
    pref = ((r**2 + r.conjugate() ** 2) / (2 * (1 + abs(r) ** 2) ** 2)).real
    return pref * (m * (m - 1) + n * (n - 1) - 4 * n * m)


def bsn_Lx_magnitude_diagonal(n, r):
    """|<L_x>| at n = m: |r^2 + r*^2| n(n+1) / (1+|r|^2)^2."""
    _counts(n)
    r = _r(r)
    return abs(r**2 + r.conjugate() ** 2) * n * (n + 1) / (1 + abs(r) ** 2) ** 2


# -- bundled view ------------------------------------------------------------


@dataclass(frozen=True)
class AnalyticMoments:
    family: str
    params: tuple
    covariance: CovarianceMatrix
    simon_D: float
    scalars: dict = field(default_factory=dict)


def analytic_moments(spec):
    """Every closed form available for ``spec`` (a TMSN or BSN)."""
    if spec.kind == "tmsn":
        M, N, xi = spec.M, spec.N, spec.xi
        return AnalyticMoments(
            "tmsn",
            (M, N, xi),
            tmsn_covariance(M, N, xi),
            tmsn_simon_D(M, N, xi),
            {
                "Kx": tmsn_Kx(M, N, xi),
                "Jz_variance": 0.0,
                "detectable": tmsn_detectable(M, N, xi),
            },
        )
    n, m, r = spec.n, spec.m, spec.r
    nanb, ab_dag = bsn_hz_moments(n, m, r)
    return AnalyticMoments(
        "bsn",
        (n, m, r),
        bsn_covariance(n, m, r),
        bsn_simon_D(n, m, r),
        {
            "Jx": bsn_Jx(n, m, r),
            "Lx": bsn_Lx(n, m, r),
            "NaNb": nanb,
            "abdag": ab_dag,
            "Kz_variance": 0.0,
            "hz_detectable": bsn_hz_detectable(n, m, r),
        },
    )


# -- numeric comparison ------------------------------------------------------


@dataclass(frozen=True)
class Discrepancy:
    quantity: str
    closed_form: complex
    numeric: complex
    delta: float
    tolerance: float

    @property
    def ok(self):
        return self.delta <= self.tolerance


def cross_check(spec, state=None, tol=1e-8, warn=True):
    """Compare every closed form for ``spec`` against Fock-space numerics.

    Returns one :class:`Discrepancy` per quantity; those outside ``tol``
    also raise a :class:`FormulaDiscrepancyWarning` when ``warn`` is set.
    """
    from . import fock_core, states, witnesses

    if state is None:
        state = states.build_state(spec)
    table = fock_core.moment_table(state, max_order=4)
    ops = witnesses.algebra_operators()
    an = analytic_moments(spec)
    cov = fock_core.covariance_from_table(table)
    checks = [
        ("covariance", 0.0, float(np.max(np.abs(cov.gamma - an.covariance.gamma)))),
        ("simon_D", an.simon_D, witnesses.simon_quantity(cov)),
    ]
    if an.family == "tmsn":
        checks += [
            ("Kx", an.scalars["Kx"], ops.K_x.expectation(table)),
            ("Jz_variance", 0.0, witnesses.variance(ops.J_z, table)),
        ]
    else:
        nanb, ab_dag = an.scalars["NaNb"], an.scalars["abdag"]
        checks += [
            ("NaNb", nanb, table[(1, 1, 1, 1)]),
            ("abdag", ab_dag, table[(0, 1, 1, 0)]),
            ("Jx", an.scalars["Jx"], ops.J_x.expectation(table)),
            ("Kz_variance", 0.0, witnesses.variance(ops.K_z, table)),
        ]
        table8 = fock_core.moment_table(state, monos=ops.L_x_tilde.monomials())
        checks.append(("Lx", an.scalars["Lx"], ops.L_x_tilde.expectation(table8)))
    out = []
    for name, closed, numeric in checks:
        if name == "covariance":
            d = Discrepancy(name, 0.0, numeric, numeric, tol)
        else:
            scale = max(1.0, abs(closed))
            d = Discrepancy(name, complex(closed), complex(numeric), abs(closed - numeric) / scale, tol)
        if warn and not d.ok:
            warnings.warn(
                f"{an.family}{an.params}: closed form for {name} = {d.closed_form:.6g} "
                f"but numerics give {d.numeric:.6g}",
                FormulaDiscrepancyWarning,
                stacklevel=2,
            )
        out.append(d)
    return out
