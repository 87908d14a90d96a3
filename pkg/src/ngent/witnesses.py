"""Separability criteria evaluated on moment tables.

Five tests are available:

* ``simon``: det(gamma) + 1 - det A - det B + 2 det C >= 0
* ``hz``: <a+a b+b> >= |<a b+>|^2
* ``sun-A``: [Var(J_y) + 1/4] Var(K_z) >= |<J_x>|^2 / 4
* ``sun-B``: [Var(K_y) - 1/4] Var(J_z) >= |<K_x>|^2 / 4
* ``sun-fourth``: [Var(L_y) + <N_22>] Var(N_+) >= |<L_x>|^2 / 4

Every separable state satisfies all of them, so a violation beyond
``WITNESS_TOL`` certifies entanglement.  The second-order SU(2)/SU(1,1)
conditions are the partial transposes of the uncertainty relations for
``K`` and ``J`` respectively.
"""

import hashlib
import json
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import fock_core
from .closed_form import cross_check
from .operators import a, ad, b, bd, one
from .states import build_state

WITNESS_TOL = 1e-7

ENTANGLED = "entangled"
SEPARABLE_CONSISTENT = "separable-consistent"

CRITERIA = ("simon", "hz", "sun-A", "sun-B", "sun-fourth")


@dataclass(frozen=True)
class AlgebraOperators:
    J_x: object
    J_y: object
    J_z: object
    K_x: object
    K_y: object
    K_z: object
    H_x: object
    H_y: object
    N_plus: object
    L_x_tilde: object
    L_y_tilde: object
    N_22: object


@lru_cache(maxsize=1)
def algebra_operators():
    Na, Nb = ad * a, bd * b
    half, half_i = 0.5, 1 / 2j
    return AlgebraOperators(
        J_x=half * (ad * b + a * bd),
        J_y=half_i * (ad * b - a * bd),
        J_z=half * (Na - Nb),
        K_x=half * (ad * bd + a * b),
        K_y=half_i * (ad * bd - a * b),
        K_z=half * (Na + Nb + one),
        H_x=half * ((ad * bd) ** 2 + (a * b) ** 2),
        H_y=half_i * ((ad * bd) ** 2 - (a * b) ** 2),
        N_plus=0.25 * (Na + Nb),
        L_x_tilde=half * ((ad * b) ** 2 + (a * bd) ** 2),
        L_y_tilde=half_i * ((ad * b) ** 2 - (a * bd) ** 2),
        N_22=(2 * Na + one) * (2 * Nb + one),
    )


def variance(op, table):
    """<op^2> - <op>^2 for a Hermitian ``op``."""
    mean = op.expectation(table)
    return float((op * op).expectation(table).real - mean.real**2)


@dataclass(frozen=True)
class WitnessReport:
    criterion: str
    lhs: float
    rhs: float
    margin: float
    verdict: str
    inputs_hash: str
    details: dict = field(default_factory=dict)

    @property
    def entangled(self):
        return self.verdict == ENTANGLED


def _hash(values):
    blob = json.dumps(
        [[list(k), [complex(v).real, complex(v).imag]] for k, v in sorted(values.items())]
    )
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _report(criterion, lhs, rhs, used, tol, details=None):
    margin = lhs - rhs
    verdict = ENTANGLED if margin < -tol else SEPARABLE_CONSISTENT
    return WitnessReport(criterion, float(lhs), float(rhs), float(margin), verdict, _hash(used), details or {})


def simon_quantity(cov):
    g = cov.gamma
    return float(
        np.linalg.det(g) + 1 - np.linalg.det(cov.A) - np.linalg.det(cov.B) + 2 * np.linalg.det(cov.C)
    )


def simon_criterion(cov, tol=WITNESS_TOL):
    if not cov.is_symmetric():
        raise ValueError("covariance matrix is not symmetric")
    D = simon_quantity(cov)
    used = {(i, j, 0, 0): cov.gamma[i, j] for i in range(4) for j in range(4)}
    return _report("simon", D, 0.0, used, tol, {"D": D})


def _used(table, *polys):
    monos = set()
    for p in polys:
        monos.update(p.terms)
    return {m: table[m] for m in monos}


def hz_criterion(table, tol=WITNESS_TOL):
    table = table.completed()
    nanb = table[(1, 1, 1, 1)].real
    ab_dag = table[(0, 1, 1, 0)]
    used = {(1, 1, 1, 1): nanb, (0, 1, 1, 0): ab_dag}
    return _report("hz", nanb, abs(ab_dag) ** 2, used, tol, {"NaNb": nanb, "abdag": ab_dag})


def _sun(criterion, table, tol, var_op, offset, sharp_op, coherence_op):
    table = table.completed()
    v1 = variance(var_op, table)
    off = offset if not hasattr(offset, "expectation") else offset.expectation(table).real
    v2 = variance(sharp_op, table)
    coh = coherence_op.expectation(table)
    lhs = (v1 + off) * v2
    rhs = 0.25 * abs(coh) ** 2
    polys = [var_op * var_op, sharp_op * sharp_op, coherence_op]
    if hasattr(offset, "expectation"):
        polys.append(offset)
    details = {"var1": v1, "offset": off, "var2": v2, "coherence": coh}
    return _report(criterion, lhs, rhs, _used(table, *polys), tol, details)


def sun_condition_A(table, tol=WITNESS_TOL):
    ops = algebra_operators()
    return _sun("sun-A", table, tol, ops.J_y, 0.25, ops.K_z, ops.J_x)


def sun_condition_B(table, tol=WITNESS_TOL):
    ops = algebra_operators()
    return _sun("sun-B", table, tol, ops.K_y, -0.25, ops.J_z, ops.K_x)


def sun_condition_fourth(table, tol=WITNESS_TOL):
    ops = algebra_operators()
    return _sun("sun-fourth", table, tol, ops.L_y_tilde, ops.N_22, ops.N_plus, ops.L_x_tilde)


def uncertainty_relations(table):
    """Un-transposed relations that every physical state obeys.

    Returns ``{"K": (lhs, rhs), "J": (lhs, rhs)}`` for
    Var(K_y) Var(K_z) >= |<K_x>|^2/4 and Var(J_y) Var(J_z) >= |<J_x>|^2/4.
    """
    table = table.completed()
    ops = algebra_operators()
    return {
        "K": (variance(ops.K_y, table) * variance(ops.K_z, table), 0.25 * abs(ops.K_x.expectation(table)) ** 2),
        "J": (variance(ops.J_y, table) * variance(ops.J_z, table), 0.25 * abs(ops.J_x.expectation(table)) ** 2),
    }


@lru_cache(maxsize=1)
def required_monomials():
    """Every monomial the table-based criteria may look up (order <= 8)."""
    ops = algebra_operators()
    polys = [
        ops.J_y * ops.J_y, ops.K_z * ops.K_z, ops.J_x,
        ops.K_y * ops.K_y, ops.J_z * ops.J_z, ops.K_x,
        ops.L_y_tilde * ops.L_y_tilde, ops.N_plus * ops.N_plus, ops.L_x_tilde, ops.N_22,
    ]
    monos = set(fock_core.monomials(2))
    monos.add(fock_core.LadderMonomial(1, 1, 1, 1))
    for p in polys:
        monos.update(p.terms)
    monos.update([m.adjoint() for m in list(monos)])
    return tuple(sorted(monos))


def witness_table(state):
    return fock_core.moment_table(state, monos=required_monomials())


def evaluate_table(table, tol=WITNESS_TOL):
    """Run all five criteria on a moment table, in :data:`CRITERIA` order."""
    table = table.completed()
    cov = fock_core.covariance_from_table(table)
    return [
        simon_criterion(cov, tol),
        hz_criterion(table, tol),
        sun_condition_A(table, tol),
        sun_condition_B(table, tol),
        sun_condition_fourth(table, tol),
    ]


@dataclass(frozen=True)
class FullReport:
    spec: object
    cutoff: int
    tail_bound: float
    reports: list
    cross_checks: list

    def __iter__(self):
        return iter(self.reports)

    def __len__(self):
        return len(self.reports)

    def __getitem__(self, key):
        if isinstance(key, str):
            for r in self.reports:
                if r.criterion == key:
                    return r
            raise KeyError(key)
        return self.reports[key]

    def detected_by(self):
        return [r.criterion for r in self.reports if r.entangled]


def full_report(spec, cutoff=None, tol=WITNESS_TOL):
    state = build_state(spec, cutoff)
    table = witness_table(state)
    checks = cross_check(spec, state, warn=False)
    return FullReport(spec, state.cutoff, state.tail_bound, evaluate_table(table, tol), checks)
