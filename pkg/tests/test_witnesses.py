import numpy as np
import pytest

from ngent import witnesses as w
from ngent.fock_core import CovarianceMatrix, FockState, MomentTable, moment_table, partial_transpose
from ngent.states import BSN, TMSN, build_state


def table_for(state):
    return w.witness_table(state)


def product_state(rng, cutoff=4):
    u = rng.normal(size=cutoff + 1) + 1j * rng.normal(size=cutoff + 1)
    v = rng.normal(size=cutoff + 1) + 1j * rng.normal(size=cutoff + 1)
    u[-2:] = 0
    v[-2:] = 0
    amps = np.outer(u, v)
    return FockState(amps / np.linalg.norm(amps))


def test_required_monomials_cover_fourth_order():
    monos = set(w.required_monomials())
    assert (2, 2, 2, 2) in monos and (4, 0, 0, 4) in monos
    assert all(sum(m) <= 8 for m in monos)


def test_vacuum_is_separable_consistent():
    reports = w.evaluate_table(table_for(FockState.vacuum(4)))
    assert [r.criterion for r in reports] == list(w.CRITERIA)
    assert not any(r.entangled for r in reports)


def test_product_states_never_flagged(rng):
    for _ in range(10):
        reports = w.evaluate_table(table_for(product_state(rng)))
        assert not any(r.entangled for r in reports), [r.margin for r in reports]


def test_tms_vacuum_detected_by_simon():
    rep = w.full_report(TMSN(0, 0, 0.7))
    assert rep["simon"].entangled
    assert rep["simon"].details["D"] < 0


@pytest.mark.parametrize("spec,expected", [
    (TMSN(3, 3, 0.7), {"sun-B"}),
    (BSN(1, 0, 1.0), {"hz", "sun-A"}),
    (BSN(1, 1, 1.0), {"sun-fourth"}),
    (BSN(2, 2, 1.0), {"sun-fourth"}),
    (BSN(0, 0, 1.0), set()),
])
def test_detection_sets(spec, expected):
    assert set(w.full_report(spec).detected_by()) == expected


def test_imaginary_xi_escapes_sun_B():
    # <K_x> vanishes when xi is imaginary, so the right side is zero
    rep = w.full_report(TMSN(1, 1, 0.5j))
    assert not rep["sun-B"].entangled
    assert rep["sun-B"].rhs == pytest.approx(0, abs=1e-20)


def test_report_fields_and_lookup():
    rep = w.full_report(BSN(2, 0, 1.0))
    assert len(rep) == 5
    assert rep[1] is rep["hz"]
    with pytest.raises(KeyError):
        rep["nope"]
    r = rep["hz"]
    assert r.margin == pytest.approx(r.lhs - r.rhs)
    assert len(r.inputs_hash) == 16


def test_inputs_hash_is_stable():
    a = w.full_report(BSN(2, 1, 0.5))
    b = w.full_report(BSN(2, 1, 0.5))
    assert [r.inputs_hash for r in a] == [r.inputs_hash for r in b]
    c = w.full_report(BSN(2, 1, 0.6))
    assert a["hz"].inputs_hash != c["hz"].inputs_hash


def test_tolerance_controls_verdict():
    table = MomentTable({(1, 1, 1, 1): 1.0, (0, 1, 1, 0): 1.0 + 1e-5}).completed()
    assert w.hz_criterion(table).entangled
    assert not w.hz_criterion(table, tol=1e-3).entangled


def test_simon_rejects_asymmetric_gamma():
    g = np.eye(4)
    g[0, 1] = 0.3
    with pytest.raises(ValueError):
        w.simon_criterion(CovarianceMatrix(g))


def test_simon_quantity_of_vacuum():
    assert w.simon_quantity(CovarianceMatrix(np.eye(4))) == pytest.approx(0)


def test_sun_B_is_partial_transpose_of_J_relation():
    # Var(K_y)^PT = Var(J_y) + 1/4 on a generic state
    rng = np.random.default_rng(7)
    amps = rng.normal(size=(7, 7)) + 1j * rng.normal(size=(7, 7))
    amps[5:, :] = 0
    amps[:, 5:] = 0
    state = FockState(amps / np.linalg.norm(amps))
    t = moment_table(state, max_order=4).completed()
    pt = partial_transpose(t)
    ops = w.algebra_operators()
    assert w.variance(ops.K_y, pt) == pytest.approx(w.variance(ops.J_y, t) + 0.25, abs=1e-10)
    # number operators are unchanged by the transpose
    assert w.variance(ops.K_z, pt) == pytest.approx(w.variance(ops.K_z, t), abs=1e-10)


def test_uncertainty_relations_hold():
    for spec in (TMSN(2, 1, 0.6), BSN(3, 1, 0.4 + 0.4j), TMSN(0, 0, 0.9j)):
        rel = w.uncertainty_relations(w.witness_table(build_state(spec)))
        for lhs, rhs in rel.values():
            assert lhs >= rhs - 1e-9

