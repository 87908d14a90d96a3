import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import dense_ops
from ngent.operators import LadderMonomial, LadderPoly, a, ad, b, bd, one

CUT = 10


def dense(poly, cutoff=CUT):
    A, B = dense_ops(cutoff)
    Ad, Bd = A.conj().T, B.conj().T
    out = np.zeros_like(A, dtype=complex)
    mp = np.linalg.matrix_power
    for (k, l, p, q), c in poly.terms.items():
        out += c * mp(Ad, k) @ mp(A, l) @ mp(Bd, p) @ mp(B, q)
    return out


small = st.integers(0, 2)
monos = st.tuples(small, small, small, small)


def low_block(mat, total):
    # truncation corrupts matrix products near the lattice edge only
    d = CUT + 1
    keep = [i * d + j for i in range(d) for j in range(d) if i <= total and j <= total]
    return mat[np.ix_(keep, keep)]


@settings(max_examples=60, deadline=None)
@given(monos, monos)
def test_product_matches_dense_matrices(m1, m2):
    p1, p2 = LadderPoly.monomial(*m1), LadderPoly.monomial(*m2)
    prod = p1 * p2
    direct = dense(p1) @ dense(p2)
    np.testing.assert_allclose(low_block(dense(prod), 3), low_block(direct, 3), atol=1e-9)


def test_canonical_commutators():
    assert a * ad - ad * a == one
    assert b * bd - bd * b == one
    assert a * bd - bd * a == LadderPoly()


def test_adjoint_and_partial_transpose():
    m = LadderMonomial(1, 2, 0, 3)
    assert m.adjoint() == (2, 1, 3, 0)
    assert m.partial_transpose() == (1, 2, 3, 0)
    assert m.order == 6
    assert (ad * b).partial_transpose() == ad * bd
    assert (2j * ad * b).adjoint() == -2j * a * bd


def test_N22_is_commutator_product():
    na, nb = ad * a, bd * b
    comm_a = a**2 * ad**2 - ad**2 * a**2
    comm_b = b**2 * bd**2 - bd**2 * b**2
    assert comm_a * comm_b * 0.25 == (2 * na + one) * (2 * nb + one)


def test_expectation_uses_table():
    table = {LadderMonomial(1, 1, 0, 0): 2.0, LadderMonomial(0, 0, 0, 0): 1.0}
    assert (ad * a + 3 * one).expectation(table) == 5.0
