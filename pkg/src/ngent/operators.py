"""Normally ordered ladder-operator polynomials for two bosonic modes.

A :class:`LadderMonomial` ``(k, l, p, q)`` stands for the normally ordered
product ``a+^k a^l b+^p b^q``.  :class:`LadderPoly` is a finite complex
linear combination of monomials, closed under products (re-normal-ordered
with Wick's rule), so that e.g. ``Jy * Jy`` can be evaluated against a
table of monomial expectation values.
"""

from math import comb, factorial
from typing import NamedTuple


class LadderMonomial(NamedTuple):
    k: int
    l: int
    p: int
    q: int

    @property
    def order(self):
        return self.k + self.l + self.p + self.q

    def adjoint(self):
        return LadderMonomial(self.l, self.k, self.q, self.p)

    def partial_transpose(self):
        """Swap the mode-B exponents: a+^k a^l b+^p b^q -> a+^k a^l b+^q b^p."""
        return LadderMonomial(self.k, self.l, self.q, self.p)


IDENTITY = LadderMonomial(0, 0, 0, 0)


def _order_mode(k, l, k2, l2):
    # (a+^k a^l)(a+^k2 a^l2) = sum_j C(l,j) C(k2,j) j! a+^(k+k2-j) a^(l+l2-j)
    out = []
    for j in range(min(l, k2) + 1):
        out.append((comb(l, j) * comb(k2, j) * factorial(j), k + k2 - j, l + l2 - j))
    return out


class LadderPoly:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for mono, c in (terms or {}).items():
            if c != 0:
                self.terms[LadderMonomial(*mono)] = complex(c)

    @classmethod
    def monomial(cls, k, l, p, q, coeff=1.0):
        return cls({LadderMonomial(k, l, p, q): coeff})

    @classmethod
    def constant(cls, c):
        return cls({IDENTITY: c})

    def __repr__(self):
        body = " + ".join(f"({c:g})*{tuple(m)}" for m, c in sorted(self.terms.items()))
        return f"LadderPoly({body or '0'})"

    def __eq__(self, other):
        if not isinstance(other, LadderPoly):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other):
        if not isinstance(other, LadderPoly):
            other = LadderPoly.constant(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return LadderPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return LadderPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LadderPoly):
            return LadderPoly({m: c * other for m, c in self.terms.items()})
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                for wa, k, l in _order_mode(m1.k, m1.l, m2.k, m2.l):
                    for wb, p, q in _order_mode(m1.p, m1.q, m2.p, m2.q):
                        key = LadderMonomial(k, l, p, q)
                        terms[key] = terms.get(key, 0) + c1 * c2 * wa * wb
        return LadderPoly(terms)

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        return self * (1.0 / other)

    def __pow__(self, n):
        out = LadderPoly.constant(1.0)
        for _ in range(n):
            out = out * self
        return out

    def adjoint(self):
        return LadderPoly({m.adjoint(): c.conjugate() for m, c in self.terms.items()})

    def partial_transpose(self):
        return LadderPoly({m.partial_transpose(): c for m, c in self.terms.items()})

    @property
    def order(self):
        return max((m.order for m in self.terms), default=0)

    def monomials(self):
        return sorted(self.terms)

    def expectation(self, table):
        """Sum of coefficient times table value; ``table`` is indexable by monomial."""
        return sum((c * table[m] for m, c in self.terms.items()), 0j)


a = LadderPoly.monomial(0, 1, 0, 0)
ad = LadderPoly.monomial(1, 0, 0, 0)
b = LadderPoly.monomial(0, 0, 0, 1)
bd = LadderPoly.monomial(0, 0, 1, 0)
one = LadderPoly.constant(1.0)


def quadratures():
    """(x_A, p_A, x_B, p_B) with x = (a + a+)/sqrt2, p = (a - a+)/(i sqrt2)."""
    s = 2 ** -0.5
    return (
        (a + ad) * s,
        (a - ad) * (-1j * s),
        (b + bd) * s,
        (b - bd) * (-1j * s),
    )
