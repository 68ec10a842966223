from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pellsurf.algebra import GF, QQ, Poly
from pellsurf.errors import (
    DivisionByZeroError,
    NonSquareLeadError,
    OutOfScopeError,
    PrecisionError,
    PreconditionError,
)
from pellsurf.laurent import LaurentSeries, integral_part, laurent_sqrt
from pellsurf.parse import parse_poly as P
from strategies import polys

F5 = GF(5)


def test_sqrt_u2_minus_1_frozen():
    r = laurent_sqrt(P("u^2 - 1"), 7)
    # binomial series u (1 - u^-2)^(1/2)
    assert [r.coeff(e) for e in range(1, -6, -1)] == [
        1, 0, Fraction(-1, 2), 0, Fraction(-1, 8), 0, Fraction(-1, 16)
    ]
    assert str(r) == "u - 1/2*u^-1 - 1/8*u^-3 - 1/16*u^-5 + O(u^-6)"


def test_binomial_coefficients_match():
    # sqrt(u^2 + a): coefficients binom(1/2, k) a^k, an independent formula
    a = Fraction(3)
    r = laurent_sqrt(P("u^2 + 3"), 12)
    binom = Fraction(1)
    for k in range(6):
        assert r.coeff(1 - 2 * k) == binom * a**k
        binom = binom * (Fraction(1, 2) - k) / (k + 1)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([QQ, F5]).flatmap(lambda f: polys(f, 6, nonzero=True)), st.integers(3, 15))
def test_sqrt_squares_back(g, prec):
    if g.degree % 2 or g.degree < 0:
        return
    from pellsurf.algebra import field_sqrt

    if field_sqrt(g.lead, g.field) is None:
        return
    r = laurent_sqrt(g, prec)
    sq = r * r
    G = LaurentSeries.from_poly(g)
    assert sq.agrees_with(G)
    assert sq.prec >= prec  # squaring keeps the relative precision
    assert r.lead == field_sqrt(g.lead, g.field)


def test_sqrt_errors():
    with pytest.raises(OutOfScopeError):
        laurent_sqrt(P("u^3 - u"), 5)
    with pytest.raises(NonSquareLeadError):
        laurent_sqrt(P("2*u^2 - 1"), 5)
    with pytest.raises(NonSquareLeadError):
        laurent_sqrt(P("2*u^2 + 1", F5), 5)  # 2 is not a square mod 5
    with pytest.raises(PreconditionError):
        laurent_sqrt(Poly([]), 5)


def test_precision_tracking():
    r = laurent_sqrt(P("u^2 - 1"), 4)  # known down to u^-2
    assert r.low == -2
    with pytest.raises(PrecisionError):
        r.coeff(-3)
    x = LaurentSeries.from_poly(P("u^3"))
    prod = x * r
    assert prod.low == 1  # u^3 * O(u^-3) = O(u^0)
    with pytest.raises(PrecisionError):
        integral_part(prod)


def test_exact_series():
    x = LaurentSeries.from_poly(P("u^2 + 1"))
    assert x.exact and x.coeff(-10) == 0
    assert integral_part(x) == P("u^2 + 1")
    assert str(x) == "u^2 + 1"


def test_invert():
    x = LaurentSeries.from_poly(P("u - 1"))
    with pytest.raises(PreconditionError):
        x.invert()
    inv = x.invert(6)  # u^-1 + u^-2 + ...
    assert [inv.coeff(e) for e in range(-1, -7, -1)] == [1] * 6
    assert (inv * x).agrees_with(LaurentSeries.monomial(0, QQ))
    with pytest.raises(DivisionByZeroError):
        LaurentSeries.from_poly(Poly([])).invert(3)
    zero_ish = laurent_sqrt(P("u^2"), 4) - LaurentSeries.from_poly(P("u"))
    assert zero_ish.is_zero()
    with pytest.raises(PrecisionError):
        zero_ish.invert()


@settings(max_examples=50, deadline=None)
@given(polys(QQ, 4, nonzero=True), polys(QQ, 4, nonzero=True), st.integers(2, 10))
def test_from_rational_times_denominator(p, q, prec):
    s = LaurentSeries.from_rational(p, q, prec)
    back = s * LaurentSeries.from_poly(q)
    assert back.agrees_with(LaurentSeries.from_poly(p))


def test_field_mismatch():
    from pellsurf.errors import FieldMismatchError

    with pytest.raises(FieldMismatchError):
        LaurentSeries.from_poly(P("u")) + LaurentSeries.from_poly(P("u", F5))
