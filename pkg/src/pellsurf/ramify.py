"""Ramification of polynomial maps q: A^1 -> A^1, t -> q(t).

At a finite point c the discriminant contribution is d_c = mult_c q'(t) and
the ramification index e_c is the vanishing order of q(t) - q(c).  At
infinity e = deg q and d is read off the series w = 1/q(1/v).  For a
separable q the contributions add up to 2 deg q - 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .algebra import Poly, field_sqrt, gcd, is_const_times_square, pth_root, squarefree_decomposition
from .errors import FieldMismatchError, InseparableError, PreconditionError, ReducibleCurveError

INFINITY = "infinity"


@dataclass(frozen=True)
class RamPoint:
    """Ramification data at the roots of ``location`` (or at infinity).

    Finite points are grouped by a monic squarefree factor of q'; ``count``
    is its degree, the number of geometric points sharing (e, d).
    """

    location: object  # monic Poly or INFINITY
    e: int
    d: int
    tame: bool
    count: int = 1

    def __post_init__(self):
        if self.d < self.e - 1:
            raise AssertionError("d < e - 1 at %s" % self.location)

    def to_json(self, var="t") -> dict:
        loc = self.location if self.location == INFINITY else self.location.to_str(var)
        return {"location": loc, "e": self.e, "d": self.d, "tame": self.tame, "count": self.count}


@dataclass(frozen=True)
class RamProfile:
    q: Poly
    points: tuple
    total: int
    hurwitz_ok: bool

    @property
    def infinity(self) -> RamPoint:
        return self.points[-1]

    @property
    def finite(self) -> tuple:
        return self.points[:-1]

    def to_json(self, var="t") -> dict:
        return {
            "q": self.q.to_str(var),
            "points": [pt.to_json(var) for pt in self.points],
            "total": self.total,
            "hurwitz": 2 * self.q.degree - 2,
            "hurwitz_ok": self.hurwitz_ok,
        }


def _check_char(q: Poly, p):
    if p is not None and p != q.field.char:
        raise FieldMismatchError("p = %s but q has coefficients in %s" % (p, q.field))
    return q.field.char


def _separable(q: Poly):
    if q.degree < 1:
        raise PreconditionError("q must be nonconstant")
    if not q.derivative():
        raise InseparableError("q' vanishes identically: q = (%s)^%d" % (pth_root(q), q.field.char), pth_root(q))


def _tame(e: int, p: int) -> bool:
    return not p or e % p != 0


def d_infinity(q: Poly) -> int:
    """Vanishing order of dw/dv for w = 1/q(1/v) = v^n / r(v), r = rev(q)."""
    n = q.degree
    field = q.field
    prec = 2 * n + 2
    r = q.reverse()
    inv0 = field.one / r.coeff(0)
    h = [inv0]  # 1/r(v) as a power series in v
    for k in range(1, prec):
        acc = field.zero
        for j in range(1, min(k, r.degree) + 1):
            acc = acc + r.coeff(j) * h[k - j]
        h.append(-acc * inv0)
    for k, a in enumerate(h):
        if a and field(n + k):
            return n + k - 1
    raise AssertionError("d_infinity beyond precision %d" % prec)


def _split_by_e(q: Poly, part: Poly):
    """Split the roots of ``part`` (roots of q') by ramification index."""
    out = []
    rest = part
    j = 2
    while rest.degree > 0:
        common = gcd(rest, q.hasse(j))
        here = rest / common
        if here.degree > 0:
            out.append((j, here))
        rest = common
        j += 1
    return out


def ramification_profile(q: Poly, p: int | None = None) -> RamProfile:
    p = _check_char(q, p)
    _separable(q)
    n = q.degree
    points = []
    dq = q.derivative()
    if dq.degree > 0:
        for d, part in sorted(squarefree_decomposition(dq).items()):
            for e, factor in _split_by_e(q, part):
                points.append(RamPoint(factor, e, d, _tame(e, p), factor.degree))
    d_inf = d_infinity(q)
    points.append(RamPoint(INFINITY, n, d_inf, _tame(n, p)))
    for pt in points:
        if pt.tame != (pt.d == pt.e - 1):
            raise AssertionError("tame but d != e - 1 at %s" % pt.location)
    total = sum(pt.d * pt.count for pt in points)
    return RamProfile(q, tuple(points), total, total == 2 * n - 2)


class LocalData(tuple):
    __slots__ = ()

    def __new__(cls, e, d):
        return super().__new__(cls, (e, d))

    e = property(lambda self: self[0])
    d = property(lambda self: self[1])


def local_data(q: Poly, c=None) -> LocalData:
    """(e_c, d_c) at a point c of k, or at infinity when c is None."""
    _separable(q)
    if c is None:
        return LocalData(q.degree, d_infinity(q))
    qs = q.shift(c)
    shifted = qs - qs.constant_term()
    e = next(i for i, a in enumerate(shifted.coeffs) if a)
    dq = qs.derivative()
    d = next(i for i, a in enumerate(dq.coeffs) if a)
    return LocalData(e, d)


@dataclass(frozen=True)
class CompositionCheck:
    point: object  # the point c1, or INFINITY
    lhs: int  # d_{c1}(q2 o q1)
    rhs: int  # d_{c2}(q2) e_{c1}(q1) + d_{c1}(q1)

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def discriminant_composition_check(q1: Poly, q2: Poly, p: int | None = None, c1=0) -> list:
    """Check d(q2 o q1) = d(q2) e(q1) + d(q1) at c1 and at infinity."""
    _check_char(q1, p)
    _check_char(q2, p)
    comp = q2(q1)
    for q in (q1, q2, comp):
        _separable(q)
    field = q1.field
    c1 = field(c1)
    c2 = q1(c1)
    e1, d1 = local_data(q1, c1)
    _, d2 = local_data(q2, c2)
    _, dc = local_data(comp, c1)
    out = [CompositionCheck(c1, dc, d2 * e1 + d1)]
    e1, d1 = local_data(q1)
    _, d2 = local_data(q2)
    _, dc = local_data(comp)
    out.append(CompositionCheck(INFINITY, dc, d2 * e1 + d1))
    return out


@dataclass(frozen=True)
class Pi1Criterion:
    passed: bool
    d_infinity: int | None
    bound: Fraction | None


def pi1_criterion(q: Poly, p: int | None = None) -> Pi1Criterion:
    """d_inf(q) < 2 (1 - 1/p) deg q; automatically passed in characteristic 0."""
    p = _check_char(q, p)
    _separable(q)
    if not p:
        return Pi1Criterion(True, None, None)
    bound = 2 * (1 - Fraction(1, p)) * q.degree
    d = d_infinity(q)
    return Pi1Criterion(d < bound, d, bound)


@dataclass(frozen=True)
class MildReport:
    mild: bool
    reasons: tuple


def mild_ramification_check(q: Poly, p: int | None = None) -> MildReport:
    p = _check_char(q, p)
    try:
        _separable(q)
    except InseparableError:
        return MildReport(False, ("q is inseparable",))
    n = q.degree
    reasons = []
    d_inf = d_infinity(q)
    expected = n if p and n % p == 0 else n - 1
    if d_inf != expected:
        reasons.append("d_inf = %d, expected %d" % (d_inf, expected))
    dq = q.derivative()
    if dq.degree > 0:
        bad = [m for m in squarefree_decomposition(dq) if m > 1]
        if bad:
            reasons.append("finite point with d = %d > 1" % max(bad))
    return MildReport(not reasons, tuple(reasons))


class PlacesAtInfinity(NamedTuple):
    count: int
    rational: bool


def places_at_infinity(f: Poly) -> PlacesAtInfinity:
    """Places at infinity of the curve v^2 = f(u)."""
    if f.degree < 1 or is_const_times_square(f):
        raise ReducibleCurveError("v^2 = %s is reducible (f is a constant times a square)" % f)
    if f.degree % 2:
        return PlacesAtInfinity(1, True)
    return PlacesAtInfinity(2, field_sqrt(f.lead, f.field) is not None)
