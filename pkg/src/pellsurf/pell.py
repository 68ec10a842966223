"""Polynomial Pell equations x^2 - g(u) y^2 = c.

Solutions are identified with units x + y*sqrt(g); they form a group under
multiplication.  A nontrivial solution exists iff the two points at infinity
of v^2 = g differ by a torsion point of the Jacobian, and the continued
fraction of sqrt(g) finds the generator among its convergents.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .algebra import (
    Field,
    Poly,
    field_sqrt,
    is_const_times_square,
    multiplicity_profile,
    poly_sqrt,
    pth_root,
)
from .contfrac import default_start_prec, iter_sqrt_quotients
from .errors import (
    DescentShapeError,
    FieldMismatchError,
    InconsistentStateError,
    PrecisionError,
    PreconditionError,
    SearchSpaceError,
)
from .laurent import LaurentSeries, laurent_sqrt

DEFAULT_MAX_STEPS = 64
BRUTE_FORCE_LIMIT = 10**7


def default_max_steps() -> int:
    """Continued-fraction step budget; ``PELLSURF_MAX_STEPS`` overrides it."""
    value = os.environ.get("PELLSURF_MAX_STEPS")
    if value:
        try:
            n = int(value)
        except ValueError:
            raise PreconditionError("PELLSURF_MAX_STEPS must be an integer, got %r" % value) from None
        if n < 1:
            raise PreconditionError("PELLSURF_MAX_STEPS must be positive")
        return n
    return DEFAULT_MAX_STEPS


@dataclass(frozen=True)
class PellProblem:
    g: Poly

    def __post_init__(self):
        if self.g.is_zero():
            raise PreconditionError("g must be nonzero")

    @property
    def field(self) -> Field:
        return self.g.field

    def __str__(self):
        return "x^2 - (%s)*y^2 = 1 over %s" % (self.g, self.field)


@dataclass(frozen=True)
class PellSolution:
    """A pair (x, y) with x^2 - g y^2 = c for a nonzero constant c."""

    x: Poly
    y: Poly
    c: object
    g: Poly

    def __post_init__(self):
        if not (self.x.field == self.y.field == self.g.field):
            raise FieldMismatchError("solution components over different fields")
        norm = self.x * self.x - self.g * self.y * self.y
        if norm.degree != 0 or norm.constant_term() != self.c:
            raise PreconditionError("(%s, %s) does not satisfy x^2 - g*y^2 = %s" % (self.x, self.y, self.c))

    @classmethod
    def of(cls, x: Poly, y: Poly, pb) -> "PellSolution":
        g = pb.g if isinstance(pb, PellProblem) else pb
        c = is_solution(x, y, g)
        if c is None:
            raise PreconditionError("(%s, %s) is not a solution for g = %s" % (x, y, g))
        return cls(x, y, c, g)

    @property
    def field(self) -> Field:
        return self.g.field

    def is_trivial(self) -> bool:
        return self.y.is_zero()

    def __str__(self):
        return "(%s, %s)" % (self.x, self.y)


def is_solution(x: Poly, y: Poly, pb):
    """Return c if x^2 - g y^2 is a nonzero constant c, else None."""
    g = pb.g if isinstance(pb, PellProblem) else pb
    norm = x * x - g * y * y
    if norm.degree == 0:
        return norm.constant_term()
    return None


# -- structure ---------------------------------------------------------------------


class Structure(str, Enum):
    ODD_DEGREE = "odd-degree"
    NON_SQUARE_LEAD = "non-square-leading-coefficient"
    CONST_TIMES_SQUARE = "constant-times-square"
    CANDIDATE = "candidate"


def structural_classify(pb: PellProblem) -> Structure:
    g = pb.g
    if g.degree % 2:
        return Structure.ODD_DEGREE
    if field_sqrt(g.lead, g.field) is None:
        return Structure.NON_SQUARE_LEAD
    if is_const_times_square(g):
        return Structure.CONST_TIMES_SQUARE
    return Structure.CANDIDATE


@dataclass(frozen=True)
class Solved:
    fundamental: PellSolution  # norm 1
    generator: PellSolution  # first convergent with constant norm
    steps_used: int
    status = "solved"


@dataclass(frozen=True)
class StructurallyUnsolvable:
    reason: Structure
    status = "structural"


@dataclass(frozen=True)
class UnknownWithinBound:
    steps: int
    status = "unknown"


# -- group law -----------------------------------------------------------------------


def _same_g(s1: PellSolution, s2: PellSolution):
    if s1.g != s2.g:
        raise PreconditionError("solutions of different Pell equations")


def identity(pb) -> PellSolution:
    g = pb.g if isinstance(pb, PellProblem) else pb
    return PellSolution(Poly([1], g.field), Poly([], g.field), g.field.one, g)


def group_mul(s1: PellSolution, s2: PellSolution) -> PellSolution:
    """(x1 + y1 sqrt g)(x2 + y2 sqrt g)."""
    _same_g(s1, s2)
    g = s1.g
    return PellSolution(
        s1.x * s2.x + g * s1.y * s2.y,
        s1.x * s2.y + s2.x * s1.y,
        s1.c * s2.c,
        g,
    )


def conjugate(s: PellSolution) -> PellSolution:
    return PellSolution(s.x, -s.y, s.c, s.g)


def inverse(s: PellSolution) -> PellSolution:
    inv = s.field.one / s.c
    return PellSolution(s.x * inv, -s.y * inv, inv, s.g)


def negate(s: PellSolution) -> PellSolution:
    return PellSolution(-s.x, -s.y, s.c, s.g)


def scale(s: PellSolution, lam) -> PellSolution:
    lam = s.field(lam)
    return PellSolution(s.x * lam, s.y * lam, s.c * lam * lam, s.g)


def power(s: PellSolution, n: int) -> PellSolution:
    """s^n by repeated squaring; negative n uses the group inverse."""
    if n < 0:
        return power(inverse(s), -n)
    result = identity(s.g)
    base = s
    while n:
        if n & 1:
            result = group_mul(result, base)
        n >>= 1
        if n:
            base = group_mul(base, base)
    return result


def power_binomial(s: PellSolution, n: int) -> PellSolution:
    """s^n from the binomial expansion of (x + y sqrt g)^n."""
    if n < 0:
        conj = power_binomial(conjugate(s), -n)
        inv = s.field.one / s.c ** (-n)
        return PellSolution(conj.x * inv, conj.y * inv, conj.c * inv * inv, s.g)
    field = s.field
    x = Poly([], field)
    y = Poly([], field)
    gpow = Poly([1], field)
    for i in range(n // 2 + 1):
        yy = s.y ** (2 * i) * gpow
        x = x + s.x ** (n - 2 * i) * yy * math.comb(n, 2 * i)
        if 2 * i + 1 <= n:
            y = y + s.x ** (n - 2 * i - 1) * yy * s.y * math.comb(n, 2 * i + 1)
        gpow = gpow * s.g
    return PellSolution(x, y, s.c**n, s.g)


def normalize_to_unit_norm(s: PellSolution) -> PellSolution:
    """A solution of norm 1 built from ``s``.

    When c is a square r^2 the pair is divided by r, which keeps the degree;
    otherwise (x + y sqrt g)^2 / c is used.
    """
    if s.c == 1:
        return s
    r = field_sqrt(s.c, s.field)
    if r is not None:
        return scale(s, s.field.one / r)
    sq = group_mul(s, s)
    inv = s.field.one / s.c
    return PellSolution(sq.x * inv, sq.y * inv, sq.c * inv * inv, s.g)


def canonical(s: PellSolution) -> PellSolution:
    """Representative of {+-s, conjugates} with a pole on the canonical branch.

    Among (+-x, +-y): x + y sqrt(g) has its pole on the branch whose leading
    coefficient is the canonical root, and y has a positive leading
    coefficient (1..(p-1)/2 over F_p).
    """
    field = s.field
    x, y = s.x, s.y
    if y.is_zero():
        if x and not field.is_positive(x.lead):
            x = -x
        return PellSolution(x, y, s.c, s.g)
    root = field_sqrt(s.g.lead, field) if s.g.degree % 2 == 0 else None
    if root is not None and x.degree == y.degree + s.g.degree // 2 and x.lead != root * y.lead:
        y = -y  # conjugate: move the pole onto the canonical branch
    if not field.is_positive(y.lead):
        x, y = -x, -y
    return PellSolution(x, y, s.c, s.g)


# -- solving ---------------------------------------------------------------------------


def solve_pell(pb: PellProblem, max_steps: int | None = None):
    """Decide x^2 - g y^2 = 1 by scanning the convergents of sqrt(g)."""
    if max_steps is None:
        max_steps = default_max_steps()
    structure = structural_classify(pb)
    if structure is not Structure.CANDIDATE:
        return StructurallyUnsolvable(structure)
    g = pb.g
    field = g.field
    max_prec = 4 * max_steps * g.degree + default_start_prec(g)
    p_prev, q_prev = Poly([1], field), Poly([], field)
    p_cur = q_cur = None
    for n, a in enumerate(iter_sqrt_quotients(g, max_prec=max_prec)):
        if n >= max_steps:
            break
        if p_cur is None:
            p_cur, q_cur = a, Poly([1], field)
        else:
            p_prev, p_cur = p_cur, a * p_cur + p_prev
            q_prev, q_cur = q_cur, a * q_cur + q_prev
        c = is_solution(p_cur, q_cur, g)
        if c is not None:
            gen = canonical(PellSolution(p_cur, q_cur, c, g))
            fund = canonical(normalize_to_unit_norm(gen))
            return Solved(fund, gen, n + 1)
    return UnknownWithinBound(max_steps)


def torsion_order(pb: PellProblem, max_steps: int | None = None) -> int | None:
    """Order of [P1 - P2] in the Jacobian: the degree of the generator's x."""
    verdict = solve_pell(pb, max_steps)
    if isinstance(verdict, Solved):
        return verdict.generator.x.degree
    return None


class IndexResult(NamedTuple):
    index: int
    inverse: bool  # s is (a sign times) f^(-index)
    sign: int


def fundamental_index(s: PellSolution, pb: PellProblem | None = None, max_steps: int | None = None):
    """The k >= 1 with s = +-f^(+-k) for the norm-1 fundamental f, or None."""
    pb = pb or PellProblem(s.g)
    if s.g != pb.g:
        raise PreconditionError("solution does not belong to this problem")
    if s.is_trivial() or s.c != 1:
        raise PreconditionError("fundamental index needs a nontrivial norm-1 solution")
    verdict = solve_pell(pb, max_steps)
    if not isinstance(verdict, Solved):
        return None
    f = verdict.fundamental
    d, r = divmod(s.x.degree, f.x.degree)
    if r:
        return None
    P = power(f, d)
    for sign in (1, -1):
        if s.x == P.x * sign:
            if s.y == P.y * sign:
                return IndexResult(d, False, sign)
            if s.y == -P.y * sign:
                return IndexResult(d, True, sign)
    raise InconsistentStateError("deg x is %d times the fundamental's but %s is not a power of %s" % (d, s, f))


class DivisorAtInfinity(NamedTuple):
    m1: int  # order at P1 (canonical branch); positive = zero
    m2: int  # order at P2


def divisor_at_infinity(s: PellSolution) -> DivisorAtInfinity:
    """Orders of x + y sqrt(g) at the two points at infinity."""
    g = s.g
    if g.degree % 2 or field_sqrt(g.lead, g.field) is None:
        raise PreconditionError("the points at infinity are not rational for g = %s" % g)
    if s.y.is_zero():
        return DivisorAtInfinity(0, 0)
    prec = 2 * max(s.x.degree, 1) + g.degree + 8
    for _ in range(12):
        root = laurent_sqrt(g, prec)
        x = LaurentSeries.from_poly(s.x)
        y = LaurentSeries.from_poly(s.y)
        plus = x + y * root
        minus = x - y * root
        if not plus.is_zero() and not minus.is_zero():
            m1, m2 = -plus.top, -minus.top
            if m1 + m2 != 0:
                raise InconsistentStateError("divisor at infinity (%d, %d) is not antisymmetric" % (m1, m2))
            return DivisorAtInfinity(m1, m2)
        prec *= 2
    raise PrecisionError("could not separate x +- y sqrt(g) from zero")


# -- oracle and characteristic p -----------------------------------------------------------


def _monic_polys(field, d):
    """All monic polynomials of degree d over a finite field."""
    p = field.p
    for k in range(p**d):
        cs = []
        for _ in range(d):
            cs.append(k % p)
            k //= p
        yield Poly(cs + [1], field)


def brute_force_solve(pb: PellProblem, deg_bound: int):
    """Minimal nontrivial norm-1 solution with deg y <= deg_bound, by enumeration.

    For each monic y and each c in F_p*, g y^2 + c is tested for being a
    square x^2; hits of square norm are rescaled, others squared.
    """
    field = pb.field
    if not field.char:
        raise PreconditionError("brute force search needs a finite field")
    if field.p ** (deg_bound + 1) > BRUTE_FORCE_LIMIT:
        raise SearchSpaceError("p^(deg_bound+1) = %d exceeds %d" % (field.p ** (deg_bound + 1), BRUTE_FORCE_LIMIT))
    g = pb.g
    m = g.degree // 2 if g.degree % 2 == 0 else None
    units = [c for c in field.elements() if c]
    best = None
    for d in range(deg_bound + 1):
        if best is not None and m is not None and d + m > best.x.degree:
            break
        for y in _monic_polys(field, d):
            h = g * y * y
            for c in units:
                x = poly_sqrt(h + c)
                if x is None:
                    continue
                sol = canonical(normalize_to_unit_norm(PellSolution(x, y, c, g)))
                if sol.is_trivial():
                    continue
                if best is None or sol.x.degree < best.x.degree:
                    best = sol
    return best


def pth_power_descent(s: PellSolution, g: Poly) -> PellSolution:
    """Given x^2 - g^p y^2 = 1 over F_p, return (x2, y2) with x = x2^p, y = y2^p."""
    p = g.field.char
    if not p:
        raise PreconditionError("descent needs positive characteristic")
    gp = g**p
    if s.g != gp or is_solution(s.x, s.y, gp) != 1:
        raise PreconditionError("input must solve x^2 - g^%d y^2 = 1" % p)
    x2, y2 = pth_root(s.x), pth_root(s.y)
    if x2 is None or y2 is None:
        raise DescentShapeError("(%s, %s) is not a pair of %d-th powers" % (s.x, s.y, p))
    if is_solution(x2, y2, g) != 1:
        raise InconsistentStateError("descended pair does not solve x^2 - g y^2 = 1")
    return PellSolution(x2, y2, g.field.one, g)


@dataclass(frozen=True)
class SimpleRootsCertificate:
    branch: str  # "simple-roots" or "pth-power"
    simple_roots: int
    holds: bool
    pth_root: Poly | None = None
    center: object = None  # the two simple roots are center +- sqrt(spread)
    spread: object = None
    chebyshev_degree: int | None = None  # x(r v + center) = +-T_n(v) when sqrt(spread) = r exists


def simple_roots_certificate(s: PellSolution) -> SimpleRootsCertificate:
    """Either x is a p-th power or x^2 - 1 has at least two simple roots."""
    if s.is_trivial() or s.c != 1:
        raise PreconditionError("certificate needs a nontrivial norm-1 solution")
    field = s.field
    x = s.x
    if not x.derivative():
        return SimpleRootsCertificate("pth-power", 0, pth_root(x) is not None, pth_root(x))
    prof = multiplicity_profile(x * x - 1)
    n = prof.simple_roots
    if n != 2:
        return SimpleRootsCertificate("simple-roots", n, n >= 2)
    h = prof.parts[1]  # monic quadratic
    center = -h.coeff(1) / 2
    spread = center * center - h.coeff(0)
    cheb = None
    r = field_sqrt(spread, field)
    if r is not None:
        from .surfaces import chebyshev_pair

        X = x(Poly([center, r], field))
        Tn, _ = chebyshev_pair(X.degree, field)
        if X != Tn and X != -Tn:
            raise InconsistentStateError("two simple roots but x is not a Chebyshev polynomial")
        cheb = X.degree
    return SimpleRootsCertificate("simple-roots", 2, True, None, center, spread, cheb)
