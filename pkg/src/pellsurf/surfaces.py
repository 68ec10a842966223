"""Pell surfaces S_g = (x^2 - g(u) y^2 = 1) over the affine u-line.

Affine lines on S_g are vertical (u = root of g, x = +-1) or sections coming
from solutions of the Pell equation.  This module enumerates them, builds the
Chebyshev sections of S_2 = (x^2 - (u^2 - 1) y^2 = 1), tests fibers for
cyclotomic behaviour and checks base change instance by instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .algebra import (
    QQ,
    Field,
    Poly,
    field_spec_string,
    is_const_times_square,
    radical,
    rational_roots,
)
from .errors import DegenerateError, OutOfScopeError, PreconditionError
from .pell import (
    PellProblem,
    PellSolution,
    Solved,
    StructurallyUnsolvable,
    canonical,
    is_solution,
    power,
    solve_pell,
)


@dataclass(frozen=True)
class PellSurface:
    pb: PellProblem

    @classmethod
    def of(cls, g: Poly) -> "PellSurface":
        return cls(PellProblem(g))

    @property
    def g(self) -> Poly:
        return self.pb.g

    def contains(self, x, y, u) -> bool:
        """Whether the point (or parametrized curve) satisfies x^2 - g(u) y^2 = 1."""
        return x * x - self.g(u) * y * y == 1


# -- classification -----------------------------------------------------------------


class SpecialCase(str, Enum):
    DEG0 = "Deg0"
    DEG1_BASE = "Deg1Base"
    POWER_OF_LINEAR = "PowerOfLinear"
    CONST_TIMES_SQUARE = "ConstTimesSquare"
    DEG2 = "Deg2"


class LogKodaira(str, Enum):
    MINUS_INFINITY = "-inf"
    ZERO = "0"
    ONE = "1"


@dataclass(frozen=True)
class SurfaceClassification:
    special_case: SpecialCase | None
    log_kodaira: LogKodaira
    const_times_square: bool


def classify_surface(g: Poly) -> SurfaceClassification:
    if g.is_zero():
        raise PreconditionError("g must be nonzero")
    d = g.degree
    cts = is_const_times_square(g)
    if d == 0:
        case = SpecialCase.DEG0
    elif d == 1:
        case = SpecialCase.DEG1_BASE
    elif radical(g).degree == 1:
        case = SpecialCase.POWER_OF_LINEAR
    elif cts:
        case = SpecialCase.CONST_TIMES_SQUARE
    elif d == 2:
        case = SpecialCase.DEG2
    else:
        case = None
    if d <= 1:
        kappa = LogKodaira.MINUS_INFINITY
    elif case is SpecialCase.POWER_OF_LINEAR or d == 2:
        kappa = LogKodaira.ZERO
    else:
        kappa = LogKodaira.ONE
    return SurfaceClassification(case, kappa, cts)


# -- affine lines ---------------------------------------------------------------------


@dataclass(frozen=True)
class AffineLine:
    """A line t -> (x(t), y(t), u(t)) on S_g.

    Vertical lines over roots outside k are grouped: ``factor`` is the
    polynomial whose roots alpha give the lines (+-1, t, alpha), and
    ``count`` is the number of geometric lines in the record.
    """

    kind: str  # "vertical" | "trivial" | "section"
    sign: int
    x: Poly | None
    y: Poly | None
    u: Poly | None
    n: int | None = None  # signed power of the fundamental for sections
    definition_field: str = ""
    factor: Poly | None = None
    count: int = 1

    def to_json(self, var="t") -> dict:
        out = {
            "kind": self.kind,
            "n": self.n,
            "sign": self.sign,
            "x": None if self.x is None else self.x.to_str(var),
            "y": None if self.y is None else self.y.to_str(var),
            "u": None if self.u is None else self.u.to_str(var),
            "definition_field": self.definition_field,
        }
        if self.factor is not None:
            out["factor"] = self.factor.to_str("alpha")
            out["count"] = self.count
        return out


@dataclass(frozen=True)
class LineEnumeration:
    lines: tuple
    verdict: object
    complete: bool
    caveat: str

    @property
    def geometric_count(self) -> int:
        return sum(line.count for line in self.lines)


def _check_line(g: Poly, line: AffineLine):
    if line.x is not None:
        if line.x * line.x - g(line.u) * line.y * line.y != 1:
            raise AssertionError("line %r is not on the surface" % (line,))
    elif g % line.factor:
        raise AssertionError("grouped vertical factor does not divide g")


def vertical_lines(g: Poly) -> list:
    field = g.field
    t = Poly.gen(field)
    fname = field_spec_string(field) if field.char else "Q"
    lines = []
    rest = radical(g)
    for r in rational_roots(g):
        rest = rest / Poly([-r, 1], field)
        for sign in (1, -1):
            lines.append(AffineLine("vertical", sign, Poly([sign], field), t, Poly([r], field), None, fname))
    if rest.degree > 0:
        for sign in (1, -1):
            lines.append(
                AffineLine("vertical", sign, None, None, None, None, "%s(alpha)" % fname, rest, rest.degree)
            )
    return lines


def section_line(s: PellSolution, n: int, sign: int) -> AffineLine:
    field = s.field
    t = Poly.gen(field)
    fname = field_spec_string(field) if field.char else "Q"
    return AffineLine("section", sign, s.x * sign, s.y * sign, t, n, fname)


def enumerate_lines(S, n_max: int = 2, max_steps: int | None = None) -> LineEnumeration:
    """Obvious lines plus the sections +-f^(+-n), 1 <= n <= n_max."""
    S = S if isinstance(S, PellSurface) else PellSurface.of(S)
    g = S.g
    if g.degree % 2:
        raise OutOfScopeError("deg g = %d is odd; lines need not be sections there" % g.degree)
    field = g.field
    t = Poly.gen(field)
    fname = field_spec_string(field) if field.char else "Q"
    lines = vertical_lines(g)
    for sign in (1, -1):
        lines.append(AffineLine("trivial", sign, Poly([sign], field), Poly([], field), t, 0, fname))
    verdict = solve_pell(S.pb, max_steps)
    if isinstance(verdict, Solved):
        f = verdict.fundamental
        for n in range(1, n_max + 1):
            for k in (n, -n):
                s = power(f, k)
                for sign in (1, -1):
                    lines.append(section_line(s, k, sign))
        complete = True
        caveat = "every line is vertical or +-f^k; sections listed for |k| <= %d" % n_max
    elif isinstance(verdict, StructurallyUnsolvable):
        complete = True
        caveat = "no nontrivial solutions (%s): only the obvious lines" % verdict.reason.value
    else:
        complete = False
        caveat = "solvability unknown within %d steps: sections may be missing" % verdict.steps
    for line in lines:
        _check_line(g, line)
    return LineEnumeration(tuple(lines), verdict, complete, caveat)


# -- S_2 and Chebyshev polynomials ------------------------------------------------------


def chebyshev_pair(n: int, field: Field = QQ):
    """(T_n, U_{n-1}) by the three-term recurrences."""
    if n < 1:
        raise PreconditionError("n must be at least 1")
    t = Poly.gen(field)
    one = Poly([1], field)
    T_prev, T = one, t
    U_prev, U = Poly([], field), one  # U_{-1}, U_0
    for _ in range(n - 1):
        T_prev, T = T, t * T * 2 - T_prev
        U_prev, U = U, t * U * 2 - U_prev
    return T, U


def s2_problem(field: Field = QQ) -> PellProblem:
    return PellProblem(Poly([-1, 0, 1], field))


def line_L_intersections(n_max: int, sign: int = 1) -> list:
    """Where the sections +-Sigma_n of S_2 cross u = 1: (x_n(1), y_n(1), 1)."""
    if n_max < 1:
        raise PreconditionError("n_max must be at least 1")
    base = PellSolution.of(Poly([0, 1]), Poly([1]), s2_problem())
    pts = []
    for n in range(1, n_max + 1):
        s = power(base, n)
        x1, y1 = s.x(1) * sign, s.y(1) * sign
        if (x1, y1) != (sign, sign * n):
            raise AssertionError("y_%d(1) = %s, expected %d" % (n, y1, n))
        pts.append((x1, y1, QQ.one))
    return pts


# -- cyclotomic fibers --------------------------------------------------------------------


def _qmul(a, b, D):
    return (a[0] * b[0] + D * a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def is_cyclotomic_fiber(S, f: PellSolution, b, order_bound: int = 1000):
    """Multiplicative order of z = x(b) + y(b) w in k[w]/(w^2 - g(b)), or None.

    Over F_p the order is always finite and is computed exactly.
    """
    S = S if isinstance(S, PellSurface) else PellSurface.of(S)
    field = S.g.field
    b = field(b)
    D = S.g(b)
    if not D:
        raise DegenerateError("g(%s) = 0: the fiber is singular" % b)
    z = (f.x(b), f.y(b))
    one = (field.one, field.zero)
    bound = order_bound if not field.char else field.p**2
    acc = z
    for n in range(1, bound + 1):
        if acc == one:
            return n
        acc = _qmul(acc, z, D)
    return None


# -- base change --------------------------------------------------------------------------


@dataclass(frozen=True)
class BaseChangeReport:
    status: str  # "equal" | "different" | "inconclusive"
    base: object
    composed: object
    substituted: PellSolution | None  # canonical form of f(q(t))

    @property
    def equal(self) -> bool:
        return self.status == "equal"


def verify_base_change(g: Poly, q: Poly, max_steps: int | None = None) -> BaseChangeReport:
    """Solve for g and for g(q(t)) independently and compare f(q) with the latter."""
    if q.degree < 1:
        raise PreconditionError("q must be nonconstant")
    if g.degree % 2:
        raise OutOfScopeError("g must have even degree")
    base = solve_pell(PellProblem(g), max_steps)
    gq = g(q)
    composed = solve_pell(PellProblem(gq), max_steps)
    if not isinstance(base, Solved) or not isinstance(composed, Solved):
        if isinstance(base, StructurallyUnsolvable) and isinstance(composed, StructurallyUnsolvable):
            return BaseChangeReport("equal", base, composed, None)
        return BaseChangeReport("inconclusive", base, composed, None)
    f = base.fundamental
    sub = canonical(PellSolution(f.x(q), f.y(q), f.c, gq))
    status = "equal" if sub == composed.fundamental else "different"
    return BaseChangeReport(status, base, composed, sub)


# -- degree 3 -------------------------------------------------------------------------------


@dataclass(frozen=True)
class DoubleSection:
    c: object
    x: Poly
    y: Poly
    u: Poly
    trivial: bool
    verified: bool


def double_section_deg3(g: Poly, c, aux: PellSolution) -> DoubleSection:
    """t -> (x_c(t^2+c), t y_c(t^2+c), t^2+c) from a solution for (u - c) g."""
    if g.degree != 3:
        raise PreconditionError("g must be cubic")
    field = g.field
    c = field(c)
    h = Poly([-c, 1], field) * g
    if aux.g != h or is_solution(aux.x, aux.y, h) != 1:
        raise PreconditionError("auxiliary pair does not solve x^2 - (u - c) g y^2 = 1")
    t = Poly.gen(field)
    u = t * t + c
    x = aux.x(u)
    y = t * aux.y(u)
    verified = x * x - g(u) * y * y == 1
    if not verified:
        raise AssertionError("double section fails its identity")
    return DoubleSection(c, x, y, u, aux.is_trivial(), verified)


def scan_double_sections(g: Poly, cs=None, max_steps: int | None = None) -> list:
    """Try each c (all of F_p by default); return (c, DoubleSection) for the solvable ones."""
    field = g.field
    if cs is None:
        if not field.char:
            raise PreconditionError("over Q give the values of c to scan")
        cs = field.elements()
    out = []
    for c in cs:
        c = field(c)
        h = Poly([-c, 1], field) * g
        verdict = solve_pell(PellProblem(h), max_steps)
        if isinstance(verdict, Solved):
            out.append((c, double_section_deg3(g, c, verdict.fundamental)))
    return out


# -- endomorphisms --------------------------------------------------------------------------


@dataclass(frozen=True)
class PowerMap:
    n: int


@dataclass(frozen=True)
class TranslationBy:
    section: PellSolution


@dataclass(frozen=True)
class Inverse:
    pass


@dataclass(frozen=True)
class BaseAutoLift:
    """u -> sigma(u) for a linear sigma with g(sigma(u)) = r^2 g(u)."""

    sigma: Poly
    r: object


@dataclass(frozen=True)
class ChebyshevMap:
    """The rational self-map (x, y, t) -> (x, y / U_{n-1}(t), T_n(t)) of S_2."""

    n: int


def endo_apply(kind, S, point):
    """Apply a self-map of S_g to a point (x, y, u).

    Coordinates may be field elements or polynomials in t (a parametrized curve).
    """
    S = S if isinstance(S, PellSurface) else PellSurface.of(S)
    g = S.g
    x, y, u = point
    if not S.contains(x, y, u):
        raise PreconditionError("point is not on the surface")
    G = g(u)
    if isinstance(kind, Inverse):
        out = (x, -y, u)
    elif isinstance(kind, PowerMap):
        n = kind.n
        if n < 0:
            y, n = -y, -n
        acc = (x * 0 + 1, y * 0)
        base = (x, y)
        while n:
            if n & 1:
                acc = _qmul(acc, base, G)
            n >>= 1
            if n:
                base = _qmul(base, base, G)
        out = (acc[0], acc[1], u)
    elif isinstance(kind, TranslationBy):
        s = kind.section
        if s.g != g or s.c != 1:
            raise PreconditionError("translation needs a norm-1 solution for this g")
        sx, sy = s.x(u), s.y(u)
        out = (sx * x + G * sy * y, sx * y + sy * x, u)
    elif isinstance(kind, BaseAutoLift):
        r = g.field(kind.r)
        if kind.sigma.degree != 1 or g(kind.sigma) != g * (r * r):
            raise PreconditionError("sigma does not satisfy g(sigma(u)) = r^2 g(u)")
        out = (x, y / r, kind.sigma(u))
    elif isinstance(kind, ChebyshevMap):
        if g != Poly([-1, 0, 1], g.field):
            raise PreconditionError("the Chebyshev maps live on S_2")
        T, U = chebyshev_pair(kind.n, g.field)
        Uu = U(u)
        if not Uu:
            raise DegenerateError("U_%d vanishes at the point: indeterminacy locus" % (kind.n - 1))
        out = (x, y / Uu, T(u))
    else:
        raise PreconditionError("unknown map %r" % (kind,))
    if not S.contains(*out):
        raise AssertionError("image is not on the surface")
    return out


# -- the family g = t^2 - c -----------------------------------------------------------------


@dataclass(frozen=True)
class Deg2Family:
    solution: PellSolution
    displayed_pair_ok: bool  # whether ((1/c + c) t^2 - c^2, 2t) is a solution


def deg2_solution_family(c, field: Field = QQ) -> Deg2Family:
    """Norm-1 solution of x^2 - (t^2 - c) y^2 = 1 from (t, 1), whose norm is c."""
    c = field(c)
    if not c:
        raise DegenerateError("c = 0 makes g = t^2 a square")
    g = Poly([-c, 0, 1], field)
    inv = field.one / c
    x = Poly([-c, 0, 2], field) * inv
    y = Poly([0, 2], field) * inv
    sol = PellSolution(x, y, field.one, g)
    displayed = is_solution(Poly([-c * c, 0, inv + c], field), Poly([0, 2], field), g) == 1
    return Deg2Family(sol, displayed)


__all__ = [
    "AffineLine",
    "BaseAutoLift",
    "BaseChangeReport",
    "ChebyshevMap",
    "Deg2Family",
    "DoubleSection",
    "Inverse",
    "LineEnumeration",
    "LogKodaira",
    "PellSurface",
    "PowerMap",
    "SpecialCase",
    "SurfaceClassification",
    "TranslationBy",
    "chebyshev_pair",
    "classify_surface",
    "deg2_solution_family",
    "double_section_deg3",
    "endo_apply",
    "enumerate_lines",
    "is_cyclotomic_fiber",
    "line_L_intersections",
    "scan_double_sections",
    "verify_base_change",
]
