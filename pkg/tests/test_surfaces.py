from fractions import Fraction

import pytest

from pellsurf.algebra import GF, QQ, Poly
from pellsurf.errors import DegenerateError, OutOfScopeError, PreconditionError
from pellsurf.parse import parse_poly as P
from pellsurf.pell import PellProblem, PellSolution, identity, is_solution, power, solve_pell
from pellsurf.surfaces import (
    BaseAutoLift,
    ChebyshevMap,
    Inverse,
    LogKodaira,
    PowerMap,
    SpecialCase,
    TranslationBy,
    chebyshev_pair,
    classify_surface,
    deg2_solution_family,
    double_section_deg3,
    endo_apply,
    enumerate_lines,
    is_cyclotomic_fiber,
    line_L_intersections,
    scan_double_sections,
    verify_base_change,
)

F3, F5 = GF(3), GF(5)
t = Poly.gen()


@pytest.mark.parametrize(
    "g, field, case, kappa",
    [
        ("3", QQ, SpecialCase.DEG0, LogKodaira.MINUS_INFINITY),
        ("u - 2", QQ, SpecialCase.DEG1_BASE, LogKodaira.MINUS_INFINITY),
        ("u^4 - 2*u^2 + 1", QQ, SpecialCase.CONST_TIMES_SQUARE, LogKodaira.ONE),
        ("u^5", QQ, SpecialCase.POWER_OF_LINEAR, LogKodaira.ZERO),
        ("u^3 - 3*u^2 + 3*u - 1", QQ, SpecialCase.POWER_OF_LINEAR, LogKodaira.ZERO),
        ("u^2 - 1", QQ, SpecialCase.DEG2, LogKodaira.ZERO),
        ("u^4 - 1", QQ, None, LogKodaira.ONE),
        ("u^3 - u", QQ, None, LogKodaira.ONE),
        ("u^6 + u + 1", F5, None, LogKodaira.ONE),
        ("u^3 + 1", F3, SpecialCase.POWER_OF_LINEAR, LogKodaira.ZERO),  # (u + 1)^3 in char 3
    ],
)
def test_classify_surface(g, field, case, kappa):
    c = classify_surface(P(g, field))
    assert c.special_case is case
    assert c.log_kodaira is kappa


def test_classify_reports_square_flag_separately():
    assert classify_surface(P("u^2")).const_times_square
    assert not classify_surface(P("u^4 - 1")).const_times_square


def test_lines_on_s2():
    E = enumerate_lines(P("u^2 - 1"), 2)
    kinds = [line.kind for line in E.lines]
    assert kinds.count("vertical") == 4 and kinds.count("trivial") == 2
    sections = {(line.n, line.sign): (line.x, line.y) for line in E.lines if line.kind == "section"}
    assert sections[(1, 1)] == (t, P("1"))
    assert sections[(2, 1)] == (P("2*u^2 - 1"), P("2*u"))
    assert sections[(-2, -1)] == (P("-2*u^2 + 1"), P("2*u"))
    assert len(sections) == 8
    assert E.complete
    assert E.geometric_count <= 2 * 2 + 2 + 8


def test_lines_const_times_square():
    E = enumerate_lines(P("u^4 - 2*u^2 + 1"), 3)
    assert {line.kind for line in E.lines} == {"vertical", "trivial"}
    assert E.geometric_count == 6
    assert E.complete


def test_lines_odd_degree():
    with pytest.raises(OutOfScopeError):
        enumerate_lines(P("u^3 - u"), 2)


def test_lines_non_rational_roots_grouped():
    E = enumerate_lines(P("u^2 + 1"), 1)
    grouped = [line for line in E.lines if line.factor is not None]
    assert len(grouped) == 2
    assert grouped[0].factor == P("u^2 + 1") and grouped[0].count == 2
    assert grouped[0].definition_field == "Q(alpha)"
    E = enumerate_lines(P("u^2 + 1", F5), 1)
    assert all(line.factor is None for line in E.lines)


def test_lines_unknown_carries_caveat():
    E = enumerate_lines(P("u^4 + u + 1"), 2, max_steps=6)
    assert not E.complete
    assert "unknown" in E.caveat
    assert all(line.kind != "section" for line in E.lines)


def test_every_line_satisfies_equation():
    for g, field in [("u^4 - 1", QQ), ("u^4 + u", F5), ("u^2 + 1", F3)]:
        g = P(g, field)
        for line in enumerate_lines(g, 3).lines:
            if line.x is not None:
                assert line.x * line.x - g(line.u) * line.y * line.y == 1


def test_chebyshev_pair_examples():
    assert chebyshev_pair(1) == (t, P("1"))
    assert chebyshev_pair(2) == (P("2*t^2 - 1"), P("2*t"))
    assert chebyshev_pair(3) == (P("4*t^3 - 3*t"), P("4*t^2 - 1"))
    with pytest.raises(PreconditionError):
        chebyshev_pair(0)


def test_chebyshev_trig_values():
    # T_n(cos a) = cos(n a): at t = 1/2, cos(pi/3), T_n cycles through cos(n pi / 3)
    cycle = [Fraction(1, 2), Fraction(-1, 2), Fraction(-1), Fraction(-1, 2), Fraction(1, 2), Fraction(1)]
    for n in range(1, 13):
        assert chebyshev_pair(n)[0](Fraction(1, 2)) == cycle[(n - 1) % 6]


def test_line_L_intersections():
    pts = line_L_intersections(5)
    assert pts[0] == (1, 1, 1) and pts[4] == (1, 5, 1)
    assert line_L_intersections(3, sign=-1)[2] == (-1, -3, 1)


def test_cyclotomic_fibers_s2():
    g = P("u^2 - 1")
    f = solve_pell(PellProblem(g)).fundamental
    assert is_cyclotomic_fiber(g, f, 0) == 4
    assert is_cyclotomic_fiber(g, f, Fraction(-1, 2)) == 3
    assert is_cyclotomic_fiber(g, f, Fraction(1, 2)) == 6
    assert is_cyclotomic_fiber(g, f, 2, 1000) is None
    with pytest.raises(DegenerateError):
        is_cyclotomic_fiber(g, f, 1)


def test_cyclotomic_fiber_f5():
    g = P("u^2 - 1", F5)
    f = solve_pell(PellProblem(g)).fundamental
    order = is_cyclotomic_fiber(g, f, 2)
    assert order is not None and 24 % order == 0


@pytest.mark.parametrize("q", ["t^2", "t^3", "t^2 + 1", "2*t^3 - t"])
def test_base_change_q(q):
    r = verify_base_change(P("u^2 - 1"), P(q))
    assert r.equal
    assert r.composed.fundamental.y == P("1")


def test_base_change_f5_sample():
    g = P("u^4 + u", F5)
    for q in ("t^2 + t", "2*t + 3", "t^3 + 2"):
        assert verify_base_change(g, P(q, F5)).equal


def test_base_change_inconclusive():
    r = verify_base_change(P("u^4 + u + 1"), P("t^2"), max_steps=4)
    assert r.status == "inconclusive"


def test_double_section_scan_f5():
    g = P("u^3 - u", F5)
    found = scan_double_sections(g)
    assert found
    for c, d in found:
        assert d.verified
        assert d.x * d.x - g(d.u) * d.y * d.y == 1
        assert d.u == Poly([c, 0, 1], F5)


def test_double_section_trivial_and_invalid():
    g = P("u^3 - u", F5)
    h = P("u - 2", F5) * g
    d = double_section_deg3(g, 2, identity(h))
    assert d.trivial
    bad = PellSolution.of(P("u", F5), P("1", F5), P("u^2 - 1", F5))
    with pytest.raises(PreconditionError):
        double_section_deg3(g, 2, bad)


def test_endomorphisms_on_points():
    g = P("u^2 - 1")
    pt = (Fraction(2), Fraction(1), Fraction(2))  # 4 - 3 = 1
    assert endo_apply(Inverse(), g, pt) == (2, -1, 2)
    x, y, u = endo_apply(ChebyshevMap(2), g, pt)
    assert (x, y, u) == (2, Fraction(1, 4), 7)  # T_2(2) = 7, U_1(2) = 4
    with pytest.raises(DegenerateError):
        endo_apply(ChebyshevMap(2), g, (Fraction(1), Fraction(0), Fraction(0)))
    with pytest.raises(PreconditionError):
        endo_apply(Inverse(), g, (Fraction(1), Fraction(1), Fraction(5)))


def test_endomorphisms_on_sections():
    g = P("u^2 - 1")
    one = P("1")
    assert endo_apply(PowerMap(2), g, (t, one, t)) == (P("2*u^2 - 1"), P("2*u"), t)
    f = solve_pell(PellProblem(g)).fundamental
    x, y, u = endo_apply(TranslationBy(power(f, 2)), g, (t, one, t))
    assert (x, y) == (power(f, 3).x, power(f, 3).y)
    assert endo_apply(BaseAutoLift(P("-u"), 1), g, (t, one, t)) == (t, one, -t)
    with pytest.raises(PreconditionError):
        endo_apply(BaseAutoLift(P("u + 1"), 1), g, (t, one, t))


def test_chebyshev_identity_phi2():
    T, U = chebyshev_pair(2)
    assert T * T - 1 == (t * t - 1) * U * U


def test_deg2_family():
    fam = deg2_solution_family(1)
    assert (fam.solution.x, fam.solution.y) == (P("2*t^2 - 1"), P("2*t"))
    assert fam.displayed_pair_ok
    fam = deg2_solution_family(4)
    assert (fam.solution.x, fam.solution.y) == (P("1/2*t^2 - 1"), P("1/2*t"))
    assert is_solution(fam.solution.x, fam.solution.y, P("t^2 - 4")) == 1
    assert not fam.displayed_pair_ok
    with pytest.raises(DegenerateError):
        deg2_solution_family(0)
