"""Command-line front end: ``pellsurf <command> [--field F] [--json] ...``.

Exit status: 0 for a definitive answer, 2 when the step budget ran out
(unknown), 1 on errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import __version__
from .algebra import QQ, GF, Poly, field_from_spec, field_spec_string
from .contfrac import expand_sqrt
from .errors import PellSurfError, PreconditionError
from .parse import parse_element, parse_poly_var
from .pell import (
    PellProblem,
    Solved,
    StructurallyUnsolvable,
    brute_force_solve,
    canonical,
    power,
    solve_pell,
)
from .ramify import mild_ramification_check, pi1_criterion, places_at_infinity, ramification_profile
from .surfaces import (
    chebyshev_pair,
    classify_surface,
    enumerate_lines,
    is_cyclotomic_fiber,
    scan_double_sections,
    verify_base_change,
)

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2


class UsageError(PellSurfError):
    code = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(a, field) -> str:
    return field.format(a)


def _verdict_json(v, var):
    out = {"status": v.status, "reason": None, "x": None, "y": None, "torsion_order": None, "steps_used": None}
    if isinstance(v, Solved):
        f = v.fundamental
        out.update(x=f.x.to_str(var), y=f.y.to_str(var), torsion_order=v.generator.x.degree, steps_used=v.steps_used)
    elif isinstance(v, StructurallyUnsolvable):
        out["reason"] = v.reason.value
    else:
        out["reason"] = "no solution within %d steps" % v.steps
        out["steps_used"] = v.steps
    return out


def _verdict_lines(v, var):
    if isinstance(v, Solved):
        f = v.fundamental
        lines = ["solved", "x = %s" % f.x.to_str(var), "y = %s" % f.y.to_str(var)]
        lines.append("torsion order = %d" % v.generator.x.degree)
        if v.generator != f:
            g = v.generator
            lines.append("generator (norm %s): (%s, %s)" % (_fmt(g.c, g.field), g.x.to_str(var), g.y.to_str(var)))
        lines.append("steps used = %d" % v.steps_used)
        return lines
    if isinstance(v, StructurallyUnsolvable):
        return ["structural: %s" % v.reason.value]
    return ["unknown: no solution within %d steps" % v.steps]


def _status(v) -> int:
    return EXIT_UNKNOWN if v.status == "unknown" else EXIT_OK


# -- commands -------------------------------------------------------------------------


def cmd_expand(a, field):
    g, var = parse_poly_var(a.g, field)
    e = expand_sqrt(g, a.steps)
    data = {
        "quotients": [q.to_str(var) for q in e.quotients],
        "terminated": e.terminated,
        "convergents": [[p.to_str(var), q.to_str(var)] for p, q in e.convergent_pairs],
    }
    text = ["sqrt(%s) = [%s]" % (g.to_str(var), "; ".join(data["quotients"]))]
    for i, (p, q) in enumerate(data["convergents"]):
        text.append("p_%d/q_%d = (%s)/(%s)" % (i, i, p, q))
    return data, text, EXIT_OK


def cmd_solve(a, field):
    g, var = parse_poly_var(a.g, field)
    v = solve_pell(PellProblem(g), a.max_steps)
    return _verdict_json(v, var), _verdict_lines(v, var), _status(v)


def cmd_order(a, field):
    g, var = parse_poly_var(a.g, field)
    v = solve_pell(PellProblem(g), a.max_steps)
    data = _verdict_json(v, var)
    if isinstance(v, Solved):
        text = ["torsion order = %d" % v.generator.x.degree]
    else:
        text = ["torsion order undetermined (%s)" % _verdict_lines(v, var)[0]]
    return data, text, _status(v)


def cmd_powers(a, field):
    g, var = parse_poly_var(a.g, field)
    v = solve_pell(PellProblem(g), a.max_steps)
    data = _verdict_json(v, var)
    if not isinstance(v, Solved):
        return data, _verdict_lines(v, var), _status(v)
    data["powers"] = []
    text = []
    for k in range(1, a.n + 1):
        s = power(v.fundamental, k)
        data["powers"].append({"n": k, "x": s.x.to_str(var), "y": s.y.to_str(var)})
        text.append("f^%d: x = %s, y = %s" % (k, s.x.to_str(var), s.y.to_str(var)))
    return data, text, EXIT_OK


def cmd_classify(a, field):
    g, var = parse_poly_var(a.g, field)
    c = classify_surface(g)
    data = {
        "special_case": c.special_case.value if c.special_case else None,
        "log_kodaira": c.log_kodaira.value,
        "const_times_square": c.const_times_square,
    }
    text = [
        "special case: %s" % (data["special_case"] or "none"),
        "log Kodaira dimension: %s" % data["log_kodaira"],
        "constant times square: %s" % ("yes" if c.const_times_square else "no"),
    ]
    return data, text, EXIT_OK


def cmd_lines(a, field):
    g, var = parse_poly_var(a.g, field)
    E = enumerate_lines(g, a.n_max, a.max_steps)
    data = {"lines": [line.to_json("t") for line in E.lines], "complete": E.complete, "caveat": E.caveat}
    text = []
    for rec in data["lines"]:
        if rec["x"] is None:
            text.append(
                "vertical x = %d over the roots of %s (%d lines, %s)"
                % (rec["sign"], rec["factor"], rec["count"], rec["definition_field"])
            )
        else:
            label = rec["kind"] if rec["kind"] != "section" else "section n=%d" % rec["n"]
            text.append("%s: (x, y, %s) = (%s, %s, %s)" % (label, var, rec["x"], rec["y"], rec["u"]))
    text.append("%s%s" % ("" if E.complete else "INCOMPLETE: ", E.caveat))
    return data, text, EXIT_OK if E.complete else EXIT_UNKNOWN


def cmd_subst(a, field):
    g, var = parse_poly_var(a.g, field)
    if a.random:
        if a.seed is None:
            raise UsageError("--random needs an explicit --seed")
        rng = random.Random(a.seed)
        qs = [_random_poly(rng, field, rng.randint(1, a.max_q_degree)) for _ in range(a.random)]
        qvar = "t"
    elif a.q:
        q, qvar = parse_poly_var(a.q, field)
        qs = [q]
    else:
        raise UsageError("give --q or --random N --seed S")
    reports = []
    text = []
    worst = EXIT_OK
    for q in qs:
        r = verify_base_change(g, q, a.max_steps)
        rec = {"q": q.to_str(qvar), "status": r.status}
        if r.substituted is not None:
            rec["x"] = r.substituted.x.to_str(qvar)
            rec["y"] = r.substituted.y.to_str(qvar)
        reports.append(rec)
        line = "q = %s: %s" % (rec["q"], r.status)
        if r.status == "equal" and "x" in rec:
            line += " (fundamental of g(q) = (%s, %s))" % (rec["x"], rec["y"])
        text.append(line)
        if r.status == "different":
            worst = EXIT_ERROR
        elif r.status == "inconclusive" and worst == EXIT_OK:
            worst = EXIT_UNKNOWN
    data = {"reports": reports} if len(reports) > 1 else reports[0]
    return data, text, worst


def _random_poly(rng, field, deg):
    if field.char:
        cs = [rng.randrange(field.p) for _ in range(deg)] + [rng.randrange(1, field.p)]
    else:
        cs = [rng.randint(-3, 3) for _ in range(deg)] + [rng.choice([-2, -1, 1, 2])]
    return Poly(cs, field)


def cmd_cyclotomic(a, field):
    g, var = parse_poly_var(a.g, field)
    v = solve_pell(PellProblem(g), a.max_steps)
    if not isinstance(v, Solved):
        return _verdict_json(v, var), _verdict_lines(v, var), _status(v) if v.status == "unknown" else EXIT_ERROR
    b = parse_element(a.b, field)
    order = is_cyclotomic_fiber(g, v.fundamental, b, a.bound)
    data = {"b": _fmt(b, field), "order": order, "bound": a.bound if not field.char else None}
    if order is None:
        text = ["fiber %s = %s: no finite order up to %d" % (var, data["b"], a.bound)]
    else:
        text = ["fiber %s = %s: cyclotomic, order %d" % (var, data["b"], order)]
    return data, text, EXIT_OK


def cmd_double_section(a, field):
    g, var = parse_poly_var(a.g, field)
    cs = [parse_element(a.c, field)] if a.c is not None else None
    found = scan_double_sections(g, cs, a.max_steps)
    data = {
        "sections": [
            {
                "c": _fmt(c, field),
                "x": d.x.to_str("t"),
                "y": d.y.to_str("t"),
                "u": d.u.to_str("t"),
                "trivial": d.trivial,
                "verified": d.verified,
            }
            for c, d in found
        ]
    }
    text = ["c = %(c)s: (x, y, u) = (%(x)s, %(y)s, %(u)s)" % rec for rec in data["sections"]]
    if not found:
        text = ["no solvable auxiliary equation found"]
        return data, text, EXIT_UNKNOWN
    return data, text, EXIT_OK


def _map_field(a, field):
    if a.p is None:
        return field
    if a.field_given:
        if field.char != a.p:
            raise UsageError("--p %d conflicts with --field %s" % (a.p, field))
        return field
    return GF(a.p) if a.p else QQ


def cmd_ramify(a, field):
    field = _map_field(a, field)
    q, var = parse_poly_var(a.q, field)
    prof = ramification_profile(q)
    crit = pi1_criterion(q)
    data = prof.to_json(var)
    data["field"] = field_spec_string(field)
    data["pi1_criterion"] = crit.passed
    text = []
    for pt in prof.points:
        loc = "infinity" if pt.location == "infinity" else "roots of %s" % pt.location.to_str(var)
        text.append("%s: e = %d, d = %d, %s" % (loc, pt.e, pt.d, "tame" if pt.tame else "wild"))
    text.append("total d = %d (2 deg q - 2 = %d)" % (prof.total, 2 * q.degree - 2))
    text.append("pi1 criterion %s" % ("passed" if crit.passed else "not passed"))
    return data, text, EXIT_OK


def cmd_mild(a, field):
    field = _map_field(a, field)
    q, var = parse_poly_var(a.q, field)
    r = mild_ramification_check(q)
    data = {"mild": r.mild, "reasons": list(r.reasons), "field": field_spec_string(field)}
    text = ["mild" if r.mild else "not mild: " + "; ".join(r.reasons)]
    return data, text, EXIT_OK


def cmd_places(a, field):
    g, var = parse_poly_var(a.g, field)
    r = places_at_infinity(g)
    data = {"count": r.count, "rational": r.rational}
    text = ["%d place%s at infinity, %s" % (r.count, "" if r.count == 1 else "s", "rational" if r.rational else "conjugate")]
    return data, text, EXIT_OK


def cmd_oracle(a, field):
    g, var = parse_poly_var(a.g, field)
    pb = PellProblem(g)
    brute = brute_force_solve(pb, a.deg_bound)
    v = solve_pell(pb, a.max_steps)
    data = {"oracle": None, "solver": _verdict_json(v, var), "agree": None}
    text = []
    if brute is None:
        text.append("oracle: no nontrivial solution with deg y <= %d" % a.deg_bound)
    else:
        data["oracle"] = {"x": brute.x.to_str(var), "y": brute.y.to_str(var)}
        text.append("oracle: x = %s, y = %s" % (data["oracle"]["x"], data["oracle"]["y"]))
    text.extend("solver: " + line for line in _verdict_lines(v, var)[:3])
    if isinstance(v, Solved):
        data["agree"] = brute is not None and canonical(brute) == v.fundamental
    elif brute is None:
        data["agree"] = True
    else:
        data["agree"] = False
    text.append("agree: %s" % ("yes" if data["agree"] else "no"))
    code = EXIT_OK if data["agree"] else EXIT_ERROR
    if v.status == "unknown" and brute is None:
        code = EXIT_UNKNOWN
    return data, text, code


def cmd_cheb(a, field):
    T, U = chebyshev_pair(a.n, field)
    t = Poly.gen(field)
    ok = T * T - (t * t - 1) * U * U == 1
    data = {"n": a.n, "T": T.to_str("t"), "U": U.to_str("t"), "identity": ok}
    text = ["T_%d = %s" % (a.n, data["T"]), "U_%d = %s" % (a.n - 1, data["U"]), "T^2 - (t^2 - 1) U^2 = 1: %s" % ok]
    return data, text, EXIT_OK if ok else EXIT_ERROR


# -- parser ---------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--field", default=None, help="Q (default), F<p> or Fp:<p>")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--max-steps", type=int, default=None, help="continued-fraction step budget")

    parser = _Parser(prog="pellsurf", description="Polynomial Pell equations x^2 - g(u) y^2 = 1.")
    parser.add_argument("--version", action="version", version="pellsurf %s" % __version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("expand", cmd_expand, "continued fraction of sqrt(g)")
    p.add_argument("--g", required=True)
    p.add_argument("--steps", type=int, default=8)
    add("solve", cmd_solve, "fundamental solution").add_argument("--g", required=True)
    p = add("powers", cmd_powers, "powers of the fundamental solution")
    p.add_argument("--g", required=True)
    p.add_argument("--n", type=int, default=3)
    add("order", cmd_order, "torsion order of [P1 - P2]").add_argument("--g", required=True)
    add("classify", cmd_classify, "special case and log Kodaira dimension").add_argument("--g", required=True)
    p = add("lines", cmd_lines, "affine lines on the Pell surface")
    p.add_argument("--g", required=True)
    p.add_argument("--n-max", type=int, default=2)
    p = add("subst", cmd_subst, "base change g -> g(q(t))")
    p.add_argument("--g", required=True)
    p.add_argument("--q")
    p.add_argument("--random", type=int, default=0, metavar="N", help="N random substitutions")
    p.add_argument("--seed", type=int)
    p.add_argument("--max-q-degree", type=int, default=3)
    p = add("cyclotomic", cmd_cyclotomic, "order of a fiber u = b")
    p.add_argument("--g", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--bound", type=int, default=1000)
    p = add("double-section", cmd_double_section, "double sections for cubic g")
    p.add_argument("--g", required=True)
    p.add_argument("--c")
    for name, func, help_text in (
        ("ramify", cmd_ramify, "ramification profile of q"),
        ("mild", cmd_mild, "mild ramification test"),
    ):
        p = add(name, func, help_text)
        p.add_argument("--q", required=True)
        p.add_argument("--p", type=int, default=None)
    add("places", cmd_places, "places at infinity of v^2 = g").add_argument("--g", required=True)
    p = add("oracle", cmd_oracle, "brute-force cross-check over F_p")
    p.add_argument("--g", required=True)
    p.add_argument("--deg-bound", type=int, default=4)
    add("cheb", cmd_cheb, "Chebyshev pair (T_n, U_{n-1})").add_argument("--n", type=int, required=True)
    return parser


_VALUE_OPTIONS = {"--g", "--q", "--b", "--c"}


def _glue_negative_values(argv):
    # "--b -1/2" would read -1/2 as an option; pass it as "--b=-1/2"
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-") and not argv[i + 1].startswith("--"):
            out.append("%s=%s" % (tok, argv[i + 1]))
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    as_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "func", None):
            raise UsageError("missing command")
        args.field_given = args.field is not None
        field = field_from_spec(args.field) if args.field else QQ
        if args.max_steps is not None and args.max_steps < 1:
            raise PreconditionError("--max-steps must be positive")
        data, text, code = args.func(args, field)
        if isinstance(data, dict):
            data.setdefault("field", field_spec_string(field))
    except PellSurfError as e:
        _report_error(e.code, str(e), as_json)
        return EXIT_ERROR
    except (ValueError, ZeroDivisionError) as e:
        _report_error("invalid-input", str(e), as_json)
        return EXIT_ERROR
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        print("\n".join(text))
    return code


def _report_error(code, message, as_json):
    if as_json:
        print(json.dumps({"status": "error", "code": code, "message": message}))
    else:
        print("error [%s]: %s" % (code, message), file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
