"""Parser for the polynomial text grammar.

Terms look like ``coef*VAR^k``, ``VAR^k``, ``VAR`` or ``coef``, joined by
``+``/``-``.  Coefficients are integers or ``a/b`` fractions; over F_p they are
reduced modulo p.  The variable is any single letter, used consistently.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import QQ, Field, Poly
from .errors import NotInFieldError, ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z])|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    text = text.replace("−", "-")
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            while text[pos].isspace():
                pos += 1
            raise ParseError("unexpected character %r" % text[pos], text, pos)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("num", int(m.group(1)), start))
        elif m.group(2):
            out.append(("var", m.group(2), start))
        else:
            op = m.group(3)
            out.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return text, out


def parse_poly_var(text: str, field: Field = QQ, var: str | None = None):
    """Parse ``text``; return ``(poly, variable letter)``.

    The letter defaults to ``u`` when the text is a constant.
    """
    text, toks = _tokenize(text)
    i = 0
    terms = {}

    def peek():
        return toks[i]

    def take(kind=None, value=None):
        nonlocal i
        t = toks[i]
        if kind and t[0] != kind or value is not None and t[1] != value:
            expected = value if value is not None else kind
            got = "end of input" if t[0] == "end" else repr(t[1])
            raise ParseError("expected %s, got %s" % (expected, got), text, t[2])
        i += 1
        return t

    def number():
        t = take("num")
        val = Fraction(t[1])
        if peek()[0] == "op" and peek()[1] == "/":
            take()
            d = take("num")
            if d[1] == 0:
                raise ParseError("zero denominator", text, d[2])
            val = Fraction(t[1], d[1])
        return val, t[2]

    first = True
    while True:
        sign = 1
        t = peek()
        if t[0] == "op" and t[1] in "+-":
            take()
            sign = -1 if t[1] == "-" else 1
        elif not first:
            raise ParseError("expected '+' or '-'", text, t[2])
        if peek()[0] == "end":
            raise ParseError("missing term", text, peek()[2])
        first = False
        coef, cpos = Fraction(1), peek()[2]
        exp = 0
        if peek()[0] == "num":
            coef, cpos = number()
            if peek()[0] == "op" and peek()[1] == "*":
                take()
                if peek()[0] != "var":
                    raise ParseError("expected variable after '*'", text, peek()[2])
        elif peek()[0] != "var":
            raise ParseError("expected a coefficient or variable", text, peek()[2])
        if peek()[0] == "var":
            v = take("var")
            if var is None:
                var = v[1]
            elif v[1] != var:
                raise ParseError("mixed variables %r and %r" % (var, v[1]), text, v[2])
            exp = 1
            if peek()[0] == "op" and peek()[1] == "^":
                take()
                exp = take("num")[1]
        try:
            c = field(coef * sign)
        except NotInFieldError:
            raise ParseError("coefficient %s is not in %s" % (coef * sign, field), text, cpos) from None
        terms[exp] = terms.get(exp, field.zero) + c
        if peek()[0] == "end":
            break
    deg = max(terms) if terms else 0
    cs = [terms.get(k, 0) for k in range(deg + 1)]
    return Poly(cs, field), var or "u"


def parse_poly(text: str, field: Field = QQ) -> Poly:
    """Parse a polynomial in any single-letter variable."""
    return parse_poly_var(text, field)[0]


def parse_element(text: str, field: Field = QQ):
    """Parse a field constant such as ``-1/2`` or ``3``."""
    p, _ = parse_poly_var(text, field)
    if p.degree > 0:
        raise ParseError("expected a constant, got %s" % text, text, 0)
    return p.constant_term()
