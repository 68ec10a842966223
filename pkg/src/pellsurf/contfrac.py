"""Continued fractions in k((u^-1)) and their convergents.

The expansion of a Laurent series phi is

    a_i = floor(phi_i),   phi_{i+1} = 1 / (phi_i - a_i),   phi_0 = phi,

where floor keeps the terms of nonnegative exponent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Poly, divrem, poly_sqrt
from .errors import InconsistentStateError, PrecisionError, PreconditionError
from .laurent import LaurentSeries, integral_part, laurent_sqrt


@dataclass(frozen=True)
class CFExpansion:
    quotients: tuple
    terminated: bool = False
    convergent_pairs: tuple = field(default=(), compare=False)

    @property
    def steps_done(self) -> int:
        return len(self.quotients)

    def __str__(self):
        qs = [str(a) for a in self.quotients]
        if not qs:
            return "[]"
        tail = "" if self.terminated else ", ..."
        return "[%s; %s%s]" % (qs[0], ", ".join(qs[1:]), tail)


def cf_expand(phi: LaurentSeries, steps: int) -> CFExpansion:
    """Expand ``phi`` into at most ``steps`` partial quotients.

    Raises :class:`PrecisionError` when ``phi`` is not known precisely enough;
    the caller can retry with a longer series.
    """
    if steps < 1:
        raise PreconditionError("steps must be at least 1")
    quotients = []
    terminated = False
    for i in range(steps):
        a = integral_part(phi)
        quotients.append(a)
        r = phi - a
        if r.is_zero():
            if r.exact:
                terminated = True
                break
            if i == steps - 1:
                break
            raise PrecisionError("remainder after %d quotients is zero to the known precision" % (i + 1))
        if i == steps - 1:
            break
        phi = r.invert()
    quotients = tuple(quotients)
    return CFExpansion(quotients, terminated, tuple(convergents(quotients)))


def cf_expand_rational(p: Poly, q: Poly, steps: int | None = None) -> CFExpansion:
    """Expansion of the rational function p/q; floor(p/q) is the polynomial quotient."""
    if q.is_zero():
        raise PreconditionError("zero denominator")
    quotients = []
    terminated = False
    while steps is None or len(quotients) < steps:
        a, r = divrem(p, q)
        quotients.append(a)
        if r.is_zero():
            terminated = True
            break
        p, q = q, r
    quotients = tuple(quotients)
    return CFExpansion(quotients, terminated, tuple(convergents(quotients)))


def _sign_normalize(p: Poly, q: Poly):
    # multiply by -1 so that q has a "positive" leading coefficient; units +-1 keep Pell norms
    if q and not q.field.is_positive(q.lead):
        return -p, -q
    return p, q


def convergents(quotients) -> list:
    """Convergent pairs (p_n, q_n) by the three-term recurrence.

    The pairs are coprime by construction and are returned sign-normalized
    (leading coefficient of q_n positive, or in 1..(p-1)/2 over F_p).
    """
    quotients = getattr(quotients, "quotients", quotients)
    if not quotients:
        raise PreconditionError("empty expansion")
    field = quotients[0].field
    p_prev, q_prev = Poly([1], field), Poly([], field)
    p_cur, q_cur = quotients[0], Poly([1], field)
    out = [_sign_normalize(p_cur, q_cur)]
    for a in quotients[1:]:
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        out.append(_sign_normalize(p_cur, q_cur))
    return out


def default_start_prec(g: Poly) -> int:
    return 2 * max(g.degree, 1) + 8


def iter_sqrt_quotients(g: Poly, max_prec: int | None = None, start_prec: int | None = None):
    """Yield the partial quotients of sqrt(g) one at a time.

    Whenever the series runs out of known coefficients it is recomputed at
    twice the precision and the expansion replayed; replayed quotients must
    agree with the ones already produced.
    """
    root = poly_sqrt(g)
    if root is not None:
        # sqrt(g) is a polynomial: a single quotient, remainder exactly zero
        yield root
        return
    prec = start_prec or default_start_prec(g)
    if max_prec is not None:
        prec = min(prec, max_prec)
    produced = []
    while True:
        try:
            phi = laurent_sqrt(g, prec)
            i = 0
            while True:
                a = integral_part(phi)
                if i < len(produced):
                    if a != produced[i]:
                        raise InconsistentStateError("quotient %d changed when precision was raised" % i)
                else:
                    produced.append(a)
                    yield a
                r = phi - a
                if r.is_zero():
                    if r.exact:
                        return
                    raise PrecisionError("remainder zero to precision")
                phi = r.invert()
                i += 1
        except PrecisionError:
            if max_prec is not None and prec >= max_prec:
                raise PrecisionError(
                    "sqrt(%s) exhausted the precision budget of %d coefficients" % (g, max_prec)
                ) from None
            prec = 2 * prec if max_prec is None else min(2 * prec, max_prec)


def expand_sqrt(g: Poly, steps: int, max_prec: int | None = None) -> CFExpansion:
    """First ``steps`` partial quotients of sqrt(g), raising precision as needed."""
    if steps < 1:
        raise PreconditionError("steps must be at least 1")
    if max_prec is None:
        max_prec = 4 * steps * max(g.degree, 1) + default_start_prec(g)
    quotients = []
    terminated = True
    for a in iter_sqrt_quotients(g, max_prec=max_prec):
        quotients.append(a)
        if len(quotients) == steps:
            terminated = False
            break
    quotients = tuple(quotients)
    return CFExpansion(quotients, terminated, tuple(convergents(quotients)))


@dataclass(frozen=True)
class SubstitutionReport:
    g: Poly
    q: Poly
    expansion: CFExpansion
    composed_expansion: CFExpansion
    matches: bool
    first_mismatch: int | None


def cf_substitution_check(g: Poly, q: Poly, steps: int) -> SubstitutionReport:
    """Expand sqrt(g) and sqrt(g(q(t))) independently and compare a_i(q(t)) termwise."""
    if q.degree < 1:
        raise PreconditionError("substitution must be nonconstant")
    base = expand_sqrt(g, steps)
    composed = expand_sqrt(g(q), steps)
    mismatch = None
    for i, (a, b) in enumerate(zip(base.quotients, composed.quotients)):
        if a(q) != b:
            mismatch = i
            break
    if mismatch is None and len(base.quotients) != len(composed.quotients):
        mismatch = min(len(base.quotients), len(composed.quotients))
    return SubstitutionReport(g, q, base, composed, mismatch is None, mismatch)
