"""Truncated Laurent series in u^-1.

A series stores its coefficients for exponents ``top, top-1, ..., low``.
Coefficients below ``low`` are unknown unless the series is ``exact``, in
which case they are zero (a Laurent polynomial).  Every operation tracks the
lowest exponent it can certify; asking for anything below that raises
:class:`PrecisionError` instead of guessing.
"""

from __future__ import annotations

from .algebra import Field, Poly, field_sqrt
from .errors import (
    DivisionByZeroError,
    NonSquareLeadError,
    OutOfScopeError,
    PrecisionError,
    PreconditionError,
)


class LaurentSeries:
    __slots__ = ("field", "coeffs", "low", "exact")

    def __init__(self, field: Field, top: int, coeffs, exact: bool = False):
        cs = [field(c) for c in coeffs]
        self._set(field, top - len(cs) + 1, cs, exact)

    def _set(self, field, low, cs, exact):
        # cs is descending; strip leading zeros (low is unaffected)
        k = 0
        while k < len(cs) and not cs[k]:
            k += 1
        self.field = field
        self.coeffs = tuple(cs[k:])
        self.low = low
        self.exact = exact

    @classmethod
    def _make(cls, field, low, cs, exact=False):
        obj = cls.__new__(cls)
        obj._set(field, low, cs, exact)
        return obj

    @classmethod
    def from_poly(cls, p: Poly) -> "LaurentSeries":
        cs = list(reversed(p.coeffs))
        k = 0
        while p.coeffs and not p.coeffs[k]:
            k += 1
        # drop trailing zero coefficients of low degree; they are implied by exactness
        return cls._make(p.field, k, cs[: len(cs) - k] if cs else [], exact=True)

    @classmethod
    def monomial(cls, k: int, field: Field, c=1) -> "LaurentSeries":
        return cls._make(field, k, [field(c)], exact=True)

    @classmethod
    def from_rational(cls, p: Poly, q: Poly, prec: int) -> "LaurentSeries":
        return cls.from_poly(p) * cls.from_poly(q).invert(prec)

    # --- shape -----------------------------------------------------------------

    @property
    def top(self) -> int:
        """Exponent of the leading stored coefficient (low - 1 for a zero series)."""
        return self.low + len(self.coeffs) - 1

    @property
    def prec(self) -> int:
        return len(self.coeffs)

    @property
    def lead(self):
        return self.coeffs[0] if self.coeffs else self.field.zero

    def is_zero(self) -> bool:
        """True when every known coefficient vanishes (exactly zero if ``exact``)."""
        return not self.coeffs

    def coeff(self, e: int):
        if e > self.top:
            return self.field.zero
        if e >= self.low:
            return self.coeffs[self.top - e]
        if self.exact:
            return self.field.zero
        raise PrecisionError("coefficient of u^%d is beyond the known precision (u^%d)" % (e, self.low))

    def truncate(self, low: int) -> "LaurentSeries":
        """Forget every coefficient below ``low``."""
        if low <= self.low and not self.exact:
            return self
        low = max(low, self.low) if not self.exact else low
        cs = [self.coeff(e) for e in range(self.top, low - 1, -1)]
        return LaurentSeries._make(self.field, low, cs, exact=False)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        if self.exact != other.exact or self.field != other.field:
            return False
        if self.exact:
            return self.coeffs == other.coeffs and (not self.coeffs or self.low == other.low)
        return self.low == other.low and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.low, self.coeffs, self.exact))

    def agrees_with(self, other: "LaurentSeries") -> bool:
        """Compare on every exponent both series know."""
        lo = max(self.low if not self.exact else other.low, other.low if not other.exact else self.low)
        hi = max(self.top, other.top)
        return all(self.coeff(e) == other.coeff(e) for e in range(hi, lo - 1, -1))

    # --- arithmetic --------------------------------------------------------------

    def _check(self, other):
        if isinstance(other, Poly):
            other = LaurentSeries.from_poly(other)
        elif not isinstance(other, LaurentSeries):
            other = LaurentSeries.from_poly(Poly([other], self.field))
        if other.field != self.field:
            from .errors import FieldMismatchError

            raise FieldMismatchError("series over %s and %s" % (self.field, other.field))
        return other

    def __add__(self, other):
        o = self._check(other)
        if self.exact and o.exact:
            if not self.coeffs:
                return o
            if not o.coeffs:
                return self
            low = min(self.low, o.low)
            exact = True
        else:
            low = max(s.low for s in (self, o) if not s.exact)
            exact = False
        hi = max(self.top, o.top)
        cs = [self.coeff(e) + o.coeff(e) for e in range(hi, low - 1, -1)]
        return LaurentSeries._make(self.field, low, cs, exact)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries._make(self.field, self.low, [-c for c in self.coeffs], self.exact)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        o = self._check(other)
        a, b = self, o
        if (a.exact and not a.coeffs) or (b.exact and not b.coeffs):
            return LaurentSeries._make(self.field, 0, [], exact=True)
        hi = a.top + b.top
        if a.exact and b.exact:
            low, exact = a.low + b.low, True
        else:
            bounds = []
            if not b.exact:
                bounds.append(a.top + b.low)
            if not a.exact:
                bounds.append(b.top + a.low)
            low, exact = max(bounds), False
        n = hi - low + 1
        zero = self.field.zero
        cs = [zero] * max(n, 0)
        for i, x in enumerate(a.coeffs):
            if i >= n:
                break
            if not x:
                continue
            for j, y in enumerate(b.coeffs[: n - i]):
                cs[i + j] = cs[i + j] + x * y
        return LaurentSeries._make(self.field, low, cs, exact)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.invert() ** (-n)
        result = LaurentSeries.monomial(0, self.field)
        for _ in range(n):
            result = result * self
        return result

    def invert(self, prec: int | None = None) -> "LaurentSeries":
        """Multiplicative inverse.

        The result keeps the relative precision of the input.  Exact
        non-monomial inputs have infinite expansions, so ``prec`` is required.
        """
        if not self.coeffs:
            if self.exact:
                raise DivisionByZeroError("inverse of the zero series")
            raise PrecisionError("series is zero to its known precision; cannot invert")
        field = self.field
        n = self.top
        c = self.coeffs[0]
        if self.exact and len(self.coeffs) == 1:
            return LaurentSeries._make(field, -n, [field.one / c], exact=True)
        if self.exact:
            if prec is None:
                raise PreconditionError("inverting an exact series needs an explicit precision")
            P = prec
        else:
            P = len(self.coeffs) if prec is None else min(prec, len(self.coeffs))
        inv_c = field.one / c
        d = [self.coeff(n - k) * inv_c for k in range(P)]
        e = [field.one]
        for k in range(1, P):
            acc = field.zero
            for j in range(1, k + 1):
                if d[j]:
                    acc = acc + d[j] * e[k - j]
            e.append(-acc)
        return LaurentSeries._make(field, -n - P + 1, [x * inv_c for x in e], exact=False)

    # --- printing ----------------------------------------------------------------

    def to_str(self, var: str = "u") -> str:
        field = self.field
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            e = self.top - k
            if field.char == 0:
                neg = c < 0
                mag = -c if neg else c
            else:
                neg, mag = False, c
            mono = "" if e == 0 else (var if e == 1 else "%s^%d" % (var, e))
            if not mono:
                term = str(mag)
            elif mag == 1:
                term = mono
            else:
                term = "%s*%s" % (mag, mono)
            if not parts:
                parts.append("-" + term if neg else term)
            else:
                parts.append(("- " if neg else "+ ") + term)
        if not self.exact:
            tail = "O(%s^%d)" % (var, self.low - 1)
            parts.append(("+ " + tail) if parts else tail)
        return " ".join(parts) if parts else "0"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return "LaurentSeries(%r)" % self.to_str()


def laurent_sqrt(g: Poly, prec: int) -> LaurentSeries:
    """Canonical branch of sqrt(g) in k((u^-1)) with ``prec`` coefficients.

    g = c u^(2m) (1 + e(w)) with w = u^-1, and sqrt(1 + e) is expanded as a
    power series in w; the coefficients only involve division by 2.
    """
    field = g.field
    if prec < 1:
        raise PreconditionError("precision must be at least 1")
    if g.is_zero():
        raise PreconditionError("square root of the zero polynomial")
    n = g.degree
    if n % 2:
        raise OutOfScopeError("sqrt(g) is not in k((u^-1)) for odd degree %d" % n)
    s = field_sqrt(g.lead, field)
    if s is None:
        raise NonSquareLeadError("leading coefficient %s is not a square in %s" % (g.lead, field))
    m = n // 2
    inv_lead = field.one / g.lead
    d = [g.coeff(n - j) * inv_lead if j <= n else field.zero for j in range(prec)]
    half = field.one / 2
    r = [field.one]
    for k in range(1, prec):
        acc = d[k]
        for i in range(1, k):
            acc = acc - r[i] * r[k - i]
        r.append(acc * half)
    return LaurentSeries._make(field, m - prec + 1, [s * x for x in r], exact=False)


def integral_part(phi: LaurentSeries) -> Poly:
    """Polynomial part: the sum of the terms with nonnegative exponent."""
    if not phi.exact and phi.low > 0:
        raise PrecisionError("integral part needs coefficients down to u^0, known only to u^%d" % phi.low)
    top = phi.top
    return Poly([phi.coeff(e) for e in range(0, top + 1)], phi.field)


def laurent_invert(phi: LaurentSeries, prec: int | None = None) -> LaurentSeries:
    return phi.invert(prec)
