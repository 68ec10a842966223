"""Coefficient fields and dense univariate polynomials.

Two fields are supported: the rationals (elements are :class:`fractions.Fraction`)
and prime fields F_p for odd p (elements are :class:`Mod`).  Polynomials are
immutable and stored densely, lowest degree first.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .errors import (
    DivisionByZeroError,
    FieldMismatchError,
    NotInFieldError,
    PreconditionError,
)

# exhaustive square roots below this size, Tonelli-Shanks above
_SQRT_SEARCH_LIMIT = 10_000


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    f = 3
    while f <= r:
        if n % f == 0:
            return False
        f += 2
    return True


class Mod:
    """Residue class modulo an odd prime, stored canonically in 0..p-1."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _other(self, o):
        if isinstance(o, Mod):
            if o.p != self.p:
                raise FieldMismatchError("F%d element combined with F%d element" % (self.p, o.p))
            return o.v
        if isinstance(o, int):
            return o
        if isinstance(o, Fraction):
            if o.denominator % self.p == 0:
                raise NotInFieldError("%s is not in F%d" % (o, self.p))
            return o.numerator * pow(o.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, o):
        w = self._other(o)
        return NotImplemented if w is NotImplemented else Mod(self.v + w, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        w = self._other(o)
        return NotImplemented if w is NotImplemented else Mod(self.v - w, self.p)

    def __rsub__(self, o):
        w = self._other(o)
        return NotImplemented if w is NotImplemented else Mod(w - self.v, self.p)

    def __mul__(self, o):
        w = self._other(o)
        return NotImplemented if w is NotImplemented else Mod(self.v * w, self.p)

    __rmul__ = __mul__

    def __truediv__(self, o):
        w = self._other(o)
        if w is NotImplemented:
            return NotImplemented
        if w % self.p == 0:
            raise DivisionByZeroError("division by zero in F%d" % self.p)
        return Mod(self.v * pow(w, -1, self.p), self.p)

    def __rtruediv__(self, o):
        w = self._other(o)
        if w is NotImplemented:
            return NotImplemented
        return Mod(w, self.p) / self

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            if self.v == 0:
                raise DivisionByZeroError("division by zero in F%d" % self.p)
            return Mod(pow(pow(self.v, -1, self.p), -n, self.p), self.p)
        return Mod(pow(self.v, n, self.p), self.p)

    def __eq__(self, o):
        if isinstance(o, Mod):
            return self.p == o.p and self.v == o.v
        if isinstance(o, int):
            return (o - self.v) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return "Mod(%d, %d)" % (self.v, self.p)

    def __str__(self):
        return str(self.v)


class Field:
    """Common interface of the two coefficient fields."""

    char = 0
    name = "?"

    def __call__(self, value):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __str__(self):
        return self.name

    def __repr__(self):
        return self.name


class Rationals(Field):
    char = 0
    name = "Q"

    def __call__(self, value):
        if isinstance(value, Mod):
            raise FieldMismatchError("F%d element used over Q" % value.p)
        if isinstance(value, str):
            return Fraction(value)
        return Fraction(value)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def is_positive(self, a) -> bool:
        return a > 0

    def format(self, a) -> str:
        return str(a)

    def elements(self):
        raise ValueError("Q is infinite")


class PrimeField(Field):
    def __init__(self, p: int):
        if p == 2:
            raise PreconditionError("characteristic 2 is excluded")
        if not _is_prime(p):
            raise PreconditionError("%d is not prime" % p)
        self.char = p
        self.p = p
        self.name = "F%d" % p

    def __call__(self, value):
        if isinstance(value, Mod):
            if value.p != self.p:
                raise FieldMismatchError("F%d element used over F%d" % (value.p, self.p))
            return value
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise NotInFieldError("%s is not in F%d" % (value, self.p))
            return Mod(value.numerator * pow(value.denominator, -1, self.p), self.p)
        return Mod(int(value), self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def is_positive(self, a) -> bool:
        # "positive" residues are 1..(p-1)/2
        return 1 <= a.v <= (self.p - 1) // 2

    def format(self, a) -> str:
        return str(a.v)

    def elements(self):
        return [Mod(i, self.p) for i in range(self.p)]


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(spec: str) -> Field:
    """Parse ``Q``, ``F5`` or ``Fp:<p>``."""
    s = spec.strip()
    if s in ("Q", "QQ"):
        return QQ
    if s.startswith("Fp:"):
        s = s[3:]
    elif s.startswith("F"):
        s = s[1:]
    else:
        raise PreconditionError("unknown field spec %r" % spec)
    try:
        p = int(s)
    except ValueError:
        raise PreconditionError("unknown field spec %r" % spec) from None
    return GF(p)


def field_spec_string(field: Field) -> str:
    return field.name


# -- square roots in the field ------------------------------------------------


def _tonelli_shanks(a: int, p: int) -> int:
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def field_sqrt(c, field: Field):
    """Return the canonical square root of ``c`` or ``None`` if it is not a square.

    Over Q the root is nonnegative; over F_p it is the smaller residue.
    """
    c = field(c)
    if field.char == 0:
        if c < 0:
            return None
        n, d = c.numerator, c.denominator
        rn, rd = math.isqrt(n), math.isqrt(d)
        if rn * rn == n and rd * rd == d:
            return Fraction(rn, rd)
        return None
    p = field.p
    a = c.v
    if a == 0:
        return field(0)
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p < _SQRT_SEARCH_LIMIT:
        r = next(x for x in range(1, p) if x * x % p == a)
    else:
        r = _tonelli_shanks(a, p)
    return field(min(r, p - r))


def is_square(c, field: Field) -> bool:
    return field_sqrt(c, field) is not None


# -- polynomials ----------------------------------------------------------------


class Poly:
    """Dense univariate polynomial; ``coeffs[i]`` is the coefficient of ``u^i``.

    The zero polynomial has degree -1.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, coeffs=(), field: Field = QQ):
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, cs, field):
        # trusted constructor: coefficients already in the field
        while cs and not cs[-1]:
            cs.pop()
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = tuple(cs)
        return obj

    @classmethod
    def constant(cls, c, field: Field = QQ) -> "Poly":
        return cls([c], field)

    @classmethod
    def monomial(cls, k: int, field: Field = QQ, c=1) -> "Poly":
        return cls([0] * k + [c], field)

    @classmethod
    def gen(cls, field: Field = QQ) -> "Poly":
        return cls([0, 1], field)

    # basic properties
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_term(self):
        return self.coeff(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, Mod)):
            return self.coeffs == Poly([other], self.field).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return "Poly(%r, %s)" % (str(self), self.field)

    def __str__(self):
        return self.to_str()

    def to_str(self, var: str = "u") -> str:
        return format_poly(self, var)

    # coercion
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldMismatchError("polynomials over %s and %s" % (self.field, other.field))
            return other
        return Poly([other], self.field)

    # ring operations
    def __add__(self, other):
        o = self._coerce(other)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        cs = list(a)
        for i, c in enumerate(b):
            cs[i] = cs[i] + c
        return Poly._raw(cs, self.field)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs], self.field)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.field(other)
            return Poly._raw([a * c for a in self.coeffs], self.field)
        o = self._coerce(other)
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return Poly._raw([], self.field)
        cs = [self.field.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                cs[i + j] = cs[i + j] + x * y
        return Poly._raw(cs, self.field)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly._raw([self.field.one], self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other):
        return divrem(self, self._coerce(other))

    def __floordiv__(self, other):
        return divrem(self, self._coerce(other))[0]

    def __mod__(self, other):
        return divrem(self, self._coerce(other))[1]

    def __truediv__(self, other):
        """Exact division (by a scalar or a polynomial divisor)."""
        if not isinstance(other, Poly):
            c = self.field(other)
            if not c:
                raise DivisionByZeroError("division of a polynomial by zero")
            inv = self.field.one / c
            return Poly._raw([a * inv for a in self.coeffs], self.field)
        q, r = divrem(self, self._coerce(other))
        if r:
            raise ValueError("%s does not divide %s" % (other, self))
        return q

    def __call__(self, x):
        """Evaluate at a field element, or compose when ``x`` is a polynomial."""
        if isinstance(x, Poly):
            return compose(self, x)
        x = self.field(x)
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # calculus
    def derivative(self) -> "Poly":
        return Poly._raw([c * i for i, c in enumerate(self.coeffs)][1:], self.field)

    def hasse(self, j: int) -> "Poly":
        """j-th Hasse derivative: sum of binom(i, j) a_i u^(i-j)."""
        return Poly._raw(
            [c * math.comb(i, j) for i, c in enumerate(self.coeffs)][j:], self.field
        )

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        return self / self.lead

    def primitive(self) -> "Poly":
        """Content-normalized form: monic over F_p, integral with gcd 1 and positive lead over Q."""
        if not self.coeffs or self.field.char:
            return self.monic()
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return Poly([Fraction(v, g) for v in ints], self.field)

    def shift(self, c) -> "Poly":
        """Return f(u + c)."""
        return compose(self, Poly([c, 1], self.field))

    def reverse(self, n: int | None = None) -> "Poly":
        n = self.degree if n is None else n
        return Poly._raw([self.coeff(n - i) for i in range(n + 1)], self.field)


def _check_same_field(f: Poly, h: Poly):
    if f.field != h.field:
        raise FieldMismatchError("polynomials over %s and %s" % (f.field, h.field))


def divrem(f: Poly, h: Poly):
    _check_same_field(f, h)
    if not h.coeffs:
        raise DivisionByZeroError("division by the zero polynomial")
    field = f.field
    r = list(f.coeffs)
    dh = h.degree
    inv = field.one / h.lead
    if len(r) - 1 < dh:
        return Poly._raw([], field), f
    q = [field.zero] * (len(r) - dh)
    for k in range(len(r) - 1 - dh, -1, -1):
        c = r[k + dh] * inv
        q[k] = c
        if c:
            for i, b in enumerate(h.coeffs):
                r[k + i] = r[k + i] - c * b
    return Poly._raw(q, field), Poly._raw(r[:dh], field)


def gcd(f: Poly, h: Poly) -> Poly:
    """Monic greatest common divisor (zero only if both inputs are zero)."""
    _check_same_field(f, h)
    a, b = f, h
    while b:
        a, b = b, divrem(a, b)[1]
    return a.monic()


def xgcd(f: Poly, h: Poly):
    """Return (d, s, t) with s*f + t*h = d monic."""
    _check_same_field(f, h)
    field = f.field
    r0, r1 = f, h
    s0, s1 = Poly([1], field), Poly([], field)
    t0, t1 = Poly([], field), Poly([1], field)
    while r1:
        q, r = divrem(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    c = r0.lead
    return r0 / c, s0 / c, t0 / c


def compose(f: Poly, q: Poly) -> Poly:
    """f(q(t)) by Horner's rule."""
    _check_same_field(f, q)
    acc = Poly._raw([], f.field)
    for c in reversed(f.coeffs):
        acc = acc * q + c
    return acc


def pth_root(f: Poly) -> Poly | None:
    """Return h with h^p = f over F_p, or None if f is not a p-th power.

    Over a prime field the Frobenius fixes every coefficient, so only the
    exponents need to be divisible by p.
    """
    p = f.field.char
    if p == 0:
        raise PreconditionError("p-th roots need positive characteristic")
    cs = f.coeffs
    if any(c for i, c in enumerate(cs) if i % p):
        return None
    return Poly._raw(list(cs[::p]), f.field)


def poly_sqrt(f: Poly) -> Poly | None:
    """Square root of a polynomial, or None.

    The root's leading coefficient is the canonical square root of the
    leading coefficient of ``f``.
    """
    field = f.field
    if not f.coeffs:
        return f
    n = f.degree
    if n % 2:
        return None
    r = field_sqrt(f.lead, field)
    if r is None:
        return None
    m = n // 2
    s = [field.zero] * (m + 1)
    s[m] = r
    inv2r = field.one / (r * 2)
    for k in range(1, m + 1):
        # coefficient of u^(2m-k) in s^2 fixes s[m-k]
        acc = f.coeffs[n - k]
        for i in range(m - k + 1, m):
            j = n - k - i
            if m - k < j <= m:
                acc = acc - s[i] * s[j]
        s[m - k] = acc * inv2r
    root = Poly._raw(s, field)
    return root if root * root == f else None


def squarefree_decomposition(f: Poly) -> dict:
    """Map multiplicity -> monic squarefree part, with f = lead * prod(part^mult).

    Works over Q and F_p (perfect fields), handling p-th power factors.
    """
    if not f.coeffs:
        raise PreconditionError("squarefree decomposition of the zero polynomial")
    field = f.field
    one = Poly([1], field)
    f = f.monic()
    result = {}
    if f.degree < 1:
        return result
    c = gcd(f, f.derivative())
    w = f // c
    i = 1
    while w.degree > 0:
        y = gcd(w, c)
        fac = w // y
        if fac.degree > 0:
            result[i] = result.get(i, one) * fac
        i += 1
        w = y
        c = c // y
    if c.degree > 0:
        # only in characteristic p: the rest is a p-th power
        root = pth_root(c)
        if root is None:
            raise PreconditionError("squarefree decomposition stalled on %s" % c)
        for m, part in squarefree_decomposition(root).items():
            k = m * field.char
            result[k] = result.get(k, one) * part
    return result


class MultiplicityProfile(NamedTuple):
    field: Field
    lead: object
    parts: dict  # multiplicity -> monic squarefree part
    simple_roots: int
    is_pth_power: bool
    pth_root: Poly | None

    def reconstruct(self) -> Poly:
        acc = Poly([self.lead], self.field)
        for m, part in self.parts.items():
            acc = acc * part ** m
        return acc

    @property
    def repeated_part(self) -> dict:
        return {m: p for m, p in self.parts.items() if m > 1}


def multiplicity_profile(f: Poly) -> MultiplicityProfile:
    """Squarefree parts by multiplicity, simple-root count and p-th power flag."""
    if not f.coeffs:
        raise PreconditionError("multiplicity profile of the zero polynomial")
    parts = squarefree_decomposition(f)
    simple = parts[1].degree if 1 in parts else 0
    flag = bool(f.field.char) and f.degree >= 1 and not f.derivative()
    root = pth_root(f) if flag else None
    return MultiplicityProfile(f.field, f.lead, parts, simple, flag, root)


def is_const_times_square(f: Poly) -> bool:
    """True iff f = c * h^2 for a constant c and polynomial h (f nonzero)."""
    if not f.coeffs:
        return False
    return all(m % 2 == 0 for m in squarefree_decomposition(f))


def radical(f: Poly) -> Poly:
    """Product of the distinct monic irreducible factors (squarefree kernel)."""
    acc = Poly([1], f.field)
    for part in squarefree_decomposition(f).values():
        acc = acc * part
    return acc


def rational_roots(f: Poly) -> list:
    """Roots of f lying in its coefficient field, sorted, without multiplicity."""
    field = f.field
    if not f.coeffs:
        raise PreconditionError("roots of the zero polynomial")
    if f.degree < 1:
        return []
    if field.char:
        return [a for a in field.elements() if not f(a)]
    g = f.primitive()
    ints = [int(c) for c in g.coeffs]
    roots = set()
    k = 0
    while ints[k] == 0:
        k += 1
    if k:
        roots.add(Fraction(0))
    a0, an = abs(ints[k]), abs(ints[-1])
    for num in _divisors(a0):
        for den in _divisors(an):
            for s in (1, -1):
                r = Fraction(s * num, den)
                if not g(r):
                    roots.add(r)
    return sorted(roots)


def _divisors(n: int) -> list:
    out = []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            out.append(d)
            if d * d != n:
                out.append(n // d)
    return out


# -- printing -------------------------------------------------------------------


def format_poly(f: Poly, var: str = "u") -> str:
    """Canonical text: descending degree, ``coef*var^k`` terms, ``+``/``-`` separators."""
    if not f.coeffs:
        return "0"
    field = f.field
    out = []
    for k in range(f.degree, -1, -1):
        c = f.coeffs[k]
        if not c:
            continue
        if field.char == 0:
            neg = c < 0
            mag = -c if neg else c
            cs = str(mag)
        else:
            neg = False
            mag = c
            cs = str(c.v)
        if k == 0:
            term = cs
        else:
            mono = var if k == 1 else "%s^%d" % (var, k)
            term = mono if mag == 1 else "%s*%s" % (cs, mono)
        if not out:
            out.append("-" + term if neg else term)
        else:
            out.append(("- " if neg else "+ ") + term)
    return " ".join(out)
