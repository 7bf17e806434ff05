"""Exact arithmetic over Q or F_p and over the Laurent ring k[t, 1/t].

Field elements are plain Python values: ``Fraction`` for Q and ``int`` in
``range(p)`` for F_p.  ``LaurentScalar`` is an immutable element of k[t, 1/t]
stored as (lead exponent, coefficient tuple); its lead exponent is the
t-adic valuation, so membership in the DVR R = k[t]_(t) is ``val >= 0``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce as _fold

INF = math.inf
MAX_INPUT_DEGREE = 64


class FieldDivisionByZero(ZeroDivisionError):
    """Inverse of zero requested in a coefficient field."""


class LiteralSyntaxError(ValueError):
    def __init__(self, message, text, column):
        super().__init__(f"{message} at column {column}: {text!r}")
        self.text = text
        self.column = column


def _is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    return all(p % d for d in range(3, math.isqrt(p) + 1, 2))


@dataclass(frozen=True)
class FieldSpec:
    """Q when ``p`` is None, otherwise the prime field F_p with p odd."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not _is_prime(self.p):
                raise ValueError(f"{self.p} is not prime")
            if self.p == 2:
                raise ValueError("characteristic 2 is not supported")

    @classmethod
    def rationals(cls):
        return cls(None)

    @classmethod
    def prime(cls, p):
        return cls(p)

    @classmethod
    def parse(cls, text):
        s = text.strip().upper().replace(" ", "")
        if s in ("Q", "QQ"):
            return cls.rationals()
        m = re.fullmatch(r"(?:GF|F|FF)\(?(\d+)\)?", s)
        if not m:
            raise ValueError(f"unknown field {text!r}; use 'QQ' or 'GF(p)'")
        return cls.prime(int(m.group(1)))

    @property
    def is_rational(self):
        return self.p is None

    @property
    def characteristic(self):
        return 0 if self.p is None else self.p

    def __str__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    # -- element operations ------------------------------------------------
    def __call__(self, x):
        """Coerce an int, Fraction or numeric string into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldDivisionByZero(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else a * b % self.p

    def neg(self, a):
        return -a if self.p is None else -a % self.p

    def inv(self, a):
        if a == 0:
            raise FieldDivisionByZero("inverse of zero")
        return 1 / Fraction(a) if self.p is None else pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def eq(self, a, b):
        return self.sub(a, b) == 0

    def elements(self):
        """All elements of a finite field, in increasing order."""
        if self.p is None:
            raise ValueError("Q is infinite")
        return range(self.p)

    def sqrt(self, a):
        """A square root of ``a`` in the field, or None if there is none."""
        a = self(a)
        if a == 0:
            return a
        if self.p is None:
            n, d = a.numerator, a.denominator
            if n < 0:
                return None
            rn, rd = math.isqrt(n), math.isqrt(d)
            return Fraction(rn, rd) if rn * rn == n and rd * rd == d else None
        p = self.p
        if pow(a, (p - 1) // 2, p) != 1:
            return None
        # Tonelli-Shanks
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, r, tt = s, pow(z, q, p), pow(a, (q + 1) // 2, p), pow(a, q, p)
        while tt != 1:
            i, t2 = 0, tt
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c, r, tt = i, b * b % p, r * b % p, tt * b * b % p
        return r

    def format(self, a):
        return str(a)


QQ = FieldSpec.rationals()


class LaurentScalar:
    """Element of k[t, 1/t] in canonical form.

    ``coeffs[0]`` is the coefficient of ``t**val`` and is nonzero; zero is the
    unique value with empty ``coeffs`` (its ``val`` attribute is None).
    """

    __slots__ = ("field", "val", "coeffs", "_hash")

    def __init__(self, field, val, coeffs):
        self.field = field
        coeffs = [field(c) for c in coeffs]
        lo = 0
        while lo < len(coeffs) and coeffs[lo] == 0:
            lo += 1
        hi = len(coeffs)
        while hi > lo and coeffs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            self.val, self.coeffs = None, ()
        else:
            self.val, self.coeffs = val + lo, tuple(coeffs[lo:hi])
        self._hash = None

    @classmethod
    def _raw(cls, field, val, coeffs):
        # coeffs already reduced and trimmed on both ends
        obj = cls.__new__(cls)
        obj.field = field
        if coeffs:
            obj.val, obj.coeffs = val, tuple(coeffs)
        else:
            obj.val, obj.coeffs = None, ()
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, field):
        return cls._raw(field, None, ())

    @classmethod
    def const(cls, field, c):
        return cls(field, 0, [c])

    @classmethod
    def monomial(cls, field, exp, c=1):
        return cls(field, exp, [c])

    @classmethod
    def from_dict(cls, field, terms):
        if not terms:
            return cls.zero(field)
        lo, hi = min(terms), max(terms)
        coeffs = [field(0)] * (hi - lo + 1)
        for e, c in terms.items():
            coeffs[e - lo] = field.add(coeffs[e - lo], field(c))
        return cls(field, lo, coeffs)

    @classmethod
    def parse(cls, field, text, allow_negative=False, max_degree=None):
        return parse_literal(field, text, allow_negative, max_degree)

    # -- inspection ---------------------------------------------------------
    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self):
        """Largest exponent present (None for zero)."""
        return None if not self.coeffs else self.val + len(self.coeffs) - 1

    def coeff(self, e):
        if not self.coeffs or e < self.val or e > self.degree:
            return self.field.zero()
        return self.coeffs[e - self.val]

    def terms(self):
        return {self.val + i: c for i, c in enumerate(self.coeffs) if c != 0}

    def is_constant(self):
        return not self.coeffs or (self.val == 0 and len(self.coeffs) == 1)

    def in_R(self):
        return not self.coeffs or self.val >= 0

    def residue(self):
        """Image in k of an element of R (the value at t = 0)."""
        if self.coeffs and self.val < 0:
            raise ValueError("element is not in R")
        return self.coeff(0)

    def unit_part(self):
        """self * t^(-val): the unit u with self = t^val * u."""
        if not self.coeffs:
            raise ValueError("zero has no unit part")
        return LaurentScalar._raw(self.field, 0, self.coeffs)

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, LaurentScalar):
            if other.field != self.field:
                raise ValueError("mixed coefficient fields")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentScalar.const(self.field, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        F = self.field
        lo = min(self.val, other.val)
        hi = max(self.degree, other.degree)
        out = [0] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[self.val - lo + i] = c
        for i, c in enumerate(other.coeffs):
            k = other.val - lo + i
            out[k] = F.add(out[k], c)
        return LaurentScalar(F, lo, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return LaurentScalar._raw(F, self.val, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return LaurentScalar.zero(self.field)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(b) == 1:
            c = b[0]
            return LaurentScalar._raw(F, self.val + other.val, [F.mul(x, c) for x in a])
        if len(a) == 1:
            c = a[0]
            return LaurentScalar._raw(F, self.val + other.val, [F.mul(c, y) for y in b])
        if F.p is not None:
            from . import _poly

            out = _poly.mul(list(a), list(b), F.p)
            return LaurentScalar(F, self.val + other.val, out)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        # leading and trailing products are nonzero over a domain
        return LaurentScalar._raw(F, self.val + other.val, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if len(self.coeffs) != 1:
                raise ValueError("only monomials are invertible in k[t, 1/t]")
            F = self.field
            return LaurentScalar._raw(F, self.val * k, [F(F.inv(self.coeffs[0]) ** (-k))])
        out = LaurentScalar.const(self.field, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k):
        """Multiply by t^k."""
        if not self.coeffs or k == 0:
            return self
        return LaurentScalar._raw(self.field, self.val + k, self.coeffs)

    def scale(self, c):
        F = self.field
        c = F(c)
        if c == 0:
            return LaurentScalar.zero(F)
        return LaurentScalar._raw(F, self.val, [F.mul(x, c) for x in self.coeffs])

    def truncate(self, prec):
        """Drop all terms t^e with e >= prec."""
        if not self.coeffs or self.degree < prec:
            return self
        return LaurentScalar(self.field, self.val, self.coeffs[: max(prec - self.val, 0)])

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentScalar.const(self.field, other)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self.field == other.field and self.val == other.val and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.val, self.coeffs))
        return self._hash

    def __repr__(self):
        return f"LaurentScalar({format_literal(self)!r}, {self.field})"

    def __str__(self):
        return format_literal(self)


def val_t(x):
    """t-adic valuation; +inf for zero."""
    return INF if not x.coeffs else x.val


def is_unit_in_R(x):
    return bool(x.coeffs) and x.val == 0


def normalize(x):
    return LaurentScalar(x.field, x.val if x.coeffs else 0, x.coeffs)


def content_valuation(items):
    """Minimum valuation over a collection of scalars (+inf if all are zero)."""
    return min((val_t(x) for x in items), default=INF)


def lcm_denominator(items):
    """Least common multiple of all coefficient denominators (Q only)."""
    dens = [c.denominator for x in items for c in x.coeffs]
    return _fold(math.lcm, dens, 1)


def to_int_poly(x, shift=0, multiplier=1):
    """Coefficients of t^shift * multiplier * x as an int list from t^0.

    Over Q the caller must pick ``multiplier`` so every coefficient becomes an
    integer; over F_p the entries are residues.
    """
    if not x.coeffs:
        return []
    start = x.val + shift
    if start < 0:
        raise ValueError("negative exponent after shift")
    F = x.field
    if F.p is None:
        body = []
        for c in x.coeffs:
            v = c * multiplier
            if v.denominator != 1:
                raise ValueError("multiplier does not clear denominators")
            body.append(v.numerator)
    else:
        body = [c * multiplier % F.p for c in x.coeffs]
    return [0] * start + body


def from_int_poly(field, coeffs, shift=0, divisor=1):
    """Inverse of ``to_int_poly``: t^shift * coeffs / divisor."""
    if field.p is None:
        d = Fraction(divisor)
        return LaurentScalar(field, shift, [Fraction(c) / d for c in coeffs])
    inv = pow(divisor % field.p, -1, field.p)
    return LaurentScalar(field, shift, [c * inv for c in coeffs])


# -- literal syntax -----------------------------------------------------------

_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
    (?:
      (?P<coef>\d+(?:\s*/\s*\d+)?)\s*(?:\*\s*(?P<t1>t)(?:\s*\^\s*(?P<e1>-?\d+))?)?
      |
      (?P<t2>t)(?:\s*\^\s*(?P<e2>-?\d+))?
    )\s*""",
    re.VERBOSE,
)


def parse_literal(field, text, allow_negative=False, max_degree=None):
    """Parse a sum of terms ``c*t^e`` (whitespace-insensitive)."""
    if max_degree is None:
        max_degree = MAX_INPUT_DEGREE
    terms = {}
    pos = 0
    first = True
    stripped = text.strip()
    if not stripped:
        raise LiteralSyntaxError("empty literal", text, 1)
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or (m.group("coef") is None and m.group("t2") is None):
            raise LiteralSyntaxError("unexpected input", text, pos + 1)
        if not first and m.group("sign") is None:
            raise LiteralSyntaxError("missing '+' or '-' between terms", text, m.start() + 1)
        first = False
        coef = m.group("coef")
        c = Fraction(coef.replace(" ", "")) if coef else Fraction(1)
        if m.group("sign") == "-":
            c = -c
        if coef and m.group("t1") is None:
            e = 0
        else:
            es = m.group("e1") if coef else m.group("e2")
            e = int(es) if es is not None else 1
        if e < 0 and not allow_negative:
            raise LiteralSyntaxError("negative exponent of t", text, m.start() + 1)
        if e > max_degree:
            raise LiteralSyntaxError(f"exponent {e} exceeds cap {max_degree}", text, m.start() + 1)
        try:
            value = field(c)
        except ZeroDivisionError as exc:
            raise LiteralSyntaxError(str(exc), text, m.start() + 1) from None
        terms[e] = field.add(terms.get(e, field.zero()), value)
        pos = m.end()
    return LaurentScalar.from_dict(field, terms)


def format_literal(x):
    """Canonical text form, ascending exponents; inverse of ``parse_literal``."""
    if not x.coeffs:
        return "0"
    parts = []
    for e, c in sorted(x.terms().items()):
        neg = x.field.p is None and c < 0
        mag = -c if neg else c
        if e == 0:
            body = str(mag)
        else:
            tpart = "t" if e == 1 else f"t^{e}"
            body = tpart if mag == 1 else f"{mag}*{tpart}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)
