"""Dense univariate polynomial kernels over Z or Z/p on plain int lists.

A polynomial is a list of ints, index = exponent of t.  ``mod`` is None for
integer arithmetic and a prime for F_p.  ``prec`` truncates results mod t^prec.
These are the hot loops behind determinants and discriminants; everything
above them works with LaurentScalar.
"""

from __future__ import annotations

_NAIVE_CUTOFF = 12


def trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce(a, mod):
    if mod is not None:
        a = [c % mod for c in a]
    return trim(a)


def valuation(a):
    for i, c in enumerate(a):
        if c:
            return i
    return None


def add(a, b, mod=None):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return reduce(out, mod)


def sub(a, b, mod=None):
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return reduce(out, mod)


def neg(a, mod=None):
    return reduce([-c for c in a], mod)


def scale(a, c, mod=None):
    return reduce([x * c for x in a], mod)


def truncate(a, prec):
    if prec is not None and len(a) > prec:
        a = trim(a[:prec])
    return a


def _mul_naive(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _pack(a, bits):
    x = 0
    for c in reversed(a):
        x = (x << bits) + c
    return x


def _unpack(x, bits, count):
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    full = 1 << bits
    out = []
    for _ in range(count):
        d = x & mask
        x >>= bits
        if d >= half:
            d -= full
            x += 1
        out.append(d)
    return out


def _mul_kronecker(a, b):
    # signed Kronecker substitution; the big-int product runs in C
    ma = max(abs(c) for c in a)
    mb = max(abs(c) for c in b)
    bound = min(len(a), len(b)) * ma * mb
    bits = bound.bit_length() + 2
    return _unpack(_pack(a, bits) * _pack(b, bits), bits, len(a) + len(b) - 1)


def mul(a, b, mod=None, prec=None):
    if not a or not b:
        return []
    if prec is not None:
        a = a[:prec]
        b = b[:prec]
    if min(len(a), len(b)) <= _NAIVE_CUTOFF:
        out = _mul_naive(a, b)
    else:
        out = _mul_kronecker(a, b)
    if prec is not None:
        out = out[:prec]
    return reduce(out, mod)


def divexact(a, b, mod=None):
    """Quotient of a by b, which must divide a exactly in Z[t] or F_p[t]."""
    a = list(a)
    b = trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return []
    db = len(b) - 1
    lead = b[-1]
    inv = pow(lead, -1, mod) if mod is not None else None
    q = [0] * max(len(a) - db, 0)
    for k in range(len(a) - 1 - db, -1, -1):
        top = a[k + db]
        if top == 0:
            continue
        if mod is not None:
            c = top * inv % mod
        else:
            c, r = divmod(top, lead)
            if r:
                raise ArithmeticError("inexact polynomial division")
        q[k] = c
        for i, y in enumerate(b):
            a[k + i] -= c * y
        if mod is not None:
            for i in range(db + 1):
                a[k + i] %= mod
    if any(a[:db]):
        raise ArithmeticError("inexact polynomial division")
    return trim(q)


def det(rows, mod=None, prec=None):
    """Determinant of a square matrix of polynomials, division free.

    Row-by-row expansion with memoisation on the set of used columns, so the
    cost is O(n 2^n) products and zero entries are skipped.  Suits both the
    small dense matrices of a pencil and banded Sylvester matrices.
    """
    n = len(rows)
    if n == 0:
        return [1]
    states = {0: [1]}
    for k in range(n):
        row = rows[k]
        nxt = {}
        for mask, val in states.items():
            if not val:
                continue
            for j in range(n):
                e = row[j]
                if not e or mask >> j & 1:
                    continue
                # inversions contributed by column j against used higher columns
                sign = bin(mask >> (j + 1)).count("1") & 1
                term = mul(val, e, mod, prec)
                if not term:
                    continue
                key = mask | (1 << j)
                prev = nxt.get(key)
                if sign:
                    nxt[key] = sub(prev or [], term, mod)
                else:
                    nxt[key] = add(prev, term, mod) if prev else term
        states = nxt
    return states.get((1 << n) - 1, [])


def det_linear(a_rows, b_rows, mod=None):
    """Coefficients c_0..c_n (c_i multiplies s^i) of det(s*A + B)."""
    n = len(a_rows)
    states = {0: [[1]]}
    for k in range(n):
        nxt = {}
        for mask, val in states.items():
            for j in range(n):
                if mask >> j & 1:
                    continue
                ea, eb = a_rows[k][j], b_rows[k][j]
                if not ea and not eb:
                    continue
                sign = bin(mask >> (j + 1)).count("1") & 1
                # val is a polynomial in s with polynomial (in t) coefficients
                term = [[] for _ in range(len(val) + 1)]
                for d, c in enumerate(val):
                    if not c:
                        continue
                    if eb:
                        term[d] = add(term[d], mul(c, eb, mod), mod)
                    if ea:
                        term[d + 1] = add(term[d + 1], mul(c, ea, mod), mod)
                key = mask | (1 << j)
                acc = nxt.setdefault(key, [])
                while len(acc) < len(term):
                    acc.append([])
                for d, c in enumerate(term):
                    if c:
                        acc[d] = sub(acc[d], c, mod) if sign else add(acc[d], c, mod)
        states = nxt
    out = states.get((1 << n) - 1, [])
    return out + [[] for _ in range(n + 1 - len(out))]
