"""Pencils of quadrics over the DVR R = k[t]_(t).

A quadric is stored by its monomial coefficients over x_i x_j (i <= j) in the
fixed order (0,0), (0,1), ..., (0,n-1), (1,1), ...  The symmetric matrix view
halves off-diagonal coefficients, which is fine since char k != 2.
Plucker coordinates are the 2x2 minors of the 2 x r coefficient matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .ring import INF, FieldSpec, LaurentScalar, content_valuation, val_t


class DependentPencil(ValueError):
    """The two quadrics span at most a line over K."""


class ZeroForm(ValueError):
    pass


class NotInvertible(ValueError):
    """A coordinate change whose determinant is not a unit of R."""


@lru_cache(maxsize=None)
def monomials(n):
    """Index pairs (i, j), i <= j, in storage order."""
    return tuple((i, j) for i in range(n) for j in range(i, n))


@lru_cache(maxsize=None)
def monomial_index(n):
    return {m: k for k, m in enumerate(monomials(n))}


@lru_cache(maxsize=None)
def plucker_pairs(n):
    r = len(monomials(n))
    return tuple(itertools.combinations(range(r), 2))


@lru_cache(maxsize=None)
def _pair_support(n):
    # the four variable indices touched by each Plucker coordinate
    mons = monomials(n)
    return tuple(mons[a] + mons[b] for a, b in plucker_pairs(n))


def _key(i, j):
    return (i, j) if i <= j else (j, i)


@dataclass(frozen=True)
class QuadraticForm:
    field: FieldSpec
    n: int
    coeffs: tuple  # LaurentScalar per monomial, storage order

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one variable")
        if len(self.coeffs) != self.n * (self.n + 1) // 2:
            raise ValueError("coefficient vector has wrong length")

    @classmethod
    def from_entries(cls, field, n, entries):
        """Build from {(i, j): coefficient of x_i x_j} with 0-based indices."""
        idx = monomial_index(n)
        coeffs = [LaurentScalar.zero(field)] * len(idx)
        for (i, j), c in entries.items():
            if not isinstance(c, LaurentScalar):
                c = LaurentScalar.const(field, c)
            coeffs[idx[_key(i, j)]] = coeffs[idx[_key(i, j)]] + c
        return cls(field, n, tuple(coeffs))

    @classmethod
    def diagonal(cls, field, values):
        return cls.from_entries(field, len(values), {(i, i): v for i, v in enumerate(values)})

    @classmethod
    def from_matrix(cls, field, matrix):
        n = len(matrix)
        entries = {}
        for i in range(n):
            for j in range(i, n):
                a, b = matrix[i][j], matrix[j][i]
                if not isinstance(a, LaurentScalar):
                    a = LaurentScalar.const(field, a)
                    b = LaurentScalar.const(field, b)
                if a != b:
                    raise ValueError("matrix is not symmetric")
                entries[(i, j)] = a if i == j else a + a
        return cls.from_entries(field, n, entries)

    def entry(self, i, j):
        """Coefficient of the monomial x_i x_j."""
        return self.coeffs[monomial_index(self.n)[_key(i, j)]]

    @cached_property
    def matrix(self):
        F = self.field
        half = F.inv(F(2))
        m = [[None] * self.n for _ in range(self.n)]
        for (i, j), c in zip(monomials(self.n), self.coeffs):
            if i == j:
                m[i][i] = c
            else:
                m[i][j] = m[j][i] = c.scale(half)
        return tuple(tuple(row) for row in m)

    def is_zero(self):
        return not any(self.coeffs)

    def valuation(self):
        return content_valuation(self.coeffs)

    def residue(self):
        """Reduction mod t as a form over k (entries must lie in R)."""
        F = self.field
        return QuadraticForm(F, self.n, tuple(LaurentScalar.const(F, c.residue()) for c in self.coeffs))

    def shift(self, k):
        return QuadraticForm(self.field, self.n, tuple(c.shift(k) for c in self.coeffs))

    def __add__(self, other):
        return QuadraticForm(self.field, self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return QuadraticForm(self.field, self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, scalar):
        if not isinstance(scalar, LaurentScalar):
            scalar = LaurentScalar.const(self.field, scalar)
        return QuadraticForm(self.field, self.n, tuple(scalar * c for c in self.coeffs))

    __rmul__ = __mul__

    def evaluate(self, point):
        """Value at a k-point after reducing mod t."""
        F = self.field
        total = F.zero()
        for (i, j), c in zip(monomials(self.n), self.coeffs):
            r = c.residue()
            if r:
                total = F.add(total, F.mul(r, F.mul(point[i], point[j])))
        return total


@dataclass(frozen=True)
class WeightSystem:
    w: tuple

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(int(x) for x in self.w))

    @classmethod
    def zero(cls, n):
        return cls((0,) * n)

    @property
    def n(self):
        return len(self.w)

    @property
    def total(self):
        return sum(self.w)

    @property
    def effective(self):
        return all(x >= 0 for x in self.w)

    def effective_shift(self):
        """Subtract the minimum weight; destabilizes iff the original does."""
        m = min(self.w)
        return WeightSystem(tuple(x - m for x in self.w))

    def __add__(self, other):
        return WeightSystem(tuple(a + b for a, b in zip(self.w, other.w)))

    def __neg__(self):
        return WeightSystem(tuple(-a for a in self.w))

    def __iter__(self):
        return iter(self.w)

    def __len__(self):
        return len(self.w)


def _det_laurent(field, rows):
    from . import _poly

    n = len(rows)
    if n == 0:
        return LaurentScalar.const(field, 1)
    lo = min((c.val for row in rows for c in row if c), default=0)
    if field.p is None:
        from .ring import lcm_denominator

        mult = lcm_denominator([c for row in rows for c in row])
    else:
        mult = 1
    from .ring import from_int_poly, to_int_poly

    ints = [[to_int_poly(c, -lo, mult) for c in row] for row in rows]
    d = _poly.det(ints, field.p)
    return from_int_poly(field, d, shift=lo * n, divisor=mult ** n)


@dataclass(frozen=True)
class CoordinateChange:
    """Element of GL_n(R); acts on quadrics by x -> C x."""

    field: FieldSpec
    matrix: tuple  # rows of LaurentScalar

    def __post_init__(self):
        rows = tuple(
            tuple(c if isinstance(c, LaurentScalar) else LaurentScalar.const(self.field, c) for c in row)
            for row in self.matrix
        )
        object.__setattr__(self, "matrix", rows)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValueError("coordinate change must be square")
        if any(not c.in_R() for row in rows for c in row):
            raise NotInvertible("entries must lie in R")
        if val_t(self.det()) != 0:
            raise NotInvertible("determinant is not a unit of R")

    @classmethod
    def identity(cls, field, n):
        return cls(field, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def permutation(cls, field, perm):
        """x_i -> x_perm[i]."""
        n = len(perm)
        return cls(field, tuple(tuple(int(perm[i] == j) for j in range(n)) for i in range(n)))

    @classmethod
    def transvection(cls, field, n, i, j, c):
        """x_i -> x_i + c x_j (i != j)."""
        if i == j:
            raise ValueError("transvection needs i != j")
        rows = [[int(a == b) for b in range(n)] for a in range(n)]
        rows[i][j] = field(c)
        return cls(field, tuple(tuple(r) for r in rows))

    @property
    def n(self):
        return len(self.matrix)

    def det(self):
        return _det_laurent(self.field, self.matrix)

    def is_identity(self):
        return all(
            c == LaurentScalar.const(self.field, int(i == j))
            for i, row in enumerate(self.matrix)
            for j, c in enumerate(row)
        )

    def is_constant(self):
        return all(c.is_constant() for row in self.matrix for c in row)

    def constants(self):
        if not self.is_constant():
            raise ValueError("coordinate change has non-constant entries")
        return [[c.coeff(0) for c in row] for row in self.matrix]

    def __matmul__(self, other):
        n = self.n
        zero = LaurentScalar.zero(self.field)
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = zero
                for k in range(n):
                    a = self.matrix[i][k]
                    b = other.matrix[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            rows.append(tuple(row))
        return CoordinateChange(self.field, tuple(rows))

    def inverse(self):
        """Inverse of a coordinate change with entries in k."""
        from .linalg import mat_inverse

        return CoordinateChange(self.field, tuple(tuple(r) for r in mat_inverse(self.field, self.constants())))


@dataclass(frozen=True)
class Pencil:
    f: QuadraticForm
    g: QuadraticForm

    def __post_init__(self):
        if self.f.n != self.g.n or self.f.field != self.g.field:
            raise ValueError("quadrics live in different spaces")

    @property
    def n(self):
        return self.f.n

    @property
    def field(self):
        return self.f.field

    @classmethod
    def from_matrices(cls, field, a, b):
        return cls(QuadraticForm.from_matrix(field, a), QuadraticForm.from_matrix(field, b))

    @classmethod
    def diagonal(cls, field, a, b):
        return cls(QuadraticForm.diagonal(field, a), QuadraticForm.diagonal(field, b))

    def rows(self):
        return self.f.coeffs, self.g.coeffs

    def is_integral(self):
        return all(c.in_R() for c in self.f.coeffs + self.g.coeffs)

    def is_normalized(self):
        return self.is_integral() and plucker_valuation(self) == 0

    def mix(self, a, b, c, d):
        """Basis change (f, g) -> (a f + b g, c f + d g)."""
        return Pencil(self.f * a + self.g * b, self.f * c + self.g * d)

    def central_fibre(self):
        from .diagnose import CentralFibre

        return CentralFibre.of(self)


@dataclass(frozen=True)
class PluckerVector:
    n: int
    minors: tuple  # LaurentScalar per pair in plucker_pairs(n)

    def valuation(self):
        return content_valuation(self.minors)

    def __getitem__(self, pair):
        (a, b) = pair
        idx = monomial_index(self.n)
        ia, ib = idx[_key(*a)], idx[_key(*b)]
        sign = 1
        if ia > ib:
            ia, ib, sign = ib, ia, -1
        if ia == ib:
            return LaurentScalar.zero(self.minors[0].field)
        k = plucker_pairs(self.n).index((ia, ib))
        return self.minors[k] if sign == 1 else -self.minors[k]


def plucker(P):
    """All 2x2 minors lambda_a mu_b - lambda_b mu_a of the coefficient matrix."""
    f, g = P.rows()
    zero = LaurentScalar.zero(P.field)
    out = []
    for a, b in plucker_pairs(P.n):
        fa, fb, ga, gb = f[a], f[b], g[a], g[b]
        left = fa * gb if fa and gb else zero
        right = fb * ga if fb and ga else zero
        out.append(left - right)
    if not any(out):
        raise DependentPencil("all Plucker coordinates vanish")
    return PluckerVector(P.n, tuple(out))


def plucker_valuation(P):
    return plucker(P).valuation()


def _substitute(q, C):
    """Coefficients of q(C y) in the monomials of y."""
    n = q.n
    F = q.field
    M = C.matrix
    mons = monomials(n)
    zero = LaurentScalar.zero(F)
    out = [zero] * len(mons)
    constant = C.is_constant()
    if constant:
        cm = [[c.coeff(0) for c in row] for row in M]
    for (i, j), a in zip(mons, q.coeffs):
        if not a:
            continue
        for k, (p, s) in enumerate(mons):
            if constant:
                if p == s:
                    w = F.mul(cm[i][p], cm[j][p])
                else:
                    w = F.add(F.mul(cm[i][p], cm[j][s]), F.mul(cm[i][s], cm[j][p]))
                if w:
                    out[k] = out[k] + a.scale(w)
            else:
                if p == s:
                    w = M[i][p] * M[j][p]
                else:
                    w = M[i][p] * M[j][s] + M[i][s] * M[j][p]
                if w:
                    out[k] = out[k] + a * w
    return QuadraticForm(F, n, tuple(out))


def _weigh(q, rho):
    w = rho.w
    return QuadraticForm(
        q.field, q.n, tuple(c.shift(w[i] + w[j]) for (i, j), c in zip(monomials(q.n), q.coeffs))
    )


def act(P, rho, C=None):
    """Substitute x -> C x, then x_i -> t^{w_i} x_i, in both quadrics.

    As matrices: A -> F^T A F with F = C diag(t^w).  The result spans a pencil
    over K and is generally not normalized.
    """
    if len(rho) != P.n:
        raise ValueError("weight system has wrong length")
    f, g = P.f, P.g
    if C is not None and not C.is_identity():
        f, g = _substitute(f, C), _substitute(g, C)
    return Pencil(_weigh(f, rho), _weigh(g, rho))


def val_rho(q, rho):
    """max N with t^-N (rho . q) integral: min of val(q_ij) + w_i + w_j."""
    best = INF
    w = rho.w
    for (i, j), c in zip(monomials(q.n), q.coeffs):
        if c:
            best = min(best, c.val + w[i] + w[j])
    if best == INF:
        raise ZeroForm("val_rho of the zero form")
    return best


def mult(P, rho, C=None):
    """Multiplicity: least t-valuation of the Plucker coordinates of act(P, rho, C)."""
    return plucker_valuation(act(P, rho, C))


def plucker_profile(P):
    """Valuation of each nonzero Plucker coordinate with its variable support.

    mult(P, rho) is the minimum over the profile of v + w_i + w_j + w_l + w_m,
    which lets a search try many weight systems against one coordinate change.
    """
    vec = plucker(P)
    support = _pair_support(P.n)
    return [(m.val, support[k]) for k, m in enumerate(vec.minors) if m]


def mult_from_profile(profile, w):
    return min(v + w[a] + w[b] + w[c] + w[d] for v, (a, b, c, d) in profile)


def saturate(f, g=None):
    """Normalize a K-basis of a pencil to an R-basis with Plucker valuation 0.

    Smith normal form of the 2 x r coefficient matrix over the DVR, done with
    division only by powers of t: pick a pivot of least valuation t^d1 u,
    clear its column with the row operation (u, -b t^-d1) (determinant u, a
    unit), then strip t^d1 and t^d2 from the two rows.  Returns the pencil and
    the shed valuation d1 + d2, which equals the input's Plucker valuation.
    """
    if isinstance(f, Pencil):
        f, g = f.f, f.g
    F = f.field
    rows = [list(f.coeffs), list(g.coeffs)]
    best = None
    for r in range(2):
        for j, c in enumerate(rows[r]):
            if c:
                key = (c.val, len(c.coeffs), r, j)
                if best is None or key < best:
                    best = key
    if best is None:
        raise DependentPencil("both quadrics vanish")
    d1, _, pr, pj = best
    qr = 1 - pr
    pivot_row, other = rows[pr], rows[qr]
    u = pivot_row[pj].unit_part()
    b = other[pj].shift(-d1)
    zero = LaurentScalar.zero(F)
    reduced = []
    for x, y in zip(pivot_row, other):
        v = u * y if y else zero
        if b and x:
            v = v - b * x
        reduced.append(v)
    d2 = content_valuation(reduced)
    if d2 == INF:
        raise DependentPencil("quadrics are proportional over K")
    if d1 == 0 and d2 == 0:
        # already an integral basis with Plucker valuation 0
        return Pencil(f, g), 0
    new = [None, None]
    new[pr] = QuadraticForm(F, f.n, tuple(x.shift(-d1) for x in pivot_row))
    new[qr] = QuadraticForm(F, f.n, tuple(x.shift(-d2) for x in reduced))
    return Pencil(new[0], new[1]), d1 + d2


def normalize_pencil(P):
    return saturate(P.f, P.g)[0]
