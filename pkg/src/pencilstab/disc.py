"""Pencil determinants and discriminants of binary forms.

D(Phi) for Phi = sum c_i lam^i mu^(n-i) is the classical integral
discriminant: (-1)^(n(n-1)/2) Res(Phi(x,1), d/dx Phi(x,1)) / c_n, with the
resultant taken at formal degrees n and n-1.  It is an integer polynomial in
the c_i, homogeneous of degree 2n-2, of weight n(n-1), and satisfies
D(Phi o M) = det(M)^(n(n-1)) D(Phi) for M in GL_2; all of this survives
reduction mod p, including p | n.  A vanishing leading coefficient is
handled by D_n(c_0..c_{n-1}, 0) = c_{n-1}^2 D_{n-1}(c_0..c_{n-1}).  The
determinant itself comes from the n x n Bezout matrix of (f, f'), whose
determinant is c_n^2 D.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _poly
from .ring import INF, LaurentScalar, from_int_poly, lcm_denominator, to_int_poly


@dataclass(frozen=True)
class BinaryForm:
    """sum_i coeffs[i] * lam^i * mu^(degree - i)."""

    field: object
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(
            c if isinstance(c, LaurentScalar) else LaurentScalar.const(self.field, c) for c in self.coeffs
        ))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not any(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def scale(self, x):
        return BinaryForm(self.field, tuple(x * c for c in self.coeffs))

    def weighted(self, xi):
        """c_i -> xi^i c_i, i.e. lam -> xi lam."""
        out, p = [], LaurentScalar.const(self.field, 1)
        for c in self.coeffs:
            out.append(p * c)
            p = p * xi
        return BinaryForm(self.field, tuple(out))


def _scaled_int_matrix(q):
    """(integer matrix of alpha t^-v Q, alpha, v) for a quadric Q.

    The matrix of Q has halves off the diagonal, so alpha carries a factor 2.
    """
    from .pencil import monomials

    F, n = q.field, q.n
    nz = [c for c in q.coeffs if c]
    if not nz:
        return [[[] for _ in range(n)] for _ in range(n)], 1, 0
    v = min(c.val for c in nz)
    L = lcm_denominator(nz) if F.p is None else 1
    rows = [[[] for _ in range(n)] for _ in range(n)]
    for (i, j), c in zip(monomials(n), q.coeffs):
        if not c:
            continue
        if i == j:
            rows[i][i] = to_int_poly(c, -v, 2 * L)
        else:
            rows[i][j] = rows[j][i] = to_int_poly(c, -v, L)
    return rows, 2 * L, v


def _scaled_coefficients(P):
    """Integer coefficients c'_i of det(s A' + B') with the scale data.

    A' = alpha t^-vA A and B' = beta t^-vB B, so
    c'_i = alpha^i beta^(n-i) t^-(vA i + vB (n-i)) c_i.
    """
    A, alpha, vA = _scaled_int_matrix(P.f)
    B, beta, vB = _scaled_int_matrix(P.g)
    cs = _poly.det_linear(A, B, P.field.p)
    return cs, alpha, vA, beta, vB


def pencil_determinant(P):
    """Delta(lam, mu) = det(lam A + mu B) as a BinaryForm of degree n."""
    F, n = P.field, P.n
    cs, alpha, vA, beta, vB = _scaled_coefficients(P)
    out = []
    for i, c in enumerate(cs):
        out.append(from_int_poly(F, c, shift=vA * i + vB * (n - i), divisor=alpha ** i * beta ** (n - i)))
    return BinaryForm(F, tuple(out))


def _bezout(c, mod):
    """Bezout matrix of f = sum c_i x^i and f' (n x n, entries in Z[t] or F_p[t]).

    Its determinant is c_n^2 D(c) as a polynomial identity in the c_i, so it
    specializes correctly in every characteristic.
    """
    n = len(c) - 1
    d = [_poly.scale(c[i + 1], i + 1, mod) for i in range(n)] + [[]]
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = []
            for k in range(min(i, n - 1 - j) + 1):
                a = _poly.mul(c[j + k + 1], d[i - k], mod)
                b = _poly.mul(c[i - k], d[j + k + 1], mod)
                acc = _poly.add(acc, _poly.sub(a, b, mod), mod)
            row.append(acc)
        rows.append(row)
    return rows


def _disc_exact(c, mod):
    n = len(c) - 1
    if n <= 1:
        return [1]
    if not c[n]:
        if not c[n - 1]:
            return []
        sq = _poly.mul(c[n - 1], c[n - 1], mod)
        return _poly.mul(sq, _disc_exact(c[:n], mod), mod)
    res = _poly.det(_bezout(c, mod), mod)
    return _poly.divexact(res, _poly.mul(c[n], c[n], mod), mod)


def _disc_valuation(c, mod):
    n = len(c) - 1
    if n <= 1:
        return 0
    if not c[n]:
        if not c[n - 1]:
            return INF
        return 2 * _poly.valuation(c[n - 1]) + _disc_valuation(c[:n], mod)
    if c[0] and _poly.valuation(c[0]) < _poly.valuation(c[n]):
        # D is invariant under lam <-> mu; divide by the cheaper end
        c = c[::-1]
    vc = 2 * _poly.valuation(c[n])
    bound = 2 * n * max(len(x) for x in c) + 1
    prec = 8 + vc
    rows = _bezout(c, mod)
    while True:
        res = _poly.det(rows, mod, prec)
        if res:
            return _poly.valuation(res) - vc
        if prec > bound:
            return INF
        prec *= 2


def _form_to_ints(Phi):
    F = Phi.field
    nz = [c for c in Phi.coeffs if c]
    if not nz:
        return None, 1, 0
    v = min(c.val for c in nz)
    L = lcm_denominator(nz) if F.p is None else 1
    return [to_int_poly(c, -v, L) for c in Phi.coeffs], L, v


def binary_discriminant(Phi):
    """Exact D(Phi) as a LaurentScalar; zero iff Phi has a repeated root in P^1."""
    F, n = Phi.field, Phi.degree
    if n < 2:
        raise ValueError("discriminant needs degree >= 2")
    cs, L, v = _form_to_ints(Phi)
    if cs is None:
        return LaurentScalar.zero(F)
    # D(L t^-v c) = (L t^-v)^(2n-2) D(c)
    d = _disc_exact(cs, F.p)
    return from_int_poly(F, d, shift=v * (2 * n - 2), divisor=L ** (2 * n - 2))


def binary_discriminant_valuation(Phi):
    cs, L, v = _form_to_ints(Phi)
    if cs is None:
        return INF
    return _disc_valuation(cs, Phi.field.p) + v * (2 * Phi.degree - 2)


def pencil_discriminant(P):
    return binary_discriminant(pencil_determinant(P))


def disc_valuation(P):
    """val_t D(det(lam A + mu B)); +inf iff the discriminant vanishes in K.

    Works from the integral scaled determinant and only computes the
    Sylvester resultant to the precision needed to see its leading term.
    """
    n = P.n
    cs, alpha, vA, beta, vB = _scaled_coefficients(P)
    if not any(cs):
        return INF
    return _disc_valuation(cs, P.field.p) + (vA + vB) * n * (n - 1)


def generic_fibre_smooth(P):
    """Delta is not identically zero and has n distinct roots in P^1(K-bar)."""
    return disc_valuation(P) != INF


def check_scaling_identity(A, B, xi, zeta):
    """D(det(lam xi A + mu zeta B)) == xi^(n(n-1)) zeta^(n(n-1)) D(det(lam A + mu B))."""
    from .pencil import Pencil

    n = A.n
    lhs = pencil_discriminant(Pencil(A * xi, B * zeta))
    e = n * (n - 1)
    rhs = (xi ** e) * (zeta ** e) * pencil_discriminant(Pencil(A, B))
    return lhs == rhs
