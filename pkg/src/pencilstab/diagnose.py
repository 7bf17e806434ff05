"""Diagnostics on the central fibre X_0 = {f_bar = g_bar = 0} of a pencil.

Everything here is evidence of instability rather than a decision procedure:
a low-rank member of the reduced pencil, an (n-3)-plane inside X_0 over F_p,
or a singular point at which neither generator has a linear term.  The
witness builders turn the first and last of these into explicit destabilizing
(weight system, coordinate change) pairs for the stability search.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction

from . import _poly, linalg
from .pencil import CoordinateChange, QuadraticForm, WeightSystem, act, monomials

DEFAULT_SUBSPACE_CAP = 10**6


class ZeroPencil(ValueError):
    pass


class FieldTooLarge(ValueError):
    pass


class PointNotOnFibre(ValueError):
    pass


@dataclass(frozen=True)
class CentralFibre:
    f_bar: QuadraticForm
    g_bar: QuadraticForm

    @classmethod
    def of(cls, P):
        if not P.is_integral():
            raise ValueError("central fibre needs a pencil with entries in R")
        return cls(P.f.residue(), P.g.residue())

    @property
    def field(self):
        return self.f_bar.field

    @property
    def n(self):
        return self.f_bar.n


@dataclass(frozen=True)
class PointDiagnosis:
    point: tuple
    is_singular: bool
    is_hypersurface_singularity: bool | None
    coordinate_change: CoordinateChange  # moves e_n to the point


def _kmatrix(q):
    return [[c.coeff(0) for c in row] for row in q.matrix]


def _int_matrix(q):
    """Integer (or residue) matrix proportional to the matrix of a k-form."""
    F, n = q.field, q.n
    vals = [c.coeff(0) for c in q.coeffs]
    L = math.lcm(*(Fraction(v).denominator for v in vals)) if F.p is None else 1
    rows = [[[] for _ in range(n)] for _ in range(n)]
    for (i, j), v in zip(monomials(n), vals):
        if v == 0:
            continue
        if i == j:
            x = v * 2 * L
        else:
            x = v * L
        x = int(x) if F.p is None else x % F.p
        rows[i][j] = rows[j][i] = [x]
    return rows


# -- univariate helpers over k --------------------------------------------------

def _upoly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _upoly_rem(F, a, b):
    a = list(a)
    inv = F.inv(b[-1])
    while len(a) >= len(b):
        c = F.mul(a[-1], inv)
        shift = len(a) - len(b)
        for i, y in enumerate(b):
            a[shift + i] = F.sub(a[shift + i], F.mul(c, y))
        _upoly_trim(a)
        if not a:
            break
    return a


def _upoly_gcd(F, a, b):
    a, b = _upoly_trim([F(x) for x in a]), _upoly_trim([F(x) for x in b])
    while b:
        a, b = b, _upoly_rem(F, a, b)
    return a


def _has_common_projective_root(F, forms, degree):
    """forms: coefficient lists c_0..c_d of binary forms sum c_i s^i (mu = 1)."""
    nonzero = [f for f in forms if any(F(c) != 0 for c in f)]
    if not nonzero:
        return True
    # (1:0) is a root of a form iff its s^degree coefficient vanishes
    if all(F(f[degree]) == 0 if len(f) > degree else True for f in nonzero):
        return True
    g = []
    for f in nonzero:
        g = _upoly_gcd(F, g, f) if g else _upoly_trim([F(c) for c in f])
    return len(g) > 1


def _minor_forms(F, A, B, size):
    n = len(A)
    out = []
    for rows in itertools.combinations(range(n), size):
        for cols in itertools.combinations(range(n), size):
            sa = [[A[r][c] for c in cols] for r in rows]
            sb = [[B[r][c] for c in cols] for r in rows]
            cs = _poly.det_linear(sa, sb, F.p)
            out.append([F(c[0]) if c else F.zero() for c in cs])
    return out


def min_rank_in_pencil(fibre):
    """Least rank of lam f_bar + mu g_bar over (lam:mu) in P^1(k-bar).

    Rank <= r somewhere iff all (r+1)-minors share a projective root, which
    is decided by a gcd over k, so no field extension is needed.
    """
    F, n = fibre.field, fibre.n
    if fibre.f_bar.is_zero() and fibre.g_bar.is_zero():
        raise ZeroPencil("both reduced quadrics vanish")
    if fibre.f_bar.is_zero() or fibre.g_bar.is_zero() or linalg.rank(
            F, [[c.coeff(0) for c in fibre.f_bar.coeffs], [c.coeff(0) for c in fibre.g_bar.coeffs]]) < 2:
        return 0  # some member is the zero form
    A, B = _int_matrix(fibre.f_bar), _int_matrix(fibre.g_bar)
    for r in range(1, n):
        if _has_common_projective_root(F, _minor_forms(F, A, B, r + 1), r + 1):
            return r
    return n


def _form_rank(F, q):
    return linalg.rank(F, _kmatrix(q))


def _rational_roots(F, poly):
    """Roots in Q of a polynomial with rational coefficients (ascending)."""
    poly = _upoly_trim([Fraction(c) for c in poly])
    if len(poly) <= 1:
        return []
    L = math.lcm(*(c.denominator for c in poly))
    ints = [int(c * L) for c in poly]
    roots = set()
    while ints and ints[0] == 0:
        roots.add(Fraction(0))
        ints = ints[1:]
    if len(ints) <= 1:
        return sorted(roots)
    a0, an = abs(ints[0]), abs(ints[-1])
    if max(a0, an) > 10**9:
        return sorted(roots)

    def divisors(m):
        ds = set()
        for d in range(1, math.isqrt(m) + 1):
            if m % d == 0:
                ds.update((d, m // d))
        return ds

    for p in divisors(a0):
        for q in divisors(an):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if sum(c * cand**i for i, c in enumerate(ints)) == 0:
                    roots.add(cand)
    return sorted(roots)


def _rational_points_of_low_rank(fibre, bound):
    """k-rational (lam, mu) with rank(lam f_bar + mu g_bar) <= bound."""
    F, n = fibre.field, fibre.n
    if F.p is not None:
        cands = [(F(1), F(0))] + [(F(a), F(1)) for a in F.elements()]
    else:
        A, B = _int_matrix(fibre.f_bar), _int_matrix(fibre.g_bar)
        forms = _minor_forms(F, A, B, bound + 1)
        nonzero = [f for f in forms if any(c != 0 for c in f)]
        cands = [(F(1), F(0))]
        if not nonzero:
            cands += [(F(0), F(1)), (F(1), F(1))]
        else:
            g = []
            for f in nonzero:
                g = _upoly_gcd(F, g, f) if g else _upoly_trim(list(f))
            # s = lam/mu in the scaled matrices alpha A, beta B
            alpha = Fraction(_scale_of(fibre.f_bar))
            beta = Fraction(_scale_of(fibre.g_bar))
            for s in _rational_roots(F, g):
                cands.append((s * alpha, beta))
    out = []
    for lam, mu in cands:
        q = fibre.f_bar * lam + fibre.g_bar * mu
        if not q.is_zero() and _form_rank(F, q) <= bound:
            out.append((lam, mu))
    return out


def _scale_of(q):
    vals = [c.coeff(0) for c in q.coeffs]
    return 2 * math.lcm(*(Fraction(v).denominator for v in vals))


def linear_factor(q):
    """A k-linear form l (as a vector) dividing a k-form of rank 1 or 2, or None."""
    F, n = q.field, q.n
    M = _kmatrix(q)
    red, pivots = linalg.row_reduce(F, M)
    rk = len(pivots)
    if rk == 0 or rk > 2:
        return None
    basis = [red[i] for i in range(rk)]  # row space of M
    if rk == 1:
        return basis[0]
    a, b = basis
    # dual vectors u, v with a.u = 1, b.u = 0, a.v = 0, b.v = 1
    sol = []
    for target in ((1, 0), (0, 1)):
        aug = [a + [F(target[0])], b + [F(target[1])]]
        r2, piv = linalg.row_reduce(F, aug)
        x = [F.zero()] * n
        for row, pc in zip(r2, piv):
            x[pc] = row[n]
        sol.append(x)
    u, v = sol

    def ev(x):
        return linalg.sum_field(F, (F.mul(M[i][j], F.mul(x[i], x[j])) for i in range(n) for j in range(n)))

    alpha, gamma = ev(u), ev(v)
    beta = F.sub(F.sub(ev([F.add(x, y) for x, y in zip(u, v)]), alpha), gamma)
    # q = alpha la^2 + beta la lb + gamma lb^2 with la = a.x, lb = b.x
    if alpha == 0:
        return b
    root = F.sqrt(F.sub(F.mul(beta, beta), F.mul(F(4), F.mul(alpha, gamma))))
    if root is None:
        return None
    r = F.div(F.sub(root, beta), F.mul(F(2), alpha))  # alpha X^2 + beta X + gamma at X = r
    return [F.sub(x, F.mul(r, y)) for x, y in zip(a, b)]


def coordinate_change_sending_form_to_x1(field, ell):
    """C with l(C y) = y_1, i.e. first row of C^-1 equal to l."""
    n = len(ell)
    G = linalg.complete_basis(field, [ell], n)
    return CoordinateChange(field, tuple(tuple(r) for r in linalg.mat_inverse(field, G)))


def coordinate_change_to_point(field, point):
    """C with C e_n = point: columns are standard vectors, last one replaced."""
    n = len(point)
    i = next(k for k, x in enumerate(point) if x != 0)
    cols = [[field(int(a == b)) for a in range(n)] for b in range(n) if b != i] + [list(point)]
    rows = [[cols[c][r] for c in range(n)] for r in range(n)]
    return CoordinateChange(field, tuple(tuple(r) for r in rows))


def low_rank_witnesses(P):
    """(rho, C) pairs from members of the reduced pencil of rank <= 2 split over k.

    In coordinates where a linear factor of such a member is y_1, the member
    has no monomial free of y_1 at t = 0, so rho = (1, 0, ..., 0) gives
    mult >= 1 > 4/n once n > 4.
    """
    fibre = CentralFibre.of(P)
    F, n = fibre.field, fibre.n
    out = []
    for lam, mu in _rational_points_of_low_rank(fibre, 2):
        ell = linear_factor(fibre.f_bar * lam + fibre.g_bar * mu)
        if ell is None:
            continue
        C = coordinate_change_sending_form_to_x1(F, ell)
        out.append((WeightSystem((1,) + (0,) * (n - 1)), C))
    return out


def contains_plane(fibre, cap=None):
    """True iff f_bar and g_bar both vanish on some (n-2)-dim subspace of F_p^n."""
    F, n = fibre.field, fibre.n
    if F.p is None:
        raise ValueError("plane search needs a finite field")
    p = F.p
    if cap is None:
        cap = int(os.environ.get("PENCIL_SUBSPACE_CAP", DEFAULT_SUBSPACE_CAP))
    count = (p**n - 1) * (p ** (n - 1) - 1) // ((p**2 - 1) * (p - 1))
    if count > cap:
        raise FieldTooLarge(f"{count} subspaces exceed cap {cap}")
    A, B = _kmatrix(fibre.f_bar), _kmatrix(fibre.g_bar)
    for c1, c2 in itertools.combinations(range(n), 2):
        free1 = [j for j in range(c1 + 1, n) if j != c2]
        free2 = list(range(c2 + 1, n))
        for v1 in itertools.product(range(p), repeat=len(free1)):
            for v2 in itertools.product(range(p), repeat=len(free2)):
                r1 = [0] * n
                r2 = [0] * n
                r1[c1] = r2[c2] = 1
                for j, x in zip(free1, v1):
                    r1[j] = x
                for j, x in zip(free2, v2):
                    r2[j] = x
                N = linalg.kernel(F, [r1, r2], n)
                if _vanishes_on(F, A, N) and _vanishes_on(F, B, N):
                    return True
    return False


def _vanishes_on(F, M, basis):
    n = len(M)
    Mv = [[linalg.sum_field(F, (F.mul(M[i][j], v[j]) for j in range(n))) for i in range(n)] for v in basis]
    for a, u in enumerate(basis):
        for b in range(a, len(basis)):
            if linalg.sum_field(F, (F.mul(u[i], Mv[b][i]) for i in range(n))) != 0:
                return False
    return True


def _linear_part(q):
    """Linear part at e_n of q(x_1, ..., x_{n-1}, 1) in (x_1, ..., x_{n-1}, t)."""
    n = q.n
    return [q.entry(i, n - 1).coeff(0) for i in range(n - 1)] + [q.entry(n - 1, n - 1).coeff(1)]


def diagnose_point(P, point):
    """Singularity and hypersurface test of the total space at (point, t = 0)."""
    F, n = P.field, P.n
    point = tuple(F(x) for x in point)
    if len(point) != n or all(x == 0 for x in point):
        raise PointNotOnFibre("not a projective point of the right dimension")
    if not P.is_integral():
        raise ValueError("pencil must have entries in R")
    if P.f.evaluate(point) != 0 or P.g.evaluate(point) != 0:
        raise PointNotOnFibre(f"[{':'.join(map(str, point))}] is not on the central fibre")
    C = coordinate_change_to_point(F, point)
    moved = act(P, WeightSystem.zero(n), C)
    lf, lg = _linear_part(moved.f), _linear_part(moved.g)
    singular = linalg.rank(F, [lf, lg]) < 2
    hyper = None
    if singular:
        hyper = any(x != 0 for x in lf) or any(x != 0 for x in lg)
    return PointDiagnosis(point, singular, hyper, C)


def _projective_points_of_span(field, basis, cap):
    """Points of P(span(basis)): all of them over F_p, small combinations over Q."""
    d = len(basis)
    n = len(basis[0])
    if field.p is not None:
        scalars = list(range(field.p))
    else:
        scalars = [0, 1, -1, 2, -2, 3, -3]
    out = []
    for lead in range(d):
        for tail in itertools.product(scalars, repeat=d - lead - 1):
            coeffs = [0] * lead + [1] + list(tail)
            pt = tuple(
                linalg.sum_field(field, (field.mul(field(c), v[i]) for c, v in zip(coeffs, basis)))
                for i in range(n)
            )
            out.append(pt)
            if len(out) >= cap:
                return out
    return out


def singular_point_candidates(P, cap=1000):
    """k-points where both generators may lie in the square of the maximal ideal.

    Such a point spans a common kernel vector of the reduced matrices and is
    a zero of both t-linear coefficient forms; everything else is excluded.
    """
    F, n = P.field, P.n
    fibre = CentralFibre.of(P)
    K = linalg.kernel(F, _kmatrix(fibre.f_bar) + _kmatrix(fibre.g_bar), n)
    if not K:
        return []
    f1 = [c.coeff(1) for c in P.f.coeffs]
    g1 = [c.coeff(1) for c in P.g.coeffs]

    def ev(coeffs, pt):
        return linalg.sum_field(
            F, (F.mul(c, F.mul(pt[i], pt[j])) for (i, j), c in zip(monomials(n), coeffs) if c != 0)
        )

    return [pt for pt in _projective_points_of_span(F, K, cap) if ev(f1, pt) == 0 and ev(g1, pt) == 0]


def singular_point_witnesses(P, cap=1000):
    """(rho, C) for singular points where both generators lie in m^2.

    With the point moved to e_n, rho = (1, ..., 1, 0) gives
    mult >= 2 + 2 = 4 > 4(n-1)/n.
    """
    n = P.n
    out = []
    for pt in singular_point_candidates(P, cap):
        d = diagnose_point(P, pt)
        if d.is_singular and d.is_hypersurface_singularity is False:
            out.append((WeightSystem((1,) * (n - 1) + (0,)), d.coordinate_change))
    return out
