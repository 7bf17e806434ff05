import itertools
import random

import pytest
import sympy as sp
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from pencilstab import linalg
from pencilstab.diagnose import (
    CentralFibre,
    FieldTooLarge,
    PointNotOnFibre,
    ZeroPencil,
    contains_plane,
    diagnose_point,
    linear_factor,
    low_rank_witnesses,
    min_rank_in_pencil,
    singular_point_witnesses,
)
from pencilstab.pencil import CoordinateChange, Pencil, QuadraticForm, WeightSystem, act, monomials
from pencilstab.ring import QQ, FieldSpec, parse_literal
from pencilstab.samples import certified_pencil, low_rank_member_pencil, singular_point_pencil
from pencilstab.stability import is_destabilizer
from oracles import brute_min_rank_fp2
from strategies import constant_changes

F3, F5 = FieldSpec.prime(3), FieldSpec.prime(5)


def fibre(F, n, f, g):
    return CentralFibre(QuadraticForm.from_entries(F, n, f), QuadraticForm.from_entries(F, n, g))


def diag(F, vals):
    return {(i, i): v for i, v in enumerate(vals)}


class TestMinRank:
    def test_generic_diagonal(self):
        assert min_rank_in_pencil(fibre(QQ, 5, diag(QQ, [1] * 5), diag(QQ, [1, 2, 3, 4, 5]))) == 4

    def test_squares(self):
        assert min_rank_in_pencil(fibre(QQ, 3, {(0, 0): 1}, {(1, 1): 1})) == 1

    def test_repeated_eigenvalue(self):
        assert min_rank_in_pencil(fibre(QQ, 4, diag(QQ, [1] * 4), diag(QQ, [1, 1, 1, 2]))) == 1

    def test_rank_drop_only_over_extension(self):
        # each block x^2 + 4xy has char poly with non-square discriminant mod 5
        f = diag(F5, [1, 1, 1, 1])
        g = {(0, 0): 1, (0, 1): 4, (2, 2): 1, (2, 3): 4}
        fb = fibre(F5, 4, f, g)
        assert min_rank_in_pencil(fb) == 2
        assert brute_min_rank_fp2(fb.f_bar, fb.g_bar) == 2
        P = Pencil(fb.f_bar.shift(0), fb.g_bar)
        assert low_rank_witnesses(P) == []

    def test_quadric_cone_shape(self):
        # x1^2 + x2 x3 and x4^2 + x3 x5 over F_5
        fb = fibre(F5, 5, {(0, 0): 1, (1, 2): 1}, {(3, 3): 1, (2, 4): 1})
        assert min_rank_in_pencil(fb) == brute_min_rank_fp2(fb.f_bar, fb.g_bar)

    def test_proportional_reductions(self):
        fb = fibre(F5, 3, diag(F5, [1, 2, 3]), diag(F5, [2, 4, 6]))
        assert min_rank_in_pencil(fb) == 0 == brute_min_rank_fp2(fb.f_bar, fb.g_bar)

    def test_zero(self):
        z = QuadraticForm.from_entries(QQ, 3, {})
        with pytest.raises(ZeroPencil):
            min_rank_in_pencil(CentralFibre(z, z))

    def test_zero_generator(self):
        z = QuadraticForm.from_entries(QQ, 3, {})
        assert min_rank_in_pencil(CentralFibre(z, QuadraticForm.from_entries(QQ, 3, diag(QQ, [1, 1, 1])))) == 0


def _det_splits_small(fb):
    """det(lam A + mu B) mod p is nonzero with irreducible factors of degree <= 2."""
    p = fb.field.p
    x = sp.Symbol("x")
    half = pow(2, -1, p)

    def mat(q):
        M = sp.zeros(q.n, q.n)
        for (i, j), c in zip(monomials(q.n), q.coeffs):
            v = int(c.coeff(0))
            if i == j:
                M[i, i] = v
            else:
                M[i, j] = M[j, i] = v * half % p
        return M

    A, B = mat(fb.f_bar), mat(fb.g_bar)
    d = sp.Poly(sp.expand((x * A + B).det()), x, modulus=p)
    if d.is_zero:
        return False
    # lam^n coefficient vanishing puts a root at infinity, which is rational
    return all(fac.degree() <= 2 for fac, _ in d.factor_list()[1])


@st.composite
def reduced_forms(draw, F, n):
    entries = {m: F(draw(st.integers(0, F.p - 1))) for m in monomials(n)}
    return QuadraticForm.from_entries(F, n, entries)


@settings(max_examples=80)
@given(st.data())
def test_min_rank_against_brute_force(data):
    F = data.draw(st.sampled_from([F3, F5]))
    n = data.draw(st.integers(2, 5))
    fb = CentralFibre(data.draw(reduced_forms(F, n)), data.draw(reduced_forms(F, n)))
    assume(not (fb.f_bar.is_zero() and fb.g_bar.is_zero()))
    assume(_det_splits_small(fb))
    assert min_rank_in_pencil(fb) == brute_min_rank_fp2(fb.f_bar, fb.g_bar)


def test_certified_corpus_has_no_low_rank_member():
    rng = random.Random(3)
    for F in (QQ, F3, F5):
        for _ in range(5):
            P = certified_pencil(F, 5, rng)
            assert min_rank_in_pencil(CentralFibre.of(P)) >= 3


def test_low_rank_witnesses_destabilize():
    rng = random.Random(5)
    for F in (QQ, F5, FieldSpec.prime(7)):
        for _ in range(3):
            P = low_rank_member_pencil(F, 5, rng)
            ws = low_rank_witnesses(P)
            assert ws
            for rho, C in ws:
                assert rho.w == (1, 0, 0, 0, 0)
                assert is_destabilizer(P, rho, C)


class TestLinearFactor:
    def test_product(self):
        # (x1 - 2x2)(x1 + x2 + x3)
        q = QuadraticForm.from_entries(QQ, 3, {(0, 0): 1, (0, 1): -1, (0, 2): 1, (1, 1): -2, (1, 2): -2})
        ell = linear_factor(q)
        assert ell is not None
        # q vanishes on the hyperplane ell = 0, checked on a basis and pairwise sums
        K = linalg.kernel(QQ, [ell], 3)
        pts = K + [[a + b for a, b in zip(u, v)] for u, v in itertools.combinations(K, 2)]
        assert all(q.evaluate(tuple(pt)) == 0 for pt in pts)

    def test_irreducible(self):
        assert linear_factor(QuadraticForm.from_entries(QQ, 2, {(0, 0): 1, (1, 1): 1})) is None

    def test_full_rank(self):
        assert linear_factor(QuadraticForm.from_entries(QQ, 3, diag(QQ, [1, 1, 1]))) is None


def _brute_contains_plane(fb):
    F, n = fb.field, fb.n
    p = F.p
    vecs = [v for v in itertools.product(range(p), repeat=n) if any(v)]
    for basis in itertools.combinations(vecs, n - 2):
        M = sp.Matrix(basis)
        if M.rank(iszerofunc=lambda x: x % p == 0) < n - 2:
            continue
        # q vanishes on a span iff it vanishes on every sum of at most two basis vectors
        pts = list(basis) + [tuple((a + b) % p for a, b in zip(u, v)) for u, v in itertools.combinations(basis, 2)]
        if all(fb.f_bar.evaluate(tuple(map(F, pt))) == 0 and fb.g_bar.evaluate(tuple(map(F, pt))) == 0 for pt in pts):
            return True
    return False


class TestContainsPlane:
    def test_common_factor(self):
        assert contains_plane(fibre(F3, 4, {(0, 2): 1}, {(1, 2): 1}))

    def test_common_factor_n5(self):
        assert contains_plane(fibre(F3, 5, {(0, 2): 1}, {(1, 2): 1}))

    def test_smooth_curve(self):
        assert not contains_plane(fibre(F5, 4, diag(F5, [1, 1, 1, 1]), diag(F5, [1, 2, 3, 4])))

    def test_too_large(self):
        with pytest.raises(FieldTooLarge):
            contains_plane(fibre(FieldSpec.prime(101), 6, diag(QQ, [1] * 6), {}), cap=1000)

    def test_rational_field_refused(self):
        with pytest.raises(ValueError):
            contains_plane(fibre(QQ, 4, {(0, 2): 1}, {(1, 2): 1}))

    @settings(max_examples=15)
    @given(st.data())
    def test_against_brute_force(self, data):
        fb = CentralFibre(data.draw(reduced_forms(F3, 4)), data.draw(reduced_forms(F3, 4)))
        assert contains_plane(fb) == _brute_contains_plane(fb)

    @settings(max_examples=30)
    @given(st.data())
    def test_invariant_under_gl(self, data):
        F = data.draw(st.sampled_from([F3, F5]))
        n = data.draw(st.integers(3, 4))
        fb = CentralFibre(data.draw(reduced_forms(F, n)), data.draw(reduced_forms(F, n)))
        C = data.draw(constant_changes(F, n))
        moved = act(Pencil(fb.f_bar, fb.g_bar), WeightSystem.zero(n), C) if not (
            fb.f_bar.is_zero() or fb.g_bar.is_zero()) else None
        assume(moved is not None)
        assert contains_plane(CentralFibre.of(moved)) == contains_plane(fb)


def _cone_pencil():
    # both generators lie in (x1, x2, x3, t)^2 at e_4
    t = parse_literal(QQ, "t")
    f = QuadraticForm.from_entries(QQ, 4, {(0, 0): 1, (1, 2): 1, (3, 3): t * t})
    g = QuadraticForm.from_entries(QQ, 4, {(1, 1): 1, (0, 2): 1, (2, 3): t})
    return Pencil(f, g)


class TestDiagnosePoint:
    def test_not_hypersurface(self):
        d = diagnose_point(_cone_pencil(), (0, 0, 0, 1))
        assert d.is_singular and d.is_hypersurface_singularity is False

    def test_hypersurface(self):
        t = parse_literal(QQ, "t")
        P = Pencil(QuadraticForm.from_entries(QQ, 4, {(0, 0): 1, (1, 2): 1, (3, 3): t}), _cone_pencil().g)
        d = diagnose_point(P, (0, 0, 0, 1))
        assert d.is_singular and d.is_hypersurface_singularity is True

    def test_smooth_point(self):
        P = Pencil.diagonal(QQ, [1, -1, 0], [0, 1, -1])
        d = diagnose_point(P, (1, 1, 1))
        assert not d.is_singular and d.is_hypersurface_singularity is None

    def test_off_fibre(self):
        with pytest.raises(PointNotOnFibre):
            diagnose_point(_cone_pencil(), (1, 0, 0, 0))
        with pytest.raises(PointNotOnFibre):
            diagnose_point(_cone_pencil(), (0, 0, 0))

    def test_coordinate_change_moves_point(self):
        d = diagnose_point(_cone_pencil(), (0, 0, 0, 1))
        last = tuple(row[-1].coeff(0) for row in d.coordinate_change.matrix)
        assert last == (0, 0, 0, 1)

    def test_singular_points_destabilize(self):
        rng = random.Random(9)
        for F in (QQ, F5, FieldSpec.prime(7)):
            for _ in range(3):
                P, pt = singular_point_pencil(F, 5, rng)
                d = diagnose_point(P, pt)
                assert d.is_singular and d.is_hypersurface_singularity is False
                assert is_destabilizer(P, WeightSystem((1, 1, 1, 1, 0)), d.coordinate_change)
                ws = singular_point_witnesses(P)
                assert ws and all(is_destabilizer(P, r, C) for r, C in ws)
