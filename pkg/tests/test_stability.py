import pytest
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from pencilstab.disc import disc_valuation
from pencilstab.pencil import CoordinateChange, Pencil, QuadraticForm, WeightSystem, act, mult
from pencilstab.ring import QQ, FieldSpec, LaurentScalar, parse_literal
from pencilstab.samples import certified_pencil, random_transvection, scramble
from pencilstab.stability import (
    NonSmoothGenericFibre,
    NotADestabilizer,
    SearchBudget,
    Status,
    bounded_weights,
    certificate_semistable,
    check_stability,
    destabilization_step,
    expected_change,
    harvested_weights,
    is_destabilizer,
    search_destabilizer,
    semistable_reduce,
    transform,
)
from strategies import changes_over_R, fields, pencils, weights

SMALL = SearchBudget(max_random_coord_changes=3)


def lit(s, F=QQ):
    return parse_literal(F, s)


def unstable_n5():
    f = QuadraticForm.from_entries(QQ, 5, {(0, 0): 1, (1, 2): 1, (4, 4): lit("t")})
    g = QuadraticForm.from_entries(QQ, 5, {(3, 3): 1, (0, 2): 1, (1, 1): lit("t^2")})
    return Pencil(f, g)


def diagonal_n5():
    return Pencil.diagonal(QQ, [1] * 5, [1, 2, 3, 4, 5])


def ramified_n5(k):
    """det has the factor -(lam^2 + t^k mu^2); disc valuation k."""
    f = QuadraticForm.from_entries(QQ, 5, {(0, 1): 2, (2, 2): 1, (3, 3): 1, (4, 4): 1})
    g = QuadraticForm.from_entries(QQ, 5, {(0, 0): 1, (1, 1): lit(f"t^{k}"), (2, 2): 2, (3, 3): 3, (4, 4): 4})
    return Pencil(f, g)


class TestIsDestabilizer:
    def test_zero_weight(self):
        assert not is_destabilizer(unstable_n5(), WeightSystem.zero(5))

    def test_n5_example(self):
        assert is_destabilizer(unstable_n5(), WeightSystem((1, 0, 1, 1, 0)))

    def test_certified_pencil_has_none_in_search_set(self):
        P = diagonal_n5()
        assert not any(is_destabilizer(P, WeightSystem(w)) for w in bounded_weights(5, 4))

    def test_non_smooth(self):
        P = Pencil(QuadraticForm.from_entries(QQ, 3, {(0, 0): 1}), QuadraticForm.from_entries(QQ, 3, {(0, 1): 1}))
        with pytest.raises(NonSmoothGenericFibre):
            is_destabilizer(P, WeightSystem((1, 0, 0)))
        with pytest.raises(NonSmoothGenericFibre):
            search_destabilizer(P)


class TestSearch:
    def test_diagonal_has_no_witness(self):
        assert search_destabilizer(diagonal_n5(), SMALL) is None
        assert check_stability(diagonal_n5()).status is Status.SEMISTABLE_CERTIFIED

    def test_n5_witness(self):
        w = search_destabilizer(unstable_n5())
        assert w.rho.w == (1, 0, 1, 1, 0)
        assert w.mult == 3 and w.bound == Fraction(12, 5)
        assert is_destabilizer(unstable_n5(), w.rho, w.C)

    def test_harvested_shapes(self):
        ws = harvested_weights(5)
        for shape in [(1, 1, 0, 1, 0), (2, 1, 0, 1, 0), (1, 0, 0, 1, 0), (1, 0, 1, 0, 0), (1, 1, 1, 0, 0),
                      (1, 0, 1, 1, 0), (1, 0, 2, 1, 0), (1, 1, 1, 1, 0), (1, 0, 0, 0, 0)]:
            assert shape in ws
        assert len(ws) == len(set(ws))
        assert all(min(w) == 0 for w in ws)

    def test_bounded_weights(self):
        ws = bounded_weights(3, 2)
        assert ws == sorted(ws)
        assert (0, 0, 1) in ws and (2, 0, 0) in ws and (1, 1, 0) in ws
        assert (1, 1, 1) not in ws  # same effect as the zero weight

    def test_deterministic(self):
        P = unstable_n5()
        assert search_destabilizer(P) == search_destabilizer(P)


class TestStep:
    def test_n5_drop(self):
        Q, drop = destabilization_step(unstable_n5(), WeightSystem((1, 0, 1, 1, 0)))
        assert drop == 12
        assert disc_valuation(Q) == 4

    def test_borderline_refused(self):
        # n = 2 micro instance: mult 2 equals the bound 4/2 * 1
        P = Pencil.diagonal(QQ, [1, 1], [1, 2])
        rho = WeightSystem((1, 0))
        assert mult(P, rho) == 2
        assert not is_destabilizer(P, rho)
        with pytest.raises(NotADestabilizer):
            destabilization_step(P, rho)
        Q, m, before, after = transform(P, rho)
        assert (m, before, after) == (2, 0, 0)
        assert expected_change(2, m, rho) == 0


class TestCertificate:
    def test_thresholds(self):
        assert certificate_semistable(diagonal_n5())
        assert disc_valuation(ramified_n5(3)) == 3
        assert certificate_semistable(ramified_n5(3))
        assert disc_valuation(ramified_n5(4)) == 4
        assert not certificate_semistable(ramified_n5(4))

    def test_certified_verdict_is_sound_under_search(self):
        P = ramified_n5(3)
        assert search_destabilizer(P, SMALL) is None


class TestReduce:
    def test_certified_input(self):
        tr = semistable_reduce(diagonal_n5())
        assert tr.steps == [] and tr.final == diagonal_n5()
        assert tr.final_verdict.status is Status.SEMISTABLE_CERTIFIED

    def test_n5_single_step(self):
        tr = semistable_reduce(unstable_n5(), SMALL)
        assert [s.drop for s in tr.steps] == [12]
        assert tr.final_verdict.status is not Status.UNSTABLE

    def test_scrambled_round_trip(self):
        import random

        rng = random.Random(11)
        for F in (QQ, FieldSpec.prime(7)):
            P0 = certified_pencil(F, 4, rng)
            E = random_transvection(F, 4, rng)
            P = scramble(P0, (1, 1, 0, 0), E)
            v = disc_valuation(P)
            assert v > disc_valuation(P0)
            tr = semistable_reduce(P, SMALL)
            vals = [v] + [s.disc_after for s in tr.steps]
            assert all(a > b for a, b in zip(vals, vals[1:]))
            assert len(tr.steps) <= v // 3
            assert disc_valuation(tr.final) <= v

    def test_step_limit(self):
        tr = semistable_reduce(unstable_n5(), SearchBudget(max_reduction_steps=0, max_random_coord_changes=0))
        assert tr.steps == [] and tr.hit_step_limit


@given(st.data())
def test_transformation_law(data):
    F = data.draw(fields)
    n = data.draw(st.integers(2, 5))
    P = data.draw(pencils(F, n))
    rho = data.draw(weights(n, 2))
    C = data.draw(changes_over_R(F, n))
    before_saturation = disc_valuation(act(P, rho, C))
    assert before_saturation == disc_valuation(P) + 4 * (n - 1) * rho.total
    Q, m, before, after = transform(P, rho, C)
    assert after - before == expected_change(n, m, rho)


@settings(max_examples=25)
@given(st.data())
def test_witness_soundness(data):
    F = data.draw(fields)
    n = data.draw(st.integers(3, 5))
    P = data.draw(pencils(F, n))
    v = check_stability(P, SMALL)
    if v.status is Status.UNSTABLE:
        w = v.witness
        assert is_destabilizer(P, w.rho, w.C)
        assert w.mult > w.bound
        Q, drop = destabilization_step(P, w.rho, w.C)
        assert drop >= n - 1
    elif v.status is Status.SEMISTABLE_CERTIFIED:
        assert v.disc_valuation <= n - 2


@settings(max_examples=10)
@given(st.data())
def test_reduction_is_monotone(data):
    F = data.draw(fields)
    n = data.draw(st.integers(3, 5))
    P = data.draw(pencils(F, n))
    v0 = disc_valuation(P)
    tr = semistable_reduce(P, SMALL)
    vals = [v0] + [s.disc_after for s in tr.steps]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert len(tr.steps) <= v0 // (n - 1)
