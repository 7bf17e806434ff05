import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from pencilstab import _poly

coeffs = st.lists(st.integers(-10**12, 10**12), max_size=30)
moduli = st.sampled_from([None, 3, 7, 101])

x = sp.Symbol("x")


def as_sympy(a):
    return sum(c * x**i for i, c in enumerate(a))


def naive(a, b, mod):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            out[i + j] += u * v
    return _poly.reduce(out, mod)


@given(coeffs, coeffs, moduli)
def test_mul_matches_schoolbook(a, b, mod):
    a, b = _poly.reduce(a, mod), _poly.reduce(b, mod)
    assert _poly.mul(a, b, mod) == naive(a, b, mod)


@given(coeffs, coeffs, st.integers(1, 20))
def test_truncated_mul(a, b, prec):
    a, b = _poly.trim(list(a)), _poly.trim(list(b))
    assert _poly.mul(a, b, prec=prec) == _poly.truncate(naive(a, b, None), prec)


@given(coeffs, st.lists(st.integers(-50, 50), min_size=1, max_size=6), moduli)
def test_divexact_inverts_mul(a, b, mod):
    a, b = _poly.reduce(a, mod), _poly.reduce(b, mod)
    if not b:
        return
    assert _poly.divexact(_poly.mul(a, b, mod), b, mod) == a


def test_divexact_rejects_remainder():
    with pytest.raises(ArithmeticError):
        _poly.divexact([1, 0, 1], [1, 1])


matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(
        st.lists(st.lists(st.integers(-5, 5), max_size=3), min_size=n, max_size=n),
        min_size=n,
        max_size=n,
    )
)


@given(matrices, moduli)
def test_det_matches_sympy(rows, mod):
    rows = [[_poly.reduce(e, mod) for e in row] for row in rows]
    M = sp.Matrix([[as_sympy(e) for e in row] for row in rows])
    expected = sp.Poly(sp.expand(M.det()), x).all_coeffs()[::-1] if M.det() != 0 else []
    expected = _poly.reduce([int(c) for c in expected], mod)
    assert _poly.det(rows, mod) == expected


@given(matrices, st.integers(1, 6))
def test_truncated_det(rows, prec):
    rows = [[_poly.trim(list(e)) for e in row] for row in rows]
    assert _poly.det(rows, prec=prec) == _poly.truncate(_poly.det(rows), prec)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n),
    st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n),
)))
def test_det_linear(pair):
    A, B = pair
    s = sp.Symbol("s")
    M = sp.Matrix(A) * s + sp.Matrix(B)
    poly = sp.Poly(sp.expand(M.det()), s)
    n = len(A)
    expected = [int(poly.coeff_monomial(s**i)) for i in range(n + 1)]
    wrap = lambda m: [[[v] if v else [] for v in row] for row in m]
    got = _poly.det_linear(wrap(A), wrap(B))
    assert [c[0] if c else 0 for c in got] == expected
