"""Seeded random pencils, weights and coordinate changes for experiments and tests."""

from __future__ import annotations

import random

from .disc import disc_valuation
from .pencil import (
    CoordinateChange,
    DependentPencil,
    NotInvertible,
    Pencil,
    QuadraticForm,
    WeightSystem,
    act,
    monomials,
    saturate,
)
from .ring import INF, LaurentScalar


def random_scalar(F, rng, max_deg=2, density=0.6, coeff_range=3):
    terms = {}
    for e in range(max_deg + 1):
        if rng.random() < density:
            c = rng.randint(-coeff_range, coeff_range) if F.p is None else rng.randrange(F.p)
            if F(c) != 0:
                terms[e] = c
    return LaurentScalar.from_dict(F, terms)


def random_form(F, n, rng, max_deg=2, density=0.6):
    coeffs = tuple(random_scalar(F, rng, max_deg, density) for _ in monomials(n))
    return QuadraticForm(F, n, coeffs)


def random_pencil(F, n, rng, max_deg=2, density=0.6, tries=200):
    """A normalized pencil with smooth generic fibre."""
    for _ in range(tries):
        f = random_form(F, n, rng, max_deg, density)
        g = random_form(F, n, rng, max_deg, density)
        try:
            P, _ = saturate(f, g)
        except DependentPencil:
            continue
        if disc_valuation(P) != INF:
            return P
    raise RuntimeError("could not sample a smooth pencil")


def random_weight(n, rng, max_sum=6, max_entry=None):
    """Effective weight system with total at most max_sum."""
    w = [0] * n
    for _ in range(rng.randint(0, max_sum)):
        i = rng.randrange(n)
        if max_entry is None or w[i] < max_entry:
            w[i] += 1
    return WeightSystem(w)


def random_constant_change(F, n, rng, coeff_range=2):
    while True:
        if F.p is None:
            rows = [[rng.randint(-coeff_range, coeff_range) for _ in range(n)] for _ in range(n)]
        else:
            rows = [[rng.randrange(F.p) for _ in range(n)] for _ in range(n)]
        try:
            return CoordinateChange(F, tuple(tuple(r) for r in rows))
        except NotInvertible:
            continue


def random_change_over_R(F, n, rng, max_deg=1):
    """Constant invertible matrix plus t times random entries: an element of GL_n(R)."""
    C0 = random_constant_change(F, n, rng)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            extra = random_scalar(F, rng, max_deg - 1, 0.5).shift(1) if max_deg >= 1 else LaurentScalar.zero(F)
            row.append(C0.matrix[i][j] + extra)
        rows.append(tuple(row))
    return CoordinateChange(F, tuple(rows))


def random_transvection(F, n, rng):
    consts = [c for c in (1, -1, 2, -2) if F(c) != 0]
    i, j = rng.sample(range(n), 2)
    return CoordinateChange.transvection(F, n, i, j, rng.choice(consts))


def certified_pencil(F, n, rng, max_val=None, tries=500):
    """Normalized smooth pencil with disc valuation <= max_val (default n - 2)."""
    max_val = n - 2 if max_val is None else max_val
    for _ in range(tries):
        P = random_pencil(F, n, rng, max_deg=2, density=0.5)
        if disc_valuation(P) <= max_val:
            return P
    raise RuntimeError("could not sample a certified pencil")


def scramble(P0, w, E=None):
    """Undo a weight action: returns P with act(P, w, E^-1) spanning P0.

    P is the saturation of act(P0, -w) followed by the constant change E,
    so (w, E^-1) is a destabilizer of P whenever (-w) made P0 worse.
    """
    n = P0.n
    P1, _ = saturate(act(P0, -WeightSystem(w)))
    if E is not None:
        P1 = act(P1, WeightSystem.zero(n), E)
    return P1


def low_rank_member_pencil(F, n, rng, max_deg=2):
    """Pencil whose reduction has a member l1 * l2 split over k."""
    while True:
        l1 = [F(rng.randint(-2, 2)) for _ in range(n)]
        l2 = [F(rng.randint(-2, 2)) for _ in range(n)]
        if not any(l1) or not any(l2):
            continue
        entries = {}
        for i in range(n):
            for j in range(n):
                c = F.mul(l1[i], l2[j])
                key = (min(i, j), max(i, j))
                entries[key] = F.add(entries.get(key, F.zero()), c)
        f = QuadraticForm.from_entries(F, n, entries) + random_form(F, n, rng, max_deg - 1).shift(1)
        g = random_form(F, n, rng, max_deg)
        try:
            P, _ = saturate(f, g)
        except DependentPencil:
            continue
        if P.is_normalized() and disc_valuation(P) != INF:
            return P


def _form_in_square_at_last_point(F, n, rng, max_deg):
    entries = {}
    for i, j in monomials(n):
        if i == j == n - 1:
            c = random_scalar(F, rng, max_deg).shift(2)
        elif j == n - 1:
            c = random_scalar(F, rng, max_deg).shift(1)
        else:
            c = random_scalar(F, rng, max_deg)
        entries[(i, j)] = c
    return QuadraticForm.from_entries(F, n, entries)


def singular_point_pencil(F, n, rng, max_deg=2, min_rank=3):
    """Both generators in (x_1, ..., x_{n-1}, t)^2 at e_n, then moved by a random k-change.

    Samples whose reduced pencil has a member of rank < min_rank are rejected,
    so the only evident defect is the singular point.  Returns the pencil and
    the point.
    """
    from .diagnose import CentralFibre, min_rank_in_pencil
    from .linalg import mat_inverse

    while True:
        f = _form_in_square_at_last_point(F, n, rng, max_deg)
        g = _form_in_square_at_last_point(F, n, rng, max_deg)
        try:
            P, shed = saturate(f, g)
        except DependentPencil:
            continue
        if shed != 0 or disc_valuation(P) == INF:
            continue
        E = random_constant_change(F, n, rng)
        P = act(P, WeightSystem.zero(n), E)
        if min_rank_in_pencil(CentralFibre.of(P)) >= min_rank:
            point = tuple(row[n - 1] for row in mat_inverse(F, E.constants()))
            return P, point
