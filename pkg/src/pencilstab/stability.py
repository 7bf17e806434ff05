"""Destabilizer search, stability verdicts and semistable reduction.

A pair (rho, C) destabilizes P when n * mult(P, rho, C) > 4 * sum(rho).
Replacing P by the saturation of act(P, rho, C) then lowers val_t of the
discriminant by exactly (n-1) * (n * mult - 4 * sum(rho)) >= n - 1, which
both bounds the length of any reduction and gives a cheap certificate:
val_t D <= n - 2 leaves no room for a destabilizer at all.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import asdict, dataclass, field
from enum import Enum
from fractions import Fraction

from . import diagnose
from .disc import disc_valuation
from .pencil import (
    CoordinateChange,
    NotInvertible,
    WeightSystem,
    act,
    mult,
    mult_from_profile,
    plucker_profile,
    saturate,
)
from .ring import INF


class NonSmoothGenericFibre(ValueError):
    pass


class InternalInvariantViolation(RuntimeError):
    pass


class NotADestabilizer(ValueError):
    pass


@dataclass(frozen=True)
class SearchBudget:
    max_weight_sum: int = 4
    max_random_coord_changes: int = 200
    rng_seed: int = 0
    max_reduction_steps: int = 64
    # candidate points examined when looking for singular points of the central fibre
    point_scan_cap: int = 1000

    def as_dict(self):
        return asdict(self)


class Status(str, Enum):
    SEMISTABLE_CERTIFIED = "semistable_certified"
    SEMISTABLE_UP_TO_BUDGET = "semistable_up_to_budget"
    UNSTABLE = "unstable"


@dataclass(frozen=True)
class Witness:
    rho: WeightSystem
    C: CoordinateChange
    mult: int
    bound: Fraction  # 4 * sum(rho) / n; destabilizing iff mult exceeds it
    source: str = ""


@dataclass(frozen=True)
class StabilityVerdict:
    status: Status
    disc_valuation: object
    witness: Witness | None = None

    @property
    def is_unstable(self):
        return self.status is Status.UNSTABLE


@dataclass(frozen=True)
class ReductionStep:
    rho: WeightSystem
    C: CoordinateChange
    mult: int
    disc_before: int
    disc_after: int

    @property
    def drop(self):
        return self.disc_before - self.disc_after


@dataclass
class ReductionTrace:
    initial: object
    steps: list = field(default_factory=list)
    final: object = None
    final_verdict: StabilityVerdict | None = None
    hit_step_limit: bool = False

    @property
    def total_drop(self):
        return sum(s.drop for s in self.steps)


def stability_bound(rho, n):
    return Fraction(4 * sum(rho), n)


def _require_smooth(P):
    v = disc_valuation(P)
    if v == INF:
        raise NonSmoothGenericFibre("discriminant vanishes identically")
    return v


def is_destabilizer(P, rho, C=None):
    _require_smooth(P)
    if not rho.effective:
        return False
    return P.n * mult(P, rho, C) > 4 * rho.total


def certificate_semistable(P):
    """True when val_t D <= n - 2, which rules out every destabilizer."""
    return _require_smooth(P) <= P.n - 2


# -- candidate generation -----------------------------------------------------

def _pattern_seeds(n):
    """Weight shapes that turn up in destabilizing families, most specific first."""
    seeds = [(1,), (1, 1), (1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1), (1, 0, 0, 1),
             (1, 0, 1), (2, 1, 0, 1), (1, 0, 2, 1), (1,) * (n - 1)]
    out = []
    for s in seeds:
        if len(s) > n - 1 and s != (1,) * (n - 1):
            continue
        w = tuple(s) + (0,) * (n - len(s))
        if w not in out and any(w):
            out.append(w)
    out.sort(key=sum)
    return out


def harvested_weights(n):
    seen, out = set(), []
    for seed in _pattern_seeds(n):
        for w in sorted(set(itertools.permutations(seed)), reverse=True):
            if w not in seen:
                seen.add(w)
                out.append(w)
    return out


def bounded_weights(n, max_sum):
    """Effective weight systems with total <= max_sum, lexicographic."""
    return [
        w for w in itertools.product(range(max_sum + 1), repeat=n)
        if 0 < sum(w) <= max_sum and min(w) == 0
    ]


def _transvections(F, n):
    consts = []
    for c in (1, -1, 2, -2):
        x = F(c)
        if x != 0 and x not in consts:
            consts.append(x)
    for i in range(n):
        for j in range(n):
            if i != j:
                for c in consts:
                    yield CoordinateChange.transvection(F, n, i, j, c)


def _random_changes(F, n, count, seed):
    rng = random.Random(seed)
    made = 0
    while made < count:
        if F.p is None:
            rows = [[F(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        else:
            rows = [[F(rng.randrange(F.p)) for _ in range(n)] for _ in range(n)]
        try:
            C = CoordinateChange(F, tuple(tuple(r) for r in rows))
        except NotInvertible:
            continue
        made += 1
        yield C


def candidate_blocks(P, budget):
    """Yield (C, weights, source) blocks in search order.

    Order: witnesses read off the central fibre, harvested weight shapes in
    the given coordinates, all bounded weights in the given coordinates,
    then all bounded weights after each elementary transvection, then after
    seeded random coordinate changes.
    """
    F, n = P.field, P.n
    if P.is_integral():
        for rho, C in diagnose.low_rank_witnesses(P):
            yield C, [rho.w], "low-rank member"
        for rho, C in diagnose.singular_point_witnesses(P, budget.point_scan_cap):
            yield C, [rho.w], "singular point"
    ident = CoordinateChange.identity(F, n)
    harvested = [w for w in harvested_weights(n) if sum(w) <= max(budget.max_weight_sum, 0)]
    yield ident, harvested, "harvested"
    bounded = bounded_weights(n, budget.max_weight_sum)
    tried = set(harvested)
    rest = [w for w in bounded if w not in tried]
    yield ident, rest, "bounded"
    for C in _transvections(F, n):
        yield C, bounded, "transvection"
    for C in _random_changes(F, n, budget.max_random_coord_changes, budget.rng_seed):
        yield C, bounded, "random"


def search_destabilizer(P, budget=None):
    """First destabilizing (rho, C) in search order, or None within the budget."""
    budget = budget or SearchBudget()
    _require_smooth(P)
    n = P.n
    for C, weights, source in candidate_blocks(P, budget):
        if not weights:
            continue
        profile = plucker_profile(act(P, WeightSystem.zero(n), C))
        for w in weights:
            m = mult_from_profile(profile, w)
            if n * m > 4 * sum(w):
                rho = WeightSystem(w)
                return Witness(rho, C, m, stability_bound(rho, n), source)
    return None


def check_stability(P, budget=None):
    budget = budget or SearchBudget()
    v = _require_smooth(P)
    if v <= P.n - 2:
        return StabilityVerdict(Status.SEMISTABLE_CERTIFIED, v)
    wit = search_destabilizer(P, budget)
    if wit is None:
        return StabilityVerdict(Status.SEMISTABLE_UP_TO_BUDGET, v)
    return StabilityVerdict(Status.UNSTABLE, v, wit)


def transform(P, rho, C=None):
    """saturate(act(P, rho, C)) for any weight system, checking the shed.

    Returns (new pencil, mult, val D before, val D after).  No destabilizing
    condition is imposed, so this is also the way to test the exact law
    val D(after) - val D(before) = -n(n-1) mult + 4(n-1) sum(rho).
    """
    m = mult(P, rho, C)
    Q, shed = saturate(act(P, rho, C))
    before, after = disc_valuation(P), disc_valuation(Q)
    if shed != m:
        raise InternalInvariantViolation(
            f"saturation shed {shed}, multiplicity is {m}; discriminant valuation went {before} -> {after}"
        )
    return Q, m, before, after


def expected_change(n, m, rho):
    return -n * (n - 1) * m + 4 * (n - 1) * sum(rho)


def destabilization_step(P, rho, C=None, *, record=False):
    """Saturate act(P, rho, C) and check the discriminant drop.

    Returns (new pencil, drop), or the full ReductionStep when record=True.
    Refuses pairs that do not destabilize.
    """
    n = P.n
    _require_smooth(P)
    m = mult(P, rho, C)
    if not (rho.effective and n * m > 4 * rho.total):
        raise NotADestabilizer(f"not a destabilizer: n * mult = {n * m}, 4 * sum = {4 * rho.total}")
    Q, m, before, after = transform(P, rho, C)
    if after == INF or after - before != expected_change(n, m, rho):
        raise InternalInvariantViolation(
            f"discriminant valuation went {before} -> {after}, "
            f"expected change {expected_change(n, m, rho)}"
        )
    if record:
        C = C or CoordinateChange.identity(P.field, n)
        return Q, ReductionStep(rho, C, m, before, after)
    return Q, before - after


def semistable_reduce(P, budget=None):
    """Apply destabilizers until none is found; every step is verified."""
    budget = budget or SearchBudget()
    trace = ReductionTrace(initial=P)
    cur = P
    for _ in range(budget.max_reduction_steps):
        verdict = check_stability(cur, budget)
        if verdict.status is not Status.UNSTABLE:
            trace.final, trace.final_verdict = cur, verdict
            return trace
        wit = verdict.witness
        cur, step = destabilization_step(cur, wit.rho, wit.C, record=True)
        trace.steps.append(step)
    trace.final = cur
    trace.final_verdict = check_stability(cur, budget)
    trace.hit_step_limit = trace.final_verdict.status is Status.UNSTABLE
    return trace
