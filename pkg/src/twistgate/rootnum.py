"""Local and global root numbers, and the Jacobi-symbol twist formula for
semistable curves of odd conductor.

Local signs follow the Dokchitser-Dokchitser case table over Q_p / R:

    (1) -1 at the infinite place and for split multiplicative reduction,
    (2) +1 for good and nonsplit multiplicative reduction,
    (3) (-1 / p) for additive potentially multiplicative reduction, p >= 3,
    (4) (-1)^floor(v_p(Delta_min) * p / 12) for additive potentially good
        reduction, p >= 5.

Uncovered places (additive reduction at 2, additive potentially good at 3)
raise UnsupportedPlaceError rather than guessing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .curve import WeierstrassModel, invariants, minimalize_at
from .errors import HypothesisViolationError, UnsupportedPlaceError
from .numtheory import is_prime, is_squarefree, jacobi, valuation
from .reduction import (
    ReductionKind,
    bad_primes,
    classify,
    conductor,
    count_points_naive,
)

INFINITE_PLACE = "inf"

CASE_ARCHIMEDEAN = "archimedean"
CASE_GOOD = "good"
CASE_SPLIT = "split-mult"
CASE_NONSPLIT = "nonsplit-mult"
CASE_ADD_POT_MULT = "add-pot-mult"
CASE_ADD_POT_GOOD = "add-pot-good"

_KIND_TO_CASE = {
    ReductionKind.GOOD: CASE_GOOD,
    ReductionKind.MULT_SPLIT: CASE_SPLIT,
    ReductionKind.MULT_NONSPLIT: CASE_NONSPLIT,
    ReductionKind.ADD_POT_MULT: CASE_ADD_POT_MULT,
    ReductionKind.ADD_POT_GOOD: CASE_ADD_POT_GOOD,
}


@dataclass(frozen=True)
class RootNumber:
    """A global sign together with the ledger of local factors.

    local_factors lists (place, sign, case), place being "inf" or a prime;
    good primes are omitted.  The constructor re-checks that the value is
    the product of the ledger and that the infinite place contributes -1.
    """

    value: int
    local_factors: tuple[tuple[object, int, str], ...]

    def __post_init__(self):
        if self.value not in (1, -1):
            raise ValueError("root number must be +1 or -1")
        prod = 1
        places = []
        saw_inf = False
        for place, sign, case in self.local_factors:
            prod *= sign
            places.append(place)
            if place == INFINITE_PLACE:
                saw_inf = True
                if sign != -1 or case != CASE_ARCHIMEDEAN:
                    raise ValueError("infinite place must carry sign -1")
        if not saw_inf:
            raise ValueError("ledger must include the infinite place")
        if len(set(places)) != len(places):
            raise ValueError("ledger lists a place twice")
        if prod != self.value:
            raise ValueError("value must equal the product of local signs")


def _local_factor_at_2(E: WeierstrassModel) -> tuple[int, str]:
    inv = invariants(E)
    if inv.delta % 2:
        return 1, CASE_GOOD
    if inv.c4 % 2 == 0:
        raise UnsupportedPlaceError("additive reduction at 2 is not covered")
    defect = 3 - count_points_naive(E, 2)
    if defect == 1:
        return -1, CASE_SPLIT
    if defect == -1:
        return 1, CASE_NONSPLIT
    raise AssertionError(f"multiplicative defect {defect} at p = 2")


def _local_factor(E: WeierstrassModel, place) -> tuple[int, str]:
    if place == INFINITE_PLACE:
        return -1, CASE_ARCHIMEDEAN
    p = place
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"place must be 'inf' or a prime, got {place!r}")
    if p == 2:
        return _local_factor_at_2(E)
    model = minimalize_at(E, p) if p >= 5 else E
    data = classify(model, p)
    kind = data.kind
    if kind is ReductionKind.GOOD:
        return 1, CASE_GOOD
    if kind is ReductionKind.MULT_SPLIT:
        return -1, CASE_SPLIT
    if kind is ReductionKind.MULT_NONSPLIT:
        return 1, CASE_NONSPLIT
    if kind is ReductionKind.ADD_POT_MULT:
        # (-1/p): +1 iff -1 is a square mod p iff p = 1 mod 4
        return (1 if p % 4 == 1 else -1), CASE_ADD_POT_MULT
    # additive potentially good
    if p == 3:
        raise UnsupportedPlaceError(
            "additive potentially good reduction at 3 is not covered"
        )
    v = valuation(invariants(model).delta, p)
    sign = -1 if (v * p // 12) % 2 else 1
    return sign, CASE_ADD_POT_GOOD


def local_root_number(E: WeierstrassModel, place) -> int:
    """Local root number at 'inf' or a prime (model p-minimalized first)."""
    return _local_factor(E, place)[0]


def global_root_number(E: WeierstrassModel) -> RootNumber:
    """Product of local root numbers over the infinite place and bad primes.

    Primes that become good after p-minimalization contribute +1 and are
    omitted from the ledger.
    """
    ledger: list[tuple[object, int, str]] = [(INFINITE_PLACE, -1, CASE_ARCHIMEDEAN)]
    value = -1
    for p in bad_primes(E):
        try:
            sign, case = _local_factor(E, p)
        except UnsupportedPlaceError as exc:
            raise UnsupportedPlaceError(f"at p = {p}: {exc}") from exc
        if case == CASE_GOOD:
            continue
        ledger.append((p, sign, case))
        value *= sign
    return RootNumber(value, tuple(ledger))


def twist_root_number_formula(E: WeierstrassModel, d: int) -> int:
    """jacobi(d, N) * w(E) for semistable E of odd conductor N.

    Valid for squarefree positive d = 1 mod 4 prime to N; any failed
    hypothesis raises HypothesisViolationError naming the condition.  The
    value equals the global root number of the twisted curve.
    """
    inv = invariants(E)
    for p in bad_primes(E):
        if p == 2:
            if inv.c4 % 2 == 0:
                raise HypothesisViolationError("E is not semistable: additive reduction at 2")
            continue
        if classify(E, p).kind.is_additive:
            raise HypothesisViolationError(f"E is not semistable: additive reduction at {p}")
    N = conductor(E)
    if N % 2 == 0:
        raise HypothesisViolationError(f"conductor {N} is even")
    if not isinstance(d, int) or d <= 0:
        raise HypothesisViolationError("twist parameter must be a positive integer")
    if not is_squarefree(d):
        raise HypothesisViolationError(f"twist parameter {d} is not squarefree")
    if d % 4 != 1:
        raise HypothesisViolationError(f"twist parameter {d} is not 1 mod 4")
    if math.gcd(d, N) != 1:
        raise HypothesisViolationError(f"twist parameter {d} shares a factor with N = {N}")
    return jacobi(d, N) * global_root_number(E).value
