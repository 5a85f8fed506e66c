"""Reduction data at primes: point counts over F_p, reduction-type
classification at odd primes, traces of Frobenius, conductors.

Point counts follow the convention that the count of a bad reduction
includes the singular point (and the point at infinity), so that

    p + 1 - #X(F_p)  =  0   additive
                        1   split multiplicative
                       -1   nonsplit multiplicative

and equals a_p with |a_p| <= 2 sqrt(p) at good primes.  Every classification
asserts this table literally.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .curve import WeierstrassModel, invariants, minimalize_at
from .errors import (
    NonMinimalModelError,
    PrimeTooLargeError,
    UnsupportedPrimeError,
    UnsupportedReductionError,
)
from .numtheory import factor, is_prime, valuation

POINT_COUNT_BOUND = 10**6


class ReductionKind(str, Enum):
    GOOD = "good"
    MULT_SPLIT = "mult-split"
    MULT_NONSPLIT = "mult-nonsplit"
    ADD_POT_GOOD = "add-pot-good"
    ADD_POT_MULT = "add-pot-mult"

    @property
    def is_multiplicative(self) -> bool:
        return self in (ReductionKind.MULT_SPLIT, ReductionKind.MULT_NONSPLIT)

    @property
    def is_additive(self) -> bool:
        return self in (ReductionKind.ADD_POT_GOOD, ReductionKind.ADD_POT_MULT)


@dataclass(frozen=True)
class ReductionData:
    p: int
    kind: ReductionKind
    points: int
    a_p: int

    def __post_init__(self):
        defect = self.p + 1 - self.points
        if defect != self.a_p:
            raise ValueError("a_p must equal p + 1 - points")
        if self.kind is ReductionKind.GOOD:
            if self.a_p * self.a_p > 4 * self.p:
                raise ValueError(f"Hasse bound violated at p = {self.p}")
        elif self.kind is ReductionKind.MULT_SPLIT:
            if defect != 1:
                raise ValueError("split multiplicative requires p + 1 - points = 1")
        elif self.kind is ReductionKind.MULT_NONSPLIT:
            if defect != -1:
                raise ValueError("nonsplit multiplicative requires p + 1 - points = -1")
        else:
            if defect != 0:
                raise ValueError("additive reduction requires p + 1 - points = 0")


def _check_prime(p: int):
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p} is not prime")


def count_points_naive(E: WeierstrassModel, p: int) -> int:
    """O(p^2) enumeration of all affine pairs, plus the point at infinity.

    Kept as the independent oracle for the per-x quadratic solver; also the
    code path for p = 2.
    """
    _check_prime(p)
    if p > POINT_COUNT_BOUND:
        raise PrimeTooLargeError(f"p = {p} exceeds the enumeration bound")
    a1, a2, a3, a4, a6 = E.ainvs()
    n = 1
    for x in range(p):
        rhs = (x * x * x + a2 * x * x + a4 * x + a6) % p
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y - rhs) % p == 0:
                n += 1
    return n


def count_points(E: WeierstrassModel, p: int) -> int:
    """#X(F_p) of the reduced equation, singular point included.

    For odd p, completing the square turns the count into
    p + 1 + sum_x chi((4 x^3 + b2 x^2 + 2 b4 x + b6) mod p) with chi the
    quadratic character; evaluated vectorized in O(p).
    """
    _check_prime(p)
    if p > POINT_COUNT_BOUND:
        raise PrimeTooLargeError(f"p = {p} exceeds the enumeration bound")
    if p == 2:
        return count_points_naive(E, 2)
    inv = invariants(E)
    x = np.arange(p, dtype=np.int64)
    g = (4 * x + inv.b2 % p) % p
    g = (g * x + (2 * inv.b4) % p) % p
    g = (g * x + inv.b6 % p) % p
    sq = np.zeros(p, dtype=bool)
    sq[(x * x) % p] = True
    nonzero = g != 0
    residues = int(np.count_nonzero(sq[g] & nonzero))
    nonresidues = int(np.count_nonzero(nonzero)) - residues
    return p + 1 + residues - nonresidues


def classify(E: WeierstrassModel, p: int) -> ReductionData:
    """Reduction type of E at an odd prime.

    The model is p-minimalized first for p >= 5.  At p = 3 a visibly
    non-minimal model (v3(Delta) >= 12 and v3(c4) >= 4) is rejected since we
    cannot minimalize there.  Split and nonsplit multiplicative reduction
    are told apart by the point count alone.
    """
    _check_prime(p)
    if p == 2:
        raise UnsupportedPrimeError("classification at p = 2 is not supported")
    if p >= 5:
        E = minimalize_at(E, p)
    inv = invariants(E)
    v_delta = valuation(inv.delta, p)
    if p == 3 and v_delta >= 12 and (inv.c4 == 0 or valuation(inv.c4, 3) >= 4):
        raise NonMinimalModelError(
            "model may be non-minimal at 3 (v3(Delta) >= 12 and v3(c4) >= 4)"
        )
    points = count_points(E, p)
    a_p = p + 1 - points
    if v_delta == 0:
        kind = ReductionKind.GOOD
    elif inv.c4 % p != 0:
        if a_p == 1:
            kind = ReductionKind.MULT_SPLIT
        elif a_p == -1:
            kind = ReductionKind.MULT_NONSPLIT
        else:
            raise AssertionError(f"multiplicative defect {a_p} at p = {p}")
    else:
        if inv.j != 0 and valuation(inv.j, p) < 0:
            kind = ReductionKind.ADD_POT_MULT
        else:
            kind = ReductionKind.ADD_POT_GOOD
    return ReductionData(p, kind, points, a_p)


def bad_primes(E: WeierstrassModel) -> list[int]:
    """Primes dividing the discriminant of the given model, ascending."""
    return list(factor(abs(invariants(E).delta)).primes())


def conductor(E: WeierstrassModel) -> int:
    """Conductor: product of bad primes, squared at additive primes (p >= 5).

    Requires good or multiplicative reduction at 2 and 3; the exponent-2
    formula is only valid without wild ramification, so additive reduction
    at 2 or 3 raises UnsupportedReductionError.  The model must be minimal
    at 2 (multiplicative reduction at 2 is still detected safely because a
    non-minimal model has v2(c4) >= 4).
    """
    inv = invariants(E)
    N = 1
    for p in bad_primes(E):
        if p == 2:
            if inv.c4 % 2 == 0:
                raise UnsupportedReductionError(
                    "additive (or non-minimal) reduction at 2: conductor unsupported"
                )
            N *= 2
            continue
        data = classify(E, p)
        if data.kind is ReductionKind.GOOD:
            continue
        if data.kind.is_multiplicative:
            N *= p
        else:
            if p == 3:
                raise UnsupportedReductionError(
                    "additive reduction at 3: conductor exponent unsupported"
                )
            N *= p * p
    return N
