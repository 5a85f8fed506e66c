"""Admissible twist tuples, character discriminants, tuple search, and the
hypothesis pipeline tying root numbers to L-value evidence.

For p in {5, 7} and the conductor-3p curve X, a tuple (d_1, ..., d_r) is
admissible when every d_i is a squarefree positive integer, d_i = 1 mod 4,
gcd(d_i, 3p) = 1, jacobi(d_i, 3p) = 1, and no nonempty subset product is a
perfect square (so the d_i are independent modulo squares and
Q(sqrt(d_1), ..., sqrt(d_r)) has degree 2^r).  Each sign character of that
field corresponds to the squarefree part of a subset product; the
hypothesis check computes, for all 2^r characters, the twist's global root
number (cross-checked against the Jacobi-symbol formula) and an L(1)
estimate.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .curve import curve_by_label, quadratic_twist
from .errors import CurveTableError
from .lseries import (
    COEFFICIENT_BUDGET,
    DEFAULT_DPS,
    DEFAULT_MARGIN,
    LValueEstimate,
    VERDICT_NONZERO,
    l_value_at_1,
)
from .numtheory import factor, is_squarefree, jacobi, squarefree_part
from .reduction import conductor
from .rootnum import RootNumber, global_root_number, twist_root_number_formula

SUPPORTED_P = (5, 7)
CURVE_FOR_P = {5: "15a1", 7: "21a1"}
MAX_SEARCH_BOUND = 10**4

OVERALL_VERIFIED = "Verified*"
OVERALL_ROOT_OBSTRUCTION = "RootNumberObstruction"
OVERALL_INCONCLUSIVE = "InconclusiveLValue"
OVERALL_NOT_ADMISSIBLE = "NotAdmissible"

VERIFIED_NOTE = (
    "all character twists have root number +1 and nonzero L(1) evidence; "
    "the rank-0 conclusion is conditional on the analytic-rank implication"
)

UNRAMIFIED_NOTE = (
    "d_i odd and 1 mod 4 keeps 2 unramified; coprimality to 3p keeps 3 and p "
    "unramified, so the multiquadratic field is unramified at every prime dividing 6p"
)


@dataclass(frozen=True)
class AdmissibilityCheck:
    ok: bool
    failed_condition: str | None = None
    failed_index: int | None = None
    detail: str | None = None


@dataclass(frozen=True)
class AdmissibleTuple:
    p: int
    ds: tuple[int, ...]

    def __post_init__(self):
        check = is_admissible(self.p, self.ds)
        if not check.ok:
            raise ValueError(
                f"tuple {self.ds} is not admissible for p = {self.p}: "
                f"{check.failed_condition} (index {check.failed_index})"
            )

    @property
    def r(self) -> int:
        return len(self.ds)


def _fail(condition: str, index: int | None, detail: str | None = None) -> AdmissibilityCheck:
    return AdmissibilityCheck(False, condition, index, detail)


def square_subset(ds) -> tuple[int, ...] | None:
    """Indices of a nonempty subset whose product is a perfect square, or None."""
    ds = list(ds)
    for size in range(1, len(ds) + 1):
        for combo in itertools.combinations(range(len(ds)), size):
            prod = 1
            for i in combo:
                prod *= ds[i]
            root = math.isqrt(prod)
            if root * root == prod:
                return combo
    return None


def exponent_vectors_independent(ds) -> bool:
    """Second implementation of the subset test: GF(2) rank of exponent vectors."""
    prime_bits: dict[int, int] = {}
    basis: list[int] = []
    for d in ds:
        mask = 0
        for q, e in factor(abs(d)).factors:
            if e % 2:
                bit = prime_bits.setdefault(q, len(prime_bits))
                mask ^= 1 << bit
        if d < 0:
            mask ^= 1 << prime_bits.setdefault(-1, len(prime_bits))
        for row in basis:
            mask = min(mask, mask ^ row)
        if mask == 0:
            return False
        basis.append(mask)
    return True


def is_admissible(p: int, ds) -> AdmissibilityCheck:
    """Check the tuple conditions in order, naming the first failure."""
    if p not in SUPPORTED_P:
        raise ValueError(f"p must be one of {SUPPORTED_P}, got {p}")
    ds = list(ds)
    if not ds:
        return _fail("empty", None)
    n3p = 3 * p
    for i, d in enumerate(ds):
        if not isinstance(d, int) or d <= 0:
            return _fail("positive", i, f"d_{i+1} = {d}")
        if not is_squarefree(d):
            return _fail("squarefree", i, f"d_{i+1} = {d}")
    for i, d in enumerate(ds):
        if d % 4 != 1:
            return _fail("mod4", i, f"d_{i+1} = {d} is {d % 4} mod 4")
    for i, d in enumerate(ds):
        if math.gcd(d, n3p) != 1:
            return _fail("coprime", i, f"gcd({d}, {n3p}) = {math.gcd(d, n3p)}")
    for i, d in enumerate(ds):
        if jacobi(d, n3p) != 1:
            return _fail("jacobi", i, f"({d}/{n3p}) = {jacobi(d, n3p)}")
    combo = square_subset(ds)
    if combo is not None:
        return _fail(
            "subset-square",
            None,
            "product of d_%s is a perfect square" % ",".join(str(i + 1) for i in combo),
        )
    return AdmissibilityCheck(True)


def characters(r: int) -> list[tuple[int, ...]]:
    """Sign characters of Gal(K/Q) = (Z/2)^r, the trivial one first."""
    return list(itertools.product((1, -1), repeat=r))


def character_discriminant(tup: AdmissibleTuple, signs) -> int:
    """Squarefree part of the product of the d_i with sign -1; 1 if trivial.

    The output provably satisfies the numeric admissibility conditions
    again (multiplicativity of the Jacobi symbol); this closure is asserted
    on every call.
    """
    signs = tuple(signs)
    if len(signs) != tup.r:
        raise ValueError(f"character has length {len(signs)}, tuple has rank {tup.r}")
    if any(s not in (1, -1) for s in signs):
        raise ValueError("character entries must be +1 or -1")
    prod = 1
    for d, s in zip(tup.ds, signs):
        if s == -1:
            prod *= d
    d_s = squarefree_part(prod)
    n3p = 3 * tup.p
    assert d_s >= 1 and d_s % 4 == 1
    assert math.gcd(d_s, n3p) == 1 and jacobi(d_s, n3p) == 1
    return d_s


def _single_ok(d: int, n3p: int) -> bool:
    return (
        d % 4 == 1
        and math.gcd(d, n3p) == 1
        and is_squarefree(d)
        and jacobi(d, n3p) == 1
    )


def search(p: int, r: int, bound: int) -> list[AdmissibleTuple]:
    """All admissible r-tuples with d_1 < ... < d_r <= bound, lexicographic.

    Candidates are pruned by GF(2) independence of their prime-exponent
    vectors while recursing, and every produced tuple passes the full
    is_admissible recheck (including the literal perfect-square subset
    scan).
    """
    if p not in SUPPORTED_P:
        raise ValueError(f"p must be one of {SUPPORTED_P}, got {p}")
    if r < 1:
        raise ValueError("rank r must be >= 1")
    if not 1 <= bound <= MAX_SEARCH_BOUND:
        raise ValueError(f"bound must be between 1 and {MAX_SEARCH_BOUND}")
    n3p = 3 * p
    singles = [d for d in range(1, bound + 1) if _single_ok(d, n3p)]
    prime_bits: dict[int, int] = {}
    masks = []
    for d in singles:
        mask = 0
        for q, _ in factor(d).factors:
            bit = prime_bits.setdefault(q, len(prime_bits))
            mask ^= 1 << bit
        masks.append(mask)
    results: list[AdmissibleTuple] = []

    def extend(start: int, chosen: list[int], basis: list[int]):
        if len(chosen) == r:
            tup = AdmissibleTuple(p, tuple(chosen))  # full recheck
            results.append(tup)
            return
        for idx in range(start, len(singles)):
            reduced = masks[idx]
            for row in basis:
                reduced = min(reduced, reduced ^ row)
            if reduced == 0:
                continue  # some subset product would be a square
            chosen.append(singles[idx])
            basis.append(reduced)
            extend(idx + 1, chosen, basis)
            basis.pop()
            chosen.pop()

    extend(0, [], [])
    return results


@dataclass(frozen=True)
class CharacterResult:
    signs: tuple[int, ...]
    discriminant: int
    root_number: RootNumber
    formula_sign: int
    lvalue: LValueEstimate
    retried: bool


@dataclass(frozen=True)
class HypothesisReport:
    p: int
    ds: tuple[int, ...]
    admissibility: AdmissibilityCheck
    per_character: tuple[CharacterResult, ...]
    overall: str
    unramified_at_6p: bool
    note: str


def check_hypothesis(
    p: int,
    ds,
    margin_factor: float = DEFAULT_MARGIN,
    terms: int | None = None,
    dps: int = DEFAULT_DPS,
) -> HypothesisReport:
    """Run the full per-character pipeline for the tuple (d_1, ..., d_r).

    For each of the 2^r characters: the twist discriminant, the twisted
    curve, its global root number as a local product (cross-checked against
    the Jacobi-symbol formula, exactly), and an L(1) estimate; an
    inconclusive estimate is retried once with four times the terms.
    Character evaluations are independent pure computations aggregated in a
    fixed order.
    """
    ds = tuple(int(d) for d in ds)
    adm = is_admissible(p, ds)
    if not adm.ok:
        return HypothesisReport(
            p,
            ds,
            adm,
            (),
            OVERALL_NOT_ADMISSIBLE,
            False,
            f"admissibility failed: {adm.failed_condition} ({adm.detail})",
        )
    tup = AdmissibleTuple(p, ds)
    X = curve_by_label(CURVE_FOR_P[p])
    if conductor(X) != 3 * p:
        raise CurveTableError(
            f"table curve {CURVE_FOR_P[p]} has conductor {conductor(X)}, expected {3 * p}"
        )
    per: list[CharacterResult] = []
    for signs in characters(tup.r):
        d_s = character_discriminant(tup, signs)
        twist = quadratic_twist(X, d_s)
        direct = global_root_number(twist)
        formula = twist_root_number_formula(X, d_s)
        if direct.value != formula:
            raise AssertionError(
                f"twist formula sign {formula} disagrees with local product "
                f"{direct.value} at d = {d_s}"
            )
        estimate = l_value_at_1(
            twist,
            terms=terms,
            margin_factor=margin_factor,
            dps=dps,
            root_number=direct.value,
        )
        retried = False
        if estimate.verdict != VERDICT_NONZERO:
            retried = True
            estimate = l_value_at_1(
                twist,
                terms=min(4 * estimate.terms_used, COEFFICIENT_BUDGET),
                margin_factor=margin_factor,
                dps=dps,
                root_number=direct.value,
            )
        per.append(CharacterResult(signs, d_s, direct, formula, estimate, retried))
    roots_ok = all(c.root_number.value == 1 for c in per)
    l_ok = all(c.lvalue.verdict == VERDICT_NONZERO for c in per)
    if roots_ok and l_ok:
        overall = OVERALL_VERIFIED
        note = VERIFIED_NOTE
    elif not roots_ok:
        overall = OVERALL_ROOT_OBSTRUCTION
        note = "some character twist has root number -1"
    else:
        overall = OVERALL_INCONCLUSIVE
        note = "every root number is +1 but some L(1) estimate stayed inconclusive"
    return HypothesisReport(p, ds, adm, tuple(per), overall, True, note)
