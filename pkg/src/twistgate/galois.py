"""Hypothesis checks for Serre's mod-ell surjectivity criterion.

For an odd prime ell >= 3 the check records, exactly as the criterion is
applied to our curves: (a) for every prime q where the j-invariant has a
pole, ell does not divide |v_q(j)|, and (b) ell does not divide the point
count #E(F_q0) at an auxiliary good prime q0.  A passing report means the
criterion's hypotheses are verified; surjectivity of the mod-ell
representation then follows from Serre's Proposition 21 (Inventiones 15,
1972), which we do not re-prove.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curve import WeierstrassModel, invariants
from .errors import BadAuxPrimeError, UnsupportedPrimeError
from .numtheory import factor, is_prime, primes_up_to
from .reduction import ReductionKind, classify, count_points

PASS_STATEMENT = (
    "criterion hypotheses verified; surjectivity follows by Serre's Proposition 21"
)


@dataclass(frozen=True)
class JExponentCheck:
    q: int
    v_q_of_j: int
    ok: bool


@dataclass(frozen=True)
class AuxPrimeCheck:
    q: int
    points: int
    ok: bool


@dataclass(frozen=True)
class SurjectivityReport:
    ell: int
    j_exponent_checks: tuple[JExponentCheck, ...]
    aux_check: AuxPrimeCheck
    overall: bool

    @property
    def statement(self) -> str:
        return PASS_STATEMENT if self.overall else "criterion hypotheses NOT verified"


def _is_good_prime(E: WeierstrassModel, q: int) -> bool:
    if q == 2:
        return invariants(E).delta % 2 != 0
    return classify(E, q).kind is ReductionKind.GOOD


def default_aux_prime(E: WeierstrassModel) -> int:
    """Smallest odd prime of good reduction."""
    for q in primes_up_to(1000):
        if q == 2:
            continue
        if _is_good_prime(E, q):
            return q
    raise BadAuxPrimeError("no odd good prime below 1000")


def serre_check(E: WeierstrassModel, ell: int, aux: int | None = None) -> SurjectivityReport:
    """Run both indivisibility checks; overall passes only if all do.

    aux defaults to the smallest odd good prime (7 for the conductor-15
    curve, 5 for the conductor-21 one).
    """
    if not isinstance(ell, int) or ell < 3 or ell % 2 == 0 or not is_prime(ell):
        raise UnsupportedPrimeError(f"criterion requires an odd prime ell >= 3, got {ell}")
    if aux is None:
        aux = default_aux_prime(E)
    if not is_prime(aux):
        raise BadAuxPrimeError(f"auxiliary prime {aux} is not prime")
    if not _is_good_prime(E, aux):
        raise BadAuxPrimeError(f"{aux} is a bad prime of the curve")
    j = invariants(E).j
    j_checks = []
    if j != 0:
        for q, e in factor(j.denominator).factors:
            # v_q(j) = -e at a pole of j
            j_checks.append(JExponentCheck(q, -e, e % ell != 0))
    points = count_points(E, aux)
    aux_check = AuxPrimeCheck(aux, points, points % ell != 0)
    overall = aux_check.ok and all(c.ok for c in j_checks)
    return SurjectivityReport(ell, tuple(j_checks), aux_check, overall)
