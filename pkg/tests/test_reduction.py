import random

import pytest

from twistgate.curve import WeierstrassModel, quadratic_twist
from twistgate.errors import (
    NonMinimalModelError,
    PrimeTooLargeError,
    UnsupportedPrimeError,
    UnsupportedReductionError,
)
from twistgate.numtheory import primes_up_to, squarefree_part
from twistgate.reduction import (
    ReductionData,
    ReductionKind,
    classify,
    conductor,
    count_points,
    count_points_naive,
)


def scale_model(E, u):
    return WeierstrassModel(E.a1 * u, E.a2 * u**2, E.a3 * u**3, E.a4 * u**4, E.a6 * u**6)


class TestCountPoints:
    def test_known_counts_from_modular_curves(self, e15, e21):
        assert count_points(e15, 7) == 8
        assert count_points(e21, 5) == 8

    def test_small_counts(self, e15, e21):
        assert count_points(e15, 3) == 5
        assert count_points(e15, 5) == 5
        assert count_points(e21, 3) == 3
        assert count_points(e21, 7) == 9

    def test_two_implementations_agree(self, e15, e21):
        curves = [e15, e21, quadratic_twist(e15, 17), quadratic_twist(e21, 5)]
        for model in curves:
            for p in primes_up_to(97):
                if p == 2:
                    continue
                assert count_points(model, p) == count_points_naive(model, p), (model, p)

    def test_prime_bound(self, e15):
        with pytest.raises(PrimeTooLargeError):
            count_points(e15, 1000003)

    def test_nonprime_rejected(self, e15):
        with pytest.raises(ValueError):
            count_points(e15, 15)

    def test_p_equals_2(self, e15):
        assert count_points(e15, 2) == count_points_naive(e15, 2) == 4


class TestClassify:
    def test_15a1_nonsplit_at_3(self, e15):
        data = classify(e15, 3)
        assert data.kind is ReductionKind.MULT_NONSPLIT
        assert data.a_p == -1
        assert data.points == 5

    def test_15a1_split_at_5(self, e15):
        data = classify(e15, 5)
        assert data.kind is ReductionKind.MULT_SPLIT
        assert data.a_p == 1

    def test_21a1(self, e21):
        assert classify(e21, 3).kind is ReductionKind.MULT_SPLIT
        assert classify(e21, 7).kind is ReductionKind.MULT_NONSPLIT

    def test_twist_is_additive_potentially_good(self, e15):
        data = classify(quadratic_twist(e15, 17), 17)
        assert data.kind is ReductionKind.ADD_POT_GOOD
        assert data.a_p == 0

    def test_twist_at_bad_prime_is_potentially_multiplicative(self, e15):
        # 5 divides the conductor, so v_5(j) < 0 survives the twist
        data = classify(quadratic_twist(e15, 5), 5)
        assert data.kind is ReductionKind.ADD_POT_MULT
        assert data.a_p == 0

    def test_good_prime(self, e15):
        data = classify(e15, 7)
        assert data.kind is ReductionKind.GOOD
        assert data.a_p == 0  # 7 + 1 - 8

    def test_p2_unsupported(self, e15):
        with pytest.raises(UnsupportedPrimeError):
            classify(e15, 2)

    def test_nonminimal_at_3_rejected(self, e15):
        with pytest.raises(NonMinimalModelError):
            classify(scale_model(e15, 3), 3)

    def test_nonminimal_at_5_is_silently_minimalized(self, e15):
        assert classify(scale_model(e15, 5), 5) == classify(e15, 5)

    def test_defect_matches_kind_table(self, e15, e21):
        # the split/nonsplit/additive defect table, asserted literally
        cases = []
        for model in (e15, e21):
            for p in (3, 5, 7, 11, 13):
                cases.append(classify(model, p))
        for d in (13, 17, 29):
            cases.append(classify(quadratic_twist(e15, d), d))
        for data in cases:
            defect = data.p + 1 - data.points
            if data.kind is ReductionKind.MULT_SPLIT:
                assert defect == 1
            elif data.kind is ReductionKind.MULT_NONSPLIT:
                assert defect == -1
            elif data.kind.is_additive:
                assert defect == 0
            else:
                assert defect * defect <= 4 * data.p

    def test_hasse_bound_over_good_primes(self, e15, e21):
        # d = 1 mod 4 keeps the twist model minimal at 2 and 3, so every
        # odd prime is classifiable
        rng = random.Random(2)
        pool = [d for d in range(5, 250, 4) if squarefree_part(d) == d]
        twists = [quadratic_twist(e15, rng.choice(pool)) for _ in range(10)]
        twists += [quadratic_twist(e21, rng.choice(pool)) for _ in range(10)]
        for model in [e15, e21] + twists:
            for p in primes_up_to(200):
                if p < 3:
                    continue
                data = classify(model, p)
                if data.kind is ReductionKind.GOOD:
                    assert data.a_p * data.a_p <= 4 * p

    def test_reduction_data_validation(self):
        with pytest.raises(ValueError):
            ReductionData(5, ReductionKind.MULT_SPLIT, 7, -1)
        with pytest.raises(ValueError):
            ReductionData(5, ReductionKind.GOOD, 11, -5)


class TestConductor:
    def test_table_curves(self, e15, e21):
        assert conductor(e15) == 15
        assert conductor(e21) == 21

    def test_twist_conductor_d17(self, e15):
        assert conductor(quadratic_twist(e15, 17)) == 17**2 * 15 == 4335

    @pytest.mark.parametrize("base,N", [("e15", 15), ("e21", 21)])
    def test_twist_conductor_formula_admissible_d(self, base, N, e15, e21):
        model = {"e15": e15, "e21": e21}[base]
        import math

        for d in range(1, 201):
            if d % 4 != 1 or math.gcd(d, N) != 1 or squarefree_part(d) != d:
                continue
            assert conductor(quadratic_twist(model, d)) == d * d * N, d

    def test_additive_at_3_unsupported(self, e15):
        with pytest.raises(UnsupportedReductionError):
            conductor(quadratic_twist(e15, 21))

    def test_additive_at_2_unsupported(self):
        # y^2 = x^3 - x has additive reduction at 2
        with pytest.raises(UnsupportedReductionError):
            conductor(WeierstrassModel(0, 0, 0, -1, 0))

    def test_multiplicative_at_2_supported(self):
        # y^2 + xy = x^3 + 2: Delta = -1730 = -2 * 5 * 173, c4 = 1
        model = WeierstrassModel(1, 0, 0, 0, 2)
        assert conductor(model) == 1730
