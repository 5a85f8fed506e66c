import math
import random
from fractions import Fraction

import pytest

from twistgate.errors import (
    CompositeResidueError,
    EvenModulusError,
    ZeroInputError,
)
from twistgate.numtheory import (
    Factorization,
    factor,
    is_prime,
    is_squarefree,
    jacobi,
    primes_up_to,
    squarefree_part,
    valuation,
)


def legendre_by_enumeration(a, p):
    """Independent oracle: quadratic character mod p by listing all squares."""
    a %= p
    if a == 0:
        return 0
    squares = {x * x % p for x in range(1, p)}
    return 1 if a in squares else -1


class TestFactor:
    def test_denominator_of_j15(self):
        assert factor(50625).factors == ((3, 4), (5, 4))

    def test_one_has_empty_factorization(self):
        assert factor(1).factors == ()

    def test_denominator_of_j21(self):
        # 3969 = 3^4 * 7^2, matching the j-denominator of the conductor-21 curve
        assert factor(3969).factors == ((3, 4), (7, 2))

    def test_large_prime_cofactor_is_certified(self):
        p = 10**12 + 39  # prime
        assert is_prime(p)
        assert factor(2 * p).factors == ((2, 1), (p, 1))

    def test_composite_residue_rejected(self):
        # both factors sit just above the trial bound, so the whole composite
        # survives as a cofactor above 10^12
        n = 1000003 * 1000033
        with pytest.raises(CompositeResidueError):
            factor(n)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            factor(0)
        with pytest.raises(ValueError):
            factor(-6)

    def test_validation_catches_bad_product(self):
        with pytest.raises(ValueError):
            Factorization(12, ((2, 1), (3, 1)))

    def test_random_roundtrip(self):
        rng = random.Random(7)
        for _ in range(200):
            n = rng.randrange(1, 10**6)
            f = factor(n)
            assert math.prod(p**e for p, e in f.factors) == n


class TestSquarefreePart:
    def test_trivial(self):
        assert squarefree_part(1) == 1

    def test_square_times_prime(self):
        assert 17 * 53 * 17 == 15317
        assert squarefree_part(15317) == 53

    def test_negative(self):
        assert squarefree_part(-12) == -3

    def test_zero_rejected(self):
        with pytest.raises(ZeroInputError):
            squarefree_part(0)

    @pytest.mark.parametrize("n", list(range(1, 300)) + [-n for n in range(1, 300)])
    def test_quotient_is_square_and_idempotent(self, n):
        s = squarefree_part(n)
        q = n // s
        assert s * q == n
        r = math.isqrt(q)
        assert r * r == q
        assert squarefree_part(s) == s
        assert is_squarefree(s)


class TestJacobi:
    def test_one_numerator(self):
        assert jacobi(1, 15) == 1

    def test_17_over_15(self):
        # (17/15) = (2/3)(2/5) = (-1)(-1), each factor by square enumeration
        assert legendre_by_enumeration(2, 3) == -1
        assert legendre_by_enumeration(2, 5) == -1
        assert jacobi(17, 15) == 1

    def test_13_over_15(self):
        assert legendre_by_enumeration(13, 3) == 1
        assert legendre_by_enumeration(13, 5) == -1
        assert jacobi(13, 15) == -1

    def test_shared_factor_gives_zero(self):
        assert jacobi(6, 15) == 0
        assert jacobi(0, 9) == 0

    def test_modulus_one(self):
        assert jacobi(12345, 1) == 1

    def test_even_modulus_rejected(self):
        with pytest.raises(EvenModulusError):
            jacobi(3, 10)
        with pytest.raises(EvenModulusError):
            jacobi(3, -5)

    def test_agrees_with_enumeration_for_primes(self):
        for p in primes_up_to(97):
            if p == 2:
                continue
            for a in range(-2 * p, 2 * p + 1):
                assert jacobi(a, p) == legendre_by_enumeration(a, p), (a, p)

    def test_multiplicative_in_numerator(self):
        # residue-complete check covers all |a|, |b| <= 200 by periodicity,
        # plus a literal sample including negatives
        for n in range(1, 201, 2):
            table = [jacobi(x, n) for x in range(n)]
            for x in range(n):
                for y in range(n):
                    assert table[x * y % n] == table[x] * table[y]
        rng = random.Random(3)
        for _ in range(500):
            a = rng.randint(-200, 200)
            b = rng.randint(-200, 200)
            n = rng.randrange(1, 201, 2)
            assert jacobi(a * b, n) == jacobi(a, n) * jacobi(b, n)

    def test_multiplicative_in_modulus(self):
        rng = random.Random(5)
        for _ in range(300):
            a = rng.randint(-100, 100)
            m = rng.randrange(1, 100, 2)
            n = rng.randrange(1, 100, 2)
            assert jacobi(a, m * n) == jacobi(a, m) * jacobi(a, n)


class TestValuation:
    def test_known_valuations(self):
        assert valuation(50625, 3) == 4
        assert valuation(1, 7) == 0
        # exponent of 5 in the j-invariant of the conductor-15 curve
        assert valuation(Fraction(111284641, 50625), 5) == -4

    def test_zero_rejected(self):
        with pytest.raises(ZeroInputError):
            valuation(0, 3)
        with pytest.raises(ZeroInputError):
            valuation(Fraction(0), 3)

    def test_nonprime_rejected(self):
        with pytest.raises(ValueError):
            valuation(12, 6)

    def test_additive_on_products(self):
        rng = random.Random(11)
        for _ in range(200):
            x = Fraction(rng.randint(1, 500), rng.randint(1, 500))
            y = Fraction(rng.randint(1, 500), rng.randint(1, 500))
            if rng.random() < 0.5:
                x = -x
            for p in (2, 3, 5, 7):
                assert valuation(x * y, p) == valuation(x, p) + valuation(y, p)


def test_primes_up_to():
    assert primes_up_to(1) == []
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_is_prime_small_and_carmichael():
    assert [n for n in range(40) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
    assert not is_prime(561)  # Carmichael
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2,3,5,7
