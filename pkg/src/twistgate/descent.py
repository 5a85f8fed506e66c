"""Point-level and module-level descent checks for quadratic twists.

Two independent pieces:

* Exact arithmetic in Q(sqrt(d)) and the twist correspondence on points of
  a short model y^2 = x^3 + A x + B: the map (x, y) -> (d x, d sqrt(d) y)
  lands on y^2 = x^3 + A d^2 x + B d^3, sends conjugation-anti-invariant
  points (x rational, y in sqrt(d) Q) to rational points of the twist, and
  sends rational points with y != 0 off the rational locus.  For elliptic
  curve points "anti-invariant" means sigma(P) = -P, the group inverse.

* Finite 2-group modules with r commuting involutions: for every element m,
  2^r m decomposes as the sum over sign characters s of
  v_s = sum_sigma s_sigma m^sigma, each v_s lying in the s-eigenspace M_s.
  lemma_sum_check verifies this exhaustively and returns the decompositions
  as certificates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .errors import (
    NonCommutingActionError,
    NonInvolutiveActionError,
    NotOnCurveError,
    NotSquarefreeError,
)
from .numtheory import is_squarefree

MAX_SEARCH_HEIGHT = 10**4
MAX_MODULE_SIZE = 2**16


def _as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise TypeError(f"expected an exact rational, got {type(v).__name__}")


@dataclass(frozen=True)
class QuadElt:
    """Element a + b sqrt(d) of Q(sqrt(d)), d squarefree and not 0 or 1."""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", _as_fraction(self.a))
        object.__setattr__(self, "b", _as_fraction(self.b))
        if self.d in (0, 1) or not is_squarefree(self.d):
            raise NotSquarefreeError(f"field parameter {self.d} must be squarefree, not 0 or 1")

    @classmethod
    def rational(cls, value, d: int) -> "QuadElt":
        return cls(_as_fraction(value), Fraction(0), d)

    def _coerce(self, other) -> "QuadElt":
        if isinstance(other, QuadElt):
            if other.d != self.d:
                raise ValueError("elements live in different quadratic fields")
            return other
        return QuadElt.rational(other, self.d)

    def __add__(self, other):
        o = self._coerce(other)
        return QuadElt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadElt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        return QuadElt(
            self.a * o.a + self.d * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(d))")
        conj = o.conjugate()
        num = self * conj
        return QuadElt(num.a / n, num.b / n, self.d)

    def conjugate(self) -> "QuadElt":
        return QuadElt(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    @property
    def is_anti_rational(self) -> bool:
        """True for elements of sqrt(d) Q (zero included)."""
        return self.a == 0

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __str__(self):
        return f"{self.a} + {self.b}*sqrt({self.d})"


@dataclass(frozen=True)
class QuadPoint:
    """A point of y^2 = x^3 + A x + B with coordinates in Q(sqrt(d))."""

    x: QuadElt
    y: QuadElt
    curve: tuple[Fraction, Fraction]

    def __post_init__(self):
        A, B = self.curve
        object.__setattr__(self, "curve", (_as_fraction(A), _as_fraction(B)))
        if self.x.d != self.y.d:
            raise ValueError("coordinates live in different quadratic fields")
        A, B = self.curve
        lhs = self.y * self.y
        rhs = self.x * self.x * self.x + A * self.x + B
        if lhs.a != rhs.a or lhs.b != rhs.b:
            raise NotOnCurveError(f"({self.x}, {self.y}) is not on y^2 = x^3 + {A}x + {B}")

    @property
    def d(self) -> int:
        return self.x.d

    @property
    def is_anti_invariant(self) -> bool:
        """sigma(P) = -P: rational x, y in sqrt(d) Q (2-torsion included)."""
        return self.x.is_rational and self.y.is_anti_rational

    @property
    def is_invariant(self) -> bool:
        """sigma(P) = P: both coordinates rational."""
        return self.x.is_rational and self.y.is_rational


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    rn = isqrt(q.numerator)
    rd = isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def quad_point_search(
    curve: tuple[Fraction, Fraction], d: int, height: int
) -> list[QuadPoint]:
    """Points of the curve over Q(sqrt(d)) with rational x of bounded height.

    Scans x = m/n with |m|, n <= height and keeps x whenever f(x) is zero, a
    rational square (rational point, invariant), or d times a rational
    square (anti-invariant point y = y0 sqrt(d)).  One representative with
    nonnegative y is returned per x.
    """
    if not isinstance(d, int) or d <= 1 or not is_squarefree(d):
        raise NotSquarefreeError(f"search needs a squarefree integer d > 1, got {d}")
    if not 1 <= height <= MAX_SEARCH_HEIGHT:
        raise ValueError(f"height must be between 1 and {MAX_SEARCH_HEIGHT}")
    A = _as_fraction(curve[0])
    B = _as_fraction(curve[1])
    points = []
    for den in range(1, height + 1):
        for num in range(-height, height + 1):
            if gcd(num, den) != 1:
                continue
            x = Fraction(num, den)
            fx = x * x * x + A * x + B
            if fx == 0:
                y = QuadElt.rational(0, d)
            else:
                y0 = _rational_sqrt(fx)
                if y0 is not None:
                    y = QuadElt.rational(y0, d)
                else:
                    y1 = _rational_sqrt(fx / d)
                    if y1 is None:
                        continue
                    y = QuadElt(Fraction(0), y1, d)
            points.append(QuadPoint(QuadElt.rational(x, d), y, (A, B)))
    return points


def rational_point_search(
    curve: tuple[Fraction, Fraction], num_bound: int, den_bound: int
) -> list[tuple[Fraction, Fraction]]:
    """Rational points (x, y), y >= 0, with x = m/n, |m| <= num_bound, n <= den_bound."""
    A = _as_fraction(curve[0])
    B = _as_fraction(curve[1])
    out = []
    for den in range(1, den_bound + 1):
        for num in range(-num_bound, num_bound + 1):
            if gcd(num, den) != 1:
                continue
            x = Fraction(num, den)
            y = _rational_sqrt(x * x * x + A * x + B)
            if y is not None:
                out.append((x, y))
    return out


def twist_curve(curve: tuple[Fraction, Fraction], d: int) -> tuple[Fraction, Fraction]:
    A = _as_fraction(curve[0])
    B = _as_fraction(curve[1])
    return (A * d * d, B * d**3)


def twist_map(P: QuadPoint, d: int) -> QuadPoint:
    """Image of P under (x, y) -> (d x, d sqrt(d) y) on the twist by d.

    Anti-invariant points land on rational points of the twist; invariant
    points with y != 0 land off the rational locus.  The image is verified
    on the twisted equation exactly (QuadPoint construction re-checks).
    """
    if d != P.d:
        raise ValueError(f"point lives over Q(sqrt({P.d})), not Q(sqrt({d}))")
    sqrt_d = QuadElt(Fraction(0), Fraction(1), d)
    x_new = P.x * d
    y_new = P.y * sqrt_d * d
    return QuadPoint(x_new, y_new, twist_curve(P.curve, d))


# ---------------------------------------------------------------------------
# signed modules and the 2^r decomposition


Matrix = tuple[tuple[int, ...], ...]


def _mat_mul(a: Matrix, b: Matrix, mod: int) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) % mod for j in range(n))
        for i in range(n)
    )


def _mat_vec(a: Matrix, v: tuple[int, ...], mod: int) -> tuple[int, ...]:
    n = len(a)
    return tuple(sum(a[i][k] * v[k] for k in range(n)) % mod for i in range(n))


def _identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class SignedModule:
    """(Z/2^k)^n acted on by r commuting involutions given as matrices."""

    k: int
    n: int
    generators: tuple[Matrix, ...]

    def __post_init__(self):
        if self.k < 1 or self.n < 1:
            raise ValueError("need k >= 1 and n >= 1")
        mod = self.modulus
        gens = tuple(
            tuple(tuple(entry % mod for entry in row) for row in g)
            for g in self.generators
        )
        object.__setattr__(self, "generators", gens)
        ident = _identity(self.n)
        for g in gens:
            if len(g) != self.n or any(len(row) != self.n for row in g):
                raise ValueError(f"generator is not {self.n}x{self.n}")
            if _mat_mul(g, g, mod) != ident:
                raise NonInvolutiveActionError(f"generator {g} does not square to 1 mod {mod}")
        for g, h in itertools.combinations(gens, 2):
            if _mat_mul(g, h, mod) != _mat_mul(h, g, mod):
                raise NonCommutingActionError(f"generators {g} and {h} do not commute mod {mod}")

    @property
    def r(self) -> int:
        return len(self.generators)

    @property
    def modulus(self) -> int:
        return 2**self.k

    @property
    def size(self) -> int:
        return 2 ** (self.k * self.n)

    def elements(self):
        return itertools.product(range(self.modulus), repeat=self.n)

    def group_elements(self) -> list[tuple[tuple[int, ...], Matrix]]:
        """All 2^r products of generators as (exponent bits, matrix)."""
        out = []
        for bits in itertools.product((0, 1), repeat=self.r):
            mat = _identity(self.n)
            for bit, g in zip(bits, self.generators):
                if bit:
                    mat = _mat_mul(mat, g, self.modulus)
            out.append((bits, mat))
        return out


def characters(r: int) -> list[tuple[int, ...]]:
    """All sign characters of (Z/2)^r, the trivial one first."""
    return list(itertools.product((1, -1), repeat=r))


@dataclass(frozen=True)
class DecompositionCertificate:
    element: tuple[int, ...]
    components: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]  # (signs, v_s)


@dataclass(frozen=True)
class LemmaSumResult:
    passed: bool
    certificates: tuple[DecompositionCertificate, ...]
    failures: tuple[str, ...]


def involutive_generator_pool(k: int, n: int) -> list[Matrix]:
    """Diagonal matrices with self-inverse entries, plus the swap for n = 2."""
    mod = 2**k
    units = [x for x in range(mod) if x * x % mod == 1]
    pool: list[Matrix] = []
    for diag in itertools.product(units, repeat=n):
        pool.append(tuple(tuple(diag[i] if i == j else 0 for j in range(n)) for i in range(n)))
    if n == 2:
        pool.append(((0, 1), (1, 0)))
    return pool


def enumerate_signed_modules(k: int, n: int, r: int) -> list[SignedModule]:
    """All SignedModules on (Z/2^k)^n with r generators from the pool.

    Non-commuting combinations are skipped (every pool matrix is already
    involutive); repeated generators are allowed, they just act through a
    quotient of (Z/2)^r.
    """
    pool = involutive_generator_pool(k, n)
    modules = []
    for gens in itertools.product(pool, repeat=r):
        try:
            modules.append(SignedModule(k, n, gens))
        except NonCommutingActionError:
            continue
    return modules


def lemma_sum_check(module: SignedModule) -> LemmaSumResult:
    """Exhaustively verify 2^r m = sum_s v_s with v_s in M_s for all m.

    v_s = sum over group elements sigma of s_sigma * sigma(m).  Membership
    v_s in M_s is checked by applying every sigma, and the decomposition
    identity is checked mod 2^k.  Fails are collected, and the full list of
    certificates is returned.
    """
    if module.size > MAX_MODULE_SIZE:
        raise ValueError(f"module has {module.size} elements, above the exhaustive bound")
    mod = module.modulus
    r = module.r
    group = module.group_elements()
    chars = characters(r)
    certificates = []
    failures = []
    for m in module.elements():
        images = {bits: _mat_vec(mat, m, mod) for bits, mat in group}
        components = []
        total = tuple(0 for _ in range(module.n))
        for signs in chars:
            v = tuple(0 for _ in range(module.n))
            for bits, _ in group:
                coeff = 1
                for bit, s in zip(bits, signs):
                    if bit:
                        coeff *= s
                img = images[bits]
                v = tuple((vi + coeff * xi) % mod for vi, xi in zip(v, img))
            # v must lie in the s-eigenspace: sigma(v) = s_sigma v for all sigma
            for bits, mat in group:
                s_sigma = 1
                for bit, s in zip(bits, signs):
                    if bit:
                        s_sigma *= s
                expected = tuple((s_sigma * vi) % mod for vi in v)
                if _mat_vec(mat, v, mod) != expected:
                    failures.append(f"m={m}: component for {signs} escapes its eigenspace")
            components.append((signs, v))
            total = tuple((ti + vi) % mod for ti, vi in zip(total, v))
        want = tuple((2**r * mi) % mod for mi in m)
        if total != want:
            failures.append(f"m={m}: components sum to {total}, expected {want}")
        certificates.append(DecompositionCertificate(m, tuple(components)))
    return LemmaSumResult(not failures, tuple(certificates), tuple(failures))
