"""
Exact arithmetic for the eta multiplier system.
Jacobi symbols, Bernoulli polynomials, Dedekind sums and root-of-unity
phases, all in integer / Fraction arithmetic.
"""

import cmath
import logging
import math
from fractions import Fraction

import attr

from functions.errors import DomainError
from functions.modular_group import ModularMatrix

logger = logging.getLogger(__name__)

_HALF = Fraction(1, 2)
_SIXTH = Fraction(1, 6)


def gcd(a: int, b: int) -> int:
    """Nonnegative greatest common divisor; gcd(0, 0) = 0"""
    return math.gcd(a, b)


def jacobi_symbol(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n >= 1, with (a/1) = 1 for every a"""
    if n <= 0 or n % 2 == 0:
        raise DomainError(f"Jacobi symbol needs a positive odd modulus, got {n}")
    if n == 1:
        return 1
    sign = 1
    a %= n
    while a != 0:
        # (2/n) = -1 exactly when n = 3, 5 mod 8
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def bernoulli_b1(x):
    """B1(x) = x - 1/2; exact for int / Fraction input"""
    if isinstance(x, (int, Fraction)):
        return Fraction(x) - _HALF
    return x - 0.5


def bernoulli_b2(x):
    """B2(x) = x^2 - x + 1/6; exact for int / Fraction input"""
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return x * x - x + _SIXTH
    return x * x - x + 1.0 / 6.0


def sawtooth(x: Fraction) -> Fraction:
    """((x)) = x - floor(x) - 1/2, and 0 at integers"""
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(0)
    return x - math.floor(x) - _HALF


def dedekind_sum(h: int, k: int) -> Fraction:
    """
    s(h, k) = sum_{r=1}^{k-1} (r/k)(hr/k - floor(hr/k) - 1/2).

    Summed in integers: (r/k)(((hr) mod k)/k - 1/2) adds up to
    sum(r * (hr mod k)) / k^2 - (k - 1)/4, with a true floor modulus so
    negative h needs no reduction.
    """
    if k <= 0:
        raise DomainError(f"Dedekind sum needs k > 0, got k={k}")
    if math.gcd(h, k) != 1:
        raise DomainError(f"Dedekind sum needs gcd(h, k) = 1, got h={h}, k={k}")
    if k == 1:
        return Fraction(0)
    total = sum(r * ((h * r) % k) for r in range(1, k))
    return Fraction(total, k * k) - Fraction(k - 1, 4)


def _reduce_mod_two(t) -> Fraction:
    return Fraction(t) % 2


@attr.s(frozen=True, slots=True, eq=True, hash=True, repr=False)
class ExactPhase:
    """The unit complex number e^{i pi t}, with t a rational kept in [0, 2)"""

    t: Fraction = attr.ib(converter=_reduce_mod_two)

    @classmethod
    def power_of_i(cls, m: int) -> "ExactPhase":
        """i^m, for any integer m (negative allowed)"""
        return cls(Fraction(m, 2))

    @classmethod
    def sign(cls, s: int) -> "ExactPhase":
        """+1 or -1 as a phase"""
        if s not in (1, -1):
            raise DomainError(f"Expected a sign, got {s}")
        return cls(0 if s == 1 else 1)

    def __mul__(self, other: "ExactPhase") -> "ExactPhase":
        if not isinstance(other, ExactPhase):
            return NotImplemented
        return ExactPhase(self.t + other.t)

    def __pow__(self, n: int) -> "ExactPhase":
        return ExactPhase(self.t * n)

    def conjugate(self) -> "ExactPhase":
        return ExactPhase(-self.t)

    @property
    def is_one(self) -> bool:
        return self.t == 0

    def to_complex(self) -> complex:
        # Exact values on the axes keep i^m free of rounding
        quarter = self.t * 2
        if quarter.denominator == 1:
            return (1, 1j, -1, -1j)[int(quarter) % 4] + 0j
        return cmath.exp(1j * math.pi * float(self.t))

    def render(self) -> str:
        return f"{self.t.numerator}/{self.t.denominator}" if self.t.denominator != 1 else str(self.t.numerator)

    def __repr__(self) -> str:
        return f"ExactPhase(t={self.render()})"


def _require_positive_c(A: ModularMatrix) -> None:
    if A.c <= 0:
        raise DomainError(f"Multiplier needs a normalized matrix with c > 0, got {A}")


def eta_character_dedekind(A: ModularMatrix) -> ExactPhase:
    """eps(A) = exp(pi i ((a+d)/(12c) + s(-d, c))) for c > 0"""
    _require_positive_c(A)
    return ExactPhase(Fraction(A.a + A.d, 12 * A.c) + dedekind_sum(-A.d, A.c))


def eta_character_rademacher(A: ModularMatrix) -> ExactPhase:
    """
    eps(A) from the Jacobi-symbol case formula, c > 0.

    c odd:  (d/c) i^{(1-c)/2} e^{(pi i/12)(bd(1-c^2) + c(a+d))}
    d odd:  (c/|d|) e^{(pi i/12)(ac(1-d^2) + d(b-c+3))}

    The c-odd branch is used whenever c is odd. The d-odd branch is the one
    that agrees with the Dedekind form; the i^{(1-d)/2} factor sometimes
    printed next to e^{pi d i/4} does not belong there.
    """
    _require_positive_c(A)
    a, b, c, d = A.a, A.b, A.c, A.d
    if math.gcd(c, d) != 1:
        raise DomainError(f"Case formula needs gcd(c, d) = 1, got c={c}, d={d}")
    if c % 2 == 1:
        symbol = ExactPhase.sign(jacobi_symbol(d, c))
        i_power = ExactPhase.power_of_i((1 - c) // 2)
        exponential = ExactPhase(Fraction(b * d * (1 - c * c) + c * (a + d), 12))
        return symbol * i_power * exponential
    symbol = ExactPhase.sign(jacobi_symbol(c, abs(d)))
    exponential = ExactPhase(Fraction(a * c * (1 - d * d) + d * (b - c + 3), 12))
    return symbol * exponential


def eta_character_intro_form(A: ModularMatrix) -> ExactPhase:
    """exp(pi i ((a+d)/(12c) - s(d, c))); equal to the Dedekind form by oddness of s"""
    _require_positive_c(A)
    return ExactPhase(Fraction(A.a + A.d, 12 * A.c) - dedekind_sum(A.d, A.c))


def theta1_multiplier(A: ModularMatrix) -> ExactPhase:
    """eps1(A) = -i eps(A)^3"""
    eps = eta_character_dedekind(A)
    return ExactPhase.power_of_i(-1) * eps ** 3


def render_fraction(value: Fraction) -> str:
    """num/den, or a bare integer when den = 1"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
