"""
The full modular group acting on the upper half-plane.
Matrices, Mobius action, sign normalization and the (v, H, h, k) change
of variables.
"""

import logging
import math
from typing import Iterator

import attr

from functions.errors import DomainError

logger = logging.getLogger(__name__)


def _check_det(instance, attribute, value):
    if instance.a * instance.d - instance.b * instance.c != 1:
        raise DomainError(
            f"Matrix ({instance.a},{instance.b};{instance.c},{instance.d}) has determinant "
            f"{instance.a * instance.d - instance.b * instance.c}, expected 1"
        )


@attr.s(frozen=True, slots=True, repr=False)
class ModularMatrix:
    """Integer matrix (a, b; c, d) with ad - bc = 1"""

    a: int = attr.ib(converter=int)
    b: int = attr.ib(converter=int)
    c: int = attr.ib(converter=int)
    d: int = attr.ib(converter=int, validator=_check_det)

    @property
    def is_normalized(self) -> bool:
        return self.c > 0 or (self.c == 0 and self.d > 0)

    def __neg__(self) -> "ModularMatrix":
        return ModularMatrix(-self.a, -self.b, -self.c, -self.d)

    def __matmul__(self, other: "ModularMatrix") -> "ModularMatrix":
        return ModularMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def render(self) -> str:
        return f"({self.a},{self.b};{self.c},{self.d})"

    def __repr__(self) -> str:
        return f"ModularMatrix{self.render()}"


def _check_upper(instance, attribute, value):
    if not value.imag > 0:
        raise DomainError(f"tau must lie in the upper half-plane, got {value}")


@attr.s(frozen=True, slots=True)
class UpperHalfPoint:
    """A point tau with Im(tau) > 0"""

    tau: complex = attr.ib(converter=complex, validator=_check_upper)


def _check_frame(instance, attribute, value):
    H, h, k = instance.H, instance.h, instance.k
    if k <= 0:
        raise DomainError(f"Frame needs k > 0, got k={k}")
    if math.gcd(h, k) != 1 or math.gcd(H, k) != 1:
        raise DomainError(f"Frame needs H, h coprime to k, got H={H}, h={h}, k={k}")
    if (H * h + 1) % k != 0:
        raise DomainError(f"Frame needs H*h = -1 mod k, got H={H}, h={h}, k={k}")


@attr.s(frozen=True, slots=True)
class HHkFrame:
    """Change of variables a = H, c = k, h = -d with Hh = -1 (mod k)"""

    H: int = attr.ib()
    h: int = attr.ib()
    k: int = attr.ib(validator=_check_frame)


def normalize(A: ModularMatrix) -> ModularMatrix:
    """Return A or -A, whichever has c > 0, or c = 0 and d > 0"""
    if A.is_normalized:
        return A
    return -A


def modular_matrix(a: int, b: int, c: int, d: int) -> ModularMatrix:
    """Build a matrix and normalize it; every caller downstream sees c >= 0"""
    return normalize(ModularMatrix(a, b, c, d))


def mobius_apply(A: ModularMatrix, tau: UpperHalfPoint) -> UpperHalfPoint:
    """(a tau + b) / (c tau + d)"""
    t = tau.tau
    return UpperHalfPoint((A.a * t + A.b) / (A.c * t + A.d))


def automorphy_denominator(A: ModularMatrix, tau: UpperHalfPoint) -> complex:
    """c tau + d"""
    return A.c * tau.tau + A.d


def decompose(A: ModularMatrix) -> HHkFrame:
    """(H, h, k) = (a, -d, c) for a normalized matrix with c > 0"""
    if A.c <= 0:
        raise DomainError(f"decompose needs a normalized matrix with c > 0, got {A}")
    return HHkFrame(H=A.a, h=-A.d, k=A.c)


def v_of(A: ModularMatrix, tau: UpperHalfPoint) -> complex:
    """v = -i (c tau + d); Re v = c Im tau > 0 when c > 0"""
    if A.c <= 0:
        raise DomainError(f"v is only defined for c > 0, got {A}")
    return -1j * automorphy_denominator(A, tau)


def frame_tau(frame: HHkFrame, v: complex) -> complex:
    """tau = (i v + h) / k"""
    return (1j * v + frame.h) / frame.k


def frame_image(frame: HHkFrame, v: complex) -> complex:
    """A tau = (H + i / v) / k"""
    return (frame.H + 1j / v) / frame.k


def complete_bottom_row(c: int, d: int) -> ModularMatrix:
    """
    Complete (c, d) to a matrix of determinant 1.
    Picks the a with smallest |a| (ties to positive a); b follows.
    """
    if c <= 0:
        raise DomainError(f"complete_bottom_row needs c > 0, got c={c}")
    if math.gcd(c, d) != 1:
        raise DomainError(f"(c, d) = ({c}, {d}) is not a coprime pair")
    a0 = pow(d, -1, c) if c > 1 else 0
    a = min((a0, a0 - c), key=lambda x: (abs(x), -x))
    b = (a * d - 1) // c
    return ModularMatrix(a, b, c, d)


def sweep_matrices(c_max: int, a_max: int) -> Iterator[ModularMatrix]:
    """
    Every (c, a) with 1 <= c <= c_max, |a| <= a_max, gcd(a, c) = 1,
    completed with d = a^{-1} mod c taken in (-c/2, c/2].
    """
    for c in range(1, c_max + 1):
        for a in range(-a_max, a_max + 1):
            if math.gcd(a, c) != 1:
                continue
            d = pow(a, -1, c) if c > 1 else 0
            if d > c // 2:
                d -= c
            b = (a * d - 1) // c
            yield ModularMatrix(a, b, c, d)
