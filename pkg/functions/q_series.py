"""
Floating-point evaluation of eta, theta1, Lambda and the Fourier sums.

Every series fixes its truncation index from an analytic tail bound first
and is then summed (or multiplied) with numpy over the whole index range,
so a value depends only on its inputs and the SeriesConfig.
"""

import cmath
import logging
import math
from fractions import Fraction
from typing import Optional, Union

import attr
import numpy as np

import config
from functions.errors import ConvergenceError, DomainError, GuardRejection
from functions.exact_core import ExactPhase, bernoulli_b1, bernoulli_b2
from functions.modular_group import ModularMatrix, UpperHalfPoint, v_of

logger = logging.getLogger(__name__)

TWO_PI_I = 2j * math.pi
PI_I = 1j * math.pi


def _positive(instance, attribute, value):
    if not value > 0:
        raise DomainError(f"{attribute.name} must be positive, got {value}")


@attr.s(frozen=True, slots=True)
class SeriesConfig:
    """Truncation controls shared by every series"""

    tail_eps: float = attr.ib(default=config.TAIL_EPS, converter=float, validator=_positive)
    max_terms: int = attr.ib(default=config.MAX_TERMS, converter=int, validator=_positive)

    @classmethod
    def from_env(cls) -> "SeriesConfig":
        """Defaults from config.py, overridden by IK_TAIL_EPS / IK_MAX_TERMS"""
        return cls(tail_eps=config.tail_eps(), max_terms=config.max_terms())


def _re_positive(instance, attribute, value):
    if not value.real > 0:
        raise DomainError(f"Lambda needs Re(w) > 0, got w={value}")


@attr.s(frozen=True, slots=True)
class LambdaParams:
    """(alpha, beta, theta, w) of the generalized Iseki function"""

    alpha: float = attr.ib(converter=float)
    beta: float = attr.ib(converter=float)
    theta: complex = attr.ib(converter=complex)
    w: complex = attr.ib(converter=complex, validator=_re_positive)

    def swap(self) -> "LambdaParams":
        """(alpha, beta, w, theta) -> (1 - beta, alpha, 1/w, -i theta / w)"""
        return LambdaParams(1.0 - self.beta, self.alpha, -1j * self.theta / self.w, 1.0 / self.w)

    def check_hypotheses(self) -> None:
        """Raise DomainError unless 0 < alpha < 1, theta real and 0 < beta + theta < 1"""
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"Iseki identity needs 0 < alpha < 1, got {self.alpha}")
        if self.theta.imag != 0.0:
            raise DomainError(f"Iseki identity needs a real theta, got {self.theta}")
        if not 0.0 < self.beta + self.theta.real < 1.0:
            raise DomainError(f"Iseki identity needs 0 < beta + theta < 1, got {self.beta + self.theta.real}")


class TermLedger:
    """Counts the series terms spent on one evaluation"""

    def __init__(self):
        self.terms = 0

    def add(self, n: int) -> None:
        self.terms += int(n)


def _record(ledger: Optional[TermLedger], n: int) -> None:
    if ledger is not None:
        ledger.add(n)


def as_point(tau: Union[UpperHalfPoint, complex]) -> complex:
    if isinstance(tau, UpperHalfPoint):
        return tau.tau
    return UpperHalfPoint(tau).tau


def truncation_index(lead: float, ratio: float, cfg: SeriesConfig, what: str, start: int = 0) -> int:
    """Smallest n >= start with lead * ratio**n < tail_eps"""
    if lead <= 0.0 or lead * ratio ** start < cfg.tail_eps:
        return start
    if ratio >= 1.0:
        raise ConvergenceError(f"{what}: term bound does not decrease (ratio {ratio})")
    n = max(start, math.ceil(math.log(cfg.tail_eps / lead) / math.log(ratio)))
    if n > cfg.max_terms:
        raise ConvergenceError(f"{what}: needs {n} terms, max_terms is {cfg.max_terms}", terms=n)
    return n


def _finite(value: complex, what: str) -> complex:
    if not cmath.isfinite(value):
        raise GuardRejection(f"{what}: value overflowed the double range")
    return complex(value)


def eta(tau, cfg: SeriesConfig, ledger: Optional[TermLedger] = None) -> complex:
    """eta(tau) = e^{pi i tau/12} prod_{n>=1} (1 - e^{2 pi i n tau})"""
    t = as_point(tau)
    ratio = math.exp(-2.0 * math.pi * t.imag)
    N = truncation_index(1.0, ratio, cfg, "eta", start=1)
    n = np.arange(1, N + 1)
    product = np.prod(1.0 - np.exp(TWO_PI_I * n * t))
    _record(ledger, N)
    value = cmath.exp(PI_I * t / 12.0) * complex(product)
    return _finite(value, "eta")


def _theta_product_terms(z: complex, t: complex, cfg: SeriesConfig, what: str) -> int:
    # factor n: |q^{2n}| + |w^2 q^{2n}| + |w^{-2} q^{2n-2}| <= lead * r^n
    r = math.exp(-2.0 * math.pi * t.imag)
    log_w2 = -2.0 * math.pi * z.imag
    if abs(log_w2) + 2.0 * math.pi * t.imag > config.OVERFLOW_LOG_LIMIT:
        raise GuardRejection(f"{what}: |Im z| = {abs(z.imag)} overflows the product factors")
    lead = 1.0 + math.exp(log_w2) + math.exp(-log_w2) / r
    return truncation_index(lead, r, cfg, what, start=1)


def theta1_sum_product(z: complex, tau, cfg: SeriesConfig, ledger: Optional[TermLedger] = None) -> complex:
    """P(z, tau) = prod_{n>=1} (1 - e^{2 pi i z} q^{2n}) (1 - e^{-2 pi i z} q^{2n-2})"""
    z = complex(z)
    t = as_point(tau)
    N = _theta_product_terms(z, t, cfg, "theta1 z-product")
    n = np.arange(1, N + 1)
    upper = 1.0 - np.exp(TWO_PI_I * (z + n * t))
    lower = 1.0 - np.exp(TWO_PI_I * (-z + (n - 1) * t))
    _record(ledger, N)
    return _finite(complex(np.prod(upper * lower)), "theta1 z-product")


def theta1_product(z: complex, tau, cfg: SeriesConfig, ledger: Optional[TermLedger] = None) -> complex:
    """
    theta1(z, tau) = -i w q^{1/4} prod (1 - q^{2n})(1 - w^2 q^{2n})(1 - w^{-2} q^{2n-2})
    with w = e^{pi i z}, q = e^{pi i tau}; the n = 1 factor (1 - w^{-2}) is kept.
    """
    z = complex(z)
    t = as_point(tau)
    N = _theta_product_terms(z, t, cfg, "theta1 product")
    n = np.arange(1, N + 1)
    q2n = np.exp(TWO_PI_I * n * t)
    factors = (1.0 - q2n) * (1.0 - np.exp(TWO_PI_I * (z + n * t))) * (1.0 - np.exp(TWO_PI_I * (-z + (n - 1) * t)))
    _record(ledger, N)
    value = -1j * cmath.exp(PI_I * z + PI_I * t / 4.0) * complex(np.prod(factors))
    return _finite(value, "theta1 product")


def theta1_series(z: complex, tau, cfg: SeriesConfig, ledger: Optional[TermLedger] = None) -> complex:
    """theta1(z, tau) = 2 sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1) pi z)"""
    z = complex(z)
    t = as_point(tau)
    T, Y = t.imag, abs(z.imag)
    # log|term| <= pi (2 Y y - T y^2) + log 2, y = n + 1/2; peak at y = Y / T
    peak = math.pi * Y * Y / T
    if peak > config.OVERFLOW_LOG_LIMIT:
        raise GuardRejection(f"theta1 series: peak term e^{peak:.0f} overflows")
    target = math.log(cfg.tail_eps / 2.0) / math.pi
    y = (Y + math.sqrt(Y * Y - T * target)) / T
    N = max(0, math.ceil(y - 0.5))
    if N > cfg.max_terms:
        raise ConvergenceError(f"theta1 series: needs {N} terms, max_terms is {cfg.max_terms}", terms=N)
    n = np.arange(N + 1)
    yy = (n + 0.5) ** 2
    k = 2 * n + 1
    gauss = PI_I * t * yy
    signs = np.where(n % 2 == 0, 1.0, -1.0)
    terms = signs * (np.exp(gauss + PI_I * k * z) - np.exp(gauss - PI_I * k * z))
    _record(ledger, N + 1)
    # 2 sin(x) = -i (e^{ix} - e^{-ix})
    return _finite(-1j * complex(np.sum(terms)), "theta1 series")


def theta1(z: complex, tau, cfg: SeriesConfig, method: str = "product", ledger: Optional[TermLedger] = None) -> complex:
    if method == "product":
        return theta1_product(z, tau, cfg, ledger)
    if method == "series":
        return theta1_series(z, tau, cfg, ledger)
    raise DomainError(f"Unknown theta1 method {method!r}")


def theta1_eta_form(z: complex, tau, cfg: SeriesConfig, ledger: Optional[TermLedger] = None) -> complex:
    """theta1 written through eta: -i w q^{1/4} (eta(tau) e^{-pi i tau/12}) P(z, tau)"""
    z = complex(z)
    t = as_point(tau)
    prefactor = -1j * cmath.exp(PI_I * z + PI_I * t / 4.0 - PI_I * t / 12.0)
    return _finite(prefactor * eta(t, cfg, ledger) * theta1_sum_product(z, t, cfg, ledger), "theta1 eta form")


def _lambda_leads(p: LambdaParams):
    # n = 0 arguments of the two log families, as exponents
    e1 = TWO_PI_I * p.theta - 2.0 * math.pi * (p.alpha * p.w - 1j * p.beta)
    e2 = -TWO_PI_I * p.theta - 2.0 * math.pi * ((1.0 - p.alpha) * p.w + 1j * p.beta)
    return e1, e2


def lambda_guard(p: LambdaParams, guard: float = config.LAMBDA_GUARD) -> float:
    """Largest n = 0 log-argument modulus; GuardRejection above 1 - guard"""
    e1, e2 = _lambda_leads(p)
    rho = max(math.exp(e1.real), math.exp(e2.real)) if max(e1.real, e2.real) < config.OVERFLOW_LOG_LIMIT else math.inf
    if rho > 1.0 - guard:
        raise GuardRejection(f"Lambda log argument modulus {rho:.9g} exceeds 1 - {guard:g} at {p}")
    return rho


def lambda_series(p: LambdaParams, cfg: SeriesConfig, ledger: Optional[TermLedger] = None) -> complex:
    """
    Lambda(alpha, beta, w, theta) = -sum_{n>=0} [log(1 - e^{2 pi i theta} e^{-2 pi((n+alpha)w - i beta)})
                                              + log(1 - e^{-2 pi i theta} e^{-2 pi((n+1-alpha)w + i beta)})]
    The leading minus covers both logs; principal branch throughout.
    """
    rho = lambda_guard(p)
    e1, e2 = _lambda_leads(p)
    step = -2.0 * math.pi * p.w
    # |log(1 - x)| <= |x| / (1 - |x|)
    lead = (math.exp(e1.real) + math.exp(e2.real)) / (1.0 - rho)
    N = truncation_index(lead, math.exp(step.real), cfg, "Lambda series")
    n = np.arange(N + 1)
    logs = np.log(1.0 - np.exp(e1 + n * step)) + np.log(1.0 - np.exp(e2 + n * step))
    _record(ledger, N + 1)
    return -complex(np.sum(logs))


def lambda_fourier(p: LambdaParams, cfg: SeriesConfig, ledger: Optional[TermLedger] = None) -> complex:
    """
    Single-sum form of Lambda:
    sum_{m>=1} (1/m) [e^{2 pi i m(beta+theta)} e^{-2 pi m alpha w}
                      + e^{-2 pi i m(beta+theta)} e^{-2 pi m(1-alpha) w}] / (1 - e^{-2 pi m w})
    """
    rho = lambda_guard(p)
    e1, e2 = _lambda_leads(p)
    floor_den = 1.0 - math.exp(-2.0 * math.pi * p.w.real)
    N = truncation_index(2.0 / floor_den, rho, cfg, "Lambda Fourier series", start=1)
    m = np.arange(1, N + 1)
    numer = np.exp(m * e1) + np.exp(m * e2)
    terms = numer / (m * (1.0 - np.exp(-2.0 * math.pi * m * p.w)))
    _record(ledger, N)
    return complex(np.sum(terms))


def g0(p: LambdaParams) -> complex:
    """(pi/w) B2(beta+theta) - pi w B2(alpha) + 2 pi i B1(alpha) B1(beta+theta)"""
    s = p.beta + p.theta
    return (math.pi / p.w) * bernoulli_b2(s) - math.pi * p.w * bernoulli_b2(p.alpha) \
        + TWO_PI_I * bernoulli_b1(p.alpha) * bernoulli_b1(s)


def _sinpi(r: np.ndarray) -> np.ndarray:
    r = np.mod(r, 2.0)
    return np.where(r == np.floor(r), 0.0, np.sin(np.pi * r))


def _cospi(r: np.ndarray) -> np.ndarray:
    r = np.mod(r, 2.0)
    half = np.mod(r, 1.0) == 0.5
    return np.where(half, 0.0, np.cos(np.pi * r))


def fourier_F_partial(n: int, x: float, M: int) -> complex:
    """Symmetric partial sum sum_{0<|m|<=M} e^{2 pi i m x} / m^n, n in {1, 2}"""
    if n not in (1, 2):
        raise DomainError(f"fourier_F_partial supports n = 1, 2, got {n}")
    if not 0.0 < x < 1.0:
        raise DomainError(f"fourier_F_partial needs 0 < x < 1, got {x}")
    if M < 1:
        raise DomainError(f"fourier_F_partial needs M >= 1, got {M}")
    m = np.arange(1, M + 1, dtype=np.float64)
    r = 2.0 * m * x
    if n == 2:
        # e^{i a} + e^{-i a} over m^2
        return complex(np.sum(2.0 * _cospi(r) / (m * m)), 0.0)
    # e^{i a} - e^{-i a} over m
    return complex(0.0, np.sum(2.0 * _sinpi(r) / m))


def partial_fraction_closed(m: int, alpha: float, w: complex) -> complex:
    """e^{2 pi m alpha w} / (1 - e^{2 pi m w}) + 1/(2 pi w m), evaluated without overflow"""
    if m == 0:
        raise DomainError("partial fraction needs m != 0")
    x = 2.0 * math.pi * m * w
    if x.real <= 0:
        head = cmath.exp(alpha * x) / (1.0 - cmath.exp(x))
    else:
        head = -cmath.exp((alpha - 1.0) * x) / (1.0 - cmath.exp(-x))
    return head + 1.0 / (2.0 * math.pi * w * m)


def partial_fraction_sum(m: int, alpha: float, w: complex, M: int) -> complex:
    """(1/2 pi i) sum_{0<|n|<=M} e^{2 pi i alpha n} / (w m i + n)"""
    if M < 1:
        raise DomainError(f"partial fraction sum needs M >= 1, got {M}")
    n = np.arange(1, M + 1, dtype=np.float64)
    x = w * m * 1j
    r = 2.0 * alpha * n
    phase = _cospi(r) + 1j * _sinpi(r)
    total = np.sum(phase / (x + n) + np.conj(phase) / (x - n))
    return complex(total) / TWO_PI_I


def principal_sqrt_factor(A: ModularMatrix, tau) -> complex:
    """Principal square root of -i(c tau + d); Re > 0 since c > 0"""
    if A.c <= 0:
        raise DomainError(f"principal_sqrt_factor needs c > 0, got {A}")
    return cmath.sqrt(v_of(A, UpperHalfPoint(as_point(tau))))


def theta1_translate(z: complex, tau, b: int, cfg: SeriesConfig, ledger: Optional[TermLedger] = None) -> complex:
    """theta1(z, tau + b) = e^{pi i b/4} theta1(z, tau)"""
    return ExactPhase(Fraction(b, 4)).to_complex() * theta1_product(z, tau, cfg, ledger)


def eta_translate(tau, b: int, cfg: SeriesConfig, ledger: Optional[TermLedger] = None) -> complex:
    """eta(tau + b) = e^{pi i b/12} eta(tau)"""
    return ExactPhase(Fraction(b, 12)).to_complex() * eta(tau, cfg, ledger)
