"""
Deterministic sample draws for the verification suite.
Every draw is generated from (seed, family, index) alone, so samples never
depend on the order in which checks run.
"""

import math
import zlib
from typing import Tuple

import attr
import numpy as np

import config
from functions.errors import DomainError
from functions.modular_group import UpperHalfPoint
from functions.q_series import LambdaParams

Range = Tuple[float, float]


def _nonnegative(instance, attribute, value):
    if value < 0:
        raise DomainError(f"{attribute.name} must be nonnegative, got {value}")


def _seed_range(instance, attribute, value):
    if not 0 <= value < 2 ** 64:
        raise DomainError(f"seed must be a 64-bit unsigned integer, got {value}")


def _as_range(value) -> Range:
    lo, hi = value
    return (float(lo), float(hi))


@attr.s(frozen=True, slots=True)
class SampleSpec:
    """Seed, draw count and per-parameter sampling domains"""

    seed: int = attr.ib(default=config.DEFAULT_SEED, converter=int, validator=_seed_range)
    count: int = attr.ib(default=config.DEFAULT_COUNT, converter=int, validator=_nonnegative)
    alpha: Range = attr.ib(default=(0.05, 0.95), converter=_as_range)
    theta: Range = attr.ib(default=(-0.4, 0.4), converter=_as_range)
    beta_plus_theta: Range = attr.ib(default=(0.05, 0.95), converter=_as_range)
    re_w: Range = attr.ib(default=(0.3, 3.0), converter=_as_range)
    im_w: Range = attr.ib(default=(-2.0, 2.0), converter=_as_range)
    # complex-theta family: narrower so most draws clear the log guard
    complex_alpha: Range = attr.ib(default=(0.2, 0.8), converter=_as_range)
    complex_re_w: Range = attr.ib(default=(0.5, 3.0), converter=_as_range)
    im_theta: Range = attr.ib(default=(-0.1, 0.1), converter=_as_range)
    re_tau: Range = attr.ib(default=(-0.5, 0.5), converter=_as_range)
    im_tau: Range = attr.ib(default=(0.3, 3.0), converter=_as_range)
    quasi_im_tau: Range = attr.ib(default=(0.3, 1.5), converter=_as_range)
    eq29_im_tau: Range = attr.ib(default=(0.3, 0.6), converter=_as_range)
    # product-vs-series grid
    oracle_re_tau: Range = attr.ib(default=(-2.0, 2.0), converter=_as_range)
    oracle_im_tau: Range = attr.ib(default=(0.3, 3.0), converter=_as_range)
    oracle_z_max: float = attr.ib(default=1.0, converter=float)
    z_max: float = attr.ib(default=1.0, converter=float)
    c_max: int = attr.ib(default=config.MATRIX_C_MAX, converter=int)
    a_max: int = attr.ib(default=config.MATRIX_A_MAX, converter=int)
    character_c_max: int = attr.ib(default=config.CHARACTER_C_MAX, converter=int)
    reciprocity_k_max: int = attr.ib(default=config.RECIPROCITY_K_MAX, converter=int)
    sawtooth_k_max: int = attr.ib(default=config.SAWTOOTH_K_MAX, converter=int)
    quasiperiod_m_max: int = attr.ib(default=config.QUASIPERIOD_M_MAX, converter=int)
    eq29_c_max: int = attr.ib(default=config.EQ29_C_MAX, converter=int)
    fourier_M: int = attr.ib(default=config.FOURIER_M, converter=int)

    @property
    def per_matrix(self) -> int:
        """theta1 / eta draws per matrix"""
        return self.count // 10


def generator(spec: SampleSpec, family: str, *index: int) -> np.random.Generator:
    """A fresh generator keyed by (seed, family, index...)"""
    return np.random.default_rng([spec.seed, zlib.crc32(family.encode("utf-8")), *index])


def _uniform(rng: np.random.Generator, bounds: Range) -> float:
    return float(rng.uniform(bounds[0], bounds[1]))


def draw_lambda(spec: SampleSpec, index: int) -> LambdaParams:
    """Iseki draw with real theta and beta + theta inside beta_plus_theta"""
    rng = generator(spec, "iseki", index)
    alpha = _uniform(rng, spec.alpha)
    theta = _uniform(rng, spec.theta)
    beta = _uniform(rng, spec.beta_plus_theta) - theta
    w = complex(_uniform(rng, spec.re_w), _uniform(rng, spec.im_w))
    return LambdaParams(alpha, beta, theta, w)


def draw_lambda_complex(spec: SampleSpec, index: int) -> LambdaParams:
    """Iseki draw continued to complex theta"""
    rng = generator(spec, "iseki-complex", index)
    alpha = _uniform(rng, spec.complex_alpha)
    theta_re = _uniform(rng, spec.theta)
    beta = _uniform(rng, spec.beta_plus_theta) - theta_re
    theta = complex(theta_re, _uniform(rng, spec.im_theta))
    w = complex(_uniform(rng, spec.complex_re_w), _uniform(rng, spec.im_w))
    return LambdaParams(alpha, beta, theta, w)


def draw_tau(rng: np.random.Generator, spec: SampleSpec, im_range: Range = None,
             re_range: Range = None) -> UpperHalfPoint:
    im_range = im_range or spec.im_tau
    re_range = re_range or spec.re_tau
    return UpperHalfPoint(complex(_uniform(rng, re_range), _uniform(rng, im_range)))


def draw_z(rng: np.random.Generator, z_max: float) -> complex:
    """Uniform in the disk |z| <= z_max"""
    radius = z_max * math.sqrt(float(rng.uniform(0.0, 1.0)))
    angle = float(rng.uniform(0.0, 2.0 * math.pi))
    return complex(radius * math.cos(angle), radius * math.sin(angle))


def draw_point(spec: SampleSpec, family: str, *index: int, im_range: Range = None,
               z_max: float = None, re_range: Range = None) -> Tuple[complex, UpperHalfPoint]:
    """(z, tau) pair for the theta1 families"""
    rng = generator(spec, family, *index)
    tau = draw_tau(rng, spec, im_range, re_range)
    return draw_z(rng, spec.z_max if z_max is None else z_max), tau
