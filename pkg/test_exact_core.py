#!/usr/bin/env python3
"""
Tests for the exact arithmetic kernels
Jacobi symbols, Bernoulli polynomials, Dedekind sums and eta characters
"""
import sys
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from functions.errors import DomainError
from functions.exact_core import (
    ExactPhase,
    bernoulli_b1,
    bernoulli_b2,
    dedekind_sum,
    eta_character_dedekind,
    eta_character_intro_form,
    eta_character_rademacher,
    gcd,
    jacobi_symbol,
    render_fraction,
    sawtooth,
    theta1_multiplier,
)
from functions.modular_group import ModularMatrix, complete_bottom_row

S = ModularMatrix(0, -1, 1, 0)
ST = ModularMatrix(1, 0, 1, 1)

odd_moduli = st.integers(min_value=1, max_value=401).filter(lambda n: n % 2 == 1)
fractions_ = st.fractions(min_value=-5, max_value=5, max_denominator=60)


def coprime_pairs(k_max=60):
    return st.integers(min_value=1, max_value=k_max).flatmap(
        lambda k: st.tuples(st.integers(min_value=-3 * k, max_value=3 * k), st.just(k))
    ).filter(lambda hk: gcd(*hk) == 1)


def test_gcd():
    assert gcd(12, 18) == 6
    assert gcd(0, 7) == 7
    assert gcd(-4, 6) == 2


def test_jacobi_examples():
    assert jacobi_symbol(2, 3) == -1
    assert jacobi_symbol(1, 1) == 1
    assert jacobi_symbol(0, 1) == 1
    assert jacobi_symbol(3, 9) == 0
    assert jacobi_symbol(2, 7) == 1
    assert jacobi_symbol(1001, 9907) == -1
    assert jacobi_symbol(-1, 3) == -1


@pytest.mark.parametrize("n", [0, -3, 4, 10])
def test_jacobi_rejects_bad_modulus(n):
    with pytest.raises(DomainError):
        jacobi_symbol(1, n)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 101])
def test_jacobi_matches_euler_criterion(p):
    for a in range(p):
        expected = pow(a, (p - 1) // 2, p)
        expected = -1 if expected == p - 1 else expected
        assert jacobi_symbol(a, p) == expected


@given(st.integers(-500, 500), st.integers(-500, 500), odd_moduli)
def test_jacobi_multiplicative_in_numerator(a, b, n):
    assert jacobi_symbol(a * b, n) == jacobi_symbol(a, n) * jacobi_symbol(b, n)


@given(st.integers(-500, 500), odd_moduli, odd_moduli)
def test_jacobi_multiplicative_in_modulus(a, m, n):
    assert jacobi_symbol(a, m * n) == jacobi_symbol(a, m) * jacobi_symbol(a, n)


def test_bernoulli_examples():
    assert bernoulli_b1(Fraction(1, 2)) == 0
    assert bernoulli_b2(Fraction(1, 2)) == Fraction(-1, 12)
    assert bernoulli_b2(Fraction(1, 4)) == Fraction(-1, 48)
    assert bernoulli_b2(0) == Fraction(1, 6)
    assert isinstance(bernoulli_b2(0.25), float)


@given(fractions_)
def test_bernoulli_reflection(x):
    assert bernoulli_b1(1 - x) == -bernoulli_b1(x)
    assert bernoulli_b2(1 - x) == bernoulli_b2(x)


def test_sawtooth():
    assert sawtooth(Fraction(7, 3)) == Fraction(-1, 6)
    assert sawtooth(Fraction(-1, 4)) == Fraction(1, 4)
    assert sawtooth(2) == 0


@given(fractions_)
def test_sawtooth_is_odd_and_periodic(x):
    assert sawtooth(-x) == -sawtooth(x)
    assert sawtooth(x + 1) == sawtooth(x)


def test_dedekind_sum_examples():
    assert dedekind_sum(0, 1) == 0
    assert dedekind_sum(1, 3) == Fraction(1, 18)
    assert dedekind_sum(2, 3) == Fraction(-1, 18)
    assert dedekind_sum(3, 5) == 0


def test_dedekind_sum_rejects_bad_input():
    with pytest.raises(DomainError):
        dedekind_sum(2, 4)
    with pytest.raises(DomainError):
        dedekind_sum(1, 0)


@given(coprime_pairs())
def test_dedekind_sum_matches_definition(hk):
    h, k = hk
    brute = sum((Fraction(r, k) * sawtooth(Fraction(h * r, k)) for r in range(1, k)), Fraction(0))
    assert dedekind_sum(h, k) == brute


@given(coprime_pairs())
def test_dedekind_sum_odd_and_periodic(hk):
    h, k = hk
    assert dedekind_sum(-h, k) == -dedekind_sum(h, k)
    assert dedekind_sum(h + k, k) == dedekind_sum(h, k)


@pytest.mark.parametrize("k", [2, 3, 7, 12, 40])
def test_dedekind_sum_of_one(k):
    assert dedekind_sum(1, k) == Fraction((k - 1) * (k - 2), 12 * k)


def test_exact_phase_arithmetic():
    assert ExactPhase(Fraction(5, 2)).t == Fraction(1, 2)
    assert ExactPhase.power_of_i(-1).t == Fraction(3, 2)
    assert ExactPhase(Fraction(1, 2)).to_complex() == 1j
    assert ExactPhase(1).to_complex() == -1
    assert (ExactPhase(1) * ExactPhase(1)).is_one
    assert (ExactPhase(Fraction(1, 12)) ** 24).is_one
    assert ExactPhase(Fraction(1, 3)).conjugate() == ExactPhase(Fraction(5, 3))
    with pytest.raises(DomainError):
        ExactPhase.sign(0)


def test_eta_character_examples():
    assert eta_character_dedekind(S).is_one
    assert eta_character_dedekind(ST).t == Fraction(1, 6)
    assert eta_character_rademacher(S).is_one
    assert eta_character_rademacher(ST).t == Fraction(1, 6)


def test_case_formula_d_odd_branch():
    # even c: the Jacobi symbol is (c/|d|) and there is no i-power
    A = ModularMatrix(1, 1, 2, 3)
    assert eta_character_dedekind(A).t == Fraction(1, 6)
    assert eta_character_rademacher(A).t == Fraction(1, 6)


def test_theta1_multiplier_examples():
    assert theta1_multiplier(S).t == Fraction(3, 2)
    assert theta1_multiplier(S).to_complex() == -1j
    assert theta1_multiplier(ST).is_one


def test_eta_character_needs_positive_c():
    with pytest.raises(DomainError):
        eta_character_dedekind(ModularMatrix(1, 1, 0, 1))


def test_character_forms_agree_on_sweep():
    for c in range(1, 25):
        for d in range(-c, c + 1):
            if gcd(c, d) != 1:
                continue
            A = complete_bottom_row(c, d)
            eps = eta_character_dedekind(A)
            assert eta_character_rademacher(A) == eps, A
            assert eta_character_intro_form(A) == eps, A
            assert (eps ** 24).is_one
            assert (theta1_multiplier(A) ** 8).is_one


def test_render_fraction():
    assert render_fraction(Fraction(1, 18)) == "1/18"
    assert render_fraction(Fraction(-4, 2)) == "-2"


def main():
    """Run the exact-core tests"""
    return pytest.main([__file__, "-q"])


if __name__ == "__main__":
    sys.exit(main())
