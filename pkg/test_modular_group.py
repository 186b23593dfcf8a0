#!/usr/bin/env python3
"""
Tests for modular matrices, the Mobius action and the (v, H, h, k) frame
"""
import sys
import cmath

import pytest
from hypothesis import given, strategies as st

from functions.errors import DomainError
from functions.modular_group import (
    HHkFrame,
    ModularMatrix,
    UpperHalfPoint,
    automorphy_denominator,
    complete_bottom_row,
    decompose,
    frame_image,
    frame_tau,
    mobius_apply,
    modular_matrix,
    normalize,
    sweep_matrices,
    v_of,
)

S = ModularMatrix(0, -1, 1, 0)
T = ModularMatrix(1, 1, 0, 1)
ST = ModularMatrix(1, 0, 1, 1)
I = UpperHalfPoint(1j)

small_matrices = st.sampled_from(list(sweep_matrices(4, 4)) + [T, ModularMatrix(1, -2, 0, 1)])
points = st.builds(
    lambda x, y: UpperHalfPoint(complex(x, y)),
    st.floats(min_value=-1.0, max_value=1.0),
    st.floats(min_value=0.5, max_value=2.0),
)


def close(a: complex, b: complex, tol: float = 1e-12) -> bool:
    return abs(a - b) <= tol * (1.0 + abs(a))


def test_determinant_is_enforced():
    with pytest.raises(DomainError):
        ModularMatrix(1, 2, 3, 4)
    assert ModularMatrix(2, 1, 3, 2).c == 3


def test_normalize_examples():
    assert normalize(S) == S
    assert normalize(ModularMatrix(0, 1, -1, 0)) == S
    assert normalize(ModularMatrix(-1, 0, 0, -1)) == ModularMatrix(1, 0, 0, 1)
    assert modular_matrix(0, 1, -1, 0) == S


signed_products = st.builds(
    lambda A, B, flip: -(A @ B) if flip else A @ B, small_matrices, small_matrices, st.booleans()
)


@given(signed_products)
def test_normalize_is_idempotent_and_sign_blind(A):
    N = normalize(A)
    assert N.is_normalized
    assert normalize(N) == N
    assert normalize(-A) == N
    assert N in (A, -A)


def test_render():
    assert S.render() == "(0,-1;1,0)"
    assert repr(S) == "ModularMatrix(0,-1;1,0)"


def test_upper_half_point_rejects_real_axis():
    with pytest.raises(DomainError):
        UpperHalfPoint(1.0)
    with pytest.raises(DomainError):
        UpperHalfPoint(-1j)


def test_mobius_examples():
    assert close(mobius_apply(S, I).tau, 1j)
    assert close(mobius_apply(T, I).tau, 1 + 1j)
    assert close(mobius_apply(ST, I).tau, (1 + 1j) / 2)
    assert automorphy_denominator(ST, I) == 1 + 1j


@given(small_matrices, small_matrices, points)
def test_mobius_respects_composition(A, B, tau):
    assert close(mobius_apply(A, mobius_apply(B, tau)).tau, mobius_apply(A @ B, tau).tau)


@given(small_matrices, points)
def test_mobius_sign_invariance(A, tau):
    assert close(mobius_apply(-A, tau).tau, mobius_apply(A, tau).tau)


def test_decompose_examples():
    assert decompose(S) == HHkFrame(H=0, h=0, k=1)
    assert decompose(ST) == HHkFrame(H=1, h=-1, k=1)
    assert decompose(ModularMatrix(2, 1, 3, 2)) == HHkFrame(H=2, h=-2, k=3)
    with pytest.raises(DomainError):
        decompose(T)


def test_frame_validation():
    with pytest.raises(DomainError):
        HHkFrame(H=1, h=1, k=3)
    with pytest.raises(DomainError):
        HHkFrame(H=1, h=1, k=0)


def test_v_examples():
    assert v_of(S, I) == 1
    assert close(v_of(ST, I), 1 - 1j)
    with pytest.raises(DomainError):
        v_of(T, I)


@given(small_matrices.filter(lambda A: A.c > 0), points)
def test_frame_round_trip(A, tau):
    frame = decompose(A)
    v = v_of(A, tau)
    assert v.real > 0
    assert close(frame_tau(frame, v), tau.tau)
    assert close(frame_image(frame, v), mobius_apply(A, tau).tau)


def test_complete_bottom_row():
    assert complete_bottom_row(1, 1) == ModularMatrix(0, -1, 1, 1)
    assert complete_bottom_row(2, 3) == ModularMatrix(1, 1, 2, 3)
    assert complete_bottom_row(5, 3) == ModularMatrix(2, 1, 5, 3)
    assert complete_bottom_row(2, -1) == ModularMatrix(1, -1, 2, -1)
    with pytest.raises(DomainError):
        complete_bottom_row(4, 2)
    with pytest.raises(DomainError):
        complete_bottom_row(0, 1)


def test_sweep_matrices():
    matrices = list(sweep_matrices(10, 10))
    assert len(matrices) == 127
    for A in matrices:
        assert A.is_normalized and A.c > 0
        assert -A.c < 2 * A.d <= A.c
        assert abs(A.a) <= 10


def test_principal_branch_of_v():
    for A in sweep_matrices(6, 6):
        assert cmath.sqrt(v_of(A, I)).real > 0


def main():
    """Run the modular group tests"""
    return pytest.main([__file__, "-q"])


if __name__ == "__main__":
    sys.exit(main())
