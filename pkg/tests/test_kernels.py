import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from majorana_hybrid import kernels
from majorana_hybrid.kernels import ZETA_POWERS

coeffs = st.integers(-6, 6)


def ring_batch(batch, rows, cols):
    return arrays(np.int64, (batch, rows, cols, 4), elements=coeffs)


def value(A, k):
    return kernels.ring_to_complex(A, k)


@st.composite
def index_sets(draw, max_modes=5):
    modes = draw(st.integers(1, max_modes))
    m = 2 * modes
    size = draw(st.integers(1, m))
    idx = sorted(draw(st.lists(st.integers(1, m), min_size=size, max_size=size, unique=True)))
    return modes, np.array(idx, dtype=np.int64)


@given(index_sets())
def test_monomial_action_backends_agree(case):
    modes, idx = case
    d1, p1 = kernels.monomial_action_nb(modes, idx)
    d2, p2 = kernels.monomial_action_np(modes, idx)
    assert np.array_equal(d1, d2) and np.array_equal(p1, p2)


@given(index_sets(4), st.floats(-3, 3), st.integers(1, 3))
def test_apply_monomial_left_backends_agree(case, theta, cols):
    modes, idx = case
    dest, ipow = kernels.monomial_action_np(modes, idx)
    rng = np.random.default_rng(abs(hash((theta, cols))) % 2**32)
    U = rng.normal(size=(dest.size, cols)) + 1j * rng.normal(size=(dest.size, cols))
    a = kernels.apply_monomial_left_nb(U, dest, ipow, np.cos(theta), np.sin(theta))
    b = kernels.apply_monomial_left_np(U, dest, ipow, np.cos(theta), np.sin(theta))
    assert np.allclose(a, b, atol=1e-13)


def test_monomial_is_a_signed_permutation():
    dest, ipow = kernels.monomial_action(3, np.array([2, 5], dtype=np.int64))
    assert sorted(dest.tolist()) == list(range(8))
    assert set(ipow.tolist()) <= {0, 1, 2, 3}


def test_zeta_rotation_tables_match_complex_multiplication():
    a = np.array([3, -1, 2, 5])
    z = a @ ZETA_POWERS
    for r in range(8):
        rotated = kernels.ROT_SIGN[r] * a[kernels.ROT_SRC[r]]
        assert np.isclose(rotated @ ZETA_POWERS, z * np.exp(1j * np.pi / 4 * r))


@given(ring_batch(3, 2, 2), arrays(np.int64, (3,), elements=st.integers(0, 5)))
def test_ring_reduce_preserves_value_and_backends_agree(A, k):
    A2, k2 = kernels.ring_reduce_np(A, k)
    A3, k3 = kernels.ring_reduce_nb(A, k)
    assert np.array_equal(A2, A3) and np.array_equal(k2, k3)
    assert np.allclose(value(A2, k2), value(A, k))
    assert np.all(k2 <= k)


def test_ring_reduce_divides_sqrt2_powers():
    # 2 = sqrt2^2, so 2*zeta^0 at k=2 reduces to 1 at k=0
    A = np.zeros((1, 1, 1, 4), dtype=np.int64)
    A[0, 0, 0, 0] = 2
    out, k = kernels.ring_reduce(A, np.array([2]))
    assert k[0] == 0 and out[0, 0, 0].tolist() == [1, 0, 0, 0]
    # zeta - zeta^3 equals sqrt2
    A[0, 0, 0] = [0, 1, 0, -1]
    out, k = kernels.ring_reduce(A, np.array([1]))
    assert k[0] == 0 and out[0, 0, 0].tolist() == [1, 0, 0, 0]


@given(ring_batch(1, 3, 3), ring_batch(1, 3, 3))
def test_ring_matmul_matches_complex_product(A, B):
    C, kc = kernels.ring_matmul(A[0], 1, B[0], 2)
    expect = value(A[0], 1) @ value(B[0], 2)
    assert np.allclose(value(C, kc), expect, atol=1e-9)
    assert np.array_equal(kernels.ring_matmul_nb(A[0], B[0]), kernels.ring_matmul_np(A[0], B[0]))


@given(ring_batch(4, 2, 3), st.integers(0, 7))
def test_ring_canonical_is_phase_invariant(A, r):
    rotated = kernels.ring_rotate_np(A, np.full(A.shape[0], r))
    c1, _ = kernels.ring_canonical_np(A)
    c2, _ = kernels.ring_canonical_np(rotated)
    c3, _ = kernels.ring_canonical_nb(rotated)
    assert np.array_equal(c1, c2) and np.array_equal(c2, c3)


@given(ring_batch(2, 8, 2), st.sampled_from([1, -1]))
def test_ring_monomial_step_matches_float_braid(A, sign):
    # the pair monomial gamma_3 gamma_2 on three modes
    dest, ipow = kernels.monomial_action_np(3, np.array([2, 3], dtype=np.int64))
    k = np.array([0, 1], dtype=np.int64)
    out_np, k_np = kernels.ring_monomial_step_np(A, k, dest, ipow, sign)
    out_nb, k_nb = kernels.ring_monomial_step_nb(A, k, dest, ipow, sign)
    assert np.array_equal(out_np, out_nb) and np.array_equal(k_np, k_nb)
    P = np.zeros((8, 8), dtype=complex)
    P[dest, np.arange(8)] = 1j ** ipow
    B = (np.eye(8) + sign * P) / np.sqrt(2)
    for b in range(2):
        assert np.allclose(value(out_np[b], k_np[b]), B @ value(A[b], k[b]), atol=1e-9)


def test_float_keys_quotient_phase():
    rng = np.random.default_rng(3)
    U = rng.normal(size=(5, 3, 3)) + 1j * rng.normal(size=(5, 3, 3))
    keys = kernels.float_keys(U, projective=True)
    keys_rot = kernels.float_keys(U * np.exp(1j * 0.77), projective=True)
    assert keys == keys_rot
    assert kernels.float_keys(U, projective=False) != kernels.float_keys(U * 1j, projective=False)


def test_numpy_canonical_rejects_oversized_coefficients():
    A = np.zeros((1, 1, 1, 4), dtype=np.int64)
    A[0, 0, 0, 0] = 1 << 20
    with pytest.raises(OverflowError):
        kernels.ring_canonical_np(A)
