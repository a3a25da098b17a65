import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from majorana_hybrid import core, gates
from majorana_hybrid.core import (
    MajoranaProgram,
    MajoranaStep,
    apply_program,
    braid,
    braid_step,
    braid_word_program,
    build_fock,
    compose,
    is_unitary,
    majorana_matrix,
    majorana_product,
    manybody_rotation,
    pair_rotation,
    run_program,
    total_parity,
)
from majorana_hybrid.errors import (
    CapExceeded,
    EqualIndices,
    IndexOutOfRange,
    OddCardinality,
    OddMajoranaCount,
)
from helpers import max_err, zstring_exp

LOWER = np.array([[0, 1], [0, 0]], dtype=complex)  # |1> -> |0>


def jw_annihilator(num_modes, a):
    """Kronecker-product oracle: Z strings on the modes below ``a``."""
    ops = [gates.I2] * (num_modes - a) + [LOWER] + [gates.Z] * (a - 1)
    return gates.kron(*ops)


def jw_majorana(num_modes, alpha):
    c = jw_annihilator(num_modes, (alpha + 1) // 2)
    return c + c.conj().T if alpha % 2 else 1j * (c.conj().T - c)


# ---------------------------------------------------------------- space

@pytest.mark.parametrize("m, dim", [(2, 2), (4, 4), (8, 16)])
def test_fock_dimension(m, dim):
    s = build_fock(m)
    assert s.dimension == dim and s.num_modes == m // 2


@pytest.mark.parametrize("m", [0, 3, 7])
def test_odd_or_tiny_count_rejected(m):
    with pytest.raises(OddMajoranaCount):
        build_fock(m)


def test_cap_is_enforced_and_configurable(monkeypatch):
    with pytest.raises(CapExceeded):
        build_fock(26)
    monkeypatch.setenv("MAJORANA_CAP", "6")
    with pytest.raises(CapExceeded):
        build_fock(8)
    assert build_fock(6).dimension == 8


# ---------------------------------------------------------------- Majoranas

def test_single_mode_majoranas():
    s = build_fock(2)
    assert max_err(majorana_matrix(s, 1), [[0, 1], [1, 0]]) == 0
    assert max_err(majorana_matrix(s, 2), [[0, -1j], [1j, 0]]) == 0


@pytest.mark.parametrize("m", [2, 4, 6, 8])
def test_majoranas_match_kronecker_oracle(m):
    s = build_fock(m)
    for a in range(1, m + 1):
        assert max_err(majorana_matrix(s, a), jw_majorana(m // 2, a)) == 0


@given(st.integers(1, 4), st.data())
def test_anticommutation(modes, data):
    s = build_fock(2 * modes)
    a = data.draw(st.integers(1, 2 * modes))
    b = data.draw(st.integers(1, 2 * modes))
    ga, gb = majorana_matrix(s, a), majorana_matrix(s, b)
    expect = 2 * np.eye(s.dimension) if a == b else 0
    assert max_err(ga @ gb + gb @ ga, expect) <= 1e-12
    assert max_err(ga, ga.conj().T) == 0


def test_index_range_checked():
    s = build_fock(4)
    with pytest.raises(IndexOutOfRange):
        majorana_matrix(s, 5)
    with pytest.raises(IndexOutOfRange):
        majorana_matrix(s, 0)
    with pytest.raises(IndexOutOfRange):
        braid(s, 4)


def test_product_is_descending_order():
    s = build_fock(6)
    g = [None] + [majorana_matrix(s, a) for a in range(1, 7)]
    assert max_err(majorana_product(s, [1, 3, 6]), g[6] @ g[3] @ g[1]) == 0


# ---------------------------------------------------------------- rotations

def test_pair_rotation_on_first_mode():
    s = build_fock(4)
    th = 0.37
    expect = np.diag(np.exp(1j * th * np.array([-1, 1, -1, 1])))
    assert max_err(pair_rotation(s, 1, 2, th), expect) <= 1e-15


def test_pair_rotation_mixing_modes():
    s = build_fock(4)
    th = 0.61
    U = pair_rotation(s, 2, 3, th)
    assert np.allclose(np.diag(U), math.cos(th))
    assert np.allclose(np.diag(U[::-1]), -1j * math.sin(th))


def test_pair_rotation_is_cos_plus_sin_product():
    s = build_fock(6)
    th = -1.1
    expect = math.cos(th) * np.eye(8) + math.sin(th) * majorana_matrix(s, 5) @ majorana_matrix(s, 2)
    assert max_err(pair_rotation(s, 2, 5, th), expect) <= 1e-15
    # reversed order flips the product
    expect_rev = math.cos(th) * np.eye(8) + math.sin(th) * majorana_matrix(s, 2) @ majorana_matrix(s, 5)
    assert max_err(pair_rotation(s, 5, 2, th), expect_rev) <= 1e-15


def test_pair_rotation_rejects_equal_indices():
    with pytest.raises(EqualIndices):
        pair_rotation(build_fock(4), 2, 2, 0.1)


def test_braid_one_on_two_modes():
    s = build_fock(4)
    expect = np.exp(-1j * np.pi / 4) * np.diag([1, 1j, 1, 1j])
    assert max_err(braid(s, 1), expect) <= 1e-15


@pytest.mark.parametrize("alpha", [1, 2, 3, 4, 5])
def test_braid_powers(alpha):
    s = build_fock(6)
    B = braid(s, alpha)
    Binv = pair_rotation(s, alpha, alpha + 1, -math.pi / 4)
    B4 = np.linalg.matrix_power(B, 4)
    # exp(pi/4 M)^4 = exp(pi M) = -1 because M^2 = -1; the identity holds up to that sign
    assert max_err(B4, -np.eye(8)) <= 1e-12
    assert max_err(np.linalg.matrix_power(B, 8), np.eye(8)) <= 1e-12
    assert max_err(B @ Binv, np.eye(8)) <= 1e-12
    assert max_err(np.linalg.matrix_power(B, 3), -Binv) <= 1e-12


def test_manybody_rotations_are_zstring_exponentials():
    s = build_fock(8)
    th = 0.29
    assert max_err(manybody_rotation(s, (1, 2, 3, 4), th), zstring_exp("IIZZ", th)) <= 1e-12
    assert max_err(manybody_rotation(s, range(1, 9), th), zstring_exp("ZZZZ", th)) <= 1e-12


def test_manybody_rotation_formula_with_phase():
    s = build_fock(8)
    th = 0.8
    idx = (1, 3, 4, 8, 2, 6)
    g = {a: majorana_matrix(s, a) for a in idx}
    prod = np.eye(16, dtype=complex)
    for a in sorted(idx, reverse=True):
        prod = prod @ g[a]
    expect = math.cos(th) * np.eye(16) + (1j ** 2) * prod * math.sin(th)
    assert max_err(manybody_rotation(s, idx, th), expect) <= 1e-12


def test_odd_cardinality_rejected():
    with pytest.raises(OddCardinality):
        manybody_rotation(build_fock(6), (1, 2, 3), 0.2)
    with pytest.raises(OddCardinality):
        MajoranaStep.of((1,), 0.2)


def test_zero_angle_is_identity():
    s = build_fock(6)
    assert max_err(manybody_rotation(s, (1, 2, 5, 6), 0.0), np.eye(8)) == 0
    assert max_err(pair_rotation(s, 1, 4, 0.0), np.eye(8)) == 0


@st.composite
def even_sets(draw, m):
    size = 2 * draw(st.integers(1, m // 2))
    return tuple(sorted(draw(st.lists(st.integers(1, m), min_size=size, max_size=size, unique=True))))


@given(st.sampled_from([4, 6, 8]).flatmap(lambda m: st.tuples(st.just(m), even_sets(m))),
       st.floats(-4, 4, allow_nan=False))
def test_rotations_unitary_and_parity_preserving(case, theta):
    m, idx = case
    s = build_fock(m)
    U = manybody_rotation(s, idx, theta)
    P = total_parity(s)
    assert is_unitary(U)
    assert max_err(U @ P, P @ U) <= 1e-12


@given(st.integers(2, 4), st.data(), st.floats(-3, 3, allow_nan=False))
def test_conjugation_law(modes, data, theta):
    m = 2 * modes
    s = build_fock(m)
    a = data.draw(st.integers(1, m))
    b = data.draw(st.integers(1, m).filter(lambda x: x != a))
    U = pair_rotation(s, a, b, theta)
    ga, gb = majorana_matrix(s, a), majorana_matrix(s, b)
    lhs = U @ ga @ U.conj().T
    assert max_err(lhs, math.cos(2 * theta) * ga + math.sin(2 * theta) * gb) <= 1e-12


def test_total_parity():
    assert max_err(total_parity(build_fock(2)), np.diag([1, -1])) == 0
    P = total_parity(build_fock(4))
    assert max_err(P, np.diag([1, -1, -1, 1])) == 0
    assert max_err(P @ P, np.eye(4)) == 0
    # i gamma_2 gamma_1 is the parity of the first mode
    s = build_fock(2)
    assert max_err(1j * majorana_matrix(s, 2) @ majorana_matrix(s, 1), np.diag([1, -1])) == 0


# ---------------------------------------------------------------- programs

def test_empty_program_is_identity():
    assert max_err(run_program(build_fock(6), MajoranaProgram()), np.eye(8)) == 0


def test_single_step_program_is_braid():
    s = build_fock(4)
    prog = MajoranaProgram((MajoranaStep.of((1, 2), Fraction(1, 4)),))
    assert max_err(run_program(s, prog), braid(s, 1)) <= 1e-15


def test_steps_apply_in_order():
    s = build_fock(6)
    prog = MajoranaProgram((MajoranaStep.of((1, 2), 0.3), MajoranaStep.of((2, 3), 0.5)))
    expect = pair_rotation(s, 2, 3, 0.5) @ pair_rotation(s, 1, 2, 0.3)
    assert max_err(run_program(s, prog), expect) <= 1e-15


def test_word_program_is_operator_product():
    s = build_fock(6)
    word = [5, -3, 1, 2]
    B = {a: braid(s, a) for a in range(1, 6)}
    Binv = {a: B[a].conj().T for a in B}
    expect = B[5] @ Binv[3] @ B[1] @ B[2]
    prog = braid_word_program(word, Fraction(1, 4))
    assert max_err(run_program(s, prog), np.exp(1j * np.pi / 4) * expect) <= 1e-12
    assert prog.phase == Fraction(1, 4)


def test_exact_angles_and_phases():
    step = MajoranaStep.of((1, 2), Fraction(-1, 8))
    assert step.exact == Fraction(-1, 8) and step.angle == -math.pi / 8
    assert MajoranaStep.of((2, 1), 0.5).indices == (1, 2)
    assert MajoranaStep.of((1, 2), 0.5).exact is None
    p = compose(MajoranaProgram.with_phase([], Fraction(1, 3)), MajoranaProgram.with_phase([], Fraction(1, 6)))
    assert p.phase == Fraction(1, 2) and abs(p.prefactor - 1j) < 1e-15
    q = compose(p, MajoranaProgram.with_phase([], 0.25))
    assert q.phase is None and abs(q.prefactor - np.exp(1j * (np.pi / 2 + 0.25))) < 1e-15


def test_braid_step_power_validated():
    with pytest.raises(ValueError):
        braid_step(1, 2)


@given(st.lists(st.tuples(st.sampled_from([(1, 2), (2, 3), (1, 2, 3, 6), (4, 5)]),
                          st.floats(-3, 3, allow_nan=False)), max_size=6),
       st.floats(-3, 3, allow_nan=False))
def test_program_inverse_and_state_application(spec, phase):
    s = build_fock(6)
    prog = MajoranaProgram.with_phase([MajoranaStep.of(i, a) for i, a in spec], phase)
    U = run_program(s, prog)
    assert max_err(run_program(s, prog.then(prog.inverse())), np.eye(8)) <= 1e-12
    rng = np.random.default_rng(len(spec))
    psi = rng.normal(size=8) + 1j * rng.normal(size=8)
    assert max_err(apply_program(s, prog, psi), U @ psi) <= 1e-12
    block = rng.normal(size=(8, 3)) + 0j
    assert max_err(apply_program(s, prog, block), U @ block) <= 1e-12


# ---------------------------------------------------------------- braid relations

@pytest.mark.parametrize("m", [4, 6, 8, 10])
def test_artin_relations(m):
    s = build_fock(m)
    B = {a: braid(s, a) for a in range(1, m)}
    for a in range(1, m):
        for b in range(1, m):
            if abs(a - b) >= 2:
                assert max_err(B[a] @ B[b], B[b] @ B[a]) <= 1e-12
        if a + 1 < m:
            assert max_err(B[a] @ B[a + 1] @ B[a], B[a + 1] @ B[a] @ B[a + 1]) <= 1e-12


def window(s, start, width, theta=math.pi / 4):
    return manybody_rotation(s, range(start, start + width), theta)


@pytest.mark.parametrize("width, m", [(4, 10), (6, 12)])
def test_generalized_braid_relations(width, m):
    s = build_fock(m)
    n_half = width // 2
    last = m - width + 1
    W = {a: window(s, a, width) for a in range(1, last + 1)}
    for a in range(1, last + 1):
        M = (1j ** (n_half - 1)) * majorana_product(s, range(a, a + width))
        assert max_err(M @ M, -np.eye(s.dimension)) <= 1e-12
        for b in range(a + 1, last + 1):
            d = b - a
            if d % 2 == 1 and d < width:
                assert max_err(W[a] @ W[b] @ W[a], W[b] @ W[a] @ W[b]) <= 1e-12
            else:
                assert max_err(W[a] @ W[b], W[b] @ W[a]) <= 1e-12


def test_is_unitary_detects_failure():
    assert is_unitary(np.eye(3))
    assert not is_unitary(np.eye(3) * 1.01)


def test_cap_default():
    assert core.DEFAULT_MAJORANA_CAP == 24
