"""Even-parity encoding of N logical qubits into N+1 fermion modes.

Logical bits ``(n_N ... n_1)`` map to physical ``(n_N ... n_1 n_0)`` with the
parity bit ``n_0 = n_1 xor ... xor n_N`` stored on physical qubit 1, so logical
qubit ``k`` lives on physical qubit ``k + 1``. A Z on the parity qubit acts on
the code space as the product of all logical Zs, which is why two different
Majorana index sets can induce the same logical gate.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from .core import FockSpace, build_fock
from .errors import DimensionMismatch, EmptySupport, IndexOutOfRange, NotCodeSpacePreserving

LEAK_ATOL = 1e-10
PHASE_EPS = 1e-9


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


@dataclass(frozen=True)
class Encoding:
    num_logical: int

    def __post_init__(self):
        if self.num_logical < 1:
            raise ValueError(f"need at least one logical qubit, got {self.num_logical}")

    @property
    def num_physical(self) -> int:
        return self.num_logical + 1

    @property
    def num_majoranas(self) -> int:
        return 2 * self.num_physical

    @property
    def logical_dimension(self) -> int:
        return 1 << self.num_logical

    @cached_property
    def space(self) -> FockSpace:
        return build_fock(self.num_majoranas)

    @cached_property
    def physical_indices(self) -> np.ndarray:
        """Physical basis index of every logical basis state, in logical order."""
        idx = np.array([encode_state(self, j) for j in range(self.logical_dimension)], dtype=np.int64)
        idx.setflags(write=False)
        return idx

    @cached_property
    def isometry(self) -> np.ndarray:
        V = np.zeros((1 << self.num_physical, self.logical_dimension))
        V[self.physical_indices, np.arange(self.logical_dimension)] = 1.0
        V.setflags(write=False)
        return V


def encoding_for(num_majoranas: int) -> Encoding:
    if num_majoranas < 4 or num_majoranas % 2:
        raise ValueError(f"an encoding needs an even Majorana count >= 4, got {num_majoranas}")
    return Encoding(num_majoranas // 2 - 1)


def encode_state(enc: Encoding, logical_index: int) -> int:
    if not 0 <= logical_index < enc.logical_dimension:
        raise IndexOutOfRange(f"logical index {logical_index} outside [0, {enc.logical_dimension})")
    return (logical_index << 1) | _parity(logical_index)


def decode_state(enc: Encoding, physical_index: int) -> int:
    """Inverse of :func:`encode_state`; odd-parity physical states are rejected."""
    if not 0 <= physical_index < (1 << enc.num_physical):
        raise IndexOutOfRange(f"physical index {physical_index} outside the Fock space")
    if _parity(physical_index):
        raise IndexOutOfRange(f"physical index {physical_index} is not in the even-parity code space")
    return physical_index >> 1


def embed_state(enc: Encoding, logical_state: np.ndarray) -> np.ndarray:
    psi = np.asarray(logical_state, dtype=complex)
    if psi.shape[0] != enc.logical_dimension:
        raise DimensionMismatch(f"expected {enc.logical_dimension} amplitudes, got {psi.shape[0]}")
    out = np.zeros((1 << enc.num_physical,) + psi.shape[1:], dtype=complex)
    out[enc.physical_indices] = psi
    return out


def restrict_to_logical(enc: Encoding, U: np.ndarray) -> np.ndarray:
    """``V^dag U V`` for the encoding isometry ``V``.

    Raises NotCodeSpacePreserving when ``U`` leaks amplitude out of the code space.
    """
    U = np.asarray(U)
    d = 1 << enc.num_physical
    if U.shape != (d, d):
        raise DimensionMismatch(f"expected a {d}x{d} physical operator, got {U.shape}")
    idx = enc.physical_indices
    cols = U[:, idx]
    outside = np.ones(d, dtype=bool)
    outside[idx] = False
    leak = np.max(np.abs(cols[outside]), initial=0.0)
    if leak > LEAK_ATOL:
        raise NotCodeSpacePreserving(f"operator maps code space outside itself (leak {leak:.3e})")
    return cols[idx]


def equal_up_to_phase(A: np.ndarray, B: np.ndarray, eps: float = PHASE_EPS):
    """``(True, phase)`` when ``B ~= phase * A`` by normalized trace fidelity, else ``(False, None)``."""
    A = np.asarray(A)
    B = np.asarray(B)
    if A.shape != B.shape:
        raise DimensionMismatch(f"shapes differ: {A.shape} vs {B.shape}")
    d = A.shape[0]
    overlap = np.vdot(A, B)  # tr(A^dag B)
    fid = abs(overlap) / d
    if fid >= 1 - eps:
        return True, complex(overlap / abs(overlap))
    return False, None


def trace_fidelity(A: np.ndarray, B: np.ndarray) -> float:
    A = np.asarray(A)
    B = np.asarray(B)
    if A.shape != B.shape:
        raise DimensionMismatch(f"shapes differ: {A.shape} vs {B.shape}")
    return float(abs(np.vdot(A, B)) / A.shape[0])


def _check_support(labels: Iterable[int], upper: int, what: str) -> frozenset:
    s = frozenset(int(q) for q in labels)
    bad = [q for q in s if not 1 <= q <= upper]
    if bad:
        raise IndexOutOfRange(f"{what} qubit labels {sorted(bad)} outside [1, {upper}]")
    return s


def physical_to_logical_zsupport(enc: Encoding, physical_support: Iterable[int]) -> frozenset:
    s = _check_support(physical_support, enc.num_physical, "physical")
    shifted = frozenset(q - 1 for q in s if q != 1)
    if 1 in s:
        return shifted.symmetric_difference(range(1, enc.num_logical + 1))
    return shifted


def logical_to_physical_zsupports(enc: Encoding, logical_support: Iterable[int]) -> tuple:
    """Both physical supports inducing the logical Z-string: (without parity qubit, with it)."""
    s = _check_support(logical_support, enc.num_logical, "logical")
    plain = frozenset(k + 1 for k in s)
    flipped = frozenset([1]) | frozenset(k + 1 for k in range(1, enc.num_logical + 1) if k not in s)
    return plain, flipped


def majoranas_of_support(physical_support: Iterable[int]) -> tuple:
    return tuple(sorted(a for q in physical_support for a in (2 * q - 1, 2 * q)))


def zstring_to_majorana_indices(enc: Encoding, logical_support: Iterable[int]) -> tuple:
    """Cheapest Majorana index set whose rotation is ``exp(-i theta Z_S)`` on the code space.

    Prefers the smaller physical support; on a tie, the one avoiding the parity qubit.
    """
    s = frozenset(logical_support)
    if not s:
        raise EmptySupport("logical Z-support must be nonempty")
    plain, flipped = logical_to_physical_zsupports(enc, s)
    chosen = flipped if len(flipped) < len(plain) else plain
    return majoranas_of_support(chosen)


def zstring_diagonal(num_qubits: int, support: Iterable[int]) -> np.ndarray:
    """Diagonal of the Z-string on ``support`` (qubit ``k`` is bit ``k - 1``)."""
    j = np.arange(1 << num_qubits)
    bits = np.zeros_like(j)
    for k in support:
        bits ^= (j >> (k - 1)) & 1
    return 1.0 - 2.0 * bits


def zstring_exponential(num_qubits: int, support: Iterable[int], theta: float) -> np.ndarray:
    """``exp(-i theta Z_S)``; the empty support gives the scalar ``exp(-i theta)``."""
    return np.diag(np.exp(-1j * theta * zstring_diagonal(num_qubits, support)))


def ancilla_embed_check(enc_small: Encoding, enc_big: Encoding, U_small: np.ndarray,
                        U_big: np.ndarray, eps: float = PHASE_EPS) -> bool:
    """True when ``U_big`` acts as ``U_small`` (up to phase) while its top logical qubit is 0."""
    if enc_big.num_logical != enc_small.num_logical + 1:
        raise DimensionMismatch("the larger encoding must have exactly one more logical qubit")
    d = enc_small.logical_dimension
    U_small = np.asarray(U_small)
    U_big = np.asarray(U_big)
    if U_small.shape != (d, d) or U_big.shape != (2 * d, 2 * d):
        raise DimensionMismatch(f"expected {d}x{d} and {2 * d}x{2 * d}, got {U_small.shape} and {U_big.shape}")
    if np.max(np.abs(U_big[d:, :d]), initial=0.0) > LEAK_ATOL:
        return False
    return equal_up_to_phase(U_small, U_big[:d, :d], eps)[0]
