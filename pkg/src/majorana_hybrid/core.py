"""Fock space, Majorana operators and even-body rotation unitaries.

Conventions
-----------
Basis index ``j`` of a space with ``Q`` fermion modes stores the occupation
``n_a`` of mode ``a`` in bit ``a - 1``, so kets read ``|n_Q ... n_1>``. The
annihilator ``c_a`` carries the sign ``(-1)**(n_1 + ... + n_{a-1})`` and

    gamma_{2a-1} = c_a + c_a^dag,    gamma_{2a} = i (c_a^dag - c_a).

A rotation over the ascending index set ``(i_1, ..., i_2k)`` is

    cos(theta) + i**(k-1) * gamma_{i_2k} ... gamma_{i_1} * sin(theta),

which reduces to ``cos + gamma_b gamma_a sin`` for a pair and to the braid
``(1 + gamma_{a+1} gamma_a) / sqrt2`` at ``theta = pi/4``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import (
    CapExceeded,
    EqualIndices,
    IndexOutOfRange,
    OddCardinality,
    OddMajoranaCount,
)

DEFAULT_MAJORANA_CAP = 24
UNITARY_ATOL = 1e-12


def majorana_cap() -> int:
    """Largest allowed Majorana count; ``MAJORANA_CAP`` overrides the default of 24."""
    raw = os.environ.get("MAJORANA_CAP")
    return int(raw) if raw else DEFAULT_MAJORANA_CAP


@dataclass(frozen=True)
class FockSpace:
    num_majoranas: int

    @property
    def num_modes(self) -> int:
        return self.num_majoranas // 2

    @property
    def dimension(self) -> int:
        return 1 << self.num_modes

    def check_index(self, alpha: int) -> int:
        if not 1 <= alpha <= self.num_majoranas:
            raise IndexOutOfRange(f"Majorana index {alpha} outside [1, {self.num_majoranas}]")
        return alpha


def build_fock(num_majoranas: int) -> FockSpace:
    if num_majoranas < 2 or num_majoranas % 2:
        raise OddMajoranaCount(f"need an even Majorana count >= 2, got {num_majoranas}")
    cap = majorana_cap()
    if num_majoranas > cap:
        raise CapExceeded(f"{num_majoranas} Majoranas exceeds the cap of {cap}")
    return FockSpace(num_majoranas)


@lru_cache(maxsize=4096)
def _monomial(num_modes: int, indices: tuple) -> tuple:
    dest, ipow = kernels.monomial_action(num_modes, np.asarray(indices, dtype=np.int64))
    dest.setflags(write=False)
    ipow.setflags(write=False)
    return dest, ipow


def monomial(space: FockSpace, indices: Sequence[int], extra_ipow: int = 0):
    """``(dest, ipow)`` of ``i**extra_ipow * gamma_{i_n} ... gamma_{i_1}`` for ascending ``indices``.

    Column ``j`` of the operator holds ``i**ipow[j]`` in row ``dest[j]``.
    """
    idx = tuple(space.check_index(int(a)) for a in indices)
    if len(set(idx)) != len(idx):
        raise EqualIndices(f"repeated Majorana index in {idx}")
    if list(idx) != sorted(idx):
        raise ValueError(f"indices must be ascending, got {idx}")
    dest, ipow = _monomial(space.num_modes, idx)
    if extra_ipow % 4:
        ipow = (ipow + extra_ipow) % 4
    return dest, ipow


def monomial_matrix(space: FockSpace, dest, ipow) -> np.ndarray:
    d = space.dimension
    out = np.zeros((d, d), dtype=complex)
    out[dest, np.arange(d)] = 1j ** ipow
    return out


def majorana_matrix(space: FockSpace, alpha: int) -> np.ndarray:
    """Dense Hermitian matrix of ``gamma_alpha``."""
    return monomial_matrix(space, *monomial(space, [alpha]))


def majorana_product(space: FockSpace, indices: Sequence[int]) -> np.ndarray:
    """``gamma_{i_n} ... gamma_{i_1}`` for ascending ``indices`` (any parity)."""
    return monomial_matrix(space, *monomial(space, sorted(indices)))


def total_parity(space: FockSpace) -> np.ndarray:
    occ = np.array([bin(j).count("1") for j in range(space.dimension)])
    return np.diag(np.where(occ % 2 == 0, 1.0, -1.0)).astype(complex)


def _rotation_apply(space, indices, theta, U):
    k = len(indices) // 2
    dest, ipow = monomial(space, indices, extra_ipow=k - 1)
    return kernels.apply_monomial_left(U, dest, ipow, math.cos(theta), math.sin(theta))


def manybody_rotation(space: FockSpace, indices: Sequence[int], theta: float) -> np.ndarray:
    idx = sorted(int(a) for a in indices)
    if len(idx) < 2 or len(idx) % 2:
        raise OddCardinality(f"rotation needs an even number (>= 2) of Majoranas, got {len(idx)}")
    return _rotation_apply(space, idx, theta, np.eye(space.dimension, dtype=complex))


def pair_rotation(space: FockSpace, alpha: int, beta: int, theta: float) -> np.ndarray:
    """``cos(theta) + gamma_beta gamma_alpha sin(theta)``, in the given order."""
    space.check_index(alpha)
    space.check_index(beta)
    if alpha == beta:
        raise EqualIndices(f"pair rotation needs distinct indices, got {alpha} twice")
    # the ascending builder realises gamma_max gamma_min; swapping flips the sign of sin
    return manybody_rotation(space, (alpha, beta), theta if alpha < beta else -theta)


def braid(space: FockSpace, alpha: int) -> np.ndarray:
    if not 1 <= alpha <= space.num_majoranas - 1:
        raise IndexOutOfRange(f"braid index {alpha} outside [1, {space.num_majoranas - 1}]")
    return pair_rotation(space, alpha, alpha + 1, math.pi / 4)


def to_exact_angle(angle) -> tuple[float, Fraction | None]:
    """Split an angle spec into radians plus an optional exact multiple of pi."""
    if isinstance(angle, Fraction):
        return float(angle) * math.pi, angle
    if isinstance(angle, int) and not isinstance(angle, bool):
        return float(angle) * math.pi, Fraction(angle)
    return float(angle), None


@dataclass(frozen=True)
class MajoranaStep:
    indices: tuple
    angle: float
    exact: Fraction | None = None

    def __post_init__(self):
        idx = tuple(int(a) for a in self.indices)
        if len(idx) < 2 or len(idx) % 2:
            raise OddCardinality(f"step needs an even number (>= 2) of Majoranas, got {idx}")
        if len(set(idx)) != len(idx):
            raise EqualIndices(f"repeated Majorana index in {idx}")
        if list(idx) != sorted(idx):
            raise ValueError(f"step indices must be strictly ascending, got {idx}")
        object.__setattr__(self, "indices", idx)
        if self.exact is not None:
            object.__setattr__(self, "exact", Fraction(self.exact))
            object.__setattr__(self, "angle", float(self.exact) * math.pi)

    @classmethod
    def of(cls, indices: Iterable[int], angle) -> "MajoranaStep":
        """Build a step; ``angle`` may be a ``Fraction`` (a multiple of pi) or radians."""
        rad, exact = to_exact_angle(angle)
        return cls(tuple(sorted(int(a) for a in indices)), rad, exact)

    @property
    def body(self) -> int:
        return len(self.indices)

    def inverse(self) -> "MajoranaStep":
        return MajoranaStep(self.indices, -self.angle, None if self.exact is None else -self.exact)


@dataclass(frozen=True)
class MajoranaProgram:
    """Ordered rotation steps (first step acts first) times a unit prefactor.

    ``phase`` optionally records the prefactor exactly as ``exp(i*pi*phase)``.
    """

    steps: tuple = ()
    prefactor: complex = 1.0 + 0j
    phase: Fraction | None = None
    num_majoranas: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        if self.phase is not None:
            object.__setattr__(self, "phase", Fraction(self.phase))
            object.__setattr__(self, "prefactor", complex(np.exp(1j * math.pi * float(self.phase))))
        else:
            object.__setattr__(self, "prefactor", complex(self.prefactor))

    @classmethod
    def with_phase(cls, steps, phase, num_majoranas=None) -> "MajoranaProgram":
        """Program whose prefactor is ``exp(i*pi*phase)``; Fraction phases stay exact."""
        if isinstance(phase, (Fraction, int)):
            return cls(tuple(steps), phase=Fraction(phase), num_majoranas=num_majoranas)
        return cls(tuple(steps), prefactor=complex(np.exp(1j * phase)), num_majoranas=num_majoranas)

    def then(self, other: "MajoranaProgram") -> "MajoranaProgram":
        """``other`` applied after ``self``."""
        if self.phase is not None and other.phase is not None:
            return MajoranaProgram(self.steps + other.steps, phase=self.phase + other.phase,
                                   num_majoranas=self.num_majoranas or other.num_majoranas)
        return MajoranaProgram(self.steps + other.steps, prefactor=self.prefactor * other.prefactor,
                               num_majoranas=self.num_majoranas or other.num_majoranas)

    def inverse(self) -> "MajoranaProgram":
        steps = tuple(s.inverse() for s in reversed(self.steps))
        if self.phase is not None:
            return MajoranaProgram(steps, phase=-self.phase, num_majoranas=self.num_majoranas)
        return MajoranaProgram(steps, prefactor=self.prefactor.conjugate(), num_majoranas=self.num_majoranas)

    def max_index(self) -> int:
        return max((max(s.indices) for s in self.steps), default=0)

    def __len__(self):
        return len(self.steps)


def compose(*programs: MajoranaProgram) -> MajoranaProgram:
    """Programs applied left to right (the first argument acts first)."""
    out = MajoranaProgram(phase=Fraction(0))
    for p in programs:
        out = out.then(p)
    return out


def run_program(space: FockSpace, program: MajoranaProgram) -> np.ndarray:
    U = np.eye(space.dimension, dtype=complex)
    for step in program.steps:
        U = _rotation_apply(space, step.indices, step.angle, U)
    return program.prefactor * U


def apply_program(space: FockSpace, program: MajoranaProgram, state: np.ndarray) -> np.ndarray:
    """Act on a state vector (or a block of column vectors) without forming the unitary."""
    psi = np.asarray(state, dtype=complex)
    vec = psi.ndim == 1
    if vec:
        psi = psi[:, None]
    for step in program.steps:
        psi = _rotation_apply(space, step.indices, step.angle, psi)
    psi = program.prefactor * psi
    return psi[:, 0] if vec else psi


def braid_step(alpha: int, power: int = 1) -> MajoranaStep:
    """Step for ``B_alpha ** power`` with ``power`` in {1, -1}; higher powers repeat steps."""
    if power not in (1, -1):
        raise ValueError("braid_step takes power 1 or -1")
    return MajoranaStep.of((alpha, alpha + 1), Fraction(power, 4))


def braid_word_program(word: Sequence[int], phase=Fraction(0), num_majoranas=None) -> MajoranaProgram:
    """Program for the operator product ``B_{w_1} B_{w_2} ... B_{w_n}`` as written.

    Negative entries denote inverse braids. The rightmost factor acts first,
    so steps are emitted in reverse.
    """
    steps = tuple(braid_step(abs(a), 1 if a > 0 else -1) for a in reversed(word))
    return MajoranaProgram.with_phase(steps, phase, num_majoranas)


def is_unitary(U: np.ndarray, atol: float = UNITARY_ATOL) -> bool:
    d = U.shape[0]
    return bool(np.max(np.abs(U.conj().T @ U - np.eye(d))) <= atol)
