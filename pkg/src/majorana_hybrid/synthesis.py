"""Constructive synthesis of logical gates from Majorana rotation programs.

Every logical Z-string ``exp(-i theta Z_S)`` is a single even-body rotation,
so an arbitrary diagonal gate is the product of one rotation per Walsh
coefficient of its phase vector. Non-diagonal gates are assembled from local
``Rz``/``Rx`` rotations, Hadamard conjugation and the diagonal builders.

Angles passed as ``Fraction`` are read as multiples of pi and stay exact
through the whole construction; anything else is radians.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import MajoranaProgram, MajoranaStep, compose
from .encoding import (
    Encoding,
    logical_to_physical_zsupports,
    majoranas_of_support,
    physical_to_logical_zsupport,
    zstring_to_majorana_indices,
)
from .errors import BadParams, IndexOutOfRange
from .gates import rx, rz

PRUNE_ATOL = 1e-12
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class DiagonalTarget:
    """Phases ``phi_j`` of a diagonal gate, indexed by logical basis state."""

    num_logical: int
    phases: tuple

    def __post_init__(self):
        phases = tuple(self.phases)
        if self.num_logical < 1:
            raise BadParams("a diagonal target needs at least one logical qubit")
        if len(phases) != 1 << self.num_logical:
            raise BadParams(f"expected {1 << self.num_logical} phases, got {len(phases)}")
        object.__setattr__(self, "phases", phases)

    @classmethod
    def of(cls, phases: Sequence) -> "DiagonalTarget":
        n = len(phases).bit_length() - 1
        if n < 1 or 1 << n != len(phases):
            raise BadParams(f"phase count must be a power of two >= 2, got {len(phases)}")
        return cls(n, tuple(phases))

    @property
    def exact(self) -> bool:
        return all(isinstance(p, (Fraction, int)) and not isinstance(p, bool) for p in self.phases)

    def diagonal(self) -> np.ndarray:
        rad = np.array([float(p) * math.pi if self.exact else float(p) for p in self.phases])
        return np.exp(1j * rad)


def walsh_transform(values: np.ndarray) -> np.ndarray:
    """Unnormalized fast Walsh-Hadamard transform: ``out[S] = sum_j values[j] (-1)**popcount(S & j)``."""
    out = np.array(values, dtype=float, copy=True)
    n = out.shape[0]
    h = 1
    while h < n:
        blocks = out.reshape(-1, 2, h)
        a = blocks[:, 0, :].copy()
        blocks[:, 0, :] += blocks[:, 1, :]
        blocks[:, 1, :] = a - blocks[:, 1, :]
        h *= 2
    return out


def _walsh_exact(values: Sequence[Fraction]) -> list:
    out = [Fraction(v) for v in values]
    n = len(out)
    h = 1
    while h < n:
        for start in range(0, n, 2 * h):
            for j in range(start, start + h):
                a, b = out[j], out[j + h]
                out[j], out[j + h] = a + b, a - b
        h *= 2
    return out


def support_of_mask(mask: int) -> frozenset:
    return frozenset(k + 1 for k in range(mask.bit_length()) if mask >> k & 1)


def walsh_coefficients(target: DiagonalTarget) -> dict:
    """``{support: c_S}`` with ``c_S = 2**-N sum_j phi_j chi_S(j)``, phases reduced mod 2 pi.

    Exact targets return Fractions (multiples of pi); others return floats in radians.
    """
    d = 1 << target.num_logical
    if target.exact:
        reduced = [Fraction(p) % 2 for p in target.phases]
        coeffs = [c / d for c in _walsh_exact(reduced)]
    else:
        reduced = np.mod(np.asarray(target.phases, dtype=float), TWO_PI)
        coeffs = list(walsh_transform(reduced) / d)
    return {support_of_mask(m): c for m, c in enumerate(coeffs)}


def _step_order(step: MajoranaStep):
    return (len(step.indices), step.indices)


def synth_diagonal(target, prune: float = PRUNE_ATOL) -> MajoranaProgram:
    """Program realizing ``diag(exp(i phi_j))`` exactly, global phase included."""
    if not isinstance(target, DiagonalTarget):
        target = DiagonalTarget.of(list(target))
    enc = Encoding(target.num_logical)
    coeffs = walsh_coefficients(target)
    steps = []
    for support, c in coeffs.items():
        if not support:
            continue
        if target.exact:
            if c == 0:
                continue
            angle = -c
        else:
            if abs(c) < prune:
                continue
            angle = -float(c)
        steps.append(MajoranaStep.of(zstring_to_majorana_indices(enc, support), angle))
    steps.sort(key=_step_order)
    c0 = coeffs[frozenset()]
    if target.exact:
        return MajoranaProgram.with_phase(steps, c0, enc.num_majoranas)
    pref = complex(np.exp(1j * c0)) if abs(c0) >= prune else 1.0 + 0j
    return MajoranaProgram(tuple(steps), prefactor=pref, num_majoranas=enc.num_majoranas)


def synth_cn_phase(n: int, phi) -> MajoranaProgram:
    """``C^n`` phase gate on ``n + 1`` logical qubits: ``exp(i phi)`` on the all-ones state."""
    if n < 1:
        raise BadParams(f"need at least one control, got {n}")
    d = 1 << (n + 1)
    zero = Fraction(0) if isinstance(phi, (Fraction, int)) else 0.0
    phases = [zero] * d
    phases[-1] = phi
    return synth_diagonal(DiagonalTarget(n + 1, tuple(phases)))


def synth_cn_z(n: int) -> MajoranaProgram:
    return synth_cn_phase(n, Fraction(1))


def _check_qubit(enc: Encoding, k: int):
    if not 1 <= k <= enc.num_logical:
        raise IndexOutOfRange(f"logical qubit {k} outside [1, {enc.num_logical}]")


def rz_on_logical(enc: Encoding, k: int, theta) -> MajoranaProgram:
    """``Rz(2 theta)`` on logical qubit ``k``: one rotation of the pair on physical qubit ``k + 1``."""
    _check_qubit(enc, k)
    if theta == 0:
        return MajoranaProgram(phase=Fraction(0), num_majoranas=enc.num_majoranas)
    step = MajoranaStep.of((2 * k + 1, 2 * k + 2), theta)
    return MajoranaProgram((step,), phase=Fraction(0), num_majoranas=enc.num_majoranas)


def rx_on_logical(enc: Encoding, k: int, theta) -> MajoranaProgram:
    """``Rx(2 theta)`` on logical qubit ``k``: one rotation over Majoranas ``2 .. 2k+1``."""
    _check_qubit(enc, k)
    if theta == 0:
        return MajoranaProgram(phase=Fraction(0), num_majoranas=enc.num_majoranas)
    step = MajoranaStep.of(range(2, 2 * k + 2), theta)
    return MajoranaProgram((step,), phase=Fraction(0), num_majoranas=enc.num_majoranas)


def hadamard_on_logical(enc: Encoding, k: int) -> MajoranaProgram:
    """Exact Hadamard on qubit ``k`` as ``Rz(pi/2) Rx(pi/2) Rz(pi/2)`` times ``i``."""
    quarter = Fraction(1, 4)
    body = compose(rz_on_logical(enc, k, quarter), rx_on_logical(enc, k, quarter),
                   rz_on_logical(enc, k, quarter))
    return MajoranaProgram(body.steps, phase=Fraction(1, 2), num_majoranas=enc.num_majoranas)


def synth_cn_not(n: int, target_qubit: int = 1) -> MajoranaProgram:
    """``C^n NOT`` on ``n + 1`` logical qubits; every qubit except the target is a control."""
    if n < 1:
        raise BadParams(f"need at least one control, got {n}")
    enc = Encoding(n + 1)
    _check_qubit(enc, target_qubit)
    h = hadamard_on_logical(enc, target_qubit)
    return compose(h, synth_cn_z(n), h)


def synth_cn_swap(n: int) -> MajoranaProgram:
    """Swap logical qubits 1 and 2 controlled by qubits ``3 .. n+2``, as three ``C^{n+1}NOT``."""
    if n < 1:
        raise BadParams(f"need at least one control, got {n}")
    t1 = synth_cn_not(n + 1, 1)
    t2 = synth_cn_not(n + 1, 2)
    return compose(t1, t2, t1)


def _rz_gate(enc, k, angle):
    """``Rz(angle)`` on qubit ``k``; ``angle`` uses the same exact-or-radians convention."""
    return rz_on_logical(enc, k, angle / 2)


def _rx_gate(enc, k, angle):
    return rx_on_logical(enc, k, angle / 2)


def _ry_gate(enc, k, angle):
    # Ry(a) = Rz(pi/2) Rx(a) Rz(-pi/2); the rightmost factor acts first
    half_pi = Fraction(1, 2)
    return compose(_rz_gate(enc, k, -half_pi), _rx_gate(enc, k, angle), _rz_gate(enc, k, half_pi))


def _as_angle(x):
    return x if isinstance(x, Fraction) else float(x)


def controlled_unitary_factors(beta, gamma, delta) -> tuple:
    """``(A, B, C)`` programs on qubit 1 of two logical qubits with ``ABC = I`` and ``AXBXC = Rz Ry Rz``.

    ``A = Rz(beta) Ry(gamma/2)``, ``B = Ry(-gamma/2) Rz(-(beta+delta)/2)``,
    ``C = Rz((delta-beta)/2)``, with each ``Ry`` built from ``Rz`` and ``Rx``.
    """
    enc = Encoding(2)
    beta, gamma, delta = _as_angle(beta), _as_angle(gamma), _as_angle(delta)
    a = compose(_ry_gate(enc, 1, gamma / 2), _rz_gate(enc, 1, beta))
    b = compose(_rz_gate(enc, 1, -(beta + delta) / 2), _ry_gate(enc, 1, -gamma / 2))
    c = _rz_gate(enc, 1, (delta - beta) / 2)
    return a, b, c


def synth_controlled_unitary(beta, gamma, delta) -> MajoranaProgram:
    """Controlled ``Rz(beta) Ry(gamma) Rz(delta)``: control on logical qubit 2, target on qubit 1."""
    a, b, c = controlled_unitary_factors(beta, gamma, delta)
    cnot = synth_cn_not(1, 1)
    return compose(c, cnot, b, cnot, a)


def xz_only_controlled_unitary_factors(beta: float, gamma: float, delta: float) -> tuple:
    """Matrices of the ``Rz``/``Rx``-only factor variant.

    ``A = Rz(beta + pi/2) Rx(gamma/2)``, ``B = Rx(-gamma/2) Rz(-(beta+delta)/2)``,
    ``C = Rz((delta - beta - pi)/2)``. Their product is the identity, but since
    ``X`` commutes with ``Rx`` the sandwich ``A X B X C`` collapses to
    ``Rz(beta + delta)``; kept to document why the ``Ry`` form is used above.
    """
    A = rz(beta + math.pi / 2) @ rx(gamma / 2)
    B = rx(-gamma / 2) @ rz(-(beta + delta) / 2)
    C = rz((delta - beta - math.pi) / 2)
    return A, B, C


def reachable_supports(enc: Encoding, max_body: int) -> set:
    """Logical Z-supports reachable by diagonal rotations of at most ``max_body`` Majoranas."""
    out = set()
    for size in range(1, max_body // 2 + 1):
        for phys in itertools.combinations(range(1, enc.num_physical + 1), size):
            out.add(physical_to_logical_zsupport(enc, phys))
    out.discard(frozenset())
    return out


def _in_integer_span(columns: np.ndarray, t: Sequence[int]) -> bool:
    """True when ``t = columns @ m`` for some integer vector ``m`` (column echelon form)."""
    rows = columns.shape[0]
    cols = [[int(x) for x in c] for c in columns.T]
    pivots = []
    for i in range(rows):
        active = [c for c in cols if c[i]]
        rest = [c for c in cols if not c[i]]
        while len(active) > 1:
            active.sort(key=lambda c: abs(c[i]))
            p = active[0]
            kept = [p]
            for c in active[1:]:
                q = c[i] // p[i]
                c2 = [a - q * b for a, b in zip(c, p)]
                (kept if c2[i] else rest).append(c2)
            active = kept
        if active:
            pivots.append((i, active[0]))
        cols = rest
    t = [int(x) for x in t]
    for i, p in pivots:
        if t[i] % p[i]:
            return False
        q = t[i] // p[i]
        t = [a - q * b for a, b in zip(t, p)]
    return not any(t)


def diagonal_degree_witness(target, max_body: int = 2) -> dict:
    """Decide whether diagonal rotations of at most ``max_body`` Majoranas realize ``target`` up to phase.

    Such rotations only move the Walsh coefficients on the supports they
    reach, with arbitrary angles, and the global phase is free. The phases
    are fixed only modulo 2 pi: lifting ``phi -> phi + 2 pi m`` shifts the
    coefficient vector by ``2 pi H m / 2**N`` for the Walsh matrix ``H``. So
    the target is realizable iff some integer ``m`` zeroes every blocked
    coefficient, which is an integer-lattice membership question.
    """
    if not isinstance(target, DiagonalTarget):
        target = DiagonalTarget.of(list(target))
    n = target.num_logical
    d = 1 << n
    enc = Encoding(n)
    reach = reachable_supports(enc, max_body)
    blocked = [m for m in range(1, d) if support_of_mask(m) not in reach]
    base = np.array([float(p) * math.pi if target.exact else float(p) for p in target.phases])
    quantum = TWO_PI / d
    coeffs = walsh_transform(base) / d
    needed = -coeffs[blocked] / quantum
    lattice_gap = float(np.max(np.abs(needed - np.rint(needed)), initial=0.0) * quantum)
    if lattice_gap > 1e-9:
        realizable = False
    else:
        j = np.arange(d)
        walsh = np.array([[1 - 2 * (bin(m & x).count("1") & 1) for x in j] for m in blocked], dtype=np.int64)
        realizable = _in_integer_span(walsh.reshape(len(blocked), d), np.rint(needed).astype(np.int64))
    return {
        "num_logical": n,
        "max_body": max_body,
        "reachable_supports": sorted(sorted(s) for s in reach),
        "blocked_supports": [sorted(support_of_mask(m)) for m in blocked],
        "blocked_coefficients": [float(coeffs[m]) for m in blocked],
        "lattice_gap": lattice_gap,
        "realizable": bool(realizable),
    }


def min_support_choices(enc: Encoding, logical_support) -> tuple:
    """Both Majorana index sets (plain and complementary) for a logical Z-string."""
    plain, flipped = logical_to_physical_zsupports(enc, logical_support)
    return majoranas_of_support(plain), majoranas_of_support(flipped)
