"""Named gates and state preparations paired with the Majorana programs realizing them.

Each entry carries a reference builder, a program builder and the scalar
prefactor claimed for the program (``None`` when only up-to-phase equality is
claimed). Braid words are written as operator products, leftmost factor last
in time, with negative letters for inverse braids.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import gates as G
from .core import MajoranaProgram, MajoranaStep, apply_program, braid_word_program, compose, run_program
from .encoding import Encoding, embed_state, restrict_to_logical
from .errors import UnknownGate
from .synthesis import hadamard_on_logical, synth_cn_not, synth_controlled_unitary

VERIFY_EPS = 1e-9


@dataclass(frozen=True)
class GateCatalogEntry:
    name: str
    num_logical: int
    anchor: str
    reference: Callable
    program: Callable
    claimed_prefactor: complex | None = None
    kind: str = "gate"
    params: dict = field(default_factory=dict)
    note: str = ""

    @property
    def num_majoranas(self) -> int:
        return 2 * (self.num_logical + 1)


def _ph(frac) -> complex:
    return complex(np.exp(1j * math.pi * float(frac)))


def _word(word, phase=Fraction(0), n_logical=None):
    m = None if n_logical is None else 2 * (n_logical + 1)
    return lambda p: braid_word_program(word, phase, m)


def _steps(spec, phase=Fraction(0), n_logical=None):
    """Program from ``[(indices, angle)]``; exact angles are Fractions of pi."""
    m = None if n_logical is None else 2 * (n_logical + 1)
    return MajoranaProgram.with_phase([MajoranaStep.of(idx, a) for idx, a in spec], phase, m)


def _fixed(matrix):
    return lambda p: np.array(matrix, dtype=complex)


def _diag(values):
    return _fixed(np.diag(np.array(values, dtype=complex)))


def _ket(values):
    v = np.array(values, dtype=complex)
    return lambda p: v / np.linalg.norm(v)


def _k(*ops):
    return G.kron(*ops)


I2, I4 = G.I2, np.eye(4)


def _ccz_program(p):
    e = Fraction(1, 8)
    return _steps([((1, 2), e), ((3, 4), e), ((5, 6), e), ((7, 8), e),
                   ((1, 2, 3, 4), -e), ((1, 2, 7, 8), -e), ((1, 2, 5, 6), -e)], e, 3)


def _ccphase_program(p):
    t = p["phi"] / 8
    spec = [((1, 2), t), ((3, 4), t), ((5, 6), t), ((7, 8), t),
            ((1, 2, 3, 4), -t), ((1, 2, 7, 8), -t), ((1, 2, 5, 6), -t)]
    return MajoranaProgram.with_phase([MajoranaStep.of(i, a) for i, a in spec], t, 8)


# printed form of the C^3 phase construction; the (5,6,7,8) factor carries the wrong sign
C3PHASE_PRINTED_SIGNS = {
    (3, 4): 1, (5, 6): 1, (7, 8): 1, (9, 10): 1,
    (1, 2, 3, 4): 1, (1, 2, 5, 6): 1, (1, 2, 7, 8): 1, (1, 2, 9, 10): 1,
    (3, 4, 5, 6): -1, (3, 4, 7, 8): -1, (3, 4, 9, 10): -1, (5, 6, 7, 8): 1,
    (5, 6, 9, 10): -1, (7, 8, 9, 10): -1, (1, 2): -1,
}
C3PHASE_SIGNS = {**C3PHASE_PRINTED_SIGNS, (5, 6, 7, 8): -1}


def c3phase_program(phi: float, signs=None) -> MajoranaProgram:
    signs = C3PHASE_SIGNS if signs is None else signs
    t = phi / 16
    steps = [MajoranaStep.of(idx, s * t) for idx, s in signs.items()]
    return MajoranaProgram.with_phase(steps, t, 10)


def cphase_program(theta: float, signs=(-1, 1, 1)) -> MajoranaProgram:
    """``B5(s5 theta) B3(s3 theta) B1(s1 theta)`` times ``exp(i theta)``; ``signs = (s1, s3, s5)``.

    The default realizes ``diag(1, 1, 1, exp(4 i theta))``.
    """
    s1, s3, s5 = signs
    steps = [MajoranaStep.of((1, 2), s1 * theta), MajoranaStep.of((3, 4), s3 * theta),
             MajoranaStep.of((5, 6), s5 * theta)]
    return MajoranaProgram.with_phase(steps, theta, 6)


CPHASE_PRINTED_SIGNS = (1, 1, -1)


def _toffoli_program(p):
    h = _word([2, 3, 2], Fraction(1, 2), 3)(p)
    return compose(h, _ccz_program(p), h)


def _fredkin_program(p):
    t1 = synth_cn_not(2, 1)
    t2 = synth_cn_not(2, 2)
    return compose(t1, t2, t1)


def _ry_program(p):
    enc = Encoding(1)
    theta = p["theta"]
    return MajoranaProgram.with_phase(
        [MajoranaStep.of((3, 4), -math.pi / 4), MajoranaStep.of((2, 3), theta / 2),
         MajoranaStep.of((3, 4), math.pi / 4)], Fraction(0), enc.num_majoranas)


def _odd_word(word):
    """Odd-braid label ``n`` stands for the braid ``B_{2n-1}``."""
    return [int(math.copysign(2 * abs(a) - 1, a)) for a in word]


def _build_entries():
    E = []
    add = E.append
    q = Fraction(1, 4)

    # one logical qubit
    add(GateCatalogEntry("B1", 1, "one-qubit/braid-1", _fixed(_ph(-q) * G.S), _word([1], 0, 1), 1))
    add(GateCatalogEntry("S", 1, "one-qubit/s-gate", _fixed(G.S), _word([1], q, 1), _ph(q)))
    add(GateCatalogEntry("S-via-B3", 1, "one-qubit/s-gate-b3", _fixed(G.S), _word([3], q, 1), _ph(q)))
    add(GateCatalogEntry("B2", 1, "one-qubit/braid-2",
                         _fixed(np.array([[1, -1j], [-1j, 1]]) / math.sqrt(2)), _word([2], 0, 1), 1))
    add(GateCatalogEntry("SqrtX", 1, "one-qubit/sqrt-x", _fixed(G.SQRT_X), _word([2], q, 1), _ph(q)))
    add(GateCatalogEntry("Z", 1, "one-qubit/pauli-z", _fixed(G.Z), _word([3, 3], Fraction(1, 2), 1), 1j))
    add(GateCatalogEntry("X", 1, "one-qubit/pauli-x", _fixed(G.X), _word([2, 2], Fraction(1, 2), 1), 1j))
    add(GateCatalogEntry("Y", 1, "one-qubit/pauli-y", _fixed(G.Y), _word([2, 2, 3, 3], Fraction(1), 1), -1,
                         note="printed prefactor -1; the word equals -i times Y"))
    add(GateCatalogEntry("H", 1, "one-qubit/hadamard-triple-braid", _fixed(G.H),
                         _word([2, 3, 2], Fraction(1, 2), 1), 1j))
    add(GateCatalogEntry("T", 1, "one-qubit/t-gate", _fixed(G.T),
                         lambda p: _steps([((1, 2), Fraction(1, 8))], Fraction(1, 8), 1), _ph(Fraction(1, 8))))
    add(GateCatalogEntry("Phase", 1, "one-qubit/phase-shift", lambda p: G.phase_shift(p["phi"]),
                         lambda p: MajoranaProgram.with_phase([MajoranaStep.of((1, 2), p["phi"] / 2)],
                                                              p["phi"] / 2, 4),
                         None, params={"phi": 0.7}))
    add(GateCatalogEntry("Rz", 1, "one-qubit/rz", lambda p: G.rz(p["theta"]),
                         lambda p: _steps([((1, 2), p["theta"] / 2)], Fraction(0), 1), 1, params={"theta": 0.9}))
    add(GateCatalogEntry("Rx", 1, "one-qubit/rx", lambda p: G.rx(p["theta"]),
                         lambda p: _steps([((2, 3), p["theta"] / 2)], Fraction(0), 1), 1, params={"theta": 0.9}))
    add(GateCatalogEntry("Ry", 1, "one-qubit/ry-from-rz-rx", lambda p: G.ry(p["theta"]), _ry_program, 1,
                         params={"theta": 0.9}))

    # two logical qubits
    add(GateCatalogEntry("Rzz", 2, "two-qubit/zz-interaction", lambda p: G.uzz(2 * p["theta"]),
                         lambda p: _steps([((1, 2), p["theta"])], Fraction(0), 2), 1, params={"theta": 0.4}))
    add(GateCatalogEntry("Rxx", 2, "two-qubit/xx-interaction", lambda p: G.uxx(2 * p["theta"]),
                         lambda p: _steps([((4, 5), p["theta"])], Fraction(0), 2), 1, params={"theta": 0.4}))
    add(GateCatalogEntry("Rx-q2", 2, "two-qubit/rx-second", lambda p: _k(G.rx(2 * p["theta"]), I2),
                         lambda p: _steps([((2, 3, 4, 5), p["theta"])], Fraction(0), 2), 1, params={"theta": 0.4}))
    add(GateCatalogEntry("IZ", 2, "two-qubit/pauli-z1", _fixed(_k(I2, G.Z)), _word([3, 3], Fraction(1, 2), 2), 1j))
    add(GateCatalogEntry("ZI", 2, "two-qubit/pauli-z2", _fixed(_k(G.Z, I2)), _word([5, 5], Fraction(1, 2), 2), 1j))
    add(GateCatalogEntry("ZZ", 2, "two-qubit/pauli-zz", _fixed(_k(G.Z, G.Z)),
                         _word([5, 5, 3, 3], Fraction(1), 2), -1))
    add(GateCatalogEntry("IX", 2, "two-qubit/pauli-x1", _fixed(_k(I2, G.X)), _word([2, 2], Fraction(1, 2), 2), 1j))
    add(GateCatalogEntry("XX", 2, "two-qubit/pauli-xx", _fixed(_k(G.X, G.X)), _word([4, 4], Fraction(1, 2), 2), 1j))
    add(GateCatalogEntry("XI", 2, "two-qubit/pauli-x-product", _fixed(_k(G.X, I2)),
                         _word([4, 4, 2, 2], Fraction(1), 2), -1,
                         note="printed with the label I(x)X; the word yields X(x)I"))
    add(GateCatalogEntry("IH", 2, "two-qubit/hadamard-first", _fixed(_k(I2, G.H)),
                         _word([2, 3, 2], Fraction(1, 2), 2), 1j))
    add(GateCatalogEntry("HI", 2, "two-qubit/hadamard-second", _fixed(_k(G.H, I2)),
                         _word([1, 2, 3, 4, 3, 2, 1], Fraction(1), 2), -1))
    add(GateCatalogEntry("CZ", 2, "two-qubit/cz-three-braids", _fixed(G.CZ), _word([-5, -3, 1], -q, 2), _ph(-q)))
    add(GateCatalogEntry("CNOT", 2, "two-qubit/cnot-seven-braids", _fixed(G.CNOT),
                         _word([-5, 1, 2, 3, 1, 2, 1], Fraction(3, 4), 2), -_ph(-q)))
    add(GateCatalogEntry("SWAP", 2, "two-qubit/swap-seven-braids", _fixed(G.SWAP),
                         _word([-3, -4, -5, 3, 4, 3, 1], q, 2), _ph(q)))
    add(GateCatalogEntry("AntiCNOT", 2, "two-qubit/anti-cnot", _fixed(G.ANTI_CNOT),
                         _word([-5, -1, -2, 3, 1, 2, 1], q, 2), _ph(q)))
    add(GateCatalogEntry("iSWAP", 2, "two-qubit/iswap-six-braids", _fixed(G.ISWAP),
                         _word([3, 4, 5, 3, 4, 3], Fraction(1), 2), -1))
    add(GateCatalogEntry("DCNOT", 2, "two-qubit/double-cnot", _fixed(G.DCNOT),
                         _word([-2, -3, -4, -5, 1, 2, 3, 4], Fraction(0), 2), 1))
    add(GateCatalogEntry("MS", 2, "two-qubit/molmer-sorensen", _fixed(G.MS),
                         _word([3, 4, 5, 4, 3, 1, 1], Fraction(-1, 2), 2), -1j))
    add(GateCatalogEntry("CR", 2, "two-qubit/cross-resonance", _fixed(G.CR),
                         _word([4, 4, 1, 2, 3, 2, 1], Fraction(1), 2), -1))
    add(GateCatalogEntry("H2", 2, "two-qubit/entangled-hadamard", _fixed(G.H2),
                         _word([5, 4, 3, 2, 1], Fraction(3, 4), 2), -_ph(-q)))
    add(GateCatalogEntry("HxH", 2, "two-qubit/hadamard-product", _fixed(_k(G.H, G.H)),
                         _word([-5, 1, 2, 3, 1, 2, 1, 5, 4, 3, 2, 1], Fraction(1), 2), -1,
                         note="printed prefactor -1; the word equals -i times H(x)H"))
    add(GateCatalogEntry("CPhase", 2, "two-qubit/controlled-phase", lambda p: G.cn_phase(1, p["phi"]),
                         lambda p: cphase_program(p["phi"] / 4), None, params={"phi": 1.1},
                         note="sign pattern (B1, B3, B5) = (-, +, +); the printed pattern puts the phase on |01>"))
    add(GateCatalogEntry("CZ-from-CPhase", 2, "two-qubit/controlled-phase-cz", _fixed(G.CZ),
                         lambda p: cphase_program(Fraction(1, 4)), _ph(q)))
    add(GateCatalogEntry("CU", 2, "two-qubit/controlled-unitary",
                         lambda p: G.controlled_unitary(p["beta"], p["gamma"], p["delta"]),
                         lambda p: synth_controlled_unitary(p["beta"], p["gamma"], p["delta"]), None,
                         params={"beta": 0.3, "gamma": 1.2, "delta": -0.7}))

    # three logical qubits
    for name, word, phase, ref in [
        ("IIZ", [3, 3], Fraction(1, 2), _k(I2, I2, G.Z)),
        ("IZI", [5, 5], Fraction(1, 2), _k(I2, G.Z, I2)),
        ("ZII", [7, 7], Fraction(1, 2), _k(G.Z, I2, I2)),
        ("IZZ", [5, 5, 3, 3], Fraction(1), _k(I2, G.Z, G.Z)),
        ("ZZI", [7, 7, 5, 5], Fraction(1), _k(G.Z, G.Z, I2)),
        ("ZIZ", [7, 7, 3, 3], Fraction(1), _k(G.Z, I2, G.Z)),
        ("ZZZ", [7, 7, 5, 5, 3, 3], Fraction(-1, 2), _k(G.Z, G.Z, G.Z)),
        ("IIX", [2, 2], Fraction(1, 2), _k(I2, I2, G.X)),
        ("IXX", [4, 4], Fraction(1, 2), _k(I2, G.X, G.X)),
        ("XXI", [6, 6], Fraction(1, 2), _k(G.X, G.X, I2)),
    ]:
        add(GateCatalogEntry(name, 3, f"three-qubit/pauli-{name.lower()}", _fixed(ref),
                             _word(word, phase, 3), _ph(phase)))
    add(GateCatalogEntry("IIH", 3, "three-qubit/hadamard-first", _fixed(_k(I4, G.H)),
                         _word([2, 3, 2], Fraction(1, 2), 3), 1j))
    add(GateCatalogEntry("HII", 3, "three-qubit/hadamard-third", _fixed(_k(G.H, I4)),
                         _word([1, 2, 3, 4, 5, 6, 5, 4, 3, 2, 1], Fraction(-1, 2), 3), -1j))
    add(GateCatalogEntry("IHI", 3, "three-qubit/hadamard-middle-manybody", _fixed(_k(I2, G.H, I2)),
                         lambda p: hadamard_on_logical(Encoding(3), 2), 1))
    add(GateCatalogEntry("I-iSWAP", 3, "three-qubit/iswap-low", _fixed(_k(I2, G.ISWAP)),
                         _word([3, 4, 5, 3, 4, 3], Fraction(1), 3), -1))
    add(GateCatalogEntry("iSWAP-I", 3, "three-qubit/iswap-high", _fixed(_k(G.ISWAP, I2)),
                         _word([5, 6, 7, 5, 6, 5], Fraction(1), 3), -1))
    add(GateCatalogEntry("H3", 3, "three-qubit/hadamard-transform", _fixed(G.H3),
                         _word([7, 6, 5, 4, 3, 2, 1], Fraction(1), 3), -1))
    add(GateCatalogEntry("CZ-braid-on-3", 3, "three-qubit/embedded-cz-counterexample",
                         _diag([1, 1, 1, -1, 1j, -1j, -1j, -1j]), _word([-5, -3, 1], -q, 3), _ph(-q)))
    for i, (pref, word, d) in enumerate([
        (Fraction(1, 2), [-4, 3, 2, 1], [1, -1, -1, -1, 1, 1, 1, -1]),
        (Fraction(1, 2), [-3, 4, 2, 1], [1, -1, 1, 1, -1, -1, 1, -1]),
        (Fraction(1, 2), [-2, 3, 4, 1], [1, 1, -1, 1, -1, 1, -1, -1]),
        (Fraction(-1, 2), [-4, -3, -2, 1], [1, 1, 1, -1, 1, -1, -1, -1]),
        (Fraction(1), [4, 3, 2, 1], [1, -1, -1, -1, -1, -1, -1, 1]),
        (Fraction(0), [-4, -3, 2, 1], [1, -1, 1, 1, 1, 1, -1, 1]),
        (Fraction(0), [-4, -2, 3, 1], [1, 1, -1, 1, 1, -1, 1, 1]),
        (Fraction(0), [-3, -2, 4, 1], [1, 1, 1, -1, -1, 1, 1, 1]),
    ], start=1):
        add(GateCatalogEntry(f"odd-diagonal-{i}", 3, f"three-qubit/odd-diagonal-{i}", _diag(d),
                             _word(_odd_word(word), pref, 3), _ph(pref),
                             note="letters are odd-braid labels n for B_{2n-1}"))
    add(GateCatalogEntry("CZ-3to2", 3, "three-qubit/embedded-cz-3-2", _fixed(_k(G.CZ, I2)),
                         lambda p: _steps([((5, 6), q), ((7, 8), q), ((1, 2, 3, 4), -q)], q, 3), _ph(q)))
    add(GateCatalogEntry("CZ-3to1", 3, "three-qubit/embedded-cz-3-1", _diag([1, 1, 1, 1, 1, -1, 1, -1]),
                         lambda p: _steps([((3, 4), q), ((7, 8), q), ((1, 2, 5, 6), -q)], q, 3), _ph(q)))
    add(GateCatalogEntry("CZ-2to1", 3, "three-qubit/embedded-cz-2-1", _fixed(_k(I2, G.CZ)),
                         lambda p: _steps([((3, 4), q), ((5, 6), q), ((1, 2, 7, 8), -q)], q, 3), _ph(q)))
    add(GateCatalogEntry("CCZ", 3, "three-qubit/ccz-manybody", _fixed(G.cn_z(2)), _ccz_program,
                         _ph(Fraction(1, 8))))
    add(GateCatalogEntry("CCPhase", 3, "three-qubit/ccphase-manybody", lambda p: G.cn_phase(2, p["phi"]),
                         _ccphase_program, None, params={"phi": 0.8}))
    add(GateCatalogEntry("Toffoli", 3, "three-qubit/toffoli", _fixed(G.toffoli()), _toffoli_program,
                         _ph(Fraction(1, 8) + 1)))
    add(GateCatalogEntry("Fredkin", 3, "three-qubit/fredkin", _fixed(G.fredkin()), _fredkin_program, None))

    # four logical qubits
    add(GateCatalogEntry("CCCPhase", 4, "four-qubit/cccphase-manybody", lambda p: G.cn_phase(3, p["phi"]),
                         lambda p: c3phase_program(p["phi"]), None, params={"phi": 0.8},
                         note="(5,6,7,8) factor sign corrected to minus"))

    # state preparations from |0...0>
    add(GateCatalogEntry("even-cat", 1, "state/even-cat", _ket([1, 1]), _word([1, 2], q, 1), _ph(q), kind="state"))
    add(GateCatalogEntry("odd-cat", 1, "state/odd-cat", _ket([1, -1]), _word([-1, 2], -q, 1), _ph(-q), kind="state"))
    add(GateCatalogEntry("minus-i", 1, "state/minus-i", _ket([1, -1j]), _word([2], Fraction(0), 1), 1, kind="state"))
    add(GateCatalogEntry("equal-coefficient-2", 2, "state/equal-coefficient", _ket([1, 1, 1, 1]),
                         _word([1, 2, 3, 4, 5], Fraction(1, 2), 2), 1j, kind="state",
                         note="printed prefactor i; the word yields exp(-i pi/4) times the state"))
    add(GateCatalogEntry("equal-coefficient-3", 3, "state/equal-coefficient-3", _ket([1] * 8),
                         _word([7, 6, 5, 4, 3, 2, 1], Fraction(0), 3), None, kind="state"))
    return {e.name: e for e in E}


CATALOG = _build_entries()


def entry_names() -> list:
    return list(CATALOG)


def get_entry(name: str) -> GateCatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownGate(f"unknown catalog entry {name!r}") from None


def _params(entry, params):
    merged = dict(entry.params)
    if params:
        merged.update(params)
    return merged


def catalog_program(name: str, params: dict | None = None) -> MajoranaProgram:
    entry = get_entry(name)
    return entry.program(_params(entry, params))


def catalog_reference(name: str, params: dict | None = None) -> np.ndarray:
    entry = get_entry(name)
    return entry.reference(_params(entry, params))


def realize(entry: GateCatalogEntry, params: dict | None = None) -> np.ndarray:
    """Logical matrix (or prepared logical state) of an entry's program."""
    p = _params(entry, params)
    enc = Encoding(entry.num_logical)
    program = entry.program(p)
    if entry.kind == "state":
        zero = np.zeros(enc.logical_dimension, dtype=complex)
        zero[0] = 1
        psi = apply_program(enc.space, program, embed_state(enc, zero))
        return psi[enc.physical_indices]
    return restrict_to_logical(enc, run_program(enc.space, program))


def verify_entry(name: str, params: dict | None = None, eps: float = VERIFY_EPS) -> dict:
    """Compare an entry's program against its reference.

    ``pass`` needs trace fidelity within ``eps`` of one; ``prefactor_exact``
    additionally needs an entrywise match including the claimed prefactor.
    """
    entry = get_entry(name)
    ref = entry.reference(_params(entry, params))
    got = realize(entry, params)
    if entry.kind == "state":
        overlap = np.vdot(ref, got)
        fidelity = float(abs(overlap))
    else:
        overlap = np.vdot(ref, got) / ref.shape[0]
        fidelity = float(abs(overlap))
    phase = complex(overlap / abs(overlap)) if abs(overlap) > 0 else complex(0)
    claimed = entry.claimed_prefactor is not None
    exact = bool(claimed and np.max(np.abs(got - ref)) <= eps)
    return {
        "name": name,
        "fidelity": fidelity,
        "phase": phase,
        "prefactor_claimed": claimed,
        "prefactor_exact": exact,
        "pass": bool(fidelity >= 1 - eps),
    }


def catalog_document() -> dict:
    """Machine-readable catalog: every entry with its default-parameter program."""
    from .serialization import program_to_document

    out = []
    for entry in CATALOG.values():
        pref = entry.claimed_prefactor
        out.append({
            "name": entry.name,
            "kind": entry.kind,
            "num_logical": entry.num_logical,
            "anchor": entry.anchor,
            "params": entry.params,
            "claimed_prefactor": None if pref is None else {"re": complex(pref).real, "im": complex(pref).imag},
            "program": program_to_document(entry.program(dict(entry.params)), entry.num_majoranas),
            "note": entry.note,
        })
    return {"version": 1, "entries": out}


def catalog_json() -> str:
    return json.dumps(catalog_document(), indent=2)
