"""Reference gate matrices in the logical basis.

Multi-qubit matrices are ordered with logical qubit 1 as the least significant
bit, so ``kron(A, B)`` puts ``B`` on qubit 1.
"""

from __future__ import annotations

from functools import reduce

import numpy as np

from .errors import BadParams, IndexOutOfRange, UnknownGate

SQRT2 = np.sqrt(2.0)

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / SQRT2
S = np.diag([1, 1j])
T = np.diag([1, np.exp(1j * np.pi / 4)])
SQRT_X = np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]]) / 2

CZ = np.diag([1, 1, 1, -1]).astype(complex)
CNOT = np.eye(4, dtype=complex)[[0, 1, 3, 2]]
SWAP = np.eye(4, dtype=complex)[[0, 2, 1, 3]]
ANTI_CNOT = np.eye(4, dtype=complex)[[1, 0, 2, 3]]
ISWAP = np.array([[1, 0, 0, 0], [0, 0, 1j, 0], [0, 1j, 0, 0], [0, 0, 0, 1]])
DCNOT = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 1, 0, 0]], dtype=complex)
MS = np.array([[1, 0, 0, 1j], [0, 1, -1j, 0], [0, -1j, 1, 0], [1j, 0, 0, 1]]) / SQRT2
CR = np.array([[0, 0, 1, 1j], [0, 0, 1j, 1], [1, -1j, 0, 0], [-1j, 1, 0, 0]]) / SQRT2
# printed without normalization; scaled here to be unitary
H2 = np.array([[1, 1, 1, 1], [1, -1, 1, -1], [1, -1, -1, 1], [1, 1, -1, -1]], dtype=complex) / 2
H3 = np.array([
    [1, 1, 1, 1, 1, 1, 1, 1],
    [1, -1, 1, -1, 1, -1, 1, -1],
    [1, -1, -1, 1, 1, -1, -1, 1],
    [1, 1, -1, -1, 1, 1, -1, -1],
    [1, -1, -1, 1, -1, 1, 1, -1],
    [1, 1, -1, -1, -1, -1, 1, 1],
    [1, 1, 1, 1, -1, -1, -1, -1],
    [1, -1, 1, -1, -1, 1, -1, 1],
], dtype=complex) / np.sqrt(8.0)


def kron(*ops) -> np.ndarray:
    return reduce(np.kron, ops, np.eye(1, dtype=complex))


def rx(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]])


def ry(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rz(theta: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def phase_shift(phi: float) -> np.ndarray:
    return np.diag([1, np.exp(1j * phi)])


def uxx(theta: float) -> np.ndarray:
    """``exp(-i theta/2 X(x)X)``."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return c * np.eye(4) - 1j * s * np.kron(X, X)


def uzz(theta: float) -> np.ndarray:
    return np.diag(np.exp(-0.5j * theta * np.array([1, -1, -1, 1])))


def on_qubit(gate: np.ndarray, qubit: int, num_qubits: int) -> np.ndarray:
    """Embed a one-qubit gate on logical ``qubit`` (1 = least significant)."""
    if not 1 <= qubit <= num_qubits:
        raise IndexOutOfRange(f"qubit {qubit} outside [1, {num_qubits}]")
    return kron(np.eye(1 << (num_qubits - qubit)), gate, np.eye(1 << (qubit - 1)))


def controlled(gate: np.ndarray) -> np.ndarray:
    """Block-diagonal ``diag(I, gate)``: control on the most significant qubit."""
    d = gate.shape[0]
    out = np.eye(2 * d, dtype=complex)
    out[d:, d:] = gate
    return out


def cn_phase(n: int, phi: float) -> np.ndarray:
    """Phase ``exp(i phi)`` on the all-ones state of ``n + 1`` qubits."""
    if n < 0:
        raise BadParams(f"control count must be non-negative, got {n}")
    d = 1 << (n + 1)
    diag = np.ones(d, dtype=complex)
    diag[-1] = np.exp(1j * phi)
    return np.diag(diag)


def cn_z(n: int) -> np.ndarray:
    return cn_phase(n, np.pi).real.astype(complex)


def cn_not(n: int, target: int = 1, num_qubits: int | None = None) -> np.ndarray:
    """Flip ``target`` when every other qubit is 1 (``num_qubits`` defaults to ``n + 1``)."""
    num_qubits = n + 1 if num_qubits is None else num_qubits
    if num_qubits != n + 1:
        raise BadParams(f"C^{n}NOT acts on {n + 1} qubits, not {num_qubits}")
    if not 1 <= target <= num_qubits:
        raise IndexOutOfRange(f"target {target} outside [1, {num_qubits}]")
    d = 1 << num_qubits
    tbit = 1 << (target - 1)
    others = (d - 1) ^ tbit
    perm = np.array([j ^ tbit if j & others == others else j for j in range(d)])
    return np.eye(d, dtype=complex)[:, perm]


def cn_swap(n: int) -> np.ndarray:
    """Swap qubits 1 and 2 when qubits 3 .. n+2 are all 1."""
    if n < 0:
        raise BadParams(f"control count must be non-negative, got {n}")
    d = 1 << (n + 2)
    ctrl = (d - 1) ^ 0b11

    def image(j):
        if j & ctrl != ctrl:
            return j
        b1, b2 = j & 1, (j >> 1) & 1
        return (j & ~0b11) | (b1 << 1) | b2

    perm = np.array([image(j) for j in range(d)])
    return np.eye(d, dtype=complex)[:, perm]


def toffoli() -> np.ndarray:
    return cn_not(2, target=1)


def fredkin() -> np.ndarray:
    return cn_swap(1)


def controlled_unitary(beta: float, gamma: float, delta: float) -> np.ndarray:
    """Controlled ``Rz(beta) Ry(gamma) Rz(delta)`` with control on qubit 2."""
    return controlled(rz(beta) @ ry(gamma) @ rz(delta))


def _angle(params, name):
    if params is None or name not in params:
        raise BadParams(f"missing parameter {name!r}")
    try:
        return float(params[name])
    except (TypeError, ValueError) as exc:
        raise BadParams(f"parameter {name!r} must be a real number") from exc


_FIXED = {
    "I": I2, "X": X, "Y": Y, "Z": Z, "H": H, "S": S, "T": T, "SqrtX": SQRT_X,
    "CZ": CZ, "CNOT": CNOT, "SWAP": SWAP, "AntiCNOT": ANTI_CNOT, "iSWAP": ISWAP,
    "DCNOT": DCNOT, "MS": MS, "CR": CR, "H2": H2, "H3": H3,
}

_PARAMETRIC = {
    "Rx": (("theta",), lambda p: rx(_angle(p, "theta"))),
    "Ry": (("theta",), lambda p: ry(_angle(p, "theta"))),
    "Rz": (("theta",), lambda p: rz(_angle(p, "theta"))),
    "Phase": (("phi",), lambda p: phase_shift(_angle(p, "phi"))),
    "Uxx": (("theta",), lambda p: uxx(_angle(p, "theta"))),
    "Uzz": (("theta",), lambda p: uzz(_angle(p, "theta"))),
    "CPhase": (("phi",), lambda p: cn_phase(1, _angle(p, "phi"))),
    "CCPhase": (("phi",), lambda p: cn_phase(2, _angle(p, "phi"))),
    "CCCPhase": (("phi",), lambda p: cn_phase(3, _angle(p, "phi"))),
    "CU": (("beta", "gamma", "delta"),
           lambda p: controlled_unitary(_angle(p, "beta"), _angle(p, "gamma"), _angle(p, "delta"))),
}


def gate_names() -> list:
    return sorted(_FIXED) + sorted(_PARAMETRIC) + ["CCZ", "Toffoli", "Fredkin"]


def reference_gate(name: str, params: dict | None = None) -> np.ndarray:
    """Matrix of a named gate; parametric gates take their angles in ``params``."""
    if name in _FIXED:
        if params:
            raise BadParams(f"{name} takes no parameters")
        return _FIXED[name].copy()
    if name in _PARAMETRIC:
        keys, build = _PARAMETRIC[name]
        extra = set(params or ()) - set(keys)
        if extra:
            raise BadParams(f"{name} got unexpected parameters {sorted(extra)}")
        return build(params)
    if name == "CCZ":
        return cn_z(2)
    if name == "Toffoli":
        return toffoli()
    if name == "Fredkin":
        return fredkin()
    raise UnknownGate(f"unknown gate {name!r}")
