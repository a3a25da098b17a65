import numpy as np

from majorana_hybrid import gates

PAULI = {"I": gates.I2, "X": gates.X, "Y": gates.Y, "Z": gates.Z}


def pauli_string(pattern: str) -> np.ndarray:
    """``"ZIZ"`` -> Z(x)I(x)Z with the leftmost letter on the highest qubit."""
    return gates.kron(*(PAULI[c] for c in pattern))


def zstring_exp(pattern: str, theta: float) -> np.ndarray:
    """``exp(-i theta P)`` for a Z/I string, built from its diagonal."""
    d = np.diag(pauli_string(pattern)).real
    return np.diag(np.exp(-1j * theta * d))


def max_err(A, B) -> float:
    return float(np.max(np.abs(np.asarray(A) - np.asarray(B))))


def phase_aligned_err(A, B) -> float:
    """Entrywise distance after removing the best global phase."""
    ov = np.vdot(B, A)
    ph = ov / abs(ov) if abs(ov) > 0 else 1.0
    return max_err(A, ph * B)
