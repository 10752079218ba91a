"""Dense one- and two-qubit states with CNOT, Hadamard and the Bell circuit.

Two-qubit amplitudes are ordered |00>, |01>, |10>, |11>; the first qubit is
the most significant bit.
"""

from __future__ import annotations

import numpy as np

SQRT_HALF = 1.0 / np.sqrt(2.0)

KET0 = np.array([1, 0], dtype=complex)
KET1 = np.array([0, 1], dtype=complex)

CNOT = np.array([[1, 0, 0, 0],
                 [0, 1, 0, 0],
                 [0, 0, 0, 1],
                 [0, 0, 1, 0]], dtype=complex)
HADAMARD = SQRT_HALF * np.array([[1, 1], [1, -1]], dtype=complex)
H_FIRST = np.kron(HADAMARD, np.eye(2))

BELL_LABELS = ("Psi+", "Psi-", "Phi+", "Phi-")


def _ket(s, dim: int) -> np.ndarray:
    s = np.asarray(s, dtype=complex)
    if s.shape != (dim,):
        raise ValueError(f"expected a state of dimension {dim}, got shape {s.shape}")
    return s


def basis(bits: str) -> np.ndarray:
    """Computational basis ket from a bit string such as ``"10"``."""
    out = np.zeros(2 ** len(bits), dtype=complex)
    out[int(bits, 2)] = 1
    return out


def tensor_product(a, b) -> np.ndarray:
    return np.kron(_ket(a, 2), _ket(b, 2))


def apply_cnot(s) -> np.ndarray:
    return CNOT @ _ket(s, 4)


def apply_hadamard(s) -> np.ndarray:
    return HADAMARD @ _ket(s, 2)


def apply_hadamard_first(s) -> np.ndarray:
    return H_FIRST @ _ket(s, 4)


def bell_states() -> dict[str, np.ndarray]:
    return {
        "Psi+": SQRT_HALF * (basis("00") + basis("11")),
        "Psi-": SQRT_HALF * (basis("00") - basis("11")),
        "Phi+": SQRT_HALF * (basis("01") + basis("10")),
        "Phi-": SQRT_HALF * (basis("01") - basis("10")),
    }


def bell_decode(s) -> np.ndarray:
    """CNOT, then H on the first qubit."""
    return apply_hadamard_first(apply_cnot(s))


def bell_encode(s) -> np.ndarray:
    """Inverse of ``bell_decode``: H on the first qubit, then CNOT."""
    return apply_cnot(apply_hadamard_first(s))


def probability(s, index: int) -> float:
    s = np.asarray(s, dtype=complex)
    if not 0 <= index < s.size:
        raise IndexError(f"basis index {index} out of range for dimension {s.size}")
    return float(abs(s[index]) ** 2)


def conditional_probability(s, first: int, second: int) -> float:
    """P(second qubit = ``second`` | first qubit measured as ``first``) for a two-qubit ket."""
    s = _ket(s, 4)
    p_first = probability(s, 2 * first) + probability(s, 2 * first + 1)
    if p_first == 0:
        raise ValueError(f"first qubit has zero probability of being {first}")
    return probability(s, 2 * first + second) / p_first


def is_unitary(m: np.ndarray, tol: float = 1e-14) -> bool:
    return bool(np.max(np.abs(m @ m.conj().T - np.eye(m.shape[0]))) <= tol)


def truth_tables() -> list[str]:
    """Human-readable CNOT, Hadamard and Bell-decode tables."""

    def show(v: np.ndarray) -> str:
        nq = int(np.log2(v.size))
        terms = []
        for k, a in enumerate(np.round(v, 12)):
            if a != 0:
                terms.append(f"{a.real:+.4f}|{k:0{nq}b}>")
        return " ".join(terms)

    lines = ["CNOT:"]
    for bits in ("00", "01", "10", "11"):
        lines.append(f"  CNOT|{bits}> = {show(apply_cnot(basis(bits)))}")
    lines.append("Hadamard:")
    for bit in ("0", "1"):
        lines.append(f"  H|{bit}> = {show(apply_hadamard(basis(bit)))}")
    lines.append("Bell decode (CNOT, then H on qubit 1):")
    for name, v in bell_states().items():
        lines.append(f"  {name:5s} -> {show(bell_decode(v))}")
    return lines
