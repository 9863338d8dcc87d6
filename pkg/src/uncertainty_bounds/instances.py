"""Named instances with known answers."""

from __future__ import annotations

import math

import numpy as np

from .quantum import Observable, QuantumState, pauli


def pauli_triple(bloch=(1 / math.sqrt(2), 0.0, 1 / math.sqrt(2))):
    """(X, Y, Z) at a Bloch vector; the default is an equality point, product 0.5."""
    return [pauli("X"), pauli("Y"), pauli("Z")], QuantumState.from_bloch(bloch)


def xyxy_instance():
    """(X, Y, X, Y) at |0>: every bound for k = 4 equals the product 1."""
    x, y = pauli("X"), pauli("Y")
    return [x, y, Observable("X'", x.matrix), Observable("Y'", y.matrix)], QuantumState.from_vector([1.0, 0.0])


def gell_mann(i: int, j: int) -> np.ndarray:
    """Symmetric off-diagonal generator ``E_ij + E_ji`` on a qutrit (1-based)."""
    m = np.zeros((3, 3), dtype=np.complex128)
    m[i - 1, j - 1] = m[j - 1, i - 1] = 1.0
    return m


def norm_counterexample():
    """Qutrit k = 4 instance with alpha_23 = 0 but alpha_12 = alpha_34 = 1.

    The chain operator is ``E_11``, so its norm and numerical radius are 1
    and equal the deviation product, while the k = 4 bound vanishes.
    """
    l1, l4 = gell_mann(1, 2), gell_mann(1, 3)
    obs = [Observable("L1", l1), Observable("L1'", l1), Observable("L4", l4), Observable("L4'", l4)]
    return obs, QuantumState.from_vector([1.0, 0.0, 0.0])


def lemma_a1_matrix(a: complex, b: complex, c: complex) -> np.ndarray:
    """``[[0, a, b], [c, 0, 0], [0, 0, 0]]``."""
    return np.array([[0, a, b], [c, 0, 0], [0, 0, 0]], dtype=np.complex128)


def lemma_a1_matrix_2x2(a: complex, c: complex) -> np.ndarray:
    return np.array([[0, a], [c, 0]], dtype=np.complex128)
