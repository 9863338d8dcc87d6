"""The chain operator ``D_k = prod_j [A_j, |x><x|]`` and its exact numerical radius.

``D_k`` is built two ways: by multiplying the commutators directly, and by a
four-coefficient recurrence in the frame ``|x><x|, |A1 x><x|, |x><x|A_k,
|A1 x><x|A_k``.  Rewriting the recurrence in an orthonormal frame
``{x, y, z}`` gives a 2x3 block whose sparsity depends on the parity of k,
and the numerical radius of that block has a closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, TooFewObservables
from .quantum import CorrelationData, Observable, commutator_with_projection, pure_vector

DEGENERATE_DELTA = 1e-12


def _check_chain(observables: Sequence[Observable], x: np.ndarray):
    if len(observables) < 2:
        raise TooFewObservables(f"chain needs k >= 2 observables, got {len(observables)}")
    for a in observables:
        if a.dim != x.shape[0]:
            raise DimensionMismatch(
                f"observable {a.name!r} has dimension {a.dim}, state has {x.shape[0]}"
            )


def chain_direct(observables: Sequence[Observable], s) -> np.ndarray:
    """Multiply the commutators ``[A_j, |x><x|]`` in list order."""
    x = pure_vector(s)
    _check_chain(observables, x)
    out = commutator_with_projection(observables[0], s)
    for a in observables[1:]:
        out = out @ commutator_with_projection(a, s)
    return out


@dataclass(frozen=True)
class ChainCoefficients:
    """``D_k = a|x><x| + b|A1x><x| + c|x><x|A_k + d|A1x><x|A_k``."""

    k: int
    a: complex
    b: complex
    c: complex
    d: complex

    def reconstruct(self, observables: Sequence[Observable], s) -> np.ndarray:
        x = pure_vector(s)
        a1x = observables[0].matrix @ x
        akx = observables[-1].matrix @ x
        xc, akc = np.conj(x), np.conj(akx)
        return (
            self.a * np.outer(x, xc)
            + self.b * np.outer(a1x, xc)
            + self.c * np.outer(x, akc)
            + self.d * np.outer(a1x, akc)
        )


def coefficients_from_moments(means, consecutive) -> ChainCoefficients:
    """Run the coefficient recurrence.

    ``means[j] = <A_j>`` and ``consecutive[j] = <A_{j-1} A_j>`` for j >= 1
    (``consecutive[0]`` is ignored).
    """
    k = len(means)
    if k < 2:
        raise TooFewObservables(f"chain needs k >= 2 observables, got {k}")
    a, b, c, d = -consecutive[1], complex(means[1]), complex(means[0]), -1.0 + 0j
    for j in range(2, k):
        mj, mprev, pj = means[j], means[j - 1], consecutive[j]
        a, b, c, d = (
            a * mj + c * pj,
            b * mj + d * pj,
            -a - c * mprev,
            -b - d * mprev,
        )
    return ChainCoefficients(k, complex(a), complex(b), complex(c), complex(d))


def chain_coefficients(observables: Sequence[Observable], s) -> ChainCoefficients:
    x = pure_vector(s)
    _check_chain(observables, x)
    ax = [a.matrix @ x for a in observables]
    means = [float(np.vdot(x, v).real) for v in ax]
    consecutive = [0j] + [complex(np.vdot(ax[j - 1], ax[j])) for j in range(1, len(ax))]
    return coefficients_from_moments(means, consecutive)


@dataclass(frozen=True, eq=False)
class EffectiveMatrix:
    """``D_k`` written in the orthonormal frame ``{x, y, z}``.

    ``f[i, j]`` is ``<e_i|D_k|e_j>`` for rows (x, y) and columns (x, y, z).
    ``frame`` holds the three vectors when built from a state vector; ``z``
    is ``None`` when no direction orthogonal to ``{x, y}`` is needed or
    available.
    """

    k: int
    parity: str
    f: np.ndarray
    beta_prime: complex
    gamma_prime: float
    delta_first: float
    coefficients: ChainCoefficients | None = None
    frame: tuple | None = None

    def block(self) -> np.ndarray:
        out = np.zeros((3, 3), dtype=np.complex128)
        out[:2, :] = self.f
        return out


def _assemble(k, coeffs: ChainCoefficients, m1, mk, delta1, beta, gamma, frame=None) -> EffectiveMatrix:
    parity = "even" if k % 2 == 0 else "odd"
    a, b, c, d = coeffs.a, coeffs.b, coeffs.c, coeffs.d
    bc = np.conj(beta)
    cd = c + d * m1
    f = np.array(
        [
            [a + b * m1 + c * mk + d * m1 * mk, cd * bc, cd * gamma],
            [(b + d * mk) * delta1, d * delta1 * bc, d * delta1 * gamma],
        ],
        dtype=np.complex128,
    )
    f.setflags(write=False)
    return EffectiveMatrix(k, parity, f, complex(beta), float(gamma), float(delta1), coeffs, frame)


def _degenerate(k, coeffs, delta_last, frame=None) -> EffectiveMatrix:
    # [A1, P_x] = 0 kills the product; y is undefined
    f = np.zeros((2, 3), dtype=np.complex128)
    f.setflags(write=False)
    parity = "even" if k % 2 == 0 else "odd"
    return EffectiveMatrix(k, parity, f, 0j, float(delta_last), 0.0, coeffs, frame)


def _orthogonal_unit(basis: Sequence[np.ndarray], d: int) -> np.ndarray | None:
    for i in range(d):
        e = np.zeros(d, dtype=np.complex128)
        e[i] = 1.0
        for b in basis:
            e = e - np.vdot(b, e) * b
        n = np.linalg.norm(e)
        if n > 0.5:
            return e / n
    return None


def effective_matrix(observables: Sequence[Observable], s) -> EffectiveMatrix:
    x = pure_vector(s)
    _check_chain(observables, x)
    k = len(observables)
    coeffs = chain_coefficients(observables, s)
    a1x = observables[0].matrix @ x
    akx = observables[-1].matrix @ x
    m1 = float(np.vdot(x, a1x).real)
    mk = float(np.vdot(x, akx).real)
    u1 = a1x - m1 * x
    vk = akx - mk * x
    delta1 = float(np.linalg.norm(u1))
    if delta1 < DEGENERATE_DELTA:
        return _degenerate(k, coeffs, float(np.linalg.norm(vk)), (x, None, None))
    y = u1 / delta1
    beta = complex(np.vdot(y, vk))
    w = vk - beta * y
    gamma = float(np.linalg.norm(w))
    if gamma > DEGENERATE_DELTA * max(1.0, float(np.linalg.norm(vk))):
        z = w / gamma
    else:
        gamma = 0.0
        z = _orthogonal_unit([x, y], x.shape[0])
    return _assemble(k, coeffs, m1, mk, delta1, beta, gamma, (x, y, z))


def effective_from_correlations(corr: CorrelationData) -> EffectiveMatrix:
    """Effective matrix from moments alone (the frame is not materialised)."""
    k = corr.k
    if k < 2:
        raise TooFewObservables(f"chain needs k >= 2 observables, got {k}")
    consecutive = [0j] + [corr.pair_moments[j - 1, j] for j in range(1, k)]
    coeffs = coefficients_from_moments(corr.means, consecutive)
    delta1, deltak = corr.deviations[0], corr.deviations[-1]
    if delta1 < DEGENERATE_DELTA:
        return _degenerate(k, coeffs, deltak)
    beta = corr.alphas[0, k - 1] / delta1
    if corr.residuals is not None:
        gamma = float(corr.residuals[0, k - 1])
    else:
        gamma = math.sqrt(max(deltak**2 - abs(beta) ** 2, 0.0))
    if gamma <= DEGENERATE_DELTA * max(1.0, deltak):
        gamma = 0.0
    return _assemble(k, coeffs, corr.means[0], corr.means[-1], delta1, beta, gamma)


def lemma_a1_radius(a: complex, b: complex, c: complex) -> float:
    """Numerical radius of ``[[0, a, b], [c, 0, 0], [0, 0, 0]]``."""
    return 0.5 * math.hypot(abs(b), abs(a) + abs(c))


def lemma_a1_radius_2x2(a: complex, c: complex) -> float:
    """Numerical radius of ``[[0, a], [c, 0]]``."""
    return 0.5 * (abs(a) + abs(c))


def radius_exact(eff: EffectiveMatrix) -> float:
    f = eff.f
    if eff.parity == "even":
        f22, f23 = abs(f[1, 1]), abs(f[1, 2])
        return max(abs(f[0, 0]), 0.5 * (f22 + math.hypot(f22, f23)))
    return lemma_a1_radius(f[0, 1], f[0, 2], f[1, 0])


def norm_exact(eff: EffectiveMatrix) -> tuple[float, str]:
    """Operator norm from the sparsity pattern, plus which part attains it."""
    f = eff.f
    if eff.parity == "even":
        top, block = abs(f[0, 0]), math.hypot(abs(f[1, 1]), abs(f[1, 2]))
        return (top, "f11") if top > block else (block, "block")
    row, col = math.hypot(abs(f[0, 1]), abs(f[0, 2])), abs(f[1, 0])
    return (row, "row") if row >= col else (col, "f21")
