"""Observables, states, moments and the Hilbert-Schmidt lifting of mixed states."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .errors import (
    BlochOutOfBall,
    DimensionMismatch,
    InvalidState,
    InvariantViolation,
    NonRealExpectation,
    NotHermitian,
    NotPureState,
    ValidationError,
)

PURE_NORM_TOL = 1e-10
TRACE_TOL = 1e-9
EIGEN_CLIP_TOL = 1e-10
BLOCH_TOL = 1e-12
VARIANCE_CLIP = 1e-12
REAL_TOL = 1e-10

_PAULI = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Observable:
    """A named Hermitian matrix.

    Matrices within the relative Hermiticity tolerance are stored in their
    symmetrized form; anything further off raises :class:`NotHermitian`
    naming the observable.
    """

    name: str
    matrix: np.ndarray

    def __post_init__(self):
        try:
            m = linalg.symmetrize(self.matrix, linalg.HERMITIAN_TOL)
        except NotHermitian as exc:
            raise NotHermitian(f"observable {self.name!r}: {exc}") from None
        except ValidationError as exc:
            raise type(exc)(f"observable {self.name!r}: {exc}") from None
        object.__setattr__(self, "matrix", _frozen(m))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __repr__(self):
        return f"Observable({self.name!r}, dim={self.dim})"


def pauli(name: str) -> Observable:
    try:
        return Observable(name, _PAULI[name.upper()])
    except KeyError:
        raise ValidationError(f"unknown Pauli matrix {name!r}") from None


@dataclass(frozen=True, eq=False)
class QuantumState:
    """A pure vector, a density matrix, or a qubit Bloch vector.

    Use the ``from_*`` constructors; they validate and normalise.  Bloch
    states also carry their density matrix in ``rho``.
    """

    kind: str
    vector: np.ndarray | None = None
    rho: np.ndarray | None = None
    bloch: tuple[float, float, float] | None = None

    @classmethod
    def from_vector(cls, v, normalize: bool = False) -> "QuantumState":
        x = np.asarray(v, dtype=np.complex128).reshape(-1)
        if x.size == 0 or not np.all(np.isfinite(x)):
            raise InvalidState("state vector must be non-empty and finite")
        nrm = np.linalg.norm(x)
        if normalize:
            if nrm == 0:
                raise InvalidState("cannot normalise the zero vector")
            x = x / nrm
        elif abs(nrm - 1.0) > PURE_NORM_TOL:
            raise InvalidState(f"pure state has norm {nrm!r}, expected 1")
        return cls("pure", vector=_frozen(x))

    @classmethod
    def from_density(cls, rho) -> "QuantumState":
        try:
            r = linalg.symmetrize(rho, linalg.HERMITIAN_TOL)
        except NotHermitian as exc:
            raise InvalidState(f"density matrix: {exc}") from None
        tr = np.trace(r).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvalidState(f"density matrix has trace {tr!r}, expected 1")
        vals, vecs = linalg.hermitian_eigh(r)
        if vals[0] < -EIGEN_CLIP_TOL:
            raise InvalidState(f"density matrix has eigenvalue {vals[0]:.3e} < 0")
        if vals[0] < 0:
            vals = np.clip(vals, 0.0, None)
            r = (vecs * vals) @ linalg.dagger(vecs)
            r = 0.5 * (r + linalg.dagger(r))
        r = r / np.trace(r).real
        return cls("density", rho=_frozen(r))

    @classmethod
    def from_bloch(cls, r) -> "QuantumState":
        rho = _bloch_matrix(r)
        return cls("bloch", rho=_frozen(rho), bloch=tuple(float(v) for v in r))

    @property
    def dim(self) -> int:
        return self.vector.shape[0] if self.kind == "pure" else self.rho.shape[0]

    def density_matrix(self) -> np.ndarray:
        if self.kind == "pure":
            return np.outer(self.vector, np.conj(self.vector))
        return np.array(self.rho)

    def __repr__(self):
        if self.kind == "bloch":
            return f"QuantumState(bloch={self.bloch})"
        return f"QuantumState(kind={self.kind!r}, dim={self.dim})"


def _bloch_matrix(r) -> np.ndarray:
    r = np.asarray(r, dtype=float).reshape(-1)
    if r.shape != (3,) or not np.all(np.isfinite(r)):
        raise ValidationError("Bloch vector must be three finite reals")
    if float(r @ r) > 1.0 + BLOCH_TOL:
        raise BlochOutOfBall(f"Bloch vector {tuple(r)} lies outside the unit ball")
    return 0.5 * (_PAULI["I"] + r[0] * _PAULI["X"] + r[1] * _PAULI["Y"] + r[2] * _PAULI["Z"])


def bloch_to_density(r) -> QuantumState:
    """Qubit density matrix ``(I + r1 X + r2 Y + r3 Z) / 2``."""
    return QuantumState("density", rho=_frozen(_bloch_matrix(r)))


def as_state(s) -> QuantumState:
    """Accept a QuantumState or a raw unit vector."""
    if isinstance(s, QuantumState):
        return s
    return QuantumState.from_vector(s)


def _check_dims(observables: Sequence[Observable], s: QuantumState):
    for a in observables:
        if a.dim != s.dim:
            raise DimensionMismatch(
                f"observable {a.name!r} has dimension {a.dim}, state has {s.dim}"
            )


def expectation(a: Observable, s) -> float:
    """``<A> = Tr(A rho)``; the imaginary part must vanish."""
    s = as_state(s)
    _check_dims([a], s)
    if s.kind == "pure":
        val = np.vdot(s.vector, a.matrix @ s.vector)
    else:
        val = np.sum(a.matrix * s.rho.T)
    if abs(val.imag) > REAL_TOL * max(1.0, float(np.max(np.abs(a.matrix)))):
        raise NonRealExpectation(f"<{a.name}> has imaginary part {val.imag:.3e}")
    return float(val.real)


def pair_moment(a: Observable, b: Observable, s) -> complex:
    """``<AB> = Tr(A B rho)``."""
    s = as_state(s)
    _check_dims([a, b], s)
    if s.kind == "pure":
        return complex(np.vdot(a.matrix @ s.vector, b.matrix @ s.vector))
    return complex(np.sum((a.matrix @ b.matrix) * s.rho.T))


def _clip_variance(var: float, scale: float, name: str) -> float:
    if var < 0:
        if var < -VARIANCE_CLIP * (1.0 + scale):
            raise InvariantViolation(f"variance of {name!r} is {var:.3e} < 0")
        return 0.0
    return var


def deviation(a: Observable, s) -> float:
    """Standard deviation ``sqrt(<A^2> - <A>^2)``."""
    s = as_state(s)
    m = expectation(a, s)
    c = a.matrix - m * np.eye(a.dim)
    if s.kind == "pure":
        return float(np.linalg.norm(c @ s.vector))
    var = float(np.sum((c @ c) * s.rho.T).real)
    return float(np.sqrt(_clip_variance(var, m * m, a.name)))


@dataclass(frozen=True, eq=False)
class CorrelationData:
    """Moments of an ordered observable list in one state.

    ``alphas[i, j] = <A_i A_j> - <A_i><A_j>``; it is computed from centred
    operators so that ``alphas[j, i] == conj(alphas[i, j])`` and the
    diagonal holds the variances.

    For pure states ``residuals[i, j]`` is the length of the part of
    ``(A_j - <A_j>) x`` orthogonal to ``(A_i - <A_i>) x``.  Taking it from the
    vectors avoids the cancellation in ``sqrt(D_j^2 - |a_ij|^2 / D_i^2)``.
    """

    dim: int
    k: int
    means: np.ndarray
    pair_moments: np.ndarray
    deviations: np.ndarray
    alphas: np.ndarray
    residuals: np.ndarray | None = None

    def permuted(self, perm: Sequence[int]) -> "CorrelationData":
        p = np.asarray(perm)
        res = None if self.residuals is None else self.residuals[np.ix_(p, p)]
        return CorrelationData(
            self.dim, self.k, self.means[p], self.pair_moments[np.ix_(p, p)],
            self.deviations[p], self.alphas[np.ix_(p, p)], res,
        )


def _residuals(u: np.ndarray, alphas: np.ndarray, devs: np.ndarray) -> np.ndarray:
    k = u.shape[0]
    out = np.empty((k, k))
    for i in range(k):
        if devs[i] < 1e-12:
            out[i] = devs
            continue
        y = u[i] / devs[i]
        coef = alphas[i] / devs[i]
        out[i] = np.linalg.norm(u - coef[:, None] * y[None, :], axis=1)
    return out


def correlations(observables: Sequence[Observable], s, check: bool = True) -> CorrelationData:
    s = as_state(s)
    if not observables:
        raise ValidationError("need at least one observable")
    _check_dims(observables, s)
    k, d = len(observables), s.dim
    means = np.array([expectation(a, s) for a in observables])
    eye = np.eye(d)
    if s.kind == "pure":
        x = s.vector
        ax = np.array([a.matrix @ x for a in observables])
        pair = np.conj(ax) @ ax.T
        u = ax - means[:, None] * x[None, :]
        alphas = np.conj(u) @ u.T
    else:
        rho = s.rho
        mats = np.array([a.matrix for a in observables])
        # Tr(P Q rho) = sum_{ij} (P Q)_{ij} rho_{ji}
        pair = np.einsum("aij,bjk,ki->ab", mats, mats, rho)
        cent = mats - means[:, None, None] * eye[None]
        alphas = np.einsum("aij,bjk,ki->ab", cent, cent, rho)
    alphas = 0.5 * (alphas + np.conj(alphas.T))
    var = alphas.diagonal().real.copy()
    for i, a in enumerate(observables):
        var[i] = _clip_variance(var[i], means[i] ** 2, a.name)
    devs = np.sqrt(var)
    np.fill_diagonal(alphas, var)
    if check:
        excess = np.abs(alphas) - np.outer(devs, devs)
        if np.max(excess) > 1e-9:
            raise InvariantViolation(f"|alpha_ij| exceeds Delta_i Delta_j by {np.max(excess):.3e}")
    res = _residuals(u, alphas, devs) if s.kind == "pure" else None
    return CorrelationData(d, k, means, pair, devs, alphas, res)


def commutator_with_projection(a: Observable, s) -> np.ndarray:
    """``[A, |x><x|]`` for a pure state ``x``."""
    x = pure_vector(s)
    if a.dim != x.shape[0]:
        raise DimensionMismatch(f"observable {a.name!r} has dimension {a.dim}, state has {x.shape[0]}")
    ax = a.matrix @ x
    return np.outer(ax, np.conj(x)) - np.outer(x, np.conj(ax))


def pure_vector(s) -> np.ndarray:
    s = as_state(s)
    if s.kind != "pure":
        raise NotPureState(f"expected a pure state vector, got kind {s.kind!r}")
    return np.asarray(s.vector)


def lift_mixed(observables: Sequence[Observable], s):
    """Lift ``(A_j, rho)`` to ``(A_j (x) I, vec(sqrt(rho)))`` on dimension d^2.

    Moments are preserved: ``<L_A> = <A>``, ``<L_A L_B> = <AB>``.
    """
    s = as_state(s)
    _check_dims(observables, s)
    if s.kind == "pure":
        return list(observables), s
    d = s.dim
    root = linalg.psd_sqrt(s.rho)
    x = linalg.vec(root)
    x = x / np.linalg.norm(x)
    eye = np.eye(d)
    lifted = [Observable(a.name, linalg.kron(a.matrix, eye)) for a in observables]
    return lifted, QuantumState.from_vector(x)


# --------------------------------------------------------------------------
# random instances


def random_observable(rng: np.random.Generator, d: int, name: str = "A", scale: float = 1.0) -> Observable:
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return Observable(name, scale * 0.5 * (g + linalg.dagger(g)))


def random_pure_state(rng: np.random.Generator, d: int) -> QuantumState:
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return QuantumState.from_vector(v, normalize=True)


def random_density(rng: np.random.Generator, d: int, rank: int | None = None) -> QuantumState:
    """Normalised Wishart sample ``G G^H / Tr``."""
    rank = d if rank is None else rank
    g = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    rho = g @ linalg.dagger(g)
    return QuantumState.from_density(rho / np.trace(rho).real)


def random_bloch(rng: np.random.Generator, surface: bool = False) -> np.ndarray:
    r = rng.normal(size=3)
    r /= np.linalg.norm(r)
    if not surface:
        r *= rng.random() ** (1.0 / 3.0)
    return r
