"""Small dense complex linear algebra.

Everything here works on plain ``numpy`` complex arrays of modest size
(d <= 64).  Hermitian spectra come from a cyclic complex Jacobi solver
compiled with numba; the numerical radius is found by maximising the top
eigenvalue of ``Re(exp(-i theta) M)`` over theta.

Vectorization is row-major: ``vec(T)[i * n + j] == T[i, j]``.  With that
convention ``vec(A @ T) == kron(A, I) @ vec(T)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import NoConvergence, NonSquare, NotHermitian, NotPSD, ValidationError

HERMITIAN_TOL = 1e-10
MAX_SWEEPS = 100
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class RadiusOptions:
    coarse_grid: int = 1024
    refine_tolerance: float = 1e-12
    eigen_tolerance: float = 1e-13
    # number of grid-local maxima refined; guards against near-tied peaks
    candidates: int = 4

    def __post_init__(self):
        if self.coarse_grid < 8:
            raise ValidationError(f"coarse_grid must be >= 8, got {self.coarse_grid}")
        if not (self.refine_tolerance > 0 and self.eigen_tolerance > 0):
            raise ValidationError("tolerances must be positive")
        if self.candidates < 1:
            raise ValidationError("candidates must be >= 1")


DEFAULT_OPTIONS = RadiusOptions()


def as_matrix(m, *, square: bool = False) -> np.ndarray:
    """Coerce ``m`` to a finite 2-D complex128 array."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] == 0 or a.shape[1] == 0:
        raise ValidationError(f"expected a non-empty 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValidationError("matrix has non-finite entries")
    if square and a.shape[0] != a.shape[1]:
        raise NonSquare(f"matrix must be square, got shape {a.shape}")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m).T


def symmetrize(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Return ``(M + M^H) / 2`` after checking ``M`` is Hermitian within ``tol``.

    The check is ``max|M - M^H| <= tol * (1 + max|M|)``.
    """
    a = as_matrix(m, square=True)
    skew = np.max(np.abs(a - dagger(a)))
    if skew > tol * (1.0 + np.max(np.abs(a))):
        raise NotHermitian(f"matrix is not Hermitian (max |M - M^H| = {skew:.3e})")
    return 0.5 * (a + dagger(a))


# --------------------------------------------------------------------------
# Jacobi kernel


@njit(cache=True)
def _jacobi(h, tol, max_sweeps, want_vectors):
    """Cyclic Jacobi on a Hermitian matrix.

    Returns (eigenvalues unsorted, eigenvectors as columns, status) where
    status is the number of sweeps used, or -1 when the cap was reached.
    """
    n = h.shape[0]
    a = h.copy()
    v = np.eye(n, dtype=np.complex128)
    fro = 0.0
    for i in range(n):
        for j in range(n):
            fro += a[i, j].real * a[i, j].real + a[i, j].imag * a[i, j].imag
    fro = math.sqrt(fro)
    vals = np.empty(n)
    if fro == 0.0:
        for i in range(n):
            vals[i] = 0.0
        return vals, v, 0
    thresh = tol * fro
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += a[p, q].real * a[p, q].real + a[p, q].imag * a[p, q].imag
        if math.sqrt(2.0 * off) < thresh:
            for i in range(n):
                vals[i] = a[i, i].real
            return vals, v, sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                ag = abs(g)
                if ag == 0.0:
                    continue
                # phase u makes the pivot real, then a real rotation zeroes it
                u = g.conjugate() / ag
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * ag)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                su = s * u
                cu = c * u
                for i in range(n):
                    aip = a[i, p]
                    aiq = a[i, q]
                    a[i, p] = c * aip - su * aiq
                    a[i, q] = s * aip + cu * aiq
                suc = su.conjugate()
                cuc = cu.conjugate()
                for j in range(n):
                    apj = a[p, j]
                    aqj = a[q, j]
                    a[p, j] = c * apj - suc * aqj
                    a[q, j] = s * apj + cuc * aqj
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * ag
                a[q, q] = aqq + t * ag
                if want_vectors:
                    for i in range(n):
                        vip = v[i, p]
                        viq = v[i, q]
                        v[i, p] = c * vip - su * viq
                        v[i, q] = s * vip + cu * viq
    for i in range(n):
        vals[i] = a[i, i].real
    return vals, v, -1


@njit(cache=True)
def _support_values(m, thetas, tol, max_sweeps):
    """Top eigenvalue of Re(exp(-i t) M) for every t; status -1 on failure."""
    n = m.shape[0]
    out = np.empty(thetas.shape[0])
    mh = np.conj(m).T
    h = np.empty((n, n), dtype=np.complex128)
    status = 0
    for k in range(thetas.shape[0]):
        e = complex(math.cos(thetas[k]), -math.sin(thetas[k]))
        ec = np.conj(e)
        for i in range(n):
            for j in range(n):
                h[i, j] = 0.5 * (e * m[i, j] + ec * mh[i, j])
        vals, _, st = _jacobi(h, tol, max_sweeps, False)
        if st < 0:
            status = -1
        out[k] = np.max(vals)
    return out, status


def _eigh(h: np.ndarray, eigen_tol: float, want_vectors: bool):
    vals, vecs, status = _jacobi(np.ascontiguousarray(h), eigen_tol, MAX_SWEEPS, want_vectors)
    if status < 0:
        raise NoConvergence(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")
    order = np.argsort(vals, kind="stable")
    return vals[order], vecs[:, order]


def hermitian_eigenvalues(m, tol: float = HERMITIAN_TOL, eigen_tol: float = 1e-13) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix.

    ``tol`` is the relative Hermiticity tolerance; inputs within it are
    symmetrized before solving.  ``eigen_tol`` is the Jacobi stopping
    threshold relative to the Frobenius norm.
    """
    h = symmetrize(m, tol)
    vals, _ = _eigh(h, eigen_tol, False)
    return vals


def hermitian_eigh(m, tol: float = HERMITIAN_TOL, eigen_tol: float = 1e-13):
    """Eigenvalues (ascending) and orthonormal eigenvectors (columns)."""
    h = symmetrize(m, tol)
    return _eigh(h, eigen_tol, True)


def operator_norm(m) -> float:
    """Largest singular value, ``sqrt(lambda_max(M^H M))``."""
    a = as_matrix(m)
    g = dagger(a) @ a if a.shape[1] <= a.shape[0] else a @ dagger(a)
    g = 0.5 * (g + dagger(g))
    vals, _ = _eigh(g, 1e-13, False)
    return math.sqrt(max(vals[-1], 0.0))


@njit(cache=True)
def _support_at(m, theta, tol, max_sweeps):
    vals, status = _support_values(m, np.array([theta]), tol, max_sweeps)
    return vals[0], status


@njit(cache=True)
def _golden_max(m, lo, hi, width, tol, max_sweeps):
    """Golden-section search for a local maximum of the support function on [lo, hi]."""
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, s1 = _support_at(m, x1, tol, max_sweeps)
    f2, s2 = _support_at(m, x2, tol, max_sweeps)
    status = min(s1, s2)
    if f1 >= f2:
        best_x, best_f = x1, f1
    else:
        best_x, best_f = x2, f2
    while hi - lo > width:
        if f1 >= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1, st = _support_at(m, x1, tol, max_sweeps)
            if f1 > best_f:
                best_x, best_f = x1, f1
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2, st = _support_at(m, x2, tol, max_sweeps)
            if f2 > best_f:
                best_x, best_f = x2, f2
        status = min(status, st)
    return best_x, best_f, status


def _radius_search(a: np.ndarray, opts: RadiusOptions):
    n_grid = opts.coarse_grid
    thetas = 2.0 * np.pi * np.arange(n_grid) / n_grid
    values, status = _support_values(a, thetas, opts.eigen_tolerance, MAX_SWEEPS)
    if status < 0:
        raise NoConvergence("Jacobi did not converge during the radius sweep")
    # local maxima on the periodic grid, best first
    left = np.roll(values, 1)
    right = np.roll(values, -1)
    peaks = np.flatnonzero((values >= left) & (values >= right))
    peaks = peaks[np.argsort(-values[peaks], kind="stable")][: opts.candidates]
    cell = 2.0 * np.pi / n_grid
    best_theta = thetas[peaks[0]]
    best = values[peaks[0]]
    for i in peaks:
        th, val, st = _golden_max(
            a, thetas[i] - 1.5 * cell, thetas[i] + 1.5 * cell,
            opts.refine_tolerance, opts.eigen_tolerance, MAX_SWEEPS,
        )
        if st < 0:
            raise NoConvergence("Jacobi did not converge during refinement")
        if val > best:
            best_theta, best = th, val
    return best_theta, best


def numerical_radius_sweep(m, opts: RadiusOptions = DEFAULT_OPTIONS) -> float:
    """Numerical radius ``w(M) = max_theta lambda_max(Re(exp(-i theta) M))``."""
    a = as_matrix(m, square=True)
    if not np.any(a):
        return 0.0
    _, best = _radius_search(a, opts)
    return max(float(best), 0.0)


def numerical_range_boundary(m, n: int, eigen_tol: float = 1e-13) -> np.ndarray:
    """``n`` boundary points of W(M), one per direction on a uniform angle grid.

    Point ``k`` is ``<v|M|v>`` with ``v`` the top eigenvector of
    ``Re(exp(-i theta_k) M)``.
    """
    a = as_matrix(m, square=True)
    if n < 3:
        raise ValidationError(f"need at least 3 boundary points, got {n}")
    pts = np.empty(n, dtype=np.complex128)
    for k in range(n):
        theta = 2.0 * np.pi * k / n
        e = np.exp(-1j * theta)
        h = 0.5 * (e * a + np.conj(e) * dagger(a))
        _, vecs = _eigh(h, eigen_tol, True)
        v = vecs[:, -1]
        pts[k] = np.vdot(v, a @ v)
    return pts


def psd_sqrt(m, tol: float = 1e-10) -> np.ndarray:
    """Positive square root of a PSD matrix.

    Eigenvalues in ``[-tol, 0)`` are treated as zero; anything below raises
    :class:`NotPSD`.
    """
    vals, vecs = hermitian_eigh(m, HERMITIAN_TOL)
    if vals[0] < -tol:
        raise NotPSD(f"matrix has eigenvalue {vals[0]:.3e} < -{tol:g}")
    root = np.sqrt(np.clip(vals, 0.0, None))
    s = (vecs * root) @ dagger(vecs)
    return 0.5 * (s + dagger(s))


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def vec(m) -> np.ndarray:
    """Row-major vectorization."""
    return as_matrix(m).reshape(-1).copy()


def unvec(v, rows: int, cols: int | None = None) -> np.ndarray:
    cols = rows if cols is None else cols
    return np.asarray(v, dtype=np.complex128).reshape(rows, cols).copy()
