"""Tightness studies: random state search, Bloch-sphere grids and the Pauli checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg
from .bounds import theorem22_value, theorem41
from .errors import ValidationError, WrongDimension
from .quantum import (
    Observable,
    QuantumState,
    correlations,
    deviation,
    expectation,
    pauli,
    random_bloch,
)

TARGETS = ("theorem22", "theorem41", "theorem43")
DEGENERATE_PRODUCT = 1e-12


@dataclass(frozen=True)
class SearchConfig:
    samples: int = 1000
    seed: int = 0
    refine_steps: int = 0
    target: str = "theorem22"
    initial_step: float = 0.1

    def __post_init__(self):
        if self.samples < 1:
            raise ValidationError("samples must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValidationError("seed must be a 64-bit unsigned integer")
        if self.refine_steps < 0:
            raise ValidationError("refine_steps must be >= 0")
        if self.target not in TARGETS:
            raise ValidationError(f"target must be one of {TARGETS}")


@dataclass(frozen=True, eq=False)
class TightnessResult:
    best_state: QuantumState | None
    product: float
    bound: float
    ratio: float
    trace: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        vec = None
        if self.best_state is not None:
            vec = [[float(z.real), float(z.imag)] for z in self.best_state.vector]
        return {
            "best_state": {"pure": vec},
            "product": self.product,
            "bound": self.bound,
            "ratio": self.ratio,
            "trace": self.trace,
        }


def _target_bound(target: str, observables: Sequence[Observable]):
    k = len(observables)
    if target == "theorem41" and k != 3:
        raise ValidationError("target theorem41 needs exactly 3 observables")
    if target == "theorem43" and k != 4:
        raise ValidationError("target theorem43 needs exactly 4 observables")

    def evaluate(state):
        corr = correlations(observables, state)
        product = float(np.prod(corr.deviations))
        if target == "theorem41":
            bound = theorem41(*observables, state).general
        elif target == "theorem43":
            al, dv = corr.alphas, corr.deviations
            bound = 0.5 * abs(al[1, 2]) * (abs(al[0, 3]) + dv[0] * dv[3])
        else:
            bound = float(theorem22_value(corr.alphas, corr.deviations))
        return product, float(bound)

    return evaluate


def _sample_vector(rng: np.random.Generator, d: int) -> np.ndarray:
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return v / np.linalg.norm(v)


def _random_unitary_step(rng: np.random.Generator, d: int, step: float) -> np.ndarray:
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    h = 0.5 * (g + linalg.dagger(g))
    h /= np.linalg.norm(h)
    vals, vecs = linalg.hermitian_eigh(h)
    return (vecs * np.exp(1j * step * vals)) @ linalg.dagger(vecs)


def tightness_search(observables: Sequence[Observable], cfg: SearchConfig) -> TightnessResult:
    """Look for the pure state where ``bound / product`` is largest.

    Samples ``cfg.samples`` Haar-random pure states, keeps the best ratio
    (ties go to the earliest sample), then hill-climbs with random unitary
    kicks ``exp(i step H)``, halving ``step`` after each rejected kick.
    States with product below 1e-12 are skipped.
    """
    if not observables:
        raise ValidationError("need observables")
    d = observables[0].dim
    evaluate = _target_bound(cfg.target, observables)
    rng = np.random.default_rng(cfg.seed)

    best_ratio, best_idx, best = -1.0, -1, None
    ratios = []
    skipped = 0
    for i in range(cfg.samples):
        x = _sample_vector(rng, d)
        state = QuantumState.from_vector(x)
        product, bound = evaluate(state)
        if product < DEGENERATE_PRODUCT:
            skipped += 1
            continue
        ratio = bound / product
        ratios.append(ratio)
        if ratio > best_ratio:
            best_ratio, best_idx, best = ratio, i, (x, product, bound)

    trace = {
        "samples": cfg.samples,
        "seed": cfg.seed,
        "target": cfg.target,
        "evaluated": len(ratios),
        "skipped": skipped,
        "best_index": best_idx,
        "ratio_min": float(min(ratios)) if ratios else None,
        "ratio_mean": float(np.mean(ratios)) if ratios else None,
        "ratio_max_sampled": float(best_ratio) if ratios else None,
        "refine_steps": cfg.refine_steps,
        "refine_accepted": 0,
        "final_step": cfg.initial_step,
    }
    if best is None:
        return TightnessResult(None, 0.0, 0.0, 0.0, trace)

    x, product, bound = best
    step = cfg.initial_step
    accepted = 0
    for _ in range(cfg.refine_steps):
        cand = _random_unitary_step(rng, d, step) @ x
        cand /= np.linalg.norm(cand)
        p, b = evaluate(QuantumState.from_vector(cand))
        if p >= DEGENERATE_PRODUCT and b / p > bound / product:
            x, product, bound = cand, p, b
            accepted += 1
        else:
            step *= 0.5
    trace["refine_accepted"] = accepted
    trace["final_step"] = step
    return TightnessResult(QuantumState.from_vector(x), float(product), float(bound), float(bound / product), trace)


# --------------------------------------------------------------------------
# Bloch-sphere grids


def cubed_sphere(resolution: int) -> np.ndarray:
    """Equiangular cubed-sphere points, ``resolution`` per face edge.

    Face corners land on ``(+-1, +-1, +-1)/sqrt(3)`` and edge midpoints on
    ``(+-1, +-1, 0)/sqrt(2)`` (and permutations) when the resolution is odd.
    Points shared by neighbouring faces are deduplicated.
    """
    t = np.tan(np.linspace(-np.pi / 4, np.pi / 4, resolution))
    u, v = np.meshgrid(t, t, indexing="ij")
    u, v, one = u.ravel(), v.ravel(), np.ones(u.size)
    faces = []
    for axis in range(3):
        for sign in (1.0, -1.0):
            pts = np.empty((u.size, 3))
            pts[:, axis] = sign * one
            pts[:, (axis + 1) % 3] = u
            pts[:, (axis + 2) % 3] = v
            faces.append(pts)
    pts = np.concatenate(faces)
    pts /= np.linalg.norm(pts, axis=1)[:, None]
    _, keep = np.unique(np.round(pts, 12), axis=0, return_index=True)
    return pts[np.sort(keep)]


def ball_grid(points_per_axis: int) -> np.ndarray:
    """Cubic lattice points inside the unit ball; always contains the origin."""
    m = max(points_per_axis // 2, 1)
    t = np.linspace(-1.0, 1.0, 2 * m + 1)
    g = np.stack(np.meshgrid(t, t, t, indexing="ij"), axis=-1).reshape(-1, 3)
    return g[np.einsum("ij,ij->i", g, g) <= 1.0 + 1e-12]


def _pauli_coefficients(m: np.ndarray) -> np.ndarray:
    """``c`` with ``Tr(M rho) = c0 + c . r`` for ``rho = (I + r . sigma) / 2``."""
    basis = [pauli(p).matrix for p in "IXYZ"]
    return np.array([0.5 * np.trace(m @ b) for b in basis])


def qubit_moments(observables: Sequence[Observable], r: np.ndarray):
    """Means, alphas and deviations over many Bloch vectors at once.

    Returns ``means[k, N]``, ``alphas[k, k, N]``, ``devs[k, N]``.
    """
    r1 = np.concatenate([np.ones((len(r), 1)), r], axis=1)
    mats = [a.matrix for a in observables]
    means = np.array([(r1 @ _pauli_coefficients(a)).real for a in mats])
    k = len(mats)
    alphas = np.empty((k, k, len(r)), dtype=np.complex128)
    for i in range(k):
        for j in range(k):
            alphas[i, j] = r1 @ _pauli_coefficients(mats[i] @ mats[j]) - means[i] * means[j]
    devs = np.sqrt(np.clip(np.array([alphas[i, i].real for i in range(k)]), 0.0, None))
    return means, alphas, devs


def _grid_bounds(observables, r):
    means, alphas, devs = qubit_moments(observables, r)
    product = np.prod(devs, axis=0)
    t22 = theorem22_value(alphas, devs)
    special = 0.5 * (devs[0] * np.abs(alphas[1, 2]) + devs[2] * np.abs(alphas[0, 1]))
    mean_prod = np.abs(np.prod(means, axis=0))
    return {
        "product": product,
        "product_sq": product**2,
        "theorem22": t22,
        "special": special,
        "rhs_linear": 8.0 / (3.0 * math.sqrt(3.0)) * mean_prod,
        "rhs_power": 8.0 * 3.0**0.25 / 3.0 * mean_prod**1.5,
        "mean_product": mean_prod,
    }


@dataclass(frozen=True)
class GridReport:
    resolution: int
    sphere_points: int
    ball_points: int
    extrema: dict
    min_gaps: dict

    def to_dict(self) -> dict:
        return {
            "resolution": self.resolution,
            "sphere_points": self.sphere_points,
            "ball_points": self.ball_points,
            "extrema": self.extrema,
            "min_gaps": self.min_gaps,
        }


def _loc(r, idx):
    return [float(v) for v in r[idx]]


def bloch_grid(observables: Sequence[Observable], resolution: int, ball_points_per_axis: int | None = None) -> GridReport:
    """Evaluate products and bounds of a qubit triple over sphere and ball grids."""
    if len(observables) != 3:
        raise ValidationError("bloch_grid needs exactly three observables")
    if any(a.dim != 2 for a in observables):
        raise WrongDimension("bloch_grid needs qubit observables (d = 2)")
    if resolution < 8:
        raise ValidationError("resolution must be >= 8")
    sphere = cubed_sphere(resolution)
    ball = ball_grid(ball_points_per_axis or min(resolution, 41))
    out_s = _grid_bounds(observables, sphere)
    out_b = _grid_bounds(observables, ball)

    extrema = {}
    i = int(np.argmin(out_s["product_sq"]))
    extrema["sphere_min_product_sq"] = {"value": float(out_s["product_sq"][i]), "at": _loc(sphere, i)}
    i = int(np.argmax(out_s["product_sq"]))
    extrema["sphere_max_product_sq"] = {"value": float(out_s["product_sq"][i]), "at": _loc(sphere, i)}
    i = int(np.argmax(out_b["product_sq"]))
    extrema["ball_max_product_sq"] = {"value": float(out_b["product_sq"][i]), "at": _loc(ball, i)}
    i = int(np.argmax(out_s["mean_product"]))
    extrema["sphere_max_mean_product"] = {"value": float(out_s["mean_product"][i]), "at": _loc(sphere, i)}
    ok = out_s["product"] > DEGENERATE_PRODUCT
    ratio = np.where(ok, out_s["theorem22"] / np.where(ok, out_s["product"], 1.0), np.nan)
    i = int(np.nanargmin(ratio))
    extrema["sphere_min_ratio_theorem22"] = {"value": float(ratio[i]), "at": _loc(sphere, i)}

    gaps = {}
    for name, out in (("sphere", out_s), ("ball", out_b)):
        gaps[f"{name}:product-theorem22"] = float(np.min(out["product"] - out["theorem22"]))
        gaps[f"{name}:product-special"] = float(np.min(out["product"] - out["special"]))
        gaps[f"{name}:product_sq-rhs_linear"] = float(np.min(out["product_sq"] - out["rhs_linear"]))
        gaps[f"{name}:product_sq-rhs_power"] = float(np.min(out["product_sq"] - out["rhs_power"]))
    return GridReport(resolution, len(sphere), len(ball), extrema, gaps)


# --------------------------------------------------------------------------
# Pauli verification table


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    margin: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name:<40s} margin={self.margin:+.3e} {self.detail}".rstrip()


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "margin": c.margin, "detail": c.detail}
                for c in self.checks
            ],
        }


def inequality_check(name: str, gaps, tol: float, detail: str = "") -> Check:
    """Pass when every gap ``lhs - rhs`` is at least ``-tol``."""
    margin = float(np.min(gaps))
    return Check(name, bool(margin >= -tol), margin, detail)


def equality_check(name: str, errors, tol: float, detail: str = "") -> Check:
    """Pass when every ``|lhs - rhs|`` is within ``tol``; margin is the slack."""
    worst = float(np.max(np.abs(errors)))
    margin = tol - worst
    return Check(name, bool(margin >= 0), margin, detail or f"max_err={worst:.3e}")


XZ_POINT = (1 / math.sqrt(2), 0.0, 1 / math.sqrt(2))
SYMMETRIC_POINT = (1 / math.sqrt(3),) * 3


def _pauli_row(r):
    """Library-computed moments for X, Y, Z at one Bloch vector."""
    X, Y, Z = (pauli(p) for p in "XYZ")
    s = QuantumState.from_bloch(r)
    mx, my, mz = (expectation(a, s) for a in (X, Y, Z))
    dx, dy, dz = (deviation(a, s) for a in (X, Y, Z))
    special = theorem41(X, Y, Z, s).special
    return mx, my, mz, dx * dy * dz, special


def special_form_rhs(x, y, z):
    return 0.5 * (np.sqrt((1 - x * x) * (x * x + y * y * z * z)) + np.sqrt((1 - z * z) * (z * z + x * x * y * y)))


def squared_links(x, y, z):
    """The successive lower bounds on the squared product, strongest first."""
    s1 = x * x + y * y * z * z
    s2 = z * z + x * x * y * y
    r = y * y + x * x * z * z
    quarter = 0.25 * ((1 - x * x) * s1 + (1 - z * z) * s2)
    first = quarter + 0.5 * np.sqrt((1 - z * z) * (1 - x * x) * s1 * s2)
    second = quarter + 0.5 * np.sqrt(r * s1 * s2)
    third = np.sqrt(r * s1 * s2)
    fourth = 2.0 * math.sqrt(2.0) * np.abs(x * y * z) ** 1.5
    return first, second, third, fourth


def pauli_suite(points=None, samples: int = 1000, seed: int = 0, tol: float = 1e-9, eq_tol: float = 1e-10) -> SuiteResult:
    """Check the Pauli-matrix inequalities and their equality points.

    ``points`` defaults to the two equality points, the maximally mixed
    state and ``samples`` random Bloch-ball points drawn from ``seed``.
    """
    if points is None:
        rng = np.random.default_rng(seed)
        points = [XZ_POINT, SYMMETRIC_POINT, (0.0, 0.0, 0.0)]
        points += [tuple(random_bloch(rng)) for _ in range(samples)]
    rows = np.array([_pauli_row(r) for r in points], dtype=object)
    x, y, z = (rows[:, i].astype(float) for i in range(3))
    prod = rows[:, 3].astype(float)
    special = rows[:, 4].astype(float)
    psq = prod**2
    checks = []

    rhs_special = special_form_rhs(x, y, z)
    checks.append(inequality_check("special form: product >= rhs", prod - rhs_special, tol))
    checks.append(equality_check("special form: explicit rhs == library value", special - rhs_special, eq_tol))
    lhs, rhs = _pauli_row(XZ_POINT)[3], special_form_rhs(*XZ_POINT)
    checks.append(equality_check("special form: equality at (1/sqrt2, 0, 1/sqrt2)", [lhs - 0.5, rhs - 0.5], eq_tol,
                                 f"lhs={lhs:.15f} rhs={rhs:.15f}"))

    first, second, third, fourth = squared_links(x, y, z)
    checks.append(inequality_check("squared chain: product^2 >= link 1", psq - first, tol))
    checks.append(inequality_check("squared chain: link 1 >= link 2", first - second, tol))
    checks.append(inequality_check("squared chain: link 2 >= link 3", second - third, tol))
    checks.append(inequality_check("squared chain: link 3 >= link 4", third - fourth, tol))
    checks.append(inequality_check("squared chain: product^2 >= 2sqrt2|XYZ|^1.5", psq - fourth, tol))

    c_power = 8.0 * 3.0**0.25 / 3.0
    c_linear = 8.0 / (3.0 * math.sqrt(3.0))
    mp = np.abs(x * y * z)
    checks.append(inequality_check("power bound: product^2 >= c |XYZ|^1.5", psq - c_power * mp**1.5, tol))
    checks.append(inequality_check("linear bound: product^2 >= c |XYZ|", psq - c_linear * mp, tol))
    sx, sy, sz, sprod, _ = _pauli_row(SYMMETRIC_POINT)
    smp = abs(sx * sy * sz)
    checks.append(equality_check("power bound: equality at (1,1,1)/sqrt3", [sprod**2 - 8 / 27, c_power * smp**1.5 - 8 / 27], eq_tol,
                                 f"lhs={sprod**2:.15f} rhs={c_power * smp**1.5:.15f}"))
    checks.append(equality_check("linear bound: equality at (1,1,1)/sqrt3", [sprod**2 - 8 / 27, c_linear * smp - 8 / 27], eq_tol,
                                 f"lhs={sprod**2:.15f} rhs={c_linear * smp:.15f}"))
    checks.append(inequality_check("product^2 <= 1", 1 - psq, tol))
    # on the sphere the factors 1 - r_i^2 sum to 2, so AM-GM caps the product at 8/27
    norms = np.sqrt(x * x + y * y + z * z)
    pure = norms > 1e-6
    sx_, sy_, sz_ = (v[pure] / norms[pure] for v in (x, y, z))
    sphere_psq = (1 - sx_**2) * (1 - sy_**2) * (1 - sz_**2)
    checks.append(inequality_check("pure states: product^2 <= 8/27", 8 / 27 - sphere_psq, tol))
    _, _, _, mixed_prod, _ = _pauli_row((0.0, 0.0, 0.0))
    checks.append(equality_check("product^2 == 1 at maximally mixed state", [mixed_prod**2 - 1], eq_tol))

    # zero-mean fallbacks on the r2 = 0 great circle and the r2 = r3 = 0 axis
    ts = np.linspace(0.0, 2.0 * np.pi, 361)
    circle = [(math.cos(t), 0.0, math.sin(t)) for t in ts]
    rng = np.random.default_rng(seed + 1)
    circle += [(r[0], 0.0, r[2]) for r in (random_bloch(rng) for _ in range(100))]
    crow = np.array([_pauli_row(r)[:4] for r in circle])
    fx, fz, fprod = crow[:, 0], crow[:, 2], crow[:, 3]
    fb = 0.5 * (np.sqrt((1 - fx * fx) * fx * fx) + np.sqrt((1 - fz * fz) * fz * fz))
    checks.append(inequality_check("fallback <Y>=0", fprod - fb, tol))
    axis = [(t, 0.0, 0.0) for t in np.linspace(-1.0, 1.0, 101)]
    arow = np.array([_pauli_row(r)[:4] for r in axis])
    ax, aprod = arow[:, 0], arow[:, 3]
    checks.append(inequality_check("fallback <Y>=<Z>=0", aprod - 0.5 * np.sqrt((1 - ax * ax) * ax * ax), tol))
    return SuiteResult("pauli", checks)
