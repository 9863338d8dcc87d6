"""Randomised property suite over the whole toolkit.

Each check reports ``margin = tol - worst_error`` (or the worst gap for
orderings), so a positive margin means room to spare.
"""

from __future__ import annotations

import numpy as np

from . import bounds, chain, linalg
from .instances import lemma_a1_matrix, lemma_a1_matrix_2x2
from .quantum import (
    commutator_with_projection,
    correlations,
    deviation,
    lift_mixed,
    random_density,
    random_observable,
    random_pure_state,
)
from .search import Check, SuiteResult, equality_check, inequality_check


def _deviation_identity(rng, n, scale):
    errs = []
    for _ in range(n):
        d = int(rng.integers(2, 7))
        a = random_observable(rng, d)
        x = random_pure_state(rng, d)
        k = commutator_with_projection(a, x)
        dev = deviation(a, x)
        norm = linalg.operator_norm(k)
        rad = linalg.numerical_radius_sweep(k)
        errs += [dev - norm, dev - rad, norm - rad]
    return equality_check("Delta_A == ||[A,P]|| == w([A,P])", errs, 1e-9 * scale)


def _schrodinger(rng, n, scale):
    errs, gaps = [], []
    for _ in range(n):
        d = int(rng.integers(2, 7))
        a, b = random_observable(rng, d, "A"), random_observable(rng, d, "B")
        s = random_pure_state(rng, d) if rng.random() < 0.5 else random_density(rng, d)
        direct, radical = bounds.schrodinger(a, b, s), bounds.schrodinger_radical(a, b, s)
        rob = bounds.robertson(a, b, s)
        errs.append(direct - radical)
        gaps += [direct - rob, radical - rob]
    return [
        equality_check("Schroedinger forms agree", errs, 1e-10 * scale),
        inequality_check("Schroedinger >= Robertson", gaps, 1e-12 * scale),
    ]


def _instance(rng, pure=True):
    d = int(rng.integers(2, 6))
    k = int(rng.integers(2, 7))
    obs = [random_observable(rng, d, f"A{j + 1}") for j in range(k)]
    s = random_pure_state(rng, d) if pure else random_density(rng, d)
    return obs, s


def _oracle(rng, n, scale):
    rad_err, rec_err = [], []
    for _ in range(n):
        obs, x = _instance(rng)
        direct = chain.chain_direct(obs, x)
        exact = chain.radius_exact(chain.effective_matrix(obs, x))
        sweep = linalg.numerical_radius_sweep(direct)
        rad_err.append(exact - sweep)
        rec = chain.chain_coefficients(obs, x).reconstruct(obs, x)
        rec_err.append(np.max(np.abs(rec - direct)))
    return [
        equality_check("radius_exact == sweep oracle", rad_err, 1e-8 * scale),
        equality_check("coefficient reconstruction", rec_err, 1e-9 * scale),
    ]


def _ordering(rng, n, scale):
    gaps, lift_err = [], []
    for i in range(n):
        obs, s = _instance(rng, pure=(i % 2 == 0))
        if len(obs) > 5:
            obs = obs[:5]
        report = bounds.bound_report(obs, s, permute=True, sweep=False)
        gaps += list(report.ordering_gaps().values())
        if s.kind != "pure":
            lobs, x = lift_mixed(obs, s)
            a, b = correlations(obs, s), correlations(lobs, x)
            lift_err += [np.max(np.abs(a.means - b.means)), np.max(np.abs(a.pair_moments - b.pair_moments))]
    out = [inequality_check("product >= w_perm >= w_id >= t22 >= chain", gaps, 1e-9 * scale)]
    out.append(equality_check("lifted moments match", lift_err or [0.0], 1e-9 * scale))
    return out


def _closed_forms(rng, n, scale):
    errs = []
    for _ in range(n):
        a, b, c = rng.normal(size=3) + 1j * rng.normal(size=3)
        errs.append(chain.lemma_a1_radius(a, b, c) - linalg.numerical_radius_sweep(lemma_a1_matrix(a, b, c)))
        errs.append(chain.lemma_a1_radius_2x2(a, c) - linalg.numerical_radius_sweep(lemma_a1_matrix_2x2(a, c)))
    return equality_check("2x3 closed forms == sweep", errs, 1e-8 * scale)


def _weaker(rng, n, scale):
    gaps = []
    for _ in range(n):
        obs, x = _instance(rng)
        corr = correlations(obs, x)
        gaps.append(bounds.theorem22_value(corr.alphas, corr.deviations) - bounds.robertson_chain_value(corr.alphas))
    return inequality_check("theorem22 >= Robertson chain", gaps, 1e-9 * scale)


def property_suite(samples: int = 100, seed: int = 0, tolerance_scale: float = 1.0) -> SuiteResult:
    """Run every randomised property check.

    ``tolerance_scale`` multiplies each tolerance.  A negative scale makes
    the equality checks unsatisfiable; it exists to exercise the failure path.
    """
    rng = np.random.default_rng(seed)
    checks: list[Check] = []
    checks.append(_deviation_identity(rng, samples, tolerance_scale))
    checks += _schrodinger(rng, samples, tolerance_scale)
    checks += _oracle(rng, samples, tolerance_scale)
    checks += _ordering(rng, samples, tolerance_scale)
    checks.append(_closed_forms(rng, samples, tolerance_scale))
    checks.append(_weaker(rng, samples, tolerance_scale))
    return SuiteResult("properties", checks)
