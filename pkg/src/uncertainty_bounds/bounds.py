"""Lower bounds on products of standard deviations.

All bounds are reported as bounds on ``prod_j Delta_j`` (never its square).
Moment-only bounds work for pure and mixed states alike, since lifting a
mixed state preserves every first and second moment.  Anything that needs
the chain operator itself lifts mixed states to a pure vector first.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from . import chain, linalg
from .errors import (
    IdentityViolation,
    InvariantViolation,
    TooFewObservables,
    TooManyObservables,
    ValidationError,
)
from .quantum import CorrelationData, Observable, as_state, correlations, lift_mixed, pair_moment

MAX_PERMUTE = 8
ORDER_TOL = 1e-9
SPECIAL_CASE_TOL = 1e-9


def _need(observables, k_min):
    if len(observables) < k_min:
        raise TooFewObservables(f"need at least {k_min} observables, got {len(observables)}")


# --------------------------------------------------------------------------
# pairwise


def robertson(a: Observable, b: Observable, s) -> float:
    """``|<[A, B]>| / 2``."""
    return 0.5 * abs(pair_moment(a, b, s) - pair_moment(b, a, s))


def schrodinger_radical(a: Observable, b: Observable, s) -> float:
    """The commutator/anticommutator form of the Schroedinger bound."""
    ab, ba = pair_moment(a, b, s), pair_moment(b, a, s)
    corr = correlations([a, b], s, check=False)
    comm = abs(ab - ba)
    anti = abs(0.5 * (ab + ba) - corr.means[0] * corr.means[1])
    return math.sqrt(0.25 * comm**2 + anti**2)


def schrodinger(a: Observable, b: Observable, s) -> float:
    """``|<AB> - <A><B>|``, cross-checked against the radical form."""
    ab = pair_moment(a, b, s)
    corr = correlations([a, b], s, check=False)
    value = abs(ab - corr.means[0] * corr.means[1])
    radical = schrodinger_radical(a, b, s)
    scale = 1.0 + corr.deviations[0] * corr.deviations[1]
    if abs(value - radical) > 1e-10 * scale:
        raise IdentityViolation(f"Schroedinger forms disagree: {value!r} vs {radical!r}")
    if value < robertson(a, b, s) - 1e-12 * scale:
        raise IdentityViolation("Schroedinger bound fell below Robertson's")
    return value


# --------------------------------------------------------------------------
# moment formulas; these accept extra trailing axes so grids can be evaluated
# in one call


def theorem22_value(alphas, devs):
    """Theorem-level bound from ``alphas[i, j, ...]`` and ``devs[i, ...]``."""
    mod = np.abs(alphas)
    k = mod.shape[0]
    if k < 2:
        raise TooFewObservables(f"need at least 2 observables, got {k}")
    if k % 2 == 0:
        n = k // 2
        inner = np.ones_like(mod[0, 0])
        for j in range(1, n):
            inner = inner * mod[2 * j - 1, 2 * j]
        return 0.5 * inner * (mod[0, k - 1] + devs[0] * devs[k - 1])
    n = (k - 1) // 2
    pi1 = np.ones_like(mod[0, 0])
    pi2 = np.ones_like(mod[0, 0])
    for j in range(1, n + 1):
        pi1 = pi1 * mod[2 * j - 2, 2 * j - 1]
        pi2 = pi2 * mod[2 * j - 1, 2 * j]
    inside = 2 * pi1 * pi2 * mod[0, k - 1] + devs[0] ** 2 * pi2**2 + devs[k - 1] ** 2 * pi1**2
    return 0.5 * np.sqrt(inside)


def cyclic_product(alphas):
    """``prod_j |alpha_{j, j+1}|`` with the index wrapping back to 1."""
    mod = np.abs(alphas)
    k = mod.shape[0]
    out = np.ones_like(mod[0, 0])
    for j in range(k):
        out = out * mod[j, (j + 1) % k]
    return out


def robertson_chain_squared(alphas):
    """Squared chained Robertson bound for odd k; plain bound for even k."""
    r = np.abs(np.imag(alphas))
    k = r.shape[0]
    if k % 2 == 0:
        out = r[0, k - 1]
        for j in range(1, k // 2):
            out = out * r[2 * j - 1, 2 * j]
        return out
    out = r[0, k - 1]
    for j in range(k - 1):
        out = out * r[j, j + 1]
    return out


def robertson_chain_value(alphas):
    k = np.shape(alphas)[0]
    val = robertson_chain_squared(alphas)
    return val if k % 2 == 0 else np.sqrt(val)


# --------------------------------------------------------------------------
# public bound functions


def robertson_chain(observables: Sequence[Observable], s) -> float:
    """Chained pairwise Robertson bound.

    Even k pairs up ``(2j, 2j+1)`` and ``(1, k)``; odd k uses every
    consecutive pair cyclically and takes a square root.
    """
    _need(observables, 2)
    corr = correlations(observables, s)
    return float(robertson_chain_value(corr.alphas))


def theorem22(observables: Sequence[Observable], s) -> float:
    _need(observables, 2)
    corr = correlations(observables, s)
    return float(theorem22_value(corr.alphas, corr.deviations))


@dataclass(frozen=True)
class Theorem41Result:
    general: float
    general_squared: float
    special: float | None
    special_reason: str | None


def theorem41(a: Observable, b: Observable, c: Observable, s) -> Theorem41Result:
    """Three-observable bound, plus the sharper form when its conditions hold."""
    s = as_state(s)
    corr = correlations([a, b, c], s)
    al, dv = corr.alphas, corr.deviations
    ab, bc, ac = abs(al[0, 1]), abs(al[1, 2]), abs(al[0, 2])
    sq = 0.25 * (dv[2] ** 2 * ab**2 + dv[0] ** 2 * bc**2) + 0.5 * ab * bc * ac
    reason = None
    if s.dim == 2:
        reason = "dim=2"
    elif abs(dv[0] * dv[2] - ac) <= SPECIAL_CASE_TOL:
        reason = "Delta_A Delta_C = |alpha_AC|"
    elif ab <= SPECIAL_CASE_TOL:
        reason = "alpha_AB = 0"
    special = 0.5 * (dv[0] * bc + dv[2] * ab) if reason else None
    return Theorem41Result(math.sqrt(sq), sq, special, reason)


def theorem43(a1: Observable, a2: Observable, a3: Observable, a4: Observable, s) -> float:
    corr = correlations([a1, a2, a3, a4], s)
    al, dv = corr.alphas, corr.deviations
    return 0.5 * abs(al[1, 2]) * (abs(al[0, 3]) + dv[0] * dv[3])


# --------------------------------------------------------------------------
# chain-operator based quantities


def _pure_correlations(observables, s):
    obs, x = lift_mixed(observables, s)
    return obs, x, correlations(obs, x)


def _radius_of(corr: CorrelationData) -> float:
    return chain.radius_exact(chain.effective_from_correlations(corr))


def _theorem22_of(corr: CorrelationData) -> float:
    return float(theorem22_value(corr.alphas, corr.deviations))


_EVALUATORS = {"radius_exact": _radius_of, "theorem22": _theorem22_of}


def permutation_max(observables: Sequence[Observable], s, evaluator: str = "radius_exact"):
    """Maximise over all orderings; ties go to the lexicographically first.

    Returns ``(value, permutation)`` with the permutation as a tuple of
    0-based indices into ``observables``.
    """
    _need(observables, 2)
    if len(observables) > MAX_PERMUTE:
        raise TooManyObservables(f"permutation search is capped at k <= {MAX_PERMUTE}")
    try:
        fn = _EVALUATORS[evaluator]
    except KeyError:
        raise ValidationError(f"unknown evaluator {evaluator!r}") from None
    _, _, corr = _pure_correlations(observables, s)
    best, best_perm = -math.inf, None
    for perm in itertools.permutations(range(len(observables))):
        val = fn(corr.permuted(perm))
        # relative slack keeps round-off from breaking lexicographic ties
        if best_perm is None or val > best + 1e-12 * (1.0 + abs(best)):
            best, best_perm = val, perm
    return float(best), tuple(int(i) for i in best_perm)


@dataclass(frozen=True)
class NormBasedResult:
    """Operator norm of the chain operator and the weaker relations it yields.

    ``block_norm_claim`` is ``|d_k| Delta_1 Delta_k`` for even k; it equals
    ``norm`` only when the block part attains the norm.
    """

    norm: float
    branch: str
    block_norm_claim: float | None
    claim_holds: bool | None
    relations: list = field(default_factory=list)


def norm_based(observables: Sequence[Observable], s) -> NormBasedResult:
    _need(observables, 2)
    obs, x, corr = _pure_correlations(observables, s)
    eff = chain.effective_matrix(obs, x)
    value, branch = chain.norm_exact(eff)
    k = len(obs)
    dv, mod = corr.deviations, np.abs(corr.alphas)
    relations = []
    claim = holds = None
    if k % 2 == 0:
        claim = abs(eff.coefficients.d) * dv[0] * dv[-1]
        holds = bool(abs(claim - value) <= 1e-9 * (1.0 + value))
        rhs = math.prod(mod[2 * j - 1, 2 * j] for j in range(1, k // 2))
        relations.append(("prod Delta_2..Delta_{k-1} >= prod |alpha_{2j,2j+1}|",
                          float(np.prod(dv[1:-1])), float(rhs)))
    else:
        n = (k - 1) // 2
        pi1 = math.prod(mod[2 * j - 2, 2 * j - 1] for j in range(1, n + 1))
        pi2 = math.prod(mod[2 * j - 1, 2 * j] for j in range(1, n + 1))
        relations.append(("prod Delta_1..Delta_{k-1} >= pi_1", float(np.prod(dv[:-1])), float(pi1)))
        relations.append(("prod Delta_2..Delta_k >= pi_2", float(np.prod(dv[1:])), float(pi2)))
    return NormBasedResult(float(value), branch, None if claim is None else float(claim), holds, relations)


# --------------------------------------------------------------------------
# full report


@dataclass(frozen=True)
class EqualityFlags:
    product_equals_norm: bool
    norm_equals_radius: bool
    tight: bool
    bound_equals_product: bool


@dataclass(frozen=True)
class BoundReport:
    k: int
    dim: int
    lifted: bool
    names: list
    deviations: list
    deviation_product: float
    radius_exact_id: float
    radius_sweep_id: float | None
    radius_permuted: float | None
    permutation: tuple | None
    bound_theorem22: float
    bound_robertson_chain: float
    bound_robertson_chain_squared: float
    bound_schrodinger: float | None
    bound_robertson: float | None
    norm_based: float
    norm_branch: str
    flags: EqualityFlags

    def to_dict(self) -> dict:
        d = asdict(self)
        d["permutation"] = None if self.permutation is None else list(self.permutation)
        return d

    def ordering_gaps(self) -> dict:
        w_perm = self.radius_permuted if self.radius_permuted is not None else self.radius_exact_id
        return {
            "product - w_perm": self.deviation_product - w_perm,
            "w_perm - w_id": w_perm - self.radius_exact_id,
            "w_id - theorem22": self.radius_exact_id - self.bound_theorem22,
            "theorem22 - chain": self.bound_theorem22 - self.bound_robertson_chain,
            "product - norm": self.deviation_product - self.norm_based,
            "norm - w_id": self.norm_based - self.radius_exact_id,
        }


def bound_report(
    observables: Sequence[Observable],
    s,
    *,
    permute: bool = False,
    sweep: bool = True,
    opts: linalg.RadiusOptions = linalg.DEFAULT_OPTIONS,
) -> BoundReport:
    """Every bound for one instance, with ordering and oracle checks.

    Raises :class:`InvariantViolation` if the ordering chain breaks or the
    closed-form radius disagrees with the sweep oracle; either means a bug.
    """
    _need(observables, 2)
    s = as_state(s)
    obs, x, corr = _pure_correlations(observables, s)
    k = len(obs)
    product = float(np.prod(corr.deviations))
    eff = chain.effective_matrix(obs, x)
    w_id = chain.radius_exact(eff)
    w_sweep = None
    if sweep:
        w_sweep = linalg.numerical_radius_sweep(chain.chain_direct(obs, x), opts)
        if abs(w_sweep - w_id) > 1e-8 * (1.0 + w_id):
            raise InvariantViolation(f"closed-form radius {w_id!r} != sweep {w_sweep!r}")
    w_perm = perm = None
    if permute:
        w_perm, perm = permutation_max(obs, x)
    nb = norm_based(obs, x)
    t22 = _theorem22_of(corr)
    chain_sq = float(robertson_chain_squared(corr.alphas))
    chain_val = chain_sq if k % 2 == 0 else math.sqrt(chain_sq)
    schr = rob = None
    if k == 2:
        schr = schrodinger(obs[0], obs[1], x)
        rob = robertson(obs[0], obs[1], x)
    tol = ORDER_TOL * max(1.0, product)
    flags = EqualityFlags(
        product_equals_norm=bool(abs(product - nb.norm) <= tol),
        norm_equals_radius=bool(abs(nb.norm - w_id) <= tol),
        tight=bool(abs(product - nb.norm) <= tol and abs(nb.norm - w_id) <= tol),
        bound_equals_product=bool(abs(product - t22) <= tol),
    )
    report = BoundReport(
        k=k,
        dim=s.dim,
        lifted=s.kind != "pure",
        names=[a.name for a in observables],
        deviations=[float(v) for v in corr.deviations],
        deviation_product=product,
        radius_exact_id=float(w_id),
        radius_sweep_id=None if w_sweep is None else float(w_sweep),
        radius_permuted=None if w_perm is None else float(w_perm),
        permutation=perm,
        bound_theorem22=t22,
        bound_robertson_chain=float(chain_val),
        bound_robertson_chain_squared=chain_sq,
        bound_schrodinger=schr,
        bound_robertson=rob,
        norm_based=nb.norm,
        norm_branch=nb.branch,
        flags=flags,
    )
    bad = {name: gap for name, gap in report.ordering_gaps().items() if gap < -tol}
    if bad:
        raise InvariantViolation(f"bound ordering violated: {bad}")
    return report
