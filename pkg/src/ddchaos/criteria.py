"""Sufficient-condition checkers for dense orbit irregularity.

Each checker inspects a concrete family at a finite horizon and returns a
report with enough evidence to recompute the verdict: smallness sets for
sampled basis vectors, cardinality counts against a schedule, partial sums
of reciprocal norms, exact densities of recurrence sets, and Orlicz-norm
growth along weighted translations.  Convergence verdicts are explicitly
heuristic; finite sums prove nothing and the reports say so.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .chaos import orbit_trace
from .indexset import ExactSet, default_checkpoints, mask_profile, q_set
from .operators import OperatorFamily
from .space import GRID_STEP, GridFunction
from .young import YoungFunction, luxemburg_norm


@dataclass(frozen=True)
class CriterionReport:
    """Outcome of one checker, with recomputable evidence."""

    name: str
    passed: bool
    evidence: dict = field(default_factory=dict)


_I_VARIANTS = ("cap", "cup", "forall", "exists")


def _trailing_small_start(mask: np.ndarray) -> int | None:
    """1-indexed start of the trailing all-True run, None when absent."""
    if not mask[-1]:
        return None
    false_at = np.flatnonzero(~mask)
    return 1 if false_at.size == 0 else int(false_at[-1]) + 2


def check_I0(
    family: OperatorFamily,
    variant: str,
    basis_sample: Sequence,
    K: int,
    tol_zero: float = 1e-6,
    delta: float = 0.0,
    m: int | None = None,
) -> CriterionReport:
    """Orbit smallness over a sample standing in for a dense subspace.

    For each sampled vector a smallness set is extracted from the orbit
    trace: cap/cup need one set good for every map at once, forall per-map
    sets, exists one good map.  A trailing all-small run is recognized as
    a cofinite set with exact density 1, which is what backward shifts
    produce on finitely supported vectors; otherwise the checkpoint
    profile must reach 1 - delta.
    """
    if variant not in _I_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if not basis_sample:
        raise ValueError("need at least one sample vector")
    cps = default_checkpoints(K)
    rows = []
    for idx, x in enumerate(basis_sample):
        trace = orbit_trace(family, x, K, m)
        small = trace < tol_zero
        if variant in ("cap", "cup"):
            masks = [np.all(small, axis=0)]
        else:
            masks = list(small)
        per_mask = []
        for mask in masks:
            cof = _trailing_small_start(mask)
            if cof is not None:
                per_mask.append(
                    {"cofinite_from": cof, "density": 1.0, "passed": True}
                )
            else:
                dens = float(mask_profile(mask, cps).sup_ratio())
                per_mask.append(
                    {
                        "cofinite_from": None,
                        "density": dens,
                        "passed": dens >= 1.0 - delta - 1e-12,
                    }
                )
        if variant == "exists":
            ok = any(r["passed"] for r in per_mask)
        else:
            ok = all(r["passed"] for r in per_mask)
        rows.append({"sample": idx, "sets": per_mask, "passed": ok})
    return CriterionReport(
        name=f"I_0,{variant}",
        passed=all(r["passed"] for r in rows),
        evidence={"samples": rows, "tol_zero": tol_zero, "horizon": K},
    )


def check_I_inf(
    family: OperatorFamily,
    variant: str,
    y_seq: Sequence,
    eps: float,
    n_schedule: Sequence[int],
    m: int | None = None,
) -> CriterionReport:
    """Largeness counts for a null sequence of vectors.

    For the l-th vector, counts k <= N_l whose orbit values clear eps
    under the variant's quantifier over maps (cap: every map, cup/exists:
    some map, forall: every map counted separately) and compares the count
    with N_l (1 - 1/l).
    """
    if variant not in _I_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if len(y_seq) != len(n_schedule):
        raise ValueError("need one horizon per vector")
    if any(b <= a for a, b in zip(n_schedule, n_schedule[1:])):
        raise ValueError("the horizon schedule must strictly increase")
    rows = []
    for l, (y, n_l) in enumerate(zip(y_seq, n_schedule), start=1):
        trace = orbit_trace(family, y, int(n_l), m)
        big = trace > eps
        bound = n_l * (1.0 - 1.0 / l)
        if variant == "cap":
            counts = [int(np.all(big, axis=0).sum())]
        elif variant in ("cup", "exists"):
            counts = [int(np.any(big, axis=0).sum())]
        else:
            counts = [int(row.sum()) for row in big]
        if variant == "forall":
            ok = all(c >= bound for c in counts)
        else:
            ok = counts[0] >= bound
        rows.append(
            {"l": l, "N_l": int(n_l), "counts": counts, "bound": bound, "passed": ok}
        )
    return CriterionReport(
        name=f"I_inf,{variant}",
        passed=all(r["passed"] for r in rows),
        evidence={"rows": rows, "eps": eps},
    )


def summability_test(
    values: Callable[[int], float],
    power: int,
    horizon: int,
    tail_window: int = 25,
) -> CriterionReport:
    """Partial sums of 1 / values(k)**power with a three-way tail verdict.

    "converged (heuristic)" when the tail increments fit a geometric decay
    (window ratio clearly below 1); "diverged" when every tail increment
    sits on or above a harmonic slope (k * increment bounded away from 0);
    otherwise "inconclusive".  A finite scan proves nothing; the verdict
    says so in its name.
    """
    if power not in (1, 2):
        raise ValueError("power must be 1 or 2")
    if horizon <= tail_window + 1:
        raise ValueError("horizon must exceed the tail window")
    increments = []
    for k in range(1, horizon + 1):
        v = float(values(k))
        if v <= 0 or not math.isfinite(v):
            raise ValueError(f"values must be positive and finite, got {v} at k={k}")
        increments.append(1.0 / v**power)
    inc = np.asarray(increments)
    partial = float(inc.sum())
    tail = inc[-tail_window:]
    ratio = (
        (tail[-1] / inc[-tail_window - 1]) ** (1.0 / tail_window)
        if inc[-tail_window - 1] > 0
        else 0.0
    )
    ks = np.arange(horizon - tail_window + 1, horizon + 1, dtype=float)
    slope_min = float((ks * tail).min())
    if ratio <= 0.9:
        verdict = "converged (heuristic)"
    elif slope_min >= 0.5:
        verdict = "diverged"
    else:
        verdict = "inconclusive"
    return CriterionReport(
        name=f"summability(power={power})",
        passed=verdict.startswith("converged"),
        evidence={
            "partial_sum": partial,
            "tail_increments": [float(t) for t in tail[-8:]],
            "tail_ratio": float(ratio),
            "tail_slope_min": slope_min,
            "verdict": verdict,
            "horizon": horizon,
        },
    )


def interleave_index(j: int, k: int, N: int) -> int:
    """Flatten the double index (j, k) to j + (k - 1) N."""
    if not 1 <= j <= N:
        raise ValueError("need 1 <= j <= N")
    if k < 1:
        raise ValueError("need k >= 1")
    return j + (k - 1) * N


def interleave_inverse(idx: int, N: int) -> tuple[int, int]:
    """Recover (j, k); the remainder 0 class is represented by j = N."""
    if idx < 1:
        raise ValueError("flat index must be >= 1")
    j = idx % N
    if j == 0:
        j = N
    return j, (idx - j) // N + 1


@dataclass(frozen=True)
class NotReachable:
    """Preimage chain broke off: no i satisfies i + a(i, j) = target."""

    step: int
    partial: tuple[int, ...]


def chain_recursion(
    n: int,
    j: int,
    a: Callable[[int, int], int],
    k: int,
):
    """Iterate the preimage of i -> i + a(i, j) down from n, k times.

    The jump map is increasing so i + a(i, j) is strictly increasing and
    the preimage, when it exists, is found by binary search.  Returns the
    chain [c_1, ..., c_k] or NotReachable at the failing step.
    """
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    chain: list[int] = []
    cur = n
    for step in range(1, k + 1):
        lo, hi = 1, cur
        while lo < hi:
            mid = (lo + hi) // 2
            if mid + a(mid, j) < cur:
                lo = mid + 1
            else:
                hi = mid
        if lo + a(lo, j) != cur:
            return NotReachable(step=step, partial=tuple(chain))
        chain.append(lo)
        cur = lo
    return chain


def p_membership(
    n: int,
    j: int,
    a: Callable[[int, int], int],
    omega: Callable[[int, int], float],
    b: Callable[[int], float],
    k: int,
    rel_tol: float = 1e-12,
) -> bool:
    """n lies in the k-step return set of map j: the preimage chain ends
    at 1 and the accumulated coefficient b_n * prod omega(c_s, j) is 1."""
    chain = chain_recursion(n, j, a, k)
    if isinstance(chain, NotReachable):
        return False
    if chain[-1] != 1:
        return False
    coeff = b(n)
    for c in chain:
        coeff *= omega(c, j)
    return math.isclose(coeff, 1.0, rel_tol=rel_tol)


def q_density_criterion(
    S: ExactSet, r: Sequence[int], required: Fraction
) -> CriterionReport:
    """Exact density of the joint scaled-recurrence set against a target.

    The set is {k : r_j k in S + 1 for every j}; density is exact rational
    arithmetic end to end.
    """
    if any(v < 1 for v in r):
        raise ValueError("ratios must be >= 1")
    q = q_set(S, tuple(int(v) for v in r))
    dens = q.density()
    req = Fraction(required)
    return CriterionReport(
        name="Q_density",
        passed=dens >= req,
        evidence={
            "density": f"{dens.numerator}/{dens.denominator}",
            "required": f"{req.numerator}/{req.denominator}",
            "ratios": [int(v) for v in r],
        },
    )


def qwea_condition(
    c: Callable[[int], float],
    B: ExactSet,
    K_support: Sequence[int],
    family: OperatorFamily,
    phi: YoungFunction | None,
    horizon: int,
    schedule: Callable[[int], float],
    p: float = 2.0,
    tail_floor: int = 3,
) -> CriterionReport:
    """Orlicz-norm growth of translated coefficient bumps.

    Builds g = (sum of c_k over B within the horizon) * indicator(K), runs
    every translation power n in B up to the horizon, measures the gauge
    norm (Luxemburg when phi is given, the counting l^p norm otherwise)
    and demands growth >= schedule(n) for members n >= tail_floor.
    Coefficients must be absolutely summable on B; visibly non-decaying
    tails are rejected.
    """
    members = [k for k in B.members_upto(horizon) if k >= 1]
    if not members:
        raise ValueError("no members of B within the horizon")
    coeffs = [abs(float(c(k))) for k in members]
    if len(coeffs) >= 8 and coeffs[-1] >= coeffs[0]:
        raise ValueError("coefficients do not decay on B: not absolutely summable")
    total = sum(float(c(k)) for k in members)
    g = GridFunction(
        {Fraction(int(x)): total for x in K_support}, GRID_STEP
    )
    per_j = []
    for j in range(1, family.n_ops + 1):
        norms = []
        ok = True
        for n in members:
            out = family.apply(j, n, g)
            if phi is not None:
                val = luxemburg_norm(out, phi)
            else:
                val = sum(abs(v) ** p for v in out.entries.values()) ** (1.0 / p)
            norms.append({"n": n, "norm": val, "floor": schedule(n)})
            if n >= tail_floor and val < schedule(n):
                ok = False
        per_j.append({"j": j, "norms": norms, "passed": ok})
    return CriterionReport(
        name="qwea" if phi is not None else "qwea(lp)",
        passed=all(row["passed"] for row in per_j),
        evidence={
            "coefficient_sum": total,
            "per_map": per_j,
            "support": [int(x) for x in K_support],
        },
    )
