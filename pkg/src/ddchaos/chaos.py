"""Disjointness-condition evaluation over orbit traces.

A trace records the doubly indexed distances s[j][k] produced by N maps
along one orbit horizon.  Thresholds sigma and eps cut the trace into
upper sets (large values) and lower sets (small values); twelve conditions
combine those per-map sets with four combinators and demand full upper
density from each combined clause.  The same machinery classifies single
vectors (near-zero, unbounded, irregular of types 1-4) and checks the
implication lattice between the twelve conditions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

import numpy as np

from .indexset import (
    BlockPatternSet,
    Blocks,
    DensityProfile,
    ExactSet,
    default_checkpoints,
    exact_upper_density,
    mask_profile,
    set_algebra,
)
from .mlo import AffineCoset, NotAttainable, min_seminorm, sup_seminorm
from .operators import LogVector, OperatorFamily
from .space import SeminormSpace, frechet_metric, norm, seminorm

ClauseSet = Union[np.ndarray, ExactSet, BlockPatternSet, Blocks]


class DomainViolation(ValueError):
    """Vector offered to a restricted family from outside its subspace."""


# ---------------------------------------------------------------------------
# condition table


_COMBINATORS = ("ALL_intersect", "ANY_union", "FORALL_each", "EXISTS_one")

CONDITION_TABLE: dict[int, tuple[str, str]] = {
    1: ("ALL_intersect", "ALL_intersect"),
    2: ("ALL_intersect", "FORALL_each"),
    3: ("FORALL_each", "FORALL_each"),
    4: ("FORALL_each", "EXISTS_one"),
    5: ("EXISTS_one", "FORALL_each"),
    6: ("ALL_intersect", "EXISTS_one"),
    7: ("FORALL_each", "ALL_intersect"),
    8: ("EXISTS_one", "ALL_intersect"),
    9: ("ANY_union", "ALL_intersect"),
    10: ("ANY_union", "FORALL_each"),
    11: ("ALL_intersect", "ANY_union"),
    12: ("FORALL_each", "ANY_union"),
}


@dataclass(frozen=True)
class ConditionSpec:
    """One of the twelve disjointness conditions, as a combinator pair."""

    index: int
    upper_combinator: str
    lower_combinator: str

    def __post_init__(self) -> None:
        if self.index not in CONDITION_TABLE:
            raise ValueError("condition index must lie in 1..12")
        if (self.upper_combinator, self.lower_combinator) != CONDITION_TABLE[
            self.index
        ]:
            raise ValueError(
                f"combinators do not match condition {self.index}"
            )


def condition_spec(i: int) -> ConditionSpec:
    up, low = CONDITION_TABLE[i]
    return ConditionSpec(i, up, low)


# ---------------------------------------------------------------------------
# traces


_SELECTION_MODES = ("single_valued", "mlo_min", "mlo_max", "mlo_dual")


@dataclass(frozen=True, eq=False)
class TraceMatrix:
    """Distances s[j][k] over j in 1..N, k in 1..K, plus checkpoint grid.

    values holds the working matrix (for mlo_dual: the min-selection one);
    dual_values carries the max-selection matrix in mlo_dual mode.
    """

    values: np.ndarray
    checkpoints: tuple[int, ...]
    selection_mode: str = "single_valued"
    dual_values: np.ndarray | None = None

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 2:
            raise ValueError("trace values must be an (N, K) matrix")
        if not np.all(np.isfinite(vals)) or np.any(vals < 0):
            raise ValueError("trace values must be finite and nonnegative")
        if self.selection_mode not in _SELECTION_MODES:
            raise ValueError(f"unknown selection mode {self.selection_mode!r}")
        cps = tuple(int(c) for c in self.checkpoints)
        if not cps or any(c < 1 or c > vals.shape[1] for c in cps):
            raise ValueError("checkpoints must be nonempty and lie in [1, K]")
        if self.selection_mode == "mlo_dual":
            if self.dual_values is None:
                raise ValueError("mlo_dual mode needs the second matrix")
            dual = np.asarray(self.dual_values, dtype=float)
            if dual.shape != vals.shape:
                raise ValueError("dual matrix shape mismatch")
            object.__setattr__(self, "dual_values", dual)
        elif self.dual_values is not None:
            raise ValueError("dual matrix only makes sense in mlo_dual mode")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "checkpoints", tuple(sorted(set(cps))))

    @property
    def n_ops(self) -> int:
        return int(self.values.shape[0])

    @property
    def horizon(self) -> int:
        return int(self.values.shape[1])


def _vectors_equal(x, y) -> bool:
    return type(x) is type(y) and x.entries == y.entries


def _as_plain_vector(out):
    if isinstance(out, LogVector):
        return out.to_seqvector()
    return out


def _single_distance(space: SeminormSpace, metric: str, ax, ay, m: int, tol: float) -> float:
    if metric == "frechet":
        return frechet_metric(space, ax, ay, tol)
    if metric == "norm":
        return seminorm(space, m, ax.sub(ay))
    raise ValueError(f"unknown metric {metric!r}")


def pair_trace(
    family: OperatorFamily,
    x,
    y,
    metric: str = "norm",
    K: int = 100,
    checkpoints: Sequence[int] | None = None,
    selection: str = "single_valued",
    m: int = 1,
    tol: float = 1e-9,
    cap: float = 1e9,
) -> TraceMatrix:
    """Distance matrix s[j][k] between the two orbits of x and y.

    Single-valued families force the selection; coset-valued families
    follow the mode: mlo_min minimizes the distance over the value coset,
    mlo_max maximizes up to cap, mlo_dual records both matrices.
    NotAttainable from a selection propagates annotated with (j, k).
    """
    if K < 1:
        raise ValueError("horizon must be >= 1")
    if _vectors_equal(x, y):
        raise ValueError("the pair must be two distinct vectors")
    cps = tuple(checkpoints) if checkpoints else default_checkpoints(K)
    vals = np.zeros((family.n_ops, K))
    dual = np.zeros((family.n_ops, K)) if selection == "mlo_dual" else None
    space = family.space
    for j in range(1, family.n_ops + 1):
        for k in range(1, K + 1):
            try:
                out_x = family.apply(j, k, x)
            except NotAttainable as exc:
                raise NotAttainable(
                    f"selection failed while tracing (j={j}, k={k}): {exc}"
                ) from exc
            if isinstance(out_x, AffineCoset):
                if selection == "single_valued":
                    raise ValueError(
                        "coset-valued family needs an mlo selection mode"
                    )
                out_y = family.apply(j, k, y)
                coset = AffineCoset(
                    out_x.base.sub(out_y.base), out_x.subspace
                )
                if selection in ("mlo_min", "mlo_dual"):
                    vals[j - 1, k - 1] = min_seminorm(coset, space, m)[0]
                if selection in ("mlo_max", "mlo_dual"):
                    big = min(sup_seminorm(coset, space, m), cap)
                    if selection == "mlo_max":
                        vals[j - 1, k - 1] = big
                    else:
                        dual[j - 1, k - 1] = big
            else:
                if selection != "single_valued":
                    raise ValueError(
                        "mlo selection modes need a coset-valued family"
                    )
                out_y = family.apply(j, k, y)
                vals[j - 1, k - 1] = _single_distance(
                    space,
                    metric,
                    _as_plain_vector(out_x),
                    _as_plain_vector(out_y),
                    m,
                    tol,
                )
    return TraceMatrix(vals, cps, selection, dual)


def orbit_trace(
    family: OperatorFamily,
    x,
    K: int,
    m: int | None = None,
    selection: str = "single_valued",
    cap: float = 1e9,
) -> np.ndarray:
    """Seminorm values p(T_{j,k} x) as an (N, K) matrix.

    m = None takes the space norm (level-1 seminorm); coset values are
    reduced by min_seminorm (selection mlo_min) or a capped sup (mlo_max).
    """
    level = 1 if m is None else m
    vals = np.zeros((family.n_ops, K))
    space = family.space
    for j in range(1, family.n_ops + 1):
        for k in range(1, K + 1):
            out = family.apply(j, k, x)
            if isinstance(out, AffineCoset):
                if selection == "mlo_min":
                    vals[j - 1, k - 1] = min_seminorm(out, space, level)[0]
                elif selection == "mlo_max":
                    vals[j - 1, k - 1] = min(
                        sup_seminorm(out, space, level), cap
                    )
                else:
                    raise ValueError(
                        "coset-valued family needs mlo_min or mlo_max here"
                    )
            else:
                vals[j - 1, k - 1] = seminorm(
                    space, level, _as_plain_vector(out)
                )
    return vals


# ---------------------------------------------------------------------------
# clause sets and condition evaluation


def clause_sets(
    t: TraceMatrix, sigma: float, eps: float
) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """U_j = {k : s[j][k] >= sigma}, L_j = {k : s[j][k] < eps} as masks.

    In mlo_dual mode the upper sets read the max-selection matrix and the
    lower sets the min-selection matrix.
    """
    if sigma <= 0 or eps <= 0:
        raise ValueError("thresholds must be positive")
    upper_src = (
        t.dual_values if t.selection_mode == "mlo_dual" else t.values
    )
    uppers = [upper_src[j] >= sigma for j in range(t.n_ops)]
    lowers = [t.values[j] < eps for j in range(t.n_ops)]
    return uppers, lowers


@dataclass(frozen=True)
class ClauseReport:
    """Density diagnostics for one evaluated clause set."""

    name: str
    backend: str
    density: float
    passed: bool
    exact: Fraction | None = None
    profile: DensityProfile | None = None
    witness: tuple[tuple[int, int], ...] | None = None


@dataclass(frozen=True)
class Verdict:
    """holds iff every clause shows full density up to the threshold delta:
    sup checkpoint ratio >= 1 - delta, or exact density 1 for exact-backed
    clauses."""

    holds: bool
    delta: float
    clauses: tuple[ClauseReport, ...]
    notes: tuple[str, ...] = ()


def mask_intervals(mask: np.ndarray) -> tuple[tuple[int, int], ...]:
    """1-indexed maximal runs of True, for witness-set reporting."""
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        return ()
    breaks = np.flatnonzero(np.diff(idx) > 1)
    starts = np.concatenate(([0], breaks + 1))
    ends = np.concatenate((breaks, [idx.size - 1]))
    return tuple(
        (int(idx[a]) + 1, int(idx[b]) + 1) for a, b in zip(starts, ends)
    )


def _clause_report(
    name: str,
    s: ClauseSet,
    checkpoints: Sequence[int],
    delta: float,
) -> ClauseReport:
    if isinstance(s, np.ndarray):
        prof = mask_profile(s, checkpoints)
        dens = float(prof.sup_ratio())
        return ClauseReport(
            name=name,
            backend="empirical",
            density=dens,
            passed=dens >= 1.0 - delta - 1e-12,
            profile=prof,
            witness=mask_intervals(s),
        )
    if isinstance(s, ExactSet):
        dens = s.density()
        return ClauseReport(
            name=name,
            backend="exact",
            density=float(dens),
            passed=dens == 1,
            exact=dens,
        )
    if isinstance(s, BlockPatternSet):
        dens = s.upper_density()
        return ClauseReport(
            name=name,
            backend="pattern",
            density=float(dens),
            passed=float(dens) >= 1.0 - delta - 1e-12,
            exact=dens,
            profile=s.profile(),
        )
    if isinstance(s, Blocks):
        prof = s.profile()
        dens = float(prof.sup_ratio())
        return ClauseReport(
            name=name,
            backend="blocks",
            density=dens,
            passed=dens >= 1.0 - delta - 1e-12,
            profile=prof,
        )
    raise TypeError(f"unsupported clause set type {type(s).__name__}")


def _combine(sets: Sequence[ClauseSet], op: str) -> ClauseSet:
    first = sets[0]
    if isinstance(first, np.ndarray):
        fn = np.logical_and if op == "intersect" else np.logical_or
        out = first
        for s in sets[1:]:
            out = fn(out, s)
        return out
    out = first
    for s in sets[1:]:
        out = set_algebra(out, s, op)
    return out


def _eval_clause(
    label: str,
    combinator: str,
    sets: Sequence[ClauseSet],
    checkpoints: Sequence[int],
    delta: float,
) -> tuple[bool, list[ClauseReport]]:
    if combinator == "ALL_intersect":
        rep = _clause_report(
            f"{label} intersect", _combine(sets, "intersect"), checkpoints, delta
        )
        return rep.passed, [rep]
    if combinator == "ANY_union":
        rep = _clause_report(
            f"{label} union", _combine(sets, "union"), checkpoints, delta
        )
        return rep.passed, [rep]
    reports = [
        _clause_report(f"{label}[j={j + 1}]", s, checkpoints, delta)
        for j, s in enumerate(sets)
    ]
    if combinator == "FORALL_each":
        return all(r.passed for r in reports), reports
    if combinator == "EXISTS_one":
        return any(r.passed for r in reports), reports
    raise ValueError(f"unknown combinator {combinator!r}")


def eval_condition(
    spec: ConditionSpec,
    upper_sets: Sequence[ClauseSet],
    lower_sets: Sequence[ClauseSet],
    checkpoints: Sequence[int],
    delta: float,
) -> Verdict:
    """Apply the condition's combinators to the per-map clause sets.

    ALL_intersect takes the density of the intersection across maps,
    ANY_union of the union, FORALL_each demands every map's set pass
    individually, EXISTS_one some map's set.  The verdict holds iff both
    the upper and the lower clause pass.
    """
    if len(upper_sets) != len(lower_sets) or not upper_sets:
        raise ValueError("need matching nonempty upper and lower set lists")
    up_ok, up_reports = _eval_clause(
        "upper", spec.upper_combinator, upper_sets, checkpoints, delta
    )
    low_ok, low_reports = _eval_clause(
        "lower", spec.lower_combinator, lower_sets, checkpoints, delta
    )
    return Verdict(
        holds=up_ok and low_ok,
        delta=delta,
        clauses=tuple(up_reports + low_reports),
    )


def evaluate_trace(
    t: TraceMatrix,
    i: int,
    sigma: float,
    eps: float,
    delta: float,
) -> Verdict:
    """clause_sets + eval_condition in one step for condition i."""
    uppers, lowers = clause_sets(t, sigma, eps)
    return eval_condition(
        condition_spec(i), uppers, lowers, t.checkpoints, delta
    )


# ---------------------------------------------------------------------------
# vector classification


def default_schedule(k: np.ndarray) -> np.ndarray:
    """Default divergence schedule g(k) = log(1 + k)."""
    return np.log1p(np.asarray(k, dtype=float))


def scaled_log_schedule(divisor: float) -> Callable[[np.ndarray], np.ndarray]:
    """g(k) = log(1 + k) / divisor, for slower-growing orbit families."""
    return lambda k: np.log1p(np.asarray(k, dtype=float)) / divisor


def classify_near_zero(
    traces: np.ndarray,
    kind: int,
    delta: float,
    checkpoints: Sequence[int],
    tol_zero: float = 1e-6,
    witness_sets: Sequence[Blocks] | None = None,
) -> Verdict:
    """Smallness classification of an orbit trace, types 1-4.

    Type 1 wants one set where the max-over-maps envelope stays below
    tol_zero; type 2 takes the union of the per-map smallness sets; type 3
    demands every per-map set fill up; type 4 some map's set.  Early large
    values are forgiven by the checkpoint sup, standing in for limits
    along the set.  witness_sets (types 3/4 only) supplies per-map block
    sets certified by their own checkpoint tables; in-horizon members are
    verified against tol_zero, deeper members are the caller's bounds.
    """
    vals = np.asarray(traces, dtype=float)
    small = vals < tol_zero
    if witness_sets is not None:
        if kind not in (3, 4):
            raise ValueError("witness sets apply to per-map types 3 and 4")
        n, K = vals.shape
        if len(witness_sets) != n:
            raise ValueError("need one witness set per map")
        reports = []
        for j, wset in enumerate(witness_sets):
            verified = all(
                small[j, k - 1]
                for lo, hi in wset.intervals
                if lo <= K
                for k in range(lo, min(hi, K) + 1)
            )
            rep = _clause_report(
                f"near_zero[j={j + 1}]", wset, wset.checkpoints, delta
            )
            reports.append(
                ClauseReport(
                    name=rep.name,
                    backend=rep.backend,
                    density=rep.density,
                    passed=rep.passed and verified,
                    profile=rep.profile,
                )
            )
        notes = (
            "witness-set members beyond the trace horizon are certified by"
            " the caller's closed-form bounds",
        )
        ok = (
            all(r.passed for r in reports)
            if kind == 3
            else any(r.passed for r in reports)
        )
        return Verdict(holds=ok, delta=delta, clauses=tuple(reports), notes=notes)
    if kind == 1:
        sets = [np.all(small, axis=0)]
        comb = "ALL_intersect"
    elif kind == 2:
        sets = [np.any(small, axis=0)]
        comb = "ANY_union"
    elif kind == 3:
        sets = list(small)
        comb = "FORALL_each"
    elif kind == 4:
        sets = list(small)
        comb = "EXISTS_one"
    else:
        raise ValueError("near-zero type must lie in 1..4")
    ok, reports = _eval_clause("near_zero", comb, sets, checkpoints, delta)
    return Verdict(holds=ok, delta=delta, clauses=tuple(reports))


def classify_unbounded(
    traces: np.ndarray,
    kind: int,
    delta: float,
    checkpoints: Sequence[int],
    schedule: Callable[[np.ndarray], np.ndarray] = default_schedule,
    witness_sets: Sequence[Blocks] | None = None,
) -> Verdict:
    """Divergence classification of an orbit trace, types 1-4.

    Values must clear the schedule g(k): type 1 on one set for all maps at
    once (the min envelope), type 2 for the sum over maps, types 3/4 per
    map / for some map.  witness_sets (types 3/4 only) supplies per-map
    block sets whose density is certified by their own checkpoint tables,
    possibly beyond the trace horizon; in-horizon members are still
    verified against the schedule, out-of-horizon members are the
    caller's certificates.
    """
    vals = np.asarray(traces, dtype=float)
    if np.all(vals == 0):
        raise ValueError("identically zero orbit trace cannot diverge")
    n, K = vals.shape
    g = np.asarray(schedule(np.arange(1, K + 1)), dtype=float)
    big = vals >= g
    notes: tuple[str, ...] = ()
    if witness_sets is not None:
        if kind not in (3, 4):
            raise ValueError("witness sets apply to per-map types 3 and 4")
        if len(witness_sets) != n:
            raise ValueError("need one witness set per map")
        reports = []
        for j, wset in enumerate(witness_sets):
            # walk only the in-horizon portion; deep blocks stay symbolic
            verified = all(
                big[j, k - 1]
                for lo, hi in wset.intervals
                if lo <= K
                for k in range(lo, min(hi, K) + 1)
            )
            rep = _clause_report(
                f"unbounded[j={j + 1}]", wset, wset.checkpoints, delta
            )
            reports.append(
                ClauseReport(
                    name=rep.name,
                    backend=rep.backend,
                    density=rep.density,
                    passed=rep.passed and verified,
                    profile=rep.profile,
                )
            )
        notes = (
            "witness-set members beyond the trace horizon are certified by"
            " the caller's closed-form bounds",
        )
        ok = (
            all(r.passed for r in reports)
            if kind == 3
            else any(r.passed for r in reports)
        )
        return Verdict(holds=ok, delta=delta, clauses=tuple(reports), notes=notes)
    if kind == 1:
        sets = [np.all(big, axis=0)]
        comb = "ALL_intersect"
    elif kind == 2:
        sets = [vals.sum(axis=0) >= g]
        comb = "ANY_union"
    elif kind == 3:
        sets = list(big)
        comb = "FORALL_each"
    elif kind == 4:
        sets = list(big)
        comb = "EXISTS_one"
    else:
        raise ValueError("unbounded type must lie in 1..4")
    ok, reports = _eval_clause("unbounded", comb, sets, checkpoints, delta)
    return Verdict(holds=ok, delta=delta, clauses=tuple(reports))


IRREGULAR_PAIRING: dict[int, tuple[int, int]] = {
    1: (1, 1),
    2: (3, 1),
    3: (3, 3),
    4: (4, 3),
    5: (3, 4),
    6: (4, 1),
    7: (1, 2),
    8: (1, 4),
    9: (1, 2),
    10: (3, 2),
    11: (2, 1),
    12: (2, 3),
}


@dataclass(frozen=True)
class IrregularReport:
    """Joint verdict plus both halves of the i-th irregularity pairing."""

    holds: bool
    index: int
    pairing: tuple[int, int]
    near_zero: Verdict
    unbounded: Verdict
    notes: tuple[str, ...] = ()


def classify_irregular(
    x,
    family: OperatorFamily,
    i: int,
    K: int,
    m: int | None = None,
    delta: float = 0.25,
    checkpoints: Sequence[int] | None = None,
    tol_zero: float = 1e-6,
    schedule: Callable[[np.ndarray], np.ndarray] = default_schedule,
    selection_small: str = "single_valued",
    selection_big: str = "single_valued",
    witness_small: Sequence[Blocks] | None = None,
    witness_big: Sequence[Blocks] | None = None,
) -> IrregularReport:
    """Irregularity of a single vector under condition i's type pairing.

    Pairs a near-zero type with an unbounded type per the fixed table; for
    i = 1 both halves read one shared trace (a single selection serves
    both clauses).  Indices 7 and 9 carry the identical pairing (1, 2) and
    the report surfaces both readings rather than picking one.
    """
    if not x.entries:
        raise ValueError("the zero vector cannot be irregular")
    if i not in IRREGULAR_PAIRING:
        raise ValueError("condition index must lie in 1..12")
    cps = tuple(checkpoints) if checkpoints else default_checkpoints(K)
    nz_type, unb_type = IRREGULAR_PAIRING[i]
    small_sel = selection_small
    big_sel = selection_big
    if i == 1:
        # one shared selection serves both clauses
        big_sel = small_sel
    trace_small = orbit_trace(family, x, K, m, small_sel)
    trace_big = (
        trace_small
        if big_sel == small_sel
        else orbit_trace(family, x, K, m, big_sel)
    )
    near = classify_near_zero(
        trace_small, nz_type, delta, cps, tol_zero, witness_small
    )
    unb = classify_unbounded(
        trace_big, unb_type, delta, cps, schedule, witness_big
    )
    notes: tuple[str, ...] = ()
    if i in (7, 9):
        notes = (
            "indices 7 and 9 share the type pairing (1, 2); they differ"
            " only in the combinator reading (each-map intersection vs"
            " union intersection) and both readings are reported",
        )
    if i == 1:
        notes = notes + (
            "type-1 pairing evaluated on one shared selection trace",
        )
    return IrregularReport(
        holds=near.holds and unb.holds,
        index=i,
        pairing=(nz_type, unb_type),
        near_zero=near,
        unbounded=unb,
        notes=notes,
    )


# ---------------------------------------------------------------------------
# scrambled sets


@dataclass(frozen=True)
class PairVerdict:
    pair: tuple[int, int]
    eps: float
    verdict: Verdict


@dataclass(frozen=True)
class ScrambledReport:
    holds: bool
    condition: int
    sigma: float
    table: tuple[PairVerdict, ...]


def verify_scrambled_set(
    vectors: Sequence,
    family: OperatorFamily,
    i: int,
    sigma: float,
    eps_list: Sequence[float],
    K: int,
    checkpoints: Sequence[int] | None = None,
    delta: float = 0.25,
    metric: str = "norm",
    selection: str = "single_valued",
    m: int = 1,
) -> ScrambledReport:
    """Condition i over every unordered pair and every eps; conjunction.

    Duplicate vectors are rejected: the scrambling demand is vacuous on
    equal points.
    """
    if len(vectors) < 2:
        raise ValueError("need at least two vectors")
    for a in range(len(vectors)):
        for b in range(a + 1, len(vectors)):
            if _vectors_equal(vectors[a], vectors[b]):
                raise ValueError(f"vectors {a} and {b} coincide")
    cps = tuple(checkpoints) if checkpoints else default_checkpoints(K)
    rows: list[PairVerdict] = []
    for a in range(len(vectors)):
        for b in range(a + 1, len(vectors)):
            t = pair_trace(
                family,
                vectors[a],
                vectors[b],
                metric=metric,
                K=K,
                checkpoints=cps,
                selection=selection,
                m=m,
            )
            for eps in eps_list:
                uppers, lowers = clause_sets(t, sigma, eps)
                verdict = eval_condition(
                    condition_spec(i), uppers, lowers, cps, delta
                )
                rows.append(PairVerdict((a, b), float(eps), verdict))
    return ScrambledReport(
        holds=all(r.verdict.holds for r in rows),
        condition=i,
        sigma=float(sigma),
        table=tuple(rows),
    )


# ---------------------------------------------------------------------------
# implication lattice


_LATTICE_BASE: dict[int, frozenset[int]] = {
    1: frozenset(range(1, 13)) - {1},
    2: frozenset({3, 4, 5, 6, 10, 11, 12}),
    3: frozenset({4, 5, 10, 12}),
    4: frozenset({12}),
    5: frozenset({10}),
    6: frozenset({4, 11, 12}),
    7: frozenset({3, 4, 5, 8, 9, 10, 12}),
    8: frozenset({5, 9, 10}),
    9: frozenset({10}),
    10: frozenset(),
    11: frozenset({12}),
    12: frozenset(),
}


def implication_lattice() -> frozenset[tuple[int, int]]:
    """The closed implication relation on condition indices (reflexive)."""
    pairs = {(i, i) for i in range(1, 13)}
    for src, dsts in _LATTICE_BASE.items():
        pairs.update((src, d) for d in dsts)
    return frozenset(pairs)


def implies(i1: int, i2: int) -> bool:
    return (i1, i2) in implication_lattice()


def lattice_consistency(
    upper_sets: Sequence[ClauseSet],
    lower_sets: Sequence[ClauseSet],
    checkpoints: Sequence[int],
    delta: float = 0.0,
) -> dict:
    """Evaluate all twelve conditions on one configuration and check every
    lattice edge: a passing stronger condition must pass the weaker one.

    Returns {"verdicts": {i: bool}, "violations": [(i1, i2), ...]}; the
    violations list must come back empty on exact-set configurations.
    """
    verdicts = {
        i: eval_condition(
            condition_spec(i), upper_sets, lower_sets, checkpoints, delta
        ).holds
        for i in range(1, 13)
    }
    violations = [
        (i1, i2)
        for (i1, i2) in implication_lattice()
        if i1 != i2 and verdicts[i1] and not verdicts[i2]
    ]
    return {"verdicts": verdicts, "violations": violations}


# ---------------------------------------------------------------------------
# diagonal equivalence


def diagonal_equivalence(
    t: TraceMatrix,
    sigma: float,
    eps: float,
    checkpoints: Sequence[int] | None = None,
    delta: float = 0.25,
) -> tuple[bool, bool]:
    """(condition-9 verdict on components, single-trace verdict on the
    diagonal max) -- equal by the exact set identities
    {k : max_j s >= sigma} = union U_j and {k : max_j s < eps} =
    intersection L_j, which are asserted pointwise.
    """
    cps = tuple(checkpoints) if checkpoints else t.checkpoints
    uppers, lowers = clause_sets(t, sigma, eps)
    nine = eval_condition(condition_spec(9), uppers, lowers, cps, delta)
    diag = np.max(t.values, axis=0)
    diag_upper = diag >= sigma
    diag_lower = diag < eps
    union_u = np.logical_or.reduce(uppers)
    inter_l = np.logical_and.reduce(lowers)
    if not (
        np.array_equal(diag_upper, union_u)
        and np.array_equal(diag_lower, inter_l)
    ):
        raise AssertionError("diagonal set identities violated")
    up_rep = _clause_report("diag upper", diag_upper, cps, delta)
    low_rep = _clause_report("diag lower", diag_lower, cps, delta)
    return nine.holds, up_rep.passed and low_rep.passed


# ---------------------------------------------------------------------------
# strict vs weak coset selections


def mlo_chaos_regime(
    t: TraceMatrix,
    i: int,
    sigma: float,
    eps: float,
    delta: float,
) -> dict:
    """Separate-selection (weak) vs single-selection (strict) verdicts.

    Weak reads the upper clause off the max-selection matrix and the lower
    clause off the min-selection matrix.  Strict demands one matrix do
    both jobs; the canonical single selections tried are min, max, and the
    two threshold-greedy mixtures.  Regime "weak" means the dual verdict
    passes while no single candidate does.
    """
    if t.selection_mode != "mlo_dual":
        raise ValueError("regime analysis needs an mlo_dual trace")
    weak = evaluate_trace(t, i, sigma, eps, delta)
    lo, hi = t.values, t.dual_values
    candidates = {
        "min": lo,
        "max": hi,
        "favor_upper": np.where(hi >= sigma, hi, lo),
        "favor_lower": np.where(lo < eps, lo, hi),
    }
    strict_hits = []
    for name, mat in candidates.items():
        single = TraceMatrix(mat, t.checkpoints, "single_valued")
        if evaluate_trace(single, i, sigma, eps, delta).holds:
            strict_hits.append(name)
    strict = bool(strict_hits)
    regime = "strict" if strict else ("weak" if weak.holds else "none")
    return {
        "weak": weak.holds,
        "strict": strict,
        "strict_witnesses": strict_hits,
        "regime": regime,
        "weak_verdict": weak,
    }


# ---------------------------------------------------------------------------
# restriction


def restrict_family(
    family: OperatorFamily, predicate: Callable[[object], bool]
) -> OperatorFamily:
    """Same maps, domain gated by the predicate (a subspace membership
    test); out-of-domain vectors raise DomainViolation."""

    def gated(j: int, k: int, x):
        if not predicate(x):
            raise DomainViolation("vector lies outside the restricted domain")
        return family.apply_fn(j, k, x)

    return OperatorFamily(
        kind=family.kind,
        n_ops=family.n_ops,
        space=family.space,
        apply_fn=gated,
        params=dict(family.params, restricted=True),
    )
