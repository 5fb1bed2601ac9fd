"""Acceptance gate: sixteen end-to-end checks, one verdict line each.

Every check prints a single "C## PASS ..." / "C## FAIL ..." line (visible
with ``pytest -s``) and is its own test, so ``pytest -v`` also shows one
row per criterion.
"""

import io
import math
from contextlib import redirect_stdout
from fractions import Fraction

import numpy as np

from ddchaos import cli
from ddchaos.chaos import (
    TraceMatrix,
    classify_unbounded,
    default_checkpoints,
    diagonal_equivalence,
    lattice_consistency,
    mlo_chaos_regime,
    orbit_trace,
    verify_scrambled_set,
)
from ddchaos.criteria import (
    NotReachable,
    chain_recursion,
    interleave_index,
    interleave_inverse,
    q_density_criterion,
    summability_test,
)
from ddchaos.indexset import (
    BlockPatternSet,
    BlockSkeleton,
    ExactSet,
    full_density_partition,
    q_set,
)
from ddchaos.mlo import (
    AffineCoset,
    NotAttainable,
    Subspace,
    extension_power_coset,
    min_seminorm,
    select_exceeding,
)
from ddchaos.operators import (
    Regularizer,
    TwoRunWeights,
    WeightSequence,
    b_jk,
    regularized_power_apply,
)
from ddchaos.scenarios import list_scenarios, run_scenario, scenario_family
from ddchaos.space import (
    GridFunction,
    SeminormSpace,
    SeqVector,
    frechet_metric,
    metric_properties_check,
    product_metric_max,
    product_metric_sum,
    seminorm,
)
from ddchaos.young import YoungFunction, complementary_young, luxemburg_norm


def _line(num: int, ok: bool, desc: str) -> None:
    tag = "PASS" if ok else "FAIL"
    print(f"C{num:02d} {tag} {desc}", flush=True)
    assert ok, f"criterion C{num:02d} failed: {desc}"


def _rand_vec(rng: np.random.Generator, top: int = 9) -> SeqVector:
    support = rng.choice(np.arange(1, top + 1), size=4, replace=False)
    return SeqVector(
        {int(n): float(rng.uniform(-5.0, 5.0)) for n in support}
    )


def _claims(report: dict) -> dict[str, tuple[bool, bool]]:
    return {
        c["label"]: (bool(c["expected"]), bool(c["actual"]))
        for c in report["claims"]
    }


# ---------------------------------------------------------------------------


def test_c01_tuple_metric_sandwich():
    rng = np.random.default_rng(101)
    sp = SeminormSpace.frechet_truncation()
    ok = True
    for trial in range(1000):
        n = (2, 3, 5)[trial % 3]
        xs = [_rand_vec(rng) for _ in range(n)]
        ys = [_rand_vec(rng) for _ in range(n)]
        per = [frechet_metric(sp, x, y) for x, y in zip(xs, ys)]
        lo = product_metric_max(per)
        d = product_metric_sum(sp, xs, ys)
        if not (lo <= d * (1.0 + 1e-9) + 1e-15):
            ok = False
        if not (d <= n * n * lo * (1.0 + 1e-9) + 1e-15):
            ok = False
    _line(1, ok, "summed tuple metric sits between max and N^2 * max "
                 "on 1000 random tuples")


def test_c02_metric_axioms_randomized():
    rng = np.random.default_rng(202)
    sp = SeminormSpace.frechet_truncation()
    ok = True
    for _ in range(1000):
        x, y, u, v = (_rand_vec(rng) for _ in range(4))
        out = metric_properties_check(
            sp, x, y, u, v,
            alpha=float(rng.uniform(-3.0, 3.0)),
            beta=float(rng.uniform(-3.0, 3.0)),
            c=float(rng.uniform(-4.0, 4.0)),
            tol=1e-9,
        )
        if not (out["shift_subadditive"] and out["scaling_bound"]
                and out["separation_bound"]):
            ok = False
    _line(2, ok, "translation-invariant metric axioms verified on 1000 "
                 "random tuples at 1e-9")


def test_c03_power_gauge_and_conjugate_inequality():
    rng = np.random.default_rng(303)
    ok = True
    for p in (1.0, 2.0, 3.0):
        phi = YoungFunction.power(p)
        lp = SeminormSpace.lp(p)
        for _ in range(50):
            f = _rand_vec(rng, top=15)
            got = luxemburg_norm(f, phi)
            want = p ** (-1.0 / p) * seminorm(lp, 1, f)
            if abs(got - want) > 1e-8 * max(1.0, abs(want)):
                ok = False
    for p in (2.0, 3.0):
        phi = YoungFunction.power(p)
        for _ in range(50):
            a = float(rng.uniform(1e-3, 4.0))
            b = float(rng.uniform(1e-3, 4.0))
            if a * b > phi.value(a) + complementary_young(phi, b) + 1e-9:
                ok = False
    _line(3, ok, "gauge norm matches p^(-1/p) * lp closed form (1e-8) and "
                 "the product inequality holds on random pairs")


def _random_exact(rng: np.random.Generator) -> ExactSet:
    kind = int(rng.integers(0, 4))
    if kind == 0:
        return ExactSet.full()
    if kind == 1:
        return ExactSet.finite(
            int(v) for v in rng.integers(1, 60, size=int(rng.integers(1, 8)))
        )
    s = ExactSet.progression(
        int(rng.integers(1, 7)), int(rng.integers(1, 7))
    )
    if kind == 3:
        s = s.union(
            ExactSet.progression(int(rng.integers(1, 7)),
                                 int(rng.integers(1, 7)))
        )
    return s


def test_c04_implication_lattice_consistency():
    rng = np.random.default_rng(404)
    ok = True
    for _ in range(500):
        n_maps = int(rng.integers(1, 4))
        ups = [_random_exact(rng) for _ in range(n_maps)]
        lows = [_random_exact(rng) for _ in range(n_maps)]
        out = lattice_consistency(ups, lows, (200, 1000), delta=0.0)
        if out["violations"]:
            ok = False
    _line(4, ok, "no implication-order violations across 500 random "
                 "exact-set configurations")


_GALLERY = (
    "shared-upper-split-lower",
    "split-upper-split-lower",
    "split-upper-complement-lower",
    "swapped-pair",
    "chaotic-plus-doubling",
    "forall-upper-common-lower",
    "chaotic-plus-zero",
    "rank-split-upper",
    "rank-split-upper-union",
    "rank-split-lower",
    "split-upper-rank-lower",
)


def test_c05_gallery_truth_table_and_partition_density():
    ok = all(run_scenario(name)["all_match"] for name in _GALLERY)
    for n_parts in (2, 3, 5):
        parts = full_density_partition(n_parts, growth=2, horizon=10**6)
        for part in parts:
            pts = part.profile().points
            for i, (_, ratio) in enumerate(pts, start=1):
                if ratio < Fraction(1) - Fraction(2, i):
                    ok = False
    _line(5, ok, "all eleven gallery truth tables match and every "
                 "partition class approaches full upper density")


def test_c06_scrambled_set_on_alternating_family():
    fam = scenario_family("alternating-diagonals")
    rng = np.random.default_rng(606)
    pair = [
        SeqVector({1: float(rng.uniform(0.5, 1.5)),
                   2: float(rng.uniform(-1.5, -0.5))}),
        SeqVector({1: float(rng.uniform(-1.5, -0.5)),
                   2: float(rng.uniform(0.5, 1.5))}),
    ]
    rep = verify_scrambled_set(
        [SeqVector.zero(), SeqVector.basis(1), *pair],
        fam, 1, sigma=1.0, eps_list=[0.5, 0.05], K=2000,
        checkpoints=(2, 18, 530, 2000), delta=0.25,
    )
    ok = bool(rep.holds) and len(rep.table) == 12
    ok = ok and all(pv.verdict.holds for pv in rep.table)
    _line(6, ok, "four-point set is distributionally scrambled for the "
                 "alternating diagonal pair at sigma = 1")


def test_c07_two_speed_forward_shifts():
    rep = run_scenario("two-speed-forward-shifts")
    claims = _claims(rep)
    ok = rep["all_match"]
    for label in (
        "deep-run endpoint exponent certificates pass",
        "deep-run linear-rate certificates pass",
        "first map: the basis orbit collapses on slow runs and explodes "
        "on fast runs",
        "second map: the mirrored classification passes",
        "k-th power norms reach 2**k on both maps",
    ):
        exp, act = claims[label]
        if not (exp and act):
            ok = False
    fam2 = scenario_family("two-speed-forward-shifts")
    lp2 = SeminormSpace.lp(2.0)
    rng = np.random.default_rng(707)
    for _ in range(20):
        support = rng.choice(np.arange(1, 13), size=4, replace=False)
        v = SeqVector(
            {int(n): float(rng.uniform(0.2, 1.0)) for n in support}
        )
        floor = 2.0 * abs(v.entries[min(v.entries)])
        for k in range(1, 51):
            s = seminorm(lp2, 1, fam2.apply(1, k, v)) + seminorm(
                lp2, 1, fam2.apply(2, k, v)
            )
            if s < floor * (1.0 - 1e-9):
                ok = False
    tr = orbit_trace(fam2, SeqVector.basis(1), 1000)
    joint = classify_unbounded(tr, 1, 0.3, default_checkpoints(1000))
    if joint.holds:
        ok = False
    _line(7, ok, "two-speed pair: each map alone is irregular, the summed "
                 "images keep a two-sided floor, and the joint type-1 "
                 "divergence fails")


def test_c08_sliding_window_exponents_and_reciprocal_pair():
    tw = TwoRunWeights.concrete(4)
    prefix = tw.exponent_prefix(11000)
    starts = np.arange(1, 1001)
    base = prefix[starts - 1]
    worst = -np.inf
    for k0 in range(0, 10000, 2000):
        ks = np.arange(k0 + 1, k0 + 2001)
        window = prefix[(starts - 1)[:, None] + ks[None, :]] - base[:, None]
        joint = np.minimum(window, -window)
        worst = max(worst, float(joint.max()))
    ok = worst == 0.0
    rep = run_scenario("reciprocal-weight-shifts")
    claims = _claims(rep)
    ok = ok and rep["all_match"]
    for label in (
        "every joint sliding window has a non-growing side",
        "first map alone blows the summable vector up on the fast runs",
        "second map alone blows it up on the slow runs",
        "fast-run endpoints certify at least square-root-of-2**k growth",
    ):
        exp, act = claims[label]
        if not (exp and act):
            ok = False
    _line(8, ok, "every window exponent pair has a non-positive side "
                 "(1000 starts x 10000 lengths) and the reciprocal "
                 "scenario claims all hold")


def test_c09_regularized_window_norms():
    reg = Regularizer.inverse_factorial(3)
    weights = [WeightSequence.geometric(1), WeightSequence.geometric(2)]
    ok = True
    for j in (1, 2):
        for k in range(1, 41):
            val = b_jk(weights[j - 1], reg, j, k, 1000, anchor="output")
            if val < 2.0 ** (j * k) * float(k) ** (j - 3):
                ok = False
    in_anchor = b_jk(weights[0], reg, 1, 3, 1000, anchor="input")
    if not (in_anchor < 8.0 / 9.0):
        ok = False
    if not math.isclose(in_anchor, 2.0 / 9.0, rel_tol=1e-9):
        ok = False
    for j in (1, 2):
        srep = summability_test(
            lambda k, jj=j: b_jk(weights[jj - 1], reg, jj, k, 1000,
                                 anchor="output"),
            1, 60,
        )
        if not srep.passed or max(srep.evidence["tail_increments"]) >= 1e-6:
            ok = False
    rng = np.random.default_rng(909)
    for _ in range(100):
        support = rng.choice(np.arange(1, 21), size=5, replace=False)
        x = SeqVector({int(n): float(rng.normal()) for n in support})
        j = int(rng.integers(1, 3))
        k = int(rng.integers(1, 9))
        out = regularized_power_apply(weights[j - 1], reg, j, k, x)
        for idx, val in x.entries.items():
            n = idx - k
            if n < 1:
                continue
            w = math.prod(
                weights[j - 1].value_at(i) for i in range(n, n + k)
            )
            want = math.exp(reg.log_at(idx)) * w * val
            got = out.entries.get(n)
            if got is None or abs(got.to_float() - want) > 1e-10 * abs(want):
                ok = False
    _line(9, ok, "output-damped window norms clear 2**(jk) * k**(j-3), the "
                 "input-damped anchor at (1,3) equals 2/9 and misses the "
                 "bound, reciprocals are summable, and the closed-form "
                 "power map matches the coordinate product at 1e-10")


def test_c10_constant_weight_divergence_schedules():
    rep = run_scenario("uniform-weight-shifts")
    claims = _claims(rep)
    ok = rep["all_match"]
    want = {
        "the displayed lower bound holds at every step": True,
        "both orbits clear the damped logarithmic schedule on every step":
            True,
        "the undamped schedule is cleared from the first step": False,
    }
    for label, expected in want.items():
        exp, act = claims[label]
        if exp is not expected or act is not expected:
            ok = False
    _line(10, ok, "constant-weight orbits clear the damped logarithmic "
                  "schedule everywhere but not the undamped one")


def test_c11_preimage_chains_match_forward_simulation():
    rng = np.random.default_rng(1111)
    ok = True
    for _ in range(200):
        n_j = int(rng.integers(1, 4))
        tables = {
            j: np.concatenate(
                ([0], np.cumsum(rng.integers(0, 2, size=4096)) + j)
            )
            for j in range(1, n_j + 1)
        }

        def a(i, j, _t=tables):
            return int(_t[j][i])

        n = int(rng.integers(2, 2000))
        j = int(rng.integers(1, n_j + 1))
        k = int(rng.integers(1, 12))
        got = chain_recursion(n, j, a, k)
        chain, cur, broke = [], n, None
        for step in range(1, k + 1):
            pre = [i for i in range(1, cur + 1) if i + a(i, j) == cur]
            if not pre:
                broke = NotReachable(step=step, partial=tuple(chain))
                break
            chain.append(pre[0])
            cur = pre[0]
        want = broke if broke is not None else chain
        if got != want:
            ok = False
    for n, j, k in ((40, 3, 13), (40, 3, 14), (7, 2, 3), (100, 1, 99)):
        got = chain_recursion(n, j, lambda i, jj: jj, k)
        if n - j * k >= 1:
            if got != [n - j * s for s in range(1, k + 1)]:
                ok = False
        else:
            bad = next(s for s in range(1, k + 1) if n - j * s < 1)
            want = NotReachable(
                step=bad,
                partial=tuple(n - j * s for s in range(1, bad)),
            )
            if got != want:
                ok = False
    _line(11, ok, "preimage chains agree with brute-force forward "
                  "simulation on 200 random jump tables and with the "
                  "constant-jump closed form")


def test_c12_scaled_recurrence_sets_exact():
    rng = np.random.default_rng(1212)
    ok = True
    horizon = 10**4
    ks = np.arange(1, horizon + 1)
    for _ in range(50):
        s = _random_exact(rng)
        ratios = tuple(
            int(v)
            for v in rng.choice([1, 2, 3, 4], size=int(rng.integers(1, 4)),
                                replace=False)
        )
        base_mask = s.mask(4 * horizon)
        want = np.ones(horizon, dtype=bool)
        for r in ratios:
            vals = r * ks - 1
            good = vals >= 1
            member = np.zeros(horizon, dtype=bool)
            member[good] = base_mask[vals[good] - 1]
            want &= member
        got = q_set(s, ratios).mask(horizon)
        if not np.array_equal(got, want):
            ok = False
    full_rep = q_density_criterion(ExactSet.full(), (1, 2, 3), Fraction(1))
    if not full_rep.passed or full_rep.evidence["density"] != "1/1":
        ok = False
    _line(12, ok, "scaled-recurrence sets match brute-force membership on "
                  "50 random configurations and the full set keeps exact "
                  "density 1")


def test_c13_diagonal_max_equals_condition_nine():
    rng = np.random.default_rng(1313)
    ok = True
    for _ in range(200):
        n_maps = int(rng.integers(1, 4))
        vals = rng.uniform(0.0, 3.0, size=(n_maps, 256))
        t = TraceMatrix(vals, (64, 256), "single_valued")
        delta = float(rng.choice([0.0, 0.25, 0.5]))
        nine, diag = diagonal_equivalence(t, 1.0, 0.5, delta=delta)
        if nine is not diag:
            ok = False
    _line(13, ok, "condition 9 on components equals the single-trace "
                  "verdict on the diagonal max for 200 random traces")


def test_c14_multivalued_selection_regimes():
    lp2 = SeminormSpace.lp(2.0)
    x = SeqVector.from_pairs([[1, 0.4], [3, -1.1], [6, 0.25]])
    ok = True
    for k in range(1, 21):
        val, _ = min_seminorm(extension_power_coset(1, 1, k, x), lp2, 1)
        if val < 1.1:
            ok = False
    span = AffineCoset(SeqVector.zero(), Subspace.span_of_basis([1]))
    c0 = SeminormSpace.c0()
    for k in range(1, 21):
        member = select_exceeding(span, c0, 1, 2.0**k)
        if seminorm(c0, 1, member) <= 2.0**k:
            ok = False
    grid = SeminormSpace.grid_sup()
    base = GridFunction.spike(Fraction(0), 1.0)
    try:
        select_exceeding(AffineCoset(base, Subspace.support_beyond(5)),
                         grid, 3, 2.0)
        ok = False
    except NotAttainable:
        pass
    capped = AffineCoset(
        SeqVector.from_pairs([[1, 1.0]]), Subspace.span_of_basis([10])
    )
    try:
        select_exceeding(capped, SeminormSpace.frechet_truncation(), 2, 50.0)
        ok = False
    except NotAttainable:
        pass
    k_len = 2000
    zeros = np.zeros((1, k_len))
    highs = np.full((1, k_len), 3.0)
    weak = mlo_chaos_regime(
        TraceMatrix(zeros, (k_len,), "mlo_dual", dual_values=highs),
        1, 1.0, 0.5, 0.0,
    )
    if weak["regime"] != "weak":
        ok = False
    mask = BlockPatternSet.piece(BlockSkeleton(), 0).mask(k_len)
    w = np.where(mask, 3.0, 0.0)[None, :]
    strict = mlo_chaos_regime(
        TraceMatrix(w, (18, k_len), "mlo_dual", dual_values=w.copy()),
        3, 1.0, 0.5, 0.4,
    )
    if strict["regime"] != "strict":
        ok = False
    rep = run_scenario("full-relation-pair")
    claims = _claims(rep)
    if not rep["all_match"]:
        ok = False
    for label in (
        "separate selections satisfy all twelve conditions",
        "no uniform single selection certifies the strict reading",
        "an alternating selection realizes condition 1 exactly",
    ):
        exp, act = claims[label]
        if not (exp and act):
            ok = False
    _line(14, ok, "coset selections attain or provably cap thresholds and "
                  "the weak/strict selection regimes split as expected")


def test_c15_interleaving_bijection():
    ok = True
    for n in (1, 2, 3, 5):
        for j in range(1, n + 1):
            for k in range(1, 1001):
                idx = interleave_index(j, k, n)
                if interleave_inverse(idx, n) != (j, k):
                    ok = False
        seen = [interleave_inverse(idx, n) for idx in range(1, 5001)]
        back = [interleave_index(j, k, n) for j, k in seen]
        if back != list(range(1, 5001)) or len(set(seen)) != 5000:
            ok = False
    _line(15, ok, "index interleaving round-trips in both directions for "
                  "widths 1, 2, 3 and 5")


def test_c16_every_scenario_reproduces_byte_identical_reports():
    ok = True
    for row in list_scenarios():
        outs = []
        for _ in range(2):
            buf = io.StringIO()
            with redirect_stdout(buf):
                code = cli.main(["run", row["name"]])
            if code != 0:
                ok = False
            outs.append(buf.getvalue())
        if outs[0] != outs[1] or not outs[0]:
            ok = False
    _line(16, ok, "running every registered scenario twice produces "
                  "byte-identical passing reports")
