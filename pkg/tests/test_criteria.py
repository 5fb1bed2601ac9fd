"""Sufficient-condition checkers: summability, recursions, return sets."""

import math
import random
from fractions import Fraction

import numpy as np
import pytest

from ddchaos.criteria import (
    NotReachable,
    chain_recursion,
    check_I0,
    check_I_inf,
    interleave_index,
    interleave_inverse,
    p_membership,
    q_density_criterion,
    qwea_condition,
    summability_test,
)
from ddchaos.indexset import ExactSet
from ddchaos.operators import (
    WeightSequence,
    backward_shift_family,
    translation_family,
)
from ddchaos.space import SeminormSpace, SeqVector
from ddchaos.young import YoungFunction


def test_interleave_roundtrip():
    for N in (1, 2, 3, 5):
        for j in range(1, N + 1):
            for k in range(1, 40):
                idx = interleave_index(j, k, N)
                assert interleave_inverse(idx, N) == (j, k)


def test_interleave_is_a_bijection_onto_naturals():
    N = 3
    seen = sorted(
        interleave_index(j, k, N) for j in range(1, N + 1) for k in range(1, 11)
    )
    assert seen == list(range(1, 31))
    with pytest.raises(ValueError):
        interleave_index(4, 1, N)
    with pytest.raises(ValueError):
        interleave_inverse(0, N)


def test_chain_recursion_constant_jumps():
    # constant jump a = j: preimages of i -> i + j walk down in j-steps
    for j in (1, 2, 3):
        for k in (1, 2, 5):
            n = 1 + j * k
            out = chain_recursion(n, j, lambda i, jj: jj, k)
            assert out == [n - j * s for s in range(1, k + 1)]


def test_chain_recursion_reports_first_bad_step():
    out = chain_recursion(9, 1, lambda i, j: i + j, 2)
    assert isinstance(out, NotReachable)
    assert out.step == 2
    assert out.partial == (4,)


def test_chain_recursion_matches_forward_simulation():
    # a nondecreasing jump table keeps i + a(i, j) strictly increasing
    rng = random.Random(23)
    tables = {
        j: [0] + list(np.cumsum([rng.randint(0, 1) for _ in range(200)]) + 1)
        for j in (1, 2, 3)
    }

    def a(i, j):
        return int(tables[j][i])

    for _ in range(120):
        n = rng.randint(2, 120)
        j = rng.randint(1, 3)
        k = rng.randint(1, 5)
        out = chain_recursion(n, j, a, k)
        cur, path, bad = n, [], None
        for step in range(1, k + 1):
            pre = [i for i in range(1, cur) if i + a(i, j) == cur]
            if not pre:
                bad = step
                break
            path.append(pre[0])
            cur = pre[0]
        if bad is None:
            assert out == path
        else:
            assert isinstance(out, NotReachable)
            assert out.step == bad
            assert out.partial == tuple(path)


def test_p_membership_follows_the_chain():
    # unit jumps walk 9 -> 8 -> ... -> 1; membership needs the chain to
    # reach 1 with the accumulated coefficient exactly cancelling
    def a(i, j):
        return 1

    def omega(i, j):
        return 2.0

    n, j = 9, 2
    assert chain_recursion(n, j, a, 8) == list(range(8, 0, -1))
    good_b = lambda m: 2.0 ** -(m - 1)
    assert p_membership(n, j, a, omega, good_b, 8)
    assert not p_membership(n, j, a, omega, lambda m: 1.01 * good_b(m), 8)
    # a shorter chain stops above 1, so membership fails
    assert not p_membership(n, j, a, omega, good_b, 3)


def test_summability_detects_convergence():
    # reciprocals of 2^k sum geometrically
    rep = summability_test(lambda k: 2.0 ** k, power=1, horizon=150)
    assert rep.passed
    assert rep.evidence["verdict"] == "converged (heuristic)"
    rep2 = summability_test(lambda k: float(k), power=1, horizon=150)
    assert not rep2.passed
    assert rep2.evidence["verdict"] == "diverged"


def test_summability_rejects_bad_values():
    with pytest.raises(ValueError):
        summability_test(lambda k: 0.0, power=1, horizon=60)
    with pytest.raises(ValueError):
        summability_test(lambda k: math.inf, power=2, horizon=60)
    with pytest.raises(ValueError):
        summability_test(lambda k: 1.0, power=3, horizon=60)


def test_q_density_criterion_on_full_set():
    rep = q_density_criterion(ExactSet.full(), (1, 2, 3), Fraction(1))
    assert rep.passed


def test_q_density_criterion_sparse_set_fails():
    # k = 2 mod 7 and 2k = 2 mod 7 cannot hold at once
    rep = q_density_criterion(ExactSet.progression(1, 7), (1, 2), Fraction(1))
    assert not rep.passed
    assert rep.evidence["density"] == "0/1"
    with pytest.raises(ValueError):
        q_density_criterion(ExactSet.full(), (0,), Fraction(1))


def test_check_I0_backward_shift_kills_basis():
    sp = SeminormSpace.c0()
    fam = backward_shift_family(
        [WeightSequence.constant(2.0), WeightSequence.constant(3.0)], sp
    )
    sample = [SeqVector.basis(n) for n in (1, 2, 5)]
    for variant in ("cap", "forall"):
        rep = check_I0(fam, variant, basis_sample=sample, K=100)
        assert rep.passed, variant


def test_check_I0_flags_growing_orbits():
    sp = SeminormSpace.c0()
    from ddchaos.operators import forward_shift_family

    fam = forward_shift_family([WeightSequence.constant(2.0)], sp)
    sample = [SeqVector.basis(n) for n in (1, 2)]
    rep = check_I0(fam, "forall", basis_sample=sample, K=60)
    assert not rep.passed


def test_check_I_inf_forward_growth():
    sp = SeminormSpace.c0()
    from ddchaos.operators import forward_shift_family

    fam = forward_shift_family(
        [WeightSequence.constant(2.0), WeightSequence.constant(2.0)], sp
    )
    schedule = (3, 6, 12)
    y_seq = [SeqVector.basis(l) for l in range(1, len(schedule) + 1)]
    rep = check_I_inf(fam, "forall", y_seq, eps=0.25, n_schedule=schedule)
    assert rep.passed


def test_qwea_condition_translation_growth():
    sp = SeminormSpace.grid_sup()
    fam = translation_family(
        [1, 2], [lambda x: 1.0, lambda x: 1.0], sp
    )
    B = ExactSet.progression(2, 2)
    rep = qwea_condition(
        c=lambda k: 2.0 ** -k,
        B=B,
        K_support=[0, 1],
        family=fam,
        phi=None,
        horizon=24,
        schedule=lambda n: 1e-6,
    )
    assert rep.passed
    rep_hard = qwea_condition(
        c=lambda k: 2.0 ** -k,
        B=B,
        K_support=[0, 1],
        family=fam,
        phi=None,
        horizon=24,
        schedule=lambda n: 1e6,
    )
    assert not rep_hard.passed


def test_qwea_condition_rejects_flat_coefficients():
    sp = SeminormSpace.grid_sup()
    fam = translation_family([1], [lambda x: 1.0], sp)
    with pytest.raises(ValueError):
        qwea_condition(
            c=lambda k: 1.0,
            B=ExactSet.full(),
            K_support=[0],
            family=fam,
            phi=None,
            horizon=30,
            schedule=lambda n: 0.1,
        )


def test_qwea_condition_with_young_gauge():
    sp = SeminormSpace.grid_sup()
    fam = translation_family([1], [lambda x: 1.0], sp)
    rep = qwea_condition(
        c=lambda k: 3.0 ** -k,
        B=ExactSet.progression(1, 2),
        K_support=[0],
        family=fam,
        phi=YoungFunction.power(2.0),
        horizon=20,
        schedule=lambda n: 1e-9,
    )
    assert rep.passed
