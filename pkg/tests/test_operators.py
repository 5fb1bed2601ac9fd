"""Weight tables, shift powers, and the operator family constructors."""

import math
import random
from fractions import Fraction

import numpy as np
import pytest

from ddchaos.operators import (
    LogFloat,
    Regularizer,
    TwoRunWeights,
    WeightSequence,
    b_jk,
    b_jk_log,
    backward_shift_family,
    backward_shift_power,
    diagonal_family,
    forward_shift_family,
    generalized_backward_family,
    regularized_family,
    regularized_power_apply,
    scalar_pattern_family,
    shift_power_norm,
    translation_family,
)
from ddchaos.space import GridFunction, SeminormSpace, SeqVector, norm


def test_logfloat_roundtrip_and_product():
    a = LogFloat.from_float(8.0)
    b = LogFloat.from_float(-0.5)
    assert a.to_float() == pytest.approx(8.0)
    assert (a * b).to_float() == pytest.approx(-4.0)
    assert LogFloat.zero().to_float() == 0.0
    assert LogFloat.exp2(700.0).to_float() == pytest.approx(2.0 ** 700)
    assert LogFloat.exp2(1100.0).to_float() == math.inf


def test_two_run_table_lengths():
    w = TwoRunWeights.concrete(4)
    assert w.two_lengths[0] == 2
    assert w.two_lengths[1] == 530
    assert w.two_lengths[2] == 33620498
    assert w.half_lengths[0] == 18
    assert w.half_lengths[1] == 66066


def test_two_run_exponent_values():
    w = TwoRunWeights.concrete(4)
    assert w.cum_exponent(2) == 2
    assert w.cum_exponent(20) == -16
    assert w.cum_exponent(288) == 252
    assert w.cum_exponent(550) == 514
    assert w.cum_exponent(33586) == -32522
    assert w.cum_exponent(66616) == -65552


def test_two_run_exponent_prefix_matches_pointwise():
    w = TwoRunWeights.concrete(4)
    P = w.exponent_prefix(800)
    assert P[0] == 0
    for k in (1, 2, 3, 20, 288, 550, 700):
        assert P[k] == w.cum_exponent(k)
    steps = np.diff(P)
    assert set(steps.tolist()) <= {-1, 1}


def test_two_run_deep_blocks():
    w = TwoRunWeights.concrete(4)
    assert w.deep_two_block(2) == (288, 550)
    assert w.deep_half_block(2) == (33586, 66616)
    assert w.scan_threshold() == 2


def test_two_run_certificates():
    w = TwoRunWeights.concrete(4)
    for n in (3, 4):
        cert = w.block_exponent_certificate(n)
        assert all(cert.values()), cert
    assert all(w.half_slope_certificate(3).values())


def test_weight_sequence_geometric():
    w = WeightSequence.geometric(2)
    assert w.value_at(3) == pytest.approx(4.0 * 9.0)
    # log_product over [start, start + count) agrees with direct logs
    direct = sum(math.log(w.value_at(n)) for n in range(2, 6))
    assert w.log_product(2, 4) == pytest.approx(direct)


def test_weight_sequence_block_saturates():
    w = WeightSequence.block(TwoRunWeights.concrete(4))
    assert w.value_at(1) in (2.0, 0.5)
    # exponents beyond the float range collapse to inf or 0
    assert w.product(1, 3000) in (0.0, math.inf) or w.product(1, 3000) > 0


def test_backward_shift_power_on_basis():
    w = WeightSequence.constant(2.0)
    x = SeqVector.basis(5)
    y = backward_shift_power(w, 2, x)
    # e_5 moves to e_3 and picks up the weight product w_4 w_5
    assert y.support() == [3]
    assert y.get(3) == pytest.approx(4.0)
    assert backward_shift_power(w, 5, x).support() == []


def test_shift_power_norm_matches_brute_force():
    w = WeightSequence.geometric(1)
    sp = SeminormSpace.c0()
    horizon = 80
    for k in (1, 2, 5):
        brute = 0.0
        for m in range(k + 1, horizon + k + 1):
            y = backward_shift_power(w, k, SeqVector.basis(m))
            brute = max(brute, norm(sp, y))
        assert shift_power_norm(w, k, horizon) == pytest.approx(brute)


def test_forward_family_moves_support_up():
    sp = SeminormSpace.c0()
    fam = forward_shift_family([WeightSequence.constant(3.0)], sp)
    y = fam.apply(1, 2, SeqVector.basis(1))
    assert y.support() == [3]
    assert abs(y.get(3)) == pytest.approx(9.0)


def test_diagonal_family_coefficients():
    fam = diagonal_family(lambda j, k: [float(j + k), 0.0], dimension=2, n_ops=2)
    y = fam.apply(2, 3, SeqVector.from_pairs([[1, 1.0], [2, 1.0]]))
    assert y.get(1) == 5.0
    assert y.get(2) == 0.0


def test_scalar_pattern_family():
    fam = scalar_pattern_family(lambda j, k: 2.0 ** j if k % 2 else 0.0, n_ops=2)
    assert fam.apply(1, 3, SeqVector.basis(1)).get(1) == 2.0
    assert fam.apply(2, 4, SeqVector.basis(1)).get(1) == 0.0


def test_generalized_backward_family_jumps():
    sp = SeminormSpace.c0()
    fam = generalized_backward_family(
        omega=lambda n, j: 2.0, jumps=lambda n, j: n + 1, n_ops=1, space=sp
    )
    # coordinate n reads x at n + jumps(n), so e_3 lands on n = 1
    y = fam.apply(1, 1, SeqVector.basis(3))
    assert y.support() == [1]
    assert y.get(1) == 2.0


def test_translation_family_moves_grid_support():
    sp = SeminormSpace.grid_sup()
    fam = translation_family([1], [lambda x: 1.0], sp)
    f = GridFunction.spike(Fraction(0), value=2.0)
    g = fam.apply(1, 3, f)
    assert g.support() == [Fraction(-3)] or g.support() == [Fraction(3)]


def test_b_jk_log_matches_linear_scale():
    tw = TwoRunWeights.concrete(4)
    weights = WeightSequence.block(tw)
    reg = Regularizer.inverse_factorial(1)
    for k in (1, 3, 7):
        lin = b_jk(weights, reg, 1, k, horizon=200, anchor="output")
        lg, arg = b_jk_log(weights, reg, 1, k, horizon=200, anchor="output")
        assert 1 <= arg <= 200
        if math.isfinite(lin) and lin > 0:
            assert math.log(lin) == pytest.approx(lg, rel=1e-9)


def test_regularized_power_apply_matches_direct():
    tw = TwoRunWeights.concrete(4)
    weights = WeightSequence.block(tw)
    reg = Regularizer.inverse_factorial(1)
    rng = random.Random(11)
    for _ in range(10):
        k = rng.randint(1, 6)
        j = rng.randint(1, 2)
        support = rng.sample(range(1, 15), 3)
        x = SeqVector({n: rng.uniform(-2, 2) for n in support})
        out = regularized_power_apply(weights, reg, j, k, x)
        for n in out.support():
            direct = reg.value_at(n + k) * weights.product(n, k) * x.get(n + k)
            assert out.get(n).to_float() == pytest.approx(direct, rel=1e-9)


def test_regularized_family_wraps_apply():
    tw = TwoRunWeights.concrete(4)
    weights = WeightSequence.block(tw)
    reg = Regularizer.inverse_factorial(1)
    sp = SeminormSpace.lp(2.0)
    fam = regularized_family([weights], reg, sp)
    y = fam.apply(1, 2, SeqVector.basis(5))
    assert y.support() == [3]


def test_backward_family_respects_weight_choice():
    sp = SeminormSpace.c0()
    fam = backward_shift_family(
        [WeightSequence.constant(2.0), WeightSequence.constant(0.5)], sp
    )
    up = fam.apply(1, 4, SeqVector.basis(5))
    down = fam.apply(2, 4, SeqVector.basis(5))
    assert up.get(1) == pytest.approx(16.0)
    assert down.get(1) == pytest.approx(1.0 / 16.0)
