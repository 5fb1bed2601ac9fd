"""Affine cosets of set-valued maps: extremal seminorms and selections."""

import math

import numpy as np
import pytest

from ddchaos.mlo import (
    AffineCoset,
    NotAttainable,
    Subspace,
    coset_from_literal,
    coset_to_literal,
    extension_power_coset,
    min_seminorm,
    purely_multivalued,
    random_member,
    select_exceeding,
    sup_seminorm,
)
from ddchaos.space import SeminormSpace, SeqVector, seminorm


def test_min_seminorm_cancels_subspace_directions():
    sp = SeminormSpace.frechet_truncation()
    base = SeqVector.from_pairs([[1, 3.0], [50, 9.0]])
    c = AffineCoset(base, Subspace.span_of_basis([50]))
    val, witness = min_seminorm(c, sp, 60)
    assert val == 3.0
    assert witness.get(50) == 0.0


def test_min_seminorm_invisible_direction_level_one():
    # a deep direction is invisible to the first truncation seminorm
    sp = SeminormSpace.frechet_truncation()
    base = SeqVector.from_pairs([[1, 2.0]])
    c = AffineCoset(base, Subspace.span_of_basis([50]))
    assert min_seminorm(c, sp, 1)[0] == 2.0
    assert sup_seminorm(c, sp, 1) == 2.0
    assert sup_seminorm(c, sp, 50) == math.inf


def test_zero_subspace_is_single_valued():
    base = SeqVector.from_pairs([[2, 1.5]])
    c = AffineCoset(base, Subspace.zero())
    assert not purely_multivalued(c)
    sp = SeminormSpace.lp(2.0)
    assert min_seminorm(c, sp, 1)[0] == sup_seminorm(c, sp, 1) == 1.5


def test_select_exceeding_scales_along_a_direction():
    sp = SeminormSpace.c0()
    c = AffineCoset(SeqVector.zero(), Subspace.span_of_basis([3]))
    got = select_exceeding(c, sp, 1, 1000.0)
    assert seminorm(sp, 1, got) > 1000.0
    assert got.support() == [3]


def test_select_exceeding_raises_when_capped():
    sp = SeminormSpace.frechet_truncation()
    c = AffineCoset(SeqVector.basis(1), Subspace.span_of_basis([10]))
    # level 2 never sees coordinate 10, so the seminorm is stuck at 1
    with pytest.raises(NotAttainable):
        select_exceeding(c, sp, 2, 5.0)


def test_extension_power_coset_shape():
    x = SeqVector.from_pairs([[1, 0.4], [3, -1.1]])
    c = extension_power_coset(2, 2, 3, x)
    assert purely_multivalued(c)
    assert c.base.support() == [7, 9]
    assert c.subspace.kind == "span_of_basis"
    assert list(c.subspace.indices) == list(range(1, 7))
    with pytest.raises(ValueError):
        extension_power_coset(2, 3, 1, x)


def test_extension_power_min_norm_is_shifted_tail():
    sp = SeminormSpace.lp(2.0)
    x = SeqVector.from_pairs([[1, 0.4], [3, -1.1], [6, 0.25]])
    c = extension_power_coset(1, 1, 4, x)
    val, _ = min_seminorm(c, sp, 1)
    # the span covers 1..4 but the shifted support sits at 5, 7, 10
    assert val == pytest.approx(math.sqrt(0.4 ** 2 + 1.1 ** 2 + 0.25 ** 2))


def test_random_member_stays_in_coset():
    rng = np.random.default_rng(5)
    base = SeqVector.from_pairs([[8, 2.0]])
    c = AffineCoset(base, Subspace.span_of_basis([1, 2]))
    for _ in range(5):
        m = random_member(c, rng)
        assert m.get(8) == 2.0
        assert set(m.support()) <= {1, 2, 8}


def test_coset_literal_roundtrip():
    base = SeqVector.from_pairs([[2, -1.0]])
    c = AffineCoset(base, Subspace.span_of_basis([4, 5]))
    lit = coset_to_literal(c)
    back = coset_from_literal(lit)
    assert back.base.to_pairs() == c.base.to_pairs()
    assert back.subspace.kind == c.subspace.kind
    assert tuple(back.subspace.indices) == tuple(c.subspace.indices)
