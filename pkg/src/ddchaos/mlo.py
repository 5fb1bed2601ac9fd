"""Affine-coset values of multivalued linear maps, with extremal selections.

A multivalued linear map sends a point to base + subspace.  Everything in
scope reduces to two subspace shapes: a span of finitely many coordinate
directions, and grid functions supported strictly beyond a threshold.  The
selections of interest are the minimal-seminorm member, the supremum of
the seminorm over the coset, and a member exceeding a given threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from .space import GRID_STEP, GridFunction, SeminormSpace, SeqVector, seminorm

Vector = Union[SeqVector, GridFunction]


class NotAttainable(Exception):
    """No coset member clears the requested seminorm threshold."""


_SUBSPACE_KINDS = frozenset({"span_of_basis", "support_beyond", "zero"})


@dataclass(frozen=True)
class Subspace:
    """Finitely described linear part of a coset.

    span_of_basis lists coordinate directions of a sequence space;
    support_beyond(t) is the grid functions vanishing on (-inf, t] -- the
    threshold itself is excluded, mirroring the vanishing left edge of a
    closed support in the continuous picture.
    """

    kind: str
    indices: tuple[int, ...] = ()
    threshold: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if self.kind not in _SUBSPACE_KINDS:
            raise ValueError(f"unknown subspace kind {self.kind!r}")
        idx = tuple(sorted({int(i) for i in self.indices}))
        if idx and idx[0] < 1:
            raise ValueError("span indices must be >= 1")
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "threshold", Fraction(self.threshold))

    @classmethod
    def zero(cls) -> "Subspace":
        return cls(kind="zero")

    @classmethod
    def span_of_basis(cls, indices) -> "Subspace":
        idx = tuple(indices)
        if not idx:
            return cls.zero()
        return cls(kind="span_of_basis", indices=idx)

    @classmethod
    def support_beyond(cls, t) -> "Subspace":
        return cls(kind="support_beyond", threshold=Fraction(t))

    def is_zero(self) -> bool:
        return self.kind == "zero"


@dataclass(frozen=True)
class AffineCoset:
    """base + subspace, the value set of a multivalued map at one point."""

    base: Vector
    subspace: Subspace

    def __post_init__(self) -> None:
        if self.subspace.kind == "span_of_basis" and not isinstance(
            self.base, SeqVector
        ):
            raise TypeError("span subspaces pair with sequence vectors")
        if self.subspace.kind == "support_beyond" and not isinstance(
            self.base, GridFunction
        ):
            raise TypeError("support subspaces pair with grid functions")


def canonicalize(c: AffineCoset) -> AffineCoset:
    """Zero the base on the subspace's own coordinates.

    The result represents the same coset; the base carries no component
    that the subspace could cancel.
    """
    sub = c.subspace
    if sub.kind == "span_of_basis":
        killed = set(sub.indices)
        base = SeqVector(
            {k: v for k, v in c.base.entries.items() if k not in killed},
            c.base.index_domain,
        )
        return AffineCoset(base, sub)
    if sub.kind == "support_beyond":
        base = GridFunction(
            {
                x: v
                for x, v in c.base.entries.items()
                if x <= sub.threshold
            },
            c.base.step,
        )
        return AffineCoset(base, sub)
    return c


def _directions(c: AffineCoset, space: SeminormSpace, m: int) -> list[Vector]:
    """Unit subspace directions visible to the level-m seminorm."""
    sub = c.subspace
    out: list[Vector] = []
    if sub.kind == "span_of_basis":
        for i in sub.indices:
            e = SeqVector.basis(i, c.base.index_domain)
            if seminorm(space, m, e) > 0.0:
                out.append(e)
    elif sub.kind == "support_beyond":
        step = c.base.step
        # first grid point strictly beyond the threshold
        x = (sub.threshold / step).__floor__() * step
        while x <= sub.threshold:
            x += step
        while x <= m:
            spike = GridFunction.spike(x, 1.0, step)
            if seminorm(space, m, spike) > 0.0:
                out.append(spike)
                break
            x += step
    return out


def min_seminorm(
    c: AffineCoset, space: SeminormSpace, m: int
) -> tuple[float, Vector]:
    """(minimal seminorm over the coset, a witness attaining it).

    Every in-scope seminorm is coordinatewise monotone, so the minimum is
    attained by zeroing whatever the subspace can cancel -- the canonical
    base itself.
    """
    base = canonicalize(c).base
    return seminorm(space, m, base), base


def sup_seminorm(c: AffineCoset, space: SeminormSpace, m: int) -> float:
    """Supremum of the level-m seminorm over the coset; +inf when the
    subspace holds a direction the seminorm sees."""
    c = canonicalize(c)
    if _directions(c, space, m):
        return math.inf
    return seminorm(space, m, c.base)


def select_exceeding(
    c: AffineCoset, space: SeminormSpace, m: int, threshold: float
) -> Vector:
    """A coset member whose level-m seminorm strictly exceeds threshold.

    The member is base + s * (unit subspace direction) with s scaled until
    the seminorm clears the bar; the base itself is returned when it
    already qualifies.
    """
    c = canonicalize(c)
    base_val = seminorm(space, m, c.base)
    if base_val > threshold:
        return c.base
    dirs = _directions(c, space, m)
    if not dirs:
        raise NotAttainable(
            f"coset seminorm is capped at {base_val} <= {threshold}"
        )
    unit = dirs[0]
    gain = seminorm(space, m, unit)
    s = (abs(threshold) + base_val + 1.0) / gain
    for _ in range(80):
        candidate = c.base.add(unit.scale(s))
        if seminorm(space, m, candidate) > threshold:
            return candidate
        s *= 2.0
    raise AssertionError("selection scaling failed to escape the threshold")


def extension_power_coset(
    j: int, w_dim: int, k: int, x: SeqVector
) -> AffineCoset:
    """k-th power of the span-extended j-th forward shift at x.

    The extension adds the span of the first j coordinates to the shift;
    its k-th power sends x to (x shifted up by jk) + span{1..jk}.
    """
    if j < 1 or k < 1:
        raise ValueError("need j >= 1 and k >= 1")
    if w_dim != j:
        raise ValueError("the extension block must match the shift order")
    jk = j * k
    shifted = SeqVector(
        {n + jk: v for n, v in x.entries.items()}, x.index_domain
    )
    return AffineCoset(shifted, Subspace.span_of_basis(range(1, jk + 1)))


def purely_multivalued(c: AffineCoset) -> bool:
    """True iff the map's value at zero is bigger than {0}."""
    return not c.subspace.is_zero()


def random_member(
    c: AffineCoset, rng: np.random.Generator, spread: float = 4.0
) -> Vector:
    """base plus a random subspace combination, for sampling invariants."""
    c = canonicalize(c)
    sub = c.subspace
    if sub.kind == "span_of_basis":
        out = c.base
        for i in sub.indices:
            out = out.add(
                SeqVector.basis(i, c.base.index_domain).scale(
                    float(rng.uniform(-spread, spread))
                )
            )
        return out
    if sub.kind == "support_beyond":
        out = c.base
        step = c.base.step
        x = (sub.threshold / step).__floor__() * step
        while x <= sub.threshold:
            x += step
        for offset in rng.integers(0, 64, size=3):
            point = x + int(offset) * step
            out = out.add(
                GridFunction.spike(
                    point, float(rng.uniform(-spread, spread)), step
                )
            )
        return out
    return c.base


# scenario JSON shape: {"base": [[coord, value], ...],
#                       "subspace": {"span": [...]} | {"support_beyond": t} | "zero"}
# grid bases give coord in integer grid steps (coordinate = coord * step)


def coset_from_literal(data: dict) -> AffineCoset:
    sub_lit = data["subspace"]
    if sub_lit == "zero":
        sub = Subspace.zero()
    elif "span" in sub_lit:
        sub = Subspace.span_of_basis(sub_lit["span"])
    elif "support_beyond" in sub_lit:
        sub = Subspace.support_beyond(sub_lit["support_beyond"])
    else:
        raise ValueError(f"unknown subspace literal {sub_lit!r}")
    pairs = data["base"]
    if sub.kind == "support_beyond":
        base: Vector = GridFunction(
            {int(i) * GRID_STEP: float(v) for i, v in pairs}, GRID_STEP
        )
    else:
        base = SeqVector.from_pairs(pairs)
    return AffineCoset(base, sub)


def coset_to_literal(c: AffineCoset) -> dict:
    sub = c.subspace
    if sub.kind == "zero":
        sub_lit: object = "zero"
    elif sub.kind == "span_of_basis":
        sub_lit = {"span": list(sub.indices)}
    else:
        sub_lit = {"support_beyond": float(sub.threshold)}
    if isinstance(c.base, GridFunction):
        pairs = [
            [int(x / c.base.step), v] for x, v in sorted(c.base.entries.items())
        ]
    else:
        pairs = c.base.to_pairs()
    return {"base": pairs, "subspace": sub_lit}
