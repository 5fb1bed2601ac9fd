"""Sequence vectors, grid functions, seminorm families and Frechet metrics.

The laboratory works over real scalars.  A vector is a finitely supported
map from coordinate indices to floats; a grid function is the same idea on a
rational grid of the real line.  A seminorm space is a named family
``p_1 <= p_2 <= ...`` of seminorms; Banach kinds repeat a single norm, the
non-normable kinds truncate by coordinate window.  The metric is the usual
series ``sum 2^{-n} p_n(x - y) / (1 + p_n(x - y))``, truncated at a depth
chosen from the requested tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence


class DomainMismatchError(ValueError):
    """Raised when two vectors live on different index domains."""


def _clean(entries: Mapping[int, float]) -> dict[int, float]:
    return {k: float(v) for k, v in sorted(entries.items()) if v != 0.0}


@dataclass(frozen=True)
class SeqVector:
    """Finitely supported sequence, indexed by naturals (n >= 1) or integers."""

    entries: dict[int, float] = field(default_factory=dict)
    index_domain: str = "natural"  # "natural" or "integer"

    def __post_init__(self) -> None:
        if self.index_domain not in ("natural", "integer"):
            raise ValueError(f"unknown index domain {self.index_domain!r}")
        cleaned = _clean(self.entries)
        if self.index_domain == "natural" and any(k < 1 for k in cleaned):
            raise DomainMismatchError("natural-domain vector with index < 1")
        object.__setattr__(self, "entries", cleaned)

    @classmethod
    def zero(cls, index_domain: str = "natural") -> "SeqVector":
        return cls({}, index_domain)

    @classmethod
    def basis(cls, n: int, index_domain: str = "natural") -> "SeqVector":
        return cls({n: 1.0}, index_domain)

    @classmethod
    def from_pairs(
        cls, pairs: Iterable[Sequence[float]], index_domain: str = "natural"
    ) -> "SeqVector":
        """Build from ``[index, value]`` pairs, the interchange literal form."""
        entries: dict[int, float] = {}
        for idx, val in pairs:
            k = int(idx)
            if k != idx:
                raise ValueError(f"non-integer index {idx!r}")
            if k in entries:
                raise ValueError(f"duplicate index {k}")
            entries[k] = float(val)
        return cls(entries, index_domain)

    def to_pairs(self) -> list[list[float]]:
        return [[k, v] for k, v in sorted(self.entries.items())]

    def get(self, n: int) -> float:
        return self.entries.get(n, 0.0)

    def support(self) -> list[int]:
        return sorted(self.entries)

    def _check_domain(self, other: "SeqVector") -> None:
        if self.index_domain != other.index_domain:
            raise DomainMismatchError(
                f"{self.index_domain} vs {other.index_domain}"
            )

    def add(self, other: "SeqVector") -> "SeqVector":
        self._check_domain(other)
        merged = dict(self.entries)
        for k, v in other.entries.items():
            merged[k] = merged.get(k, 0.0) + v
        return SeqVector(merged, self.index_domain)

    def sub(self, other: "SeqVector") -> "SeqVector":
        return self.add(other.scale(-1.0))

    def scale(self, c: float) -> "SeqVector":
        return SeqVector({k: c * v for k, v in self.entries.items()}, self.index_domain)

    def __add__(self, other: "SeqVector") -> "SeqVector":
        return self.add(other)

    def __sub__(self, other: "SeqVector") -> "SeqVector":
        return self.sub(other)

    def __rmul__(self, c: float) -> "SeqVector":
        return self.scale(float(c))


GRID_STEP = Fraction(1, 8)


@dataclass(frozen=True)
class GridFunction:
    """Finitely supported function on the rational grid ``step * Z``."""

    entries: dict[Fraction, float] = field(default_factory=dict)
    step: Fraction = GRID_STEP

    def __post_init__(self) -> None:
        if self.step <= 0:
            raise ValueError("grid step must be positive")
        cleaned: dict[Fraction, float] = {}
        for x, v in self.entries.items():
            x = Fraction(x)
            if x % self.step != 0:
                raise ValueError(f"point {x} not on grid of step {self.step}")
            if v != 0.0:
                cleaned[x] = float(v)
        object.__setattr__(self, "entries", cleaned)

    @classmethod
    def zero(cls, step: Fraction = GRID_STEP) -> "GridFunction":
        return cls({}, step)

    @classmethod
    def spike(cls, x: Fraction, value: float = 1.0, step: Fraction = GRID_STEP) -> "GridFunction":
        return cls({Fraction(x): value}, step)

    @classmethod
    def indicator(
        cls, points: Iterable[Fraction], value: float = 1.0, step: Fraction = GRID_STEP
    ) -> "GridFunction":
        return cls({Fraction(x): value for x in points}, step)

    def get(self, x: Fraction) -> float:
        return self.entries.get(Fraction(x), 0.0)

    def support(self) -> list[Fraction]:
        return sorted(self.entries)

    def translate(self, a: Fraction) -> "GridFunction":
        """The function x -> f(x - a)."""
        a = Fraction(a)
        return GridFunction({x + a: v for x, v in self.entries.items()}, self.step)

    def pointwise(self, weight: Callable[[Fraction], float]) -> "GridFunction":
        return GridFunction(
            {x: weight(x) * v for x, v in self.entries.items()}, self.step
        )

    def scale(self, c: float) -> "GridFunction":
        return GridFunction({x: c * v for x, v in self.entries.items()}, self.step)

    def add(self, other: "GridFunction") -> "GridFunction":
        if self.step != other.step:
            raise DomainMismatchError(f"grid steps {self.step} vs {other.step}")
        merged = dict(self.entries)
        for x, v in other.entries.items():
            merged[x] = merged.get(x, 0.0) + v
        return GridFunction(merged, self.step)

    def sub(self, other: "GridFunction") -> "GridFunction":
        return self.add(other.scale(-1.0))

    def __add__(self, other: "GridFunction") -> "GridFunction":
        return self.add(other)

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        return self.sub(other)


_BANACH_KINDS = frozenset({"lp", "c0", "weighted_lp", "orlicz"})
_FRECHET_KINDS = frozenset({"frechet_truncation", "grid_sup"})


@dataclass(frozen=True)
class SeminormSpace:
    """A named increasing family of seminorms.

    Banach kinds ("lp", "c0", "weighted_lp", "orlicz") use one norm for every
    level.  "frechet_truncation" is the space of all sequences with
    ``p_m(x) = max_{|k| <= m} |x_k|``; "grid_sup" is its grid-function
    analogue ``p_m(f) = sup_{|x| <= m} |w(x) f(x)|`` (w defaults to 1).
    """

    kind: str
    p: float = 2.0
    weights: Callable[[int], float] | None = None
    grid_weight: Callable[[Fraction], float] | None = None
    young: object | None = None  # YoungFunction for the "orlicz" kind

    def __post_init__(self) -> None:
        if self.kind not in _BANACH_KINDS | _FRECHET_KINDS:
            raise ValueError(f"unknown space kind {self.kind!r}")
        if self.kind in ("lp", "weighted_lp") and self.p < 1:
            raise ValueError("lp exponent must be >= 1")

    @classmethod
    def lp(cls, p: float = 2.0) -> "SeminormSpace":
        return cls(kind="lp", p=float(p))

    @classmethod
    def c0(cls) -> "SeminormSpace":
        return cls(kind="c0")

    @classmethod
    def weighted_lp(cls, p: float, weights: Callable[[int], float]) -> "SeminormSpace":
        return cls(kind="weighted_lp", p=float(p), weights=weights)

    @classmethod
    def frechet_truncation(cls) -> "SeminormSpace":
        return cls(kind="frechet_truncation")

    @classmethod
    def grid_sup(
        cls, grid_weight: Callable[[Fraction], float] | None = None
    ) -> "SeminormSpace":
        return cls(kind="grid_sup", grid_weight=grid_weight)

    @classmethod
    def orlicz(cls, young: object) -> "SeminormSpace":
        return cls(kind="orlicz", young=young)

    @property
    def banach(self) -> bool:
        return self.kind in _BANACH_KINDS


def seminorm(space: SeminormSpace, m: int, v) -> float:
    """Value of the m-th seminorm (m >= 1); Banach kinds ignore m."""
    if m < 1:
        raise ValueError("seminorm level must be >= 1")
    kind = space.kind
    if kind == "lp":
        # scale by the peak so p-th powers cannot overflow
        peak = max((abs(x) for x in v.entries.values()), default=0.0)
        if peak == 0.0 or math.isinf(peak):
            return peak
        total = sum((abs(x) / peak) ** space.p for x in v.entries.values())
        return peak * total ** (1.0 / space.p)
    if kind == "c0":
        return max((abs(x) for x in v.entries.values()), default=0.0)
    if kind == "weighted_lp":
        assert space.weights is not None
        peak = max((abs(x) for x in v.entries.values()), default=0.0)
        if peak == 0.0 or math.isinf(peak):
            return peak
        total = sum(
            space.weights(k) * (abs(x) / peak) ** space.p
            for k, x in v.entries.items()
        )
        return peak * total ** (1.0 / space.p)
    if kind == "orlicz":
        from .young import luxemburg_norm

        assert space.young is not None
        return luxemburg_norm(v, space.young)
    if kind == "frechet_truncation":
        return max(
            (abs(x) for k, x in v.entries.items() if abs(k) <= m), default=0.0
        )
    if kind == "grid_sup":
        w = space.grid_weight or (lambda x: 1.0)
        return max(
            (abs(w(x) * val) for x, val in v.entries.items() if abs(x) <= m),
            default=0.0,
        )
    raise ValueError(f"unknown space kind {kind!r}")


def norm(space: SeminormSpace, v) -> float:
    """The norm of a Banach-kind space (level-1 seminorm otherwise)."""
    return seminorm(space, 1, v)


def metric_depth(tol: float) -> int:
    """Truncation depth M with tail bound ``sum_{n > M} 2^{-n} <= tol``."""
    if not 0 < tol < 1:
        raise ValueError("tolerance must lie in (0, 1)")
    return max(1, math.ceil(math.log2(1.0 / tol)))


def frechet_metric(space: SeminormSpace, x, y, tol: float = 1e-9) -> float:
    """Truncated metric ``sum_{n<=M} 2^{-n} p_n(x-y) / (1 + p_n(x-y))``.

    The dropped tail is below ``tol`` since each term is below ``2^{-n}``.
    Banach kinds collapse to ``(1 - 2^{-M}) ||x-y|| / (1 + ||x-y||)``.
    """
    diff = x.sub(y) if hasattr(x, "sub") else x - y
    depth = metric_depth(tol)
    if space.banach:
        t = norm(space, diff)
        return (1.0 - 0.5 ** depth) * t / (1.0 + t)
    total = 0.0
    for n in range(1, depth + 1):
        t = seminorm(space, n, diff)
        total += 0.5 ** n * t / (1.0 + t)
    return total


def distance(space: SeminormSpace, x, y, tol: float = 1e-9) -> float:
    return frechet_metric(space, x, y, tol)


def metric_properties_check(
    space: SeminormSpace,
    x,
    y,
    u,
    v,
    alpha: float,
    beta: float,
    c: float,
    tol: float = 1e-9,
) -> dict[str, object]:
    """Check the three structural inequalities of the translation metric.

    shift_subadditive:  d(x+u, y+v) <= d(x,y) + d(u,v)
    scaling_bound:      d(cx, cy)   <= (|c|+1) d(x,y)
    separation_bound:   d(ax, bx)   >= |a-b|/(1+|a-b|) * d(0, x)

    Each holds exactly term by term; verdicts allow floating slop ``tol``.
    Returns per-property verdicts and slacks (nonnegative when satisfied).
    """
    d_xy = frechet_metric(space, x, y, tol)
    d_uv = frechet_metric(space, u, v, tol)
    d_shift = frechet_metric(space, x.add(u), y.add(v), tol)
    shift_slack = d_xy + d_uv - d_shift

    d_scaled = frechet_metric(space, x.scale(c), y.scale(c), tol)
    scale_slack = (abs(c) + 1.0) * d_xy - d_scaled

    zero = x.scale(0.0)
    gap = abs(alpha - beta)
    d_sep = frechet_metric(space, x.scale(alpha), x.scale(beta), tol)
    sep_floor = gap / (1.0 + gap) * frechet_metric(space, zero, x, tol)
    sep_slack = d_sep - sep_floor

    return {
        "shift_subadditive": shift_slack >= -tol,
        "scaling_bound": scale_slack >= -tol,
        "separation_bound": sep_slack >= -tol,
        "slacks": {
            "shift_subadditive": shift_slack,
            "scaling_bound": scale_slack,
            "separation_bound": sep_slack,
        },
    }


def product_metric_max(component_distances: Sequence[float]) -> float:
    """Max-combination of component distances (a metric on the product)."""
    if not component_distances:
        raise ValueError("empty product")
    return max(component_distances)


def product_metric_sum(
    space: SeminormSpace, xs: Sequence, ys: Sequence, tol: float = 1e-9
) -> float:
    """Product metric from the summed seminorms ``q_n = sum_j p_n(x_j - y_j)``.

    Satisfies ``d_max <= d <= N^2 * d_max`` against the max-combination of the
    component metrics at the same truncation depth.
    """
    if len(xs) != len(ys):
        raise ValueError("component count mismatch")
    if not xs:
        raise ValueError("empty product")
    diffs = [x.sub(y) if hasattr(x, "sub") else x - y for x, y in zip(xs, ys)]
    depth = metric_depth(tol)
    total = 0.0
    for n in range(1, depth + 1):
        q = sum(seminorm(space, n, d) for d in diffs)
        total += 0.5 ** n * q / (1.0 + q)
    return total
