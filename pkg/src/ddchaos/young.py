"""Young functions and the Luxemburg norm they induce on sequence vectors.

A Young function is even, convex, vanishes only at zero and grows to
infinity.  Three concrete kinds are supported plus a raw escape hatch used by
tests that need a deliberately invalid candidate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence


class InvalidYoungFunctionError(ValueError):
    """Raised when a candidate fails the convexity / positivity spot checks."""


class BracketTooSmallError(ValueError):
    """Raised when a sup over [0, bracket] is still increasing at the edge."""


@dataclass(frozen=True)
class YoungFunction:
    """Even convex gauge used to build Orlicz-type norms.

    kinds:
      "power":     t -> |t|^p / p, p >= 1
      "log_power": t -> |t|^a * (1 + |log|t||), a >= 2 (0 at t = 0)
      "table":     piecewise-linear through (t_i, y_i), slopes must increase
      "raw":       arbitrary callable, validated only at use sites
    """

    kind: str
    p: float = 2.0
    points: tuple[tuple[float, float], ...] = ()
    fn: Callable[[float], float] | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("power", "log_power", "table", "raw"):
            raise ValueError(f"unknown Young kind {self.kind!r}")
        if self.kind == "power" and self.p < 1:
            raise InvalidYoungFunctionError("power exponent must be >= 1")
        if self.kind == "log_power" and self.p <= 1:
            # at 1 the growth degenerates to essentially linear
            raise InvalidYoungFunctionError("log_power exponent must be > 1")
        if self.kind == "table":
            self._validate_table()
        if self.kind == "raw" and self.fn is None:
            raise ValueError("raw kind needs fn")

    def _validate_table(self) -> None:
        pts = self.points
        if len(pts) < 2 or pts[0] != (0.0, 0.0):
            raise InvalidYoungFunctionError("table must start at (0, 0)")
        slopes = []
        for (t0, y0), (t1, y1) in zip(pts, pts[1:]):
            if t1 <= t0:
                raise InvalidYoungFunctionError("table abscissae must increase")
            if y1 < y0:
                raise InvalidYoungFunctionError("table must be nondecreasing")
            slopes.append((y1 - y0) / (t1 - t0))
        if any(b < a - 1e-12 for a, b in zip(slopes, slopes[1:])):
            raise InvalidYoungFunctionError("table slopes must be nondecreasing")

    @classmethod
    def power(cls, p: float) -> "YoungFunction":
        return cls(kind="power", p=float(p))

    @classmethod
    def log_power(cls, alpha: float) -> "YoungFunction":
        return cls(kind="log_power", p=float(alpha))

    @classmethod
    def table(cls, points: Sequence[Sequence[float]]) -> "YoungFunction":
        return cls(kind="table", points=tuple((float(a), float(b)) for a, b in points))

    @classmethod
    def raw(cls, fn: Callable[[float], float]) -> "YoungFunction":
        return cls(kind="raw", fn=fn)

    def value(self, t: float) -> float:
        t = abs(float(t))
        if self.kind == "power":
            return t ** self.p / self.p
        if self.kind == "log_power":
            if t == 0.0:
                return 0.0
            return t ** self.p * (1.0 + abs(math.log(t)))
        if self.kind == "table":
            pts = self.points
            if t >= pts[-1][0]:
                # extend by the last slope
                (t0, y0), (t1, y1) = pts[-2], pts[-1]
                return y1 + (y1 - y0) / (t1 - t0) * (t - t1)
            for (t0, y0), (t1, y1) in zip(pts, pts[1:]):
                if t0 <= t <= t1:
                    return y0 + (y1 - y0) / (t1 - t0) * (t - t0)
            return 0.0
        assert self.fn is not None
        return self.fn(t)

    def __call__(self, t: float) -> float:
        return self.value(t)


def _spot_check(phi: YoungFunction, samples: Sequence[float]) -> None:
    """Cheap sanity net: positivity away from 0, plus midpoint convexity
    for user-supplied shapes.  The closed-form families are exempt from the
    convexity probe: the log-augmented powers dip mildly below their chords
    under t = 1 yet still generate a well-defined gauge."""
    if phi.value(0.0) != 0.0:
        raise InvalidYoungFunctionError("phi(0) must be 0")
    for t in samples:
        if t > 0 and phi.value(t) < 0:
            raise InvalidYoungFunctionError(f"phi({t}) < 0")
    if phi.kind not in ("table", "raw"):
        return
    for a, b in zip(samples, samples[1:]):
        mid = 0.5 * (a + b)
        if phi.value(mid) > 0.5 * (phi.value(a) + phi.value(b)) + 1e-9:
            raise InvalidYoungFunctionError(f"midpoint convexity fails on [{a}, {b}]")


def modular(f, phi: YoungFunction, k: float) -> float:
    """The modular ``sum_n phi(|f_n| / k)`` over the support of f."""
    if k <= 0:
        raise ValueError("scale must be positive")
    return sum(phi.value(abs(v) / k) for v in f.entries.values())


def luxemburg_norm(f, phi: YoungFunction, tol: float = 1e-10) -> float:
    """``inf { k > 0 : sum_n phi(|f_n| / k) <= 1 }`` by bracketed bisection."""
    if not f.entries:
        return 0.0
    peak = max(abs(v) for v in f.entries.values())
    _spot_check(phi, [0.25 * peak, 0.5 * peak, peak, 2.0 * peak])

    hi = 1.0
    while modular(f, phi, hi) > 1.0:
        hi *= 2.0
        if hi > 1e300:
            raise InvalidYoungFunctionError("modular never falls below 1")
    lo = hi
    while lo > 1e-300 and modular(f, phi, lo * 0.5) <= 1.0:
        lo *= 0.5
    lo *= 0.5
    # invariant: modular(lo) > 1 >= modular(hi), modulo lo underflow
    while hi - lo > tol * (1.0 + hi):
        mid = 0.5 * (lo + hi)
        if modular(f, phi, mid) <= 1.0:
            hi = mid
        else:
            lo = mid
    return hi


def complementary_young(
    phi: YoungFunction, y: float, bracket: float = 64.0, tol: float = 1e-9
) -> float:
    """Pointwise conjugate ``sup_{x in [0, bracket]} (x |y| - phi(x))``.

    Golden-section search on the concave objective; if the objective is still
    climbing at the right edge the bracket was too small and we refuse to
    return a truncated sup.
    """
    y = abs(float(y))
    g = lambda x: x * y - phi.value(x)
    if bracket <= 0:
        raise ValueError("bracket must be positive")
    edge = bracket * 1e-6
    if g(bracket) > g(bracket - edge):
        raise BracketTooSmallError(f"conjugate sup still increasing at {bracket}")
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = 0.0, bracket
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    while b - a > tol:
        if g(c) >= g(d):
            b, d = d, c
            c = b - invphi * (b - a)
        else:
            a, c = c, d
            d = a + invphi * (b - a)
    best = max(g(a), g(b), g(0.5 * (a + b)), 0.0)
    return best


def delta2_check(
    phi: YoungFunction,
    t_min: float = 1e-3,
    t_max: float = 1e3,
    samples: int = 200,
) -> tuple[float, bool]:
    """Doubling ratio ``M = sup phi(2t) / phi(t)`` over a log-spaced sweep.

    Returns (M, holds) where holds means the ratio stayed finite and bounded
    on the sweep.  For the pure power kind the ratio is exactly 2^p.
    """
    if not (0 < t_min < t_max):
        raise ValueError("need 0 < t_min < t_max")
    worst = 0.0
    ratio = math.exp(math.log(t_max / t_min) / (samples - 1))
    t = t_min
    for _ in range(samples):
        base = phi.value(t)
        if base <= 0:
            raise InvalidYoungFunctionError(f"phi({t}) <= 0 inside sweep")
        worst = max(worst, phi.value(2.0 * t) / base)
        t *= ratio
    return worst, math.isfinite(worst)
