"""Closed-form operator families on sequence and grid spaces.

Weighted backward and forward shift powers, diagonal families, regularized
shift powers (k-th power composed with a coordinatewise regularizer) and
weighted translations on the integer grid.  Every application is a single
pass over the support of the input; orbit norms are sliding weight products.

Products are accumulated in log space.  Magnitudes in this module reach
factorial scale in both directions, so values are carried as (sign, log)
pairs and converted to floats only at the edges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .indexset import Blocks
from .space import GridFunction, SeminormSpace, SeqVector

LOG2 = math.log(2.0)


# ---------------------------------------------------------------------------
# signed log-magnitude scalars


@dataclass(frozen=True)
class LogFloat:
    """A real number as (sign, log magnitude); sign 0 encodes exact zero."""

    sign: int
    log: float

    def __post_init__(self) -> None:
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or 1")
        if self.sign == 0:
            object.__setattr__(self, "log", -math.inf)

    @classmethod
    def zero(cls) -> "LogFloat":
        return cls(0, -math.inf)

    @classmethod
    def one(cls) -> "LogFloat":
        return cls(1, 0.0)

    @classmethod
    def from_float(cls, x: float) -> "LogFloat":
        if x == 0.0:
            return cls.zero()
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    @classmethod
    def exp2(cls, e: float, sign: int = 1) -> "LogFloat":
        """The number sign * 2**e."""
        return cls(sign, float(e) * LOG2)

    def to_float(self) -> float:
        if self.sign == 0:
            return 0.0
        if self.log > 709.0:  # exp overflow edge
            return math.inf * self.sign
        return self.sign * math.exp(self.log)

    @property
    def log2(self) -> float:
        return self.log / LOG2

    def __mul__(self, other: "LogFloat") -> "LogFloat":
        if self.sign == 0 or other.sign == 0:
            return LogFloat.zero()
        return LogFloat(self.sign * other.sign, self.log + other.log)

    def scaled(self, c: float) -> "LogFloat":
        return self * LogFloat.from_float(c)

    def abs_ge(self, other: "LogFloat") -> bool:
        return self.log >= other.log

    def rel_close(self, other: "LogFloat", tol: float) -> bool:
        """Same sign and log magnitudes within tol (relative closeness)."""
        if self.sign != other.sign:
            return False
        if self.sign == 0:
            return True
        return abs(self.log - other.log) <= tol


@dataclass(frozen=True)
class LogVector:
    """Finitely supported sequence with LogFloat entries."""

    entries: dict[int, LogFloat] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned = {
            int(k): v for k, v in self.entries.items() if v.sign != 0
        }
        object.__setattr__(self, "entries", cleaned)

    @classmethod
    def from_seqvector(cls, x: SeqVector) -> "LogVector":
        return cls({k: LogFloat.from_float(v) for k, v in x.entries.items()})

    def to_seqvector(self, index_domain: str = "natural") -> SeqVector:
        return SeqVector(
            {k: v.to_float() for k, v in self.entries.items()}, index_domain
        )

    def get(self, n: int) -> LogFloat:
        return self.entries.get(n, LogFloat.zero())

    def support(self) -> list[int]:
        return sorted(self.entries)

    def rel_close(self, other: "LogVector", tol: float) -> bool:
        keys = set(self.entries) | set(other.entries)
        return all(self.get(k).rel_close(other.get(k), tol) for k in keys)


# ---------------------------------------------------------------------------
# two-run weights: runs of 2's alternating with runs of 1/2's


@dataclass(frozen=True)
class TwoRunWeights:
    """Weight 2 on runs of lengths b_i, weight 1/2 on runs of lengths a_i.

    The position axis is split as [1, b_1], (b_1, b_1 + a_1], ... with the
    lengths interleaved strictly increasing (b_1 < a_1 < b_2 < ...).  The
    cumulative product over [1, m] is 2**e(m) with the exact integer
    exponent e(m) = 2 * c2(m) - m, where c2 counts weight-2 positions; e
    moves by one per step and is monotone within a run, so run-endpoint
    checks certify exponent bounds over whole blocks.
    """

    two_lengths: tuple[int, ...]
    half_lengths: tuple[int, ...]

    def __post_init__(self) -> None:
        two = tuple(int(v) for v in self.two_lengths)
        half = tuple(int(v) for v in self.half_lengths)
        if len(two) != len(half) or not two:
            raise ValueError("need equally many run lengths of both kinds")
        inter = [v for pair in zip(two, half) for v in pair]
        if any(v < 1 for v in inter):
            raise ValueError("run lengths must be >= 1")
        if any(u >= v for u, v in zip(inter, inter[1:])):
            raise ValueError("interleaved run lengths must strictly increase")
        object.__setattr__(self, "two_lengths", two)
        object.__setattr__(self, "half_lengths", half)

    @classmethod
    def concrete(cls, pairs: int = 4) -> "TwoRunWeights":
        """The instance with interleaved lengths sum_{i<=m} 2**(i*i).

        First lengths 2, 18, 530, 66066, then 33620498 and onward; four
        pairs put the table end near 1.9e19, far past every scan horizon.
        """
        lengths = []
        total = 0
        for m in range(1, 2 * pairs + 1):
            total += 2 ** (m * m)
            lengths.append(total)
        return cls(tuple(lengths[0::2]), tuple(lengths[1::2]))

    # run geometry, all exact integers

    def pairs(self) -> int:
        return len(self.two_lengths)

    def pair_end(self, l: int) -> int:
        """P_l = total length of the first l run pairs."""
        return sum(self.two_lengths[:l]) + sum(self.half_lengths[:l])

    def two_mass_upto(self, l: int) -> int:
        return sum(self.two_lengths[:l])

    def half_mass_upto(self, l: int) -> int:
        return sum(self.half_lengths[:l])

    def table_end(self) -> int:
        return self.pair_end(self.pairs())

    def locate(self, m: int) -> tuple[int, str]:
        """(pair index l >= 1, "two" or "half") containing position m."""
        if m < 1 or m > self.table_end():
            raise ValueError(f"position {m} outside the weight table")
        for l in range(1, self.pairs() + 1):
            start = self.pair_end(l - 1)
            if m <= start + self.two_lengths[l - 1]:
                return l, "two"
            if m <= self.pair_end(l):
                return l, "half"
        raise AssertionError("unreachable")

    def weight_at(self, m: int) -> float:
        return 2.0 if self.locate(m)[1] == "two" else 0.5

    def count_two(self, m: int) -> int:
        """Number of weight-2 positions in [1, m]."""
        if m <= 0:
            return 0
        l, kind = self.locate(m)
        if kind == "two":
            return self.two_mass_upto(l - 1) + (m - self.pair_end(l - 1))
        return self.two_mass_upto(l)

    def cum_exponent(self, m: int) -> int:
        """e(m) with product(weights over [1, m]) = 2**e(m); e(0) = 0."""
        return 2 * self.count_two(m) - m

    def sliding_exponent(self, s: int, k: int) -> int:
        """Exponent of the product over [s, s + k - 1]."""
        return self.cum_exponent(s + k - 1) - self.cum_exponent(s - 1)

    def exponent_prefix(self, limit: int) -> np.ndarray:
        """e(0..limit) as an int64 array (index m holds e(m))."""
        if limit > 10**8:
            raise ValueError("prefix window too large")
        steps = np.empty(limit + 1, dtype=np.int64)
        steps[0] = 0
        pos = 1
        for l in range(1, self.pairs() + 1):
            for length, delta in (
                (self.two_lengths[l - 1], 1),
                (self.half_lengths[l - 1], -1),
            ):
                if pos > limit:
                    break
                hi = min(pos + length - 1, limit)
                steps[pos : hi + 1] = delta
                pos = hi + 1
            if pos > limit:
                break
        if pos <= limit:
            raise ValueError("prefix window beyond the weight table")
        return np.cumsum(steps)

    # the deep sub-blocks used by the chaos constructions

    def deep_two_block(self, n: int) -> tuple[int, int] | None:
        """Late portion of the n-th 2-run: [1 + P_{n-1} + ceil(b_n/n) + n,
        P_{n-1} + b_n]; None when that window is empty."""
        b_n = self.two_lengths[n - 1]
        base = self.pair_end(n - 1)
        lo = 1 + base + (-(-b_n // n)) + n
        hi = base + b_n
        return (lo, hi) if lo <= hi else None

    def deep_half_block(self, n: int) -> tuple[int, int] | None:
        """Late portion of the n-th 1/2-run: [1 + P_{n-1} + b_n +
        ceil(a_n/n) + n, P_n]; None when empty."""
        a_n = self.half_lengths[n - 1]
        base = self.pair_end(n - 1) + self.two_lengths[n - 1]
        lo = 1 + base + (-(-a_n // n)) + n
        hi = self.pair_end(n)
        return (lo, hi) if lo <= hi else None

    def deep_two_blocks(self, n_max: int | None = None) -> Blocks:
        ivs = []
        for n in range(1, (n_max or self.pairs()) + 1):
            blk = self.deep_two_block(n)
            if blk:
                ivs.append(blk)
        return Blocks.of(ivs)

    def deep_half_blocks(self, n_max: int | None = None) -> Blocks:
        ivs = []
        for n in range(1, (n_max or self.pairs()) + 1):
            blk = self.deep_half_block(n)
            if blk:
                ivs.append(blk)
        return Blocks.of(ivs)

    # growth condition and the exponent certificates it licenses

    def tail_condition(self, n: int) -> bool:
        """Both run lengths of pair n dominate the accumulated imbalance:
        b_n > n*S + n^2 + n + 1 and a_n > n*S + n*b_n + n^2 + n + 1 with
        S = sum_{i<n} (a_i - b_i)."""
        s = self.half_mass_upto(n - 1) - self.two_mass_upto(n - 1)
        b_n = self.two_lengths[n - 1]
        a_n = self.half_lengths[n - 1]
        floor = n * s + n * n + n + 1
        return b_n > floor and a_n > floor + n * b_n

    def scan_threshold(self) -> int:
        """Smallest n0 with tail_condition true from n0 through the table."""
        n0 = None
        for n in range(1, self.pairs() + 1):
            if self.tail_condition(n):
                if n0 is None:
                    n0 = n
            else:
                n0 = None
        if n0 is None:
            raise ValueError("growth condition never stabilizes on this table")
        return n0

    def block_exponent_certificate(self, n: int) -> dict[str, bool]:
        """Exact endpoint checks: e(m) > n on the deep 2-block and
        e(m) < -n on the deep 1/2-block of pair n.

        e increases on 2-runs and decreases on 1/2-runs, so the minimum over
        the deep 2-block sits at its left endpoint and the maximum over the
        deep 1/2-block sits at its left endpoint.
        """
        out = {}
        two = self.deep_two_block(n)
        out["two_block_above"] = (
            two is not None
            and self.cum_exponent(two[0]) > n
            and self.cum_exponent(two[1]) > n
        )
        half = self.deep_half_block(n)
        out["half_block_below"] = (
            half is not None
            and self.cum_exponent(half[0]) < -n
            and self.cum_exponent(half[1]) < -n
        )
        return out

    def half_slope_certificate(self, n: int) -> dict[str, bool]:
        """Exact checks for the linear-rate strengthening.

        On the n-th 2-run, e(m) = m - 2 * H with H the half mass before it,
        so e(m) >= m/2 iff m >= 4H; on the n-th 1/2-run, e(m) = 2 * B - m
        with B the two mass through it, so e(m) <= -m/2 iff m >= 4B.  The
        deep blocks sit late in their runs, so checking the left endpoint
        certifies the whole block.
        """
        out = {}
        two = self.deep_two_block(n)
        out["two_block_rate"] = (
            two is not None and two[0] >= 4 * self.half_mass_upto(n - 1)
        )
        half = self.deep_half_block(n)
        out["half_block_rate"] = (
            half is not None and half[0] >= 4 * self.two_mass_upto(n)
        )
        return out


# ---------------------------------------------------------------------------
# weight sequences


_WEIGHT_KINDS = frozenset({"constant", "geometric", "explicit", "block"})


@dataclass(frozen=True)
class WeightSequence:
    """Positive weights w_1, w_2, ... from one of four generators.

    constant(w); geometric(j) with w_n = 2**j * n**j; explicit(table, tail)
    reading the table then a constant tail; block(runs) taking 2 or 1/2 from
    a TwoRunWeights table (reciprocal swaps the two values).
    """

    kind: str
    value: float = 1.0
    power: int = 1
    table: tuple[float, ...] = ()
    tail: float = 1.0
    runs: TwoRunWeights | None = None
    reciprocal: bool = False

    def __post_init__(self) -> None:
        if self.kind not in _WEIGHT_KINDS:
            raise ValueError(f"unknown weight generator {self.kind!r}")
        if self.kind == "constant" and self.value <= 0:
            raise ValueError("constant weight must be positive")
        if self.kind == "explicit" and (
            any(v <= 0 for v in self.table) or self.tail <= 0
        ):
            raise ValueError("explicit weights must be positive")
        if self.kind == "block" and self.runs is None:
            raise ValueError("block weights need a run table")

    @classmethod
    def constant(cls, w: float) -> "WeightSequence":
        return cls(kind="constant", value=float(w))

    @classmethod
    def geometric(cls, j: int) -> "WeightSequence":
        """w_n = 2**j * n**j."""
        if j < 1:
            raise ValueError("geometric index must be >= 1")
        return cls(kind="geometric", power=int(j))

    @classmethod
    def explicit(
        cls, table: Iterable[float], tail: float = 1.0
    ) -> "WeightSequence":
        return cls(
            kind="explicit",
            table=tuple(float(v) for v in table),
            tail=float(tail),
        )

    @classmethod
    def block(
        cls, runs: TwoRunWeights, reciprocal: bool = False
    ) -> "WeightSequence":
        return cls(kind="block", runs=runs, reciprocal=reciprocal)

    def value_at(self, n: int) -> float:
        if n < 1:
            raise ValueError("weight index must be >= 1")
        if self.kind == "constant":
            return self.value
        if self.kind == "geometric":
            return float(2**self.power) * float(n) ** self.power
        if self.kind == "explicit":
            return self.table[n - 1] if n <= len(self.table) else self.tail
        w = self.runs.weight_at(n)
        return 1.0 / w if self.reciprocal else w

    def log_at(self, n: int) -> float:
        if self.kind == "geometric":
            return self.power * (LOG2 + math.log(n))
        if self.kind == "block":
            base = LOG2 if self.runs.weight_at(n) == 2.0 else -LOG2
            return -base if self.reciprocal else base
        return math.log(self.value_at(n))

    def log_product(self, start: int, count: int) -> float:
        """log of w_start * ... * w_{start+count-1} (closed form if any)."""
        if count == 0:
            return 0.0
        if self.kind == "constant":
            return count * math.log(self.value)
        if self.kind == "geometric":
            return self.power * (
                count * LOG2
                + math.lgamma(start + count)
                - math.lgamma(start)
            )
        if self.kind == "block":
            e = self.runs.sliding_exponent(start, count)
            return (-e if self.reciprocal else e) * LOG2
        return sum(self.log_at(i) for i in range(start, start + count))

    def product(self, start: int, count: int) -> float:
        """Exact-as-float product; may overflow for extreme windows."""
        if self.kind == "block":
            e = self.runs.sliding_exponent(start, count)
            return float(
                Fraction(2) ** (-e if self.reciprocal else e)
            ) if abs(e) < 1020 else (
                math.inf if (e > 0) != self.reciprocal else 0.0
            )
        out = 1.0
        for i in range(start, start + count):
            out *= self.value_at(i)
        return out


# ---------------------------------------------------------------------------
# coordinatewise regularizers


@dataclass(frozen=True)
class Regularizer:
    """Positive diagonal damping a_n applied before shift powers."""

    kind: str
    power: int = 1

    def __post_init__(self) -> None:
        if self.kind not in ("unit", "inverse_factorial"):
            raise ValueError(f"unknown regularizer {self.kind!r}")
        if self.power < 1:
            raise ValueError("regularizer power must be >= 1")

    @classmethod
    def unit(cls) -> "Regularizer":
        return cls(kind="unit")

    @classmethod
    def inverse_factorial(cls, power: int) -> "Regularizer":
        """a_n = ((n-1)!)**(-power)."""
        return cls(kind="inverse_factorial", power=int(power))

    def log_at(self, n: int) -> float:
        if self.kind == "unit":
            return 0.0
        return -self.power * math.lgamma(n)

    def value_at(self, n: int) -> float:
        return math.exp(self.log_at(n))


# ---------------------------------------------------------------------------
# shift powers, closed forms


def backward_shift_power(
    weights: WeightSequence, k: int, x: SeqVector
) -> SeqVector:
    """k-th power of the weighted backward shift in one pass.

    Output coordinate n receives x_{n+k} times the weight window product
    over [n, n+k-1]; k = 0 returns x unchanged.
    """
    if k < 0:
        raise ValueError("power must be >= 0")
    if x.index_domain != "natural":
        raise ValueError("backward shifts act on naturally indexed vectors")
    if k == 0:
        return x
    out: dict[int, float] = {}
    for idx, val in x.entries.items():
        n = idx - k
        if n >= 1:
            out[n] = weights.product(n, k) * val
    return SeqVector(out, "natural")


def forward_shift_power(
    weights: WeightSequence, k: int, x: SeqVector
) -> SeqVector:
    """k-th power of the weighted forward shift in one pass.

    Output coordinate n + k receives x_n times the window product over
    [n, n+k-1].
    """
    if k < 0:
        raise ValueError("power must be >= 0")
    if x.index_domain != "natural":
        raise ValueError("forward shifts act on naturally indexed vectors")
    if k == 0:
        return x
    out = {
        idx + k: weights.product(idx, k) * val
        for idx, val in x.entries.items()
    }
    return SeqVector(out, "natural")


def shift_power_norm(
    weights: WeightSequence, k: int, horizon: int
) -> float:
    """Sup of the k-term sliding window products over start points <= horizon.

    A lower bound for the operator norm of the k-th shift power; the winner
    window is recomputed by direct multiplication so constant weights come
    out exact.
    """
    if k < 1:
        raise ValueError("power must be >= 1")
    if horizon < k:
        raise ValueError("horizon must be >= the power")
    best_n = 1
    best_log = -math.inf
    # prefix log sums make the scan linear in horizon + k
    prefix = [0.0]
    for i in range(1, horizon + k):
        prefix.append(prefix[-1] + weights.log_at(i))
    for n in range(1, horizon + 1):
        lg = prefix[n + k - 1] - prefix[n - 1]
        if lg > best_log:
            best_log = lg
            best_n = n
    value = weights.product(best_n, k)
    return value if math.isfinite(value) else math.exp(best_log)


def regularized_power_apply(
    weights: WeightSequence,
    reg: Regularizer,
    j: int,
    k: int,
    x: SeqVector,
) -> LogVector:
    """Damp by the regularizer, then take k backward steps, in closed form.

    Output coordinate n holds a_{k+n} * x_{k+n} * prod weights over
    [n, n+k-1], carried as (sign, log) pairs: the factorial-scale damping
    leaves double range quickly.
    """
    if j < 1:
        raise ValueError("family index must be >= 1")
    if k < 0:
        raise ValueError("power must be >= 0")
    out: dict[int, LogFloat] = {}
    for idx, val in x.entries.items():
        n = idx - k
        if n < 1 or val == 0.0:
            continue
        lg = reg.log_at(idx) + weights.log_product(n, k) + math.log(abs(val))
        out[n] = LogFloat(1 if val > 0 else -1, lg)
    return LogVector(out)


def b_jk(
    weights: WeightSequence,
    reg: Regularizer,
    j: int,
    k: int,
    horizon: int,
    anchor: str = "input",
) -> float:
    """Sup over n <= horizon of the regularized k-window weight product.

    anchor "input" damps at the input coordinate (a_{k+n} prod over
    [n, n+k-1]); anchor "output" damps at the output coordinate (a_n times
    the same window).  Both are scanned in log space with a running max; a
    lower bound for the corresponding operator norm.
    """
    if k < 1 or horizon < 1:
        raise ValueError("need k >= 1 and horizon >= 1")
    if anchor not in ("input", "output"):
        raise ValueError(f"unknown anchor {anchor!r}")
    best = -math.inf
    for n in range(1, horizon + 1):
        damp = reg.log_at(k + n if anchor == "input" else n)
        lg = damp + weights.log_product(n, k)
        if lg > best:
            best = lg
    return math.exp(best) if best <= 709.0 else math.inf


def b_jk_log(
    weights: WeightSequence,
    reg: Regularizer,
    j: int,
    k: int,
    horizon: int,
    anchor: str = "input",
) -> tuple[float, int]:
    """(log sup, argmax n) version of b_jk for out-of-range magnitudes."""
    if k < 1 or horizon < 1:
        raise ValueError("need k >= 1 and horizon >= 1")
    best = -math.inf
    best_n = 1
    for n in range(1, horizon + 1):
        damp = reg.log_at(k + n if anchor == "input" else n)
        lg = damp + weights.log_product(n, k)
        if lg > best:
            best = lg
            best_n = n
    return best, best_n


def diagonal_apply(
    entries: Callable[[int, int], Sequence[float]],
    j: int,
    k: int,
    x: Sequence[float],
) -> np.ndarray:
    """Componentwise product with the (j, k)-th diagonal."""
    diag = np.asarray(entries(j, k), dtype=float)
    vec = np.asarray(x, dtype=float)
    if diag.shape != vec.shape:
        raise ValueError(
            f"dimension mismatch: diagonal {diag.shape} vs vector {vec.shape}"
        )
    return diag * vec


def translation_power(
    a: int,
    w: Callable[[Fraction], float],
    n: int,
    f: GridFunction,
) -> GridFunction:
    """n-th power of the weighted translation (Tf)(x) = w(x) f(x - a).

    (T^n f)(x) = f(x - n a) * prod_{s=0}^{n-1} w(x - s a), evaluated in one
    pass over the support; n = 0 returns f.
    """
    if n < 0:
        raise ValueError("power must be >= 0")
    if n == 0:
        return f
    shift = Fraction(n * a)
    out: dict[Fraction, float] = {}
    for p, val in f.entries.items():
        x = p + shift
        coeff = 1.0
        for s in range(n):
            coeff *= w(x - s * Fraction(a))
        out[x] = coeff * val
    return GridFunction(out, f.step)


def phi_product(
    w: Callable[[Fraction], float], a: int, n: int, x
) -> float:
    """prod_{s=1}^{n} w(x + s a), the n-step weight along the translation."""
    if n < 1:
        raise ValueError("need n >= 1")
    x = Fraction(x)
    out = 1.0
    for s in range(1, n + 1):
        out *= w(x + s * Fraction(a))
    return out


def generalized_backward_apply(
    omega: Callable[[int, int], float],
    jumps: Callable[[int, int], int],
    j: int,
    k: int,
    x: SeqVector,
) -> SeqVector:
    """k-fold application of x |-> (omega(n, j) * x_{n + jumps(n, j)})_n.

    The jump size depends on the position, so windows are index dependent
    and the power is iterated step by step rather than via a closed form.
    """
    if k < 0:
        raise ValueError("power must be >= 0")
    cur = x
    for _ in range(k):
        out: dict[int, float] = {}
        # one step reads x at n + a(n, j); invert by scanning the support
        for n in _step_sources(cur, jumps, j):
            val = cur.get(n + jumps(n, j))
            if val != 0.0:
                out[n] = omega(n, j) * val
        cur = SeqVector(out, "natural")
    return cur


def _step_sources(
    x: SeqVector, jumps: Callable[[int, int], int], j: int
) -> Iterable[int]:
    """Positions n with n + jumps(n, j) in the support of x.

    n + jumps(n, j) is strictly increasing in n (jumps are increasing), so
    each support point has at most one preimage, found by binary search.
    """
    targets = x.support()
    if not targets:
        return []
    out = []
    for t in targets:
        lo, hi = 1, t
        while lo < hi:
            mid = (lo + hi) // 2
            if mid + jumps(mid, j) < t:
                lo = mid + 1
            else:
                hi = mid
        if lo + jumps(lo, j) == t:
            out.append(lo)
    return out


# ---------------------------------------------------------------------------
# family wrapper


_FAMILY_KINDS = frozenset(
    {
        "backward_shift_power",
        "forward_shift_power",
        "diagonal_sequence",
        "regularized_shift_power",
        "translation_power",
        "generalized_backward",
        "affine_coset",
    }
)


@dataclass(frozen=True, eq=False)
class OperatorFamily:
    """N indexed maps (j, k) -> linear application, over one space."""

    kind: str
    n_ops: int
    space: SeminormSpace
    apply_fn: Callable[[int, int, object], object] = field(repr=False)
    params: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if self.kind not in _FAMILY_KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.n_ops < 1:
            raise ValueError("family count must be >= 1")

    def apply(self, j: int, k: int, x):
        if not 1 <= j <= self.n_ops:
            raise ValueError(f"family index {j} outside 1..{self.n_ops}")
        if k < 1:
            raise ValueError("orbit index must be >= 1")
        return self.apply_fn(j, k, x)


def backward_shift_family(
    weights: Sequence[WeightSequence], space: SeminormSpace
) -> OperatorFamily:
    ws = tuple(weights)
    return OperatorFamily(
        kind="backward_shift_power",
        n_ops=len(ws),
        space=space,
        apply_fn=lambda j, k, x: backward_shift_power(ws[j - 1], k, x),
        params={"weights": ws},
    )


def forward_shift_family(
    weights: Sequence[WeightSequence], space: SeminormSpace
) -> OperatorFamily:
    ws = tuple(weights)
    return OperatorFamily(
        kind="forward_shift_power",
        n_ops=len(ws),
        space=space,
        apply_fn=lambda j, k, x: forward_shift_power(ws[j - 1], k, x),
        params={"weights": ws},
    )


def diagonal_family(
    entries: Callable[[int, int], Sequence[float]],
    dimension: int,
    n_ops: int,
    space: SeminormSpace | None = None,
) -> OperatorFamily:
    """Doubly indexed diagonal maps on a fixed finite dimension.

    Vectors travel as SeqVector on coordinates 1..dimension; the diagonal
    itself is whatever the entries table yields for (j, k).
    """
    space = space or SeminormSpace.lp(2.0)

    def apply(j: int, k: int, x: SeqVector) -> SeqVector:
        vec = [x.get(i) for i in range(1, dimension + 1)]
        out = diagonal_apply(entries, j, k, vec)
        return SeqVector(
            {i + 1: float(v) for i, v in enumerate(out)}, x.index_domain
        )

    return OperatorFamily(
        kind="diagonal_sequence",
        n_ops=n_ops,
        space=space,
        apply_fn=apply,
        params={"entries": entries, "dimension": dimension},
    )


def scalar_pattern_family(
    coefficient: Callable[[int, int], float],
    n_ops: int,
    dimension: int = 2,
    space: SeminormSpace | None = None,
) -> OperatorFamily:
    """Scalar multiples of the identity with (j, k)-dependent coefficients."""
    return diagonal_family(
        lambda j, k: [coefficient(j, k)] * dimension,
        dimension,
        n_ops,
        space,
    )


def regularized_family(
    weights: Sequence[WeightSequence],
    reg: Regularizer,
    space: SeminormSpace,
) -> OperatorFamily:
    ws = tuple(weights)
    return OperatorFamily(
        kind="regularized_shift_power",
        n_ops=len(ws),
        space=space,
        apply_fn=lambda j, k, x: regularized_power_apply(
            ws[j - 1], reg, j, k, x
        ),
        params={"weights": ws, "regularizer": reg},
    )


def translation_family(
    offsets: Sequence[int],
    weight_fns: Sequence[Callable[[Fraction], float]],
    space: SeminormSpace,
) -> OperatorFamily:
    offs = tuple(int(a) for a in offsets)
    fns = tuple(weight_fns)
    if len(offs) != len(fns):
        raise ValueError("offsets and weight functions must pair up")
    return OperatorFamily(
        kind="translation_power",
        n_ops=len(offs),
        space=space,
        apply_fn=lambda j, n, f: translation_power(
            offs[j - 1], fns[j - 1], n, f
        ),
        params={"offsets": offs},
    )


def generalized_backward_family(
    omega: Callable[[int, int], float],
    jumps: Callable[[int, int], int],
    n_ops: int,
    space: SeminormSpace,
) -> OperatorFamily:
    return OperatorFamily(
        kind="generalized_backward",
        n_ops=n_ops,
        space=space,
        apply_fn=lambda j, k, x: generalized_backward_apply(
            omega, jumps, j, k, x
        ),
        params={"omega": omega, "jumps": jumps},
    )


def affine_coset_family(
    n_ops: int,
    space: SeminormSpace,
    coset_fn: Callable[[int, int, object], object],
) -> OperatorFamily:
    """Set-valued maps: (j, k, x) -> an affine coset of images.

    Tracing such a family needs an mlo selection mode; the coset builder
    decides the subspace part per (j, k) and may raise NotAttainable.
    """
    return OperatorFamily(
        kind="affine_coset",
        n_ops=n_ops,
        space=space,
        apply_fn=coset_fn,
        params={},
    )
