"""Subsets of the naturals with computable densities.

Three backends, in increasing order of expressive power:

* ``ExactSet``: ultimately periodic sets in canonical form (period, residue
  set, threshold, finite low part).  Natural density exists and is an exact
  Fraction.  Closed under the Boolean operations, shifts, scaled preimages
  and rank subpartition.  A density-one ultimately periodic set is cofinite,
  so these sets cannot tell "intersection has full density" apart from
  "each set has full density"; the pattern backend below exists for that.

* ``BlockPatternSet`` over a ``BlockSkeleton``: the naturals are cut into
  consecutive blocks of squared-exponential lengths, blocks are dealt
  cyclically to pieces, and membership is decided by a finite atom table
  (piece, block class within the piece, member rank within the piece) plus a
  finite exception set.  Upper density is exact and counts up to huge n are
  closed-form big-integer arithmetic.

* boolean masks over a finite window, summarized by ``DensityProfile``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np


class OverlappingProgressionsError(ValueError):
    """Two arithmetic progressions in one literal share an element."""


# ---------------------------------------------------------------------------
# exact ultimately periodic sets


def _minimal_period(period: int, residues: frozenset[int]) -> tuple[int, frozenset[int]]:
    for d in range(1, period + 1):
        if period % d:
            continue
        folded = frozenset(r % d for r in residues)
        if all((r % d in folded) == (r in residues) for r in range(period)):
            return d, folded
    return period, residues


@dataclass(frozen=True)
class ExactSet:
    """Ultimately periodic subset of {1, 2, 3, ...} in canonical form.

    Membership for k >= threshold is ``k % period in residues``; below the
    threshold it is ``k in low``.  Canonicalization minimizes the period,
    then the threshold, so equal sets compare equal.
    """

    period: int
    residues: frozenset[int]
    threshold: int = 1
    low: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        if self.period < 1:
            raise ValueError("period must be >= 1")
        if self.threshold < 1:
            raise ValueError("threshold must be >= 1")
        if any(not 0 <= r < self.period for r in self.residues):
            raise ValueError("residues must lie in [0, period)")
        if any(k < 1 or k >= self.threshold for k in self.low):
            raise ValueError("low part must lie in [1, threshold)")
        period, residues = _minimal_period(self.period, frozenset(self.residues))
        threshold = self.threshold
        low = set(self.low)
        while threshold > 1:
            k = threshold - 1
            if (k in low) == (k % period in residues):
                low.discard(k)
                threshold = k
            else:
                break
        object.__setattr__(self, "period", period)
        object.__setattr__(self, "residues", residues)
        object.__setattr__(self, "threshold", threshold)
        object.__setattr__(self, "low", frozenset(low))

    # constructors

    @classmethod
    def empty(cls) -> "ExactSet":
        return cls(1, frozenset())

    @classmethod
    def full(cls) -> "ExactSet":
        return cls(1, frozenset({0}))

    @classmethod
    def finite(cls, members: Iterable[int]) -> "ExactSet":
        ms = {int(k) for k in members}
        if not ms:
            return cls.empty()
        if min(ms) < 1:
            raise ValueError("members must be >= 1")
        return cls(1, frozenset(), max(ms) + 1, frozenset(ms))

    @classmethod
    def progression(cls, offset: int, step: int) -> "ExactSet":
        """{offset, offset + step, offset + 2 step, ...}"""
        if offset < 1 or step < 1:
            raise ValueError("offset and step must be >= 1")
        return cls(step, frozenset({offset % step}), offset)

    @classmethod
    def from_progressions(
        cls,
        progressions: Sequence[tuple[int, int]],
        include: Iterable[int] = (),
        exclude: Iterable[int] = (),
    ) -> "ExactSet":
        """Union of pairwise disjoint progressions, then include / exclude.

        Progressions are given as (offset, step).  Two progressions whose
        offsets agree modulo gcd(step1, step2) share infinitely many
        elements; that is rejected rather than silently merged.
        """
        progs = [(int(o), int(s)) for o, s in progressions]
        for i, (o1, s1) in enumerate(progs):
            for o2, s2 in progs[i + 1 :]:
                if (o1 - o2) % math.gcd(s1, s2) == 0:
                    raise OverlappingProgressionsError(
                        f"progressions ({o1},{s1}) and ({o2},{s2}) intersect"
                    )
        out = cls.empty()
        for o, s in progs:
            out = out.union(cls.progression(o, s))
        inc = {int(k) for k in include}
        exc = {int(k) for k in exclude}
        if inc:
            out = out.union(cls.finite(inc))
        if exc:
            out = out.difference(cls.finite(exc))
        return out

    @classmethod
    def from_literal(cls, obj: dict) -> "ExactSet":
        """Parse the interchange literal.

        ``{"progressions": [{"offset": o, "step": s}, ...],
           "include": [...], "exclude": [...]}``;
        progressions may also be two-element arrays [offset, step].
        """
        raw = obj.get("progressions", [])
        progs = []
        for item in raw:
            if isinstance(item, dict):
                progs.append((item["offset"], item["step"]))
            else:
                o, s = item
                progs.append((o, s))
        return cls.from_progressions(
            progs, obj.get("include", ()), obj.get("exclude", ())
        )

    def to_literal(self) -> dict:
        """Canonical literal: one progression per residue plus low part."""
        progressions = []
        for r in sorted(self.residues):
            offset = self.threshold + ((r - self.threshold) % self.period)
            progressions.append({"offset": offset, "step": self.period})
        return {
            "progressions": progressions,
            "include": sorted(self.low),
            "exclude": [],
        }

    # queries

    def contains(self, k: int) -> bool:
        if k < 1:
            return False
        if k < self.threshold:
            return k in self.low
        return k % self.period in self.residues

    def __contains__(self, k: int) -> bool:
        return self.contains(k)

    def members_upto(self, n: int) -> list[int]:
        return [k for k in range(1, n + 1) if self.contains(k)]

    def count_upto(self, n: int) -> int:
        if n < 1:
            return 0
        count = sum(1 for k in self.low if k <= n)
        if n >= self.threshold:
            span = n - self.threshold + 1
            full, rem = divmod(span, self.period)
            count += full * len(self.residues)
            base = self.threshold
            count += sum(
                1 for d in range(rem) if (base + d) % self.period in self.residues
            )
        return count

    def density(self) -> Fraction:
        """Natural density; exists exactly for ultimately periodic sets."""
        return Fraction(len(self.residues), self.period)

    def upper_density(self) -> Fraction:
        return self.density()

    def is_cofinite(self) -> bool:
        return len(self.residues) == self.period

    def mask(self, horizon: int) -> np.ndarray:
        """Boolean membership over 1..horizon (index 0 is k = 1)."""
        out = np.zeros(horizon, dtype=bool)
        for k in self.low:
            if k <= horizon:
                out[k - 1] = True
        for r in self.residues:
            start = self.threshold + ((r - self.threshold) % self.period)
            if start <= horizon:
                out[start - 1 : horizon : self.period] = True
        return out

    # algebra, via residue bitmaps on the common period

    def _bitmap(self, period: int) -> int:
        bits = 0
        for r in range(period):
            if r % self.period in self.residues:
                bits |= 1 << r
        return bits

    def _combine(self, other: "ExactSet", op) -> "ExactSet":
        period = math.lcm(self.period, other.period)
        threshold = max(self.threshold, other.threshold)
        bits = op(self._bitmap(period), other._bitmap(period))
        residues = frozenset(r for r in range(period) if bits >> r & 1)
        low = frozenset(
            k
            for k in range(1, threshold)
            if op(int(self.contains(k)), int(other.contains(k))) & 1
        )
        return ExactSet(period, residues, threshold, low)

    def union(self, other: "ExactSet") -> "ExactSet":
        return self._combine(other, lambda a, b: a | b)

    def intersect(self, other: "ExactSet") -> "ExactSet":
        return self._combine(other, lambda a, b: a & b)

    def difference(self, other: "ExactSet") -> "ExactSet":
        return self._combine(other, lambda a, b: a & ~b)

    def complement(self) -> "ExactSet":
        residues = frozenset(r for r in range(self.period) if r not in self.residues)
        low = frozenset(k for k in range(1, self.threshold) if k not in self.low)
        return ExactSet(self.period, residues, self.threshold, low)

    def shift(self, d: int) -> "ExactSet":
        """{k + d : k in self, k + d >= 1}."""
        d = int(d)
        residues = frozenset((r + d) % self.period for r in self.residues)
        threshold = max(1, self.threshold + d)
        low = frozenset(k + d for k in self.low if 1 <= k + d < threshold)
        if d < 0:
            # periodic members pushed below the new threshold must be kept
            extra = {
                k + d
                for k in range(self.threshold, self.threshold - d)
                if 1 <= k + d < threshold and k % self.period in self.residues
            }
            low = low | frozenset(extra)
        return ExactSet(self.period, residues, threshold, low)


def _int_scaled_preimage(a: ExactSet, p: int) -> ExactSet:
    """{k >= 1 : p * k in a} for integer p >= 1."""
    period = a.period // math.gcd(p, a.period)
    residues = frozenset(k for k in range(period) if (p * k) % a.period in a.residues)
    threshold = max(1, -(-a.threshold // p))  # ceil(T / p)
    low = frozenset(k for k in range(1, threshold) if a.contains(p * k))
    return ExactSet(period, residues, threshold, low)


def _dilate(b: ExactSet, q: int) -> ExactSet:
    """{q * k : k in b} for integer q >= 1."""
    period = q * b.period
    residues = frozenset((q * r) % period for r in b.residues)
    threshold = q * b.threshold
    low = frozenset(q * k for k in b.low)
    return ExactSet(period, residues, max(1, threshold), low)


def scaled_preimage(a: ExactSet, ratio) -> ExactSet:
    """{k >= 1 : ratio * k is an integer belonging to a}."""
    r = Fraction(ratio)
    if r <= 0:
        raise ValueError("ratio must be positive")
    return _dilate(_int_scaled_preimage(a, r.numerator), r.denominator)


def q_set(base: ExactSet, ratios: Sequence) -> ExactSet:
    """{k : ratio_j * k in base + 1 for every j}, the joint return set."""
    shifted = base.shift(1)
    out = ExactSet.full()
    for ratio in ratios:
        out = out.intersect(scaled_preimage(shifted, ratio))
    return out


def bounded_density_subpartition(s, n_parts: int) -> list["ExactSet"]:
    """Split by member rank modulo n_parts; each part has density/n_parts.

    Rank r member goes to part r % n_parts.  For an ultimately periodic base
    the parts are again ultimately periodic: ranks advance by the per-period
    member count c, so rank mod n_parts repeats with super-period
    period * n_parts / gcd(c, n_parts).  A finite interval table is split by
    enumeration (its rank split is a finite set, hence exactly periodic).
    """
    if n_parts < 1:
        raise ValueError("n_parts must be >= 1")
    if isinstance(s, Blocks):
        if s.size() > 10**7:
            raise ValueError("interval table too large to enumerate")
        parts: list[list[int]] = [[] for _ in range(n_parts)]
        for rank, k in enumerate(s.members()):
            parts[rank % n_parts].append(k)
        return [ExactSet.finite(p) for p in parts]
    c = len(s.residues)
    if c == 0:
        return [ExactSet.empty() for _ in range(n_parts)]
    super_period = s.period * (n_parts // math.gcd(c, n_parts))
    t = s.threshold
    rank = 0
    lows: list[set[int]] = [set() for _ in range(n_parts)]
    for k in range(1, t):
        if s.contains(k):
            lows[rank % n_parts].add(k)
            rank += 1
    residue_sets: list[set[int]] = [set() for _ in range(n_parts)]
    for k in range(t, t + super_period):
        if s.contains(k):
            residue_sets[rank % n_parts].add(k % super_period)
            rank += 1
    return [
        ExactSet(super_period, frozenset(res), t, frozenset(low))
        for res, low in zip(residue_sets, lows)
    ]


# ---------------------------------------------------------------------------
# finite interval unions (concrete block tables)


@dataclass(frozen=True)
class Blocks:
    """Finite union of integer intervals [lo, hi], kept sorted and disjoint.

    ``checkpoints`` is the declared list of density anchors (by convention
    the right endpoints of the intervals); counting is closed-form, so the
    endpoints may be astronomically large.
    """

    intervals: tuple[tuple[int, int], ...]
    checkpoints: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        ivs = sorted((int(a), int(b)) for a, b in self.intervals)
        for a, b in ivs:
            if a > b or a < 1:
                raise ValueError(f"bad interval [{a}, {b}]")
        for (_, b0), (a1, _) in zip(ivs, ivs[1:]):
            if a1 <= b0:
                raise ValueError("intervals must be disjoint")
        cps = tuple(int(c) for c in self.checkpoints)
        if any(c < 1 for c in cps):
            raise ValueError("checkpoints must be >= 1")
        object.__setattr__(self, "intervals", tuple(ivs))
        object.__setattr__(self, "checkpoints", cps)

    @classmethod
    def of(cls, intervals: Iterable[tuple[int, int]]) -> "Blocks":
        ivs = tuple((int(a), int(b)) for a, b in intervals)
        return cls(ivs, tuple(b for _, b in sorted(ivs)))

    def contains(self, k: int) -> bool:
        return any(a <= k <= b for a, b in self.intervals)

    def __contains__(self, k: int) -> bool:
        return self.contains(k)

    def size(self) -> int:
        return sum(b - a + 1 for a, b in self.intervals)

    def members(self) -> list[int]:
        out: list[int] = []
        for a, b in self.intervals:
            out.extend(range(a, b + 1))
        return out

    def count_upto(self, n: int) -> int:
        return sum(max(0, min(b, n) - a + 1) for a, b in self.intervals)

    def profile(self) -> "DensityProfile":
        pts = tuple(
            (c, Fraction(self.count_upto(c), c)) for c in self.checkpoints
        )
        return DensityProfile(pts)

    def mask(self, horizon: int) -> np.ndarray:
        out = np.zeros(horizon, dtype=bool)
        for a, b in self.intervals:
            if a <= horizon:
                out[a - 1 : min(b, horizon)] = True
        return out

    def union(self, other: "Blocks") -> "Blocks":
        merged: list[list[int]] = []
        for a, b in sorted(self.intervals + other.intervals):
            if merged and a <= merged[-1][1] + 1:
                merged[-1][1] = max(merged[-1][1], b)
            else:
                merged.append([a, b])
        return Blocks.of((a, b) for a, b in merged)

    def intersect(self, other: "Blocks") -> "Blocks":
        out = []
        for a, b in self.intervals:
            for c, d in other.intervals:
                lo, hi = max(a, c), min(b, d)
                if lo <= hi:
                    out.append((lo, hi))
        return Blocks.of(out)

    def difference(self, other: "Blocks") -> "Blocks":
        out = []
        for a, b in self.intervals:
            cur = a
            for c, d in other.intervals:
                if d < cur or c > b:
                    continue
                if c > cur:
                    out.append((cur, c - 1))
                cur = max(cur, d + 1)
                if cur > b:
                    break
            if cur <= b:
                out.append((cur, b))
        return Blocks.of(out)


def full_density_partition(
    n_parts: int, growth: int = 2, horizon: int = 10**6
) -> list[Blocks]:
    """Deal blocks of length growth ** (t*t) cyclically to n_parts classes.

    The classes partition [1, horizon] exactly (the final block is truncated
    at the horizon).  Every class has upper density one along its own block
    ends: at the end of an own block the earlier mass is negligible against
    the block's length.  Each returned table carries its own block ends
    (clipped at the horizon) as checkpoints.
    """
    if n_parts < 2 or growth < 2:
        raise ValueError("need n_parts >= 2 and growth >= 2")
    if horizon < growth:
        raise ValueError("horizon smaller than the first block")
    parts: list[list[tuple[int, int]]] = [[] for _ in range(n_parts)]
    t = 1
    start = 1
    while start <= horizon:
        length = growth ** (t * t)
        end = min(start + length - 1, horizon)
        parts[(t - 1) % n_parts].append((start, end))
        start += length
        t += 1
    return [
        Blocks(tuple(p), tuple(b for _, b in p)) for p in parts
    ]


# ---------------------------------------------------------------------------
# density profiles


@dataclass(frozen=True)
class DensityProfile:
    """Occupancy ratios count(n)/n sampled at increasing checkpoints.

    ``sup`` is the exact running maximum of the ratio over every n in the
    scanned window when that scan happened (mask-backed profiles); profiles
    anchored only at closed-form checkpoints leave it None and fall back to
    the best checkpoint ratio.
    """

    points: tuple[tuple[int, Fraction], ...]
    sup: Fraction | None = None

    def sup_ratio(self, floor: int = 1) -> Fraction:
        if floor <= 1 and self.sup is not None:
            return self.sup
        best = Fraction(0)
        for n, ratio in self.points:
            if n >= floor:
                best = max(best, ratio)
        return best

    def as_floats(self) -> list[tuple[int, float]]:
        return [(n, float(r)) for n, r in self.points]


def mask_profile(mask: np.ndarray, checkpoints: Sequence[int]) -> DensityProfile:
    """Profile of a boolean window mask (index 0 is k = 1).

    Records the exact running max of count(n)/n over the whole window; for
    counts below 2**26 the float ranking is exact, and the winner is returned
    as an exact Fraction.
    """
    counts = np.cumsum(mask.astype(np.int64))
    pts = []
    for n in checkpoints:
        if not 1 <= n <= len(mask):
            raise ValueError(f"checkpoint {n} outside window")
        pts.append((int(n), Fraction(int(counts[n - 1]), int(n))))
    ns = np.arange(1, len(mask) + 1, dtype=np.float64)
    best = int(np.argmax(counts / ns))
    sup = Fraction(int(counts[best]), best + 1)
    return DensityProfile(tuple(pts), sup)


def empirical_density_profile(
    membership, horizon: int, checkpoints: Sequence[int]
) -> DensityProfile:
    """Profile of an arbitrary membership predicate over [1, horizon].

    ``membership`` may be a callable k -> bool, a boolean window mask, or any
    object with a ``mask(horizon)`` method.  Checkpoints must be nonempty and
    lie within the window.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    if not list(checkpoints):
        raise ValueError("checkpoint list must be nonempty")
    if isinstance(membership, np.ndarray):
        mask = membership[:horizon]
        if len(mask) < horizon:
            raise ValueError("mask shorter than the horizon")
    elif hasattr(membership, "mask"):
        mask = membership.mask(horizon)
    else:
        mask = np.fromiter(
            (bool(membership(k)) for k in range(1, horizon + 1)),
            dtype=bool,
            count=horizon,
        )
    return mask_profile(mask, checkpoints)


def default_checkpoints(horizon: int, per_decade: int = 4) -> list[int]:
    """Log-spaced checkpoints in [1, horizon], always ending at the horizon."""
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    pts = {horizon}
    n = 1.0
    ratio = 10.0 ** (1.0 / per_decade)
    while n < horizon:
        pts.add(int(round(n)))
        n *= ratio
    return sorted(p for p in pts if p >= 1)


# ---------------------------------------------------------------------------
# block pattern sets: exact upper densities beyond ultimate periodicity


@dataclass(frozen=True)
class BlockSkeleton:
    """Layout shared by a family of pattern sets.

    Global block t (t = 1, 2, ...) has length growth ** (t*t) and is owned by
    piece (t - 1) % pieces.  Within a piece, its own blocks are classed
    cyclically modulo l2_counts[p], and its members are classed by their
    rank within the piece modulo rank_moduli[p].  depth only bounds the
    declared checkpoint list; membership and counting extend lazily.
    """

    pieces: int = 2
    growth: int = 2
    depth: int = 14
    l2_counts: tuple[int, ...] = (1, 1)
    rank_moduli: tuple[int, ...] = (1, 1)

    def __post_init__(self) -> None:
        if self.pieces < 1 or self.growth < 2 or self.depth < 3:
            raise ValueError("need pieces >= 1, growth >= 2, depth >= 3")
        if len(self.l2_counts) != self.pieces or len(self.rank_moduli) != self.pieces:
            raise ValueError("per-piece tuples must have length = pieces")
        if any(c < 1 for c in self.l2_counts + self.rank_moduli):
            raise ValueError("class counts must be >= 1")

    def block_length(self, t: int) -> int:
        return self.growth ** (t * t)

    def block_end(self, t: int) -> int:
        return sum(self.block_length(s) for s in range(1, t + 1))

    def block_of(self, k: int) -> tuple[int, int]:
        """(t, offset) with offset in [1, length(t)] for k >= 1."""
        if k < 1:
            raise ValueError("k must be >= 1")
        t = 1
        start = 1
        while True:
            length = self.block_length(t)
            if k < start + length:
                return t, k - start + 1
            start += length
            t += 1

    def piece_of_block(self, t: int) -> int:
        return (t - 1) % self.pieces

    def own_index(self, t: int) -> int:
        """0-based position of block t among its piece's blocks."""
        return (t - 1) // self.pieces

    def piece_mass_before(self, t: int) -> int:
        """Total length of the piece's blocks strictly before block t."""
        p = self.piece_of_block(t)
        return sum(
            self.block_length(s)
            for s in range(p + 1, t, self.pieces)
        )

    def atom_of(self, k: int) -> tuple[int, int, int]:
        """(piece, block class, rank class) of position k."""
        t, offset = self.block_of(k)
        p = self.piece_of_block(t)
        l2 = self.own_index(t) % self.l2_counts[p]
        rank = self.piece_mass_before(t) + offset - 1
        return p, l2, rank % self.rank_moduli[p]

    def atom_universe(self) -> frozenset[tuple[int, int, int]]:
        atoms = set()
        for p in range(self.pieces):
            for l2 in range(self.l2_counts[p]):
                for rr in range(self.rank_moduli[p]):
                    atoms.add((p, l2, rr))
        return frozenset(atoms)

    def checkpoints(self, floor_block: int = 3) -> list[int]:
        """Ends of global blocks floor_block..depth; exact count anchors."""
        return [self.block_end(t) for t in range(floor_block, self.depth + 1)]


def _count_rank_class(offset_max: int, mass_before: int, rr: int, modulus: int) -> int:
    """#{offset in [1, offset_max] : (mass_before + offset - 1) % modulus == rr}."""
    if offset_max < 1:
        return 0
    first = ((rr - mass_before) % modulus) + 1
    if first > offset_max:
        return 0
    return (offset_max - first) // modulus + 1


@dataclass(frozen=True)
class BlockPatternSet:
    """Atom-table set over a skeleton, with a finite exception set.

    k belongs iff (atom_of(k) in atoms) xor (k in flips).  Upper density is
    the exact maximum, over (piece, block class) groups, of the fraction of
    rank classes present: that value is approached at the ends of the
    group's own blocks and bounds every occupancy ratio asymptotically.
    """

    skeleton: BlockSkeleton
    atoms: frozenset[tuple[int, int, int]]
    flips: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        universe = self.skeleton.atom_universe()
        if not self.atoms <= universe:
            raise ValueError("atoms outside the skeleton's universe")
        if any(k < 1 for k in self.flips):
            raise ValueError("flips must be >= 1")

    # constructors

    @classmethod
    def empty(cls, skeleton: BlockSkeleton) -> "BlockPatternSet":
        return cls(skeleton, frozenset())

    @classmethod
    def full(cls, skeleton: BlockSkeleton) -> "BlockPatternSet":
        return cls(skeleton, skeleton.atom_universe())

    @classmethod
    def piece(cls, skeleton: BlockSkeleton, p: int) -> "BlockPatternSet":
        return cls(
            skeleton,
            frozenset(a for a in skeleton.atom_universe() if a[0] == p),
        )

    @classmethod
    def block_class(cls, skeleton: BlockSkeleton, p: int, l2: int) -> "BlockPatternSet":
        return cls(
            skeleton,
            frozenset(a for a in skeleton.atom_universe() if a[0] == p and a[1] == l2),
        )

    @classmethod
    def rank_class(cls, skeleton: BlockSkeleton, p: int, rr: int) -> "BlockPatternSet":
        return cls(
            skeleton,
            frozenset(a for a in skeleton.atom_universe() if a[0] == p and a[2] == rr),
        )

    # queries

    def contains(self, k: int) -> bool:
        base = self.skeleton.atom_of(k) in self.atoms
        return base != (k in self.flips)

    def __contains__(self, k: int) -> bool:
        return self.contains(k)

    def with_flips(self, ks: Iterable[int]) -> "BlockPatternSet":
        return BlockPatternSet(
            self.skeleton, self.atoms, self.flips ^ frozenset(int(k) for k in ks)
        )

    def count_upto(self, n: int) -> int:
        """Exact member count in [1, n]; closed form per block, so n may be huge."""
        if n < 1:
            return 0
        sk = self.skeleton
        total = 0
        t = 1
        start = 1
        while start <= n:
            length = sk.block_length(t)
            offset_max = min(length, n - start + 1)
            p = sk.piece_of_block(t)
            l2 = sk.own_index(t) % sk.l2_counts[p]
            mass = sk.piece_mass_before(t)
            modulus = sk.rank_moduli[p]
            for rr in range(modulus):
                if (p, l2, rr) in self.atoms:
                    total += _count_rank_class(offset_max, mass, rr, modulus)
            start += length
            t += 1
        for k in self.flips:
            if k <= n:
                total += -1 if self.skeleton.atom_of(k) in self.atoms else 1
        return total

    def upper_density(self) -> Fraction:
        best = Fraction(0)
        sk = self.skeleton
        for p in range(sk.pieces):
            for l2 in range(sk.l2_counts[p]):
                present = sum(
                    1 for rr in range(sk.rank_moduli[p]) if (p, l2, rr) in self.atoms
                )
                best = max(best, Fraction(present, sk.rank_moduli[p]))
        return best

    def profile(self, floor_block: int = 3) -> DensityProfile:
        pts = tuple(
            (n, Fraction(self.count_upto(n), n))
            for n in self.skeleton.checkpoints(floor_block)
        )
        return DensityProfile(pts)

    def mask(self, horizon: int) -> np.ndarray:
        out = np.zeros(horizon, dtype=bool)
        sk = self.skeleton
        t = 1
        start = 1
        while start <= horizon:
            length = sk.block_length(t)
            offset_max = min(length, horizon - start + 1)
            p = sk.piece_of_block(t)
            l2 = sk.own_index(t) % sk.l2_counts[p]
            mass = sk.piece_mass_before(t)
            modulus = sk.rank_moduli[p]
            for rr in range(modulus):
                if (p, l2, rr) in self.atoms:
                    first = ((rr - mass) % modulus) + 1
                    if first <= offset_max:
                        lo = start + first - 1
                        out[lo - 1 : start + offset_max - 1 : modulus] = True
            start += length
            t += 1
        for k in self.flips:
            if k <= horizon:
                out[k - 1] = ~out[k - 1]
        return out

    # algebra

    def _check_same(self, other: "BlockPatternSet") -> None:
        if self.skeleton != other.skeleton:
            raise ValueError("pattern sets live on different skeletons")

    def _merge_flips(
        self, other: "BlockPatternSet", atoms: frozenset, op
    ) -> frozenset[int]:
        flips = set()
        for k in self.flips | other.flips:
            want = op(self.contains(k), other.contains(k))
            have = self.skeleton.atom_of(k) in atoms
            if want != have:
                flips.add(k)
        return frozenset(flips)

    def union(self, other: "BlockPatternSet") -> "BlockPatternSet":
        self._check_same(other)
        atoms = self.atoms | other.atoms
        return BlockPatternSet(
            self.skeleton, atoms, self._merge_flips(other, atoms, lambda a, b: a or b)
        )

    def intersect(self, other: "BlockPatternSet") -> "BlockPatternSet":
        self._check_same(other)
        atoms = self.atoms & other.atoms
        return BlockPatternSet(
            self.skeleton, atoms, self._merge_flips(other, atoms, lambda a, b: a and b)
        )

    def complement(self) -> "BlockPatternSet":
        return BlockPatternSet(
            self.skeleton, self.skeleton.atom_universe() - self.atoms, self.flips
        )

    def difference(self, other: "BlockPatternSet") -> "BlockPatternSet":
        return self.intersect(other.complement())


# ---------------------------------------------------------------------------
# backend-dispatching surface


def exact_upper_density(s) -> Fraction:
    """Exact upper density of a set with a symbolic backend.

    Ultimately periodic sets have a natural density (sum of 1/step over the
    progressions); pattern sets have an exact upper density from the atom
    table; a finite interval table reports its best declared checkpoint
    ratio (its profile sup), the honest truncated-view analogue.
    """
    if isinstance(s, ExactSet):
        return s.density()
    if isinstance(s, BlockPatternSet):
        return s.upper_density()
    if isinstance(s, Blocks):
        if not s.checkpoints:
            raise ValueError("interval table carries no checkpoints")
        return s.profile().sup_ratio()
    raise TypeError(f"no exact density for {type(s).__name__}")


def set_algebra(a, b, op: str):
    """union / intersect / difference on a matching pair of backends."""
    if op not in ("union", "intersect", "difference"):
        raise ValueError(f"unknown set operation {op!r}")
    if type(a) is not type(b):
        raise TypeError("set algebra needs matching backends")
    return getattr(a, op)(b)
