"""Finite extended metric spaces and the hyperspace of their nonempty subsets.

Every subset of a finite space is closed, so the hyperspace here is simply the
set of nonempty subsets, encoded as bitmasks against the fixed point order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Iterator, Optional, Sequence

from .extended import INF, ExtendedDistance, ext
from .kernels import SubsetKernel


class MetricAxiomError(ValueError):
    """Raised when a distance matrix violates an extended-metric axiom."""


class FiniteSpace:
    """Labeled points with an exact extended distance matrix.

    The axioms are checked on construction; a violation raises
    :class:`MetricAxiomError` naming the offending pair or triple.
    """

    def __init__(self, labels: Sequence[str], dist, validate: bool = True):
        labels = tuple(str(x) for x in labels)
        n = len(labels)
        if n == 0:
            raise MetricAxiomError("space must contain at least one point")
        if len(set(labels)) != n:
            raise MetricAxiomError("point labels must be distinct")
        if len(dist) != n or any(len(row) != n for row in dist):
            raise MetricAxiomError(f"distance matrix must be {n}x{n}")
        self.labels = labels
        self.dist = tuple(tuple(ext(v) for v in row) for row in dist)
        self.n = n
        self._index = {lab: i for i, lab in enumerate(labels)}
        if validate:
            self._validate()

    def _validate(self):
        d, L = self.dist, self.labels
        for i in range(self.n):
            if d[i][i] != 0:
                raise MetricAxiomError(f"dist[{L[i]}][{L[i]}] = {d[i][i]} must be 0")
            for j in range(i + 1, self.n):
                if d[i][j] != d[j][i]:
                    raise MetricAxiomError(f"asymmetric pair ({L[i]}, {L[j]})")
                if d[i][j] == 0:
                    raise MetricAxiomError(f"distinct points {L[i]}, {L[j]} at distance 0")
        for i in range(self.n):
            for j in range(self.n):
                for k in range(self.n):
                    if d[i][k] > d[i][j] + d[j][k]:
                        raise MetricAxiomError(
                            f"triangle inequality fails on ({L[i]}, {L[j]}, {L[k]}): "
                            f"{d[i][k]} > {d[i][j]} + {d[j][k]}"
                        )

    def __repr__(self):
        return f"FiniteSpace({list(self.labels)!r})"

    def __len__(self):
        return self.n

    def index(self, point) -> int:
        if isinstance(point, int):
            if not 0 <= point < self.n:
                raise IndexError(f"point index {point} out of range for {self.n} points")
            return point
        try:
            return self._index[point]
        except KeyError:
            raise KeyError(f"unknown point label {point!r}") from None

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def scale(self) -> int:
        """Common denominator of all finite entries."""
        dens = [v.denominator for row in self.dist for v in row if v is not INF]
        return lcm(*dens) if dens else 1

    @cached_property
    def kernel(self) -> SubsetKernel:
        s = self.scale
        W = [[None if v is INF else int(v * s) for v in row] for row in self.dist]
        return SubsetKernel(W)

    def decode(self, code: int) -> ExtendedDistance:
        if code >= self.kernel.inf:
            return INF
        return Fraction(code, self.scale)

    def encode(self, value: ExtendedDistance) -> int:
        if value is INF:
            return self.kernel.inf
        scaled = value * self.scale
        if scaled.denominator != 1:
            raise ValueError(f"{value} is not on this space's rational grid")
        return int(scaled)

    def subset(self, members: Iterable) -> "PointSet":
        mask = 0
        for m in members:
            mask |= 1 << self.index(m)
        return PointSet(self, mask)

    def point(self, p) -> "PointSet":
        return PointSet(self, 1 << self.index(p))

    def from_mask(self, mask: int) -> "PointSet":
        return PointSet(self, mask)

    def subsets(self) -> Iterator["PointSet"]:
        """All nonempty subsets, ascending by bit pattern."""
        for mask in range(1, 1 << self.n):
            yield PointSet(self, mask)

    def distinct_values(self) -> list:
        """Distinct finite matrix entries (0 included), ascending."""
        return sorted({v for row in self.dist for v in row if v is not INF})

    def hausdorff(self, A: "PointSet", B: "PointSet") -> ExtendedDistance:
        """Hausdorff distance through the subset kernel (fast path)."""
        _same_space(A, B)
        return self.decode(self.kernel.hausdorff(A.mask, B.mask))


@dataclass(frozen=True)
class PointSet:
    """Nonempty subset of a :class:`FiniteSpace`, stored as a bitmask."""

    space: FiniteSpace
    mask: int

    def __post_init__(self):
        if self.mask <= 0:
            raise ValueError("point sets are nonempty")
        if self.mask >> self.space.n:
            raise IndexError("mask refers to points outside the space")

    @property
    def members(self) -> tuple:
        return tuple(i for i in range(self.space.n) if self.mask >> i & 1)

    @property
    def labels(self) -> tuple:
        return tuple(self.space.labels[i] for i in self.members)

    def __len__(self):
        return bin(self.mask).count("1")

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, p) -> bool:
        return bool(self.mask >> self.space.index(p) & 1)

    def __le__(self, other: "PointSet") -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "PointSet") -> bool:
        return self <= other and self.mask != other.mask

    def __repr__(self):
        return "{" + ", ".join(self.labels) + "}"


def _same_space(A, B):
    if A.space is not B.space:
        raise ValueError("point sets belong to different spaces")


def dist_point_to_set(p, A: Optional[PointSet], space: Optional[FiniteSpace] = None) -> ExtendedDistance:
    """``|p A|``; the empty set (``None``) is at infinite distance."""
    if A is None:
        if space is not None:
            space.index(p)
        return INF
    i = A.space.index(p)
    row = A.space.dist[i]
    return min(row[a] for a in A.members)


def ball(A: PointSet, r: ExtendedDistance, open: bool = False) -> Optional[PointSet]:
    """Closed (or open) ``r``-neighbourhood of ``A``; ``None`` when empty."""
    r = ext(r)
    if r is INF:
        raise ValueError("ball radius must be finite")
    space = A.space
    mask = 0
    for p in range(space.n):
        d = dist_point_to_set(p, A)
        if (d < r) if open else (d <= r):
            mask |= 1 << p
    return PointSet(space, mask) if mask else None


def contains(outer: Optional[PointSet], inner: PointSet) -> bool:
    return outer is not None and inner <= outer


def hausdorff_inf(A: PointSet, B: PointSet) -> ExtendedDistance:
    """Smallest ``r`` with ``A ⊆ B_r(B)`` and ``B ⊆ B_r(A)``.

    Threshold functions of finite spaces only change at matrix entries, so the
    infimum is attained at one of them; ``INF`` if none works.
    """
    _same_space(A, B)
    for r in A.space.distinct_values():
        if contains(ball(B, r), A) and contains(ball(A, r), B):
            return r
    return INF


def one_sided(A: PointSet, B: PointSet) -> ExtendedDistance:
    """``sup over a in A of |a B|``."""
    _same_space(A, B)
    return max(dist_point_to_set(a, B) for a in A.members)


def set_gap(A: PointSet, B: PointSet) -> ExtendedDistance:
    """``|A B| = inf over a in A of |a B|``."""
    _same_space(A, B)
    return min(dist_point_to_set(a, B) for a in A.members)


def hausdorff_supmax(A: PointSet, B: PointSet) -> ExtendedDistance:
    return max(one_sided(A, B), one_sided(B, A))


def finiteness_classes(space: FiniteSpace) -> list:
    """Partition of point indices by finite mutual distance, in first-member order."""
    seen = [False] * space.n
    classes = []
    for i in range(space.n):
        if seen[i]:
            continue
        cls = [j for j in range(space.n) if space.dist[i][j] is not INF]
        for j in cls:
            seen[j] = True
        classes.append(cls)
    return classes


def hyperspace_finiteness_classes(space: FiniteSpace) -> list:
    """Partition of all nonempty subsets (as masks) by finite Hausdorff distance.

    Two subsets are at finite distance exactly when they meet the same point
    classes, so each class is keyed by that signature.
    """
    point_classes = finiteness_classes(space)
    owner = {}
    for c, cls in enumerate(point_classes):
        for p in cls:
            owner[p] = c
    groups: dict = {}
    for mask in range(1, 1 << space.n):
        sig = frozenset(owner[p] for p in range(space.n) if mask >> p & 1)
        groups.setdefault(sig, []).append(mask)
    return sorted(groups.values(), key=lambda g: g[0])


def metric_projection(x, M: PointSet) -> PointSet:
    """Nearest points of ``M`` to ``x``; never empty in a finite space."""
    i = M.space.index(x)
    target = dist_point_to_set(i, M)
    row = M.space.dist[i]
    return PointSet(M.space, sum(1 << z for z in M.members if row[z] == target))
