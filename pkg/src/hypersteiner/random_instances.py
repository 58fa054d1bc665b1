"""Seeded random instances for both backends."""

from __future__ import annotations

import random
from fractions import Fraction

from .convex2d import ConvexPolygon, PolyhedralNorm
from .extended import INF
from .metric import FiniteSpace


def random_finite_space(rng: random.Random, n_points: int, clusters: int = 1,
                        max_num: int = 9, max_den: int = 3) -> FiniteSpace:
    """Random positive rationals repaired into an extended metric by shortest paths.

    Points are split round-robin into ``clusters``; distances across clusters
    are infinite.
    """
    owner = [i % clusters for i in range(n_points)]
    d = [[Fraction(0) if i == j else INF for j in range(n_points)] for i in range(n_points)]
    for i in range(n_points):
        for j in range(i + 1, n_points):
            if owner[i] == owner[j]:
                w = Fraction(rng.randint(1, max_num), rng.randint(1, max_den))
                d[i][j] = d[j][i] = w
    for k in range(n_points):
        for i in range(n_points):
            for j in range(n_points):
                via = d[i][k] + d[k][j]
                if via < d[i][j]:
                    d[i][j] = via
    return FiniteSpace([f"p{i}" for i in range(n_points)], d)


def random_subset(rng: random.Random, space: FiniteSpace, within=None):
    pool = list(range(space.n)) if within is None else list(within)
    k = rng.randint(1, len(pool))
    return space.subset(rng.sample(pool, k))


def random_boundary(rng: random.Random, space: FiniteSpace, n: int, distinct: bool = False):
    """``n`` subsets lying in one hyperspace finiteness class (the class of point 0's cluster)."""
    cluster = [j for j in range(space.n) if space.dist[0][j] is not INF]
    sets = []
    while len(sets) < n:
        S = random_subset(rng, space, cluster)
        if distinct and S in sets:
            continue
        sets.append(S)
    return sets


def random_convex_polygon(rng: random.Random, span: int = 6, max_points: int = 6,
                          allow_degenerate: bool = True) -> ConvexPolygon:
    lo = 1 if allow_degenerate else 3
    while True:
        k = rng.randint(lo, max_points)
        pts = [(rng.randint(0, span), rng.randint(0, span)) for _ in range(k)]
        P = ConvexPolygon.hull_of(pts)
        if allow_degenerate or len(P) >= 3:
            return P


def random_norm(rng: random.Random, kind: str = "any") -> PolyhedralNorm:
    if kind == "any":
        kind = rng.choice(["l1", "linf", "random"])
    if kind == "l1":
        return PolyhedralNorm.l1()
    if kind == "linf":
        return PolyhedralNorm.linf()
    while True:
        gens = [(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(rng.randint(2, 3))]
        gens.append((rng.randint(1, 3), 0))
        try:
            return PolyhedralNorm.from_generators(gens)
        except ValueError:
            continue
