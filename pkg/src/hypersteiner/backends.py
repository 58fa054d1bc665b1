"""Hyperspace backends: the finite-subset backend and the convex-polygon backend.

A backend knows how to measure Hausdorff distance between its elements, how
to take closed balls, and how to intersect them.
"""

from __future__ import annotations

from typing import Optional

from . import convex2d as cv
from .extended import INF, ext, fmt
from .metric import FiniteSpace, PointSet, ball


class BackendMismatch(TypeError):
    pass


class FiniteBackend:
    kind = "finite"

    def __init__(self, space: FiniteSpace):
        self.space = space

    def check(self, element):
        if not isinstance(element, PointSet) or element.space is not self.space:
            raise BackendMismatch(f"{element!r} is not a subset of this finite space")
        return element

    def distance(self, A: PointSet, B: PointSet):
        self.check(A)
        self.check(B)
        return self.space.hausdorff(A, B)

    def ball(self, A: PointSet, r) -> Optional[PointSet]:
        return ball(A, r)

    def intersect(self, elements) -> Optional[PointSet]:
        mask = self.space.full_mask
        for E in elements:
            if E is None:
                return None
            mask &= E.mask
        return PointSet(self.space, mask) if mask else None

    def encode(self, element) -> list:
        return list(element.labels)

    def __eq__(self, other):
        return isinstance(other, FiniteBackend) and other.space is self.space

    def __hash__(self):
        return id(self.space)


class Convex2dBackend:
    kind = "convex2d"

    def __init__(self, norm: cv.PolyhedralNorm):
        self.norm = norm

    def check(self, element):
        if not isinstance(element, cv.ConvexPolygon) or not element.exact:
            raise BackendMismatch(f"{element!r} is not an exact convex polygon")
        return element

    def distance(self, A, B):
        self.check(A)
        self.check(B)
        return cv.hausdorff(A, B, self.norm)

    def ball(self, A, r):
        r = ext(r)
        if r is INF:
            raise ValueError("ball radius must be finite")
        return cv.minkowski_offset(A, r, self.norm)

    def intersect(self, elements):
        if any(E is None for E in elements):
            return None
        return cv.intersect(list(elements))

    def encode(self, element) -> list:
        return [[fmt(x), fmt(y)] for x, y in element.vertices]

    def __eq__(self, other):
        return isinstance(other, Convex2dBackend) and other.norm == self.norm

    def __hash__(self):
        return hash(self.norm)
