"""Exact planar convex polygons under polyhedral norms.

Coordinates are :class:`fractions.Fraction`. Every operation also accepts
float polygons (see :meth:`ConvexPolygon.to_float`); the optimizers use those
for cheap trial evaluations and always re-check results exactly.

Polygons are compact, nonempty and may degenerate to a segment or a point.
The canonical vertex order is counter-clockwise starting from the lowest
(then leftmost) vertex, so equal polygons have equal vertex tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .extended import parse_rational


class ConvexityError(ValueError):
    pass


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def _sub(u, v):
    return (u[0] - v[0], u[1] - v[1])


def _add(u, v):
    return (u[0] + v[0], u[1] + v[1])


def _scale(u, s):
    return (u[0] * s, u[1] * s)


def _half(v) -> int:
    # 0 for directions in [0, pi), 1 for [pi, 2*pi)
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


def _angle_less(u, v) -> bool:
    """Strict angular order of nonzero vectors on ``[0, 2*pi)``."""
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu < hv
    return u[0] * v[1] - u[1] * v[0] > 0


def _key(p):
    return (p[1], p[0])


def _rotate_canonical(pts):
    start = min(range(len(pts)), key=lambda i: _key(pts[i]))
    return tuple(pts[start:] + pts[:start])


def hull(points):
    """Convex hull of a point cloud in canonical order (monotone chain)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return _rotate_canonical(pts) if pts else ()
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    chain = lower[:-1] + upper[:-1]
    return _rotate_canonical(chain)


def is_strictly_convex_ccw(vertices) -> bool:
    """True for a point, a segment, or a strictly convex CCW polygon winding once."""
    n = len(vertices)
    if n == 0:
        return False
    if len(set(vertices)) != n:
        return False
    if n <= 2:
        return True
    for i in range(n):
        if _cross(vertices[i - 1], vertices[i], vertices[(i + 1) % n]) <= 0:
            return False
    edges = [_sub(vertices[(i + 1) % n], vertices[i]) for i in range(n)]
    descents = sum(1 for i in range(n) if _angle_less(edges[(i + 1) % n], edges[i]))
    return descents == 1


def _normalize(points):
    """Canonical vertex tuple of a convex vertex chain; raises if not convex."""
    pts = list(points)
    out = []
    for p in pts:
        if not out or out[-1] != p:
            out.append(p)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    if len(out) <= 2:
        return _rotate_canonical(out)
    if all(_cross(out[0], out[1], p) == 0 for p in out[2:]):
        lo, hi = min(out, key=_key), max(out, key=_key)
        return (lo,) if lo == hi else (lo, hi)
    changed = True
    while changed and len(out) > 2:
        changed = False
        for i in range(len(out)):
            if _cross(out[i - 1], out[i], out[(i + 1) % len(out)]) == 0:
                del out[i]
                changed = True
                break
    if len(out) > 2 and all(
        _cross(out[i - 1], out[i], out[(i + 1) % len(out)]) < 0 for i in range(len(out))
    ):
        out.reverse()
    canon = _rotate_canonical(out)
    if not is_strictly_convex_ccw(canon):
        raise ConvexityError(f"vertices do not form a convex polygon: {points!r}")
    return canon


def _coerce_point(p):
    return (parse_rational(p[0]), parse_rational(p[1]))


class ConvexPolygon:
    """Nonempty compact convex polygon with canonical vertex order."""

    __slots__ = ("vertices", "exact")

    def __init__(self, vertices: Sequence, exact: bool = True):
        if not vertices:
            raise ConvexityError("polygon needs at least one vertex")
        if exact:
            pts = [_coerce_point(p) for p in vertices]
            self.vertices = _normalize(pts)
        else:
            self.vertices = hull([(float(p[0]), float(p[1])) for p in vertices])
        self.exact = exact

    @classmethod
    def hull_of(cls, points, exact: bool = True) -> "ConvexPolygon":
        if exact:
            points = [_coerce_point(p) for p in points]
        return cls(hull(points), exact=exact)

    @classmethod
    def box(cls, x0, y0, x1, y1) -> "ConvexPolygon":
        return cls([(x0, y0), (x1, y0), (x1, y1), (x0, y1)])

    @classmethod
    def point(cls, x, y) -> "ConvexPolygon":
        return cls([(x, y)])

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        return isinstance(other, ConvexPolygon) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        body = ", ".join(f"({_s(x)}, {_s(y)})" for x, y in self.vertices)
        return f"ConvexPolygon([{body}])"

    @property
    def kind(self) -> str:
        return {1: "point", 2: "segment"}.get(len(self.vertices), "polygon")

    def to_float(self) -> "ConvexPolygon":
        if not self.exact:
            return self
        out = object.__new__(ConvexPolygon)
        out.vertices = tuple((float(x), float(y)) for x, y in self.vertices)
        out.exact = False
        return out

    def translate(self, v) -> "ConvexPolygon":
        return _make([_add(p, v) for p in self.vertices], self.exact)

    def reflect(self) -> "ConvexPolygon":
        return _make([(-x, -y) for x, y in self.vertices], self.exact)

    def edges(self):
        """Directed boundary edges; a segment contributes both directions."""
        vs = self.vertices
        if len(vs) == 1:
            return []
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def contains_point(self, x) -> bool:
        vs = self.vertices
        if len(vs) == 1:
            return vs[0] == tuple(x)
        if len(vs) == 2:
            p, q = vs
            if _cross(p, q, x) != 0:
                return False
            return _dot(_sub(x, p), _sub(q, p)) >= 0 and _dot(_sub(x, q), _sub(p, q)) >= 0
        return all(_cross(vs[i], vs[(i + 1) % len(vs)], x) >= 0 for i in range(len(vs)))

    def includes(self, other: "ConvexPolygon") -> bool:
        return all(self.contains_point(v) for v in other.vertices)


def _s(v):
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return repr(v)


def _make(points, exact: bool) -> ConvexPolygon:
    return ConvexPolygon(points, exact=True) if exact else ConvexPolygon(points, exact=False)


class PolyhedralNorm:
    """Norm whose unit ball is a centrally symmetric convex polygon."""

    def __init__(self, unit_ball):
        if not isinstance(unit_ball, ConvexPolygon):
            unit_ball = ConvexPolygon(unit_ball)
        vs = unit_ball.vertices
        if len(vs) < 4:
            raise ConvexityError("unit ball needs at least 4 vertices")
        if set(vs) != {(-x, -y) for x, y in vs}:
            raise ConvexityError("unit ball must be centrally symmetric about the origin")
        self.unit_ball = unit_ball
        self.exact = unit_ball.exact
        # facets a.y <= c with c > 0: gauge(v) = max(a.v / c)
        facets = []
        for p, q in unit_ball.edges():
            a = (q[1] - p[1], p[0] - q[0])
            facets.append((a, _dot(a, p)))
        self.facets = facets
        self._inv = [(a, 1 / c if not self.exact else Fraction(1) / c) for a, c in facets]

    @classmethod
    def l1(cls):
        return cls(ConvexPolygon([(1, 0), (0, 1), (-1, 0), (0, -1)]))

    @classmethod
    def linf(cls):
        return cls(ConvexPolygon.box(-1, -1, 1, 1))

    @classmethod
    def from_generators(cls, vectors):
        """Unit ball ``hull(±v for v in vectors)``."""
        pts = [_coerce_point(v) for v in vectors]
        pts += [(-x, -y) for x, y in pts]
        return cls(ConvexPolygon.hull_of(pts))

    def __eq__(self, other):
        return isinstance(other, PolyhedralNorm) and self.unit_ball == other.unit_ball

    def __hash__(self):
        return hash(self.unit_ball)

    def __repr__(self):
        return f"PolyhedralNorm({self.unit_ball!r})"

    def to_float(self) -> "PolyhedralNorm":
        if not self.exact:
            return self
        return PolyhedralNorm(self.unit_ball.to_float())

    def __call__(self, v):
        return max(_dot(a, v) * inv for a, inv in self._inv)

    def support(self, u):
        return max(_dot(p, u) for p in self.unit_ball.vertices)


def _zero(exact):
    return Fraction(0) if exact else 0.0


def support(P: ConvexPolygon, u) -> object:
    """``max over vertices v of <v, u>``."""
    if u[0] == 0 and u[1] == 0:
        raise ValueError("support direction must be nonzero")
    return max(_dot(v, u) for v in P.vertices)


def _edge_vectors(P: ConvexPolygon):
    return [_sub(q, p) for p, q in P.edges()]


def minkowski_sum(P: ConvexPolygon, Q: ConvexPolygon) -> ConvexPolygon:
    """Edge-merge Minkowski sum. Canonical starts are both lowest-leftmost."""
    exact = P.exact and Q.exact
    ep, eq = _edge_vectors(P), _edge_vectors(Q)
    cur = _add(P.vertices[0], Q.vertices[0])
    out = [cur]
    i = j = 0
    while i < len(ep) or j < len(eq):
        if j >= len(eq) or (i < len(ep) and not _angle_less(eq[j], ep[i])):
            step = ep[i]
            i += 1
        else:
            step = eq[j]
            j += 1
        cur = _add(cur, step)
        out.append(cur)
    return _make(out, exact)


def minkowski_offset(A: ConvexPolygon, r, norm: PolyhedralNorm) -> ConvexPolygon:
    """``B_r(A) = A ⊕ r·U`` for ``r >= 0``."""
    if r < 0:
        raise ValueError(f"offset radius must be non-negative, got {r}")
    if r == 0:
        return A
    ball = norm.unit_ball
    scaled = object.__new__(ConvexPolygon)
    scaled.vertices = tuple(_scale(v, r) for v in ball.vertices)
    scaled.exact = ball.exact and A.exact and not isinstance(r, float)
    return minkowski_sum(A, scaled)


def halfplanes(Q: ConvexPolygon):
    """Inequalities ``a.x <= b`` whose intersection is exactly ``Q``."""
    vs = Q.vertices
    if len(vs) >= 3:
        out = []
        for p, q in Q.edges():
            a = (q[1] - p[1], p[0] - q[0])
            out.append((a, _dot(a, p)))
        return out
    if len(vs) == 2:
        p, q = vs
        e = _sub(q, p)
        nrm = (-e[1], e[0])
        return [
            (nrm, _dot(nrm, p)),
            ((-nrm[0], -nrm[1]), -_dot(nrm, p)),
            (e, _dot(e, q)),
            ((-e[0], -e[1]), -_dot(e, p)),
        ]
    (x, y), one, zero = vs[0], (1 if Q.exact else 1.0), (0 if Q.exact else 0.0)
    return [
        ((one, zero), x),
        ((-one, zero), -x),
        ((zero, one), y),
        ((zero, -one), -y),
    ]


def _clip(pts, a, b):
    out = []
    n = len(pts)
    for i in range(n):
        cur, nxt = pts[i], pts[(i + 1) % n]
        vc, vn = _dot(a, cur), _dot(a, nxt)
        cin, nin = vc <= b, vn <= b
        if cin:
            out.append(cur)
        if cin != nin:
            t = (b - vc) / (vn - vc)
            out.append(_add(cur, _scale(_sub(nxt, cur), t)))
    return out


def intersect(polys: Sequence[ConvexPolygon]) -> Optional[ConvexPolygon]:
    """Exact intersection by half-plane clipping; ``None`` when empty."""
    if not polys:
        raise ValueError("intersect needs at least one polygon")
    exact = all(P.exact for P in polys)
    pts = list(polys[0].vertices)
    for Q in polys[1:]:
        for a, b in halfplanes(Q):
            pts = _clip(pts, a, b)
            if not pts:
                return None
    return _make(pts, exact)


def _ray_hits(x, u, p, q):
    """Points ``x - t*u`` (t >= 0) on segment ``[p, q]``; empty when parallel."""
    e = _sub(q, p)
    # solve x - t u = p + s e
    den = u[0] * e[1] - u[1] * e[0]
    if den == 0:
        return None
    w = _sub(x, p)
    t = (w[0] * e[1] - w[1] * e[0]) / den
    s = (w[1] * u[0] - w[0] * u[1]) / den
    if t < 0 or s < 0 or s > 1:
        return None
    return _sub(x, _scale(u, t))


def dist_point_to_polygon(x, B: ConvexPolygon, norm: PolyhedralNorm):
    """Exact ``min over b in B of ||x - b||``.

    The gauge of ``x - b`` is linear on each cone ``x - cone(u_j, u_j+1)``
    spanned by consecutive unit-ball vertices, so the minimum over ``B`` is
    attained at a vertex of ``B``, at a crossing of ``B``'s boundary with a ray
    ``x - t u_j``, or at ``x`` itself.
    """
    x = tuple(x)
    if B.contains_point(x):
        return _zero(B.exact)
    best = min(norm(_sub(x, v)) for v in B.vertices)
    vs = B.vertices
    if len(vs) >= 2:
        segs = [(vs[0], vs[1])] if len(vs) == 2 else B.edges()
        for u in norm.unit_ball.vertices:
            for p, q in segs:
                hit = _ray_hits(x, u, p, q)
                if hit is not None:
                    d = norm(_sub(x, hit))
                    if d < best:
                        best = d
    return best


def sup_dist_polygon_to_polygon(A: ConvexPolygon, B: ConvexPolygon, norm: PolyhedralNorm):
    """``sup over a in A of |a B|``; a convex function peaks at a vertex of ``A``."""
    return max(dist_point_to_polygon(v, B, norm) for v in A.vertices)


def hausdorff(A: ConvexPolygon, B: ConvexPolygon, norm: PolyhedralNorm):
    return max(sup_dist_polygon_to_polygon(A, B, norm), sup_dist_polygon_to_polygon(B, A, norm))


def set_gap(A: ConvexPolygon, B: ConvexPolygon, norm: PolyhedralNorm):
    """``|A B| = inf over a, b of ||a - b||``: distance from 0 to ``B ⊕ (-A)``."""
    origin = (_zero(A.exact), _zero(A.exact))
    return dist_point_to_polygon(origin, minkowski_sum(B, A.reflect()), norm)


def mutually_within(A: ConvexPolygon, B: ConvexPolygon, r, norm: PolyhedralNorm) -> bool:
    """``A ⊆ B_r(B)`` and ``B ⊆ B_r(A)``."""
    return minkowski_offset(B, r, norm).includes(A) and minkowski_offset(A, r, norm).includes(B)


def dist_to_boundary(c, P: ConvexPolygon, norm: PolyhedralNorm):
    """``|c ∂P|``. For a degenerate ``P`` the boundary is ``P`` itself."""
    if len(P.vertices) < 3 or not P.contains_point(c):
        return dist_point_to_polygon(c, P, norm)
    return min((b - _dot(a, c)) / norm.support(a) for a, b in halfplanes(P))


def f_slice(A: ConvexPolygon, B: ConvexPolygon, r, norm: PolyhedralNorm) -> Optional[ConvexPolygon]:
    """``F_r(A, B) = B_r(A) ∩ B``; ``None`` unless ``r > |A B|``."""
    if r <= set_gap(A, B, norm):
        return None
    return intersect([minkowski_offset(A, r, norm), B])


@dataclass
class ContinuityTable:
    radii: list
    moduli: list

    @property
    def max_modulus(self):
        return max(self.moduli)

    @property
    def all_finite(self) -> bool:
        return all(m is not None for m in self.moduli)


def continuity_probe(A: ConvexPolygon, B: ConvexPolygon, lo, hi, steps: int,
                     norm: PolyhedralNorm) -> ContinuityTable:
    """Hausdorff jumps of ``F_r(A, B)`` between consecutive radii on ``[lo, hi]``.

    Samples ``r_i = lo + (hi - lo) i / steps`` including both ends; ``lo`` must
    exceed ``|A B|`` so every slice is nonempty. For nested grids (``steps``
    dividing another) the finer table's maximum never exceeds the coarser one,
    because slices grow monotonically in ``r``.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if steps < 1 or not hi > lo:
        raise ValueError("need steps >= 1 and hi > lo")
    if lo <= set_gap(A, B, norm):
        raise ValueError("lower radius must exceed the gap |A B|")
    radii = [lo + (hi - lo) * i / steps for i in range(steps + 1)]
    slices = [f_slice(A, B, r, norm) for r in radii]
    moduli = [hausdorff(slices[i], slices[i + 1], norm) for i in range(steps)]
    return ContinuityTable(radii, moduli)
