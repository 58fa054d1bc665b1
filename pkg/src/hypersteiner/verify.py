"""Property suites run by ``hypersteiner verify`` and the acceptance tests.

Each suite draws seeded random instances (or uses a supplied one), counts how
many times each property was checked and violated, and keeps the first
counterexample. Reports are plain JSON-able dicts, stable for a fixed seed.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

from . import convex2d as cv
from . import fermat_steiner as fs
from . import networks as nw
from .backends import Convex2dBackend, FiniteBackend
from .extended import INF, fmt
from .io import Instance, VERIFY_REPORT_SCHEMA, validate
from .metric import (ball, contains, hausdorff_inf, hausdorff_supmax, one_sided, set_gap,
                     dist_point_to_set)
from .random_instances import (random_boundary, random_convex_polygon, random_finite_space,
                               random_norm, random_subset)


class UnknownSuite(KeyError):
    pass


@dataclass
class SuiteResult:
    suite: str
    backend: str
    seed: int
    cases: int = 0
    properties: dict = field(default_factory=dict)
    counterexample: Optional[str] = None
    observational: bool = False

    def check(self, name: str, ok: bool, describe: Callable[[], str] = lambda: ""):
        entry = self.properties.setdefault(name, {"checked": 0, "failed": 0})
        entry["checked"] += 1
        if not ok:
            entry["failed"] += 1
            if self.counterexample is None:
                self.counterexample = f"{name}: {describe()}"

    def note(self, name: str):
        """Register a property even when no case exercised it."""
        self.properties.setdefault(name, {"checked": 0, "failed": 0})

    @property
    def failures(self) -> int:
        return sum(p["failed"] for p in self.properties.values())

    @property
    def passed(self) -> bool:
        return self.observational or self.failures == 0

    def report(self) -> dict:
        return validate({
            "command": "verify",
            "suite": self.suite,
            "backend": self.backend,
            "seed": self.seed,
            "cases": self.cases,
            "properties": {k: dict(v) for k, v in sorted(self.properties.items())},
            "counterexample": self.counterexample,
            "observational": self.observational,
            "passed": self.passed,
        }, VERIFY_REPORT_SCHEMA)


def _space_text(space) -> str:
    return "dist=" + str([[fmt(v) for v in row] for row in space.dist])


def _finite_instances(rng, cases, instance, max_points=10, n_choices=(2, 3), min_points=2):
    """Yield ``(space, boundary sets)`` pairs."""
    if instance is not None:
        yield instance.space, list(instance.sets)
        return
    for _ in range(cases):
        N = rng.randint(min_points, max_points)
        space = random_finite_space(rng, N, clusters=rng.choice([1, 1, 2]))
        n = rng.choice(n_choices)
        yield space, random_boundary(rng, space, n)


# metric-core -------------------------------------------------------------------------


def suite_hausdorff_equiv(seed=0, cases=200, instance=None, pairs=50, max_points=10):
    res = SuiteResult("hausdorff-equiv", "finite", seed)
    rng = random.Random(seed)
    spaces = [instance.space] if instance is not None else [
        random_finite_space(rng, rng.randint(1, max_points), clusters=rng.choice([1, 1, 2, 3]))
        for _ in range(cases)]
    for space in spaces:
        res.cases += 1
        if instance is not None and space.n <= 6:
            todo = [(A, B) for A in space.subsets() for B in space.subsets()]
        else:
            todo = [(random_subset(rng, space), random_subset(rng, space)) for _ in range(pairs)]
        for A, B in todo:
            h1, h2, h3 = hausdorff_inf(A, B), hausdorff_supmax(A, B), space.hausdorff(A, B)
            desc = lambda: f"{_space_text(space)} A={A} B={B}"  # noqa: E731
            res.check("inf-equals-supmax", h1 == h2, desc)
            res.check("kernel-agrees", h3 == h2, desc)
            res.check("symmetry", space.hausdorff(B, A) == h3, desc)
            res.check("zero-iff-equal", (h3 == 0) == (A == B), desc)
            C = random_subset(rng, space)
            res.check("triangle", space.hausdorff(A, C) <= h3 + space.hausdorff(B, C), desc)
            if set_gap(A, B) == h3 and h3 is not INF:
                res.check("equal-gap-balances-sides", one_sided(A, B) == one_sided(B, A), desc)
            x, y = rng.randrange(space.n), rng.randrange(space.n)
            res.check("lipschitz",
                      dist_point_to_set(x, A) <= space.dist[x][y] + dist_point_to_set(y, A), desc)
    res.note("equal-gap-balances-sides")
    return res


def suite_balls(seed=0, cases=100, instance=None, backend="finite"):
    rng = random.Random(seed)
    if backend == "finite":
        res = SuiteResult("balls", "finite", seed)
        for space, sets in _finite_instances(rng, cases, instance):
            res.cases += 1
            vals = space.distinct_values()
            for A in sets:
                r, r2 = rng.choice(vals), rng.choice(vals)
                inner = ball(ball(A, r2), r)
                res.check("iterated-ball-inclusion", contains(ball(A, r + r2), inner),
                          lambda: f"{_space_text(space)} A={A} r={r} r'={r2}")
        return res
    res = SuiteResult("balls", "convex2d", seed)
    for A, norm in _convex_cases(rng, cases, instance):
        res.cases += 1
        r = Fraction(rng.randint(1, 8), rng.randint(1, 4))
        r2 = Fraction(rng.randint(0, 8), rng.randint(1, 4))
        off = cv.minkowski_offset(A, r, norm)
        desc = lambda: f"A={A} norm={norm.unit_ball} r={r} r'={r2}"  # noqa: E731
        res.check("offset-convex", cv.is_strictly_convex_ccw(off.vertices), desc)
        res.check("offset-composition",
                  cv.minkowski_offset(cv.minkowski_offset(A, r2, norm), r, norm)
                  == cv.minkowski_offset(A, r + r2, norm), desc)
        pts = list(off.vertices) + [((p[0] + q[0]) / 2, (p[1] + q[1]) / 2) for p, q in off.edges()]
        res.check("boundary-radius", all(cv.dist_point_to_polygon(p, A, norm) == r for p in pts), desc)
        B = random_convex_polygon(rng)
        h = cv.hausdorff(A, B, norm)
        ok = cv.mutually_within(A, B, h, norm)
        if h > 0:
            eps = min(h, Fraction(1)) / 64
            ok = ok and not cv.mutually_within(A, B, h - eps, norm)
        res.check("hausdorff-is-min-inclusion-radius", ok, lambda: f"A={A} B={B} norm={norm.unit_ball}")
    return res


def _convex_cases(rng, cases, instance):
    if instance is not None:
        for A in instance.sets:
            yield A, instance.norm
        return
    for _ in range(cases):
        yield random_convex_polygon(rng), random_norm(rng)


def suite_sandwich(seed=0, cases=50, instance=None, quads=20):
    """For ``A ⊆ B ⊆ C`` with ``d_H(A, D) = d_H(C, D) = a``, also ``d_H(B, D) <= a``."""
    res = SuiteResult("sandwich", "finite", seed)
    rng = random.Random(seed)
    for space, _ in _finite_instances(rng, cases, instance, max_points=8):
        res.cases += 1
        for _ in range(quads):
            C = random_subset(rng, space)
            A = random_subset(rng, space, C.members)
            D = random_subset(rng, space)
            a = space.hausdorff(A, D)
            if space.hausdorff(C, D) != a:
                continue
            free = C.mask & ~A.mask
            sub = free
            while True:
                B = space.from_mask(A.mask | sub)
                res.check("between-sets-no-farther", space.hausdorff(B, D) <= a,
                          lambda: f"{_space_text(space)} A={A} B={B} C={C} D={D}")
                if sub == 0:
                    break
                sub = (sub - 1) & free
    res.note("between-sets-no-farther")
    return res


# fermat-steiner, finite --------------------------------------------------------------


def _class_cases(rng, cases, instance):
    for space, sets in _finite_instances(rng, cases, instance, max_points=10, min_points=3):
        M = fs.Boundary(sets)
        yield space, M, fs.solve_bruteforce(M)


def suite_greatest(seed=0, cases=50, instance=None):
    res = SuiteResult("greatest", "finite", seed)
    for space, M, brute in _class_cases(random.Random(seed), cases, instance):
        res.cases += 1
        desc = lambda: f"{_space_text(space)} M={M.sets}"  # noqa: E731
        for d, members in brute.classes.items():
            K = fs.k_d(M, d)
            res.check("K_d-in-class", K is not None and fs.distance_vector(K, M) == d, desc)
            if K is None:
                continue
            res.check("members-inside-K_d", all(X <= K for X in members), desc)
            union = 0
            for X in members:
                union |= X.mask
            res.check("K_d-is-unique-greatest", union == K.mask, desc)
            rep = fs.enumerate_class(M, d, brute)
            res.check("class-enumeration-consistent",
                      sorted(X.mask for X in rep.members) == sorted(X.mask for X in members), desc)
    return res


def suite_matryoshka(seed=0, cases=50, instance=None):
    """Every set between a minimal element and ``K_d`` belongs to the class.

    Each member contains a minimal element, so this covers every pair ``K1 ⊆ K2``.
    """
    res = SuiteResult("matryoshka", "finite", seed)
    for space, M, brute in _class_cases(random.Random(seed), cases, instance):
        res.cases += 1
        for d in brute.classes:
            rep = fs.enumerate_class(M, d, brute)
            members = {X.mask for X in rep.members}
            top = rep.K_d.mask
            for m in rep.minimal_elements:
                free = top & ~m.mask
                sub = free
                while True:
                    mask = m.mask | sub
                    res.check("sandwiched-sets-are-members", mask in members,
                              lambda: f"{_space_text(space)} M={M.sets} d={d} K={space.from_mask(mask)}")
                    if sub == 0:
                        break
                    sub = (sub - 1) & free
    return res


def suite_minimal(seed=0, cases=50, instance=None):
    res = SuiteResult("minimal", "finite", seed)
    for space, M, brute in _class_cases(random.Random(seed), cases, instance):
        res.cases += 1
        for d in brute.classes:
            rep = fs.enumerate_class(M, d, brute)
            mins = [m.mask for m in rep.minimal_elements]
            for X, g in zip(rep.members, rep.greedy_endpoints):
                desc = lambda: f"{_space_text(space)} M={M.sets} d={d} K={X}"  # noqa: E731
                res.check("member-contains-minimal", any(m & ~X.mask == 0 for m in mins), desc)
                res.check("greedy-endpoint-minimal", g.mask in mins and g <= X, desc)
    return res


def suite_solver_equiv(seed=0, cases=50, instance=None):
    res = SuiteResult("solver-equiv", "finite", seed)
    for space, M, brute in _class_cases(random.Random(seed), cases, instance):
        res.cases += 1
        rad = fs.solve_radius_search(M)
        desc = lambda: f"{_space_text(space)} M={M.sets}"  # noqa: E731
        res.check("radius-equals-brute", rad.value == brute.value, desc)
        res.check("radius-vectors-in-omega", all(d in brute.classes for d, _ in rad.optima), desc)
        res.check("radius-recovers-omega", sorted({d for d, _ in rad.optima}) == brute.omega, desc)
    return res


# one-sided realization ---------------------------------------------------------------


@lru_cache(maxsize=8)
def solved_convex_instances(seed: int, count: int):
    """Seeded convex instances with ``n`` in {2, 3}, solved by the radius search."""
    rng = random.Random(seed)
    out = []
    kinds = ["l1", "linf", "random"]
    for idx in range(count):
        norm = random_norm(rng, kinds[idx % 3])
        n = rng.choice([2, 3])
        sets = [random_convex_polygon(rng, span=6, max_points=5) for _ in range(n)]
        M = fs.Boundary(sets, Convex2dBackend(norm))
        out.append((M, fs.solve_radius_search(M, seed=seed + idx)))
    return tuple(out)


def _convex_solved(seed, cases, instance):
    if instance is not None:
        M = fs.Boundary(instance.sets, instance.backend)
        return [(M, fs.solve_radius_search(M, seed=seed))]
    return solved_convex_instances(seed, cases)


def suite_one_sided(seed=0, cases=25, instance=None, backend="finite"):
    if backend == "convex2d":
        res = SuiteResult("one-sided", "convex2d", seed)
        for M, sol in _convex_solved(seed, cases, instance):
            res.cases += 1
            desc = lambda: f"M={M.sets} norm={M.backend.norm.unit_ball} d={sol.d}"  # noqa: E731
            res.check("snapshot-gap-within-tau", sol.report.snapshot_gap <= fs.TAU, desc)
            res.check("exact-vector-consistent",
                      fs.distance_vector(sol.K, M) == sol.d and fs.k_d(M, sol.d) == sol.K, desc)
            wit = fs.one_sided_check(M, sol.d, sol.K)
            res.check("witness-exists", bool(wit), desc)
            far = fs.d_far_points(M, sol.d, sol.K)
            res.check("d-far-vertex-exists", any(far), desc)
            res.check("far-implies-witness", all(i in wit for i, f in enumerate(far) if f), desc)
        return res
    res = SuiteResult("one-sided", "finite", seed)
    for space, M, brute in _class_cases(random.Random(seed), cases, instance):
        res.cases += 1
        for d in brute.classes:
            rep = fs.enumerate_class(M, d, brute)
            desc = lambda: f"{_space_text(space)} M={M.sets} d={d}"  # noqa: E731
            res.check("far-implies-witness",
                      all(i in rep.one_sided_witnesses for i, f in enumerate(rep.d_far) if f), desc)
            for X in rep.members:
                w = fs.one_sided_check(M, d, X, validate=False)
                res.check("witness-transfers-to-members", set(rep.one_sided_witnesses) <= set(w),
                          lambda: f"{_space_text(space)} M={M.sets} d={d} K={X}")
    return res


def suite_reverse_one_sided(seed=0, cases=25, instance=None, backend="finite"):
    if backend == "convex2d":
        res = SuiteResult("reverse-one-sided", "convex2d", seed)
        for M, sol in _convex_solved(seed, cases, instance):
            res.cases += 1
            res.check("reverse-witness-exists", bool(fs.reverse_one_sided_check(M, sol.d)),
                      lambda: f"M={M.sets} norm={M.backend.norm.unit_ball} d={sol.d}")
        return res
    # finite spaces are disconnected, so nothing is asserted here
    res = SuiteResult("reverse-one-sided", "finite", seed, observational=True)
    for space, M, brute in _class_cases(random.Random(seed), cases, instance):
        res.cases += 1
        for d in brute.classes:
            res.check("reverse-witness-exists", bool(fs.reverse_one_sided_check(M, d)),
                      lambda: f"{_space_text(space)} M={M.sets} d={d}")
    return res


# networks ----------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _cayley(n):
    return nw.cayley_topologies(n)


def _distinct_boundary(rng, space, n):
    pool = [m for m in range(1, 1 << space.n)]
    return [space.from_mask(m) for m in rng.sample(pool, n)]


def suite_degree_bounds(seed=0, cases=30, instance=None, max_points=6):
    res = SuiteResult("degree-bounds", "finite", seed)
    rng = random.Random(seed)
    if instance is not None:
        todo = [(instance.space, list(instance.sets))]
    else:
        todo = []
        for _ in range(cases):
            space = random_finite_space(rng, rng.randint(3, max_points))
            todo.append((space, _distinct_boundary(rng, space, rng.choice([3, 4]))))
    for space, elems in todo:
        res.cases += 1
        n = len(elems)
        B = FiniteBackend(space)
        desc = lambda: f"{_space_text(space)} A={elems}"  # noqa: E731
        filtered = nw.smt_solve(elems, B)
        full = nw.smt_solve(elems, B, topologies=_cayley(n))
        res.check("filtered-equals-unfiltered", filtered.value == full.value, desc)
        trees = nw.minimal_steiner_trees(full)
        res.check("minimal-tree-found", bool(trees), desc)
        for g in trees:
            G = g.graph
            res.check("is-tree", G.is_tree(), desc)
            res.check("interior-degree-at-least-3", all(G.degree(v) >= 3 for v in G.interior), desc)
            res.check("interior-count-at-most-n-2", len(G.interior) <= n - 2, desc)
        # each interior image already minimizes the sum of distances to its neighbours
        for _, g in filtered.optima:
            for v in g.graph.interior:
                nbrs = [g.image(w) for w in g.graph.adj[v]]
                here = sum((space.hausdorff(g.image(v), w) for w in nbrs), Fraction(0))
                best = min(sum((space.hausdorff(X, w) for w in nbrs), Fraction(0)) for X in space.subsets())
                res.check("interior-image-locally-optimal", here == best, desc)
    return res


def _random_degenerate(rng, space, elems):
    n = len(elems)
    tops = [t for t in _cayley(n) if t.k >= 1]
    T = rng.choice(tops)
    G = T.graph(elems)
    images = {v: random_subset(rng, space) for v in G.interior}
    v = rng.choice(G.interior)
    w = rng.choice(G.adj[v])
    images[v] = G.boundary[w] if w in G.boundary else images[w]
    return nw.Network(G, images, FiniteBackend(space))


def _degenerate_witness(rng, g: nw.Network):
    """Subdivide an edge and hang a pendant vertex, both mapped onto existing images."""
    G = g.graph
    u, v = rng.choice(G.edges)
    edges = [e for e in G.edges if e != (u, v)] + [(u, "x0"), ("x0", v)]
    p = rng.choice(G.vertices)
    edges.append((p, "x1"))
    H = nw.BoundaryGraph(list(G.vertices) + ["x0", "x1"], edges, G.boundary)
    images = dict(g.interior_images)
    images["x0"] = g.image(rng.choice([u, v]))
    images["x1"] = g.image(p)
    return nw.Network(H, images, g.backend)


def suite_nondegenerate(seed=0, cases=100, instance=None):
    res = SuiteResult("nondegenerate", "finite", seed)
    rng = random.Random(seed)
    for idx in range(cases if instance is None else 1):
        if instance is not None:
            space, elems = instance.space, list(instance.sets)
        else:
            space = random_finite_space(rng, rng.randint(3, 6))
            elems = _distinct_boundary(rng, space, rng.choice([3, 4]))
        res.cases += 1
        witness = idx % 2 == 1 and len(elems) <= 4
        if witness:
            smt = nw.smt_solve(elems, FiniteBackend(space))
            g = _degenerate_witness(rng, smt.network)
        else:
            g = _random_degenerate(rng, space, elems)
        desc = lambda: f"{_space_text(space)} graph={g.graph} images={g.interior_images}"  # noqa: E731
        res.check("input-degenerate", g.is_degenerate(), desc)
        h = nw.reduce_degenerate(g)
        res.check("output-non-degenerate", not h.is_degenerate(), desc)
        images = [h.image(x) for x in h.graph.vertices]
        res.check("images-distinct", len(set(images)) == len(images), desc)
        res.check("boundary-kept", h.graph.boundary == g.graph.boundary, desc)
        res.check("length-not-increased", nw.network_length(h) <= nw.network_length(g), desc)
        if witness:
            res.check("witness-length-preserved",
                      nw.network_length(h) == nw.network_length(g) == smt.value, desc)
    return res


def suite_dichotomy(seed=0, cases=20, instance=None):
    """Boundary across finiteness classes gives infinite mpn; within one class it is finite."""
    res = SuiteResult("dichotomy", "finite", seed)
    rng = random.Random(seed)
    for _ in range(cases):
        res.cases += 1
        space = random_finite_space(rng, 6, clusters=2)
        B = FiniteBackend(space)
        n = rng.choice([2, 3])
        T = rng.choice([t for t in nw.enumerate_topologies(n) if t.k == 1] or nw.enumerate_topologies(n))
        far = [space.point(0), space.point(1)] + [random_subset(rng, space) for _ in range(n - 2)]
        far = list(dict.fromkeys(far))
        while len(far) < n:
            S = random_subset(rng, space)
            if S not in far:
                far.append(S)
        G = T.graph(far)
        res.check("cross-class-mpn-infinite", nw.mpn_solve(G, B).value is INF, lambda: f"{_space_text(space)} A={far}")
        if len(G.interior) == 1:
            v = G.interior[0]
            every = all(nw.network_length(nw.Network(G, {v: X}, B)) is INF for X in space.subsets())
            res.check("every-network-infinite", every, lambda: f"{_space_text(space)} A={far}")
        near = random_boundary(rng, space, n, distinct=True)
        G = T.graph(near)
        sol = nw.mpn_solve(G, B)
        collapse = nw.network_length(nw.collapse_network(G, B))
        res.check("same-class-mpn-finite", sol.value is not INF, lambda: f"{_space_text(space)} A={near}")
        res.check("mpn-below-collapse", sol.value <= collapse, lambda: f"{_space_text(space)} A={near}")
    return res


# convex2d kernel ---------------------------------------------------------------------


def _rand_point(rng, span=6):
    return (Fraction(rng.randint(-span, 2 * span), rng.randint(1, 3)),
            Fraction(rng.randint(-span, 2 * span), rng.randint(1, 3)))


def suite_convexity_ineq(seed=0, cases=100, instance=None):
    res = SuiteResult("convexity-ineq", "convex2d", seed)
    rng = random.Random(seed)
    for B, norm in _convex_cases(rng, cases, instance):
        res.cases += 1
        a, b = _rand_point(rng), _rand_point(rng)
        t = 1 + Fraction(rng.randint(0, 8), rng.randint(1, 4))
        x = ((1 - t) * a[0] + t * b[0], (1 - t) * a[1] + t * b[1])
        f = lambda p: cv.dist_point_to_polygon(p, B, norm)  # noqa: E731
        desc = lambda: f"B={B} norm={norm.unit_ball} a={a} b={b} t={t}"  # noqa: E731
        res.check("extrapolation-bound", f(x) >= t * f(b) - (t - 1) * f(a), desc)
        res.check("lipschitz", abs(f(a) - f(b)) <= norm((a[0] - b[0], a[1] - b[1])), desc)
    return res


def suite_free_space(seed=0, cases=100, instance=None):
    """A convex set at positive distance from the boundary of ``B_r(A)`` fits in a smaller offset."""
    res = SuiteResult("free-space", "convex2d", seed)
    rng = random.Random(seed)
    for A, norm in _convex_cases(rng, cases, instance):
        res.cases += 1
        r = Fraction(rng.randint(1, 8), rng.randint(1, 4))
        Br = cv.minkowski_offset(A, r, norm)
        V = Br.vertices
        c0 = (sum(v[0] for v in V) / len(V), sum(v[1] for v in V) / len(V))
        pts = []
        for _ in range(rng.randint(1, 4)):
            w = [rng.randint(0, 5) for _ in V]
            if not any(w):
                w[0] = 1
            s = sum(w)
            p = (sum(wi * v[0] for wi, v in zip(w, V)) / s, sum(wi * v[1] for wi, v in zip(w, V)) / s)
            lam = Fraction(rng.randint(1, 9), 10)
            pts.append((c0[0] + lam * (p[0] - c0[0]), c0[1] + lam * (p[1] - c0[1])))
        C = cv.ConvexPolygon.hull_of(pts)
        gamma = min(cv.dist_to_boundary(c, Br, norm) for c in C.vertices)
        desc = lambda: f"A={A} norm={norm.unit_ball} r={r} C={C}"  # noqa: E731
        res.check("gap-positive", gamma > 0, desc)
        top = min(r, gamma)
        for delta in (top, top * Fraction(rng.randint(1, 9), 10)):
            res.check("fits-in-smaller-offset",
                      cv.minkowski_offset(A, r - delta, norm).includes(C), desc)
    return res


def suite_continuity(seed=0, cases=100, instance=None):
    res = SuiteResult("continuity", "convex2d", seed)
    rng = random.Random(seed)
    for A, norm in _convex_cases(rng, cases, instance):
        res.cases += 1
        B = random_convex_polygon(rng)
        lo = cv.set_gap(A, B, norm) + Fraction(rng.randint(1, 4), 4)
        hi = lo + Fraction(rng.randint(1, 8), 2)
        coarse, mid, fine = (cv.continuity_probe(A, B, lo, hi, m, norm) for m in (4, 16, 64))
        desc = lambda: f"A={A} B={B} norm={norm.unit_ball} [{lo}, {hi}]"  # noqa: E731
        res.check("moduli-finite", coarse.all_finite and mid.all_finite and fine.all_finite, desc)
        res.check("refinement-monotone",
                  fine.max_modulus <= mid.max_modulus <= coarse.max_modulus, desc)
        # a thin spike of B can keep one jump alive for a step or two, so compare far ends
        res.check("modulus-shrinks",
                  coarse.max_modulus == 0 or fine.max_modulus < coarse.max_modulus, desc)
    return res


# registry ----------------------------------------------------------------------------

SUITES = {
    "hausdorff-equiv": (suite_hausdorff_equiv, ("finite",)),
    "balls": (suite_balls, ("finite", "convex2d")),
    "sandwich": (suite_sandwich, ("finite",)),
    "nondegenerate": (suite_nondegenerate, ("finite",)),
    "degree-bounds": (suite_degree_bounds, ("finite",)),
    "greatest": (suite_greatest, ("finite",)),
    "matryoshka": (suite_matryoshka, ("finite",)),
    "minimal": (suite_minimal, ("finite",)),
    "one-sided": (suite_one_sided, ("finite", "convex2d")),
    "reverse-one-sided": (suite_reverse_one_sided, ("finite", "convex2d")),
    "free-space": (suite_free_space, ("convex2d",)),
    "convexity-ineq": (suite_convexity_ineq, ("convex2d",)),
    "continuity": (suite_continuity, ("convex2d",)),
}

# used by the acceptance tests, not exposed on the command line
EXTRA_SUITES = {
    "solver-equiv": (suite_solver_equiv, ("finite",)),
    "dichotomy": (suite_dichotomy, ("finite",)),
}


def run_suite(name: str, backend: Optional[str] = None, seed: int = 0, cases: Optional[int] = None,
              instance: Optional[Instance] = None) -> SuiteResult:
    table = {**SUITES, **EXTRA_SUITES}
    if name not in table:
        raise UnknownSuite(name)
    fn, backends = table[name]
    if backend is None:
        backend = instance.kind if instance is not None else backends[0]
    if backend not in backends:
        raise ValueError(f"suite {name} does not run on the {backend} backend")
    if instance is not None and instance.kind != backend:
        raise ValueError(f"instance is {instance.kind}, suite backend is {backend}")
    kwargs = {"seed": seed, "instance": instance}
    if cases is not None:
        kwargs["cases"] = cases
    if len(backends) > 1:
        kwargs["backend"] = backend
    return fn(**kwargs)
