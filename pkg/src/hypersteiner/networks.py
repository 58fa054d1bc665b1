"""Networks in a hyperspace: graphs whose boundary vertices are pinned to sets.

Vertex images live in one backend (finite subsets or convex polygons); the
length of a network sums backend distances along its edges.
"""

from __future__ import annotations

import itertools
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence

from .backends import BackendMismatch
from .extended import INF, ext_sum


class GraphError(ValueError):
    pass


class BoundaryGraph:
    """Simple connected graph with a nonempty boundary bound to distinct elements."""

    def __init__(self, vertices: Sequence, edges, boundary: Dict):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("vertex labels must be distinct")
        self.index = {v: i for i, v in enumerate(self.vertices)}
        pairs = set()
        for e in edges:
            u, v = (str(x) for x in e)
            if u == v:
                raise GraphError(f"loop at {u}")
            for x in (u, v):
                if x not in self.index:
                    raise GraphError(f"edge endpoint {x} is not a vertex")
            key = (u, v) if self.index[u] < self.index[v] else (v, u)
            if key in pairs:
                raise GraphError(f"multi-edge {key}")
            pairs.add(key)
        self.edges = tuple(sorted(pairs, key=lambda e: (self.index[e[0]], self.index[e[1]])))
        if not boundary:
            raise GraphError("boundary must be nonempty")
        self.boundary = {str(k): v for k, v in boundary.items()}
        for v in self.boundary:
            if v not in self.index:
                raise GraphError(f"boundary vertex {v} is not a vertex")
        elems = list(self.boundary.values())
        for i in range(len(elems)):
            for j in range(i + 1, len(elems)):
                if elems[i] == elems[j]:
                    raise GraphError("boundary elements must be distinct")
        self.adj = {v: [] for v in self.vertices}
        for u, v in self.edges:
            self.adj[u].append(v)
            self.adj[v].append(u)
        if not self._connected():
            raise GraphError("graph must be connected")

    def _connected(self) -> bool:
        seen, stack = {self.vertices[0]}, [self.vertices[0]]
        while stack:
            for w in self.adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    @property
    def boundary_vertices(self) -> tuple:
        return tuple(v for v in self.vertices if v in self.boundary)

    @property
    def interior(self) -> tuple:
        return tuple(v for v in self.vertices if v not in self.boundary)

    def degree(self, v) -> int:
        return len(self.adj[v])

    def is_tree(self) -> bool:
        return len(self.edges) == len(self.vertices) - 1

    def __repr__(self):
        return f"BoundaryGraph(vertices={list(self.vertices)}, edges={list(self.edges)})"


@dataclass
class Network:
    graph: BoundaryGraph
    interior_images: dict
    backend: object

    def __post_init__(self):
        if set(self.interior_images) != set(self.graph.interior):
            raise GraphError("interior images must cover exactly the interior vertices")
        for v in self.graph.vertices:
            self.backend.check(self.image(v))

    def image(self, v):
        if v in self.graph.boundary:
            return self.graph.boundary[v]
        return self.interior_images[v]

    def edge_lengths(self) -> list:
        return [self.backend.distance(self.image(u), self.image(v)) for u, v in self.graph.edges]

    def degenerate_edges(self) -> list:
        return [(u, v) for u, v in self.graph.edges if self.image(u) == self.image(v)]

    def is_degenerate(self) -> bool:
        return bool(self.degenerate_edges())


def network_length(g: Network):
    return ext_sum(g.edge_lengths())


def collapse_network(G: BoundaryGraph, backend) -> Network:
    """Every interior vertex mapped to the first boundary element."""
    target = G.boundary[G.boundary_vertices[0]]
    return Network(G, {v: target for v in G.interior}, backend)


def reduce_degenerate(g: Network) -> Network:
    """Merge vertices with equal images until none remain.

    The removed vertex is always interior (the later one when both are); its
    edges are re-targeted to the survivor and duplicate edges coalesce.
    """
    G = g.graph
    vertices = list(G.vertices)
    edges = {frozenset(e) for e in G.edges}
    images = {v: g.image(v) for v in vertices}
    while True:
        pair = None
        for a, b in itertools.combinations(vertices, 2):
            if images[a] == images[b]:
                pair = (a, b)
                break
        if pair is None:
            break
        a, b = pair
        keep, drop = (a, b) if b not in G.boundary else (b, a)
        new_edges = set()
        for e in edges:
            if drop in e:
                (other,) = e - {drop}
                if other != keep:
                    new_edges.add(frozenset((keep, other)))
            else:
                new_edges.add(e)
        edges = new_edges
        vertices.remove(drop)
    H = BoundaryGraph(vertices, [tuple(e) for e in edges], G.boundary)
    return Network(H, {v: images[v] for v in H.interior}, g.backend)


# topologies ----------------------------------------------------------------------


def _canonical(n: int, edges, size: int) -> str:
    adj = [[] for _ in range(size)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)

    def enc(v, parent):
        kids = sorted(enc(w, v) for w in adj[v] if w != parent)
        tag = str(v) if v < n else "*"
        return tag + ("(" + ",".join(kids) + ")" if kids else "")

    return enc(0, -1)


def _relabel(n: int, edges, size: int):
    """Interior vertices renumbered in canonical DFS order for a stable representation."""
    adj = [[] for _ in range(size)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    order = {}

    def enc(v, parent):
        return (str(v) if v < n else "*") + "(" + ",".join(sorted(enc(w, v) for w in adj[v] if w != parent)) + ")"

    def walk(v, parent):
        if v >= n and v not in order:
            order[v] = n + len(order)
        for w in sorted((w for w in adj[v] if w != parent), key=lambda w: enc(w, v)):
            walk(w, v)

    walk(0, -1)
    m = lambda v: v if v < n else order[v]  # noqa: E731
    return tuple(sorted(tuple(sorted((m(u), m(v)))) for u, v in edges))


@dataclass(frozen=True)
class TreeTopology:
    """Tree on boundary vertices ``0..n-1`` and interior vertices ``n..n+k-1``."""

    n: int
    k: int
    edges: tuple
    key: str = field(compare=False, default="")

    def degree(self, v) -> int:
        return sum(v in e for e in self.edges)

    def names(self) -> list:
        return [f"v{i}" for i in range(self.n)] + [f"s{j}" for j in range(self.k)]

    def graph(self, elements: Sequence) -> BoundaryGraph:
        if len(elements) != self.n:
            raise ValueError(f"topology needs {self.n} boundary elements")
        names = self.names()
        return BoundaryGraph(names, [(names[u], names[v]) for u, v in self.edges],
                             {names[i]: elements[i] for i in range(self.n)})


def _make_topology(n, edges):
    size = 1 + max(max(e) for e in edges)
    edges = _relabel(n, edges, size)
    return TreeTopology(n, size - n, edges, _canonical(n, edges, size))


def _grow(topologies, m):
    """Insert boundary vertex ``m`` into each tree on boundary ``0..m-1``."""
    out = {}
    for T in topologies:
        size = T.n + T.k
        edges = list(T.edges)
        shift = lambda v: v if v < m else v + 1  # noqa: E731  interior indices move up by one
        base = [(shift(u), shift(v)) for u, v in edges]
        cands = []
        for w in range(size):
            cands.append(base + [(shift(w), m)])
        for i, (u, v) in enumerate(base):
            rest = base[:i] + base[i + 1:]
            cands.append(rest + [(u, m), (m, v)])
            s = size + 1
            cands.append(rest + [(u, s), (s, v), (s, m)])
        for j in range(T.k):
            old = shift(T.n + j)
            rename = lambda x: m if x == old else (x - 1 if x > old else x)  # noqa: E731
            cands.append([(rename(u), rename(v)) for u, v in base])
        for c in cands:
            top = _make_topology(m + 1, c)
            out.setdefault(top.key, top)
    return sorted(out.values(), key=lambda t: (t.k, t.key))


def enumerate_topologies(n: int) -> list:
    """Trees joining ``n`` boundary vertices with interior degrees >= 3, up to interior relabeling."""
    if not 2 <= n <= 8:
        raise ValueError(f"boundary size must be in 2..8, got {n}")
    tops = [_make_topology(2, [(0, 1)])]
    for m in range(2, n):
        tops = _grow(tops, m)
    return tops


def prufer_trees(size: int):
    """Every labeled tree on ``size`` vertices, from Prufer sequences."""
    if size == 1:
        yield ()
        return
    if size == 2:
        yield ((0, 1),)
        return
    for seq in itertools.product(range(size), repeat=size - 2):
        degree = [1] * size
        for x in seq:
            degree[x] += 1
        edges = []
        for x in seq:
            leaf = min(i for i in range(size) if degree[i] == 1)
            edges.append(tuple(sorted((leaf, x))))
            degree[leaf] -= 1
            degree[x] -= 1
        u, v = [i for i in range(size) if degree[i] == 1]
        edges.append((u, v))
        yield tuple(edges)


def cayley_topologies(n: int, filtered: bool = False) -> list:
    """All trees on ``n + k`` labeled vertices for ``k <= n - 2``, deduplicated up to interior relabeling.

    With ``filtered`` the interior-degree bound is applied, giving an
    independent route to :func:`enumerate_topologies`.
    """
    out = {}
    for k in range(0, n - 1):
        for edges in prufer_trees(n + k):
            if filtered and any(sum(v in e for e in edges) < 3 for v in range(n, n + k)):
                continue
            top = _make_topology(n, edges) if edges else None
            out.setdefault(top.key, top)
    return sorted(out.values(), key=lambda t: (t.k, t.key))


# mpn -------------------------------------------------------------------------------


@dataclass
class MpnResult:
    network: Network
    value: object
    exact: bool
    method: str
    report: dict = field(default_factory=dict)


def _check_backend(G: BoundaryGraph, backend):
    for v in G.boundary_vertices:
        backend.check(G.boundary[v])


def _boundary_finite(G, backend) -> bool:
    elems = [G.boundary[v] for v in G.boundary_vertices]
    return all(backend.distance(a, b) is not INF for a, b in itertools.combinations(elems, 2))


def _interior_forest(G) -> bool:
    inner = set(G.interior)
    m = sum(1 for u, v in G.edges if u in inner and v in inner)
    # a graph is a forest iff edges = vertices - components
    seen, comps = set(), 0
    for s in inner:
        if s in seen:
            continue
        comps += 1
        stack = [s]
        seen.add(s)
        while stack:
            for w in G.adj[stack.pop()]:
                if w in inner and w not in seen:
                    seen.add(w)
                    stack.append(w)
    return m == len(inner) - comps


def _finite_mpn(G, backend, max_sweeps):
    space = backend.space
    ker = space.kernel
    inf = ker.inf
    inner = list(G.interior)
    inner_set = set(inner)
    size = 1 << space.n
    rows = {}

    def row(mask):
        if mask not in rows:
            rows[mask] = ker.row(mask)
        return rows[mask]

    unary = {}
    for v in inner:
        acc = [0] * size
        for w in G.adj[v]:
            if w in G.boundary:
                r = row(G.boundary[w].mask)
                acc = [min(a + b, inf) for a, b in zip(acc, r)]
        acc[0] = inf
        unary[v] = acc

    fixed = 0
    for u, v in G.edges:
        if u in G.boundary and v in G.boundary:
            fixed = min(fixed + ker.hausdorff(G.boundary[u].mask, G.boundary[v].mask), inf)

    if _interior_forest(G):
        choice, total = {}, fixed
        seen = set()
        for root in inner:
            if root in seen:
                continue
            order, parent, stack = [], {root: None}, [root]
            seen.add(root)
            while stack:
                x = stack.pop()
                order.append(x)
                for w in G.adj[x]:
                    if w in inner_set and w not in seen:
                        seen.add(w)
                        parent[w] = x
                        stack.append(w)
            cost, arg = {}, {}
            for x in reversed(order):
                c = unary[x]
                for w in G.adj[x]:
                    if parent.get(w) == x:
                        c = [min(a + b, inf) for a, b in zip(c, cost[w])]
                if x == root:
                    best = min(range(1, size), key=lambda X: (c[X], X))
                    total = min(total + c[best], inf)
                    choice[root] = best
                else:
                    vals, args = ker.minplus(c)
                    cost[x], arg[x] = list(vals), list(args)
            for x in order:
                if x != root:
                    choice[x] = arg[x][choice[parent[x]]]
        g = Network(G, {v: space.from_mask(choice[v]) for v in inner}, backend)
        return MpnResult(g, space.decode(total), True, "tree-dp", {})

    # cyclic interior: coordinate descent, each block exact over all subsets
    best = None
    sweeps_used = 0
    for start in G.boundary_vertices:
        choice = {v: G.boundary[start].mask for v in inner}
        for sweep in range(max_sweeps):
            changed = False
            for v in inner:
                c = list(unary[v])
                for w in G.adj[v]:
                    if w in inner_set:
                        r = row(choice[w])
                        c = [min(a + b, inf) for a, b in zip(c, r)]
                X = min(range(1, size), key=lambda X: (c[X], X))
                if c[X] < c[choice[v]]:
                    choice[v] = X
                    changed = True
            sweeps_used += 1
            if not changed:
                break
        g = Network(G, {v: space.from_mask(choice[v]) for v in inner}, backend)
        val = network_length(g)
        if best is None or val < best.value:
            best = MpnResult(g, val, False, "block-descent", {})
    best.report = {"sweeps": sweeps_used, "starts": len(G.boundary_vertices)}
    return best


def _convex_block(images, backend):
    from .fermat_steiner import Boundary, solve_radius_search

    res = solve_radius_search(Boundary(images, backend), starts=0)
    return res.K


def _convex_starts(G, backend, starts, rng):
    from .fermat_steiner import Boundary, k_d

    elems = [G.boundary[v] for v in G.boundary_vertices]
    pool = list(elems)
    for A, B in itertools.combinations(elems, 2):
        h = backend.distance(A, B) / 2
        mid = k_d(Boundary([A, B], backend), (h, h))
        if mid is not None and mid not in pool:
            pool.append(mid)
    inner = list(G.interior)
    out = [{v: P for v in inner} for P in pool]
    while len(out) < starts:
        out.append({v: rng.choice(pool) for v in inner})
    return out[:starts]


def _convex_mpn(G, backend, starts, seed, max_sweeps):
    rng = random.Random(seed)
    inner = list(G.interior)
    best, total_sweeps, all_converged = None, 0, True
    for init in _convex_starts(G, backend, starts, rng):
        g = Network(G, dict(init), backend)
        length = network_length(g)
        converged = False
        for _ in range(max_sweeps):
            total_sweeps += 1
            images = dict(g.interior_images)
            for v in inner:
                nbrs = [g.graph.boundary[w] if w in G.boundary else images[w] for w in G.adj[v]]
                images[v] = _convex_block(nbrs, backend)
            cand = Network(G, images, backend)
            cand_len = network_length(cand)
            if cand_len < length:
                g, length = cand, cand_len
            else:
                converged = True
                break
        all_converged = all_converged and converged
        if best is None or length < best[1]:
            best = (g, length)
    report = {"starts": starts, "sweeps": total_sweeps, "converged": all_converged}
    return MpnResult(best[0], best[1], False, "block-descent", report)


def mpn_solve(G: BoundaryGraph, backend, starts: int = 16, seed: int = 0,
              max_sweeps: int = 50) -> MpnResult:
    """Shortest network on ``G``.

    Finite backend: exact by dynamic programming whenever the interior
    vertices induce a forest (always the case for trees); otherwise block
    descent. Convex backend: multi-start block descent where each interior
    image solves the Fermat-Steiner problem for its neighbours.
    """
    _check_backend(G, backend)
    if not G.interior:
        g = Network(G, {}, backend)
        return MpnResult(g, network_length(g), True, "direct", {})
    if not _boundary_finite(G, backend):
        return MpnResult(collapse_network(G, backend), INF, True, "infinite-boundary", {})
    if backend.kind == "finite":
        return _finite_mpn(G, backend, max_sweeps)
    if backend.kind == "convex2d":
        return _convex_mpn(G, backend, starts, seed, max_sweeps)
    raise BackendMismatch(f"unknown backend {backend!r}")


# smt -------------------------------------------------------------------------------


@dataclass
class SmtResult:
    topology: TreeTopology
    network: Network
    value: object
    optima: list  # (topology index, reduced network) for every optimal topology
    exact: bool


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("HYPERSTEINER_THREADS", "1")))
    except ValueError:
        return 1


def smt_solve(elements: Sequence, backend, topologies: Optional[list] = None,
              seed: int = 0, starts: int = 16) -> SmtResult:
    """Minimum of ``mpn`` over Steiner topologies, first optimum in enumeration order."""
    n = len(elements)
    if topologies is None:
        if not 2 <= n <= 6:
            raise ValueError(f"smt needs 2..6 boundary elements, got {n}")
        topologies = enumerate_topologies(n)
    for E in elements:
        backend.check(E)

    def solve(T):
        return mpn_solve(T.graph(list(elements)), backend, starts=starts, seed=seed)

    threads = _threads()
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(solve, topologies))
    else:
        results = [solve(T) for T in topologies]
    value = min(r.value for r in results)
    optima = [(i, reduce_degenerate(r.network)) for i, r in enumerate(results) if r.value == value]
    i0, g0 = optima[0]
    return SmtResult(topologies[i0], g0, value, optima, all(r.exact for r in results))


def minimal_steiner_trees(result: SmtResult) -> list:
    """Reduced optimal networks of least interior count (all of them, ties kept)."""
    good = [g for _, g in result.optima if network_length(g) == result.value and not g.is_degenerate()]
    if not good:
        return []
    k = min(len(g.graph.interior) for g in good)
    return [g for g in good if len(g.graph.interior) == k]

