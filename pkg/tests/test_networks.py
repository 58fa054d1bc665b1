import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from hypersteiner import networks as nw
from hypersteiner.backends import BackendMismatch, Convex2dBackend, FiniteBackend
from hypersteiner.convex2d import ConvexPolygon, PolyhedralNorm
from hypersteiner.extended import INF
from hypersteiner.metric import FiniteSpace
from hypersteiner.random_instances import random_finite_space

seeds = st.integers(0, 10 ** 6)


@pytest.fixture
def path():
    return FiniteSpace(["p0", "p1", "p2"], [[0, 1, 2], [1, 0, 1], [2, 1, 0]])


def _star(A, B):
    return nw.BoundaryGraph(["a", "b", "c"], [("a", "c"), ("b", "c")], {"a": A, "b": B})


def _brute_mpn(G, space):
    B = FiniteBackend(space)
    best = INF
    for imgs in itertools.product(list(space.subsets()), repeat=len(G.interior)):
        best = min(best, nw.network_length(nw.Network(G, dict(zip(G.interior, imgs)), B)))
    return best


def _distinct(rng, space, n):
    return [space.from_mask(m) for m in rng.sample(range(1, 1 << space.n), n)]


def test_graph_validation(path):
    A, B = path.point(0), path.point(2)
    with pytest.raises(nw.GraphError):
        nw.BoundaryGraph(["a", "a"], [], {"a": A})
    with pytest.raises(nw.GraphError):
        nw.BoundaryGraph(["a", "b"], [("a", "a")], {"a": A})
    with pytest.raises(nw.GraphError):
        nw.BoundaryGraph(["a", "b"], [("a", "b"), ("b", "a")], {"a": A})
    with pytest.raises(nw.GraphError):
        nw.BoundaryGraph(["a", "b", "c"], [("a", "b")], {"a": A})
    with pytest.raises(nw.GraphError):
        nw.BoundaryGraph(["a", "b"], [("a", "b")], {"a": A, "b": path.point(0)})
    with pytest.raises(nw.GraphError):
        nw.BoundaryGraph(["a", "b"], [("a", "b")], {})
    G = _star(A, B)
    with pytest.raises(nw.GraphError):
        nw.Network(G, {}, FiniteBackend(path))


def test_length_examples(path):
    A, B = path.point(0), path.point(2)
    G = _star(A, B)
    bk = FiniteBackend(path)
    C = path.subset(["p1", "p2"])
    assert nw.network_length(nw.Network(G, {"c": C}, bk)) == path.hausdorff(C, A) + path.hausdorff(C, B)
    one = nw.BoundaryGraph(["a", "c"], [("a", "c")], {"a": A})
    assert nw.network_length(nw.Network(one, {"c": A}, bk)) == 0


def test_cross_cluster_lengths_all_infinite():
    space = random_finite_space(random.Random(5), 6, clusters=2)
    G = _star(space.point(0), space.point(1))
    bk = FiniteBackend(space)
    assert all(nw.network_length(nw.Network(G, {"c": X}, bk)) is INF for X in space.subsets())
    assert nw.mpn_solve(G, bk).value is INF


def test_backend_mismatch(path):
    G = _star(path.point(0), path.point(2))
    with pytest.raises(BackendMismatch):
        nw.mpn_solve(G, Convex2dBackend(PolyhedralNorm.l1()))


def test_reduce_non_degenerate_is_identity(path):
    G = _star(path.point(0), path.point(2))
    g = nw.Network(G, {"c": path.point(1)}, FiniteBackend(path))
    h = nw.reduce_degenerate(g)
    assert h.graph.vertices == G.vertices and h.graph.edges == G.edges


def test_reduce_star_center_on_leaf(path):
    A, B = path.point(0), path.point(2)
    g = nw.Network(_star(A, B), {"c": A}, FiniteBackend(path))
    h = nw.reduce_degenerate(g)
    assert h.graph.vertices == ("a", "b")
    assert h.graph.edges == (("a", "b"),)
    assert nw.network_length(h) == nw.network_length(g) == 2


def test_reduce_chain_with_equal_interiors(path):
    A, B = path.point(0), path.point(2)
    G = nw.BoundaryGraph(["v0", "s0", "s1", "v1"], [("v0", "s0"), ("s0", "s1"), ("s1", "v1")],
                         {"v0": A, "v1": B})
    g = nw.Network(G, {"s0": path.point(1), "s1": path.point(1)}, FiniteBackend(path))
    h = nw.reduce_degenerate(g)
    assert h.graph.vertices == ("v0", "s0", "v1")
    assert not h.is_degenerate()
    assert nw.network_length(h) == 2


def test_reduce_merges_non_adjacent_equal_images(path):
    A, B = path.point(0), path.point(2)
    G = nw.BoundaryGraph(["a", "b", "s", "t"], [("a", "s"), ("s", "b"), ("b", "t")], {"a": A, "b": B})
    g = nw.Network(G, {"s": path.point(1), "t": A}, FiniteBackend(path))
    h = nw.reduce_degenerate(g)
    images = [h.image(v) for v in h.graph.vertices]
    assert len(set(images)) == len(images)
    assert nw.network_length(h) <= nw.network_length(g)


@pytest.mark.parametrize("n,count", [(2, 1), (3, 4), (4, 32)])
def test_topology_counts_match_prufer_oracle(n, count):
    tops = nw.enumerate_topologies(n)
    assert len(tops) == count
    oracle = nw.cayley_topologies(n, filtered=True)
    assert {t.key for t in tops} == {t.key for t in oracle}


def test_topology_counts_larger():
    assert [len(nw.enumerate_topologies(n)) for n in (5, 6)] == [396, 6692]
    with pytest.raises(ValueError):
        nw.enumerate_topologies(1)
    with pytest.raises(ValueError):
        nw.enumerate_topologies(9)


def test_topology_shape():
    for n in (3, 4, 5):
        for T in nw.enumerate_topologies(n):
            assert T.k <= n - 2
            assert len(T.edges) == T.n + T.k - 1
            assert all(T.degree(v) >= 3 for v in range(n, n + T.k))
    star = [T for T in nw.enumerate_topologies(3) if T.k == 1]
    assert len(star) == 1


def test_prufer_counts():
    assert [sum(1 for _ in nw.prufer_trees(m)) for m in range(1, 7)] == [1, 1, 3, 16, 125, 1296]
    assert len(nw.cayley_topologies(4)) == 821


def test_mpn_examples(path):
    A, B = path.point(0), path.point(2)
    bk = FiniteBackend(path)
    direct = nw.BoundaryGraph(["a", "b"], [("a", "b")], {"a": A, "b": B})
    assert nw.mpn_solve(direct, bk).method == "direct"
    res = nw.mpn_solve(_star(A, B), bk)
    assert res.value == 2 and res.exact
    assert _brute_mpn(_star(A, B), path) == 2
    assert nw.mpn_solve(_star(A, B), bk).value <= nw.network_length(nw.collapse_network(_star(A, B), bk))


@given(seeds)
def test_mpn_matches_brute_oracle(seed):
    rng = random.Random(seed)
    space = random_finite_space(rng, rng.randint(3, 5))
    n = rng.choice([2, 3])
    elems = _distinct(rng, space, n)
    tops = [T for T in nw.enumerate_topologies(n) if T.k >= 1] or nw.enumerate_topologies(n)
    G = rng.choice(tops).graph(elems)
    assert nw.mpn_solve(G, FiniteBackend(space)).value == _brute_mpn(G, space)


@given(seeds)
def test_mpn_on_cycles_bounded_by_oracle(seed):
    rng = random.Random(seed)
    space = random_finite_space(rng, rng.randint(3, 4))
    A, B = _distinct(rng, space, 2)
    G = nw.BoundaryGraph(["a", "b", "s", "t"], [("a", "s"), ("s", "t"), ("t", "b"), ("b", "s")],
                         {"a": A, "b": B})
    res = nw.mpn_solve(G, FiniteBackend(space))
    assert res.value >= _brute_mpn(G, space)
    assert nw.network_length(res.network) == res.value


def test_smt_examples(path):
    bk = FiniteBackend(path)
    two = nw.smt_solve([path.point(0), path.point(2)], bk)
    assert two.value == 2
    three = nw.smt_solve([path.point(0), path.point(1), path.point(2)], bk)
    assert three.value == 2
    assert not three.network.graph.interior
    assert nw.minimal_steiner_trees(three)


def test_smt_threads_do_not_change_result(path, monkeypatch):
    elems = [path.point(0), path.point(1), path.point(2)]
    base = nw.smt_solve(elems, FiniteBackend(path))
    monkeypatch.setenv("HYPERSTEINER_THREADS", "3")
    again = nw.smt_solve(elems, FiniteBackend(path))
    assert again.value == base.value
    assert [i for i, _ in again.optima] == [i for i, _ in base.optima]


def test_convex_smt_l1_median():
    bk = Convex2dBackend(PolyhedralNorm.l1())
    pts = [(0, 0), (2, 1), (1, 3)]
    res = nw.smt_solve([ConvexPolygon.point(*p) for p in pts], bk)
    grid = min(sum(abs(x - a) + abs(y - b) for a, b in pts) for x in range(4) for y in range(4))
    assert res.value == grid == 5
    (s,) = res.network.graph.interior
    assert res.network.image(s) == ConvexPolygon.point(1, 1)


@given(seeds)
def test_steiner_trees_respect_degree_bounds(seed):
    rng = random.Random(seed)
    space = random_finite_space(rng, rng.randint(3, 5))
    n = rng.choice([3, 4])
    elems = _distinct(rng, space, n)
    res = nw.smt_solve(elems, FiniteBackend(space))
    for g in nw.minimal_steiner_trees(res):
        assert all(g.graph.degree(v) >= 3 for v in g.graph.interior)
        assert len(g.graph.interior) <= n - 2


def test_convex_mpn_two_squares():
    bk = Convex2dBackend(PolyhedralNorm.linf())
    A, B = ConvexPolygon.box(0, 0, 1, 1), ConvexPolygon.box(2, 2, 3, 3)
    res = nw.mpn_solve(_star(A, B), bk, starts=4)
    assert res.value == 2
    assert nw.network_length(res.network) == 2
    assert not res.exact
