import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from hypersteiner import fermat_steiner as fs
from hypersteiner.backends import BackendMismatch, Convex2dBackend, FiniteBackend
from hypersteiner.convex2d import ConvexPolygon, PolyhedralNorm
from hypersteiner.extended import INF
from hypersteiner.metric import FiniteSpace
from hypersteiner.random_instances import random_boundary, random_finite_space

seeds = st.integers(0, 10 ** 6)


@pytest.fixture
def path():
    return FiniteSpace(["p0", "p1", "p2"], [[0, 1, 2], [1, 0, 1], [2, 1, 0]])


@pytest.fixture
def path_boundary(path):
    return fs.Boundary([path.subset(["p0"]), path.subset(["p2"])])


@pytest.fixture
def squares():
    B = Convex2dBackend(PolyhedralNorm.linf())
    return fs.Boundary([ConvexPolygon.box(0, 0, 1, 1), ConvexPolygon.box(2, 2, 3, 3)], B)


def test_boundary_validation(path):
    with pytest.raises(ValueError):
        fs.Boundary([])
    two = FiniteSpace(["a", "b"], [[0, INF], [INF, 0]])
    with pytest.raises(fs.InfeasibleBoundary):
        fs.Boundary([two.subset(["a"]), two.subset(["b"])])
    with pytest.raises(BackendMismatch):
        fs.Boundary([ConvexPolygon.point(0, 0)])
    with pytest.raises(BackendMismatch):
        fs.Boundary([ConvexPolygon.point(0, 0)], FiniteBackend(path))


def test_objective_examples(path, path_boundary):
    assert fs.objective(path.subset(["p1"]), path_boundary) == 2
    one = fs.Boundary([path.subset(["p0"])])
    assert fs.objective(path.subset(["p0"]), one) == 0
    split = FiniteSpace(["a", "b", "c"], [[0, 1, INF], [1, 0, INF], [INF, INF, 0]])
    M = fs.Boundary([split.subset(["a"]), split.subset(["b"])])
    assert fs.objective(split.subset(["c"]), M) is INF


def test_bruteforce_path(path, path_boundary):
    res = fs.solve_bruteforce(path_boundary)
    assert res.value == 2
    assert sorted(X.labels for X in res.minimizers) == [("p0",), ("p1",), ("p2",)]
    assert res.omega == [(0, 2), (1, 1), (2, 0)]


def test_bruteforce_single_set(path):
    M = fs.Boundary([path.subset(["p0", "p1"])])
    res = fs.solve_bruteforce(M)
    assert res.value == 0
    assert res.minimizers == [path.subset(["p0", "p1"])]
    assert res.omega == [(0,)]


def test_bruteforce_avoids_far_cluster():
    space = random_finite_space(random.Random(3), 6, clusters=2)
    M = fs.Boundary([space.point(0), space.point(2)])
    res = fs.solve_bruteforce(M)
    far = {1, 3, 5}
    assert all(not (set(X.members) & far) for X in res.minimizers)


def test_bruteforce_size_limit():
    big = random_finite_space(random.Random(0), 13)
    with pytest.raises(ValueError):
        fs.solve_bruteforce(fs.Boundary([big.point(0)]))


def test_k_d_examples(path, path_boundary):
    assert fs.k_d(path_boundary, (1, 1)) == path.subset(["p1"])
    assert fs.k_d(path_boundary, (0, 1)) is None
    same = fs.Boundary([path.subset(["p1"]), path.subset(["p1"])])
    assert fs.k_d(same, (0, 0)) == path.subset(["p1"])


def test_class_report_path(path, path_boundary):
    rep = fs.enumerate_class(path_boundary, (1, 1))
    assert rep.K_d == path.subset(["p1"])
    assert rep.members == [path.subset(["p1"])]
    assert rep.minimal_elements == rep.members
    assert rep.d_far == [["p0"], ["p2"]]
    assert rep.one_sided_witnesses == [0, 1]
    with pytest.raises(ValueError):
        fs.enumerate_class(path_boundary, (2, 2))


def test_class_with_two_minimal_elements():
    space = FiniteSpace([f"p{i}" for i in range(5)],
                        [[0, 2, 2, 3, 3], [2, 0, 3, 3, 4], [2, 3, 0, 1, 1],
                         [3, 3, 1, 0, 1], [3, 4, 1, 1, 0]])
    M = fs.Boundary([space.subset(["p1", "p2"]), space.subset(["p4"])])
    rep = fs.enumerate_class(M, (3, 1))
    assert rep.K_d == space.subset(["p2", "p3", "p4"])
    assert rep.minimal_elements == [space.subset(["p2"]), space.subset(["p3"])]
    members = {X.mask for X in rep.members}
    for m in rep.minimal_elements:
        for X in space.subsets():
            if m <= X <= rep.K_d:
                assert X.mask in members


def test_radius_search_path(path_boundary):
    res = fs.solve_radius_search(path_boundary)
    assert res.value == 2
    assert sorted({d for d, _ in res.optima}) == [(0, 2), (1, 1), (2, 0)]
    single = fs.Boundary([path_boundary[0]])
    r1 = fs.solve_radius_search(single)
    assert (r1.value, r1.d, r1.K) == (0, (0,), path_boundary[0])


def test_one_sided_validation(path, path_boundary):
    with pytest.raises(ValueError):
        fs.one_sided_check(path_boundary, (1, 1), path.subset(["p0"]))
    assert fs.one_sided_check(fs.Boundary([path.point(0)]), (0,), path.point(0)) == [0]
    assert fs.reverse_one_sided_check(fs.Boundary([path.point(0)]), (0,)) == [0]


def test_two_squares(squares):
    res = fs.solve_radius_search(squares)
    assert res.value == 2
    assert res.report.snapshot_gap <= fs.TAU
    assert res.report.lp_certified
    assert fs.k_d(squares, (1, 1)) == ConvexPolygon.box(1, 1, 2, 2)
    assert fs.objective(ConvexPolygon.box(1, 1, 2, 2), squares) == 2
    assert fs.one_sided_check(squares, res.d, res.K)
    assert fs.reverse_one_sided_check(squares, (1, 1)) == [0, 1]
    assert fs.one_sided_check(squares, (1, 1), ConvexPolygon.box(1, 1, 2, 2)) == [0, 1]


def test_snap():
    assert fs.snap(0.5) == F(1, 2)
    assert fs.snap(1 / 3) == F(1, 3)
    assert abs(float(fs.snap(3.14159265358979)) - 3.14159265358979) <= fs.TAU


def test_convex_seed_determinism(squares):
    a = fs.solve_radius_search(squares, seed=7)
    b = fs.solve_radius_search(squares, seed=7)
    assert (a.value, a.d, a.K) == (b.value, b.d, b.K)


@given(seeds)
def test_radius_search_equals_bruteforce(seed):
    rng = random.Random(seed)
    space = random_finite_space(rng, rng.randint(2, 8))
    M = fs.Boundary(random_boundary(rng, space, rng.choice([1, 2, 3])))
    brute = fs.solve_bruteforce(M)
    rad = fs.solve_radius_search(M, cross_check=True)
    assert rad.value == brute.value
    assert sorted({d for d, _ in rad.optima}) == brute.omega
    assert fs.objective(rad.K, M) == brute.value


@given(seeds)
def test_classes_are_intervals_below_k_d(seed):
    rng = random.Random(seed)
    space = random_finite_space(rng, rng.randint(2, 7))
    M = fs.Boundary(random_boundary(rng, space, rng.choice([2, 3])))
    brute = fs.solve_bruteforce(M)
    for d, members in brute.classes.items():
        K = fs.k_d(M, d)
        assert K in members
        assert all(X <= K for X in members)
        rep = fs.enumerate_class(M, d, brute)
        assert rep.one_sided_witnesses


@given(seeds)
def test_convex_solution_is_feasible(seed):
    from hypersteiner.random_instances import random_convex_polygon, random_norm

    rng = random.Random(seed)
    norm = random_norm(rng)
    M = fs.Boundary([random_convex_polygon(rng) for _ in range(2)], Convex2dBackend(norm))
    res = fs.solve_radius_search(M, starts=4, seed=seed)
    assert fs.distance_vector(res.K, M) == res.d
    assert fs.objective(res.K, M) == res.value
    # never worse than a boundary set itself
    assert res.value <= min(fs.objective(Mi, M) for Mi in M)
