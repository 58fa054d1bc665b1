from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hypersteiner.extended import INF, ext, ext_sum, fmt, parse_rational
from hypersteiner.metric import (FiniteSpace, MetricAxiomError, ball, dist_point_to_set,
                                 finiteness_classes, hausdorff_inf, hausdorff_supmax,
                                 hyperspace_finiteness_classes, metric_projection, one_sided)
from hypersteiner.random_instances import random_finite_space, random_subset
import random


@pytest.fixture
def path():
    return FiniteSpace(["p0", "p1", "p2"], [[0, 1, 2], [1, 0, 1], [2, 1, 0]])


@pytest.fixture
def clusters():
    return FiniteSpace(["a0", "a1", "b0", "b1"],
                       [[0, 1, INF, INF], [1, 0, INF, INF], [INF, INF, 0, 2], [INF, INF, 2, 0]])


def test_infinity_saturates():
    assert INF + 3 is INF
    assert 3 + INF is INF
    assert ext_sum([1, INF, 2]) is INF
    assert Fraction(10 ** 9) < INF
    assert not INF < INF


def test_ext_parsing():
    assert ext("1/2") == Fraction(1, 2)
    assert ext("inf") is INF
    assert fmt(Fraction(6, 4)) == "3/2"
    assert fmt(INF) == "inf"
    with pytest.raises(TypeError):
        ext(0.5)
    with pytest.raises(TypeError):
        ext(True)
    with pytest.raises(ValueError):
        ext(-1)
    assert parse_rational("-3/4") == Fraction(-3, 4)


def test_space_rejects_bad_matrices():
    with pytest.raises(MetricAxiomError):
        FiniteSpace(["a", "b"], [[0, 1], [2, 0]])
    with pytest.raises(MetricAxiomError):
        FiniteSpace(["a", "b", "c"], [[0, 1, 5], [1, 0, 1], [5, 1, 0]])
    with pytest.raises(MetricAxiomError):
        FiniteSpace(["a", "b"], [[0, 0], [0, 0]])


def test_point_to_set(path):
    A = path.subset(["p1", "p2"])
    assert dist_point_to_set(0, A) == 1
    assert dist_point_to_set(1, A) == 0
    assert dist_point_to_set(0, None) is INF


def test_balls(path):
    A = path.subset(["p0"])
    assert ball(A, 0) == A
    assert ball(A, 0, open=True) is None
    assert ball(A, 1) == path.subset(["p0", "p1"])


def test_hausdorff_examples(path):
    a, bc = path.subset(["p0"]), path.subset(["p1", "p2"])
    for h in (hausdorff_inf, hausdorff_supmax, path.hausdorff):
        assert h(a, a) == 0
        assert h(a, path.subset(["p2"])) == 2
        assert h(a, bc) == 2
    assert one_sided(a, bc) == 1


def test_cross_cluster_hausdorff_is_infinite(clusters):
    a, b = clusters.subset(["a0"]), clusters.subset(["b0"])
    assert hausdorff_inf(a, b) is INF
    assert hausdorff_supmax(a, b) is INF
    assert clusters.hausdorff(a, clusters.subset(["a0", "b0"])) is INF


def test_finiteness_classes(path, clusters):
    assert finiteness_classes(path) == [[0, 1, 2]]
    assert finiteness_classes(clusters) == [[0, 1], [2, 3]]
    groups = hyperspace_finiteness_classes(clusters)
    assert len(groups) == 3
    assert sum(len(g) for g in groups) == 15
    for g in groups:
        for x in g:
            for y in g:
                assert clusters.hausdorff(clusters.from_mask(x), clusters.from_mask(y)) is not INF


def test_projection(path):
    assert metric_projection(0, path.subset(["p1", "p2"])) == path.subset(["p1"])
    sym = FiniteSpace(["p0", "p1", "p2"], [[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    assert metric_projection(0, sym.subset(["p1", "p2"])) == sym.subset(["p1", "p2"])
    assert metric_projection(1, path.subset(["p1", "p2"])) == path.subset(["p1"])


@given(st.integers(0, 10 ** 6), st.integers(1, 7), st.integers(1, 3))
def test_definitions_agree_exhaustively(seed, n, clusters):
    rng = random.Random(seed)
    space = random_finite_space(rng, n, clusters=min(clusters, n))
    subsets = list(space.subsets())
    for _ in range(30):
        A, B = rng.choice(subsets), rng.choice(subsets)
        assert hausdorff_inf(A, B) == hausdorff_supmax(A, B) == space.hausdorff(A, B)


@given(st.integers(0, 10 ** 6), st.integers(1, 8))
def test_hausdorff_metric_axioms(seed, n):
    rng = random.Random(seed)
    space = random_finite_space(rng, n, clusters=rng.choice([1, 2]))
    A, B, C = (random_subset(rng, space) for _ in range(3))
    h = space.hausdorff
    assert h(A, A) == 0
    assert h(A, B) == h(B, A)
    assert (h(A, B) == 0) == (A == B)
    assert h(A, C) <= h(A, B) + h(B, C)
