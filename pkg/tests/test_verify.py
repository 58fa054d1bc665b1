import os

import pytest

from hypersteiner import verify
from hypersteiner.io import load_instance

INST = os.path.join(os.path.dirname(__file__), "..", "instances")
SMALL = {"one-sided": 3, "reverse-one-sided": 3, "continuity": 10, "degree-bounds": 5}


def _cases():
    for suite, (_, backends) in sorted({**verify.SUITES, **verify.EXTRA_SUITES}.items()):
        for b in backends:
            yield suite, b


@pytest.mark.parametrize("suite,backend", list(_cases()))
def test_suite_passes_small(suite, backend):
    res = verify.run_suite(suite, backend, seed=11, cases=SMALL.get(suite, 10))
    assert res.passed, res.counterexample
    assert res.properties
    if suite != "reverse-one-sided" or backend != "finite":
        assert not res.observational


def test_suites_on_instances():
    path = load_instance(os.path.join(INST, "path3.json"))
    for name in ("greatest", "matryoshka", "minimal", "one-sided", "sandwich", "balls"):
        assert verify.run_suite(name, seed=0, instance=path).passed
    squares = load_instance(os.path.join(INST, "two_squares.json"))
    for name in ("one-sided", "reverse-one-sided", "free-space", "convexity-ineq", "continuity"):
        assert verify.run_suite(name, seed=0, instance=squares).passed


def test_unknown_suite():
    with pytest.raises(verify.UnknownSuite):
        verify.run_suite("nope")
    with pytest.raises(ValueError):
        verify.run_suite("continuity", "finite")
