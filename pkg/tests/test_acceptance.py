"""Acceptance criteria 1-10, each run at its stated size and time bound.

One PASS/FAIL line per criterion is printed and also collected into the
pytest terminal summary.
"""

import time

import pytest

from hypersteiner import verify
from hypersteiner.io import dumps

SEED = 0

# criterion -> (title, [(suite, backend, cases)], seconds)
CRITERIA = {
    1: ("hausdorff definitions agree", [("hausdorff-equiv", "finite", 200)], 30),
    2: ("solution-class structure",
        [("greatest", "finite", 50), ("matryoshka", "finite", 50), ("minimal", "finite", 50)], 120),
    3: ("radius search equals brute force", [("solver-equiv", "finite", 50)], 60),
    4: ("minimal tree degree and size bounds", [("degree-bounds", "finite", 30)], 300),
    5: ("degeneracy reduction", [("nondegenerate", "finite", 100)], 10),
    6: ("infinite/finite dichotomy", [("dichotomy", "finite", 20)], 5),
    7: ("convex kernel exactness",
        [("balls", "convex2d", 100), ("convexity-ineq", "convex2d", 100),
         ("free-space", "convex2d", 100)], 120),
    8: ("one-sided realization",
        [("one-sided", "convex2d", 25), ("reverse-one-sided", "convex2d", 25)], 300),
}

_reports = {}


def _run(criterion):
    out = []
    for suite, backend, cases in CRITERIA[criterion][1]:
        out.append(verify.run_suite(suite, backend, SEED, cases))
    return out


def _line(criterion, ok, detail):
    title = CRITERIA[criterion][0] if criterion in CRITERIA else {
        9: "d-far vertex on solved convex instances", 10: "determinism"}[criterion]
    return f"{'PASS' if ok else 'FAIL'} criterion {criterion:2d} {title}: {detail}"


def _record(lines, text):
    print(text)
    lines.append(text)


@pytest.mark.parametrize("criterion", sorted(CRITERIA))
def test_criterion(criterion, acceptance_lines):
    if criterion == 8:
        verify.solved_convex_instances.cache_clear()
    t0 = time.perf_counter()
    results = _run(criterion)
    elapsed = time.perf_counter() - t0
    _reports[criterion] = [dumps(r.report()) for r in results]
    if criterion == 8:
        _reports["one-sided-result"] = results[0]
    limit = CRITERIA[criterion][2]
    failures = sum(r.failures for r in results)
    checked = sum(p["checked"] for r in results for p in r.properties.values())
    ok = failures == 0 and all(r.passed for r in results) and elapsed < limit
    first = next((r.counterexample for r in results if r.counterexample), None)
    detail = f"{checked} checks, {failures} violations, {elapsed:.1f}s (limit {limit}s)"
    _record(acceptance_lines, _line(criterion, ok, detail))
    assert failures == 0, first
    assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"


def test_criterion_9(acceptance_lines):
    res = _reports.get("one-sided-result")
    if res is None:
        res = verify.run_suite("one-sided", "convex2d", SEED, 25)
    prop = res.properties["d-far-vertex-exists"]
    ok = prop["checked"] == 25 and prop["failed"] == 0
    _record(acceptance_lines, _line(9, ok, f"{prop['checked']} instances, {prop['failed']} without a d-far vertex"))
    assert ok, res.counterexample


def test_criterion_10(acceptance_lines):
    mismatched = []
    for criterion in sorted(CRITERIA):
        if criterion not in _reports:
            _reports[criterion] = [dumps(r.report()) for r in _run(criterion)]
        verify.solved_convex_instances.cache_clear()
        again = [dumps(r.report()) for r in _run(criterion)]
        if again != _reports[criterion]:
            mismatched.append(criterion)
    ok = not mismatched
    detail = "all reports byte-identical" if ok else f"criteria {mismatched} differ"
    _record(acceptance_lines, _line(10, ok, detail))
    assert ok
