import os
import random
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from hypersteiner.kernels import SubsetKernel, native_available
from hypersteiner.random_instances import random_finite_space

native = pytest.mark.skipif(not native_available() or os.environ.get("HYPERSTEINER_PURE", "") not in ("", "0"),
                            reason="compiled kernels unavailable or disabled")


def _matrix(space):
    inf = space.kernel.inf
    return [[None if space.kernel.point_to_set(j, 1 << i) == inf else space.kernel.point_to_set(j, 1 << i)
             for j in range(space.n)] for i in range(space.n)]


@native
@given(st.integers(0, 10 ** 6), st.integers(1, 9), st.integers(1, 2))
def test_native_matches_fallback(seed, n, clusters):
    space = random_finite_space(random.Random(seed), n, clusters=min(clusters, n))
    W = _matrix(space)
    fast, slow = SubsetKernel(W), SubsetKernel(W, force_pure=True)
    assert fast.backend == "native" and slow.backend == "python"
    full = (1 << n) - 1
    inf_f, inf_s = fast.inf, slow.inf
    norm = lambda x, inf: None if x >= inf else x  # noqa: E731
    for a in range(1, full + 1):
        rf, rs = fast.row(a), slow.row(a)
        assert [norm(x, inf_f) for x in rf] == [norm(x, inf_s) for x in rs]
    rng = random.Random(seed)
    cost = [rng.randint(0, 20) for _ in range(full + 1)]
    cost[0] = 0
    vf, af = fast.minplus([inf_f if i == 0 else c for i, c in enumerate(cost)])
    vs, as_ = slow.minplus([inf_s if i == 0 else c for i, c in enumerate(cost)])
    assert [norm(x, inf_f) for x in vf[1:]] == [norm(x, inf_s) for x in vs[1:]]
    assert list(af[1:]) == list(as_[1:])


def test_fallback_is_selected_by_environment():
    code = ("from hypersteiner.kernels import SubsetKernel; "
            "print(SubsetKernel([[0, 1], [1, 0]]).backend)")
    env = dict(os.environ, HYPERSTEINER_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_kernel_size_limit():
    with pytest.raises(ValueError):
        SubsetKernel([[0] * 21 for _ in range(21)])


def test_saturating_add():
    k = SubsetKernel([[0, 1], [1, 0]], force_pure=True)
    assert k.add(k.inf, 5) == k.inf
    assert k.add(2, 3) == 5


def test_benchmark_agrees_between_kernels():
    import importlib.util

    path = os.path.join(os.path.dirname(__file__), "..", "benchmarks", "bench_kernels.py")
    spec = importlib.util.spec_from_file_location("bench_kernels", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    out = mod.bench(5, 1)
    assert "python" in out
    if "native" in out:
        assert out["native"][3:] == out["python"][3:]
