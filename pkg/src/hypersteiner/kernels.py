"""Selects the compiled subset kernels when available, else the pure-Python ones.

Set ``HYPERSTEINER_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    from . import _kernels as _native
except ImportError:  # extension not built
    _native = None

NATIVE_INF = 1 << 62
# finite codes must stay far below NATIVE_INF so sums of many edges never saturate
NATIVE_LIMIT = 1 << 44
_SUM_HEADROOM = 1 << 18


def native_available() -> bool:
    return _native is not None


def _pure_forced() -> bool:
    return os.environ.get("HYPERSTEINER_PURE", "") not in ("", "0")


class SubsetKernel:
    """Subset-level Hausdorff machinery over an integer-coded distance matrix.

    ``W`` holds non-negative integer codes with ``None`` for infinity.
    """

    def __init__(self, W, force_pure: bool = False):
        n = len(W)
        if n > 20:
            raise ValueError(f"subset kernels support at most 20 points, got {n}")
        self.n = n
        finite_max = max((w for row in W for w in row if w is not None), default=0)
        use_native = (
            _native is not None
            and not force_pure
            and not _pure_forced()
            and finite_max < NATIVE_LIMIT
        )
        if use_native:
            self.inf = NATIVE_INF
            self._impl = _native
            self.backend = "native"
        else:
            self.inf = max(NATIVE_INF, (finite_max + 1) * _SUM_HEADROOM)
            self._impl = _kernels_py
            self.backend = "python"
        coded = [[self.inf if w is None else w for w in row] for row in W]
        self.table = self._impl.build_table(coded, n, self.inf)

    def add(self, a: int, b: int) -> int:
        s = a + b
        return self.inf if s >= self.inf else s

    def point_to_set(self, p: int, mask: int) -> int:
        return int(self.table[mask][p])

    def hausdorff(self, a: int, b: int) -> int:
        return int(self._impl.hausdorff(self.table, self.n, a, b, self.inf))

    def row(self, a: int) -> list:
        """Hausdorff codes from ``a`` to every mask; entry 0 is ``inf``."""
        return self._impl.hausdorff_row(self.table, self.n, a, self.inf)

    def minplus(self, cost) -> tuple:
        """``min over Y (H(X, Y) + cost[Y])`` for every ``X`` with smallest-mask argmins."""
        return self._impl.minplus(self.table, self.n, list(cost), self.inf)
