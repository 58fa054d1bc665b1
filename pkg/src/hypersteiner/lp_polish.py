"""Exact vertex recovery for the convex radius program.

Over compact convex polygons, a radius vector ``d`` is feasible when every
vertex ``v`` of every ``M_i`` has a witness point ``y`` in ``K_d`` within ``d_i``
of ``v``. That condition is linear in ``(d, y)``. The minimum of ``sum(d)`` over
feasible vectors equals the minimum of the Fermat-Steiner objective. We solve
the program in floats with HiGHS, pick a basis from the active rows, and
re-solve that basis exactly in rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy.optimize import linprog

from . import convex2d as cv


@dataclass
class PolishResult:
    d: tuple
    value: Fraction
    certified: bool  # exact dual feasibility on the chosen basis


def _rows(sets, norm):
    n = len(sets)
    witnesses = [(i, v) for i, M in enumerate(sets) for v in M.vertices]
    m = n + 2 * len(witnesses)
    unit_normals = [a for a, _ in norm.facets]
    rows = []  # (coeffs as {col: Fraction}, rhs)
    for w, (i, v) in enumerate(witnesses):
        cx, cy = n + 2 * w, n + 2 * w + 1
        for a, c in norm.facets:
            rows.append(({cx: a[0], cy: a[1], i: -c}, a[0] * v[0] + a[1] * v[1]))
        for j, Mj in enumerate(sets):
            if j == i:
                continue
            normals = [a for a, _ in cv.halfplanes(Mj)] + unit_normals
            for a in dict.fromkeys(normals):
                rows.append(({cx: a[0], cy: a[1], j: -norm.support(a)}, cv.support(Mj, a)))
    for i in range(n):
        rows.append(({i: Fraction(-1)}, Fraction(0)))
    return m, rows


def _dense(rows, m):
    A = [[Fraction(0)] * m for _ in rows]
    b = []
    for r, (coeffs, rhs) in enumerate(rows):
        for col, val in coeffs.items():
            A[r][col] += Fraction(val)
        b.append(Fraction(rhs))
    return A, b


def _solve_exact(M, rhs):
    """Gauss-Jordan on a square rational system; ``None`` if singular."""
    k = len(M)
    aug = [list(row) + [r] for row, r in zip(M, rhs)]
    for col in range(k):
        piv = next((r for r in range(col, k) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(k):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][k] for r in range(k)]


def _pick_basis(A, candidates, m):
    basis, echelon = [], []  # echelon: (pivot col, reduced row)
    for r in candidates:
        vec = list(A[r])
        for col, row in echelon:
            if vec[col] != 0:
                f = vec[col] / row[col]
                vec = [x - f * y for x, y in zip(vec, row)]
        col = next((c for c, x in enumerate(vec) if x != 0), None)
        if col is None:
            continue
        echelon.append((col, vec))
        basis.append(r)
        if len(basis) == m:
            break
    return basis


def polish(sets, norm, tol: float = 1e-7) -> Optional[PolishResult]:
    """Exact optimal radius vector, or ``None`` if the float basis cannot be recovered."""
    n = len(sets)
    m, rows = _rows(sets, norm)
    A, b = _dense(rows, m)
    Af = np.array([[float(x) for x in row] for row in A])
    bf = np.array([float(x) for x in b])
    c = np.zeros(m)
    c[:n] = 1.0
    res = linprog(c, A_ub=Af, b_ub=bf, bounds=[(None, None)] * m, method="highs-ds")
    if res.status != 0:
        return None
    slack = bf - Af @ res.x
    marg = np.abs(res.ineqlin.marginals)
    scale = 1.0 + np.abs(bf)
    active = [r for r in range(len(rows)) if slack[r] <= tol * scale[r]]
    active.sort(key=lambda r: (-marg[r], r))
    basis = _pick_basis(A, active, m)
    if len(basis) < m:
        return None
    x = _solve_exact([A[r] for r in basis], [b[r] for r in basis])
    if x is None:
        return None
    for row, rhs in zip(A, b):
        if sum(a * xi for a, xi in zip(row, x) if a) > rhs:
            return None
    d = tuple(x[:n])
    # KKT on the basis: c + A_B^T lam = 0 with lam >= 0
    At = [[A[r][col] for r in basis] for col in range(m)]
    lam = _solve_exact(At, [Fraction(-1) if col < n else Fraction(0) for col in range(m)])
    certified = lam is not None and all(v >= 0 for v in lam)
    return PolishResult(d, sum(d, Fraction(0)), certified)
