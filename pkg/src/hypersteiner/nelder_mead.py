"""Derivative-free simplex descent (Nelder-Mead) on float vectors."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class SimplexResult:
    x: list
    fx: float
    evaluations: int
    converged: bool


def _diameter(simplex) -> float:
    best = 0.0
    for i in range(len(simplex)):
        for j in range(i + 1, len(simplex)):
            d = max(abs(a - b) for a, b in zip(simplex[i], simplex[j]))
            if d > best:
                best = d
    return best


def minimize(f, x0, step=0.1, reflection=1.0, expansion=2.0, contraction=0.5,
             shrink=0.5, xtol=1e-9, max_evals=10_000) -> SimplexResult:
    """Minimize ``f`` from ``x0``; stops when the simplex diameter (max-norm) drops below ``xtol``."""
    dim = len(x0)
    simplex = [list(map(float, x0))]
    for i in range(dim):
        x = list(simplex[0])
        x[i] += step
        simplex.append(x)
    values = [f(x) for x in simplex]
    evals = len(values)

    while evals < max_evals:
        order = sorted(range(dim + 1), key=lambda k: values[k])
        simplex = [simplex[k] for k in order]
        values = [values[k] for k in order]
        if _diameter(simplex) < xtol:
            return SimplexResult(simplex[0], values[0], evals, True)

        centroid = [sum(p[i] for p in simplex[:-1]) / dim for i in range(dim)]
        worst = simplex[-1]
        xr = [c + reflection * (c - w) for c, w in zip(centroid, worst)]
        fr = f(xr)
        evals += 1
        if values[0] <= fr < values[-2]:
            simplex[-1], values[-1] = xr, fr
            continue
        if fr < values[0]:
            xe = [c + expansion * (r - c) for c, r in zip(centroid, xr)]
            fe = f(xe)
            evals += 1
            if fe < fr:
                simplex[-1], values[-1] = xe, fe
            else:
                simplex[-1], values[-1] = xr, fr
            continue
        if fr < values[-1]:
            xc = [c + contraction * (r - c) for c, r in zip(centroid, xr)]
        else:
            xc = [c + contraction * (w - c) for c, w in zip(centroid, worst)]
        fc = f(xc)
        evals += 1
        if fc < min(fr, values[-1]):
            simplex[-1], values[-1] = xc, fc
            continue
        best = simplex[0]
        for k in range(1, dim + 1):
            simplex[k] = [b + shrink * (p - b) for b, p in zip(best, simplex[k])]
            values[k] = f(simplex[k])
        evals += dim

    k = min(range(dim + 1), key=lambda k: values[k])
    return SimplexResult(simplex[k], values[k], evals, False)
