"""Fermat-Steiner problem in hyperspaces: minimize ``S(Y) = sum_i d_H(Y, M_i)``.

Minimizers split into classes by their distance vector
``d(K) = (d_H(K, M_1), ..., d_H(K, M_n))``. Each class has a greatest element,
the intersection of balls ``K_d``, so searching over radius vectors is enough.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from . import convex2d as cv
from . import nelder_mead
from .backends import BackendMismatch, Convex2dBackend, FiniteBackend
from .extended import INF, ext, ext_sum
from .metric import PointSet, dist_point_to_set, one_sided

RadiusVector = Tuple[Fraction, ...]

TAU = 1e-9  # float comparison tolerance, used only before exact snapshot re-evaluation
BRUTE_LIMIT = 12


class InfeasibleBoundary(ValueError):
    """Boundary sets lie in different finiteness classes."""


class Boundary:
    """Ordered sets ``M_1..M_n`` of one backend with pairwise finite distances."""

    def __init__(self, sets: Sequence, backend=None):
        sets = list(sets)
        if not sets:
            raise ValueError("boundary needs at least one set")
        if backend is None:
            if isinstance(sets[0], PointSet):
                backend = FiniteBackend(sets[0].space)
            else:
                raise BackendMismatch("convex boundaries need an explicit Convex2dBackend")
        for M in sets:
            backend.check(M)
        self.sets = sets
        self.backend = backend
        self.n = len(sets)
        self.pairwise = [[backend.distance(A, B) for B in sets] for A in sets]
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.pairwise[i][j] is INF:
                    raise InfeasibleBoundary(f"sets {i} and {j} are at infinite distance")

    @property
    def kind(self) -> str:
        return self.backend.kind

    def __len__(self):
        return self.n

    def __iter__(self):
        return iter(self.sets)

    def __getitem__(self, i):
        return self.sets[i]

    def __repr__(self):
        return f"Boundary({self.sets!r})"


def _as_vector(d, n) -> RadiusVector:
    d = tuple(ext(x) for x in d)
    if len(d) != n:
        raise ValueError(f"radius vector needs {n} entries, got {len(d)}")
    if any(x is INF for x in d):
        raise ValueError("radius entries must be finite")
    return d


def distance_vector(K, M: Boundary) -> tuple:
    return tuple(M.backend.distance(K, Mi) for Mi in M.sets)


def objective(Y, M: Boundary):
    return ext_sum(distance_vector(Y, M))


def k_d(M: Boundary, d):
    """``K_d = intersection of B_{d_i}(M_i)``; ``None`` when empty."""
    d = _as_vector(d, M.n)
    return M.backend.intersect([M.backend.ball(Mi, r) for Mi, r in zip(M.sets, d)])


# finite backend ---------------------------------------------------------------


def _require_finite(M: Boundary):
    if M.kind != "finite":
        raise BackendMismatch("operation needs the finite backend")
    return M.backend.space


def _rows(M: Boundary):
    space = M.backend.space
    return [space.kernel.row(Mi.mask) for Mi in M.sets]


def _code_vector(space, rows, mask):
    return tuple(space.decode(r[mask]) for r in rows)


@dataclass
class BruteForceResult:
    value: object
    minimizers: list
    omega: list
    classes: dict

    @property
    def K(self):
        return self.minimizers[0]


def solve_bruteforce(M: Boundary, limit: int = BRUTE_LIMIT) -> BruteForceResult:
    """Exhaustive minimization over all nonempty subsets."""
    space = _require_finite(M)
    if space.n > limit:
        raise ValueError(f"brute force limited to {limit} points, space has {space.n}")
    rows = _rows(M)
    inf = space.kernel.inf
    best, argbest = None, []
    for mask in range(1, 1 << space.n):
        total = 0
        for r in rows:
            total += r[mask]
        if total >= inf:
            continue
        if best is None or total < best:
            best, argbest = total, [mask]
        elif total == best:
            argbest.append(mask)
    classes: dict = {}
    for mask in argbest:
        classes.setdefault(_code_vector(space, rows, mask), []).append(space.from_mask(mask))
    return BruteForceResult(
        value=space.decode(best),
        minimizers=[space.from_mask(m) for m in argbest],
        omega=sorted(classes),
        classes={d: classes[d] for d in sorted(classes)},
    )


@dataclass
class ConvexSolveReport:
    float_value: float
    snapshot_gap: float  # max |float d_i - rational d_i| at the snapshot
    objective_gap: float  # |float objective - exact objective| at the snapshot
    evaluations: int
    converged: bool
    starts: int
    source: str  # which candidate won: simplex, lp or seed
    lp_certified: bool


@dataclass
class RadiusSearchResult:
    value: object
    d: RadiusVector
    K: object
    optima: list = field(default_factory=list)  # (d, K_d) for every optimal greatest element found
    report: Optional[ConvexSolveReport] = None


def _finite_radius_search(M: Boundary, cross_check: bool) -> RadiusSearchResult:
    space = M.backend.space
    rows = _rows(M)
    inf = space.kernel.inf
    values = space.distinct_values()
    cands = []
    for Mi in M.sets:
        seen, opts = set(), []
        for r in values:
            mask = M.backend.ball(Mi, r).mask
            if mask not in seen:
                seen.add(mask)
                opts.append(mask)
        cands.append(opts)

    best = [None]
    found: list = []

    def visit(i, mask):
        if i == M.n:
            total = sum(r[mask] for r in rows)
            if total >= inf:
                return
            if best[0] is None or total < best[0]:
                best[0] = total
                found.clear()
            if total == best[0] and mask not in found:
                found.append(mask)
            return
        for ball_mask in cands[i]:
            nxt = mask & ball_mask
            if nxt:
                visit(i + 1, nxt)

    visit(0, space.full_mask)
    optima = [(_code_vector(space, rows, m), space.from_mask(m)) for m in found]
    res = RadiusSearchResult(space.decode(best[0]), optima[0][0], optima[0][1], optima)
    if cross_check:
        brute = solve_bruteforce(M)
        if brute.value != res.value or sorted({d for d, _ in optima}) != brute.omega:
            raise AssertionError("radius search disagrees with brute force")
    return res


# convex backend ----------------------------------------------------------------


def snap(x: float, tol: float = TAU) -> Fraction:
    """A small-denominator rational within ``tol`` of ``x``."""
    exact = Fraction(x)
    den = 1
    while True:
        q = exact.limit_denominator(den)
        if abs(q - exact) <= tol:
            return q
        den *= 2


def _float_objective(M: Boundary, bound: float):
    norm = M.backend.norm.to_float()
    fsets = [Mi.to_float() for Mi in M.sets]
    verts = [v for Mi in fsets for v in Mi.vertices]
    spread = max(norm((a[0] - b[0], a[1] - b[1])) for a in verts for b in verts)
    large = M.n * (spread + 2 * bound) + 1.0

    def f(x):
        excess = sum(max(0.0, -t) + max(0.0, t - bound) for t in x)
        y = [min(max(t, 0.0), bound) for t in x]
        K = cv.intersect([cv.minkowski_offset(Mi, r, norm) for Mi, r in zip(fsets, y)])
        if K is None:
            return large + sum(bound - t for t in y) + large * excess
        return sum(cv.hausdorff(K, Mi, norm) for Mi in fsets) + large * excess

    return f


def _exact_candidate(M: Boundary, d):
    """Exact ``(S(K), d(K), K)`` after iterating the monotone reduction ``d -> d(K_d)``."""
    K = k_d(M, d)
    if K is None:
        return None
    vec = distance_vector(K, M)
    for _ in range(64):
        K = k_d(M, vec)
        nxt = distance_vector(K, M)
        if nxt == vec:
            break
        vec = nxt
    return sum(vec, Fraction(0)), vec, K


def _seeds(M: Boundary, starts: int, rng: random.Random):
    n = M.n
    per = [sorted({Fraction(0)} | {M.pairwise[i][j] for j in range(n)}) for i in range(n)]
    anchors = [tuple(M.pairwise[k][i] for i in range(n)) for k in range(n)]
    combos = [c for c in itertools.product(*per) if c not in anchors]
    out = list(dict.fromkeys(anchors))
    room = max(0, starts - len(out))
    if len(combos) <= room:
        out += combos
    else:
        out += rng.sample(combos, room)
    return out[:max(starts, 1)]


def _lp_only(M: Boundary) -> Optional[RadiusSearchResult]:
    from .lp_polish import polish as lp_polish

    lp = lp_polish(M.sets, M.backend.norm)
    if lp is None:
        return None
    exact = _exact_candidate(M, lp.d)
    if exact is None:
        return None
    value, d, K = exact
    certified = lp.certified and value == lp.value
    report = ConvexSolveReport(float(value), 0.0, 0.0, 0, True, 0, "lp", certified)
    return RadiusSearchResult(value, d, K, [(d, K)], report)


def _convex_radius_search(M: Boundary, starts: int, seed: int, max_evals: int,
                          polish: bool) -> RadiusSearchResult:
    if M.n == 1:
        K = M.sets[0]
        zero = (Fraction(0),)
        return RadiusSearchResult(Fraction(0), zero, K, [(zero, K)],
                                  ConvexSolveReport(0.0, 0.0, 0.0, 0, True, 0, "seed", True))
    if starts == 0:
        quick = _lp_only(M)
        if quick is not None:
            return quick
        starts = 1
    bound = min(sum(row, Fraction(0)) for row in M.pairwise)
    fbound = float(bound)
    f = _float_objective(M, fbound)
    rng = random.Random(seed)
    seeds = _seeds(M, starts, rng)

    candidates = []  # (value, d, K, source)
    best_nm, evals, converged = None, 0, True
    step = max(fbound / 4, 1e-3)
    for s in seeds:
        exact = _exact_candidate(M, s)
        if exact is not None:
            candidates.append((*exact, "seed"))
        res = nelder_mead.minimize(f, [float(t) for t in s], step=step, xtol=TAU, max_evals=max_evals)
        evals += res.evaluations
        converged = converged and res.converged
        if best_nm is None or res.fx < best_nm.fx:
            best_nm = res

    x = [min(max(t, 0.0), fbound) for t in best_nm.x]
    snapshot = tuple(max(Fraction(0), snap(t)) for t in x)
    snapshot_gap = max(abs(float(q) - t) for q, t in zip(snapshot, x))
    objective_gap = float("inf")
    exact = _exact_candidate(M, snapshot)
    if exact is not None:
        K0 = k_d(M, snapshot)
        objective_gap = abs(float(objective(K0, M)) - best_nm.fx)
        candidates.insert(0, (*exact, "simplex"))

    certified = False
    if polish:
        from .lp_polish import polish as lp_polish

        lp = lp_polish(M.sets, M.backend.norm)
        if lp is not None:
            exact = _exact_candidate(M, lp.d)
            if exact is not None:
                certified = lp.certified and exact[0] == lp.value
                candidates.insert(1 if candidates and candidates[0][3] == "simplex" else 0,
                                  (*exact, "lp"))

    value, d, K, source = min(candidates, key=lambda c: c[0])
    optima = []
    for c in candidates:
        if c[0] == value and all(c[1] != o[0] for o in optima):
            optima.append((c[1], c[2]))
    report = ConvexSolveReport(best_nm.fx, snapshot_gap, objective_gap, evals, converged,
                               len(seeds), source, certified)
    return RadiusSearchResult(value, d, K, optima, report)


def solve_radius_search(M: Boundary, starts: int = 16, seed: int = 0, max_evals: int = 10_000,
                        polish: bool = True, cross_check: bool = False) -> RadiusSearchResult:
    """Minimize ``f(d) = sum_i d_H(K_d, M_i)`` over radius vectors with ``K_d`` nonempty.

    Finite backend: exact over the per-coordinate matrix values (radii giving
    the same ball are collapsed). Convex backend: multi-start simplex descent,
    then exact re-evaluation at a rational snapshot; ``polish`` adds an exact
    linear-programming vertex as a further candidate. ``starts=0`` skips the
    simplex stage unless the linear program fails.
    """
    if M.kind == "finite":
        return _finite_radius_search(M, cross_check)
    return _convex_radius_search(M, starts, seed, max_evals, polish)


# class structure ---------------------------------------------------------------


@dataclass
class SolutionClassReport:
    d: RadiusVector
    K_d: object
    members: Optional[list]
    minimal_elements: Optional[list]
    greedy_endpoints: Optional[list]
    d_far: list
    one_sided_witnesses: list
    reverse_witnesses: list


def _greedy_minimal(space, rows, d, mask):
    cur = mask
    changed = True
    while changed:
        changed = False
        for p in range(space.n):
            bit = 1 << p
            if cur & bit and cur != bit:
                cand = cur & ~bit
                if _code_vector(space, rows, cand) == d:
                    cur = cand
                    changed = True
                    break
    return cur


def enumerate_class(M: Boundary, d, brute: Optional[BruteForceResult] = None) -> SolutionClassReport:
    """Every member of the class with vector ``d``, its minimal elements and witnesses."""
    space = _require_finite(M)
    d = _as_vector(d, M.n)
    brute = brute or solve_bruteforce(M)
    if d not in brute.classes:
        raise ValueError(f"{d} is not the distance vector of any minimizer")
    K = k_d(M, d)
    rows = _rows(M)
    members = []
    sub = K.mask
    while sub:
        if _code_vector(space, rows, sub) == d:
            members.append(sub)
        sub = (sub - 1) & K.mask
    members.sort()
    member_set = set(members)
    minimal = [m for m in members
               if not any(o != m and o & ~m == 0 for o in member_set)]
    greedy = [_greedy_minimal(space, rows, d, m) for m in members]
    if not set(greedy) <= set(minimal):
        raise AssertionError("greedy deletion ended outside the minimal elements")
    as_sets = lambda ms: [space.from_mask(m) for m in ms]  # noqa: E731
    return SolutionClassReport(
        d=d,
        K_d=K,
        members=as_sets(members),
        minimal_elements=as_sets(minimal),
        greedy_endpoints=as_sets(greedy),
        d_far=d_far_points(M, d, K),
        one_sided_witnesses=one_sided_check(M, d, K, validate=False),
        reverse_witnesses=reverse_one_sided_check(M, d, K),
    )


def class_report(M: Boundary, d, K=None) -> SolutionClassReport:
    """Backend-neutral summary for a solver-produced ``d`` (no member enumeration)."""
    d = _as_vector(d, M.n)
    Kd = k_d(M, d)
    if Kd is None:
        raise ValueError("K_d is empty")
    return SolutionClassReport(d, Kd, None, None, None, d_far_points(M, d, Kd),
                               one_sided_check(M, d, Kd if K is None else K),
                               reverse_one_sided_check(M, d, Kd))


def _sup_to(M: Boundary, A, B):
    """``sup over x in A of |x B|``."""
    if M.kind == "finite":
        return one_sided(A, B)
    return cv.sup_dist_polygon_to_polygon(A, B, M.backend.norm)


def d_far_points(M: Boundary, d, K=None) -> list:
    """Per set, the points ``x`` of ``M_i`` with ``|x K_d| >= d_i``.

    Finite sets report point labels; polygons report their far vertices.
    """
    d = _as_vector(d, M.n)
    K = k_d(M, d) if K is None else K
    if K is None:
        raise ValueError("K_d is empty")
    out = []
    for Mi, di in zip(M.sets, d):
        if M.kind == "finite":
            out.append([Mi.space.labels[x] for x in Mi.members if dist_point_to_set(x, K) >= di])
        else:
            out.append([v for v in Mi.vertices if cv.dist_point_to_polygon(v, K, M.backend.norm) >= di])
    return out


def one_sided_check(M: Boundary, d, K, validate: bool = True) -> list:
    """Indices ``i`` (0-based) with ``d_i = sup over x in M_i of |x K|``."""
    d = _as_vector(d, M.n)
    if validate:
        if distance_vector(K, M) != d:
            raise ValueError("K does not have distance vector d")
        if M.kind == "finite" and M.backend.space.n <= BRUTE_LIMIT:
            if d not in solve_bruteforce(M).classes:
                raise ValueError("K is not a minimizer")
    return [i for i, (Mi, di) in enumerate(zip(M.sets, d)) if _sup_to(M, Mi, K) == di]


def reverse_one_sided_check(M: Boundary, d, K=None) -> list:
    """Indices ``i`` (0-based) with ``d_i = sup over x in K_d of |x M_i|``."""
    d = _as_vector(d, M.n)
    K = k_d(M, d) if K is None else K
    if K is None:
        raise ValueError("K_d is empty")
    return [i for i, (Mi, di) in enumerate(zip(M.sets, d)) if _sup_to(M, K, Mi) == di]
