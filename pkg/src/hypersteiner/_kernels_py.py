"""Pure-Python subset kernels over integer-coded distance matrices.

Subsets of an ``n``-point space are bitmasks in ``range(1, 1 << n)``. Distances
are non-negative integer codes; any code ``>= inf`` means infinity. Callers
choose ``inf`` so that no reachable finite sum attains it.

The compiled module ``_kernels`` implements exactly the same functions.
"""


def build_table(W, n, inf):
    """``T[mask][p] = min(W[p][a] for a in mask)``; row 0 (empty set) is all ``inf``."""
    size = 1 << n
    T = [None] * size
    T[0] = [inf] * n
    for mask in range(1, size):
        low = mask & -mask
        a = low.bit_length() - 1
        prev = T[mask ^ low]
        col = [W[p][a] for p in range(n)]
        T[mask] = [c if c < q else q for c, q in zip(col, prev)]
    return T


def hausdorff(T, n, a, b, inf):
    ta = T[a]
    tb = T[b]
    h = 0
    m = a
    while m:
        low = m & -m
        v = tb[low.bit_length() - 1]
        if v > h:
            h = v
        m ^= low
    m = b
    while m:
        low = m & -m
        v = ta[low.bit_length() - 1]
        if v > h:
            h = v
        m ^= low
    return inf if h >= inf else h


def hausdorff_row(T, n, a, inf):
    """Hausdorff codes from the fixed set ``a`` to every mask (index 0 gets ``inf``)."""
    size = 1 << n
    ta = T[a]
    members = [i for i in range(n) if a >> i & 1]
    # far[X] = max over x in X of |x a|, built incrementally by lowest bit
    far = [0] * size
    row = [inf] * size
    for mask in range(1, size):
        low = mask & -mask
        v = ta[low.bit_length() - 1]
        f = far[mask ^ low]
        far[mask] = v if v > f else f
        tm = T[mask]
        h = far[mask]
        for i in members:
            if tm[i] > h:
                h = tm[i]
        row[mask] = inf if h >= inf else h
    return row


def minplus(T, n, cost, inf):
    """For every mask X: ``min over Y`` of ``H(X, Y) + cost[Y]`` and the smallest argmin.

    ``cost[0]`` is ignored. Returns two lists indexed by mask; entry 0 is
    ``(inf, 0)``.
    """
    size = 1 << n
    vals = [inf] * size
    args = [0] * size
    order = sorted(range(1, size), key=lambda y: (cost[y], y))
    far = [0] * size
    for X in range(1, size):
        tx = T[X]
        xs = [i for i in range(n) if X >> i & 1]
        for Y in range(1, size):
            low = Y & -Y
            v = tx[low.bit_length() - 1]
            f = far[Y ^ low]
            far[Y] = v if v > f else f
        best = inf
        arg = 0
        for Y in order:
            c = cost[Y]
            if c >= inf or c > best:
                break
            ty = T[Y]
            h = far[Y]
            for i in xs:
                if ty[i] > h:
                    h = ty[i]
            if h >= inf:
                continue
            s = h + c
            if s < best or (s == best and Y < arg):
                best = s
                arg = Y
        if best >= inf:
            best = inf
            arg = 1
        vals[X] = best
        args[X] = arg
    return vals, args
