"""Pure-Python implementations of the hot kernels.

Every function here has a twin with the same signature and the same
results in ``_ckernels.pyx``.  Vertices are ``0..n-1`` and arcs ``0..m-1``;
vertex sets and arc sets are passed as integer bitmasks.  ``None`` stands
for ``+inf`` wherever a value may be infinite.
"""

from itertools import product

BACKEND = "python"


def _subset_sums(n, vec):
    """Table of ``vec(X)`` for every vertex bitmask ``X``."""
    table = [0] * (1 << n)
    for X in range(1, 1 << n):
        low = X & -X
        table[X] = table[X ^ low] + vec[low.bit_length() - 1]
    return table


def _canonical_minimizer(n, acc, has):
    # acc[v]: intersection of all minimizers containing v.  Inclusion-minimal
    # minimizers are pairwise disjoint; report the one holding the least vertex.
    for v in range(n):
        if not has[v]:
            continue
        Xv = acc[v]
        if not any(has[w] and acc[w] != Xv and acc[w] & Xv == acc[w]
                   for w in range(n)):
            return Xv
    raise AssertionError("no minimal minimizer found")


def deficiency_min(n, tails, heads, alive, k, q, forced_in=0, forced_out=0):
    """Minimize ``rho_alive(X) - sum_i max(0, k - q_i(X))`` by enumeration.

    Only nonempty ``X`` with ``forced_in <= X`` and ``X & forced_out == 0``
    are admissible.  Returns ``(value, minimizer_mask)``.
    """
    arcs = [(1 << tails[a], 1 << heads[a]) for a in range(len(tails))
            if alive >> a & 1]
    sums = [_subset_sums(n, row) for row in q]
    best = None
    acc = [0] * n
    has = [False] * n
    for X in range(1, 1 << n):
        if X & forced_in != forced_in or X & forced_out:
            continue
        rho = 0
        for tb, hb in arcs:
            if X & hb and not X & tb:
                rho += 1
        g = 0
        for s in sums:
            if s[X] < k:
                g += k - s[X]
        val = rho - g
        if best is None or val < best:
            best = val
            acc = [0] * n
            has = [False] * n
        if val == best:
            for v in range(n):
                if X >> v & 1:
                    acc[v] = acc[v] & X if has[v] else X
                    has[v] = True
    if best is None:
        raise ValueError("no admissible vertex set")
    return best, _canonical_minimizer(n, acc, has)


def kforest_independent(n, tails, heads, mask, k):
    """True iff the arcs in ``mask`` split into ``k`` undirected forests.

    Uses the Nash-Williams count ``|F[X]| <= k(|X| - 1)``.
    """
    arcs = [(1 << tails[a]) | (1 << heads[a]) for a in range(len(tails))
            if mask >> a & 1]
    if len(arcs) <= k:
        return True
    for X in range(1, 1 << n):
        size = bin(X).count("1")
        if size < 2:
            continue
        inside = sum(1 for e in arcs if e & X == e)
        if inside > k * (size - 1):
            return False
    return True


def wmi_kbranching(n, tails, heads, costs, k, caps, target):
    """Minimum-cost common independent set of exact size ``target``.

    Matroid 1 allows at most ``caps[v]`` arcs entering ``v``; matroid 2 is
    the ``k``-fold union of the graphic matroid.  Successive shortest
    augmenting paths in the exchange graph, lengths ``c`` on new elements
    and ``-c`` on dropped ones, ties broken by fewer arcs then lower id.
    Returns ``(cost, mask)`` or ``None`` when no such set exists.
    """
    m = len(tails)
    I = 0
    load = [0] * n
    for _ in range(target):
        inside = [a for a in range(m) if I >> a & 1]
        outside = [a for a in range(m) if not I >> a & 1]
        in1 = {}
        in2 = {}
        for x in outside:
            hx = heads[x]
            in1[x] = load[hx] < caps[hx]
            in2[x] = kforest_independent(n, tails, heads, I | 1 << x, k)
        edges = []
        for y in inside:
            base = I & ~(1 << y)
            for x in outside:
                hx = heads[x]
                if load[hx] - (heads[y] == hx) < caps[hx]:
                    edges.append((y, x))
                if kforest_independent(n, tails, heads, base | 1 << x, k):
                    edges.append((x, y))
        length = [costs[a] if not I >> a & 1 else -costs[a] for a in range(m)]
        dist = [None] * m
        pred = [-1] * m
        for x in outside:
            if in1[x]:
                dist[x] = (length[x], 0)
        for _round in range(m + 1):
            changed = False
            for a, b in edges:
                if dist[a] is None:
                    continue
                cand = (dist[a][0] + length[b], dist[a][1] + 1)
                if dist[b] is None or cand < dist[b]:
                    dist[b] = cand
                    pred[b] = a
                    changed = True
            if not changed:
                break
        else:
            raise AssertionError("negative cycle in exchange graph")
        sink = None
        for x in outside:
            if in2[x] and dist[x] is not None:
                if sink is None or dist[x] < dist[sink]:
                    sink = x
        if sink is None:
            return None
        a = sink
        while a != -1:
            I ^= 1 << a
            if I >> a & 1:
                load[heads[a]] += 1
            else:
                load[heads[a]] -= 1
            a = pred[a]
    return sum(costs[a] for a in range(m) if I >> a & 1), I


def fb_value(n, tails, heads, costs, k, x):
    """Min cost of a k-branching with root vector ``x`` as ``(cost, mask)``.

    Returns ``(None, 0)`` when ``x`` is not the root vector of any
    k-branching.
    """
    if any(v < 0 or v > k for v in x):
        return None, 0
    full = (1 << len(tails)) - 1
    if deficiency_min(n, tails, heads, full, k, [x])[0] < 0:
        return None, 0
    caps = [k - v for v in x]
    res = wmi_kbranching(n, tails, heads, costs, k, caps, sum(caps))
    if res is None:
        raise AssertionError("feasible root vector without a k-branching")
    return res


def fb_table(n, tails, heads, costs, k):
    """``fb_value`` for every ``x`` in ``{0..k}^n``, in lexicographic order."""
    return [fb_value(n, tails, heads, costs, k, x)
            for x in product(range(k + 1), repeat=n)]


def check_exchange(shape, values, natural):
    """Scan the (M or M-natural) exchange axiom on a boxed table.

    ``values`` is a flat row-major list over the box ``prod(range(s))``
    with ``None`` for points outside the domain.  Returns the first
    violating ``(x_index, y_index, u)`` in lexicographic order, or ``None``.
    """
    dim = len(shape)
    stride = [1] * dim
    for i in range(dim - 2, -1, -1):
        stride[i] = stride[i + 1] * shape[i + 1]
    points = list(product(*(range(s) for s in shape)))
    dom = [i for i, v in enumerate(values) if v is not None]

    def val(coords):
        idx = 0
        for i, c in enumerate(coords):
            if c < 0 or c >= shape[i]:
                return None
            idx += c * stride[i]
        return values[idx]

    for xi in dom:
        x = points[xi]
        for yi in dom:
            if xi == yi:
                continue
            y = points[yi]
            total = values[xi] + values[yi]
            minus = [v for v in range(dim) if x[v] < y[v]]
            for u in range(dim):
                if x[u] <= y[u]:
                    continue
                ok = False
                if natural:
                    x1 = list(x)
                    y1 = list(y)
                    x1[u] -= 1
                    y1[u] += 1
                    a, b = val(x1), val(y1)
                    ok = a is not None and b is not None and a + b <= total
                for v in minus:
                    if ok:
                        break
                    x1 = list(x)
                    y1 = list(y)
                    x1[u] -= 1
                    x1[v] += 1
                    y1[u] += 1
                    y1[v] -= 1
                    a, b = val(x1), val(y1)
                    ok = a is not None and b is not None and a + b <= total
                if not ok:
                    return xi, yi, u
    return None


def _grow(n, tails, heads, k, cur, others, alive):
    m = len(tails)

    def rec(start, F, alive):
        left = [k - c for c in cur]
        if not any(left):
            return F
        for a in range(start, m):
            if alive >> a & 1:
                left[heads[a]] -= 1
        if any(c > 0 for c in left):
            return None
        for a in range(start, m):
            if not alive >> a & 1:
                continue
            h = heads[a]
            if cur[h] >= k:
                continue
            bit = 1 << a
            if not kforest_independent(n, tails, heads, F | bit, k):
                continue
            cur[h] += 1
            if deficiency_min(n, tails, heads, alive & ~bit, k,
                              [cur] + others)[0] >= 0:
                res = rec(a + 1, F | bit, alive & ~bit)
                if res is not None:
                    return res
            cur[h] -= 1
        return None

    return rec(0, 0, alive)


def pack(n, tails, heads, k, q):
    """Arc-disjoint k-branchings with root vectors ``q`` as arc masks.

    Arcs are probed in increasing id order; an arc joins ``F_i`` when the
    residual instance stays feasible and ``F_i`` stays a union of ``k``
    forests.  Dead ends backtrack.  Returns ``None`` if infeasible.
    """
    m = len(tails)
    alive = (1 << m) - 1
    rows = [list(r) for r in q]
    if deficiency_min(n, tails, heads, alive, k, rows)[0] < 0:
        return None
    out = []
    for i in range(len(rows)):
        F = _grow(n, tails, heads, k, rows[i], rows[i + 1:], alive)
        if F is None:
            return None
        out.append(F)
        alive &= ~F
    return out
