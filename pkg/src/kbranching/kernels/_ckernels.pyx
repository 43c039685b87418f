# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the functions in ``_pykernels``.

Same signatures, same results.  Limits: ``n <= 24`` vertices and
``m <= 64`` arcs (arc sets are ``uint64`` masks).
"""

from libc.stdint cimport int64_t, uint32_t, uint64_t
from libc.stdlib cimport free, malloc
from libc.string cimport memset

BACKEND = "compiled"

cdef enum:
    MAXN = 24
    MAXM = 64


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_popcount(unsigned int) nogil


cdef inline int popcount64(uint64_t x) nogil:
    return __builtin_popcountll(x)


cdef inline int popcount32(uint32_t x) nogil:
    return __builtin_popcount(x)


cdef struct Inst:
    int n
    int m
    int k
    int tails[MAXM]
    int heads[MAXM]


cdef int _load(Inst* g, int n, tails, heads, int k) except -1:
    cdef int m = len(tails)
    if n < 1 or n > MAXN:
        raise ValueError("compiled kernels need 1 <= n <= %d" % MAXN)
    if m > MAXM:
        raise ValueError("compiled kernels need m <= %d" % MAXM)
    g.n = n
    g.m = m
    g.k = k
    for a in range(m):
        g.tails[a] = tails[a]
        g.heads[a] = heads[a]
    return 0


cdef int64_t* _rows(q, int p, int n) except NULL:
    cdef int64_t* out = <int64_t*> malloc(sizeof(int64_t) * (p * n + 1))
    if out == NULL:
        raise MemoryError()
    for i in range(p):
        row = q[i]
        for v in range(n):
            out[i * n + v] = row[v]
    return out


cdef int64_t _eval(Inst* g, uint64_t alive, int p, const int64_t* q,
                   uint32_t X) nogil:
    cdef int64_t rho = 0, g_val = 0, s
    cdef int a, i, v
    for a in range(g.m):
        if (alive >> a) & 1:
            if (X >> g.heads[a]) & 1 and not (X >> g.tails[a]) & 1:
                rho += 1
    for i in range(p):
        s = 0
        for v in range(g.n):
            if (X >> v) & 1:
                s += q[i * g.n + v]
        if s < g.k:
            g_val += g.k - s
    return rho - g_val


cdef bint _nonneg(Inst* g, uint64_t alive, int p, const int64_t* q) nogil:
    cdef uint32_t X
    cdef uint32_t top = (<uint32_t> 1) << g.n
    for X in range(1, top):
        if _eval(g, alive, p, q, X) < 0:
            return False
    return True


def deficiency_min(int n, tails, heads, alive, int k, q, forced_in=0,
                   forced_out=0):
    cdef Inst g
    _load(&g, n, tails, heads, k)
    cdef int p = len(q)
    cdef int64_t* rows = _rows(q, p, n)
    cdef uint64_t al = alive
    cdef uint32_t fin = forced_in, fout = forced_out
    cdef uint32_t X, top = (<uint32_t> 1) << n
    cdef uint32_t acc[MAXN]
    cdef bint has[MAXN]
    cdef bint found = False
    cdef int64_t best = 0, val
    cdef int v, w
    memset(has, 0, sizeof(has))
    try:
        with nogil:
            for X in range(1, top):
                if (X & fin) != fin or (X & fout):
                    continue
                val = _eval(&g, al, p, rows, X)
                if not found or val < best:
                    best = val
                    found = True
                    memset(has, 0, sizeof(has))
                if val == best:
                    for v in range(n):
                        if (X >> v) & 1:
                            if has[v]:
                                acc[v] &= X
                            else:
                                acc[v] = X
                                has[v] = True
    finally:
        free(rows)
    if not found:
        raise ValueError("no admissible vertex set")
    cdef bint minimal
    for v in range(n):
        if not has[v]:
            continue
        minimal = True
        for w in range(n):
            if has[w] and acc[w] != acc[v] and (acc[w] & acc[v]) == acc[w]:
                minimal = False
                break
        if minimal:
            return int(best), int(acc[v])
    raise AssertionError("no minimal minimizer found")


cdef uint64_t* _induced(Inst* g) nogil:
    cdef uint32_t top = (<uint32_t> 1) << g.n
    cdef uint64_t* ind = <uint64_t*> malloc(sizeof(uint64_t) * top)
    cdef uint32_t X, e
    cdef int a
    if ind == NULL:
        return NULL
    for X in range(top):
        ind[X] = 0
        for a in range(g.m):
            e = ((<uint32_t> 1) << g.tails[a]) | ((<uint32_t> 1) << g.heads[a])
            if (e & X) == e:
                ind[X] |= (<uint64_t> 1) << a
    return ind


cdef bint _forest_ok(Inst* g, const uint64_t* ind, uint64_t F) nogil:
    cdef uint32_t X, top = (<uint32_t> 1) << g.n
    cdef int size
    if popcount64(F) <= g.k:
        return True
    for X in range(3, top):
        size = popcount32(X)
        if size < 2:
            continue
        if popcount64(F & ind[X]) > g.k * (size - 1):
            return False
    return True


def kforest_independent(int n, tails, heads, mask, int k):
    cdef Inst g
    _load(&g, n, tails, heads, k)
    cdef uint64_t* ind = _induced(&g)
    if ind == NULL:
        raise MemoryError()
    cdef bint res = _forest_ok(&g, ind, <uint64_t> mask)
    free(ind)
    return bool(res)


# Returns 1 and fills cost/mask on success, 0 when infeasible, -1 on a
# negative cycle (impossible for matroid intersection; reported loudly).
cdef int _wmi(Inst* g, const uint64_t* ind, const int64_t* costs,
              const int* caps, int target, int64_t* out_cost,
              uint64_t* out_mask) nogil:
    cdef uint64_t I = 0, base, bit
    cdef int load[MAXN]
    cdef int64_t length[MAXM]
    cdef int64_t dw[MAXM]
    cdef int dh[MAXM]
    cdef int pred[MAXM]
    cdef bint reach[MAXM]
    cdef bint in2[MAXM]
    cdef int ea[2 * MAXM * MAXM]
    cdef int eb[2 * MAXM * MAXM]
    cdef int ne, a, b, x, y, hx, step, rnd, sink
    cdef int m = g.m
    cdef bint changed
    cdef int64_t cw
    cdef int ch
    memset(load, 0, sizeof(load))
    for step in range(target):
        ne = 0
        for a in range(m):
            reach[a] = False
            pred[a] = -1
            if (I >> a) & 1:
                length[a] = -costs[a]
                in2[a] = False
            else:
                length[a] = costs[a]
                hx = g.heads[a]
                bit = (<uint64_t> 1) << a
                in2[a] = _forest_ok(g, ind, I | bit)
                if load[hx] < caps[hx]:
                    reach[a] = True
                    dw[a] = costs[a]
                    dh[a] = 0
        for y in range(m):
            if not (I >> y) & 1:
                continue
            base = I & ~((<uint64_t> 1) << y)
            for x in range(m):
                if (I >> x) & 1:
                    continue
                hx = g.heads[x]
                if load[hx] - (1 if g.heads[y] == hx else 0) < caps[hx]:
                    ea[ne] = y
                    eb[ne] = x
                    ne += 1
                if _forest_ok(g, ind, base | ((<uint64_t> 1) << x)):
                    ea[ne] = x
                    eb[ne] = y
                    ne += 1
        changed = True
        rnd = 0
        while changed:
            if rnd > m:
                return -1
            changed = False
            for b in range(ne):
                a = ea[b]
                if not reach[a]:
                    continue
                x = eb[b]
                cw = dw[a] + length[x]
                ch = dh[a] + 1
                if (not reach[x]) or cw < dw[x] or (cw == dw[x] and ch < dh[x]):
                    reach[x] = True
                    dw[x] = cw
                    dh[x] = ch
                    pred[x] = a
                    changed = True
            rnd += 1
        sink = -1
        for x in range(m):
            if (I >> x) & 1 or not in2[x] or not reach[x]:
                continue
            if sink == -1 or dw[x] < dw[sink] or (dw[x] == dw[sink] and dh[x] < dh[sink]):
                sink = x
        if sink == -1:
            return 0
        a = sink
        while a != -1:
            I ^= (<uint64_t> 1) << a
            if (I >> a) & 1:
                load[g.heads[a]] += 1
            else:
                load[g.heads[a]] -= 1
            a = pred[a]
    out_cost[0] = 0
    for a in range(m):
        if (I >> a) & 1:
            out_cost[0] += costs[a]
    out_mask[0] = I
    return 1


cdef int _fb_core(Inst* g, const uint64_t* ind, const int64_t* costs,
                  const int64_t* x, int64_t* out_cost,
                  uint64_t* out_mask) nogil:
    cdef int caps[MAXN]
    cdef int v, target = 0
    cdef uint64_t full
    for v in range(g.n):
        if x[v] < 0 or x[v] > g.k:
            return 0
        caps[v] = g.k - <int> x[v]
        target += caps[v]
    if g.m == 64:
        full = ~(<uint64_t> 0)
    else:
        full = ((<uint64_t> 1) << g.m) - 1
    if not _nonneg(g, full, 1, x):
        return 0
    v = _wmi(g, ind, costs, caps, target, out_cost, out_mask)
    if v == 1:
        return 1
    if v == 0:
        return -2
    return -1


cdef int64_t* _costs(costs, int m) except NULL:
    cdef int64_t* c = <int64_t*> malloc(sizeof(int64_t) * (m + 1))
    if c == NULL:
        raise MemoryError()
    for a in range(m):
        c[a] = costs[a]
    return c


cdef _fb_result(int status, int64_t cost, uint64_t mask):
    if status == 1:
        return int(cost), int(mask)
    if status == 0:
        return None, 0
    if status == -2:
        raise AssertionError("feasible root vector without a k-branching")
    raise AssertionError("negative cycle in exchange graph")


def wmi_kbranching(int n, tails, heads, costs, int k, caps, int target):
    cdef Inst g
    _load(&g, n, tails, heads, k)
    cdef int64_t* c = _costs(costs, g.m)
    cdef uint64_t* ind = _induced(&g)
    cdef int cp[MAXN]
    cdef int64_t cost = 0
    cdef uint64_t mask = 0
    cdef int status
    for v in range(n):
        cp[v] = caps[v]
    with nogil:
        status = _wmi(&g, ind, c, cp, target, &cost, &mask)
    free(c)
    free(ind)
    if status == 1:
        return int(cost), int(mask)
    if status == 0:
        return None
    raise AssertionError("negative cycle in exchange graph")


def fb_value(int n, tails, heads, costs, int k, x):
    cdef Inst g
    _load(&g, n, tails, heads, k)
    cdef int64_t xs[MAXN]
    for v in range(n):
        xs[v] = x[v]
        if xs[v] < 0 or xs[v] > k:
            return None, 0
    cdef int64_t* c = _costs(costs, g.m)
    cdef uint64_t* ind = _induced(&g)
    cdef int64_t cost = 0
    cdef uint64_t mask = 0
    cdef int status
    with nogil:
        status = _fb_core(&g, ind, c, xs, &cost, &mask)
    free(c)
    free(ind)
    return _fb_result(status, cost, mask)


def fb_table(int n, tails, heads, costs, int k):
    cdef Inst g
    _load(&g, n, tails, heads, k)
    cdef int64_t* c = _costs(costs, g.m)
    cdef uint64_t* ind = _induced(&g)
    cdef int64_t xs[MAXN]
    cdef int64_t cost = 0
    cdef uint64_t mask = 0
    cdef int status, v
    cdef long total = 1
    for v in range(n):
        total *= k + 1
    out = []
    try:
        memset(xs, 0, sizeof(xs))
        for idx in range(total):
            with nogil:
                status = _fb_core(&g, ind, c, xs, &cost, &mask)
            out.append(_fb_result(status, cost, mask))
            v = n - 1
            while v >= 0:
                xs[v] += 1
                if xs[v] <= k:
                    break
                xs[v] = 0
                v -= 1
    finally:
        free(c)
        free(ind)
    return out


cdef inline bint _lookup(int dim, const long* shape, const long* stride,
                         const long* coords, const int64_t* vals,
                         const char* fin, int64_t* out) nogil:
    cdef long idx = 0
    cdef int i
    for i in range(dim):
        if coords[i] < 0 or coords[i] >= shape[i]:
            return False
        idx += coords[i] * stride[i]
    if not fin[idx]:
        return False
    out[0] = vals[idx]
    return True


def check_exchange(shape, values, natural):
    cdef int dim = len(shape)
    cdef long total = len(values)
    cdef long* shp = <long*> malloc(sizeof(long) * (dim + 1))
    cdef long* stride = <long*> malloc(sizeof(long) * (dim + 1))
    cdef long* x = <long*> malloc(sizeof(long) * (dim + 1))
    cdef long* y = <long*> malloc(sizeof(long) * (dim + 1))
    cdef long* x1 = <long*> malloc(sizeof(long) * (dim + 1))
    cdef long* y1 = <long*> malloc(sizeof(long) * (dim + 1))
    cdef int64_t* vals = <int64_t*> malloc(sizeof(int64_t) * (total + 1))
    cdef char* fin = <char*> malloc(total + 1)
    cdef long* dom = <long*> malloc(sizeof(long) * (total + 1))
    cdef long nd = 0, i, j, xi, yi, r
    cdef int u, v, w
    cdef bint nat = bool(natural), ok
    cdef int64_t tot, fa, fb
    cdef long wx = -1, wy = -1
    cdef int wu = -1
    try:
        if (shp == NULL or stride == NULL or x == NULL or y == NULL or
                x1 == NULL or y1 == NULL or vals == NULL or fin == NULL or
                dom == NULL):
            raise MemoryError()
        for u in range(dim):
            shp[u] = shape[u]
        if dim > 0:
            stride[dim - 1] = 1
        for u in range(dim - 2, -1, -1):
            stride[u] = stride[u + 1] * shp[u + 1]
        for i in range(total):
            val = values[i]
            if val is None:
                fin[i] = 0
                vals[i] = 0
            else:
                fin[i] = 1
                vals[i] = val
                dom[nd] = i
                nd += 1
        with nogil:
            for i in range(nd):
                xi = dom[i]
                r = xi
                for u in range(dim):
                    x[u] = r // stride[u]
                    r = r % stride[u]
                for j in range(nd):
                    yi = dom[j]
                    if yi == xi:
                        continue
                    r = yi
                    for u in range(dim):
                        y[u] = r // stride[u]
                        r = r % stride[u]
                    tot = vals[xi] + vals[yi]
                    for u in range(dim):
                        if x[u] <= y[u]:
                            continue
                        ok = False
                        if nat:
                            for w in range(dim):
                                x1[w] = x[w]
                                y1[w] = y[w]
                            x1[u] -= 1
                            y1[u] += 1
                            if (_lookup(dim, shp, stride, x1, vals, fin, &fa) and
                                    _lookup(dim, shp, stride, y1, vals, fin, &fb) and
                                    fa + fb <= tot):
                                ok = True
                        v = 0
                        while not ok and v < dim:
                            if x[v] < y[v]:
                                for w in range(dim):
                                    x1[w] = x[w]
                                    y1[w] = y[w]
                                x1[u] -= 1
                                x1[v] += 1
                                y1[u] += 1
                                y1[v] -= 1
                                if (_lookup(dim, shp, stride, x1, vals, fin, &fa) and
                                        _lookup(dim, shp, stride, y1, vals, fin, &fb) and
                                        fa + fb <= tot):
                                    ok = True
                            v += 1
                        if not ok:
                            wx = xi
                            wy = yi
                            wu = u
                            break
                    if wu >= 0:
                        break
                if wu >= 0:
                    break
    finally:
        free(shp)
        free(stride)
        free(x)
        free(y)
        free(x1)
        free(y1)
        free(vals)
        free(fin)
        free(dom)
    if wu < 0:
        return None
    return int(wx), int(wy), int(wu)


cdef int _grow(Inst* g, const uint64_t* ind, int p, int64_t* rows,
               uint64_t alive, int start, uint64_t F,
               uint64_t* out) nogil:
    # rows[0..n) is the root vector being built; further rows are later q's.
    cdef int left[MAXN]
    cdef int v, a, h
    cdef bint done = True
    cdef uint64_t bit
    for v in range(g.n):
        left[v] = g.k - <int> rows[v]
        if left[v] > 0:
            done = False
    if done:
        out[0] = F
        return 1
    for a in range(start, g.m):
        if (alive >> a) & 1:
            left[g.heads[a]] -= 1
    for v in range(g.n):
        if left[v] > 0:
            return 0
    for a in range(start, g.m):
        if not (alive >> a) & 1:
            continue
        h = g.heads[a]
        if rows[h] >= g.k:
            continue
        bit = (<uint64_t> 1) << a
        if not _forest_ok(g, ind, F | bit):
            continue
        rows[h] += 1
        if _nonneg(g, alive & ~bit, p, rows):
            if _grow(g, ind, p, rows, alive & ~bit, a + 1, F | bit, out):
                return 1
        rows[h] -= 1
    return 0


def pack(int n, tails, heads, int k, q):
    cdef Inst g
    _load(&g, n, tails, heads, k)
    cdef int p = len(q)
    cdef int64_t* rows = _rows(q, p, n)
    cdef uint64_t* ind = _induced(&g)
    cdef uint64_t alive, F = 0
    cdef int i, ok
    if g.m == 64:
        alive = ~(<uint64_t> 0)
    else:
        alive = ((<uint64_t> 1) << g.m) - 1
    out = []
    try:
        if ind == NULL:
            raise MemoryError()
        if not _nonneg(&g, alive, p, rows):
            return None
        for i in range(p):
            with nogil:
                ok = _grow(&g, ind, p - i, rows + i * n, alive, 0, 0, &F)
            if not ok:
                return None
            out.append(int(F))
            alive &= ~F
    finally:
        free(rows)
        free(ind)
    return out
