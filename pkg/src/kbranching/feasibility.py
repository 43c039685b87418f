"""Deficiency of a packing instance and its minimal minimizers.

The deficiency is ``rho_A(X) - g(X)`` with
``g(X) = sum_i max(0, k - q_i(X))``.  A packing of arc-disjoint
k-branchings with root vectors ``q_1..q_p`` exists exactly when the
deficiency is nonnegative on every nonempty ``X``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from . import kernels
from .errors import InstanceError
from .graph import Digraph, _check_vertices

ENGINES = ("auto", "brute", "mincut")
BRUTE_LIMIT = 16


@dataclass(frozen=True)
class PackingInstance:
    """Digraph, ``k`` and the prescribed root vectors ``q_1..q_p``."""

    digraph: Digraph
    k: int
    q: tuple

    def __post_init__(self):
        n, k = self.digraph.n, self.k
        if not isinstance(k, int) or k < 1:
            raise InstanceError(f"k must be a positive integer, got {k!r}")
        rows = tuple(tuple(r) for r in self.q)
        if not rows:
            raise InstanceError("at least one root vector is required")
        for i, row in enumerate(rows, start=1):
            if len(row) != n:
                raise InstanceError(f"q_{i} has length {len(row)}, expected {n}")
            if any(not isinstance(v, int) or not 0 <= v <= k for v in row):
                raise InstanceError(f"q_{i} has entries outside 0..{k}")
            if sum(row) < k:
                raise InstanceError(f"q_{i} sums to {sum(row)} < k = {k}")
        object.__setattr__(self, "q", rows)

    @property
    def p(self) -> int:
        return len(self.q)

    @property
    def n(self) -> int:
        return self.digraph.n


@dataclass(frozen=True)
class DeficiencyReport:
    min_value: int
    minimal_minimizer: frozenset

    @property
    def feasible(self) -> bool:
        return self.min_value >= 0


def g_value(instance: PackingInstance, X: Iterable[int]) -> int:
    X = _check_vertices(instance.digraph, X)
    k = instance.k
    return sum(max(0, k - sum(row[v - 1] for v in X)) for row in instance.q)


def _pick_engine(engine, n, m):
    if engine not in ENGINES:
        raise InstanceError(f"unknown engine {engine!r}")
    if engine == "auto":
        return "brute" if kernels.fits(n, m, max_vertices=BRUTE_LIMIT) else "mincut"
    return engine


def _brute(instance, forced_in, forced_out, alive=None, q=None):
    D = instance.digraph
    if not kernels.fits(D.n, D.m, max_vertices=20):
        raise InstanceError(f"brute-force engine limited to 20 vertices and "
                            f"{kernels.MAX_ARCS} arcs")
    alive = (1 << D.m) - 1 if alive is None else alive
    q = instance.q if q is None else q
    value, mask = kernels.active.deficiency_min(
        D.n, D.tails0, D.heads0, alive, instance.k, [list(r) for r in q],
        D.vertex_mask(forced_in), D.vertex_mask(forced_out))
    return DeficiencyReport(value, D.mask_vertices(mask))


class _CutSolver:
    """Min cuts for ``rho_A(X) + Q(X)`` over ``X`` on the sink side.

    Nodes ``0..n-1`` are vertices, ``n`` is the source and ``n+1`` the
    sink.  Arc ``u -> v`` of A has capacity 1, source arc ``s -> v`` has
    capacity ``Q(v)``; forcing ``v`` into ``X`` adds ``v -> t`` with a
    capacity no cut can afford, forcing it out adds ``s -> v`` likewise.
    """

    def __init__(self, D: Digraph, arcs):
        self.n = D.n
        self.arcs = arcs  # list of (tail0, head0)

    def solve(self, Q, forced_in, forced_out):
        n = self.n
        s, t = n, n + 1
        big = len(self.arcs) + sum(Q) + 1
        rows, cols, caps = [], [], []
        for u, v in self.arcs:
            rows.append(u), cols.append(v), caps.append(1)
        for v in range(n):
            c = Q[v] + (big if v in forced_out else 0)
            if c:
                rows.append(s), cols.append(v), caps.append(c)
            if v in forced_in:
                rows.append(v), cols.append(t), caps.append(big)
        cap = csr_matrix((np.array(caps, dtype=np.int32), (rows, cols)),
                         shape=(n + 2, n + 2))
        cap.sum_duplicates()
        res = maximum_flow(cap, s, t, method="dinic")
        flow = res.flow.toarray()
        resid = cap.toarray() - flow
        # minimal sink side: nodes that can still reach t in the residual graph
        seen = {t}
        queue = deque([t])
        while queue:
            w = queue.popleft()
            for u in np.nonzero(resid[:, w] > 0)[0]:
                u = int(u)
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        X = frozenset(v for v in range(n) if v in seen)
        return int(res.flow_value), X


def _mincut(instance, forced_in, forced_out):
    D, k = instance.digraph, instance.k
    forced_in = {v - 1 for v in forced_in}
    forced_out = {v - 1 for v in forced_out}
    solver = _CutSolver(D, [(a.tail - 1, a.head - 1) for a in D.arcs])
    subsets = [T for r in range(instance.p + 1)
               for T in combinations(range(instance.p), r)]

    def best_with(fin):
        # smallest minimal minimizer over the subsets T attaining the minimum
        best, where = None, None
        for T in subsets:
            Q = [sum(instance.q[i][v] for i in T) for v in range(D.n)]
            cut, X = solver.solve(Q, fin, forced_out)
            val = cut - k * len(T)
            if best is None or val < best or (val == best and len(X) < len(where)):
                best, where = val, X
        return best, where

    if forced_in:
        best, X = best_with(forced_in)
        return DeficiencyReport(best, frozenset(v + 1 for v in X))
    per_vertex = {}
    for v in range(D.n):
        if v not in forced_out:
            per_vertex[v] = best_with({v})
    best = min(val for val, _ in per_vertex.values())
    cands = {v: X for v, (val, X) in per_vertex.items() if val == best}
    for v in sorted(cands):
        X = cands[v]
        if not any(Y < X for Y in cands.values()):
            return DeficiencyReport(best, frozenset(w + 1 for w in X))
    raise AssertionError("no minimal minimizer found")


def constrained_deficiency_min(instance: PackingInstance, forced_in: Iterable[int] = (),
                               forced_out: Iterable[int] = (), engine: str = "auto"
                               ) -> DeficiencyReport:
    """Minimum of ``rho_A - g`` over nonempty ``X`` with
    ``forced_in <= X <= V - forced_out``, and its minimal minimizer.

    When several inclusion-minimal minimizers exist (they are then
    pairwise disjoint) the one holding the smallest vertex is reported.
    """
    D = instance.digraph
    forced_in = _check_vertices(D, forced_in)
    forced_out = _check_vertices(D, forced_out)
    if forced_in & forced_out:
        raise InstanceError("forced_in and forced_out overlap")
    if len(forced_out) == D.n:
        raise InstanceError("no admissible vertex set: every vertex is forced out")
    if _pick_engine(engine, D.n, D.m) == "brute":
        return _brute(instance, forced_in, forced_out)
    return _mincut(instance, forced_in, forced_out)


def packing_deficiency(instance: PackingInstance, engine: str = "auto") -> DeficiencyReport:
    return constrained_deficiency_min(instance, engine=engine)


def is_packing_feasible(instance: PackingInstance, engine: str = "auto") -> bool:
    return packing_deficiency(instance, engine).feasible


def root_vector_feasible(D: Digraph, k: int, x) -> bool:
    """Whether ``x`` is the root vector of some k-branching of ``D``."""
    x = tuple(x)
    if len(x) != D.n:
        raise InstanceError(f"vector has length {len(x)}, expected {D.n}")
    if any(v < 0 or v > k for v in x) or sum(x) < k:
        return False
    return is_packing_feasible(PackingInstance(D, k, (x,)))
