"""Matroid oracles on arc sets and weighted matroid intersection.

Ground sets are arc ids of a :class:`~kbranching.graph.Digraph`.  The
oracles here are the ones minimum-cost k-branchings need: graphic,
head-partition (bounded in-degree), the k-fold union of the graphic
matroid, and the free matroid.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from . import kernels
from .errors import InfeasibleError, InstanceError
from .graph import ArcSubset, Digraph, UnionFind


class IndependenceOracle:
    """A matroid given by its ground set and an independence test."""

    def __init__(self, ground: Iterable[int], test: Callable[[frozenset], bool],
                 name: str = "matroid"):
        self.ground = frozenset(ground)
        self._test = test
        self.name = name

    def is_independent(self, S: Iterable[int]) -> bool:
        S = frozenset(S)
        if not S <= self.ground:
            return False
        return self._test(S)

    __call__ = is_independent

    def __repr__(self):
        return f"<{self.name} on {len(self.ground)} elements>"


def free_matroid(ground: Iterable[int]) -> IndependenceOracle:
    return IndependenceOracle(ground, lambda S: True, "free matroid")


def graphic_matroid(D: Digraph, ground: Iterable[int] | None = None) -> IndependenceOracle:
    """Forests of the underlying undirected multigraph."""
    ground = range(1, D.m + 1) if ground is None else ground

    def test(S):
        uf = UnionFind()
        return all(uf.union(D.arcs[i - 1].tail, D.arcs[i - 1].head) for i in S)

    return IndependenceOracle(ground, test, "graphic matroid")


def head_partition_matroid(D: Digraph, caps, ground: Iterable[int] | None = None) -> IndependenceOracle:
    """At most ``caps[v]`` chosen arcs enter each vertex ``v``.

    ``caps`` is a mapping keyed by vertex or a sequence indexed ``0..n-1``.
    """
    if isinstance(caps, Mapping):
        cap = [caps.get(v, 0) for v in D.vertices]
    else:
        cap = list(caps)
        if len(cap) != D.n:
            raise InstanceError(f"expected {D.n} capacities, got {len(cap)}")
    ground = range(1, D.m + 1) if ground is None else ground

    def test(S):
        load = [0] * D.n
        for i in S:
            h = D.arcs[i - 1].head - 1
            load[h] += 1
            if load[h] > cap[h]:
                return False
        return True

    return IndependenceOracle(ground, test, "head-partition matroid")


def forest_union_matroid(D: Digraph, k: int, ground: Iterable[int] | None = None) -> IndependenceOracle:
    """Arc sets that split into ``k`` forests (k-fold graphic union)."""
    ground = range(1, D.m + 1) if ground is None else ground

    def test(S):
        return isinstance(partition_into_forests(ArcSubset(D, S), k), ForestPartition)

    return IndependenceOracle(ground, test, f"{k}-fold forest union")


@dataclass(frozen=True)
class ForestPartition:
    """Arcs of ``F`` split into ``k`` classes, each an undirected forest."""

    classes: tuple

    @property
    def assignment(self) -> dict:
        return {a: j for j, cls in enumerate(self.classes) for a in cls}


@dataclass(frozen=True)
class NashWilliamsWitness:
    """Vertex set ``X`` spanning more than ``k(|X| - 1)`` arcs of ``F``."""

    vertices: frozenset
    arc_count: int
    k: int


def _tree_path(D, forest, s, t):
    """Arc ids on the path from ``s`` to ``t`` in ``forest``, or None."""
    adj = {}
    for i in forest:
        a = D.arcs[i - 1]
        adj.setdefault(a.tail, []).append((a.head, i))
        adj.setdefault(a.head, []).append((a.tail, i))
    prev = {s: None}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        if u == t:
            break
        for w, i in adj.get(u, ()):
            if w not in prev:
                prev[w] = (u, i)
                queue.append(w)
    if t not in prev:
        return None
    path = []
    while prev[t] is not None:
        t, i = prev[t]
        path.append(i)
    return path


def _witness(F: ArcSubset, reached, k):
    D = F.digraph
    uf = UnionFind()
    for i in reached:
        a = D.arcs[i - 1]
        uf.union(a.tail, a.head)
    groups = {}
    for i in reached:
        groups.setdefault(uf.find(D.arcs[i - 1].tail), []).append(i)
    for root, members in sorted(groups.items()):
        X = frozenset(v for v in D.vertices if v in uf.parent and uf.find(v) == root)
        count = sum(1 for a in F.arcs if a.tail in X and a.head in X)
        if count > k * (len(X) - 1):
            return NashWilliamsWitness(X, count, k)
    raise AssertionError("matroid partition failed without a dense vertex set")


def partition_into_forests(F: ArcSubset, k: int):
    """Split ``F`` into ``k`` undirected forests, or certify it cannot be done.

    Matroid partition by shortest augmenting paths.  Returns a
    :class:`ForestPartition`, or a :class:`NashWilliamsWitness` when some
    vertex set carries too many arcs.
    """
    if k < 1:
        raise InstanceError("k must be positive")
    D = F.digraph
    classes = [set() for _ in range(k)]
    where = {}
    for e in F.ids:
        parent = {e: None}
        queue = deque([e])
        done = False
        while queue and not done:
            x = queue.popleft()
            ax = D.arcs[x - 1]
            for j in range(k):
                if where.get(x) == j:
                    continue
                cycle = _tree_path(D, classes[j], ax.tail, ax.head)
                if cycle is None:
                    # insert x into class j and shift along the path back to e
                    while x is not None:
                        old = where.get(x)
                        if old is not None:
                            classes[old].discard(x)
                        classes[j].add(x)
                        where[x] = j
                        x, j = parent[x] if parent[x] is not None else (None, None)
                    done = True
                    break
                for y in cycle:
                    if y not in parent:
                        parent[y] = (x, where[y])
                        queue.append(y)
        if not done:
            return _witness(F, parent, k)
    return ForestPartition(tuple(tuple(sorted(c)) for c in classes))


def is_kforest_independent(D: Digraph, ids: Iterable[int], k: int) -> bool:
    """k-fold forest-union independence, via the kernel when it fits."""
    ids = list(ids)
    if kernels.fits(D.n, D.m, max_vertices=16):
        mask = 0
        for i in ids:
            mask |= 1 << (i - 1)
        return kernels.active.kforest_independent(D.n, D.tails0, D.heads0, mask, k)
    return isinstance(partition_into_forests(ArcSubset(D, ids), k), ForestPartition)


def weighted_matroid_intersection(M1: IndependenceOracle, M2: IndependenceOracle,
                                  weights: Mapping[int, int], size: int) -> frozenset:
    """Minimum-weight common independent set with exactly ``size`` elements.

    Successive shortest augmenting paths in the exchange graph, with
    Bellman-Ford over (length, hops) so negative lengths are handled.
    Raises :class:`InfeasibleError` if no common independent set of that
    size exists.
    """
    if M1.ground != M2.ground:
        raise InstanceError("matroids must share a ground set")
    ground = sorted(M1.ground)
    if size < 0:
        raise InstanceError("size must be nonnegative")
    if size > len(ground):
        raise InfeasibleError(f"size {size} exceeds ground set of {len(ground)}")
    w = {e: weights[e] for e in ground}
    I = set()
    for _ in range(size):
        outside = [x for x in ground if x not in I]
        inside = [y for y in ground if y in I]
        sources = [x for x in outside if M1(I | {x})]
        sinks = {x for x in outside if M2(I | {x})}
        edges = []
        for y in inside:
            base = I - {y}
            for x in outside:
                if M1(base | {x}):
                    edges.append((y, x))
                if M2(base | {x}):
                    edges.append((x, y))
        length = {e: (-w[e] if e in I else w[e]) for e in ground}
        dist = {x: (length[x], 0) for x in sources}
        pred = {}
        for _round in range(len(ground) + 1):
            changed = False
            for a, b in edges:
                if a not in dist:
                    continue
                cand = (dist[a][0] + length[b], dist[a][1] + 1)
                if b not in dist or cand < dist[b]:
                    dist[b] = cand
                    pred[b] = a
                    changed = True
            if not changed:
                break
        else:
            raise AssertionError("negative cycle in exchange graph")
        reach = [x for x in outside if x in sinks and x in dist]
        if not reach:
            raise InfeasibleError(f"no common independent set of size {size}")
        x = min(reach, key=lambda e: (dist[e], e))
        while x is not None:
            I ^= {x}
            x = pred.get(x)
    result = frozenset(I)
    assert M1(result) and M2(result), "intersection result not independent"
    return result
