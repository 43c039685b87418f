"""Directed multigraphs, cut counting and branching recognition.

Vertices are the integers ``1..n``.  Arcs get ids ``1..m`` in insertion
order, and those ids are what every arc set in the package refers to.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

from .errors import InstanceError


class Arc(NamedTuple):
    id: int
    tail: int
    head: int
    cost: int


class UnionFind:
    def __init__(self, items=()):
        self.parent = {x: x for x in items}

    def find(self, x):
        parent = self.parent
        parent.setdefault(x, x)
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b):
        """Merge the classes of ``a`` and ``b``; False if already merged."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


class Digraph:
    """Immutable directed multigraph with integer arc costs.

    ``arcs`` is a sequence of ``(tail, head)`` or ``(tail, head, cost)``
    tuples; missing costs default to 0.  Parallel and antiparallel arcs are
    fine, self-loops are rejected.
    """

    def __init__(self, n: int, arcs: Iterable = ()):
        if not isinstance(n, int) or n < 1:
            raise InstanceError(f"vertex count must be a positive integer, got {n!r}")
        built = []
        for i, spec in enumerate(arcs, start=1):
            if isinstance(spec, Arc):
                spec = (spec.tail, spec.head, spec.cost)
            if len(spec) == 2:
                tail, head, cost = spec[0], spec[1], 0
            elif len(spec) == 3:
                tail, head, cost = spec
            else:
                raise InstanceError(f"arc {i}: expected (tail, head[, cost])")
            for v in (tail, head):
                if not isinstance(v, int) or not 1 <= v <= n:
                    raise InstanceError(f"arc {i}: vertex {v!r} outside 1..{n}")
            if tail == head:
                raise InstanceError(f"arc {i}: self-loop at vertex {tail}")
            if not isinstance(cost, int):
                raise InstanceError(f"arc {i}: cost must be an integer, got {cost!r}")
            built.append(Arc(i, tail, head, cost))
        self.n = n
        self.arcs = tuple(built)

    @property
    def m(self) -> int:
        return len(self.arcs)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def costs(self) -> tuple:
        return tuple(a.cost for a in self.arcs)

    def arc(self, arc_id: int) -> Arc:
        if not 1 <= arc_id <= len(self.arcs):
            raise InstanceError(f"unknown arc id {arc_id}")
        return self.arcs[arc_id - 1]

    def with_costs(self, costs) -> "Digraph":
        costs = list(costs)
        if len(costs) != self.m:
            raise InstanceError(f"expected {self.m} costs, got {len(costs)}")
        return Digraph(self.n, [(a.tail, a.head, c) for a, c in zip(self.arcs, costs)])

    def subset(self, ids: Iterable[int] = ()) -> "ArcSubset":
        return ArcSubset(self, ids)

    def all_arcs(self) -> "ArcSubset":
        return ArcSubset(self, range(1, self.m + 1))

    # 0-based views handed to the kernels
    @cached_property
    def tails0(self) -> list:
        return [a.tail - 1 for a in self.arcs]

    @cached_property
    def heads0(self) -> list:
        return [a.head - 1 for a in self.arcs]

    def vertex_mask(self, X: Iterable[int]) -> int:
        mask = 0
        for v in X:
            if not isinstance(v, int) or not 1 <= v <= self.n:
                raise InstanceError(f"unknown vertex {v!r}")
            mask |= 1 << (v - 1)
        return mask

    def mask_vertices(self, mask: int) -> frozenset:
        return frozenset(v + 1 for v in range(self.n) if mask >> v & 1)

    def _key(self):
        return self.n, tuple((a.tail, a.head, a.cost) for a in self.arcs)

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        body = ", ".join(f"{a.tail}->{a.head}:{a.cost}" for a in self.arcs)
        return f"Digraph(n={self.n}, arcs=[{body}])"


@dataclass(frozen=True, init=False)
class ArcSubset:
    """A set of arc ids of one digraph, kept sorted."""

    digraph: Digraph
    ids: tuple

    def __init__(self, digraph: Digraph, ids: Iterable[int] = ()):
        ids = tuple(sorted(set(ids)))
        for i in ids:
            if not isinstance(i, int) or not 1 <= i <= digraph.m:
                raise InstanceError(f"unknown arc id {i!r}")
        object.__setattr__(self, "digraph", digraph)
        object.__setattr__(self, "ids", ids)

    @classmethod
    def from_mask(cls, digraph: Digraph, mask: int) -> "ArcSubset":
        return cls(digraph, (a + 1 for a in range(digraph.m) if mask >> a & 1))

    @property
    def mask(self) -> int:
        out = 0
        for i in self.ids:
            out |= 1 << (i - 1)
        return out

    @property
    def arcs(self) -> list:
        return [self.digraph.arcs[i - 1] for i in self.ids]

    @property
    def cost(self) -> int:
        return sum(a.cost for a in self.arcs)

    def __iter__(self):
        return iter(self.ids)

    def __len__(self):
        return len(self.ids)

    def __contains__(self, arc_id):
        return arc_id in self.ids

    def __or__(self, other):
        return ArcSubset(self.digraph, self.ids + tuple(other))

    def __sub__(self, other):
        drop = set(other)
        return ArcSubset(self.digraph, (i for i in self.ids if i not in drop))

    def isdisjoint(self, other) -> bool:
        return set(self.ids).isdisjoint(other)

    def __repr__(self):
        return "{" + ",".join(map(str, self.ids)) + "}"


def _check_vertices(D: Digraph, X) -> frozenset:
    X = frozenset(X)
    for v in X:
        if not isinstance(v, int) or not 1 <= v <= D.n:
            raise InstanceError(f"unknown vertex {v!r}")
    return X


def in_cut_count(F: ArcSubset, X: Iterable[int]) -> int:
    """Number of arcs of ``F`` entering ``X`` from outside (with multiplicity)."""
    X = _check_vertices(F.digraph, X)
    return sum(1 for a in F.arcs if a.head in X and a.tail not in X)


def in_degrees(F: ArcSubset) -> list:
    """In-degree of each vertex, indexed ``0..n-1``."""
    deg = [0] * F.digraph.n
    for a in F.arcs:
        deg[a.head - 1] += 1
    return deg


def root_vector(F: ArcSubset, k: int) -> tuple:
    """The vector ``v -> k - rho_F(v)``.

    Raises ``InstanceError`` if some vertex has more than ``k`` entering
    arcs, since ``F`` then cannot be a k-branching.
    """
    if k < 1:
        raise InstanceError("k must be positive")
    out = []
    for v, d in enumerate(in_degrees(F), start=1):
        if d > k:
            raise InstanceError(f"vertex {v} has in-degree {d} > k = {k}")
        out.append(k - d)
    return tuple(out)


def is_branching(F: ArcSubset) -> bool:
    if any(d > 1 for d in in_degrees(F)):
        return False
    uf = UnionFind()
    return all(uf.union(a.tail, a.head) for a in F.arcs)


def is_k_branching(F: ArcSubset, k: int) -> bool:
    """Whether ``F`` is the union of ``k`` arc-disjoint branchings.

    Equivalent to: every in-degree is at most ``k`` and ``F`` splits into
    ``k`` undirected forests.
    """
    from .matroid import ForestPartition, partition_into_forests

    if k < 1:
        raise InstanceError("k must be positive")
    if any(d > k for d in in_degrees(F)):
        return False
    return isinstance(partition_into_forests(F, k), ForestPartition)


def is_k_arborescence(F: ArcSubset, k: int) -> bool:
    return len(F) == k * (F.digraph.n - 1) and is_k_branching(F, k)
