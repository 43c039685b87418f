"""Brute-force oracles, written straight from the definitions.

Nothing here calls the production engines: cut counting, branching
tests and decomposition search are reimplemented so a bug in one place
cannot hide a bug in the other.  Everything is exponential and guarded
by an :class:`EnumerationBudget`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .errors import BudgetExceededError
from .graph import ArcSubset, Digraph


@dataclass(frozen=True)
class EnumerationBudget:
    max_arcs: int = 10
    max_vertices: int = 5
    max_k: int = 3
    max_p: int = 3

    def check(self, D: Digraph, k: int = 1, p: int = 1):
        for name, got, cap in (("arcs", D.m, self.max_arcs), ("vertices", D.n, self.max_vertices),
                               ("k", k, self.max_k), ("p", p, self.max_p)):
            if got > cap:
                raise BudgetExceededError(f"{name} = {got} exceeds the enumeration budget of {cap}")


DEFAULT_BUDGET = EnumerationBudget()


def rho(D: Digraph, ids, X) -> int:
    """Arcs among ``ids`` entering vertex set ``X``."""
    X = set(X)
    return sum(1 for i in ids if D.arcs[i - 1].head in X and D.arcs[i - 1].tail not in X)


def _is_branching(D, ids):
    heads = [D.arcs[i - 1].head for i in ids]
    if len(heads) != len(set(heads)):
        return False
    # acyclic iff every connected component has one edge fewer than vertices
    adj = {}
    for i in ids:
        a = D.arcs[i - 1]
        adj.setdefault(a.tail, []).append(a.head)
        adj.setdefault(a.head, []).append(a.tail)
    seen = set()
    for s in adj:
        if s in seen:
            continue
        comp, stack, deg = {s}, [s], 0
        while stack:
            u = stack.pop()
            deg += len(adj[u])
            for w in adj[u]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        if deg // 2 != len(comp) - 1:
            return False
    return True


def find_decomposition(D: Digraph, ids, k: int):
    """Some split of ``ids`` into ``k`` branchings, or None. Exhaustive."""
    ids = list(ids)
    classes = [[] for _ in range(k)]

    def rec(i):
        if i == len(ids):
            return True
        for cls in classes:
            cls.append(ids[i])
            if _is_branching(D, cls) and rec(i + 1):
                return True
            cls.pop()
            if not cls:  # empty classes are interchangeable
                break
        return False

    return [tuple(c) for c in classes] if rec(0) else None


def enumerate_k_branchings(D: Digraph, k: int, budget: EnumerationBudget = DEFAULT_BUDGET) -> list:
    """All k-branchings of ``D``, sorted by size then arc ids."""
    budget.check(D, k)
    found = {()}
    out = [ArcSubset(D, ())]
    for size in range(1, D.m + 1):
        layer = set()
        for ids in combinations(range(1, D.m + 1), size):
            # k-branchings are closed under taking subsets
            if any(ids[:j] + ids[j + 1:] not in found for j in range(size)):
                continue
            if find_decomposition(D, ids, k) is not None:
                layer.add(ids)
        if not layer:
            break
        found |= layer
        out.extend(ArcSubset(D, ids) for ids in sorted(layer))
    return out


def root_vector_of(D: Digraph, ids, k: int) -> tuple:
    return tuple(k - rho(D, ids, {v}) for v in D.vertices)


def k_branchings_by_root(D: Digraph, k: int, budget: EnumerationBudget = DEFAULT_BUDGET) -> dict:
    """Map each achievable root vector to the k-branchings realizing it."""
    out = {}
    for F in enumerate_k_branchings(D, k, budget):
        out.setdefault(root_vector_of(D, F.ids, k), []).append(F)
    return out


@lru_cache(maxsize=4096)
def packable_root_tuples(D: Digraph, k: int, p: int,
                         budget: EnumerationBudget = DEFAULT_BUDGET) -> frozenset:
    """Every ``(r_{F_1}, ..., r_{F_p})`` over pairwise disjoint k-branchings."""
    budget.check(D, k, p)
    Fs = [(root_vector_of(D, F.ids, k), F.mask) for F in enumerate_k_branchings(D, k, budget)]
    out = set()

    def rec(prefix, used):
        if len(prefix) == p:
            out.add(tuple(prefix))
            return
        for r, mask in Fs:
            if not mask & used:
                rec(prefix + [r], used | mask)

    rec([], 0)
    return frozenset(out)


def brute_packing_exists(instance, budget: EnumerationBudget = DEFAULT_BUDGET) -> bool:
    """Exhaustive search for disjoint ``F_i`` with root vectors ``q_i``."""
    D, k = instance.digraph, instance.k
    return tuple(map(tuple, instance.q)) in packable_root_tuples(D, k, instance.p, budget)


def brute_function_table(D: Digraph, k: int, mode: str = "fB", costs=None,
                         budget: EnumerationBudget = DEFAULT_BUDGET):
    """Least cost per root vector over all k-branchings (``fA``: sum ``k`` only)."""
    from .dca import DiscreteFunctionTable

    if costs is not None:
        D = D.with_costs(costs)
    if mode not in ("fB", "fA"):
        raise ValueError(f"unknown mode {mode!r}")
    best = {}
    for x, Fs in k_branchings_by_root(D, k, budget).items():
        if mode == "fA" and sum(x) != k:
            continue
        best[x] = min(F.cost for F in Fs)
    return DiscreteFunctionTable(D.n, best)


def brute_function_tables(D: Digraph, k: int, cost_matrix, mode: str = "fB",
                          budget: EnumerationBudget = DEFAULT_BUDGET) -> list:
    """:func:`brute_function_table` for each row of ``cost_matrix`` at once."""
    from .dca import DiscreteFunctionTable

    C = np.atleast_2d(np.asarray(cost_matrix, dtype=np.int64))
    if C.shape[1] != D.m:
        raise ValueError(f"cost rows must have {D.m} entries")
    groups = k_branchings_by_root(D, k, budget)
    keys = [x for x in sorted(groups) if mode == "fB" or sum(x) == k]
    best = np.empty((C.shape[0], len(keys)), dtype=np.int64)
    for j, x in enumerate(keys):
        inc = np.zeros((D.m, len(groups[x])), dtype=np.int64)
        for col, F in enumerate(groups[x]):
            for i in F.ids:
                inc[i - 1, col] = 1
        best[:, j] = (C @ inc).min(axis=1)
    return [DiscreteFunctionTable(D.n, dict(zip(keys, row.tolist()))) for row in best]
