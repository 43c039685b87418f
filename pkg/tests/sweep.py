"""Exhaustive desk-scale digraph sweeps, one digraph per relabelling class."""

from functools import lru_cache
from itertools import combinations_with_replacement, permutations, product

from kbranching import Digraph, PackingInstance


@lru_cache(maxsize=None)
def iso_classes(max_n=4, max_m=6):
    """Canonical arc lists of all loopless multidigraphs up to relabelling."""
    out = []
    for n in range(1, max_n + 1):
        pairs = [(t, h) for t in range(1, n + 1) for h in range(1, n + 1) if t != h]
        perms = list(permutations(range(1, n + 1)))
        seen = set()
        for m in range(max_m + 1):
            for arcs in combinations_with_replacement(pairs, m):
                canon = min(tuple(sorted((p[t - 1], p[h - 1]) for t, h in arcs)) for p in perms)
                if canon not in seen:
                    seen.add(canon)
                    out.append((n, canon))
    return tuple(out)


def sweep_digraphs(max_n=4, max_m=6):
    for n, arcs in iso_classes(max_n, max_m):
        yield Digraph(n, arcs)


def root_vectors(n, k):
    """All q in {0..k}^n with q(V) >= k."""
    return [q for q in product(range(k + 1), repeat=n) if sum(q) >= k]


def instances(D, k, p):
    for qs in product(root_vectors(D.n, k), repeat=p):
        yield PackingInstance(D, k, qs)
