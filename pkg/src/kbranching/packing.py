"""Constructive packing of arc-disjoint k-branchings with given root vectors.

``F_1, ..., F_p`` are built one after another.  An arc ``uv`` is added to
the current ``F_i`` (raising ``q_i(v)`` by one and deleting the arc) when
the residual instance stays feasible and ``F_i`` stays a union of ``k``
forests.  Feasibility alone is not enough to keep ``F_i`` a k-branching,
so the search backtracks on the rare dead ends.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import kernels
from .errors import InfeasibleError, InstanceError
from .feasibility import (PackingInstance, _brute, constrained_deficiency_min,
                          packing_deficiency)
from .graph import ArcSubset, Digraph, UnionFind, is_branching, is_k_branching, root_vector
from .matroid import is_kforest_independent

PACK_ENGINES = ("probe", "guided")


@dataclass(frozen=True)
class PackingCertificate:
    """``p`` arc-disjoint k-branchings, optionally split into branchings."""

    instance: PackingInstance
    branchings: tuple
    decompositions: tuple | None = field(default=None)

    def problems(self) -> list:
        """Every violated invariant, as human-readable strings."""
        inst = self.instance
        out = []
        if len(self.branchings) != inst.p:
            out.append(f"expected {inst.p} arc sets, got {len(self.branchings)}")
        seen = set()
        for i, F in enumerate(self.branchings, start=1):
            if F.digraph != inst.digraph:
                out.append(f"F_{i} lives on another digraph")
                continue
            if seen & set(F.ids):
                out.append(f"F_{i} shares arcs {sorted(seen & set(F.ids))}")
            seen |= set(F.ids)
            if not is_k_branching(F, inst.k):
                out.append(f"F_{i} is not a {inst.k}-branching")
            elif i <= inst.p and root_vector(F, inst.k) != inst.q[i - 1]:
                out.append(f"F_{i} has root vector {root_vector(F, inst.k)}")
        if self.decompositions is not None:
            for i, (F, parts) in enumerate(zip(self.branchings, self.decompositions), start=1):
                out.extend(f"F_{i}: {msg}" for msg in decomposition_problems(F, parts, inst.k))
        return out

    @property
    def is_valid(self) -> bool:
        return not self.problems()


def decomposition_problems(F: ArcSubset, parts, k: int) -> list:
    out = []
    if len(parts) != k:
        out.append(f"expected {k} branchings, got {len(parts)}")
    union = []
    for j, B in enumerate(parts, start=1):
        if not is_branching(B):
            out.append(f"class {j} is not a branching")
        union.extend(B.ids)
    if len(union) != len(set(union)):
        out.append("classes overlap")
    if sorted(union) != list(F.ids):
        out.append("classes do not cover F exactly")
    return out


# -- residual feasibility -------------------------------------------------

def _residual(D, alive, k, rows):
    """The instance left after deleting the arcs outside ``alive``."""
    if kernels.fits(D.n, D.m, max_vertices=16):
        return PackingInstance(D, k, rows), alive
    sub = Digraph(D.n, [(a.tail, a.head) for a in D.arcs if alive >> (a.id - 1) & 1])
    return PackingInstance(sub, k, rows), None


def _residual_ok(D, alive, k, rows) -> bool:
    return _minimizer(D, alive, k, rows, ()).min_value >= 0


def _minimizer(D, alive, k, rows, forced_in):
    inst, mask = _residual(D, alive, k, rows)
    if mask is not None:
        return _brute(inst, forced_in, (), alive=mask)
    return constrained_deficiency_min(inst, forced_in, engine="mincut")


def _guided_order(D, alive, k, cur, others):
    """Arc ids in the order the tight-set argument suggests."""
    n = D.n
    Vk = {v for v in range(1, n + 1) if cur[v - 1] == k}
    Vz = {v for v in range(1, n + 1) if cur[v - 1] == 0}
    Vp = set(range(1, n + 1)) - Vk - Vz
    rows = [cur] + others
    W = None
    for a in sorted(Vk | Vp):
        for b in sorted(set(range(1, n + 1)) - Vk):
            rep = _minimizer(D, alive, k, rows, {a, b})
            if rep.min_value == 0 and (W is None or len(rep.minimal_minimizer) < len(W)):
                W = rep.minimal_minimizer
    live = [a for a in D.arcs if alive >> (a.id - 1) & 1]
    first = []
    if W is not None:
        Wz, Wp = W & Vz, W & Vp
        if Wz:
            first = [a.id for a in live if a.tail in W - Vz and a.head in Wz]
        elif len(Wp) > 1:
            first = [a.id for a in live if a.tail in W and a.head in Wp]
        elif Wp:
            (v,) = Wp
            first = [a.id for a in live if a.head == v]
            X = _minimizer(D, alive, k, rows, {v}).minimal_minimizer
            first += [a.id for a in live if a.head == v and a.tail in X]
    order = list(dict.fromkeys(first))
    return order + [a.id for a in live if a.id not in order]


def _grow(D, k, cur, others, alive, guided):
    """Search for ``F`` completing ``cur`` to ``k`` everywhere."""
    failed = set()

    def rec(F, alive, start):
        need = [k - c for c in cur]
        if not any(need):
            return F
        key = (F, alive)
        if key in failed:
            return None
        if guided:
            order = _guided_order(D, alive, k, cur, others)
        else:
            order = [i for i in range(start, D.m + 1) if alive >> (i - 1) & 1]
        for i in order:
            need[D.arcs[i - 1].head - 1] -= 1
        if any(c > 0 for c in need):
            failed.add(key)
            return None
        for i in order:
            h = D.arcs[i - 1].head - 1
            if cur[h] >= k:
                continue
            bit = 1 << (i - 1)
            if not is_kforest_independent(D, ArcSubset.from_mask(D, F | bit).ids, k):
                continue
            cur[h] += 1
            if _residual_ok(D, alive & ~bit, k, [cur] + others):
                res = rec(F | bit, alive & ~bit, i + 1)
                if res is not None:
                    return res
            cur[h] -= 1
        failed.add(key)
        return None

    return rec(0, alive, 1)


def pack_k_branchings(instance: PackingInstance, engine: str = "probe",
                      decompose: bool = False) -> PackingCertificate:
    """Arc-disjoint k-branchings ``F_i`` with ``r_{F_i} = q_i``.

    ``engine="probe"`` tries arcs in increasing id order, so the lowest
    acceptable arc wins.  ``engine="guided"`` tries first the arcs that
    enter the minimal tight set of the classical existence argument.
    Raises :class:`InfeasibleError` when no packing exists.
    """
    if engine not in PACK_ENGINES:
        raise InstanceError(f"unknown packing engine {engine!r}")
    report = packing_deficiency(instance)
    if not report.feasible:
        raise InfeasibleError(
            f"no packing: deficiency {report.min_value} at {sorted(report.minimal_minimizer)}")
    D, k = instance.digraph, instance.k
    if engine == "probe" and kernels.fits(D.n, D.m, max_vertices=16):
        masks = kernels.active.pack(D.n, D.tails0, D.heads0, k, [list(r) for r in instance.q])
    else:
        masks = []
        alive = (1 << D.m) - 1
        rows = [list(r) for r in instance.q]
        for i in range(instance.p):
            F = _grow(D, k, rows[i], rows[i + 1:], alive, engine == "guided")
            if F is None:
                masks = None
                break
            masks.append(F)
            alive &= ~F
    if masks is None:
        raise AssertionError("feasible instance but the packing search failed")
    branchings = tuple(ArcSubset.from_mask(D, F) for F in masks)
    parts = tuple(decompose_k_branching(F, k) for F in branchings) if decompose else None
    cert = PackingCertificate(instance, branchings, parts)
    bad = cert.problems()
    if bad:
        raise AssertionError("invalid packing certificate: " + "; ".join(bad))
    return cert


def decompose_k_branching(F: ArcSubset, k: int) -> tuple:
    """Split a k-branching into ``k`` arc-disjoint branchings.

    Backtracking over colourings; a fresh colour is only opened after all
    lower colours are in use, which removes colour permutations.
    """
    if not is_k_branching(F, k):
        raise InstanceError(f"arc set {F!r} is not a {k}-branching")
    D = F.digraph
    arcs = sorted(F.arcs, key=lambda a: (a.head, a.id))
    def acyclic(cls, extra):
        uf = UnionFind()
        return all(uf.union(a.tail, a.head) for a in cls + [extra])

    classes = [[] for _ in range(k)]

    def rec(i, used):
        if i == len(arcs):
            return True
        a = arcs[i]
        for c in range(min(used + 1, k)):
            cls = classes[c]
            if any(b.head == a.head for b in cls) or not acyclic(cls, a):
                continue
            cls.append(a)
            if rec(i + 1, max(used, c + 1)):
                return True
            cls.pop()
        return False

    if not rec(0, 0):
        raise AssertionError("k-branching without a decomposition")
    return tuple(ArcSubset(D, (a.id for a in cls)) for cls in classes)


def pack_disjoint_branchings(D: Digraph, roots) -> tuple:
    """Arc-disjoint branchings ``B_i`` with root sets given by 0/1 vectors."""
    roots = [tuple(r) for r in roots]
    if any(v not in (0, 1) for r in roots for v in r):
        raise InstanceError("root vectors must be 0/1")
    cert = pack_k_branchings(PackingInstance(D, 1, tuple(roots)))
    return cert.branchings
