"""Root-vector cost functions of k-branchings and exchange-axiom checks.

``f_B(x)`` is the least cost of a k-branching with root vector ``x`` and
``f_A`` is its restriction to ``x(V) = k`` (the k-arborescences).  Both
are evaluated by weighted matroid intersection, never by enumeration.
The checkers test the M and M-natural exchange axioms on explicit tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Iterable, NamedTuple

from . import kernels
from .errors import InfeasibleError, InstanceError
from .feasibility import root_vector_feasible
from .graph import ArcSubset, Digraph
from .matroid import forest_union_matroid, head_partition_matroid, weighted_matroid_intersection

INF = math.inf
MODES = ("M", "Mnat")
KERNEL_VERTICES = 16
#: largest bounding box scanned with the dense kernel
DENSE_BOX = 1 << 20


class DiscreteFunctionTable:
    """Finite values on integer points of ``Z^dim``; ``+inf`` elsewhere."""

    def __init__(self, dim: int, entries):
        if dim < 1:
            raise InstanceError("dimension must be positive")
        data = {}
        for x, val in dict(entries).items():
            x = tuple(int(c) for c in x)
            if len(x) != dim:
                raise InstanceError(f"point {x} does not have dimension {dim}")
            if val is None or val == INF:
                continue
            if int(val) != val:
                raise InstanceError(f"value at {x} is not an integer")
            data[x] = int(val)
        self.dim = dim
        self.entries = dict(sorted(data.items()))

    @classmethod
    def indicator(cls, points: Iterable, dim: int | None = None):
        points = [tuple(p) for p in points]
        if dim is None:
            if not points:
                raise InstanceError("cannot infer the dimension of an empty set")
            dim = len(points[0])
        return cls(dim, {p: 0 for p in points})

    def value(self, x):
        return self.entries.get(tuple(x), INF)

    __call__ = value

    @property
    def domain(self) -> list:
        return list(self.entries)

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        if not isinstance(other, DiscreteFunctionTable):
            return NotImplemented
        return self.dim == other.dim and self.entries == other.entries

    def __repr__(self):
        return f"DiscreteFunctionTable(dim={self.dim}, size={len(self)})"

    def _need_domain(self):
        if not self.entries:
            raise InstanceError("function has an empty domain")

    @property
    def min_value(self) -> int:
        self._need_domain()
        return min(self.entries.values())

    def argmin(self) -> list:
        best = self.min_value
        return [x for x, v in self.entries.items() if v == best]

    def sum_range(self) -> tuple:
        """``(lambda, mu)``: least and greatest coordinate sum on the domain."""
        self._need_domain()
        sums = [sum(x) for x in self.entries]
        return min(sums), max(sums)

    def slice(self, total: int) -> "DiscreteFunctionTable":
        return DiscreteFunctionTable(
            self.dim, {x: v for x, v in self.entries.items() if sum(x) == total})

    def dumps(self) -> str:
        return "".join(" ".join(map(str, x)) + f" {v}\n" for x, v in self.entries.items())

    @classmethod
    def loads(cls, text: str) -> "DiscreteFunctionTable":
        from .formats import parse_table
        return parse_table(text)


@dataclass(frozen=True)
class ExchangeVerdict:
    passed: bool
    witness: tuple | None = None  # (x, y, u), u a 1-based coordinate

    def recheck(self, table: DiscreteFunctionTable, mode: str) -> bool:
        """True iff the witness really violates the axiom in ``table``."""
        if self.witness is None:
            return False
        x, y, u = self.witness
        return not _exchange_holds(table, x, y, u - 1, mode == "Mnat")


def _exchange_holds(table, x, y, u, natural):
    total = table(x) + table(y)
    if natural:
        x1, y1 = list(x), list(y)
        x1[u] -= 1
        y1[u] += 1
        if table(x1) + table(y1) <= total:
            return True
    for v in range(table.dim):
        if x[v] >= y[v]:
            continue
        x1, y1 = list(x), list(y)
        x1[u] -= 1
        x1[v] += 1
        y1[u] += 1
        y1[v] -= 1
        if table(x1) + table(y1) <= total:
            return True
    return False


def check_exchange_axiom(table: DiscreteFunctionTable, mode: str = "M") -> ExchangeVerdict:
    """Scan every ``(x, y, u)`` with ``x, y`` in the domain and ``x_u > y_u``.

    ``mode="M"`` checks the two-index exchange, ``mode="Mnat"`` also
    accepts the one-index move.  The first violation in lexicographic
    order of ``(x, y, u)`` is returned as the witness.
    """
    if mode not in MODES:
        raise InstanceError(f"unknown mode {mode!r}")
    table._need_domain()
    natural = mode == "Mnat"
    dom = table.domain
    lo = [min(x[i] for x in dom) for i in range(table.dim)]
    shape = [max(x[i] for x in dom) - lo[i] + 1 for i in range(table.dim)]
    if math.prod(shape) <= DENSE_BOX:
        flat = [None] * math.prod(shape)
        for x, val in table.entries.items():
            idx = 0
            for i in range(table.dim):
                idx = idx * shape[i] + x[i] - lo[i]
            flat[idx] = val
        hit = kernels.active.check_exchange(shape, flat, natural)
        if hit is None:
            return ExchangeVerdict(True)
        xi, yi, u = hit
        return ExchangeVerdict(False, (_unflatten(xi, shape, lo), _unflatten(yi, shape, lo), u + 1))
    for x in dom:
        for y in dom:
            for u in range(table.dim):
                if x[u] > y[u] and not _exchange_holds(table, x, y, u, natural):
                    return ExchangeVerdict(False, (x, y, u + 1))
    return ExchangeVerdict(True)


def _unflatten(idx, shape, lo):
    out = []
    for s in reversed(shape):
        out.append(idx % s)
        idx //= s
    return tuple(c + o for c, o in zip(reversed(out), lo))


def verify_argmin_base_polyhedron(table: DiscreteFunctionTable, mode: str = "M") -> ExchangeVerdict:
    """Exchange axiom for the set of minimizers of ``table``.

    Passing in mode M means the minimizers are the integer points of a
    base polyhedron.
    """
    return check_exchange_axiom(DiscreteFunctionTable.indicator(table.argmin(), table.dim), mode)


# -- f_B and f_A -----------------------------------------------------------

class BranchingSolution(NamedTuple):
    branching: ArcSubset
    root_vector: tuple
    cost: int


def _check_x(D, x):
    x = tuple(x)
    if len(x) != D.n:
        raise InstanceError(f"vector has length {len(x)}, expected {D.n}")
    return x


def fb_solve(D: Digraph, k: int, x, engine: str = "auto"):
    """Cheapest k-branching with root vector ``x``, or None if there is none.

    ``engine`` is ``"kernel"`` (bitmask intersection), ``"matroid"``
    (generic oracle intersection) or ``"auto"``.
    """
    x = _check_x(D, x)
    if k < 1:
        raise InstanceError("k must be positive")
    if engine == "auto":
        engine = "kernel" if kernels.fits(D.n, D.m, KERNEL_VERTICES) else "matroid"
    if engine == "kernel":
        cost, mask = kernels.active.fb_value(D.n, D.tails0, D.heads0, list(D.costs), k, list(x))
        if cost is None:
            return None
        return BranchingSolution(ArcSubset.from_mask(D, mask), x, cost)
    if engine != "matroid":
        raise InstanceError(f"unknown engine {engine!r}")
    if not root_vector_feasible(D, k, x):
        return None
    caps = [k - v for v in x]
    M1 = head_partition_matroid(D, caps)
    M2 = forest_union_matroid(D, k)
    ids = weighted_matroid_intersection(M1, M2, {a.id: a.cost for a in D.arcs}, sum(caps))
    F = ArcSubset(D, ids)
    return BranchingSolution(F, x, F.cost)


def eval_fB(D: Digraph, k: int, x, engine: str = "auto"):
    sol = fb_solve(D, k, x, engine)
    return INF if sol is None else sol.cost


def eval_fA(D: Digraph, k: int, x, engine: str = "auto"):
    x = _check_x(D, x)
    if sum(x) != k:
        return INF
    return eval_fB(D, k, x, engine)


def function_table(D: Digraph, k: int, which: str = "fB") -> DiscreteFunctionTable:
    """The full ``f_B`` (or ``f_A``) table over ``{0..k}^V``."""
    if which not in ("fB", "fA"):
        raise InstanceError(f"unknown function {which!r}")
    points = list(product(range(k + 1), repeat=D.n))
    if kernels.fits(D.n, D.m, KERNEL_VERTICES):
        vals = [c for c, _ in kernels.active.fb_table(D.n, D.tails0, D.heads0, list(D.costs), k)]
    else:
        vals = [eval_fB(D, k, x) for x in points]
    table = DiscreteFunctionTable(D.n, zip(points, vals))
    return table.slice(k) if which == "fA" else table


# -- minimization ----------------------------------------------------------

def _descend(D, k, x, moves):
    val = eval_fB(D, k, x)
    while True:
        best = None
        for y in moves(x):
            fy = eval_fB(D, k, y)
            if fy < val and (best is None or fy < best[0]):
                best = (fy, y)
        if best is None:
            return x
        val, x = best


def _mnat_moves(x):
    n = len(x)
    for u in range(n):
        yield x[:u] + (x[u] - 1,) + x[u + 1:]
        for v in range(n):
            if v != u:
                y = list(x)
                y[u] -= 1
                y[v] += 1
                yield tuple(y)
    for v in range(n):
        yield x[:v] + (x[v] + 1,) + x[v + 1:]


def _m_moves(x):
    n = len(x)
    for u in range(n):
        for v in range(n):
            if v != u:
                y = list(x)
                y[u] -= 1
                y[v] += 1
                yield tuple(y)


def _with_costs(D, costs):
    return D if costs is None else D.with_costs(costs)


def mincost_k_branching(D: Digraph, k: int, costs=None) -> BranchingSolution:
    """Minimum-cost k-branching by steepest descent on ``f_B`` from ``k*1``.

    Candidate moves are ``x - chi_u``, ``x - chi_u + chi_v`` and
    ``x + chi_v``; the first strictly best move in that order is taken.
    """
    D = _with_costs(D, costs)
    if k < 1:
        raise InstanceError("k must be positive")
    x = _descend(D, k, (k,) * D.n, _mnat_moves)
    return fb_solve(D, k, x)


def mincost_k_arborescence(D: Digraph, k: int, costs=None) -> BranchingSolution:
    """Minimum-cost k-arborescence, or :class:`InfeasibleError`.

    Starts from ``k*1`` and lowers one coordinate at a time while the
    vector stays a root vector, until ``x(V) = k``; then runs steepest
    descent with the moves ``x - chi_u + chi_v``.
    """
    D = _with_costs(D, costs)
    if k < 1:
        raise InstanceError("k must be positive")
    x = [k] * D.n
    while sum(x) > k:
        for u in range(D.n):
            if x[u] == 0:
                continue
            x[u] -= 1
            if root_vector_feasible(D, k, x):
                break
            x[u] += 1
        else:
            raise InfeasibleError(f"no {k}-arborescence: least root-vector sum is {sum(x)}")
    x = _descend(D, k, tuple(x), _m_moves)
    return fb_solve(D, k, x)
