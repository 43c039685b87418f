"""Minimum-cost root location: opening cost of the roots plus arc cost.

The objective is ``f_P(r_F) + c(F)`` over all k-branchings ``F``, that
is ``min_x f_P(x) + f_B(x)``.  The general solver enumerates root vectors;
the separable ``k = 1`` case folds the opening cost into the arc costs.
"""

from __future__ import annotations

from itertools import product
from typing import NamedTuple

from .dca import INF, DiscreteFunctionTable, ExchangeVerdict, check_exchange_axiom, fb_solve, mincost_k_branching
from .errors import BudgetExceededError, InfeasibleError, InstanceError
from .feasibility import root_vector_feasible
from .graph import ArcSubset, Digraph

ENUMERATION_BUDGET = 2_000_000


class OpeningCost:
    """Opening cost ``f_P``: separable per-vertex lists or an explicit table.

    In separable form ``values[v-1][j]`` is the cost of ``j`` roots at
    ``v``; ``math.inf`` (or ``None``) marks a forbidden count.
    """

    def __init__(self, separable=None, table: DiscreteFunctionTable | None = None):
        if (separable is None) == (table is None):
            raise InstanceError("give exactly one of separable values or a table")
        self.table = table
        self.separable = None
        if separable is not None:
            rows = []
            for v, row in enumerate(separable, start=1):
                clean = []
                for val in row:
                    if val is None or val == INF:
                        clean.append(INF)
                    elif int(val) == val:
                        clean.append(int(val))
                    else:
                        raise InstanceError(f"vertex {v}: opening cost {val!r} is not an integer")
                rows.append(tuple(clean))
            if not rows:
                raise InstanceError("separable opening cost needs at least one vertex")
            self.separable = tuple(rows)

    @property
    def dim(self) -> int:
        return self.table.dim if self.table is not None else len(self.separable)

    def __call__(self, x):
        if self.table is not None:
            return self.table(x)
        total = 0
        for row, xv in zip(self.separable, x):
            if not 0 <= xv < len(row):
                return INF
            total += row[xv]
        return total

    def verify_mnat(self, k: int) -> ExchangeVerdict:
        """Exchange-axiom verdict for ``f_P`` restricted to ``{0..k}^V``."""
        if self.table is not None:
            return check_exchange_axiom(self.table, "Mnat")
        pts = product(range(k + 1), repeat=self.dim)
        return check_exchange_axiom(DiscreteFunctionTable(self.dim, {x: self(x) for x in pts}), "Mnat")


class RootLocation(NamedTuple):
    root_vector: tuple
    branching: ArcSubset
    total: int


def solve_root_location(D: Digraph, k: int, fP: OpeningCost, costs=None) -> RootLocation:
    """Exact minimizer of ``f_P(x) + f_B(x)`` by enumerating ``{0..k}^V``.

    Ties go to the lexicographically smallest ``x``.
    """
    if costs is not None:
        D = D.with_costs(costs)
    if k < 1:
        raise InstanceError("k must be positive")
    if fP.dim != D.n:
        raise InstanceError(f"opening cost has dimension {fP.dim}, expected {D.n}")
    if (k + 1) ** D.n > ENUMERATION_BUDGET:
        raise BudgetExceededError(
            f"{(k + 1) ** D.n} root vectors exceed the budget of {ENUMERATION_BUDGET}")
    best = None
    for x in product(range(k + 1), repeat=D.n):
        open_cost = fP(x)
        if open_cost == INF or not root_vector_feasible(D, k, x):
            continue
        if best is not None and open_cost + _lower(D, k, x) >= best[0]:
            continue
        sol = fb_solve(D, k, x)
        total = open_cost + sol.cost
        if best is None or total < best[0]:
            best = (total, x, sol.branching)
    if best is None:
        raise InfeasibleError("opening cost is +inf on every root vector")
    total, x, F = best
    return RootLocation(x, F, total)


def _lower(D, k, x):
    # k*n - x(V) arcs are needed; no cheaper than the cheapest that many
    need = k * D.n - sum(x)
    return sum(sorted(D.costs)[:need])


def solve_separable_k1(D: Digraph, opening, costs=None) -> RootLocation:
    """Separable ``k = 1`` root location via modified arc costs.

    ``opening`` lists ``(f_v(0), f_v(1))`` per vertex (or an
    :class:`OpeningCost` in separable form).  Each arc ``a`` into ``v``
    costs ``c(a) + f_v(0) - f_v(1)``; a minimum-cost branching under these
    costs is optimal, with total ``sum_v f_v(1) + c'(F)``.
    """
    if costs is not None:
        D = D.with_costs(costs)
    if isinstance(opening, OpeningCost):
        if opening.separable is None:
            raise InstanceError("the k = 1 shortcut needs a separable opening cost")
        opening = opening.separable
    pairs = [tuple(row) for row in opening]
    if len(pairs) != D.n:
        raise InstanceError(f"expected {D.n} opening-cost rows, got {len(pairs)}")
    for v, row in enumerate(pairs, start=1):
        if len(row) < 2 or any(val is None or val == INF for val in row[:2]):
            raise InstanceError(f"vertex {v}: need finite f(0) and f(1)")
    shifted = [a.cost + pairs[a.head - 1][0] - pairs[a.head - 1][1] for a in D.arcs]
    sol = mincost_k_branching(D.with_costs(shifted), 1)
    F = ArcSubset(D, sol.branching.ids)
    total = sum(row[1] for row in pairs) + sol.cost
    return RootLocation(sol.root_vector, F, total)
