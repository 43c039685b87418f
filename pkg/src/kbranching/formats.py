"""Instance, table and opening-cost file formats.

Instance text format::

    n m k p
    tail head cost        (m lines; arc ids 1..m in file order)
    q_i(1) ... q_i(n)     (p lines)

Blank lines and ``#`` comments are ignored.  The JSON mirror is
``{"n":..,"arcs":[{"tail":..,"head":..,"cost":..}],"k":..,"q":[[..]]}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .dca import INF, DiscreteFunctionTable
from .errors import InstanceError, ParseError
from .feasibility import PackingInstance
from .graph import Digraph
from .rootloc import OpeningCost


@dataclass(frozen=True)
class ProblemFile:
    digraph: Digraph
    k: int
    q: tuple = ()

    @property
    def p(self) -> int:
        return len(self.q)

    def packing_instance(self) -> PackingInstance:
        if not self.q:
            raise InstanceError("the instance lists no root vectors")
        return PackingInstance(self.digraph, self.k, self.q)


def _lines(text):
    """Nonblank lines with comments stripped, tagged with 1-based numbers."""
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].split()
        if body:
            yield no, body


def _ints(tokens, no, what):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"{what}: expected integers, got {' '.join(tokens)!r}", no) from None


def parse_instance_text(text: str) -> ProblemFile:
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty instance", 1)
    no, head = lines[0]
    if len(head) != 4:
        raise ParseError("header must be 'n m k p'", no)
    n, m, k, p = _ints(head, no, "header")
    if len(lines) < 1 + m + p:
        last = lines[-1][0]
        raise ParseError(f"expected {m} arc lines and {p} vector lines", last + 1)
    arcs = []
    for no, tok in lines[1:1 + m]:
        if len(tok) != 3:
            raise ParseError("arc line must be 'tail head cost'", no)
        arcs.append(tuple(_ints(tok, no, "arc")))
    rows = []
    for no, tok in lines[1 + m:1 + m + p]:
        if len(tok) != n:
            raise ParseError(f"root vector must have {n} entries", no)
        rows.append(tuple(_ints(tok, no, "root vector")))
    if len(lines) > 1 + m + p:
        raise ParseError("unexpected trailing content", lines[1 + m + p][0])
    return _build(n, arcs, k, rows)


def _build(n, arcs, k, rows):
    D = Digraph(n, arcs)
    if not isinstance(k, int) or k < 1:
        raise InstanceError(f"k must be a positive integer, got {k!r}")
    prob = ProblemFile(D, k, tuple(rows))
    if rows:
        prob.packing_instance()  # validate the root vectors
    return prob


def parse_instance_json(text: str) -> ProblemFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    try:
        arcs = [(a["tail"], a["head"], a.get("cost", 0)) for a in data["arcs"]]
        return _build(data["n"], arcs, data["k"], [tuple(r) for r in data.get("q", [])])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed instance object: {exc}") from None


def dump_instance_text(prob: ProblemFile) -> str:
    D = prob.digraph
    out = [f"{D.n} {D.m} {prob.k} {prob.p}"]
    out += [f"{a.tail} {a.head} {a.cost}" for a in D.arcs]
    out += [" ".join(map(str, row)) for row in prob.q]
    return "\n".join(out) + "\n"


def dump_instance_json(prob: ProblemFile) -> str:
    D = prob.digraph
    return json.dumps({
        "n": D.n,
        "arcs": [{"tail": a.tail, "head": a.head, "cost": a.cost} for a in D.arcs],
        "k": prob.k,
        "q": [list(r) for r in prob.q],
    })


def load_instance(path, fmt: str | None = None) -> ProblemFile:
    path = Path(path)
    text = path.read_text()
    if fmt is None:
        fmt = "json" if path.suffix == ".json" else "text"
    if fmt == "json":
        return parse_instance_json(text)
    if fmt == "text":
        return parse_instance_text(text)
    raise InstanceError(f"unknown instance format {fmt!r}")


def parse_table(text: str) -> DiscreteFunctionTable:
    """Table lines ``x_1 ... x_n value``; every line has the same length."""
    entries, dim = {}, None
    for no, tok in _lines(text):
        if dim is None:
            dim = len(tok) - 1
            if dim < 1:
                raise ParseError("table line needs coordinates and a value", no)
        elif len(tok) - 1 != dim:
            raise ParseError(f"expected {dim} coordinates", no)
        if tok[-1] == "inf":
            raise ParseError("'inf' is not allowed in table files; omit the point", no)
        vals = _ints(tok, no, "table entry")
        x = tuple(vals[:-1])
        if x in entries:
            raise ParseError(f"point {x} listed twice", no)
        entries[x] = vals[-1]
    if dim is None:
        raise ParseError("empty table", 1)
    return DiscreteFunctionTable(dim, entries)


def parse_opening(text: str, n: int, k: int) -> OpeningCost:
    """Opening-cost file.

    Separable form (default, or after a ``separable`` header line): one line
    ``v f(0) f(1) ... f(k)`` per vertex, ``inf`` allowed.  After a ``table``
    header line the rest is a table file.
    """
    lines = list(_lines(text))
    mode = "separable"
    if lines and lines[0][1][0] in ("separable", "table"):
        mode = lines[0][1][0]
        if len(lines[0][1]) != 1:
            raise ParseError("header line takes no arguments", lines[0][0])
        lines = lines[1:]
    if mode == "table":
        body = "\n".join(" ".join(tok) for _, tok in lines)
        table = parse_table(body)
        if table.dim != n:
            raise ParseError(f"table has dimension {table.dim}, expected {n}")
        return OpeningCost(table=table)
    rows = {}
    for no, tok in lines:
        if len(tok) != k + 2:
            raise ParseError(f"expected 'v f(0) ... f({k})'", no)
        v = _ints(tok[:1], no, "vertex")[0]
        if not 1 <= v <= n:
            raise ParseError(f"vertex {v} outside 1..{n}", no)
        if v in rows:
            raise ParseError(f"vertex {v} listed twice", no)
        rows[v] = tuple(INF if t == "inf" else _ints([t], no, "opening cost")[0] for t in tok[1:])
    missing = [v for v in range(1, n + 1) if v not in rows]
    if missing:
        raise ParseError(f"no opening cost for vertices {missing}")
    return OpeningCost(separable=[rows[v] for v in range(1, n + 1)])
