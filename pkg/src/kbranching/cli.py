"""Command-line front end.

Exit status is 0 on success (or a feasible / passing answer), 1 when the
answer is negative (infeasible instance, failed exchange check) and 2 on
bad input.  ``--output json`` prints one JSON object per run.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import dca, feasibility, packing, rootloc, testkit
from .errors import BudgetExceededError, InfeasibleError, InstanceError, KBranchingError
from .formats import load_instance, parse_opening, parse_table

COMMANDS = ("feasible", "pack", "mincost", "eval", "table", "check-exchange",
            "argmin", "rootloc", "oracle")


@dataclass
class RunConfig:
    command: str
    instance: str | None = None
    format: str | None = None
    engine: str = "auto"
    output: str = "plain"
    options: dict = field(default_factory=dict)


def fmt_set(items) -> str:
    return "{" + ",".join(str(i) for i in sorted(items)) + "}"


def fmt_vec(x) -> str:
    return "(" + " ".join(str(v) for v in x) + ")"


def fmt_val(v) -> str:
    return "inf" if v == dca.INF else str(v)


def _json_val(v):
    return "inf" if v == dca.INF else v


class _Result:
    def __init__(self, status=0, lines=(), data=None):
        self.status = status
        self.lines = list(lines)
        self.data = data if data is not None else {}


def _parse_vector(text, n):
    try:
        x = tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError:
        raise InstanceError(f"vector {text!r} is not a list of integers") from None
    if len(x) != n:
        raise InstanceError(f"vector has {len(x)} entries, expected {n}")
    return x


def _cmd_feasible(cfg, prob):
    inst = prob.packing_instance()
    rep = feasibility.packing_deficiency(inst, cfg.engine)
    data = {"feasible": rep.feasible, "min": rep.min_value, "X": sorted(rep.minimal_minimizer)}
    if rep.feasible:
        return _Result(0, ["FEASIBLE"], data)
    return _Result(1, [f"INFEASIBLE min={rep.min_value} X={fmt_set(rep.minimal_minimizer)}"], data)


def _cmd_pack(cfg, prob):
    inst = prob.packing_instance()
    opts = cfg.options
    try:
        cert = packing.pack_k_branchings(inst, opts.get("pack_engine", "probe"),
                                         decompose=opts.get("decompose", False))
    except InfeasibleError:
        rep = feasibility.packing_deficiency(inst, cfg.engine)
        return _Result(1, [f"INFEASIBLE min={rep.min_value} X={fmt_set(rep.minimal_minimizer)}"],
                       {"feasible": False, "min": rep.min_value, "X": sorted(rep.minimal_minimizer)})
    lines, packs = [], []
    for i, F in enumerate(cert.branchings, start=1):
        lines.append(f"F{i}={fmt_set(F.ids)}")
        entry = {"arcs": list(F.ids)}
        if cert.decompositions is not None:
            parts = cert.decompositions[i - 1]
            lines += [f"  B{j}={fmt_set(B.ids)}" for j, B in enumerate(parts, start=1)]
            entry["branchings"] = [list(B.ids) for B in parts]
        packs.append(entry)
    return _Result(0, lines, {"feasible": True, "packing": packs})


def _solution(sol, key="cost"):
    line = f"x={fmt_vec(sol.root_vector)} F={fmt_set(sol.branching.ids)} {key}={sol.cost}"
    return line, {"x": list(sol.root_vector), "F": list(sol.branching.ids), key: sol.cost}


def _cmd_mincost(cfg, prob):
    D, k = prob.digraph, prob.k
    if cfg.options.get("arborescence"):
        try:
            sol = dca.mincost_k_arborescence(D, k)
        except InfeasibleError as exc:
            return _Result(1, [f"INFEASIBLE {exc}"], {"feasible": False})
    else:
        sol = dca.mincost_k_branching(D, k)
    line, data = _solution(sol)
    return _Result(0, [line], data)


def _cmd_eval(cfg, prob):
    x = _parse_vector(cfg.options["x"], prob.digraph.n)
    fb = dca.eval_fB(prob.digraph, prob.k, x)
    fa = dca.eval_fA(prob.digraph, prob.k, x)
    return _Result(0, [f"fB={fmt_val(fb)} fA={fmt_val(fa)}"],
                   {"x": list(x), "fB": _json_val(fb), "fA": _json_val(fa)})


def _table_for(cfg, prob):
    if cfg.options.get("table"):
        with open(cfg.options["table"]) as fh:
            return parse_table(fh.read())
    if prob is None:
        raise InstanceError("give an instance or --table")
    return dca.function_table(prob.digraph, prob.k, cfg.options.get("function", "fB"))


def _table_data(table):
    return [{"x": list(x), "value": v} for x, v in table.entries.items()]


def _cmd_table(cfg, prob):
    table = _table_for(cfg, prob)
    return _Result(0, table.dumps().splitlines(), {"entries": _table_data(table)})


def _verdict(v):
    data = {"passed": v.passed}
    if v.passed:
        return "PASSED", data
    x, y, u = v.witness
    data["witness"] = {"x": list(x), "y": list(y), "u": u}
    return f"FAILED x={fmt_vec(x)} y={fmt_vec(y)} u={u}", data


MODE_NAMES = {"m": "M", "mnat": "Mnat"}


def _cmd_check_exchange(cfg, prob):
    table = _table_for(cfg, prob)
    line, data = _verdict(dca.check_exchange_axiom(table, MODE_NAMES[cfg.options.get("mode", "m")]))
    return _Result(0 if data["passed"] else 1, [line], data)


def _cmd_argmin(cfg, prob):
    opts = dict(cfg.options)
    opts.setdefault("function", "fA")
    table = _table_for(RunConfig(cfg.command, options=opts), prob)
    argmin = table.argmin()
    lines = [f"min={table.min_value}"] + [fmt_vec(x) for x in argmin]
    data = {"min": table.min_value, "argmin": [list(x) for x in argmin]}
    status = 0
    if opts.get("verify_base"):
        line, verdict = _verdict(dca.verify_argmin_base_polyhedron(table, MODE_NAMES[opts.get("mode", "m")]))
        lines.append(line)
        data["verdict"] = verdict
        status = 0 if verdict["passed"] else 1
    return _Result(status, lines, data)


def _cmd_rootloc(cfg, prob):
    D, k = prob.digraph, prob.k
    with open(cfg.options["opening"]) as fh:
        fP = parse_opening(fh.read(), D.n, k)
    lines, data = [], {}
    if cfg.options.get("verify_mnat"):
        line, data["mnat"] = _verdict(fP.verify_mnat(k))
        lines.append(f"mnat {line}")
    try:
        if cfg.options.get("separable"):
            if k != 1:
                raise InstanceError("--separable requires k = 1")
            res = rootloc.solve_separable_k1(D, fP)
        else:
            res = rootloc.solve_root_location(D, k, fP)
    except InfeasibleError as exc:
        return _Result(1, lines + [f"INFEASIBLE {exc}"], dict(data, feasible=False))
    lines.insert(0, f"x={fmt_vec(res.root_vector)} F={fmt_set(res.branching.ids)} total={res.total}")
    data.update({"x": list(res.root_vector), "F": list(res.branching.ids), "total": res.total})
    return _Result(0, lines, data)


def _cmd_oracle(cfg, prob):
    op = cfg.options.get("op", "enumerate")
    D, k = prob.digraph, prob.k
    if op == "enumerate":
        Fs = testkit.enumerate_k_branchings(D, k)
        return _Result(0, [fmt_set(F.ids) for F in Fs], {"k_branchings": [list(F.ids) for F in Fs]})
    if op == "packing":
        ok = testkit.brute_packing_exists(prob.packing_instance())
        return _Result(0 if ok else 1, ["FEASIBLE" if ok else "INFEASIBLE"], {"feasible": ok})
    table = testkit.brute_function_table(D, k, cfg.options.get("function", "fB"))
    return _Result(0, table.dumps().splitlines(), {"entries": _table_data(table)})


HANDLERS = {
    "feasible": _cmd_feasible,
    "pack": _cmd_pack,
    "mincost": _cmd_mincost,
    "eval": _cmd_eval,
    "table": _cmd_table,
    "check-exchange": _cmd_check_exchange,
    "argmin": _cmd_argmin,
    "rootloc": _cmd_rootloc,
    "oracle": _cmd_oracle,
}


def run(cfg: RunConfig) -> tuple:
    """Execute one command; returns ``(exit_status, output_text)``."""
    try:
        if cfg.command not in HANDLERS:
            raise InstanceError(f"unknown command {cfg.command!r}")
        prob = load_instance(cfg.instance, cfg.format) if cfg.instance else None
        if prob is None and cfg.command not in ("check-exchange", "argmin", "table"):
            raise InstanceError(f"{cfg.command} needs an instance file")
        res = HANDLERS[cfg.command](cfg, prob)
    except BudgetExceededError as exc:
        res = _Result(2, [f"error: budget exceeded: {exc}"], {"error": f"budget exceeded: {exc}"})
    except (KBranchingError, OSError) as exc:
        res = _Result(2, [f"error: {exc}"], {"error": str(exc)})
    if cfg.output == "json":
        body = dict(res.data, command=cfg.command, status=res.status)
        return res.status, json.dumps(body, sort_keys=True)
    return res.status, "\n".join(res.lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps a subcommand's defaults from hiding a flag given earlier
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS,
                        help="instance format (default: by file extension)")
    common.add_argument("--output", choices=("plain", "json"), default=argparse.SUPPRESS)
    common.add_argument("--engine", choices=feasibility.ENGINES, default=argparse.SUPPRESS,
                        help="deficiency engine (default: auto)")

    parser = argparse.ArgumentParser(prog="kbranching", parents=[common],
                                     description="Packing and minimum-cost k-branchings.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, instance=True, **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        if instance is True:
            p.add_argument("instance")
        elif instance == "optional":
            p.add_argument("instance", nargs="?")
        return p

    add("feasible", help="test the packing condition")
    p = add("pack", help="construct a packing")
    p.add_argument("--decompose", action="store_true", help="also split each F_i into branchings")
    p.add_argument("--pack-engine", choices=packing.PACK_ENGINES, default="probe")
    p = add("mincost", help="minimum-cost k-branching or k-arborescence")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--branching", action="store_true", default=True)
    g.add_argument("--arborescence", action="store_true")
    p = add("eval", help="evaluate fB and fA at a root vector")
    p.add_argument("--x", required=True, help="root vector, e.g. '1 0 1'")
    p = add("table", instance="optional", help="dump the fB or fA table")
    p.add_argument("--function", choices=("fB", "fA"), default="fB")
    p = add("check-exchange", instance="optional", help="check an exchange axiom")
    p.add_argument("--mode", choices=("m", "mnat"), default="m")
    p.add_argument("--table", help="table file (default: fB table of the instance)")
    p.add_argument("--function", choices=("fB", "fA"), default="fB")
    p = add("argmin", instance="optional", help="minimizers of fA, fB or a table")
    p.add_argument("--verify-base", action="store_true")
    p.add_argument("--mode", choices=("m", "mnat"), default="m")
    p.add_argument("--table")
    p.add_argument("--function", choices=("fB", "fA"), default="fA")
    p = add("rootloc", help="minimum-cost root location")
    p.add_argument("--opening", required=True, help="opening-cost file")
    p.add_argument("--separable", action="store_true", help="k = 1 modified-cost shortcut")
    p.add_argument("--verify-mnat", action="store_true")
    p = add("oracle", help="brute-force oracles")
    p.add_argument("--op", choices=("enumerate", "packing", "table"), default="enumerate")
    p.add_argument("--function", choices=("fB", "fA"), default="fB")
    return parser


_GLOBAL = ("command", "instance", "format", "engine", "output")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    opts = {k: v for k, v in vars(args).items() if k not in _GLOBAL and v is not None}
    cfg = RunConfig(args.command, getattr(args, "instance", None), getattr(args, "format", None),
                    getattr(args, "engine", "auto"), getattr(args, "output", "plain"), opts)
    status, text = run(cfg)
    if text:
        print(text, file=sys.stderr if status == 2 and cfg.output == "plain" else sys.stdout)
    return status


if __name__ == "__main__":
    sys.exit(main())
