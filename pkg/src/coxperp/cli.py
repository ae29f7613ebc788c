"""``coxperp`` command line.

Every subcommand reads one Coxeter matrix file (``-`` for stdin) except
``selftest``.  Exit codes: 0 success, 1 bad input, 2 internal
inconsistency (e.g. the oracle disagrees with the generator enumeration).
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import decider as dec
from . import fileformat, graphs, instances, oracle, perp
from .coxeter import CoxeterMatrix, format_label, odd_component, odd_graph
from .errors import CoxperpError, InconsistencyError, InputError, LimitExceeded, PreconditionError

EXIT_OK, EXIT_INPUT, EXIT_INCONSISTENT = 0, 1, 2


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return float(obj) + 0.0  # no "-0.0"
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def dump_json(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2)


def _root_dict(cm: CoxeterMatrix, v, digits: int = 9) -> dict:
    return {g: round(float(c), digits) + 0.0 for g, c in zip(cm.generators, v) if abs(c) > oracle.TOL}


def _fmt_root(cm, v) -> str:
    terms = [f"{c:.6g}*{g}" for g, c in _root_dict(cm, v).items()]
    return " + ".join(terms) if terms else "0"


def _load(path: str) -> CoxeterMatrix:
    if path == "-":
        return fileformat.parse(sys.stdin.read())
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return fileformat.parse(text)


def _need_x(args, cm):
    if args.generator is None:
        raise InputError(f"'{args.command}' needs -x/--generator")
    cm.check(args.generator)
    return args.generator


# -- subcommands ---------------------------------------------------------------

def cmd_decide(args, cm):
    x = _need_x(args, cm)
    verdict = dec.decide(cm, x)
    cors = dec.corollary_check(cm, x, verdict)
    data = verdict.to_dict()
    data["corollaries"] = [
        {"name": c.name, "applicable": c.applicable, "predicted": c.predicted, "consistent": c.consistent}
        for c in cors
    ]
    if args.json:
        return data
    lines = [f"x = {x}: {verdict.decision} ({verdict.branch}, case {verdict.case})",
             f"O = {{{', '.join(verdict.O)}}}",
             f"E = {{{', '.join(verdict.E)}}}"]
    if verdict.K:
        lines.append(f"K = {{{', '.join(verdict.K)}}}")
    for s, ys in verdict.O2.items():
        lines.append(f"O2({s}) = {{{', '.join(ys)}}}")
    lines.append("conditions: " + ", ".join(f"{k}={'ok' if v else 'FAILS'}" for k, v in verdict.conditions.items()))
    if verdict.violation:
        lines.append(f"violated: condition {verdict.violation['condition']}: {verdict.violation['reason']}")
    for c in cors:
        if c.applicable:
            lines.append(f"corollary {c.name}: predicts {c.predicted}")
    return "\n".join(lines)


def _generators_data(cm, gens):
    return {
        "x": gens.x,
        "saturated": gens.saturated,
        "max_path_len": gens.max_path_len,
        "count": len(gens),
        "generators": [e.to_dict(cm) for e in gens.elements],
    }


def cmd_generators(args, cm):
    x = _need_x(args, cm)
    gens = perp.enumerate_generators(cm, x, args.max_path_len)
    if args.json:
        return _generators_data(cm, gens)
    status = "saturated" if gens.saturated else f"NOT saturated at path length {gens.max_path_len}"
    lines = [f"{len(gens)} generator(s) for x = {x}, {status}"]
    for i, e in enumerate(gens.elements):
        lines.append(f"[{i}] pair={','.join(e.pair)} path={'-'.join(e.path)} root={_fmt_root(cm, e.root)}")
        lines.append(f"    word: {' '.join(e.word(cm)) or '(empty)'}")
    return "\n".join(lines)


def cmd_presentation(args, cm):
    x = _need_x(args, cm)
    pres = perp.presentation(cm, x, args.max_path_len)
    if args.json:
        return pres.to_dict(cm)
    lines = [f"Coxeter matrix of {len(pres.chain)} generator(s) for x = {x}"]
    for i, e in enumerate(pres.generators.elements):
        lines.append(f"[{i}] {_fmt_root(cm, e.root)}")
    for row in pres.chain:
        lines.append(" ".join(f"{format_label(k):>4}" for k in row))
    return "\n".join(lines)


def cmd_oracle(args, cm):
    x = _need_x(args, cm)
    canon = oracle.canonical_generators(cm, x, args.depth)
    data = {
        "x": x, "depth": args.depth, "complete": canon.complete, "count": len(canon),
        "roots": [_root_dict(cm, r) for r in canon.roots],
    }
    code = EXIT_OK
    if args.compare:
        gens = perp.enumerate_generators(cm, x, args.max_path_len)
        index = oracle.RootIndex()
        for i, e in enumerate(gens.elements):
            index.add(e.root, i)
        missing = [r for r in canon.roots if index.get(r) is None]
        data["compare"] = {
            "generators": len(gens), "saturated": gens.saturated,
            "oracle_roots_not_generated": [_root_dict(cm, r) for r in missing],
            "agree": not missing and (not gens.saturated or not canon.complete or len(gens) == len(canon)),
        }
        if gens.saturated and not data["compare"]["agree"]:
            code = EXIT_INCONSISTENT
    if args.json:
        return data, code
    lines = [f"{len(canon)} canonical root(s) at depth {args.depth}"
             + (" (root system exhausted)" if canon.complete else " (depth-limited)")]
    lines += [f"  {_fmt_root(cm, r)}" for r in canon.roots]
    if args.compare:
        c = data["compare"]
        lines.append(f"generators: {c['generators']} ({'saturated' if c['saturated'] else 'truncated'}); "
                     f"{'agree' if c['agree'] else 'DISAGREE'}")
    return "\n".join(lines), code


def _parse_pair(text: str) -> tuple:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2 or not all(parts):
        raise InputError(f"--from expects 's,t', got {text!r}")
    return tuple(parts)


def cmd_moves(args, cm):
    x = _need_x(args, cm)
    if args.from_pair is None:
        pairs = perp.perp_pairs(cm, x)
        if not pairs:
            raise InputError(f"no admissible pair for {x}")
        pair = pairs[0]
    else:
        pair = _parse_pair(args.from_pair)
    states, moves = perp.reachable_moves(cm, x, pair)
    closed = perp.minimal_closed_move_sequence(cm, x, pair)
    data = {"from": list(pair), "states": [list(s) for s in states], "moves": [m.to_dict() for m in moves],
            "closed_sequence": closed.to_dict() if closed else None}
    g = odd_graph(cm, odd_component(cm, x))
    if closed and len(closed.trace) > 1:
        cycles = graphs.chordless_cycles(g)
        if len(cycles) == 1 and len(cycles[0]) == len(g.vertices):
            data["closed_sequence"]["winding"] = perp.winding_number(closed.trace, cycles[0])
    if args.json:
        return data
    lines = [f"{len(states)} state(s) reachable from ({pair[0]}, {pair[1]})"]
    for m in moves:
        lines.append(f"  {m.kind:9} ({','.join(m.source)}) -> ({','.join(m.target)}) at {m.at}")
    if closed is None:
        lines.append("no closed move sequence")
    else:
        lines.append(f"shortest closed sequence: {len(closed.moves)} move(s), trace {'-'.join(closed.trace)}")
        if "winding" in data["closed_sequence"]:
            lines.append(f"winding number: {data['closed_sequence']['winding']}")
    return "\n".join(lines)


def _graph_view(cm, args):
    if args.generator is not None:
        cm.check(args.generator)
        verts = odd_component(cm, args.generator)
    else:
        verts = None
    odd = odd_graph(cm, verts)
    core = set()
    for comp in graphs.components(odd):
        sub = odd.induced(comp)
        if graphs.has_cycle(sub):
            core |= graphs.cycle_core(sub)
    shown = cm.coxeter_graph(verts) if args.full else odd
    return shown, core


def _dot(cm, g, core, name) -> str:
    lines = [f"graph {name} {{"]
    for v in g.vertices:
        attr = ' [style=filled, fillcolor="lightblue", core=true]' if v in core else ""
        lines.append(f'  "{v}"{attr};')
    for a, b in g.sorted_edges():
        m = cm.m(a, b)
        lines.append(f'  "{a}" -- "{b}" [label="{format_label(m)}"];')
    lines.append("}")
    return "\n".join(lines)


def cmd_odd_graph(args, cm):
    g, core = _graph_view(cm, args)
    if args.json:
        return {"vertices": list(g.vertices),
                "edges": [[a, b, cm.m(a, b)] for a, b in g.sorted_edges()],
                "cycle_core": cm.sort(core), "full": args.full}
    return _dot(cm, g, core, "coxeter" if args.full else "odd")


def cmd_cycle_core(args, cm):
    x = _need_x(args, cm)
    odd = odd_graph(cm, odd_component(cm, x))
    if not graphs.has_cycle(odd):
        raise PreconditionError(f"odd component of {x} has no cycle")
    core = graphs.cycle_core(odd)
    if args.json and not args.dot:
        parts = graphs.tree_decomposition(odd, core)
        return {"x": x, "cycle_core": cm.sort(core),
                "chordless_cycles": [list(c) for c in graphs.chordless_cycles(odd)],
                "trees": {k: cm.sort(parts[k]) for k in cm.sort(core)}}
    g = cm.coxeter_graph(odd.vertices) if args.full else odd
    return _dot(cm, g, core, "cycle_core")


def cmd_selftest(args, cm=None):
    results = []

    def check(name, ok, detail=""):
        results.append({"name": name, "ok": bool(ok), "detail": detail})

    for name, (m, x) in instances.NAMED.items():
        v = dec.decide(m, x)
        dec.corollary_check(m, x, v)
        expected = {"A3": ("finite", "acyclic"), "B2": ("finite", "acyclic"), "diamond": ("finite", "1c"),
                    "G4": ("infinite", "1a"), "A~3": ("finite", "1b"), "A~4": ("finite", "1b")}[name]
        got = (v.decision, v.case)
        check(f"{name} verdict", got == expected, f"{got}")
        if v.finite:
            pres = perp.presentation(m, x)
            check(f"{name} presentation", pres.chain == pres.numeric, f"{len(pres.chain)} generator(s)")
        else:
            fam = dec.infinite_witness_family(m, x, v, 8)
            check(f"{name} witness family", len(fam) == 8 and v.violation["condition"] == "4",
                  f"{fam.lemma}, {len(fam)} distinct roots")
    for name, want in (("A~3", 1), ("A~4", 3)):
        m, x = instances.NAMED[name]
        pair = perp.perp_pairs(m, x)[0]
        seq = perp.minimal_closed_move_sequence(m, x, pair)
        w = abs(perp.winding_number(seq.trace, tuple(m.generators))) if seq else None
        check(f"{name} winding", w == want, f"{w}")
    code = EXIT_OK if all(r["ok"] for r in results) else EXIT_INCONSISTENT
    if args.json:
        return {"results": results, "passed": code == EXIT_OK}, code
    text = "\n".join(f"{'pass' if r['ok'] else 'FAIL'}  {r['name']}  {r['detail']}" for r in results)
    return text, code


COMMANDS = {
    "decide": (cmd_decide, "finite-generation verdict with witnesses"),
    "generators": (cmd_generators, "enumerate generator roots and words"),
    "presentation": (cmd_presentation, "Coxeter matrix of the generators"),
    "oracle": (cmd_oracle, "brute-force canonical roots from the root system"),
    "moves": (cmd_moves, "slidings and switchings reachable from a pair"),
    "odd-graph": (cmd_odd_graph, "odd Coxeter graph as DOT or JSON"),
    "cycle-core": (cmd_cycle_core, "cycle core of the odd component of x"),
    "selftest": (cmd_selftest, "run the built-in example suite"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coxperp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text,
                           formatter_class=argparse.ArgumentDefaultsHelpFormatter)
        if name != "selftest":
            p.add_argument("file", help="Coxeter matrix file, '-' for stdin")
            p.add_argument("-x", "--generator", help="the reflection x (a generator name)")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if name in ("generators", "presentation", "oracle"):
            p.add_argument("--max-path-len", type=int, default=perp.DEFAULT_MAX_PATH_LEN,
                           help="longest odd path explored by the generator enumeration")
        if name == "oracle":
            p.add_argument("--depth", type=int, default=oracle.DEFAULT_DEPTH,
                           help="word length bound for root enumeration")
            p.add_argument("--compare", action="store_true", help="also compare with enumerated generators")
        if name == "moves":
            p.add_argument("--from", dest="from_pair", metavar="S,T", help="starting pair (mover,support)")
        if name in ("odd-graph", "cycle-core"):
            p.add_argument("--dot", action="store_true", help="DOT output (default unless --json)")
            p.add_argument("--full", action="store_true", help="draw the whole Coxeter graph")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    func = COMMANDS[args.command][0]
    try:
        cm = None if args.command == "selftest" else _load(args.file)
        out = func(args, cm)
        code = EXIT_OK
        if isinstance(out, tuple):
            out, code = out
    except (InputError, PreconditionError, LimitExceeded) as exc:
        return _fail(args, stderr, exc, EXIT_INPUT)
    except InconsistencyError as exc:
        return _fail(args, stderr, exc, EXIT_INCONSISTENT)
    except CoxperpError as exc:
        return _fail(args, stderr, exc, EXIT_INPUT)
    stdout.write((dump_json(out) if args.json and not isinstance(out, str) else out) + "\n")
    return code


def _fail(args, stderr, exc, code) -> int:
    if getattr(args, "json", False):
        stderr.write(dump_json({"error": {"type": type(exc).__name__, "message": str(exc), "exit": code}}) + "\n")
    else:
        stderr.write(f"coxperp: {type(exc).__name__}: {exc}\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
