"""Command-line front end.

Every report command prints one JSON document (stable key order, no
timestamps, all randomness behind --seed) so repeated runs on the same
inputs are byte-identical. Exit codes: 0 success, 2 when the computed
verdict is "not in the class" (that is a result, not a failure), 1 for
errors. solve-cnf keeps the SAT-competition convention (10/20) so the
package can serve as an external solver in subprocess tests.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .bounds import (
    BoundViolation,
    degeneracy,
    outer_k_planar_chromatic_bound,
    outer_k_planar_degeneracy_bound,
    verify_degeneracy_bound,
)
from .cdcl import CdclSolver
from .drawing import (
    crossing_report,
    drawing_svg,
    identity_drawing,
    is_closed_drawing,
)
from .generators import (
    complete,
    complete_bipartite,
    grid,
    planar_3tree_levels,
    random_outer_k_planar,
)
from .graphs import build_graph
from .io import format_drawing, format_graph, read_instance, sha256_file
from .maximal import (
    QuasiPlanarityError,
    build_levels,
    find_long_edge,
    frame_edges,
    is_maximal,
    levels_svg,
    maximal_edge_count,
    saturate,
    verify_level_properties,
)
from .mso2 import emit_formula, evaluate_formula
from .recognition import brute_force_recognize
from .sat import (
    TriviallyUnsat,
    emit_dimacs,
    encode_closed,
    encode_outer_planar,
    encode_outer_quasi,
    parse_dimacs,
    sat_recognize,
)
from .separator import balanced_separator, check_separation, recursive_decompose

VARIANT_SHORTHANDS = {
    "planar": "outer-planar",
    "quasi": "outer-quasi",
    "outer-planar": "outer-planar",
    "outer-quasi": "outer-quasi",
    "outer-quasi-planar": "outer-quasi",
    "closed-planar": "closed-outer-planar",
    "closed-quasi": "closed-outer-quasi",
    "closed-outer-planar": "closed-outer-planar",
    "closed-outer-quasi": "closed-outer-quasi",
    "closed-outer-quasi-planar": "closed-outer-quasi",
}


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors, which this tool reserves for
    # "not in class" verdicts; usage problems are plain errors instead
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise SystemExit(self._err(message))

    def _err(self, message: str) -> int:
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        return 1


def _canonical_variant(name: str) -> str:
    try:
        return VARIANT_SHORTHANDS[name]
    except KeyError:
        raise ValueError(
            f"unknown variant {name!r}; choose from "
            + ", ".join(sorted(set(VARIANT_SHORTHANDS)))
        ) from None


def _check_k(k: int, variant: str) -> None:
    if variant.endswith("quasi") and k < 2:
        raise ValueError(f"quasi variants need k >= 2, got {k}")
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")


def _input_path(args: argparse.Namespace) -> str:
    path = (
        getattr(args, "file", None)
        or getattr(args, "drawing", None)
        or getattr(args, "graph", None)
    )
    if not path:
        raise ValueError("an input file is required (positional, --drawing, or --graph)")
    return path


def _add_input(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("file", nargs="?", help="instance file (edge list, optional order)")
    sp.add_argument("--drawing", help="instance file, same as the positional argument")
    sp.add_argument("--graph", help="instance file, same as the positional argument")


def _json_safe(obj):
    if isinstance(obj, dict):
        return {
            (k if isinstance(k, str) else str(k)): _json_safe(v)
            for k, v in obj.items()
        }
    if isinstance(obj, (set, frozenset)):
        return sorted(_json_safe(x) for x in obj)
    if isinstance(obj, (list, tuple)):
        return [_json_safe(x) for x in obj]
    return obj


def _emit(args: argparse.Namespace, command: str, inputs: dict, payload: dict) -> None:
    doc = {
        "command": command,
        "tool_version": __version__,
        "inputs": {p: sha256_file(p) for p in inputs},
    }
    doc.update(payload)
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report_dict(rep) -> dict:
    return {
        "max_per_edge": rep.max_per_edge,
        "max_mutual": rep.max_mutual,
        "per_edge": [
            {"edge": list(e), "crossings": c} for e, c in sorted(rep.per_edge.items())
        ],
        "witness_mutual": [list(e) for e in rep.witness_mutual],
    }


def schema_path(command: str) -> Path:
    return Path(__file__).parent / "schemas" / f"{command}.schema.json"


# ---------------------------------------------------------------- commands


def cmd_check(args: argparse.Namespace) -> int:
    variant = _canonical_variant(args.variant)
    _check_k(args.k, variant)
    path = _input_path(args)
    d = read_instance(path).drawing()
    rep = crossing_report(d)
    closed = is_closed_drawing(d)
    if variant.endswith("planar"):
        in_class = rep.max_per_edge <= args.k
    else:
        in_class = rep.max_mutual <= args.k - 1
    if variant.startswith("closed"):
        in_class = in_class and closed
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(drawing_svg(d))
    _emit(
        args,
        "check",
        {path},
        {
            "k": args.k,
            "variant": variant,
            "n": d.n,
            "m": d.graph.m,
            "closed": closed,
            "in_class": in_class,
            "report": _report_dict(rep),
            "svg": args.svg,
        },
    )
    return 0 if in_class else 2


def _encode_for(g, k: int, variant: str):
    if variant == "outer-planar":
        return encode_outer_planar(g, k)
    if variant == "outer-quasi":
        return encode_outer_quasi(g, k)
    return encode_closed(g, k, variant.removeprefix("closed-"))


def cmd_recognize(args: argparse.Namespace) -> int:
    variant = _canonical_variant(args.variant)
    _check_k(args.k, variant)
    path = _input_path(args)
    g = read_instance(path).graph
    emitted = None
    if args.emit_cnf:
        try:
            cnf, _ = _encode_for(g, args.k, variant)
            emit_dimacs(cnf, args.emit_cnf)
            emitted = args.emit_cnf
        except TriviallyUnsat:
            emitted = None
    if args.engine == "brute":
        d = brute_force_recognize(g, args.k, variant)
        found = (d, crossing_report(d)) if d is not None else None
    else:
        found = sat_recognize(
            g, args.k, variant, solver=args.solver, timeout_s=args.timeout
        )
    witness = None
    if found is not None:
        d, rep = found
        witness = {
            "order": list(d.order),
            "max_per_edge": rep.max_per_edge,
            "max_mutual": rep.max_mutual,
        }
    _emit(
        args,
        "recognize",
        {path},
        {
            "k": args.k,
            "variant": variant,
            "engine": args.engine,
            "n": g.n,
            "m": g.m,
            "in_class": found is not None,
            "witness": witness,
            "emitted_cnf": emitted,
        },
    )
    return 0 if found is not None else 2


def cmd_separator(args: argparse.Namespace) -> int:
    path = _input_path(args)
    d = read_instance(path).drawing()
    rep = crossing_report(d)
    eff_k = rep.max_per_edge
    common = {
        "n": d.n,
        "m": d.graph.m,
        "effective_k": eff_k,
        "requested_k": args.k,
        "size_bound": 2 * eff_k + 3,
    }
    if args.recursive:
        leaf = args.leaf_size if args.leaf_size is not None else 2 * eff_k + 3
        node = recursive_decompose(d, leaf_size=leaf)
        payload = {
            **common,
            "recursive": True,
            "leaf_size": leaf,
            "depth": node.depth(),
            "tree": node.to_dict(),
        }
    else:
        sep = balanced_separator(d)
        payload = {
            **common,
            "recursive": False,
            "separator": sorted(sep.separator),
            "a_side": sorted(sep.a_side),
            "b_side": sorted(sep.b_side),
            "size": len(sep.separator),
            "case_tag": sep.case_tag,
            "witness": _json_safe(sep.witness),
            "valid": check_separation(d, eff_k, sep) is None,
        }
    _emit(args, "separator", {path}, payload)
    return 0


def cmd_levels(args: argparse.Namespace) -> int:
    if args.k < 2:
        raise ValueError(f"levels need k >= 2, got {args.k}")
    path = _input_path(args)
    d = read_instance(path).drawing()
    rep = crossing_report(d)
    base = {"k": args.k, "n": d.n, "m": d.graph.m}
    if rep.max_mutual > args.k - 1:
        _emit(
            args,
            "levels",
            {path},
            {
                **base,
                "in_class": False,
                "witness_mutual": [list(e) for e in rep.witness_mutual],
                "long_edge": None,
                "levels": None,
                "verification": None,
                "maximal": None,
                "svg": None,
            },
        )
        return 2
    long_edge = find_long_edge(d, args.k)
    if long_edge is None:
        _emit(
            args,
            "levels",
            {path},
            {
                **base,
                "in_class": True,
                "witness_mutual": [],
                "long_edge": None,
                "levels": None,
                "verification": None,
                "maximal": is_maximal(d, args.k),
                "svg": None,
            },
        )
        return 0
    ld = build_levels(d, long_edge, args.k)
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(levels_svg(d, ld))
    _emit(
        args,
        "levels",
        {path},
        {
            **base,
            "in_class": True,
            "witness_mutual": [],
            "long_edge": list(ld.long_edge),
            "levels": ld.to_dict(),
            "verification": verify_level_properties(ld, d),
            "maximal": is_maximal(d, args.k),
            "svg": args.svg,
        },
    )
    return 0


def cmd_saturate(args: argparse.Namespace) -> int:
    if args.k < 2:
        raise ValueError(f"saturation needs k >= 2, got {args.k}")
    inputs: set[str] = set()
    if args.order:
        inputs.add(args.order)
        d = read_instance(args.order).drawing()
        start = {"kind": "file", "edges": d.graph.m, "seed": None}
    elif args.n is not None:
        if args.seed is not None:
            d = random_outer_k_planar(args.n, max(args.k - 2, 0), args.seed)
            start = {"kind": "seeded", "edges": d.graph.m, "seed": args.seed}
        else:
            d = identity_drawing(build_graph(args.n, []))
            start = {"kind": "empty", "edges": 0, "seed": None}
    else:
        raise ValueError("saturate needs --order FILE or --n N")
    try:
        full = saturate(d, args.k)
    except QuasiPlanarityError as exc:
        _emit(
            args,
            "saturate",
            inputs,
            {
                "k": args.k,
                "n": d.n,
                "in_class": False,
                "witness_mutual": [list(e) for e in exc.witness],
                "start": start,
                "final_edges": None,
                "expected_maximal_edges": None,
                "matches_formula": None,
                "maximal": None,
                "drawing": None,
                "drawing_file": None,
            },
        )
        return 2
    expected = maximal_edge_count(d.n, args.k)
    if args.write_drawing:
        with open(args.write_drawing, "w") as fh:
            fh.write(format_drawing(full))
    _emit(
        args,
        "saturate",
        inputs,
        {
            "k": args.k,
            "n": d.n,
            "in_class": True,
            "witness_mutual": [],
            "start": start,
            "final_edges": full.graph.m,
            "expected_maximal_edges": expected,
            "matches_formula": full.graph.m == expected,
            "maximal": is_maximal(full, args.k),
            "drawing": {
                "n": full.n,
                "order": list(full.order),
                "edges": [list(e) for e in full.graph.edges],
            },
            "drawing_file": args.write_drawing,
        },
    )
    return 0


def cmd_generate(args: argparse.Namespace) -> int:
    family = args.family or args.kind
    if not family:
        raise ValueError("generate needs --family (alias --kind)")

    def need(name: str):
        val = getattr(args, name.replace("-", "_"))
        if val is None:
            raise ValueError(f"family {family!r} needs --{name}")
        return val

    if family == "complete":
        text = format_graph(complete(need("n")))
    elif family == "bipartite":
        text = format_graph(complete_bipartite(need("p"), need("q")))
    elif family == "grid":
        text = format_graph(grid(need("rows"), need("cols")))
    elif family == "3tree":
        text = format_graph(planar_3tree_levels(need("levels")))
    elif family == "frame":
        n, k = need("n"), need("k")
        edges = sorted(frame_edges(n, k))
        text = format_drawing(identity_drawing(build_graph(n, edges)))
    elif family == "random-okp":
        n, k = need("n"), need("k")
        seed = args.seed if args.seed is not None else 0
        text = format_drawing(random_outer_k_planar(n, k, seed))
    else:
        raise ValueError(f"unknown family {family!r}")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_bounds(args: argparse.Namespace) -> int:
    payload: dict = {
        "k": args.k,
        "degeneracy_bound": outer_k_planar_degeneracy_bound(args.k),
        "chromatic_bound": outer_k_planar_chromatic_bound(args.k),
        "largest_complete_graph": outer_k_planar_degeneracy_bound(args.k) + 1,
        "corpus": None,
    }
    inputs: set[str] = set()
    if args.corpus:
        files = sorted(str(p) for p in Path(args.corpus).glob("*.txt"))
        if not files:
            raise ValueError(f"no *.txt instances under {args.corpus}")
        inputs.update(files)
        drawings = []
        rows = []
        for f in files:
            d = read_instance(f).drawing()
            drawings.append(d)
            res = degeneracy(d.graph)
            rows.append(
                {
                    "file": Path(f).name,
                    "n": d.n,
                    "m": d.graph.m,
                    "degeneracy": res.degeneracy,
                    "colors": res.num_colors,
                }
            )
        try:
            summary = verify_degeneracy_bound(drawings, args.k)
        except BoundViolation as exc:
            payload["corpus"] = {"instances": rows, "violation": str(exc)}
            _emit(args, "bounds", inputs, payload)
            return 2
        payload["corpus"] = {"instances": rows, "summary": summary, "violation": None}
    _emit(args, "bounds", inputs, payload)
    return 0


def cmd_mso2(args: argparse.Namespace) -> int:
    variant = _canonical_variant(args.variant)
    if not variant.startswith("closed"):
        # formulas quantify over a Hamiltonian boundary, so only the
        # closed classes have one; the open names map to their closures
        variant = "closed-" + variant
    formula = emit_formula(args.k, variant)
    payload: dict = {
        "k": formula.k,
        "variant": formula.variant,
        "sexpr": formula.sexpr,
        "latex": formula.latex,
        "evaluation": None,
    }
    inputs: set[str] = set()
    value = None
    if args.eval:
        inputs.add(args.eval)
        g = read_instance(args.eval).graph
        value = evaluate_formula(formula, g)
        payload["evaluation"] = {"file": args.eval, "n": g.n, "m": g.m, "value": value}
    _emit(args, "mso2", inputs, payload)
    return 2 if value is False else 0


_PROP_ROWS = (
    ("K5", lambda: complete(5), True, False),
    ("K44", lambda: complete_bipartite(4, 4), True, False),
    ("grid44", lambda: grid(4, 4), True, False),
    ("K6", lambda: complete(6), False, False),
    ("K35", lambda: complete_bipartite(3, 5), False, False),
    ("3tree-3-levels", lambda: planar_3tree_levels(3), True, True),
    ("3tree-4-levels", lambda: planar_3tree_levels(4), False, True),
)


def cmd_repro(args: argparse.Namespace) -> int:
    if args.what != "props":
        raise ValueError(f"unknown repro target {args.what!r}")
    rows = []
    ok = True
    for name, make, expect, sensitive in _PROP_ROWS:
        g = make()
        found = sat_recognize(
            g, 3, "outer-quasi", solver=args.solver, timeout_s=args.timeout
        )
        got = found is not None
        hit = got == expect
        if not sensitive and not hit:
            ok = False
        rows.append(
            {
                "name": name,
                "n": g.n,
                "m": g.m,
                "k": 3,
                "variant": "outer-quasi",
                "expected_in_class": expect,
                "in_class": got,
                "pass": hit,
                "definition_sensitive": sensitive,
            }
        )
    _emit(args, "repro", set(), {"target": "props", "rows": rows, "pass": ok})
    return 0 if ok else 1


def cmd_solve_cnf(args: argparse.Namespace) -> int:
    with open(args.path) as fh:
        num_vars, clauses = parse_dimacs(fh.read())
    model = CdclSolver(num_vars, clauses).solve(timeout_s=args.timeout)
    if model is None:
        print("s UNSATISFIABLE")
        return 20
    print("s SATISFIABLE")
    line = "v"
    for lit in model:
        if len(line) + len(str(lit)) + 1 > 76:
            print(line)
            line = "v"
        line += f" {lit}"
    print(line + " 0")
    return 10


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="okplanar", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("check", help="crossing report and class membership of a drawing")
    _add_input(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--variant", required=True)
    sp.add_argument("--svg", help="also write the drawing as SVG")
    sp.add_argument("--out", help="write the JSON report here instead of stdout")
    sp.set_defaults(fn=cmd_check)

    sp = sub.add_parser("recognize", help="search for an order that puts a graph in class")
    _add_input(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--variant", required=True)
    sp.add_argument("--engine", choices=("sat", "brute"), default="sat")
    sp.add_argument("--solver", help="external DIMACS solver executable")
    sp.add_argument("--timeout", type=float, default=None)
    sp.add_argument("--emit-cnf", help="also write the encoding as DIMACS")
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_recognize)

    sp = sub.add_parser("separator", help="balanced separator of a convex drawing")
    _add_input(sp)
    sp.add_argument("--k", type=int, default=None,
                    help="advisory only; the bound uses the drawing's own k")
    sp.add_argument("--recursive", action="store_true")
    sp.add_argument("--leaf-size", type=int, default=None)
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_separator)

    sp = sub.add_parser("levels", help="split the edges crossing a long chord into levels")
    _add_input(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--svg", help="also write the leveled drawing as SVG")
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_levels)

    sp = sub.add_parser("saturate", help="add chords until no edge fits")
    sp.add_argument("--order", help="start from this instance file")
    sp.add_argument("--n", type=int, help="start from n vertices instead of a file")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--seed", type=int, default=None,
                    help="with --n: seed a random in-class start")
    sp.add_argument("--write-drawing",
                    help="also write the saturated drawing as an instance file")
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_saturate)

    sp = sub.add_parser("generate", help="write a named instance to stdout")
    sp.add_argument("--family", choices=(
        "complete", "bipartite", "grid", "3tree", "frame", "random-okp"))
    sp.add_argument("--kind", choices=(
        "complete", "bipartite", "grid", "3tree", "frame", "random-okp"),
        help="same as --family")
    sp.add_argument("--n", type=int)
    sp.add_argument("--p", type=int)
    sp.add_argument("--q", type=int)
    sp.add_argument("--rows", type=int)
    sp.add_argument("--cols", type=int)
    sp.add_argument("--levels", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_generate)

    sp = sub.add_parser("bounds", help="degeneracy and coloring bounds, optionally on a corpus")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--corpus", help="directory of *.txt instances to verify")
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_bounds)

    sp = sub.add_parser("mso2", help="emit the closed-class formula, optionally evaluate it")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--variant", required=True)
    sp.add_argument("--eval", help="evaluate the formula on this instance file")
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_mso2)

    sp = sub.add_parser("repro", help="re-run the recorded experiments")
    sp.add_argument("what", choices=("props",))
    sp.add_argument("--solver")
    sp.add_argument("--timeout", type=float, default=None)
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_repro)

    sp = sub.add_parser("solve-cnf", help="solve a DIMACS CNF file")
    sp.add_argument("path")
    sp.add_argument("--timeout", type=float, default=None)
    sp.set_defaults(fn=cmd_solve_cnf)

    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return args.fn(args)
    except BrokenPipeError:
        return 1
    except Exception as exc:  # CLI boundary: every failure becomes exit 1
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
