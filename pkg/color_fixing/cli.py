import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from . import config
from .bench import run_suite, write_csv
from .core import ColorFixer
from .errors import ColorFixError, InfeasibleError, MalformedInputError, SizeGuardError
from .fixing_number import (
    fixing_number,
    fixing_number_profile,
    hard_family,
    star_graph,
    worst_star_coloring,
    worst_tree_coloring,
)
from .generators import random_graph, random_instance, random_msi_instance, random_prext_instance, random_tree
from .io_formats import (
    InstanceFile,
    parse_coloring,
    parse_graph,
    parse_lists,
    parse_tree_decomposition,
    read_instance,
    write_instance,
)
from .models import Coloring, Graph
from .reductions import cross_compose, msi_to_listfix, preext_to_fix, vc_to_fix

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INFEASIBLE = 3
EXIT_GUARD = 4

# family -> ordered (parameter, type, default); None marks a required parameter
GEN_PARAMETERS = {
    "hard": (("m", int, None), ("r", int, None)),
    "vc": (("n", int, None), ("p", float, None), ("k", int, None), ("seed", int, 0)),
    "preext": (("n", int, None), ("p", float, None), ("r", int, 3), ("seed", int, 0)),
    "msi": (("size", int, None), ("p", float, None), ("k", int, 3), ("seed", int, 0)),
    "crosscompose": (("count", int, None), ("n", int, None), ("p", float, None), ("seed", int, 0)),
    "random": (("n", int, None), ("p", float, None), ("r", int, 3), ("seed", int, 0)),
    "tree-worst": (("n", int, None), ("seed", int, 0)),
    "star-worst": (("k", int, None),),
}


def _banner(title: str) -> None:
    print("=" * 80)
    print(title)
    print("=" * 80)


def _emit(report: Dict, as_json: bool, title: str, lines: List[str]) -> None:
    if as_json:
        print(json.dumps(report, indent=2))
        return
    _banner(title)
    for line in lines:
        print(line)


def _colors_text(phi: Coloring) -> str:
    return " ".join(map(str, phi.colors))


def normalize_palette(phi: Coloring) -> Tuple[Coloring, Optional[Dict[int, int]]]:
    """
    Shrink a palette larger than n + 1 to n + 1, renaming the colours in use
    to 1, 2, ... in increasing order.

    Returns the renamed colouring and the map back to the caller's colours,
    or None when the palette is already small enough. Spare colours map to
    the smallest unused original colours.
    """
    target = phi.n + 1
    if phi.r <= target:
        return phi, None
    used = sorted(set(phi.colors))
    spare = (c for c in range(1, phi.r + 1) if c not in phi.colors)
    restore = {i: c for i, c in enumerate(used, start=1)}
    restore.update({i: next(spare) for i in range(len(used) + 1, target + 1)})
    logger.warning("palette r=%d exceeds n+1=%d; using r=%d with colours renamed %s",
                   phi.r, target, target, {c: i for i, c in restore.items() if i <= len(used)})
    rename = {c: i for i, c in restore.items()}
    return Coloring.of((rename[c] for c in phi.colors), target), restore


def restore_palette(witness: Coloring, restore: Optional[Dict[int, int]], r: int) -> Coloring:
    """Undo normalize_palette on a witness."""
    if restore is None:
        return witness
    return Coloring.of((restore[c] for c in witness.colors), r)


def cmd_solve(args) -> int:
    instance = read_instance(args.graph, args.coloring, args.r, args.lists, args.k)
    G, phi, lists = instance.graph, instance.coloring, instance.lists
    r = phi.r
    restore = None
    if lists is None:
        phi, restore = normalize_palette(phi)
    td = None
    if args.td:
        td = parse_tree_decomposition(Path(args.td).read_text(encoding="utf-8"), G)

    fixer = ColorFixer(phi.r, lists=lists, solver=args.solver, force=args.force)

    if args.k is not None:
        answer, witness = fixer.decide(G, phi, args.k)
        report = {"n": G.n, "m": G.m, "r": r, "k": args.k, "answer": answer}
        lines = [f"n={G.n} m={G.m} r={r}", f"k={args.k}", f"answer={'yes' if answer else 'no'}"]
        if args.show_witness and witness is not None:
            witness = restore_palette(witness, restore, r)
            report["witness"] = list(witness.colors)
            lines.append(f"witness: {_colors_text(witness)}")
        _emit(report, args.json, "Color-Fixing: decide", lines)
        return EXIT_OK

    result = fixer.solve(G, phi, td=td)
    report = {"n": G.n, "m": G.m, "r": r, "solver": result.solver, "status": result.status.value,
              "k_star": result.k_star}
    lines = [f"n={G.n} m={G.m} r={r}", f"solver: {result.solver}"]
    if not result.is_optimal:
        report["message"] = "r < χ(G)"
        lines.append("infeasible: r < χ(G)")
        _emit(report, args.json, "Color-Fixing: solve", lines)
        return EXIT_INFEASIBLE
    lines.append(f"k*={result.k_star}")
    if args.show_witness:
        witness = restore_palette(result.witness, restore, r)
        report["witness"] = list(witness.colors)
        lines.append(f"witness: {_colors_text(witness)}")
    _emit(report, args.json, "Color-Fixing: solve", lines)
    return EXIT_OK


def cmd_fixnum(args) -> int:
    G = parse_graph(Path(args.graph).read_text(encoding="utf-8"))
    if args.profile is not None:
        profile = fixing_number_profile(G, args.profile, threads=args.threads, force=args.force)
        report = {"n": G.n, "profile": {str(r): value for r, value in profile.items()}}
        lines = [f"n={G.n}"] + [f"phi_{r}={value}" for r, value in profile.items()]
        _emit(report, args.json, "Color-Fixing: fixing number profile", lines)
        return EXIT_OK
    if args.r is not None:
        value, worst = ColorFixer(args.r, threads=args.threads, force=args.force).fixing_number(G)
        report = {"n": G.n, "r": args.r, "phi_r": value, "worst_coloring": list(worst.colors)}
        lines = [f"n={G.n} r={args.r}", f"phi_r={value}", f"worst coloring: {_colors_text(worst)}"]
        _emit(report, args.json, "Color-Fixing: fixing number", lines)
        return EXIT_OK
    result = fixing_number(G, threads=args.threads, force=args.force)
    report = result.model_dump(exclude={"worst_coloring"})
    report["n"] = G.n
    report["worst_coloring"] = list(result.worst_coloring.colors)
    lines = [
        f"n={G.n}",
        f"chi={result.chi}",
        f"phi={result.phi}",
        f"upper={result.upper}",
        f"lower={'-' if result.lower is None else result.lower}",
        f"worst coloring: {_colors_text(result.worst_coloring)}",
    ]
    _emit(report, args.json, "Color-Fixing: fixing number", lines)
    return EXIT_OK


def parse_gen_parameters(family: str, tokens: List[str]) -> Dict:
    """Positional tokens fill parameters in order; `name=value` tokens set them by name."""
    if family not in GEN_PARAMETERS:
        raise MalformedInputError(f"unknown family {family!r}; choose from {', '.join(config.GEN_FAMILIES)}")
    wanted = GEN_PARAMETERS[family]
    types = {name: kind for name, kind, _ in wanted}
    values = {}
    positional = [t for t in tokens if "=" not in t]
    if len(positional) > len(wanted):
        raise MalformedInputError(f"{family} takes at most {len(wanted)} parameters")
    for (name, _, _), token in zip(wanted, positional):
        values[name] = token
    for token in tokens:
        if "=" in token:
            name, _, value = token.partition("=")
            if name not in types:
                raise MalformedInputError(f"{family} has no parameter {name!r}")
            values[name] = value
    params = {}
    for name, kind, default in wanted:
        if name not in values:
            if default is None:
                raise MalformedInputError(f"{family} needs parameter {name!r}")
            params[name] = default
            continue
        try:
            params[name] = kind(values[name])
        except ValueError:
            raise MalformedInputError(f"parameter {name}={values[name]!r} is not a {kind.__name__}") from None
    return params


def generate(family: str, params: Dict) -> InstanceFile:
    if family == "hard":
        G, phi = hard_family(params["m"], params["r"])
        return InstanceFile(graph=G, coloring=phi, r=phi.r, k=params["m"] * (params["r"] - 1))
    if family == "vc":
        inst = vc_to_fix(random_graph(params["n"], params["p"], params["seed"]), params["k"])
        return InstanceFile(graph=inst.graph, coloring=inst.coloring, r=inst.r, k=inst.budget)
    if family == "preext":
        source = random_prext_instance(params["n"], params["p"], params["seed"])
        inst = preext_to_fix(source, params["r"])
        return InstanceFile(graph=inst.graph, coloring=inst.coloring, r=inst.r, k=inst.budget)
    if family == "msi":
        k = params["k"]
        pattern = Graph.from_edges(k, ((a, b) for a in range(1, k + 1) for b in range(a + 1, k + 1)))
        source = random_msi_instance([params["size"]] * k, pattern, params["p"], params["seed"])
        inst = msi_to_listfix(source)
        return InstanceFile(graph=inst.graph, coloring=inst.coloring, r=inst.r, k=inst.budget, lists=inst.lists)
    if family == "crosscompose":
        sources = [random_prext_instance(params["n"], params["p"], params["seed"] + i, bipartite=True)
                   for i in range(params["count"])]
        inst = cross_compose(sources)
        return InstanceFile(graph=inst.graph, coloring=inst.coloring, r=inst.r, k=inst.budget)
    if family == "random":
        G, phi = random_instance(params["n"], params["p"], params["r"], params["seed"])
        return InstanceFile(graph=G, coloring=phi, r=params["r"])
    if family == "tree-worst":
        T = random_tree(params["n"], params["seed"])
        return InstanceFile(graph=T, coloring=worst_tree_coloring(T), r=2)
    G = star_graph(params["k"])
    return InstanceFile(graph=G, coloring=worst_star_coloring(params["k"]), r=2)


def cmd_gen(args) -> int:
    params = parse_gen_parameters(args.family, args.params)
    instance = generate(args.family, params)
    stem = args.out or args.family
    comment = f"{args.family} " + " ".join(f"{name}={value}" for name, value in params.items())
    paths = write_instance(instance, stem, comment)
    report = {"family": args.family, "params": params, "n": instance.graph.n, "m": instance.graph.m,
              "r": instance.r, "k": instance.k, "files": [str(p) for p in paths]}
    lines = [f"family: {args.family}", f"n={instance.graph.n} m={instance.graph.m} r={instance.r}"]
    if instance.k is not None:
        lines.append(f"k={instance.k}")
    lines.extend(f"wrote {p}" for p in paths)
    _emit(report, args.json, "Color-Fixing: generate", lines)
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.suite not in config.BENCH_SUITES:
        raise MalformedInputError(f"unknown suite {args.suite!r}; choose from {', '.join(config.BENCH_SUITES)}")
    rows = run_suite(args.suite, seed=args.seed, timing=not args.no_timing)
    if args.json:
        print(json.dumps([row.model_dump() for row in rows], indent=2))
    else:
        write_csv(rows, sys.stdout)
    return EXIT_OK


def cmd_validate(args) -> int:
    G = parse_graph(Path(args.graph).read_text(encoding="utf-8"))
    report = {"graph": args.graph, "n": G.n, "m": G.m, "valid": True}
    lines = [f"graph: n={G.n} m={G.m}"]
    if (args.coloring or args.lists) and args.r is None:
        raise MalformedInputError("--r is required to check a coloring or lists file")
    if args.coloring:
        phi = parse_coloring(Path(args.coloring).read_text(encoding="utf-8"), G.n, args.r)
        report["r"] = phi.r
        lines.append(f"coloring: r={phi.r}")
    if args.lists:
        parse_lists(Path(args.lists).read_text(encoding="utf-8"), G.n, args.r)
        lines.append("lists: ok")
    if args.td:
        td = parse_tree_decomposition(Path(args.td).read_text(encoding="utf-8"), G)
        report["width"] = td.width
        lines.append(f"tree decomposition: {td.num_bags} bags, width {td.width}")
    lines.append("valid")
    _emit(report, args.json, "Color-Fixing: validate", lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Print a JSON report instead of text")
    common.add_argument("--verbose", action="store_true", help="Log at DEBUG level")
    common.add_argument("--force", action="store_true", help="Ignore the size guards")
    common.add_argument("--threads", type=int, default=None,
                        help=f"Worker processes for the fixing number (default: {config.DEFAULT_THREADS})")

    parser = argparse.ArgumentParser(prog="color-fixing",
                                     description="Recolour as few vertices as possible to make a colouring proper")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", parents=[common], help="Minimum recolouring of a coloured graph")
    solve.add_argument("graph", help="Graph file (p edge n m / e u v)")
    solve.add_argument("coloring", help="Coloring file (v vertex color)")
    solve.add_argument("--r", type=int, required=True, help="Palette size")
    solve.add_argument("--solver", choices=list(config.SOLVERS), default="auto",
                       help="Solver to use (default: auto)")
    solve.add_argument("--lists", default=None, help="Colour lists file (l vertex c1 c2 ...)")
    solve.add_argument("--td", default=None, help="Tree decomposition file (PACE .td)")
    solve.add_argument("--k", type=int, default=None, help="Only decide whether k recolourings suffice")
    solve.add_argument("--show-witness", action="store_true", help="Print the fixed colouring")
    solve.set_defaults(handler=cmd_solve)

    fixnum = sub.add_parser("fixnum", parents=[common], help="Fixing number of a graph")
    fixnum.add_argument("graph", help="Graph file")
    fixnum.add_argument("--r", type=int, default=None, help="Palette size (default: the chromatic number)")
    fixnum.add_argument("--profile", type=int, default=None, metavar="R_MAX",
                        help="Report phi_r for every r from chi to R_MAX")
    fixnum.set_defaults(handler=cmd_fixnum)

    gen = sub.add_parser("gen", parents=[common], help="Write a generated instance")
    gen.add_argument("family", help=f"One of: {', '.join(config.GEN_FAMILIES)}")
    gen.add_argument("params", nargs="*", help="Family parameters, positional or name=value")
    gen.add_argument("--out", default=None, help="Output path stem (default: the family name)")
    gen.set_defaults(handler=cmd_gen)

    bench = sub.add_parser("bench", parents=[common], help="Run a benchmark suite and print CSV")
    bench.add_argument("suite", help=f"One of: {', '.join(config.BENCH_SUITES)}")
    bench.add_argument("--seed", type=int, default=0, help="Seed for the random instances")
    bench.add_argument("--no-timing", action="store_true", help="Leave the seconds column empty")
    bench.set_defaults(handler=cmd_bench)

    validate = sub.add_parser("validate", parents=[common], help="Parse and check instance files")
    validate.add_argument("graph", help="Graph file")
    validate.add_argument("--coloring", default=None, help="Coloring file")
    validate.add_argument("--r", type=int, default=None, help="Palette size for the coloring and lists")
    validate.add_argument("--lists", default=None, help="Colour lists file")
    validate.add_argument("--td", default=None, help="Tree decomposition file")
    validate.set_defaults(handler=cmd_validate)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INVALID

    logging.basicConfig(level=logging.DEBUG if args.verbose else config.LOG_LEVEL,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)

    try:
        return args.handler(args)
    except InfeasibleError as e:
        print(f"❌ Infeasible: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except SizeGuardError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_GUARD
    except (ColorFixError, ValueError, OSError) as e:
        print(f"❌ Error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
