"""Command-line interface.

Every command prints one JSON report on stdout and a one-line summary on
stderr.  Exit codes: 0 yes/found/ok, 1 no/not found, 2 usage error,
3 input format error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path
from typing import List, Optional

from . import formats
from .complex import Complex2, SurfaceKind, classify_surface, edge_connected_components
from .deletion.instance import DeletionInstance, WeightedInstance
from .deletion.kernel import compress, kernelize
from .deletion.solvers import brute_force_deletion, solve_branching, solve_conflict_param
from .errors import FormatError, TwoSphereError
from .generators import random_complex, random_walled_sphere
from .gridtiling import generate_reduction, random_grid_tiling, solve_grid_tiling
from .search.engine import (AT_MOST, BACKTRACKING, COLOR_CODING, DEFAULT_DELTA, EXACTLY,
                            brute_force_sphere_subcomplex, find_sphere_subcomplex)
from .search.subdivision import barycentric_subdivision

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_FORMAT = 0, 1, 2, 3

SEARCH_ENGINES = {"backtracking": BACKTRACKING, "color-coding": COLOR_CODING, "brute": "brute"}
DELETION_ENGINES = ("branching", "conflict", "brute")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _tri_list(ts):
    return [list(t) for t in ts] if ts is not None else None


def _write_complex(args, K: Complex2, weights=None, budget=None, order=None, comments=()):
    if args.format == "json":
        d = formats.complex_to_json(K, weights)
        if budget is not None:
            d["budget"] = budget
        text = json.dumps(d, sort_keys=True) + "\n"
    else:
        text = formats.format_2sc(K, weights, budget, order, comments)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        return {"written": args.out}
    return {"complex": formats.complex_to_json(K, weights)}


def _load(args):
    if not args.input:
        raise UsageError("an input file is required")
    try:
        return formats.read_complex(args.input)
    except FileNotFoundError:
        raise UsageError(f"no such file: {args.input}") from None


def _budget(args, parsed) -> int:
    k = args.k if args.k is not None else parsed.budget
    if k is None:
        raise UsageError("--k is required (or a '# budget N' line in the input)")
    if k < 0:
        raise UsageError("--k must be non-negative")
    return k


def _stats(K: Complex2) -> dict:
    return K.stats()


# -- commands -------------------------------------------------------------------

def cmd_validate(args, rep):
    parsed = _load(args)
    rep["stats"] = _stats(parsed.complex)
    rep["weighted"] = parsed.weighted
    rep["verdict"] = "ok"
    return EXIT_YES


def cmd_stats(args, rep):
    parsed = _load(args)
    rep["stats"] = _stats(parsed.complex)
    rep["verdict"] = "ok"
    return EXIT_YES


def cmd_recognize(args, rep):
    K = _load(args).complex
    rep["stats"] = _stats(K)
    comps = edge_connected_components(K)
    if len(comps) == 1 and K.is_pure:
        cls = classify_surface(K)
        rep["surface"] = cls.to_json()
    else:
        rep["surface"] = {"kind": "NotEdgeConnected" if len(comps) > 1 else SurfaceKind.NOT_SURFACE.value,
                          "euler_characteristic": rep["stats"]["euler_characteristic"]}
    yes = rep["surface"]["kind"] == SurfaceKind.SPHERE.value
    rep["verdict"] = "yes" if yes else "no"
    return EXIT_YES if yes else EXIT_NO


def cmd_components(args, rep):
    K = _load(args).complex
    rep["stats"] = _stats(K)
    rep["components"] = [
        {"triangles": len(C), "surface": classify_surface(C).to_json()}
        for C in edge_connected_components(K)
    ]
    rep["verdict"] = "ok"
    return EXIT_YES


def cmd_sd(args, rep):
    K = _load(args).complex
    S = barycentric_subdivision(K)
    rep["stats"] = _stats(S)
    rep.update(_write_complex(args, S))
    rep["verdict"] = "ok"
    return EXIT_YES


def cmd_find_sphere(args, rep):
    parsed = _load(args)
    K = parsed.complex
    k = _budget(args, parsed)
    engine = args.engine or "backtracking"
    if engine not in SEARCH_ENGINES:
        raise UsageError(f"engine {engine!r} is not a search engine ({', '.join(SEARCH_ENGINES)})")
    mode = EXACTLY if args.exact else AT_MOST
    rep["stats"] = _stats(K)
    if engine == "brute":
        out = brute_force_sphere_subcomplex(K, k, mode)
    else:
        out = find_sphere_subcomplex(K, k, mode, SEARCH_ENGINES[engine], seed=args.seed,
                                     delta=args.delta, max_trials=args.max_trials)
    rep["params"] = {"k": k, "mode": mode, "engine": engine, **out.params}
    rep["patterns_tried"] = out.patterns_tried
    rep["trials"] = out.trials
    rep["verdict"] = "found" if out.found else "not-found"
    rep["certificate"] = _tri_list(out.witness)
    return EXIT_YES if out.found else EXIT_NO


def _deletion_instance(args, parsed):
    k = _budget(args, parsed)
    if args.weighted:
        return WeightedInstance(parsed.complex, parsed.weights, k)
    return DeletionInstance(parsed.complex, k)


def cmd_delete_to_sphere(args, rep):
    parsed = _load(args)
    inst = _deletion_instance(args, parsed)
    engine = args.engine or "branching"
    if engine not in DELETION_ENGINES:
        raise UsageError(f"engine {engine!r} is not a deletion engine ({', '.join(DELETION_ENGINES)})")
    solver = {"branching": solve_branching, "conflict": solve_conflict_param,
              "brute": brute_force_deletion}[engine]
    out = solver(inst)
    rep["stats"] = _stats(parsed.complex)
    rep["params"] = {"k": inst.k, "engine": engine, "weighted": inst.weighted}
    rep["verdict"] = "yes" if out.feasible else "no"
    rep["certificate"] = _tri_list(out.deleted)
    rep["cost"] = out.cost
    if out.stats:
        rep["search"] = out.stats
    return EXIT_YES if out.feasible else EXIT_NO


def _kernel_common(args, rep, fn):
    parsed = _load(args)
    k = _budget(args, parsed)
    inst = DeletionInstance(parsed.complex, k)
    out = fn(inst)
    rep["stats"] = _stats(parsed.complex)
    rep["params"] = {"k": k}
    rep["kernel"] = out.to_json()
    if out.decided is not None:
        rep["verdict"] = "yes" if out.decided else "no"
        rep["certificate"] = _tri_list(out.certificate)
        return EXIT_YES if out.decided else EXIT_NO
    res = out.instance
    weights = getattr(res, "weights", None)
    rep["verdict"] = "ok"
    rep["kernel_stats"] = _stats(res.complex)
    rep.update(_write_complex(args, res.complex, weights, res.k,
                              comments=[f"original budget {k}"]))
    return EXIT_YES


def cmd_kernelize(args, rep):
    return _kernel_common(args, rep, kernelize)


def cmd_compress(args, rep):
    return _kernel_common(args, rep, compress)


def cmd_gen_grid_tiling(args, rep):
    if not args.input:
        raise UsageError("a .gt input file is required")
    try:
        G = formats.read_gt(args.input)
    except FileNotFoundError:
        raise UsageError(f"no such file: {args.input}") from None
    R = generate_reduction(G)
    rep["stats"] = _stats(R.complex)
    rep["k_prime"] = R.k_prime
    order = R.ordered_triangles()
    rep.update(_write_complex(args, R.complex, order=order, comments=[f"grid tiling n={G.n} k={G.k}", f"k' {R.k_prime}"]))
    sidecar = {"n": G.n, "k": G.k, "k_prime": R.k_prime, "squares": R.square_ranges(),
               "back_sheet": {"first": 16 * G.size(), "count": len(R.back_sheet)}}
    if args.out:
        side = Path(args.out).with_suffix(".json")
        if side == Path(args.out):
            side = Path(args.out + ".squares.json")
        side.write_text(json.dumps(sidecar, sort_keys=True, indent=1) + "\n", encoding="utf-8")
        rep["sidecar"] = str(side)
    else:
        rep["squares"] = sidecar
    rep["verdict"] = "ok"
    return EXIT_YES


def cmd_solve_grid_tiling(args, rep):
    if not args.input:
        raise UsageError("a .gt input file is required")
    try:
        G = formats.read_gt(args.input)
    except FileNotFoundError:
        raise UsageError(f"no such file: {args.input}") from None
    sel = solve_grid_tiling(G)
    rep["params"] = {"n": G.n, "k": G.k}
    rep["verdict"] = "yes" if sel else "no"
    rep["certificate"] = ([{"i": i, "j": j, "a": a, "b": b} for (i, j), (a, b) in sorted(sel.items())]
                          if sel else None)
    return EXIT_YES if sel else EXIT_NO


def cmd_gen_random(args, rep):
    kind = args.kind
    if kind == "grid-tiling":
        G = random_grid_tiling(args.seed, args.n, args.grid_k, force=args.force)
        text = formats.format_gt(G)
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
            rep["written"] = args.out
        else:
            rep["gt"] = text
        rep["params"] = {"seed": args.seed, "n": args.n, "k": args.grid_k, "force": args.force}
        rep["verdict"] = "ok"
        return EXIT_YES
    if kind == "walled":
        K = random_walled_sphere(args.seed, sphere_triangles=max(4, args.triangles - args.triangles % 2))
    else:
        K = random_complex(args.seed, args.triangles, args.conflict_density)
    rep["params"] = {"seed": args.seed, "kind": kind, "triangles": args.triangles,
                     "conflict_density": args.conflict_density}
    rep["stats"] = _stats(K)
    rep.update(_write_complex(args, K, budget=args.k))
    rep["verdict"] = "ok"
    return EXIT_YES


def cmd_bench(args, rep):
    """Time the engines on a seeded random suite."""
    rng = random.Random(args.seed)
    rows = []
    for s in range(args.count):
        seed = rng.randrange(1 << 30)
        K = random_complex(seed, args.triangles, args.conflict_density)
        k = rng.choice((4, 6, 8))
        row = {"seed": seed, "triangles": len(K), "k": k}
        t0 = time.perf_counter()
        row["found"] = find_sphere_subcomplex(K, k).found
        row["backtracking_ms"] = round(1000 * (time.perf_counter() - t0), 3)
        inst = DeletionInstance(K, min(k, 4))
        for name, solver in (("branching", solve_branching), ("conflict", solve_conflict_param)):
            t0 = time.perf_counter()
            row[name] = solver(inst).feasible
            row[name + "_ms"] = round(1000 * (time.perf_counter() - t0), 3)
        rows.append(row)
    rep["params"] = {"seed": args.seed, "count": args.count, "triangles": args.triangles}
    rep["runs"] = rows
    rep["verdict"] = "ok"
    return EXIT_YES


COMMANDS = {
    "validate": cmd_validate,
    "stats": cmd_stats,
    "recognize": cmd_recognize,
    "components": cmd_components,
    "sd": cmd_sd,
    "find-sphere": cmd_find_sphere,
    "delete-to-sphere": cmd_delete_to_sphere,
    "kernelize": cmd_kernelize,
    "compress": cmd_compress,
    "gen-grid-tiling": cmd_gen_grid_tiling,
    "solve-grid-tiling": cmd_solve_grid_tiling,
    "gen-random": cmd_gen_random,
    "bench": cmd_bench,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="twosphere", description="2-sphere subcomplexes and triangle deletion")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("input", nargs="?")
    p.add_argument("--k", type=int)
    p.add_argument("--exact", action="store_true", help="sphere of exactly k triangles")
    p.add_argument("--engine", choices=sorted(set(SEARCH_ENGINES) | set(DELETION_ENGINES)))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--delta", type=float, default=DEFAULT_DELTA)
    p.add_argument("--max-trials", type=int)
    p.add_argument("--weighted", action="store_true", help="use triangle weights from the input")
    p.add_argument("--out")
    p.add_argument("--format", choices=("2sc", "json"), default="2sc")
    # generators
    p.add_argument("--kind", choices=("complex", "walled", "grid-tiling"), default="complex")
    p.add_argument("--triangles", type=int, default=14)
    p.add_argument("--conflict-density", type=float, default=0.5)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--grid-k", type=int, default=2)
    p.add_argument("--force", choices=("yes", "no"))
    p.add_argument("--count", type=int, default=20)
    return p


def _summary(rep: dict) -> str:
    bits = [rep.get("command") or "-", rep.get("verdict", "?")]
    st = rep.get("stats")
    if st:
        bits.append(f"V={st['vertices']} E={st['edges']} T={st['triangles']} chi={st['euler_characteristic']}")
    if "error" in rep:
        bits.append(rep["error"])
    bits.append(f"{rep.get('time_ms', 0):.1f} ms")
    return "twosphere: " + " | ".join(bits)


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    rep = {"report": 1, "argv": argv}
    t0 = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        rep["command"] = args.command
        code = COMMANDS[args.command](args, rep)
    except UsageError as exc:
        rep.setdefault("command", argv[0] if argv else None)
        rep["verdict"] = "error"
        rep["error"] = f"usage: {exc}"
        code = EXIT_USAGE
    except FormatError as exc:
        rep["verdict"] = "error"
        rep["error"] = str(exc)
        rep["error_line"] = exc.line
        code = EXIT_FORMAT
    except TwoSphereError as exc:
        rep["verdict"] = "error"
        rep["error"] = f"{type(exc).__name__}: {exc}"
        code = EXIT_USAGE
    rep["time_ms"] = round(1000 * (time.perf_counter() - t0), 3)
    rep["exit"] = code
    stdout.write(json.dumps(rep, sort_keys=True) + "\n")
    stderr.write(_summary(rep) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
