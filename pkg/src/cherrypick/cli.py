"""Command-line interface: solve, verify, bench, dm, robots2, generate.

Every command prints line-delimited JSON records.  Exit codes: 0 ok,
1 verification mismatch or benchmark slope outside the band, 2 input
parse error, 3 size guard violated.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Callable, Optional, Sequence

import numpy as np

from . import bench as bench_mod
from .disjoint import solve_cp2, solve_cp2_fast
from .extensions import (
    UNREACHABLE,
    TwoRobotInstance,
    reduce_diamond_mine,
    solve_cp2_extended,
    solve_diamond_mine,
    solve_two_robots,
)
from .grid import NEG_INF, Grid, StepProfile, generate_grid, path_sum
from .oracle import EXHAUSTIVE_MAX, oracle_cubic, oracle_exhaustive
from .suurballe import solve_cp2_via_suurballe

EXIT_OK, EXIT_MISMATCH, EXIT_PARSE, EXIT_GUARD = 0, 1, 2, 3


class ParseError(ValueError):
    pass


class GuardError(ValueError):
    pass


# ---------------------------------------------------------------- grid files

def _token(tok: str):
    if tok == "-inf":
        return NEG_INF
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"bad cell token {tok!r}") from None


def parse_plain(text: str) -> tuple[Grid, Optional[StepProfile]]:
    """One row per line, whitespace-separated integers or -inf; '#' comments;
    an optional line 'd: w1 w2 ...' gives the step profile."""
    rows = []
    steps = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("d:"):
            try:
                steps = StepProfile(tuple(int(x) for x in line[2:].split()))
            except ValueError:
                raise ParseError(f"bad step profile line {raw!r}") from None
            continue
        rows.append([_token(t) for t in line.split()])
    try:
        g = Grid(rows)
    except ValueError as e:
        raise ParseError(str(e)) from None
    return g, steps


def parse_structured(text: str) -> tuple[Grid, Optional[StepProfile]]:
    """JSON object {"H": int, "W": int, "d": [..] (optional), "cells": [[..], ..]}."""
    try:
        obj = json.loads(text)
        cells = obj["cells"]
        H, W = int(obj["H"]), int(obj["W"])
    except (ValueError, KeyError, TypeError) as e:
        raise ParseError(f"bad structured grid: {e}") from None
    rows = []
    for r in cells:
        row = []
        for v in r:
            if isinstance(v, str):
                row.append(_token(v))
            elif isinstance(v, int) and not isinstance(v, bool):
                row.append(v)
            else:
                raise ParseError(f"bad cell value {v!r}")
        rows.append(row)
    try:
        g = Grid(rows)
    except ValueError as e:
        raise ParseError(str(e)) from None
    if g.shape != (H, W):
        raise ParseError(f"declared {H}x{W} but cells are {g.H}x{g.W}")
    steps = None
    if obj.get("d") is not None:
        try:
            steps = StepProfile(tuple(int(x) for x in obj["d"]))
        except (TypeError, ValueError):
            raise ParseError("bad step profile") from None
    return g, steps


def serialize(g: Grid, fmt: str = "plain", steps: Optional[StepProfile] = None) -> str:
    if fmt == "plain":
        lines = []
        if steps is not None:
            lines.append("d: " + " ".join(map(str, steps.widths)))
        lines += [" ".join(str(v) for v in row) for row in g.rows()]
        return "\n".join(lines) + "\n"
    obj = {
        "H": g.H,
        "W": g.W,
        "cells": [[v if isinstance(v, int) else "-inf" for v in row] for row in g.rows()],
    }
    if steps is not None:
        obj["d"] = list(steps.widths)
    return json.dumps(obj) + "\n"


def load_grid(path: str, fmt: str) -> tuple[Grid, Optional[StepProfile]]:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from None
    parse = parse_plain if fmt == "plain" else parse_structured
    g, steps = parse(text)
    if steps is not None:
        try:
            steps.check(g)
        except ValueError as e:
            raise ParseError(str(e)) from None
    return g, steps


# ---------------------------------------------------------------- solvers

def _cell(v):
    return "-inf" if v is NEG_INF else int(v)


def _guard_small(g: Grid) -> None:
    if g.H > EXHAUSTIVE_MAX or g.W > EXHAUSTIVE_MAX:
        raise GuardError(f"exhaustive enumeration limited to {EXHAUSTIVE_MAX}x{EXHAUSTIVE_MAX}")


def _exhaustive(g: Grid, steps=None):
    _guard_small(g)
    return oracle_exhaustive(g, False, steps)


def _suurballe(g: Grid):
    if g.has_neg_inf():
        raise GuardError("reduction requires finite grid")
    return solve_cp2_via_suurballe(g)


# name -> (callable(grid, steps) -> total or Cp2Result)
SOLVERS: dict[str, Callable] = {
    "linear": lambda g, steps=None: solve_cp2(g),
    "fast": lambda g, steps=None: solve_cp2_fast(g),
    "extended": lambda g, steps=None: solve_cp2_extended(g, steps),
    "cubic": lambda g, steps=None: oracle_cubic(g),
    "exhaustive": _exhaustive,
    "suurballe": lambda g, steps=None: _suurballe(g),
}


def _emit(record: dict) -> None:
    print(json.dumps(record, sort_keys=True))


def cmd_solve(args) -> int:
    g, steps = load_grid(args.input, args.format)
    if steps is not None and args.algo not in ("extended", "exhaustive"):
        if not steps.is_unit():
            raise ParseError(f"algo {args.algo} supports only unit steps")
    t0 = time.perf_counter()
    if args.algo == "linear" and args.debug_four_case:
        out = solve_cp2(g, four_case=True)
    else:
        out = SOLVERS[args.algo](g, steps)
    elapsed = time.perf_counter() - t0
    rec = {"cmd": "solve", "algo": args.algo, "H": g.H, "W": g.W, "elapsed_s": elapsed}
    if hasattr(out, "total"):
        rec["total"] = _cell(out.total)
        if args.witness and out.left_path is not None:
            rec["left"] = list(out.left_path.cols)
            rec["right"] = list(out.right_path.cols)
    else:
        rec["total"] = _cell(out)
    _emit(rec)
    return EXIT_OK


def _total(x):
    return x.total if hasattr(x, "total") else x


def verify_instance(g: Grid, nonneg: bool) -> dict:
    """Run every applicable solver on g; returns name -> total (as JSON value)."""
    results = {}
    lin = SOLVERS["linear"](g)
    results["linear"] = _cell(lin.total)
    if lin.left_path is not None:
        results["linear-witness"] = _cell(path_sum(g, lin.left_path) + path_sum(g, lin.right_path))
    results["fast"] = _cell(_total(SOLVERS["fast"](g)))
    results["cubic"] = _cell(_total(SOLVERS["cubic"](g)))
    if nonneg:
        results["suurballe"] = _cell(_total(SOLVERS["suurballe"](g)))
    if g.H <= EXHAUSTIVE_MAX and g.W <= EXHAUSTIVE_MAX:
        results["exhaustive"] = _cell(_total(SOLVERS["exhaustive"](g)))
    return results


def cmd_verify(args) -> int:
    if args.hmax < 2 or args.wmax < 2 or args.lo > args.hi or args.count < 0:
        raise ParseError("verify needs hmax, wmax >= 2, lo <= hi, count >= 0")
    nonneg = args.lo >= 0
    for k in range(args.count):
        rng = np.random.default_rng([args.seed, k])
        h = int(rng.integers(2, args.hmax + 1))
        w = int(rng.integers(2, args.wmax + 1))
        inst_seed = int(rng.integers(0, 2**31))
        g = generate_grid(h, w, args.lo, args.hi, inst_seed)
        res = verify_instance(g, nonneg)
        if len(set(map(str, res.values()))) != 1:
            _emit({
                "cmd": "verify", "status": "mismatch", "instance": k,
                "seed": args.seed, "instance_seed": inst_seed, "H": h, "W": w,
                "lo": args.lo, "hi": args.hi, "results": res,
                "grid": [[_cell(v) for v in r] for r in g.rows()],
            })
            return EXIT_MISMATCH
    _emit({"cmd": "verify", "status": "all agree", "count": args.count, "seed": args.seed})
    return EXIT_OK


def cmd_bench(args) -> int:
    sizes = [int(x) for x in args.sizes.split(",") if x.strip()]
    if not sizes or min(sizes) < 64:
        raise ParseError("bench sizes must be >= 64")
    rep = bench_mod.run_bench(sizes, reps=args.reps, seed=args.seed, algo=args.algo,
                              warmup=args.warmup, band=(args.slope_min, args.slope_max),
                              workload=args.workload)
    for p in rep.points:
        _emit({"cmd": "bench", "algo": rep.algo, "N": p.N, "cells": p.cells,
               "seconds": p.seconds, "checksum": p.checksum})
    _emit({"cmd": "bench", "algo": rep.algo, "workload": rep.workload,
           "slope": rep.slope if rep.slope is not None else "undefined",
           "band": list(rep.band), "within_band": rep.within_band})
    return EXIT_MISMATCH if rep.within_band is False else EXIT_OK


def cmd_dm(args) -> int:
    g, _ = load_grid(args.input, args.format)
    try:
        reduced = reduce_diamond_mine(g)
        total = solve_diamond_mine(g)
    except ValueError as e:
        raise ParseError(str(e)) from None
    rec = {"cmd": "dm", "N": g.H, "total": total, "reachable": reduced is not UNREACHABLE}
    if reduced is not UNREACHABLE:
        rec["reduced_shape"] = list(reduced.shape)
    _emit(rec)
    return EXIT_OK


def cmd_robots2(args) -> int:
    g, _ = load_grid(args.input, args.format)
    try:
        inst = TwoRobotInstance(g, args.j1, args.j2)
    except ValueError as e:
        raise ParseError(str(e)) from None
    _emit({"cmd": "robots2", "j1": args.j1, "j2": args.j2, "total": _cell(solve_two_robots(inst))})
    return EXIT_OK


def cmd_generate(args) -> int:
    try:
        g = generate_grid(args.h, args.w, args.lo, args.hi, args.seed)
    except ValueError as e:
        raise ParseError(str(e)) from None
    sys.stdout.write(serialize(g, args.format))
    return EXIT_OK


# ---------------------------------------------------------------- entry point

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cherrypick", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    def grid_input(sp):
        sp.add_argument("--input", default="-", help="grid file, '-' for stdin")
        sp.add_argument("--format", choices=("plain", "structured"), default="plain")

    sp = sub.add_parser("solve", help="solve one grid")
    grid_input(sp)
    sp.add_argument("--algo", choices=sorted(SOLVERS), default="linear")
    sp.add_argument("--witness", action="store_true", help="emit both paths")
    sp.add_argument("--debug-four-case", action="store_true",
                    help="use the three-term case split for Ml/Mr")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("verify", help="cross-check solvers on random grids")
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--hmax", type=int, default=10)
    sp.add_argument("--wmax", type=int, default=10)
    sp.add_argument("--lo", type=int, default=0)
    sp.add_argument("--hi", type=int, default=9)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bench", help="measure scaling on N x N grids")
    sp.add_argument("--sizes", default="256,512,1024,2048")
    sp.add_argument("--reps", type=int, default=5)
    sp.add_argument("--warmup", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--algo", choices=sorted(bench_mod.RUNNERS), default="linear")
    sp.add_argument("--workload", choices=sorted(bench_mod.WORKLOADS), default="ridge")
    sp.add_argument("--slope-min", type=float, default=0.85)
    sp.add_argument("--slope-max", type=float, default=1.20)
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("dm", help="Diamond Mine round trip")
    grid_input(sp)
    sp.set_defaults(func=cmd_dm)

    sp = sub.add_parser("robots2", help="two robots from arbitrary top-row columns")
    grid_input(sp)
    sp.add_argument("--j1", type=int, required=True)
    sp.add_argument("--j2", type=int, required=True)
    sp.set_defaults(func=cmd_robots2)

    sp = sub.add_parser("generate", help="print a random grid")
    sp.add_argument("--h", type=int, required=True)
    sp.add_argument("--w", type=int, required=True)
    sp.add_argument("--lo", type=int, default=0)
    sp.add_argument("--hi", type=int, default=9)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--format", choices=("plain", "structured"), default="plain")
    sp.set_defaults(func=cmd_generate)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except GuardError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
