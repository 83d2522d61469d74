"""Command-line entry point.

Subcommands: compute, family, sweep, search, verify, limits.  Output is JSON
(default) or CSV on stdout, or atomically written to ``--output``.  With
``--plot PATH`` a matplotlib figure of the same data is also rendered.

Exit status: 0 success, 1 usage error, 2 invalid polygon or parameter,
3 a Violated record was found (verify only).
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from itertools import product

import numpy as np

from . import __version__, families, io, lab
from .cyclic import build_cyclic, cyclic_area
from .errors import IsopolyError
from .functionals import E_OVER_PI, corollary2_check, phi_regular, report
from .geometry import SideList, Tolerance, VertexPolygon, shoelace_area
from .search import Objective, search_counterexample

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2, 3

log = logging.getLogger("isopoly")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- argument parsing -------------------------------------------------------


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _grid(text: str) -> tuple[str, tuple[float, ...]]:
    """``name=start:stop:count`` (inclusive linspace) or ``name=v1,v2,...``."""
    name, sep, rhs = text.partition("=")
    if not sep or not name:
        raise argparse.ArgumentTypeError(f"grid must look like name=start:stop:count, got {text!r}")
    try:
        if ":" in rhs:
            start, stop, count = rhs.split(":")
            count = int(count)
            if count < 1:
                raise ValueError
            values = tuple(float(v) for v in np.linspace(float(start), float(stop), count))
        else:
            values = tuple(float(v) for v in rhs.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid specification {text!r}") from None
    return name.strip(), values


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("output")
    g.add_argument("--format", choices=("json", "csv"), default="json")
    g.add_argument("--output", "-o", metavar="PATH", help="write here (atomically) instead of stdout")
    g.add_argument("--plot", metavar="PATH", help="also render a figure to PATH (.png, .pdf, .svg)")
    g.add_argument("--verbose", "-v", action="store_true", help="run metadata on stderr")
    t = p.add_argument_group("tolerances")
    t.add_argument("--rel-tol", type=float, default=1e-12)
    t.add_argument("--abs-tol", type=float, default=1e-12)
    t.add_argument("--max-iter", type=int, default=200)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = _Parser(prog="isopoly", description="Isoperimetric functionals of polygons.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", parents=[common], help="functionals of one polygon")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--sides", type=_floats, metavar="A1,A2,...")
    src.add_argument("--vertices", type=_floats, metavar="X1,Y1,...", help="sides and shoelace area from vertices")
    area = p.add_mutually_exclusive_group()
    area.add_argument("--area", type=float, help="pair the sides with this area")
    area.add_argument("--cyclic", action="store_true", help="use the cyclic area (default for --sides)")

    p = sub.add_parser("family", parents=[common], help="closed-form family evaluation")
    fam = p.add_mutually_exclusive_group(required=True)
    fam.add_argument("--macnab", type=_floats, metavar="N,A,B")
    fam.add_argument("--levy", type=_floats, metavar="ALPHA[,THETA]")
    fam.add_argument("--perturbed", type=_floats, metavar="N,EPS[,R]")
    fam.add_argument("--regular", type=_floats, metavar="N[,R]")
    p.add_argument("--grid", type=_grid, action="append", default=[], metavar="NAME=START:STOP:COUNT")

    p = sub.add_parser("sweep", parents=[common], help="evaluate a population of cyclic polygons")
    what = p.add_mutually_exclusive_group(required=True)
    what.add_argument("--family", choices=sorted(lab.FAMILY_DEFAULTS))
    what.add_argument("--random", type=_floats, metavar="N,COUNT,SEED")
    p.add_argument("--grid", type=_grid, action="append", default=[], metavar="NAME=START:STOP:COUNT")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("search", parents=[common], help="Nelder-Mead counterexample search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--objective", choices=[o.value for o in Objective], required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=2000)
    p.add_argument("--trace", action="store_true", help="include every evaluated margin")

    p = sub.add_parser("verify", parents=[common], help="summarize a saved sweep")
    p.add_argument("--input", required=True, metavar="PATH")

    p = sub.add_parser("limits", parents=[common], help="phi0(n) and its gap to e/pi")
    p.add_argument("--n-max", type=int, default=64)
    return ap


# -- subcommands ------------------------------------------------------------


def _emit(args, text: str) -> None:
    if args.output:
        io.write_atomic(args.output, text)
        log.info("wrote %s", args.output)
    else:
        sys.stdout.write(text)


def _plot(args, fn, *a) -> None:
    if args.plot:
        from . import plotting

        path = getattr(plotting, fn)(*a, args.plot)
        log.info("figure %s", path)


def cmd_compute(args, tol: Tolerance) -> int:
    extra = {}
    if args.vertices is not None:
        poly = VertexPolygon.from_flat(args.vertices)
        s = SideList(poly.side_lengths())
        if args.cyclic:
            A, source = None, "cyclic"
        else:
            A, source = (args.area, "given") if args.area is not None else (shoelace_area(poly, tol), "shoelace")
    else:
        s = SideList(tuple(args.sides))
        A, source = (args.area, "given") if args.area is not None else (None, "cyclic")
    if A is None:
        c = build_cyclic(s, tol)
        A = cyclic_area(c)
        extra = {"R": c.R, "center": str(c.center)}
    rec = lab.record_from_report(0, f"compute({source})", s.lengths, report(s, A), extra.get("center"))
    if args.format == "csv":
        _emit(args, io.records_to_csv([rec]))
        return EXIT_OK
    cor = corollary2_check(s, A)
    out = {
        "sides": list(s.lengths),
        "area_source": source,
        **extra,
        "report": rec.report.as_dict(),
        "theorem1_case": rec.theorem1_case,
        "verdicts": rec.verdicts,
        "margins": rec.margins,
        "corollary2": {"in_scope": cor.in_scope, "lhs": cor.lhs, "rhs": cor.rhs, "margin": cor.margin},
    }
    _emit(args, io.dumps(out))
    return EXIT_OK


_FAMILY_PARAMS = {
    "macnab": ("n", "a", "b"),
    "perturbed": ("n", "eps", "R"),
    "regular": ("n", "R"),
    "levy": ("alpha",),
    "levy2": ("alpha", "theta"),
}


def _family_point(kind: str, p: dict) -> families.FamilyPoint:
    if kind == "macnab":
        return families.macnab(int(round(p["n"])), p["a"], p["b"])
    if kind == "perturbed":
        return families.perturbed_regular(int(round(p["n"])), p["eps"], p.get("R", 1.0))
    if kind == "regular":
        return families.regular(int(round(p["n"])), p.get("R", 1.0))
    if kind == "levy":
        return families.levy_pi(p["alpha"])
    return families.levy_pi2(p["alpha"], p["theta"])


def _family_dict(fp: families.FamilyPoint) -> dict:
    d = fp.as_dict()
    if fp.family is families.Family.PERTURBED:
        d["prediction_deltas"] = {
            "A": fp.A - fp.aux["predicted_A"],
            "L": fp.L - fp.aux["predicted_L"],
            "ratio": fp.aux["ratio_error"],
        }
    return d


def cmd_family(args, tol: Tolerance) -> int:
    for kind in ("macnab", "perturbed", "regular", "levy"):
        values = getattr(args, kind)
        if values is not None:
            break
    if kind == "levy" and len(values) == 2:
        kind = "levy2"
    names = _FAMILY_PARAMS[kind]
    required = 1 if kind in ("regular", "levy") else (2 if kind == "perturbed" else len(names))
    if not (required <= len(values) <= len(names)):
        raise UsageError(f"--{kind.rstrip('2')} expects {','.join(names)}")
    base = dict(zip(names, values))
    for name, _ in args.grid:
        if name not in names:
            raise UsageError(f"grid parameter {name!r} is not one of {', '.join(names)}")

    if not args.grid:
        fp = _family_point(kind, base)
        if args.format == "csv":
            row = _flat_family(fp)
            _emit(args, io.rows_to_csv(list(row), [row]))
        else:
            _emit(args, io.dumps(_family_dict(fp)))
        return EXIT_OK

    grid_names = [n for n, _ in args.grid]
    rows, points = [], []
    for combo in product(*(v for _, v in args.grid)):
        p = {**base, **dict(zip(grid_names, combo))}
        try:
            fp = _family_point(kind, p)
        except IsopolyError as exc:
            rows.append({**p, "error": f"{type(exc).__name__}: {exc}"})
            points.append({"params": p, "error": rows[-1]["error"]})
            continue
        rows.append({**_flat_family(fp), "error": None})
        points.append(_family_dict(fp))
    if args.format == "csv":
        cols = list(names)
        for r in rows:
            cols += [c for c in r if c not in cols]
        cols.remove("error")
        _emit(args, io.rows_to_csv(cols + ["error"], rows))
    else:
        _emit(args, io.dumps({"family": kind, "grid": dict(args.grid), "points": points}))
    x = grid_names[0]
    series = {k: [r.get(k) for r in rows] for k in ("phi", "ratio", "nu")}
    _plot(args, "plot_family_grid", x, [r[x] for r in rows], series)
    return EXIT_OK


def _flat_family(fp: families.FamilyPoint) -> dict:
    row = {k: v for k, v in fp.params.items()}
    row.update(family=fp.family.value, L=fp.L, A=fp.A, Lhat=fp.Lhat, phi=fp.phi, ratio=fp.ratio, nu=fp.nu)
    row.update(fp.aux)
    return row


def cmd_sweep(args, tol: Tolerance) -> int:
    if args.random is not None:
        if args.grid:
            raise UsageError("--grid applies to --family sweeps only")
        if len(args.random) != 3 or any(v != int(v) for v in args.random):
            raise UsageError("--random expects integers N,COUNT,SEED")
        n, count, seed = (int(v) for v in args.random)
        if n < 3 or count < 0:
            raise UsageError("--random needs N >= 3 and COUNT >= 0")
        spec = lab.RandomSweep(n, count, seed)
    else:
        allowed = set(lab.FAMILY_DEFAULTS[args.family])
        for name, _ in args.grid:
            if name not in allowed:
                raise UsageError(f"grid parameter {name!r} is not one of {', '.join(sorted(allowed))}")
        spec = lab.GridSweep(args.family, tuple(args.grid))
    t0 = time.perf_counter()
    records = lab.sweep(spec, tol, workers=max(1, args.workers))
    log.info("%d records in %.3fs", len(records), time.perf_counter() - t0)
    if args.format == "csv":
        _emit(args, io.records_to_csv(records))
    else:
        _emit(args, io.dumps({"records": [io.record_dict(r) for r in records]}))
    _plot(args, "plot_sweep", records)
    return EXIT_OK


def cmd_search(args, tol: Tolerance) -> int:
    if args.n < 3:
        raise UsageError("--n must be at least 3")
    if args.budget < 1:
        raise UsageError("--budget must be positive")
    res = search_counterexample(args.n, args.objective, args.seed, args.budget, tol)
    best = np.maximum.accumulate(res.trace) if res.trace else np.array([])
    if args.format == "csv":
        rows = [{"evaluation": i, "margin": m, "best": float(b)} for i, (m, b) in enumerate(zip(res.trace, best))]
        _emit(args, io.rows_to_csv(("evaluation", "margin", "best"), rows))
    else:
        out = {
            "objective": res.objective_name,
            "n": args.n,
            "seed": args.seed,
            "budget": args.budget,
            "best_sides": list(res.best_sides.lengths),
            "best_margin": res.best_margin,
            "verdict": lab.verdict_of(-res.best_margin),
            "evaluations": res.evaluations,
            "converged": res.converged,
            "restarts": res.restarts,
        }
        if args.trace:
            out["trace"] = list(res.trace)
        _emit(args, io.dumps(out))
    _plot(args, "plot_family_grid", "evaluation", list(range(len(best))), {"best margin": list(best)})
    return EXIT_OK


def cmd_verify(args, tol: Tolerance) -> int:
    try:
        records = io.load_records(args.input)
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot parse {args.input}: {exc}") from None
    summary = lab.verify_corpus(records)
    if args.format == "csv":
        rows = []
        for c in lab.CONJECTURES:
            w = summary.worst.get(c, {})
            rows.append({"conjecture": c, **summary.verdicts[c], "worst_margin": w.get("margin"), "worst_trial": w.get("trial_id")})
        cols = ["conjecture"] + [v.value for v in lab.Verdict] + ["worst_margin", "worst_trial"]
        _emit(args, io.rows_to_csv(cols, rows))
    else:
        _emit(args, io.dumps(summary.as_dict()))
    _plot(args, "plot_sweep", [r for r in records if r.ok])
    return EXIT_OK if summary.success else EXIT_VIOLATION


def cmd_limits(args, tol: Tolerance) -> int:
    if args.n_max < 3:
        raise UsageError("--n-max must be at least 3")
    rows = [{"n": n, "phi0": phi_regular(n), "gap": phi_regular(n) - E_OVER_PI} for n in range(3, args.n_max + 1)]
    if args.format == "csv":
        _emit(args, io.rows_to_csv(("n", "phi0", "gap"), rows))
    else:
        _emit(args, io.dumps({"limit": E_OVER_PI, "rows": rows}))
    _plot(args, "plot_limits", rows)
    return EXIT_OK


COMMANDS = {
    "compute": cmd_compute,
    "family": cmd_family,
    "sweep": cmd_sweep,
    "search": cmd_search,
    "verify": cmd_verify,
    "limits": cmd_limits,
}


def run_cli(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        tol = Tolerance(args.rel_tol, args.abs_tol, args.max_iter)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"isopoly: {exc}", file=sys.stderr)
        return EXIT_USAGE

    _configure_logging(args.verbose)
    log.info("isopoly %s: %s", __version__, " ".join(argv))
    try:
        return COMMANDS[args.command](args, tol)
    except UsageError as exc:
        print(f"isopoly {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IsopolyError as exc:
        print(f"isopoly {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"isopoly {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _configure_logging(verbose: bool) -> None:
    if log.handlers:
        for h in list(log.handlers):
            log.removeHandler(h)
    h = logging.StreamHandler(sys.stderr)
    h.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    log.addHandler(h)
    log.setLevel(logging.INFO if verbose else logging.WARNING)
    log.propagate = False


def main() -> int:
    return run_cli()


if __name__ == "__main__":
    raise SystemExit(main())
