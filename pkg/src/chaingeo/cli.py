"""Command-line front end.

Every command is a pure function of its flags and input files: stdout is
byte-identical across runs (wall-clock timing goes to stderr).  Exit codes:
0 success, 2 when a mathematical cross-check fails (the tool doubles as a
verification harness), 64 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import blocking, quadric
from .algebra import parse_ring_spec, write_structure_file
from .chains import Geometry
from .errors import UsageError, VerificationError
from .incidence import Incidence

EXIT_OK = 0
EXIT_VIOLATION = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


# ---------------------------------------------------------------------------
# report rendering
# ---------------------------------------------------------------------------

def _fmt_value(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, (list, tuple)):
        return ",".join(_fmt_value(x) for x in v)
    return str(v)


def emit(report: dict, fmt: str, out=None):
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(report, indent=2) + "\n")
    else:
        for key, val in report.items():
            out.write(f"{key}={_fmt_value(val)}\n")


def _digits(A, element):
    ds = A.coords(element)
    if A.q <= 10:
        return "".join(str(c) for c in ds)
    return ",".join(str(c) for c in ds)


def _point_str(A, pair):
    return f"{_digits(A, pair[0])} {_digits(A, pair[1])}"


def _parse_ids(text):
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"bad id list {text!r}") from None


def _geometry(args) -> Geometry:
    return Geometry(parse_ring_spec(args.ring).build())


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_info(args):
    G = _geometry(args)
    A = G.algebra
    lam = G.lambda_table()
    report = {
        "ring": A.label,
        "v": G.v,
        "d": A.dim,
        "q": A.q,
        "rstar": A.r_star,
        "local": A.is_local,
        "delta": A.delta,
        "normalizer": A.normalizer_order(),
        "lambda0": lam[0],
        "lambda1": lam[1],
        "lambda2": lam[2],
        "lambda3": lam[3],
        "chains": len(G.chains),
        "bound_trivial": blocking.bound_trivial(G),
        "bound_general": blocking.bound_general(A.q, A.dim, A.r_star),
        "bound_glynn": (blocking.glynn_bound(A.q, A.dim, A.delta)
                        if A.is_local else None),
    }
    emit(report, args.format)
    return EXIT_OK


def cmd_points(args):
    G = _geometry(args)
    if args.format == "json":
        emit({"ring": G.algebra.label, "v": G.v,
              "points": [_point_str(G.algebra, p) for p in G.points]}, "json")
    else:
        print(f"v={G.v}")
        for p in G.points:
            print(_point_str(G.algebra, p))
    return EXIT_OK


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


def cmd_chains(args):
    G = _geometry(args)
    fp, close = _open_out(args.out)
    try:
        G.incidence().write(fp)
    finally:
        if close:
            fp.close()
    return EXIT_OK


def cmd_bounds(args):
    G = _geometry(args)
    A = G.algebra
    report = {
        "ring": A.label,
        "bound_trivial": blocking.bound_trivial(G),
        "bound_general": blocking.bound_general(A.q, A.dim, A.r_star),
        "bound_glynn": (blocking.glynn_bound(A.q, A.dim, A.delta)
                        if A.is_local else None),
    }
    if A.is_local and A.delta == 0 and A.dim in (2, 3):
        report["published_moebius"] = blocking.moebius_published_bounds(A.q)[A.dim]
    emit(report, args.format)
    return EXIT_OK


def cmd_glynn(args):
    report = {
        "q": args.q, "d": args.d, "delta": args.delta,
        "bound": blocking.glynn_bound(args.q, args.d, args.delta),
    }
    if args.moebius3:
        rows, crossovers = blocking.moebius3_comparison(args.moebius3)
        report["scan"] = [f"q={r['q']}:glynn={r['glynn']}:published={r['published']}"
                          for r in rows]
        for k, q0 in crossovers.items():
            report[f"stable_excess_{k}_from_q"] = q0
    emit(report, args.format)
    return EXIT_OK


def _load_incidence(path) -> Incidence:
    with open(path, encoding="utf-8") as fh:
        return Incidence.read(fh.read())


def cmd_search(args):
    if args.incidence:
        inc = _load_incidence(args.incidence)
        label = args.incidence
        size, witness = blocking.min_blocking_incidence(inc, cap=args.max_size)
        report = {"incidence": label, "v": inc.v, "blocks": inc.b}
        solver_all = (blocking._HittingSetSolver(inc) if args.all_minima else None)
    else:
        G = _geometry(args)
        size, witness = blocking.min_blocking(G, cap=args.max_size)
        report = {"ring": G.algebra.label, "v": G.v, "blocks": len(G.chains)}
        solver_all = (blocking._HittingSetSolver(G.incidence())
                      if args.all_minima else None)
    if size is None:
        report["min"] = None
        report["found"] = False
    else:
        report["min"] = size
        report["witness"] = list(witness)
        if solver_all is not None:
            minima = solver_all.all_of_size(size)
            report["minima_count"] = len(minima)
            report["minima"] = [",".join(str(i) for i in s) for s in minima]
    emit(report, args.format)
    return EXIT_OK


def cmd_verify(args):
    ids = _parse_ids(args.set)
    if args.incidence:
        inc = _load_incidence(args.incidence)
        rep = blocking.is_blocking_incidence(inc, ids)
        report = {"incidence": args.incidence}
    else:
        G = _geometry(args)
        rep = blocking.is_blocking(G, ids)
        report = {"ring": G.algebra.label}
    report.update({
        "set": list(rep.set),
        "x": rep.distribution.x,
        "blocking": rep.is_blocking,
        "first_missed_chain": rep.first_missed_chain,
        "distribution": rep.distribution.n,
    })
    for name, (lhs, relation, rhs, ok) in rep.checks.items():
        report[f"check_{name}"] = f"{lhs}{relation}{rhs}:{'ok' if ok else 'FAIL'}"
    if rep.bounds != (None, None, None):
        report["bound_trivial"], report["bound_general"], report["bound_glynn"] = rep.bounds
    emit(report, args.format)
    return EXIT_OK if rep.checks == {} or rep.all_checks_pass() else EXIT_VIOLATION


def cmd_lift(args):
    G = _geometry(args)
    ids = _parse_ids(args.set)
    rep = blocking.lift_blocking(G, ids)
    report = {
        "ring": G.algebra.label,
        "residue_points": rep.residue_points,
        "x": rep.x,
        "delta": rep.delta,
        "lifted_size": len(rep.lifted),
        "lifted": list(rep.lifted),
        "blocking": rep.blocking.is_blocking,
    }
    emit(report, args.format)
    return EXIT_OK


def cmd_quadric(args):
    G = Geometry(parse_ring_spec(f"gf({args.q}) x gf({args.q})").build())
    if args.emit == "points":
        report = {"q": args.q, "points": [" ".join(str(c) for c in quadric.psi(G, i))
                                          for i in range(G.v)]}
        emit(report, args.format)
        return EXIT_OK
    if args.emit == "rulings":
        fam_a, fam_b = quadric.ruling_lines(G)
        report = {"q": args.q,
                  "family_a": [",".join(str(i) for i in line) for line in fam_a],
                  "family_b": [",".join(str(i) for i in line) for line in fam_b]}
        emit(report, args.format)
        return EXIT_OK
    rep = quadric.model_check_all(G)
    report = {"q": rep.q, "points": rep.points, "chains": rep.chains,
              "nontangent_planes": rep.nontangent_planes}
    for name, ok in rep.checks.items():
        report[f"check_{name}"] = "pass" if ok else "FAIL"
    emit(report, args.format)
    return EXIT_OK if all(rep.checks.values()) else EXIT_VIOLATION


def cmd_export(args):
    G = _geometry(args)
    fp, close = _open_out(args.out)
    try:
        if args.what == "algebra":
            write_structure_file(G.algebra, fp)
        elif args.what == "chains":
            G.incidence().write(fp)
        else:
            fp.write(f"v={G.v}\n")
            for p in G.points:
                fp.write(_point_str(G.algebra, p) + "\n")
    finally:
        if close:
            fp.close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# wiring
# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="chaingeo",
                     description="finite chain geometries: points, chains, "
                                 "blocking sets, quadric model")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--jobs", type=int, default=1,
                       help="worker count; accepted for compatibility, the "
                            "output is identical for every value")
        return p

    p = add("info", cmd_info, help="point count, incidence constants, bounds")
    p.add_argument("--ring", required=True)

    p = add("points", cmd_points, help="canonical point representatives")
    p.add_argument("--ring", required=True)

    p = add("chains", cmd_chains, help="write the chain list as an incidence file")
    p.add_argument("--ring", required=True)
    p.add_argument("--out", default=None)

    p = add("bounds", cmd_bounds, help="blocking-set lower bounds")
    p.add_argument("--ring", required=True)

    p = add("glynn", cmd_glynn, help="cubic lower bound for local parameters")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--moebius3", type=int, default=0, metavar="QMAX",
                   help="also scan glynn(q,3,0) against the published values")

    p = add("search", cmd_search, help="exact minimum blocking set")
    p.add_argument("--ring")
    p.add_argument("--incidence", metavar="PATH")
    p.add_argument("--max-size", type=int, default=None, dest="max_size")
    p.add_argument("--all-minima", action="store_true", dest="all_minima")

    p = add("verify", cmd_verify, help="blocking certificate for a point set")
    p.add_argument("--ring")
    p.add_argument("--incidence", metavar="PATH")
    p.add_argument("--set", required=True)

    p = add("lift", cmd_lift, help="lift a residue-geometry blocking set")
    p.add_argument("--ring", required=True)
    p.add_argument("--set", required=True,
                   help="point ids in the residue geometry")

    p = add("quadric", cmd_quadric, help="hyperbolic-quadric model checks")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--check", choices=("all",), default="all")
    p.add_argument("--emit", choices=("points", "rulings"), default=None)

    p = add("export", cmd_export, help="write algebra/chain/point files")
    p.add_argument("--ring", required=True)
    p.add_argument("--what", choices=("algebra", "chains", "points"),
                   required=True)
    p.add_argument("--out", default=None)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.fn in (cmd_search, cmd_verify):
        if bool(args.ring) == bool(args.incidence):
            raise UsageError("give exactly one of --ring or --incidence")
    t0 = time.monotonic()
    code = args.fn(args)
    print(f"# wall {time.monotonic() - t0:.3f}s", file=sys.stderr)
    return code


def main(argv=None) -> int:
    try:
        return run(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationError as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
