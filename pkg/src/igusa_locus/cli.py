"""Command-line entry point: ``igusa-locus {analyze,tabulate,polarize,hm,verify}``.

Exit codes: 0 success, 2 bad input, 3 I/O failure, 4 search exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

from . import hm_families, locus, polarization, quaternion, verify
from .arith import QuadExtVal

EXIT_OK, EXIT_INPUT, EXIT_IO, EXIT_EXHAUSTED = 0, 2, 3, 4

CSV_COLUMNS = ("D", "h_tilde", "pi0", "twisting", "twist_divisors", "rho_min", "rho_max", "rho_exact", "irreducible")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class Config:
    search_bound: int | None = None  # None means 8 * D
    catalog_path: str | None = None
    output_format: str | None = None
    height_bound: int = 50
    jobs: int = 1
    out: str | None = None

    def __post_init__(self) -> None:
        for name in ("search_bound", "height_bound", "jobs"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise CliError(f"--{name.replace('_', '-')} must be positive, got {value}", EXIT_INPUT)

    def bound_for(self, D: int) -> int:
        return self.search_bound if self.search_bound is not None else 8 * D

    def catalog(self) -> quaternion.OrderCatalog:
        path = self.catalog_path or os.environ.get(quaternion.CATALOG_ENV) or quaternion.DEFAULT_CATALOG
        try:
            return quaternion.OrderCatalog.load(path)
        except OSError as exc:
            raise CliError(f"cannot read catalog {path}: {exc.strerror}", EXIT_IO) from exc
        except (ValueError, KeyError, TypeError) as exc:
            raise CliError(f"invalid catalog {path}: {exc}", EXIT_INPUT) from exc


def _bool(x: bool) -> str:
    return "true" if x else "false"


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# --------------------------------------------------------------------------
# rendering


def render_report_text(rep: locus.LocusReport) -> str:
    lines = [
        f"D: {rep.D}",
        f"primes: {' '.join(map(str, rep.primes))}",
        f"h_tilde: {rep.h_tilde}",
        f"pi0: {rep.pi0}",
        f"twisting: {_bool(rep.twisting)}",
        f"twist_divisors: {' '.join(map(str, rep.twist_divisors)) or '-'}",
        f"rho: {rep.rho_exact if rep.rho_exact is not None else 'undetermined'}",
        f"rho_feasible: {' '.join(map(str, rep.rho_feasible))}",
    ]
    if rep.rho_bounds is not None:
        low, high = rep.rho_bounds
        lines.append(f"rho_bounds: ({low}, {high}]")
    lines.append(f"irreducible: {_bool(rep.irreducible)}")
    for g in rep.stable_subgroups:
        lines.append(f"stable subgroup ({g['kind']}): <{', '.join(f'w{m}' for m in g['generators'])}> order {len(g['elements'])}")
    for split in rep.splits:
        parts = ", ".join(f"{c['count']} x {c['kind']} (|W0| = {c['w0_order']})" for c in split)
        lines.append(f"split: {parts}")
    return "\n".join(lines) + "\n"


def csv_row(rep: locus.LocusReport) -> list[str]:
    return [
        str(rep.D),
        str(rep.h_tilde),
        str(rep.pi0),
        _bool(rep.twisting),
        ";".join(map(str, rep.twist_divisors)),
        str(rep.rho_min),
        str(rep.rho_max),
        "" if rep.rho_exact is None else str(rep.rho_exact),
        _bool(rep.irreducible),
    ]


def render_table(reports: list[locus.LocusReport], fmt: str) -> str:
    if fmt == "json":
        return _dumps([r.to_dict() for r in reports])
    rows = [list(CSV_COLUMNS)] + [csv_row(r) for r in reports]
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        return buf.getvalue()
    widths = [max(len(row[k]) for row in rows) for k in range(len(CSV_COLUMNS))]
    return "".join("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() + "\n" for row in rows)


def polarization_report(O: quaternion.QOrder, D: int, bound: int) -> dict:
    mu = quaternion.find_mu(O, D, bound)
    if mu is None:
        raise CliError(
            f"no pure mu with nrd(mu) = {D} and coordinates bounded by {bound}; raise --bound", EXIT_EXHAUSTED
        )
    E = polarization.riemann_form(O, mu)
    twists = []
    for chi, m in quaternion.find_twists(O, mu, bound):
        mult = polarization.witness_multiplier(mu, mu, chi)
        twists.append({"chi": str(chi), "nrd": str(chi.nrd()), "m": m, "multiplier": None if mult is None else str(mult)})
    return {
        "D": D,
        "algebra": [str(O.algebra.a), str(O.algebra.b)],
        "basis": [str(e) for e in O.basis],
        "mu": str(mu),
        "nrd_mu": str(mu.nrd()),
        "riemann_form": [list(row) for row in E.matrix],
        "riemann_denominator": polarization.RIEMANN_DENOMINATOR,
        "pfaffian": E.pfaffian(),
        "degree": polarization.polarization_degree(E),
        "rosati_positive": polarization.rosati_positive(O, mu),
        "search_bound": bound,
        "twists": twists,
    }


def render_polarization_text(rep: dict, shown: int = 8) -> str:
    lines = [
        f"D: {rep['D']}",
        f"algebra: ({rep['algebra'][0]}, {rep['algebra'][1]})",
        "order basis: " + ", ".join(rep["basis"]),
        f"mu: {rep['mu']}   nrd(mu) = {rep['nrd_mu']}",
        f"riemann form (divided by {rep['riemann_denominator']}):",
    ]
    lines += ["  " + " ".join(f"{x:>3}" for x in row) for row in rep["riemann_form"]]
    lines += [
        f"pfaffian: {rep['pfaffian']}",
        f"degree: {rep['degree']}",
        f"rosati positive: {_bool(rep['rosati_positive'])}",
        f"twists (|coords| <= {rep['search_bound']}): {len(rep['twists'])}",
    ]
    for tw in rep["twists"][:shown]:
        lines.append(f"  chi = {tw['chi']}   nrd = {tw['nrd']}   m = {tw['m']}   conj(chi) mu chi = {tw['multiplier']} mu")
    if len(rep["twists"]) > shown:
        lines.append(f"  ... {len(rep['twists']) - shown} more")
    return "\n".join(lines) + "\n"


def render_curve_text(c: hm_families.HMCurve) -> str:
    lines = [f"family: {c.family}", f"t: {c.t}", f"s: {c.s}"]
    pqr = hm_families.coeffs(c.family, c.t, c.s)
    if isinstance(pqr, hm_families.HMCoeffs):
        lines += [f"P: {pqr.P}", f"Q: {pqr.Q}", f"R: {pqr.R}"]
    if c.f_coeffs is not None:
        lines.append("f: " + ", ".join(str(x) for x in c.f_coeffs) + "   (c5 .. c0)")
        if c.degenerate is None:
            lines.append(f"disc(f): {hm_families.discriminant(c.f_coeffs)}")
    lines.append(f"degenerate: {c.degenerate or 'no'}")
    return "\n".join(lines) + "\n"


def render_points(family: int, H: int, pts: list, fmt: str) -> str:
    items = [{"t": str(t), "s": str(s), "degenerate": d} for t, s, d in pts]
    if fmt == "json":
        return _dumps({"family": family, "height_bound": H, "points": items})
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "s", "degenerate"])
        w.writerows([[p["t"], p["s"], _bool(p["degenerate"])] for p in items])
        return buf.getvalue()
    lines = [f"family {family}, height <= {H}: {len(items)} points"]
    lines += [f"  t = {p['t']:>8}   s = {p['s']:>8}   {'degenerate' if p['degenerate'] else 'smooth'}" for p in items]
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# commands


def _analysis(D: int) -> locus.LocusReport:
    try:
        return locus.analyze(D)
    except locus.InadmissibleDiscriminant as exc:
        raise CliError(str(exc), EXIT_INPUT) from exc


def cmd_analyze(args, cfg: Config) -> str:
    rep = _analysis(args.D)
    fmt = cfg.output_format or "text"
    if fmt == "json":
        return _dumps(rep.to_dict())
    if fmt == "csv":
        return render_table([rep], "csv")
    return render_report_text(rep)


def cmd_tabulate(args, cfg: Config) -> str:
    if args.min > args.max:
        raise CliError(f"empty range: min {args.min} > max {args.max}", EXIT_INPUT)
    return render_table(locus.tabulate(args.min, args.max, jobs=cfg.jobs), cfg.output_format or "csv")


def cmd_polarize(args, cfg: Config) -> str:
    D = args.D
    if not locus.is_admissible(D):
        _analysis(D)
    O = cfg.catalog().get_or_build(D)
    rep = polarization_report(O, D, cfg.bound_for(D))
    if (cfg.output_format or "text") == "json":
        return _dumps(rep)
    return render_polarization_text(rep)


def cmd_hm(args, cfg: Config) -> str:
    fmt = cfg.output_format or "text"
    if args.points is not None or args.t is None:
        H = cfg.height_bound if args.points is None else args.points
        if H < 1:
            raise CliError("height bound must be >= 1", EXIT_INPUT)
        return render_points(args.family, H, hm_families.rational_points(args.family, H), fmt)
    if args.s is None:
        raise CliError("hm needs both t and s, or --points", EXIT_INPUT)
    try:
        c = hm_families.curve(args.family, QuadExtVal.parse(args.t), QuadExtVal.parse(args.s))
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(str(exc), EXIT_INPUT) from exc
    return _dumps(c.to_dict()) if fmt == "json" else render_curve_text(c)


def cmd_verify(args, cfg: Config) -> tuple[str, int]:
    lines: list[str] = []

    def echo(line: str) -> None:
        # stream progress unless the report goes to a file
        if cfg.out:
            lines.append(line)
        else:
            print(line, flush=True)

    results = verify.run(args.level, jobs=cfg.jobs, catalog=cfg.catalog(), echo=echo)
    ok = all(r.passed for r in results)
    lines.append(f"verify {args.level}: {'PASS' if ok else 'FAIL'}")
    return "\n".join(lines) + "\n", EXIT_OK if ok else 1


# --------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=int, default=argparse.SUPPRESS, help="coordinate bound for quaternion searches (default 8*D)")
    common.add_argument("--catalog", default=argparse.SUPPRESS, help=f"order catalog JSON (env {quaternion.CATALOG_ENV})")
    common.add_argument("--format", choices=("json", "csv", "text"), default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help="write output to this file instead of stdout")
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes for tabulate and verify")

    parser = argparse.ArgumentParser(
        prog="igusa-locus",
        description="Components of the quaternionic locus Q_D, polarizations on QM abelian surfaces, and genus-2 models.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="class numbers, twisting and rho for one discriminant")
    p.add_argument("D", type=int)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("tabulate", parents=[common], help="one row per admissible D in [min, max]")
    p.add_argument("min", type=int)
    p.add_argument("max", type=int)
    p.set_defaults(func=cmd_tabulate)

    p = sub.add_parser("polarize", parents=[common], help="principal polarization, Riemann form and twists")
    p.add_argument("D", type=int)
    p.set_defaults(func=cmd_polarize)

    p = sub.add_parser("hm", parents=[common], help="genus-2 models of the families over B_6 and B_10")
    p.add_argument("family", type=int, choices=hm_families.FAMILIES)
    p.add_argument("t", nargs="?", help='exact value such as "2", "-1/2" or "sqrt(2)"')
    p.add_argument("s", nargs="?")
    p.add_argument("--points", type=int, metavar="H", help="list base-curve points of height <= H instead")
    p.set_defaults(func=cmd_hm)

    p = sub.add_parser("verify", parents=[common], help="run the property suites")
    p.add_argument("level", choices=sorted(verify.LEVELS))
    p.set_defaults(func=cmd_verify)
    return parser


def config_from_args(args: argparse.Namespace) -> Config:
    return Config(
        search_bound=getattr(args, "bound", None),
        catalog_path=getattr(args, "catalog", None),
        output_format=getattr(args, "format", None),
        jobs=getattr(args, "jobs", 1),
        out=getattr(args, "out", None),
    )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        result = args.func(args, cfg)
    except CliError as exc:
        print(f"igusa-locus: {exc}", file=sys.stderr)
        return exc.code
    text, code = result if isinstance(result, tuple) else (result, EXIT_OK)
    if cfg.out:
        try:
            with open(cfg.out, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"igusa-locus: cannot write {cfg.out}: {exc.strerror}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
