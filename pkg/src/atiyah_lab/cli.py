"""atiyah-lab command line: verify, sweep, scan, symbolic, dihedral, minimize.

Exit codes: 0 pass, 1 violation found, 2 input error, 3 inconclusive
certificate, 4 internal identity mismatch.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
import time

import numpy as np

from . import io
from .checkers import (DISTRIBUTIONS, InternalMismatchError, config_to_json,
                       family_sweep, scan_random, verify)
from .families import SWEPT_FAMILIES, FamilyParams, default_grid, grid_from_spec
from .geometry import Configuration

EXIT_PASS, EXIT_VIOLATION, EXIT_INPUT, EXIT_INCONCLUSIVE, EXIT_MISMATCH = 0, 1, 2, 3, 4

DEFAULT_SCAN_BUDGET = 10**6
SYMBOLIC_IDS = ("2.11", "2.3", "3.3", "3.4", "3.8", "3.9", "5.3", "qtilde", "3.6", "5.1",
                "resultant", "witness", "identities")


def _precision(text: str) -> str:
    if text == "double" or re.fullmatch(r"extended(:\d+)?", text):
        if text.startswith("extended:") and int(text.split(":")[1]) < 53:
            raise argparse.ArgumentTypeError("extended precision needs at least 53 bits")
        return text
    raise argparse.ArgumentTypeError("precision must be 'double' or 'extended:<bits>'")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--precision", type=_precision, default="double")
    common.add_argument("--budget", type=int, default=None,
                        help="scan: max samples; symbolic: max n")
    common.add_argument("--out", default=None, help="report path (JSON, or CSV with JSON beside it)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--no-timestamp", action="store_true", help="leave the header timestamp empty")

    p = argparse.ArgumentParser(prog="atiyah-lab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common], help="check C1/C2/C3 for one configuration")
    s.add_argument("config", help="JSON or CSV file of points")

    s = sub.add_parser("sweep", parents=[common], help="sweep a family grid")
    s.add_argument("grid", nargs="?", help="grid JSON file")
    s.add_argument("--family", choices=SWEPT_FAMILIES + ("all",), help="use the built-in grid")

    s = sub.add_parser("scan", parents=[common], help="Monte Carlo search for violations")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--samples", type=int, default=10**4)
    s.add_argument("--dist", choices=DISTRIBUTIONS, default="gaussian")

    s = sub.add_parser("symbolic", parents=[common], help="exact certificates and identities")
    s.add_argument("id", choices=SYMBOLIC_IDS)
    s.add_argument("--n", type=int, default=None)
    s.add_argument("--long-running", action="store_true", help="allow n = 6, 7")

    s = sub.add_parser("dihedral", parents=[common], help="closed-form dihedral determinant")
    s.add_argument("spec", nargs="?", help='JSON file {"m", "n", "lambda"} or {"n", "abscissae"}')
    s.add_argument("--m", type=int, default=None)
    s.add_argument("--n", type=int, default=None)
    s.add_argument("--lam", type=float, nargs="*", default=None)

    s = sub.add_parser("minimize", parents=[common], help="minimize the energy -log|D|")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--restarts", type=int, default=16)
    return p


def _run_config(args, inputs, **options) -> io.RunConfig:
    return io.RunConfig(command=args.command, inputs=[str(v) for v in inputs if v is not None], seed=args.seed,
                        precision=args.precision, budget=args.budget,
                        long_running=getattr(args, "long_running", False), out=args.out,
                        format=args.format, options=options)


def _emit(args, run, body, rows=(), columns=(), lines=()):
    report = io.make_report(run, body, timestamp=not args.no_timestamp)
    for ln in lines:
        print(ln)
    written = io.write_outputs(args.out, args.format, report, list(rows), list(columns))
    if written:
        print("wrote " + ", ".join(str(w) for w in written))
    elif args.format == "csv" and rows:
        sys.stdout.write(io.csv_text(list(rows), list(columns)))
    return report


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_verify(args) -> int:
    config = Configuration(io.read_points(args.config))
    verdicts = verify(config, args.precision)
    rows = [v.to_dict() for v in verdicts]
    body = {"config": config_to_json(config), "fingerprint": config.fingerprint(), "verdicts": rows}
    lines = [f"{v.conjecture:10s} {'PASS' if v.holds else 'FAIL'}  margin={v.margin!r}" for v in verdicts]
    _emit(args, _run_config(args, [args.config]), body, rows,
          ["conjecture", "holds", "margin", "precision_used", "config_fingerprint"], lines)
    return EXIT_PASS if all(v.holds for v in verdicts) else EXIT_VIOLATION


def _grid(args) -> list:
    if args.family:
        fams = SWEPT_FAMILIES if args.family == "all" else (args.family,)
        return [g for f in fams for g in default_grid(f)]
    if not args.grid:
        raise io.InputError("give a grid file or --family")
    data = io.read_json(args.grid)
    try:
        if "points" in data:
            return [FamilyParams.from_json(p) for p in data["points"]]
        family = data["family"]
        if data.get("default"):
            return default_grid(family)
        return grid_from_spec(family, data["grid"])
    except (KeyError, TypeError, ValueError) as exc:
        raise io.InputError(f"{args.grid}: malformed grid ({exc})") from exc


def cmd_sweep(args) -> int:
    grid = _grid(args)
    known = set(SWEPT_FAMILIES) | {"collinear", "almost_collinear", "dihedral"}
    bad = {g.family for g in grid} - known
    if bad:
        raise io.InputError(f"unknown family {sorted(bad)}")
    t0 = time.perf_counter()
    report = family_sweep(grid)
    seconds = time.perf_counter() - t0
    rows = []
    for r in report.rows:
        values = {k: v for k, v in r["params"].items() if k != "family"}
        flat = {"family": r["params"]["family"], "params": values, "status": r["status"],
                "violations": ";".join(r.get("violations", []))}
        for k, v in r.get("margins", {}).items():
            flat[k] = v
        for k, v in r.get("family", {}).items():
            flat[f"family:{k}"] = v
        rows.append(flat)
    columns = ["family", "params", "status", "C2", "C3", "FP-weak", "FP-strong"]
    columns += sorted({k for r in rows for k in r if k.startswith("family:")})
    columns.append("violations")
    body = report.to_dict()
    body["rows"] = report.rows
    body["skipped"] = sum(r["status"].startswith("skipped") for r in report.rows)
    lines = [f"points {len(grid)}  evaluated {len(grid) - body['skipped']}  skipped {body['skipped']}  "
             f"violations {len(report.violations)}"]
    lines += [f"  min {k:28s} {v!r}" for k, v in sorted(report.min_margins.items())]
    _emit(args, _run_config(args, [args.grid], family=args.family), body, rows, columns, lines)
    print(f"sweep time {seconds:.2f} s", file=sys.stderr)
    return EXIT_PASS if report.ok else EXIT_VIOLATION


def cmd_scan(args) -> int:
    budget = args.budget or DEFAULT_SCAN_BUDGET
    if args.samples > budget:
        raise io.InputError(f"{args.samples} samples exceed the budget {budget}; raise --budget")
    if args.n < 2:
        raise io.InputError("scan needs n >= 2")
    report = scan_random(args.n, args.samples, args.seed, args.dist)
    body = report.to_dict()
    body.update(n=args.n, distribution=args.dist)
    rows = [{"n": args.n, "distribution": args.dist, **v.to_dict()} for v in report.verdicts]
    lines = [f"n={args.n} {args.dist} samples={args.samples} seed={args.seed} violations={len(report.violations)}"]
    lines += [f"  min {k} margin {v!r}" for k, v in report.min_margins.items()]
    lines.append("  argmin config " + repr(report.argmin_config.points.tolist()))
    _emit(args, _run_config(args, [], n=args.n, samples=args.samples, dist=args.dist), body, rows,
          ["n", "distribution", "conjecture", "holds", "margin", "precision_used", "config_fingerprint"], lines)
    return EXIT_PASS if report.ok else EXIT_VIOLATION


def _certificate_exit(status: str) -> int:
    return {"PASS": EXIT_PASS, "FAIL": EXIT_VIOLATION}.get(status, EXIT_INCONCLUSIVE)


def _symbolic(args) -> tuple[int, dict, list]:
    from .symfunc import identities as ident
    from .symfunc import psi as P

    cid, n = args.id, args.n
    max_n = args.budget
    if cid in ("2.11", "2.3", "identities"):
        if cid == "2.11":
            results = {"edge_tangential": [ident.edge_tangential_c3_identity()]}
            body = {"witness": {str(list(k)): v for k, v in ident.EDGE_TANGENTIAL_DIFFERENCE.items()}}
        elif cid == "2.3":
            results = {"edge_tangential": ident.edge_tangential_identities()}
            body = {}
        else:
            results = ident.all_identities()
            body = {}
        body["identities"] = {f: [r.__dict__ for r in rs] for f, rs in results.items()}
        wrong = ident.unexpected_results(results)
        body["unexpected"] = [f"{f}: {r.name}" for f, r in wrong]
        lines = [f"{'ok ' if (f, r) not in wrong else 'BAD'} {f}: {r.name} holds={r.holds}"
                 for f, rs in results.items() for r in rs]
        return (EXIT_MISMATCH if wrong else EXIT_PASS), body, lines
    if cid == "witness":
        cmp = P.endpoint_witness_comparison()
        lines = [f"{k}: {v}" for k, v in cmp.items()]
        return (EXIT_PASS if cmp["equals_printed"] else EXIT_MISMATCH), {"comparison": cmp}, lines
    if cid in ("3.6", "5.1"):
        ns = [n] if n else [2, 3, 4, 5]
        P._budget(max(ns), args.long_running, max_n)
        out = {}
        for k_n in ns:
            if cid == "3.6":
                out[k_n] = all(P.single_derivative_closed(k_n, k, r) == P.single_derivative_oracle(k_n, k, r)
                               for k in range(1, k_n + 1) for r in range(1, k_n + 1) if r != k)
            else:
                out[k_n] = all(P.ratio_derivative_closed(k_n, r) == P.ratio_derivative_oracle(k_n, r)
                               for r in range(2, k_n + 1))
        lines = [f"n={k}: {'match' if v else 'MISMATCH'}" for k, v in out.items()]
        return (EXIT_PASS if all(out.values()) else EXIT_MISMATCH), {"matches": out}, lines
    if cid == "resultant":
        n = n or 4
        P._budget(n, args.long_running, max_n)
        res = P.resultant_path(n)
        d = {k: (v.to_dict() if hasattr(v, "to_dict") else v) for k, v in res.__dict__.items()}
        flags = [v for k, v in d.items() if isinstance(v, bool)]
        lines = [f"{k}: {v}" for k, v in d.items() if isinstance(v, bool)]
        return (EXIT_PASS if all(flags) else EXIT_MISMATCH), d, lines
    if n is None:
        raise io.InputError(f"{cid} needs --n")
    if cid == "qtilde":
        cert = P.qtilde_check(n, args.long_running, max_n, seed=args.seed)
    else:
        cert = P.conjecture_check(cid, n, args.long_running, max_n, seed=args.seed)
    body = {"certificate": cert.to_dict()}
    lines = [f"{cid} n={n}: {cert.status} ({cert.terms_checked} terms, {cert.seconds:.2f} s)"]
    if cert.notes:
        lines.append("  " + cert.notes)
    if cid in ("3.3", "3.8") and n == 4:
        cmp = P.endpoint_witness_comparison()
        body["printed_witness"] = cmp
        lines.append(f"  printed n=4 witness: {cmp}")
    return _certificate_exit(cert.status), body, lines


def cmd_symbolic(args) -> int:
    from .symfunc.psi import BudgetExceeded
    try:
        code, body, lines = _symbolic(args)
    except BudgetExceeded as exc:
        raise io.InputError(str(exc)) from exc
    body["exit_code"] = code
    rows = [{"id": args.id, "n": args.n, "exit_code": code}]
    _emit(args, _run_config(args, [], id=args.id, n=args.n), body, rows, ["id", "n", "exit_code"], lines)
    return code


def _dihedral_spec(args):
    from .dihedral import DihedralSpec
    if args.spec:
        data = io.read_json(args.spec)
        try:
            if "abscissae" in data:
                return DihedralSpec.from_abscissae(int(data["n"]), data["abscissae"])
            return DihedralSpec.from_json(data)
        except (KeyError, TypeError, ValueError) as exc:
            raise io.InputError(f"{args.spec}: {exc}") from exc
    if args.n is None:
        raise io.InputError("give a spec file or --n")
    lam = tuple(args.lam or ())
    return DihedralSpec(args.m if args.m is not None else len(lam), args.n, lam)


def cmd_dihedral(args) -> int:
    from . import dihedral as dh
    spec = _dihedral_spec(args)
    verdict = dh.check_collinear_bound(spec)
    chain = dh.coefficient_bound_chain(spec)
    numeric = dh.numeric_abs(spec, args.precision)
    ratio = dh.calibration_ratio(spec)
    expected = 2.0 ** math.comb(spec.n, 2)
    body = {
        "spec": spec.to_json(),
        "closed_det": dh.closed_det(spec),
        "collinear_reference": dh.collinear_reference(spec),
        "verdict": verdict.to_dict(),
        "f": dh.f_coeffs(spec).tolist(),
        "chain": {"prod_f": chain.prod_f, "bound1": chain.bound1, "bound2": chain.bound2, "holds": chain.holds},
        "numeric_normalized_abs": numeric,
        "calibration_ratio": ratio,
        "calibration_expected": expected,
    }
    lines = [f"m={spec.m} n={spec.n} closed det {body['closed_det']!r}",
             f"  margin vs collinear reference {verdict.margin!r} ({'PASS' if verdict.holds else 'FAIL'})",
             f"  chain prod f = {chain.prod_f!r} >= {chain.bound1!r} >= {chain.bound2!r}: {chain.holds}",
             f"  numeric |D| {numeric!r}, calibration {ratio!r} (expected {expected!r})"]
    rows = [{"m": spec.m, "n": spec.n, "closed_det": body["closed_det"], "margin": verdict.margin,
             "chain_holds": chain.holds, "numeric": numeric, "ratio": ratio}]
    _emit(args, _run_config(args, [args.spec], m=args.m, n=args.n, lam=args.lam), body, rows, list(rows[0]), lines)
    if abs(ratio / expected - 1) > 1e-8:
        print("closed form and numeric determinant disagree", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_PASS if verdict.holds and chain.holds else EXIT_VIOLATION


def cmd_minimize(args) -> int:
    from . import optimizer as opt
    if args.n < 3:
        raise io.InputError("minimize needs n >= 3")
    if args.restarts < 1:
        raise io.InputError("need at least one restart")
    try:
        trace = opt.minimize_energy(args.n, args.seed, opt.OptOptions(restarts=args.restarts))
    except opt.C2ViolationFound as exc:
        body = {"violation": config_to_json(Configuration(exc.points)), "value": exc.value}
        _emit(args, _run_config(args, [], n=args.n, restarts=args.restarts), body,
              lines=[f"C2 violation found: |D| = {exc.value!r}"])
        return EXIT_VIOLATION
    spectrum = opt.sorted_distance_spectrum(trace.final_points)
    body = trace.to_dict()
    body["spectrum"] = spectrum.tolist()
    refs = {3: opt.equilateral_triangle(), 4: opt.regular_tetrahedron(),
            5: opt.trigonal_bipyramid(opt.best_bipyramid_height())}
    lines = [f"n={args.n} energy {trace.final_energy!r} (start {trace.initial_energy!r})",
             "  spectrum " + " ".join(f"{v:.6f}" for v in spectrum)]
    if args.n in refs:
        ref_e = opt.energy_of(refs[args.n])
        body["reference_energy"] = ref_e
        body["reference_spectrum_deviation"] = float(np.max(np.abs(spectrum - opt.sorted_distance_spectrum(refs[args.n]))))
        lines.append(f"  reference energy {ref_e!r}, spectrum deviation {body['reference_spectrum_deviation']:.2e}")
    rows = [{"step": i, "energy": e} for i, e in enumerate(trace.energies)]
    _emit(args, _run_config(args, [], n=args.n, restarts=args.restarts), body, rows, ["step", "energy"], lines)
    return EXIT_PASS


COMMANDS = {"verify": cmd_verify, "sweep": cmd_sweep, "scan": cmd_scan, "symbolic": cmd_symbolic,
            "dihedral": cmd_dihedral, "minimize": cmd_minimize}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_PASS
    try:
        return COMMANDS[args.command](args)
    except InternalMismatchError as exc:
        print(f"internal mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (io.InputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
