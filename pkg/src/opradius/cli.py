"""``opradius`` command line.

Exit codes: 0 success (orthogonal / parallel / all properties pass), 1 negative
decision or selftest failure, 2 malformed matrix file, 3 invalid rho or trial
count, 4 dimension mismatch.  The JSON report goes to stdout, diagnostics to
stderr.
"""

from __future__ import annotations

import argparse
import sys

from .errors import RhoError, ShapeError
from .geometry import THETA_SAMPLES, WITNESS_TOL, is_orthogonal, is_parallel
from .io import MatrixFileError, ReportEnvelope, envelope_to_json, load_matrix, result_to_obj
from .oracle import GridSpec, cross_check
from .radius import DEFAULT_TOL, as_rho, rho_radius
from .selftest import format_table, run_selftest

EXIT_OK, EXIT_NEGATIVE, EXIT_FILE, EXIT_RHO, EXIT_SHAPE = 0, 1, 2, 3, 4


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="opradius", description="Operator radii, orthogonality and parallelism of matrices.")
    sub = p.add_subparsers(dest="command", required=True)

    rad = sub.add_parser("radius", help="compute w_rho(A) with an attaining vector")
    rad.add_argument("matrix")
    rad.add_argument("--rho", type=float, default=2.0)
    rad.add_argument("--tol", type=float, default=DEFAULT_TOL)

    for name, helptext in (("orthogonal", "decide w_rho orthogonality of A to B"),
                           ("parallel", "decide w_rho parallelism of A and B")):
        q = sub.add_parser(name, help=helptext)
        q.add_argument("matrix_a")
        q.add_argument("matrix_b")
        q.add_argument("--rho", type=float, default=2.0)
        q.add_argument("--tol", type=float, default=None, help="decision tolerance (default 1e-7*max(1, scale))")
        q.add_argument("--witness-tol", type=float, default=WITNESS_TOL)
        if name == "orthogonal":
            q.add_argument("--theta-samples", type=int, default=THETA_SAMPLES)
        q.add_argument("--cross-check", action="store_true", help="also run the brute-force grid oracle")
        q.add_argument("--grid-radial", type=_positive_int, default=GridSpec.radial_points)
        q.add_argument("--grid-angular", type=_positive_int, default=GridSpec.angular_points)

    st = sub.add_parser("selftest", help="run the randomised property suites")
    st.add_argument("--seed", type=int, default=42)
    st.add_argument("--trials", type=int, default=50)
    return p


def _load(path):
    m = load_matrix(path)
    return m.matrix, (m.label if m.label is not None else str(path))


def _emit(env: ReportEnvelope) -> None:
    sys.stdout.write(envelope_to_json(env))
    sys.stdout.flush()


def _cmd_radius(args) -> int:
    r = as_rho(args.rho)
    a, label = _load(args.matrix)
    cert = rho_radius(a, r, args.tol)
    _emit(ReportEnvelope("radius", [label], r.value, args.tol, result_to_obj(cert)))
    return EXIT_OK


def _cmd_pair(args) -> int:
    r = as_rho(args.rho)
    a, la = _load(args.matrix_a)
    b, lb = _load(args.matrix_b)
    if a.shape != b.shape:
        raise ShapeError(f"dimension mismatch: {la} is {a.shape[0]}x{a.shape[0]}, {lb} is {b.shape[0]}x{b.shape[0]}")
    if args.command == "orthogonal":
        rep = is_orthogonal(a, b, r, args.tol, theta_samples=args.theta_samples, witness_tol=args.witness_tol)
        ok = rep.orthogonal
    else:
        rep = is_parallel(a, b, r, args.tol, witness_tol=args.witness_tol)
        ok = rep.parallel
    verdict = None
    if args.cross_check:
        grid = GridSpec(args.grid_radial, args.grid_angular)
        verdict = result_to_obj(cross_check(a, b, r, args.command, grid, args.tol))
        if not verdict["agrees"]:
            print("warning: oracle cross-check disagrees with the decider", file=sys.stderr)
    missing = sum(not w.found for w in rep.witnesses)
    if missing:
        print(f"note: {missing} of {len(rep.witnesses)} witness searches found no candidate within tolerance",
              file=sys.stderr)
    _emit(ReportEnvelope(args.command, [la, lb], r.value, rep.tolerance, result_to_obj(rep), rep.witnesses, verdict))
    return EXIT_OK if ok else EXIT_NEGATIVE


def _cmd_selftest(args) -> int:
    if args.trials < 1:
        print(f"error: --trials must be >= 1, got {args.trials}", file=sys.stderr)
        return EXIT_RHO
    results = run_selftest(args.seed, args.trials)
    print(format_table(results), file=sys.stderr)
    table = {
        "seed": args.seed,
        "trials": args.trials,
        "passed": all(r.passed for r in results),
        "properties": [{"name": r.name, "trials": r.trials, "failures": r.failures, "worst": r.worst,
                        "bound": r.bound} for r in results],
    }
    _emit(ReportEnvelope("selftest", [], None, None, result_to_obj(table)))
    return EXIT_OK if table["passed"] else EXIT_NEGATIVE


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"radius": _cmd_radius, "orthogonal": _cmd_pair, "parallel": _cmd_pair, "selftest": _cmd_selftest}
    try:
        return handlers[args.command](args)
    except MatrixFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FILE
    except RhoError as exc:
        print(f"error: rho: {exc}", file=sys.stderr)
        return EXIT_RHO
    except ShapeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SHAPE


if __name__ == "__main__":
    sys.exit(main())
