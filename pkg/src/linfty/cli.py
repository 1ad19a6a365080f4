"""Command-line surface.

Subcommands: check-jacobi, verify-contraction, verify-gauge, fill-horn,
dold-kan, bch, compose-table, verify-monodromy, run-all.  Exit codes:
0 pass, 1 check failure, 2 usage or validation error.  Output is
byte-stable for fixed inputs and seed; counterexamples are printed in
the canonical rendering so they can be replayed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from linfty import acceptance, dupont
from linfty.algebra import check_jacobi
from linfty.bch_groupoid import (
    check_monodromy,
    compose,
    generalized_ch,
)
from linfty.fixtures import Sampler, get_representation
from linfty.mc_gamma import Horn, fill_horn_gamma, is_thin
from linfty.serialize import (
    LoadError,
    load_presentation,
    load_simplex,
    parse_vector,
    simplex_to_data,
)

PASS, CHECK_FAILURE, USAGE_ERROR = 0, 1, 2


def _load_algebra(path):
    loaded = load_presentation(path)
    return loaded


def cmd_check_jacobi(args) -> int:
    loaded = _load_algebra(args.algebra)
    print(loaded.summary())
    report = check_jacobi(loaded.algebra, args.n_max)
    print(report.summary())
    return PASS if report.passed else CHECK_FAILURE


def cmd_verify_contraction(args) -> int:
    failures = 0
    for n in _dim_list(args.n):
        for check in dupont.check_contraction_identities(n, args.max_degree):
            print(check.summary())
            failures += not check.passed
    return PASS if not failures else CHECK_FAILURE


def cmd_verify_gauge(args) -> int:
    failures = 0
    for n in _dim_list(args.n):
        for check in dupont.check_gauge_identities(n, args.max_degree):
            print(check.summary())
            failures += not check.passed
        for check in dupont.check_gaugeify_fixed_point(
            n, min(args.max_degree, 3)
        ):
            print(check.summary())
            failures += not check.passed
    return PASS if not failures else CHECK_FAILURE


def _dim_list(n):
    return (1, 2, 3) if n is None else (n,)


def cmd_fill_horn(args) -> int:
    loaded = _load_algebra(args.algebra)
    algebra = loaded.algebra
    faces = [load_simplex(path, algebra) for path in args.faces]
    positions = [j for j in range(args.n + 1) if j != args.missing]
    if len(faces) != len(positions):
        print(
            f"horn at dimension {args.n} missing {args.missing} needs "
            f"{len(positions)} faces, got {len(faces)}",
            file=sys.stderr,
        )
        return USAGE_ERROR
    horn = Horn(args.n, args.missing, dict(zip(positions, faces)))
    filler = fill_horn_gamma(horn)
    print(json.dumps(simplex_to_data(filler), indent=2))
    print(f"thin: {is_thin(filler)}", file=sys.stderr)
    return PASS


def cmd_dold_kan(args) -> int:
    from linfty.mc_gamma import dold_kan_compare

    loaded = _load_algebra(args.algebra)
    report = dold_kan_compare(loaded.algebra, args.n)
    print(report.summary())
    for seq, sym in report.basis:
        print(f"  cell {''.join(map(str, seq))} (x) {sym}")
    return PASS if report.passed else CHECK_FAILURE


def cmd_bch(args) -> int:
    loaded = _load_algebra(args.algebra)
    algebra = loaded.algebra
    mu = algebra.zero_vector()
    if args.mu:
        mu = parse_vector(Path(args.mu).read_text().strip(), algebra)
    inputs = {}
    if args.inputs:
        data = json.loads(Path(args.inputs).read_text())
        for key, text in data.items():
            seq = tuple(int(ch) for ch in key)
            inputs[seq] = parse_vector(text, algebra)
    result = generalized_ch(algebra, args.n, mu, inputs)
    print(result.value.render())
    return PASS


def cmd_compose_table(args) -> int:
    loaded = _load_algebra(args.algebra)
    algebra = loaded.algebra
    if algebra.basis_of_degree(-1) or not algebra.is_nilpotent():
        print(
            "compose-table needs a nilpotent algebra in degrees >= 0",
            file=sys.stderr,
        )
        return USAGE_ERROR
    sampler = Sampler(args.seed)
    zero = algebra.zero_vector()
    for _ in range(args.samples):
        x = sampler.vector(algebra, 0)
        y = sampler.vector(algebra, 0)
        z = compose(algebra, zero, x, y)
        print(f"({x.render()}) * ({y.render()}) = {z.render()}")
    return PASS


def cmd_verify_monodromy(args) -> int:
    try:
        rep = get_representation(args.rep)
    except KeyError as exc:
        print(exc, file=sys.stderr)
        return USAGE_ERROR
    sampler = Sampler(args.seed)
    failures = 0
    for _ in range(args.samples):
        x1 = sampler.vector(rep.algebra, 0)
        x2 = sampler.vector(rep.algebra, 0)
        ok = check_monodromy(rep, x1, x2)
        if not ok:
            failures += 1
            print(
                f"FAIL: x1 = {x1.render()}, x2 = {x2.render()}"
            )
    print(
        f"{'pass' if not failures else 'FAIL'}  monodromy({args.rep}): "
        f"{args.samples - failures}/{args.samples} exact"
    )
    return PASS if not failures else CHECK_FAILURE


def cmd_run_suite(args) -> int:
    try:
        result = acceptance.run_criterion(
            args.suite, seed=args.seed, max_degree=args.max_degree
        )
    except KeyError as exc:
        print(exc.args[0], file=sys.stderr)
        return USAGE_ERROR
    print(result.report() if args.verbose else result.summary())
    return PASS if result.passed else CHECK_FAILURE


def cmd_run_all(args) -> int:
    failures = 0
    for result in acceptance.run_all(seed=args.seed, max_degree=args.max_degree):
        print(result.report() if args.verbose else result.summary())
        failures += not result.passed
    return PASS if not failures else CHECK_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linfty",
        description=(
            "Exact Lie theory for nilpotent L-infinity algebras: "
            "simplicial de Rham operators, gauge-fixed Maurer-Cartan "
            "solvers, horn fillers, and generalized Campbell-Hausdorff "
            "series."
        ),
    )
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for the deterministic samplers")
    parser.add_argument("--max-degree", type=int, default=4,
                        help="polynomial degree bound for identity checks")
    parser.add_argument("--format", choices=["text"], default="text",
                        help="output format")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-jacobi", help="validate a presentation file")
    p.add_argument("--algebra", required=True)
    p.add_argument("--n-max", type=int, default=None)
    p.set_defaults(fn=cmd_check_jacobi)

    p = sub.add_parser("verify-contraction",
                       help="homotopy/projection identities on monomials")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--max-degree", dest="max_degree", type=int,
                   default=argparse.SUPPRESS)
    p.set_defaults(fn=cmd_verify_contraction)

    p = sub.add_parser("verify-gauge",
                       help="gauge property and homotopy identities")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--max-degree", dest="max_degree", type=int,
                   default=argparse.SUPPRESS)
    p.set_defaults(fn=cmd_verify_gauge)

    p = sub.add_parser("fill-horn", help="fill a gauge-fixed horn")
    p.add_argument("--algebra", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--missing", type=int, required=True)
    p.add_argument("--faces", nargs="+", required=True)
    p.set_defaults(fn=cmd_fill_horn)

    p = sub.add_parser("dold-kan",
                       help="abelian comparison with normalized cochains")
    p.add_argument("--algebra", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=cmd_dold_kan)

    p = sub.add_parser("bch", help="generalized Campbell-Hausdorff value")
    p.add_argument("--algebra", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mu", default=None,
                   help="file with the rendered base Maurer-Cartan element")
    p.add_argument("--inputs", default=None,
                   help="JSON file mapping index strings to rendered vectors")
    p.set_defaults(fn=cmd_bch)

    p = sub.add_parser("compose-table",
                       help="sampled composition table via thin fillers")
    p.add_argument("--algebra", required=True)
    p.add_argument("--samples", type=int, default=10)
    p.set_defaults(fn=cmd_compose_table)

    p = sub.add_parser("verify-monodromy",
                       help="exact matrix monodromy identity")
    p.add_argument("--rep", choices=["heisenberg", "ut4"], required=True)
    p.add_argument("--samples", type=int, default=20)
    p.set_defaults(fn=cmd_verify_monodromy)

    p = sub.add_parser("run-suite", help="run one acceptance criterion")
    p.add_argument("suite", choices=sorted(acceptance.CRITERIA))
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(fn=cmd_run_suite)

    p = sub.add_parser("run-all", help="run the full acceptance suite")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(fn=cmd_run_all)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses exit code 2 for usage errors already
        return int(exc.code) if exc.code else PASS
    try:
        return args.fn(args)
    except LoadError as exc:
        print(exc, file=sys.stderr)
        return USAGE_ERROR
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
