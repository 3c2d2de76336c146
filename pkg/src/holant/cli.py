"""Command-line surface.

Exit codes: 0 = success / verification passed, 1 = verification failed
(or selftest failures), 2 = invalid input or usage error.  User data never
crashes the tool; every malformed input maps to a diagnostic and exit 2.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .assignments import enumerate_assignments
from .basis import check_transform, hat_transform
from .engine import (
    holant_value,
    pairing_form,
    random_basis,
    random_instance,
    recommended_tolerance,
    relative_error,
    verify_holant,
)
from .errors import HolantError
from .io import (
    basis_digest,
    instance_digest,
    load_basis,
    load_instance,
    save_basis,
    save_instance,
    save_report,
)
from .selftest import run_selftest


def _fmt_complex(z: complex) -> str:
    if z.imag == 0:
        return f"{z.real:.12g}"
    return f"{z.real:.12g}{z.imag:+.12g}j"


def _resolve_basis(args):
    if args.basis is not None:
        return load_basis(args.basis)
    inst = args._instance
    if inst.basis_ref is not None:
        return load_basis(Path(args.instance).parent / inst.basis_ref)
    raise HolantError(
        "no basis given: pass --basis FILE or reference one from the instance document"
    )


def _cmd_eval(args) -> int:
    inst = load_instance(args.instance)
    value = holant_value(inst)
    print(f"holant value = {_fmt_complex(value)}")
    if args.cross_check:
        other = pairing_form(inst)
        rel = relative_error(value, other)
        print(f"pairing form = {_fmt_complex(other)}")
        print(f"relative difference = {rel:.3e}")
        if rel > 1e-12:
            print("cross-check FAILED: the two evaluation paths disagree", file=sys.stderr)
            return 1
    return 0


def _cmd_transform(args) -> int:
    inst = load_instance(args.instance)
    args._instance = inst
    basis = _resolve_basis(args)
    tables = inst.generators if args.side == "gen" else inst.recognizers
    if not 0 <= args.index < len(tables):
        raise HolantError(
            f"--index {args.index} out of range: the {args.side} side has {len(tables)} tables"
        )
    table = tables[args.index]
    transform = hat_transform if args.side == "gen" else check_transform
    out = transform(table, basis, method=args.method)
    kind = "hat" if args.side == "gen" else "check"
    print(
        f"{kind} transform of {args.side} {args.index} on scope {list(table.scope.members)} "
        f"(basis {basis_digest(basis)[:12]}):"
    )
    for i, b in enumerate(enumerate_assignments(inst.alphabet, table.scope)):
        print(f"  b={b.values}  {_fmt_complex(complex(out.values[i]))}")
    return 0


def _cmd_verify(args) -> int:
    inst = load_instance(args.instance)
    args._instance = inst
    basis = _resolve_basis(args)
    report = verify_holant(inst, basis, tol=args.tol, fault_seed=args.inject_fault)
    print(f"lhs = {_fmt_complex(report.lhs)}")
    print(f"rhs = {_fmt_complex(report.rhs)}")
    print(f"abs error = {report.abs_error:.6e}")
    print(f"rel error = {report.rel_error:.6e} (tolerance {report.tolerance:.6e})")
    if report.fault:
        print(f"injected fault: {report.fault}")
    print(f"result: {'PASS' if report.passed else 'FAIL'}")
    if args.json:
        seeds = {} if args.inject_fault is None else {"fault": args.inject_fault}
        save_report(report, args.json, seeds)
        print(f"report written to {args.json}")
    return 0 if report.passed else 1


def _cmd_gen(args) -> int:
    inst = random_instance(
        args.seed, args.alphabet, args.edges, args.gen_parts, args.rec_parts, args.magnitude
    )
    out = Path(args.output)
    if args.basis_cond is not None:
        basis = random_basis(args.seed, args.alphabet, args.basis_cond)
        basis_path = out.with_suffix(".basis.json") if out.suffix == ".json" else Path(
            str(out) + ".basis.json"
        )
        save_basis(basis, basis_path)
        inst = type(inst)(
            inst.alphabet, inst.edges, inst.generators, inst.recognizers, basis_path.name
        )
        print(f"basis written to {basis_path} (digest {basis_digest(basis)[:12]})")
    save_instance(inst, out)
    print(f"instance written to {out} (digest {instance_digest(inst)[:12]})")
    return 0


def _cmd_selftest(args) -> int:
    return 0 if run_selftest() else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="holant",
        description="Evaluate Holant sums and certify their invariance under basis change.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="brute-force evaluate an instance")
    p_eval.add_argument("instance", help="instance document (JSON)")
    p_eval.add_argument(
        "--cross-check",
        action="store_true",
        help="also evaluate via the pairing form and compare",
    )
    p_eval.set_defaults(func=_cmd_eval)

    p_tr = sub.add_parser("transform", help="print one transformed local table")
    p_tr.add_argument("instance")
    p_tr.add_argument("--basis", help="basis document (JSON)")
    p_tr.add_argument("--side", choices=("gen", "rec"), required=True)
    p_tr.add_argument("--index", type=int, required=True, help="table index on that side")
    p_tr.add_argument("--method", choices=("fast", "dense"), default="fast")
    p_tr.set_defaults(func=_cmd_transform)

    p_ver = sub.add_parser("verify", help="certify the Holant identity under a basis")
    p_ver.add_argument("instance")
    p_ver.add_argument("--basis", help="basis document (JSON)")
    p_ver.add_argument("--tol", type=float, help="override the derived tolerance")
    p_ver.add_argument("--json", help="also write a machine-readable report here")
    p_ver.add_argument(
        "--inject-fault",
        type=int,
        metavar="SEED",
        help="negative control: corrupt one transformed entry so verification must fail",
    )
    p_ver.set_defaults(func=_cmd_verify)

    p_gen = sub.add_parser("gen", help="generate a seeded random instance (and basis)")
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument("--alphabet", type=int, required=True, help="alphabet size")
    p_gen.add_argument("--edges", type=int, required=True, help="edge count")
    p_gen.add_argument("--gen-parts", type=int, required=True)
    p_gen.add_argument("--rec-parts", type=int, required=True)
    p_gen.add_argument("--magnitude", type=float, default=1.0)
    p_gen.add_argument("--basis-cond", type=float, help="also generate a basis with this condition bound")
    p_gen.add_argument("-o", "--output", required=True)
    p_gen.set_defaults(func=_cmd_gen)

    p_self = sub.add_parser("selftest", help="run built-in worked examples and sweeps")
    p_self.set_defaults(func=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except HolantError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    raise SystemExit(main())
