"""Command-line front end.

Exit status: 0 when every check passes, 1 when a verification fails (the
first counterexample goes to stderr), 2 for unusable input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import shlex
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .doubling import double_dendriform, verify_embedding
from .fdalg import (
    FDAlgebra,
    RotaBaxterError,
    check_identities,
    check_rota_baxter,
    derived_dendriform,
    load_algebra,
    load_operator,
)
from .koszul import verify_koszul_tri
from .successor import Mode, generate_dendriform_identities, generate_variety_identities
from .terms import Context, Signature, read_identity_lines
from .varieties import resolve

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _weight(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


class _Provenance:
    def __init__(self, argv: list[str]):
        self.argv = argv
        self.inputs: list[tuple[str, str]] = []

    def read(self, path: str) -> bytes:
        data = Path(path).read_bytes()
        self.inputs.append((path, hashlib.sha256(data).hexdigest()))
        return data

    def lines(self) -> list[str]:
        out = [f"generated by dendriform {__version__}", f"command: {shlex.join(self.argv)}"]
        out += [f"input sha256 {p}: {h}" for p, h in self.inputs]
        return out

    def json(self) -> dict:
        return {
            "provenance": {
                "tool": f"dendriform {__version__}",
                "command": shlex.join(self.argv),
                "inputs": [{"path": p, "sha256": h} for p, h in self.inputs],
            }
        }


def _variety(source: str, prov: _Provenance):
    if Path(source).is_file():
        prov.read(source)
    return resolve(source)


def _algebra(path: str, prov: _Provenance) -> FDAlgebra:
    prov.read(path)
    return load_algebra(path)


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _write_json(path: str | None, data: dict) -> None:
    _write(path, json.dumps(data, indent=1) + "\n")


def _fail(report) -> int:
    print(report.summary(), file=sys.stderr)
    return EXIT_FAIL


def _generated(variety, mode: str, dendriform: bool):
    m = Mode(mode)
    return generate_dendriform_identities(variety, m) if dendriform else generate_variety_identities(variety, m)


def _identity_file(text: str) -> list[tuple[str, object]]:
    headers, _ = read_identity_lines(text)
    try:
        nops = int(headers.get("nops", "1"))
        context = Context(headers.get("context", "omega"))
    except ValueError as exc:
        raise InputError(f"bad identity file header: {exc}") from None
    _, entries = read_identity_lines(text, Signature(nops, context))
    sources = {}
    pending = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("# source:"):
            pending = line.partition(":")[2].strip()
        elif line and not line.startswith("#"):
            sources[lineno] = pending or f"line {lineno}"
            pending = None
    return [(sources[lineno], p) for lineno, p in entries]


def cmd_identities(args, prov: _Provenance) -> int:
    variety = _variety(args.variety, prov)
    gen = _generated(variety, args.mode, args.dendriform)
    _write(args.out, gen.to_text(prov.lines()))
    return EXIT_PASS


def cmd_verify(args, prov: _Provenance) -> int:
    algebra = _algebra(args.algebra, prov)
    if args.identities:
        identities = _identity_file(prov.read(args.identities).decode("utf-8"))
    elif args.variety:
        variety = _variety(args.variety, prov)
        identities = variety.identities if args.mode is None else _generated(variety, args.mode, args.dendriform)
    else:
        raise InputError("verify needs --identities or --variety")
    report = check_identities(algebra, identities)
    if not report:
        return _fail(report)
    print(report.summary())
    return EXIT_PASS


def cmd_rb_check(args, prov: _Provenance) -> int:
    algebra = _algebra(args.algebra, prov)
    prov.read(args.operator)
    report = check_rota_baxter(algebra, load_operator(args.operator), args.weight)
    if not report:
        return _fail(report)
    print(report.summary())
    return EXIT_PASS


def cmd_double(args, prov: _Provenance) -> int:
    algebra = _algebra(args.algebra, prov)
    mode = Mode(args.mode)
    weight = args.weight if args.weight is not None else (None if mode is Mode.TRI else Fraction(0))
    dd = double_dendriform(algebra, mode, weight)
    for report in (verify_embedding(dd, algebra), check_rota_baxter(dd.algebra, dd.rb_operator, dd.weight)):
        if not report:
            return _fail(report)
    extra = prov.json()
    _write_json(args.out_algebra, dd.algebra.to_json(extra))
    if args.out_operator:
        _write_json(args.out_operator, dd.rb_operator.to_json(extra))
    print(f"doubled {algebra.dim} -> {dd.algebra.dim} dimensions; operator weight {dd.weight}", file=sys.stderr)
    return EXIT_PASS


def cmd_split(args, prov: _Provenance) -> int:
    if args.scaled and args.weight == 0:
        raise InputError("the scaled convention requires a nonzero weight")
    algebra = _algebra(args.algebra, prov)
    prov.read(args.operator)
    try:
        derived = derived_dendriform(algebra, load_operator(args.operator), args.weight, scaled=args.scaled)
    except RotaBaxterError as exc:
        print(exc, file=sys.stderr)
        return EXIT_FAIL
    _write_json(args.out, derived.to_json(prov.json()))
    return EXIT_PASS


def cmd_koszul(args, prov: _Provenance) -> int:
    variety = _variety(args.variety, prov)
    report = verify_koszul_tri(variety, args.sign_convention)
    sys.stdout.write(report.to_text())
    if not report.passed:
        print("koszul dimension chain does not match", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dendriform", description="Successor identities, Rota-Baxter doubling and arity-3 duality checks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    modes = [m.value for m in Mode]

    p = sub.add_parser("identities", help="write the generated identity set")
    p.add_argument("--variety", required=True, help="builtin name or variety file")
    p.add_argument("--mode", required=True, choices=modes)
    p.add_argument("--dendriform", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("verify", help="check an algebra against identities")
    p.add_argument("--algebra", required=True)
    p.add_argument("--identities")
    p.add_argument("--variety")
    p.add_argument("--mode", choices=modes)
    p.add_argument("--dendriform", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rb-check", help="check the Rota-Baxter relation")
    p.add_argument("--algebra", required=True)
    p.add_argument("--operator", required=True)
    p.add_argument("--weight", required=True, type=_weight)
    p.set_defaults(func=cmd_rb_check)

    p = sub.add_parser("double", help="build A + A' with its Rota-Baxter operator")
    p.add_argument("--algebra", required=True)
    p.add_argument("--mode", required=True, choices=modes)
    p.add_argument("--weight", type=_weight)
    p.add_argument("--out-algebra")
    p.add_argument("--out-operator")
    p.set_defaults(func=cmd_double)

    p = sub.add_parser("split", help="derived split operations of a Rota-Baxter algebra")
    p.add_argument("--algebra", required=True)
    p.add_argument("--operator", required=True)
    p.add_argument("--weight", required=True, type=_weight)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--scaled", dest="scaled", action="store_true")
    g.add_argument("--unscaled", dest="scaled", action="store_false")
    p.add_argument("--out")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("koszul", help="arity-3 dimension chain for the tri-algebra dual")
    p.add_argument("--variety", required=True)
    p.add_argument("--sign-convention", choices=["sgn", "trivial"], default="sgn")
    p.set_defaults(func=cmd_koszul)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    prov = _Provenance(["dendriform", *argv])
    try:
        return args.func(args, prov)
    except (InputError, ValueError, OSError, KeyError, UnicodeDecodeError) as exc:
        print(f"dendriform {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
