"""Command-line interface.

Every subcommand prints one JSON document on stdout.  Exit codes: 0 on
success, 1 when ``verify`` finds a failing identity, 2 on usage errors.
Relative ``--output``/``--figure`` paths are resolved against
``$HECKE_REDUCE_OUTPUT_DIR`` when it is set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any

from .core import GeneralIndex, PrimeIndex
from .identities import hecke_product, lemma_expansion
from .lfunction import euler_factor, invert_factor, normal_form
from .reducer import compose_slot, factorize, reduce
from .verify import SCHEMA, run_verification

OUTPUT_DIR_ENV = "HECKE_REDUCE_OUTPUT_DIR"


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _prime_index(n: int, exps: list[int]) -> PrimeIndex:
    if len(exps) != n - 1:
        raise UsageError(f"--index needs {n - 1} entries for n={n}, got {len(exps)}")
    if any(e < 0 for e in exps):
        raise UsageError("exponents must be non-negative")
    return PrimeIndex(n, tuple(exps))


def _cmd_reduce(args) -> tuple[dict[str, Any], int]:
    index = _prime_index(args.n, args.index)
    poly = reduce(index)
    if args.normal_form:
        poly = normal_form(poly)
    return {"index": list(index.exps), **poly.to_json()}, 0


def _cmd_expand(args) -> tuple[dict[str, Any], int]:
    index = _prime_index(args.n, args.index)
    if args.k0 < 0:
        raise UsageError("--k0 must be non-negative")
    if args.via == "lemma":
        r = index.last_nonzero or 1
        try:
            terms = lemma_expansion(args.n, args.k0, index.exps[:r])
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        terms = hecke_product(args.k0, index)
    return {"k0": args.k0, "index": list(index.exps), **terms.to_json()}, 0


def _cmd_compose(args) -> tuple[dict[str, Any], int]:
    if not 1 <= args.slot <= args.n - 1:
        raise UsageError(f"--slot must lie in [1, {args.n - 1}]")
    return {"slot": args.slot, **compose_slot(args.n, args.slot).to_json()}, 0


def _cmd_factor(args) -> tuple[dict[str, Any], int]:
    if len(args.m) != args.n - 1:
        raise UsageError(f"--m needs {args.n - 1} entries for n={args.n}, got {len(args.m)}")
    try:
        index = GeneralIndex.from_signed(args.n, args.m)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return {"m": list(index.signed()), **factorize(index).to_json()}, 0


def _cmd_euler(args) -> tuple[dict[str, Any], int]:
    if args.upto < 0:
        raise UsageError("--upto must be non-negative")
    factor = euler_factor(args.n)
    out: dict[str, Any] = {"n": args.n, "factor": factor.to_json()}
    if args.invert:
        inverse = invert_factor(factor, args.upto)
        if args.normal_form:
            inverse = [normal_form(b) for b in inverse]
        out["inverse"] = [b.to_json() for b in inverse]
    return out, 0


def _cmd_verify(args) -> tuple[dict[str, Any], int]:
    if args.tol <= 0:
        raise UsageError("--tol must be positive")
    if args.max_weight < 0 or args.trials < 1:
        raise UsageError("--max-weight must be >= 0 and --trials >= 1")
    report = run_verification(args.n, args.max_weight, args.trials, args.seed, args.tol)
    if args.figure:
        from .report import plot_verification

        report["figure"] = str(plot_verification(report, _resolve(args.figure)))
    return report, 0 if report["pass"] else 1


def _resolve(path: str) -> Path:
    p = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hecke-reduce",
        description="Reduce SL(n,Z) Maass form Fourier coefficients to polynomials in Hecke operators.",
    )
    parser.add_argument("--pretty", action="store_true", help="indent the JSON output")
    parser.add_argument("--output", help="also write the JSON document to this file")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--n", type=int, required=True, help="rank n >= 2")
        p.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
        p.add_argument("--output", default=argparse.SUPPRESS)
        return p

    p = add("reduce", "Hecke polynomial of A(p^K1, ..., p^K_{n-1})")
    p.add_argument("--index", type=_int_list, required=True, help="exponents K1,...,K_{n-1}")
    p.add_argument("--normal-form", action="store_true", help="rewrite T_{p^k}, k >= n, via the Euler factor")
    p.set_defaults(func=_cmd_reduce)

    p = add("expand", "expand T_{p^k0} * A(p^K1, ...) as a formal sum")
    p.add_argument("--k0", type=int, required=True)
    p.add_argument("--index", type=_int_list, required=True)
    p.add_argument("--via", choices=("hecke", "lemma"), default="hecke", help="divisor-tuple or nested-sum form")
    p.set_defaults(func=_cmd_expand)

    p = add("compose", "composition-sum polynomial of A(1, ..., p, ..., 1)")
    p.add_argument("--slot", type=int, required=True)
    p.set_defaults(func=_cmd_compose)

    p = add("factor", "per-prime reduction of A(m1, ..., m_{n-1})")
    p.add_argument("--m", type=_int_list, required=True, help="entries; the last may be negative")
    p.set_defaults(func=_cmd_factor)

    p = add("euler", "local Euler factor and its series inverse")
    p.add_argument("--upto", type=int, default=6)
    p.add_argument("--invert", action="store_true")
    p.add_argument("--normal-form", action="store_true", help="normalise the inverse coefficients")
    p.set_defaults(func=_cmd_euler)

    p = add("verify", "check every identity against random Satake models")
    p.add_argument("--max-weight", type=int, default=4)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--figure", help="write a PNG of the per-check errors")
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.n < 2:
        parser.error("--n must be >= 2")
    try:
        payload, status = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    document = {"schema": SCHEMA, "command": args.command, **payload}
    text = json.dumps(document, indent=2 if args.pretty else None, ensure_ascii=False)
    print(text)
    if args.output:
        target = _resolve(args.output)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text + "\n", encoding="utf-8")
    return status


if __name__ == "__main__":
    sys.exit(main())
