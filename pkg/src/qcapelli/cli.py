"""Command-line entry point: ``qcapelli <subcommand> ...``.

Output is JSON on stdout.  Exit codes: 0 success, 1 a verification failed,
2 invalid flags.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .schur_q import factorial_schur_q, schur_q
from .shifted import BarredStandardTableau, StrictPartition, enumerate_standard_barred, strict_partitions
from .suite import CHECKS, suite_calls
from .uqn import capelli_element, hc_image, quantum_immanant
from .weyl_rep import (
    verify_annihilation,
    verify_even_capelli,
    verify_immanant_image,
    verify_odd_capelli,
    verify_tableau_capelli,
)

IDENTITIES = ("odd-capelli", "even-capelli", "tableau-capelli", "immanant-image", "annihilation")


class UsageError(Exception):
    pass


def _shape(text: str) -> StrictPartition:
    try:
        return StrictPartition.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid strict partition {text!r}: {exc}") from None


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _tableau(text: str, shape: StrictPartition) -> BarredStandardTableau:
    if text == "canonical":
        return enumerate_standard_barred(shape)[0]
    try:
        if text.lstrip().startswith("{"):
            U = BarredStandardTableau.from_json(json.loads(text))
            if not U.is_valid():
                raise ValueError("not a standard barred tableau")
        else:
            U = BarredStandardTableau.parse(text)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"invalid tableau {text!r}: {exc}") from None
    if U.shape != shape:
        raise UsageError(f"tableau {U.to_text()} does not have shape {shape}")
    return U


def _threads() -> int:
    raw = os.environ.get("QCAPELLI_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"QCAPELLI_THREADS must be an integer, got {raw!r}") from None


def _tableau_json(U: BarredStandardTableau) -> dict:
    return {
        "text": U.to_text(),
        **U.to_json(),
        "signed_contents": [str(k) for k in U.signed_contents()],
    }


def cmd_tableaux(args):
    tabs = enumerate_standard_barred(args.shape)
    out = [_tableau_json(U) for U in tabs]
    text = [f"{U.to_text():<16} {' '.join(str(k) for k in U.signed_contents())}" for U in tabs]
    return out, text, 0


def cmd_schur_q(args):
    lam, N = args.shape, args.n_vars
    if args.factorial is None:
        p = schur_q(lam, N)
    else:
        p = factorial_schur_q(lam, N, "+" if args.factorial == "plus" else "-")
    out = {"shape": lam.to_json(), "n_vars": N, "factorial": args.factorial, "poly": p.to_json(), "text": str(p)}
    return out, [str(p)], 0


def _check_rows(lam: StrictPartition, N: int):
    if lam.length > N:
        raise UsageError(f"shape {lam} has more than {N} rows")


def cmd_immanant(args):
    lam, N = args.shape, args.qn
    _check_rows(lam, N)
    U = _tableau(args.tableau, lam)
    z = capelli_element(U, N) if args.capelli else quantum_immanant(U, N)
    out = {
        "shape": lam.to_json(),
        "tableau": U.to_text(),
        "qn": N,
        "element": "capelli" if args.capelli else "quantum-immanant",
        "terms": z.to_json(),
    }
    return out, [str(z)], 0


def cmd_hc(args):
    lam, N = args.shape, args.qn
    _check_rows(lam, N)
    U = _tableau(args.tableau, lam)
    img = hc_image(quantum_immanant(U, N), N)
    match = img == factorial_schur_q(lam, N, "+")
    verdict = f"matches factorial Schur Q: {'true' if match else 'false'}"
    out = {"shape": lam.to_json(), "qn": N, "poly": img.to_json(), "text": str(img), "verdict": verdict}
    return out, [str(img), verdict], 0 if match else 1


def _identity_reports(args):
    ident = args.identity
    M, N = args.m, args.qn
    if ident in ("odd-capelli", "even-capelli"):
        if args.n is None:
            raise UsageError(f"--identity {ident} needs --n")
        f = verify_odd_capelli if ident == "odd-capelli" else verify_even_capelli
        return [f(M, N, args.n)]
    if args.shape is not None:
        shapes = [args.shape]
        if args.n is not None and args.n != args.shape.n:
            raise UsageError("--n disagrees with --shape")
    elif args.n is not None:
        shapes = [lam for lam in strict_partitions(args.n) if lam.length <= N]
    else:
        raise UsageError(f"--identity {ident} needs --shape or --n")
    for lam in shapes:
        _check_rows(lam, N)
    if ident == "tableau-capelli":
        if args.tableau is not None:
            if args.shape is None:
                raise UsageError("--tableau needs --shape")
            tabs = [_tableau(args.tableau, args.shape)]
        else:
            tabs = [U for lam in shapes for U in enumerate_standard_barred(lam)]
        return [verify_tableau_capelli(U, M, N) for U in tabs]
    f = verify_immanant_image if ident == "immanant-image" else verify_annihilation
    return [f(lam, M, N) for lam in shapes]


def cmd_verify(args):
    if (args.suite is None) == (args.identity is None):
        raise UsageError("give exactly one of --suite or --identity")
    if args.identity is not None:
        if args.m is None or args.qn is None:
            raise UsageError("--identity needs --m and --qn")
        reports = _identity_reports(args)
        ok = all(r["exact_equal"] for r in reports)
        text = [f"{'PASS' if r['exact_equal'] else 'FAIL'}  {r['identity']}  {r['parameters']}" for r in reports]
        return {"pass": ok, "reports": reports}, text, 0 if ok else 1
    names = list(CHECKS) if args.suite == ["all"] else args.suite
    unknown = [s for s in names if s not in CHECKS]
    if unknown:
        raise UsageError(f"unknown suite {unknown}; choose from all, {', '.join(CHECKS)}")
    calls = suite_calls(args.max_n, args.qn)
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        futures = [pool.submit(calls[name]) for name in names]
        reports = [f.result() for f in futures]
    ok = all(r.passed for r in reports)
    return {"pass": ok, "reports": [r.to_json() for r in reports]}, [r.line() for r in reports], 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcapelli", description="Exact checks for queer Capelli identities.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="print aligned text after the JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tableaux", parents=[common], help="standard barred tableaux of a shape")
    p.add_argument("--shape", type=_shape, required=True)
    p.set_defaults(func=cmd_tableaux)

    p = sub.add_parser("schur-q", parents=[common], help="Schur Q or factorial Schur Q polynomial")
    p.add_argument("--shape", type=_shape, required=True)
    p.add_argument("--n-vars", type=_positive, required=True)
    p.add_argument("--factorial", choices=("plus", "minus"))
    p.set_defaults(func=cmd_schur_q)

    p = sub.add_parser("immanant", parents=[common], help="quantum immanant in PBW form")
    p.add_argument("--shape", type=_shape, required=True)
    p.add_argument("--tableau", default="canonical", help='"canonical", compact text like "1,2b;3", or JSON')
    p.add_argument("--qn", type=_positive, required=True)
    p.add_argument("--capelli", action="store_true", help="the Capelli element instead")
    p.set_defaults(func=cmd_immanant)

    p = sub.add_parser("hc", parents=[common], help="Harish-Chandra image of a quantum immanant")
    p.add_argument("--shape", type=_shape, required=True)
    p.add_argument("--tableau", default="canonical")
    p.add_argument("--qn", type=_positive, required=True)
    p.set_defaults(func=cmd_hc)

    p = sub.add_parser("verify", parents=[common], help="run identity checks")
    p.add_argument("--suite", type=lambda s: s.split(","), help=f"all or a comma list of: {', '.join(CHECKS)}")
    p.add_argument("--identity", choices=IDENTITIES)
    p.add_argument("--m", type=_positive)
    p.add_argument("--qn", type=_positive)
    p.add_argument("--n", type=_positive)
    p.add_argument("--shape", type=_shape)
    p.add_argument("--tableau")
    p.add_argument("--max-n", type=_positive, default=4)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, text, code = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    print(json.dumps(out, indent=2 if args.pretty else None))
    if args.pretty:
        for line in text:
            print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
