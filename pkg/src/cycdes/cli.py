"""Command-line interface: ``cycdes verify | expand | dist | map``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .bijections import (
    DomainError,
    arc_perm_to_syt,
    arc_phi,
    arc_psi,
    arc_to_syt,
    multi_shuffle_phi,
    psi_singleton,
    word_f,
)
from .claims import CLAIMS, format_params, run_cell
from .classes import ClassSpecError, parse_class_spec
from .distributions import cdes_dist, des_dist
from .perms import cdes_set, format_mask, format_perm, parse_mask, parse_perm
from .schur import CertificateError, SchurExpansionError, csp_certificate, format_partition, schur_expand
from .tableaux import cdes_near_hook, format_tableau

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

MAPS = ("wordf", "multishuffle", "psi", "arcphi", "arcpsi", "arc2syt", "arcperm2syt")


class UsageError(Exception):
    pass


def max_n() -> int:
    try:
        return int(os.environ.get("CYCDES_MAX_N", "10"))
    except ValueError:
        raise UsageError("CYCDES_MAX_N must be an integer") from None


def parse_range(text: str) -> tuple:
    try:
        if ".." in text:
            a, b = text.split("..")
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad --n value {text!r}, expected N or A..B") from None
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


# --- verify -------------------------------------------------------------------


def _print_table_row(rep, out):
    params = " ".join(f"{k}={v}" for k, v in format_params(rep.params).items())
    line = f"{rep.claim:<20} {params:<40} {rep.status.upper():<5} {rep.elapsed * 1000:9.1f} ms"
    if rep.witness is not None:
        line += "  witness: " + json.dumps(rep.witness)
    print(line, file=out)


def cmd_verify(args, out=None) -> int:
    out = out or sys.stdout
    claim = CLAIMS.get(args.claim)
    if claim is None:
        raise UsageError(f"unknown claim {args.claim!r}; choose from {', '.join(CLAIMS)}")
    lo, hi = parse_range(args.n) if args.n else claim.default_n
    cap = max_n()
    if lo < claim.min_n or hi > cap:
        raise UsageError(f"{claim.id} needs {claim.min_n} <= n <= {cap}, got {lo}..{hi}")
    J = None
    if args.J is not None:
        if not claim.takes_j:
            raise UsageError(f"{claim.id} does not take --J")
        try:
            J = parse_mask(args.J)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    cells = []
    for n in range(lo, hi + 1):
        try:
            cells.extend(claim.cells(n, J))
        except ValueError as exc:
            raise UsageError(str(exc)) from None

    failed = 0
    total = 0
    with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
        for rep in pool.map(lambda p: run_cell(claim, p), cells):
            total += 1
            if args.format == "json":
                print(json.dumps(rep.to_json()), file=out)
            else:
                _print_table_row(rep, out)
            if rep.status == "fail":
                failed += 1
                if not args.all:
                    pool.shutdown(wait=False, cancel_futures=True)
                    break
    if args.format != "json":
        print(f"{claim.id}: {total - failed}/{total} cells passed", file=out)
    return EXIT_FAIL if failed else EXIT_PASS


# --- expand / dist ---------------------------------------------------------------


def _parse_spec(text: str):
    try:
        return parse_class_spec(text)
    except ClassSpecError as exc:
        raise UsageError(str(exc)) from None


def cmd_expand(args, out=None) -> int:
    out = out or sys.stdout
    A = _parse_spec(args.spec)
    result = {"spec": args.spec, "n": A.n, "size": len(A)}
    try:
        coeffs = schur_expand(A)
        result["straight"] = {format_partition(lam): m for lam, m in coeffs.items() if m}
    except SchurExpansionError as exc:
        result["status"] = "not-Schur-positive"
        result["reason"] = exc.reason
    if "status" not in result:
        if A.n < 2:
            result["status"] = "Schur-positive"
        else:
            try:
                result.update(csp_certificate(A).to_json())
            except CertificateError as exc:
                result["status"] = exc.reason
                if isinstance(exc.witness, tuple):
                    result["witness"] = [format_mask(m) for m in exc.witness]
    if args.format == "json":
        print(json.dumps(result), file=out)
    else:
        print(f"{args.spec}  (n={A.n}, {len(A)} permutations)  status: {result['status']}", file=out)
        for key in ("straight", "cyclic"):
            for shape, m in result.get(key, {}).items():
                print(f"  {key:<9} {shape:<16} {m}", file=out)
        if "witness" in result:
            print(f"  cDes fibers differ: {result['witness'][0]} vs {result['witness'][1]}", file=out)
    return EXIT_PASS


def cmd_dist(args, out=None) -> int:
    out = out or sys.stdout
    A = _parse_spec(args.spec)
    if args.des:
        d = des_dist(A, args.track_t)
    else:
        if A.n < 2:
            raise UsageError("cyclic descents need n >= 2")
        d = cdes_dist(A, args.track_t)
    print(d.dumps(), file=out)
    return EXIT_PASS


# --- map ---------------------------------------------------------------------------


def _parse_word(text: str) -> tuple:
    body = text.replace(",", "").replace(" ", "")
    if not body.isdigit():
        raise UsageError(f"bad word {text!r}")
    return tuple(int(c) for c in body)


def _parse_gamma(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.strip("()").split(",") if x.strip())
    except ValueError:
        raise UsageError(f"bad composition {text!r}") from None


def _parse_reduced(text: str | None):
    if text is None:
        return None
    try:
        return [int(tok.strip().lstrip("s")) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"bad reduced word {text!r}, expected e.g. s1,s2,s1") from None


def cmd_map(args, out=None) -> int:
    out = out or sys.stdout
    name = args.name
    if name not in MAPS:
        raise UsageError(f"unknown map {name!r}; choose from {', '.join(MAPS)}")
    rec = {"map": name, "input": args.input}
    try:
        if name == "wordf":
            rec["output"] = "".join(str(x) for x in word_f(_parse_word(args.input)))
        else:
            p = parse_perm(args.input)
            rec["input"] = format_perm(p)
            rec["input_cdes"] = format_mask(cdes_set(p)) if len(p) > 1 else None
            if name == "multishuffle":
                if args.gamma is None:
                    raise UsageError("multishuffle needs --gamma")
                q = multi_shuffle_phi(p, _parse_gamma(args.gamma), _parse_reduced(args.word))
            elif name == "psi":
                if args.j is None:
                    raise UsageError("psi needs --j")
                q = psi_singleton(p, args.j)
            elif name == "arcphi":
                q = arc_phi(p)
            elif name == "arcpsi":
                q = arc_psi(p)
            else:
                T = arc_to_syt(p) if name == "arc2syt" else arc_perm_to_syt(p)
                rec["output"] = format_tableau(T)
                rec["output_cdes"] = format_mask(cdes_near_hook(T))
                q = None
            if q is not None:
                rec["output"] = format_perm(q)
                rec["output_cdes"] = format_mask(cdes_set(q)) if len(q) > 1 else None
    except (DomainError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        print(json.dumps(rec), file=out)
    else:
        print(f"input   {rec['input']}" + (f"   cDes {rec['input_cdes']}" if rec.get("input_cdes") else ""), file=out)
        print(f"output  {rec['output']}" + (f"   cDes {rec['output_cdes']}" if rec.get("output_cdes") else ""), file=out)
    return EXIT_PASS


# --- entry point ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cycdes", description="Cyclic descent statistics: checks and tools.")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="exhaustively check a claim over a range of n")
    v.add_argument("claim", help="claim id (see 'cycdes verify list')")
    v.add_argument("--n", help="N or A..B (default: per-claim range)")
    v.add_argument("--J", help="restrict to one mask, e.g. {1,3}")
    v.add_argument("--all", action="store_true", help="keep going after the first failure")
    v.add_argument("--threads", type=int, default=1)
    v.add_argument("--format", choices=("table", "json"), default="table")

    e = sub.add_parser("expand", help="Schur expansion and cSp certificate of a class")
    e.add_argument("spec", help="class spec, e.g. VC[Dinv(5,{1,2})]")
    e.add_argument("--format", choices=("table", "json"), default="table")

    d = sub.add_parser("dist", help="cDes (or Des) distribution of a class as JSON")
    d.add_argument("spec")
    d.add_argument("--track-t", action="store_true", help="also record the position of n")
    d.add_argument("--des", action="store_true", help="plain descent sets instead of cyclic ones")

    m = sub.add_parser("map", help="apply one of the explicit bijections")
    m.add_argument("name", help=", ".join(MAPS))
    m.add_argument("input", help="permutation (or a {1,2}-word for wordf)")
    m.add_argument("--j", type=int, help="the element of J for psi")
    m.add_argument("--gamma", help="composition for multishuffle, e.g. (5,6,3)")
    m.add_argument("--word", help="reduced word for multishuffle, e.g. s1,s2,s1")
    m.add_argument("--format", choices=("table", "json"), default="table")
    return parser


def _list_claims(out) -> int:
    for c in CLAIMS.values():
        print(f"{c.id:<20} n={c.default_n[0]}..{c.default_n[1]:<3} {c.summary}", file=out)
    return EXIT_PASS


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        if args.command == "verify":
            if args.claim == "list":
                return _list_claims(sys.stdout)
            return cmd_verify(args)
        if args.command == "expand":
            return cmd_expand(args)
        if args.command == "dist":
            return cmd_dist(args)
        return cmd_map(args)
    except UsageError as exc:
        print(f"cycdes: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
