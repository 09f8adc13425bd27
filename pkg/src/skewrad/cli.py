"""Command-line front end.

Exit status: 0 when the command succeeds (or a certificate passes), 1 when a
certificate fails, 2 on malformed input or an algebraic error in the input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .errors import AlgebraError, CertificateFailure, ParseError
from .finring import DEFAULT_CAP, FiniteRing, IdealSet, centre
from .harness import (
    DEFAULT_MAX_DEGREE,
    S_PROVENANCE,
    certify_theorem,
    quotient_transfer_check,
    semiprimitivity_certificate,
)
from .identities import centre_intersection_check, format_identity, holds_on, standard_identity
from .parsing import format_element, format_poly, load_ringfile, parse_identity, parse_poly
from .radical import d_stable_core, is_d_stable, radical_report
from .skewpoly import NotFound, poly_mul, quasi_inverse_search

SCHEMA = "skewrad.report/1"

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


class Context:
    def __init__(self, args):
        self.cap = args.cap
        self.max_degree = args.max_degree
        self.seed = args.seed

    def rng(self) -> random.Random:
        return random.Random(self.seed)


def _load(path: str, cap: int, need_derivation: bool = False):
    try:
        rf = load_ringfile(path)
    except ParseError as exc:
        raise InputError(f"{path}:{exc.line}:{exc.column}: {exc.message}") from exc
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from exc
    try:
        R, D = rf.build(cap)
        R.check_cap(cap)
    except AlgebraError as exc:
        raise InputError(f"{path}: {type(exc).__name__}: {exc}") from exc
    if need_derivation and D is None:
        raise InputError(f"{path}: no [derivation] section")
    return R, D


def _elements(R: FiniteRing, elems) -> list[str]:
    return [format_element(R, a) for a in sorted(elems)]


def _ideal(R: FiniteRing, I: IdealSet) -> dict:
    return {"size": len(I), "elements": _elements(R, I.elements)}


# -- commands: each returns (payload, status) -------------------------------------------

def cmd_ring_info(args, ctx):
    R, D = _load(args.file, ctx.cap)
    out = {
        "moduli": list(R.moduli),
        "size": R.size,
        "labels": list(R.labels),
        "unit": format_element(R, R.unit) if R.unit is not None else None,
        "commutative": R.is_commutative(),
        "centre_size": len(centre(R, ctx.cap)),
    }
    if D is not None:
        out["derivation"] = {f"g{i+1}": format_element(R, img) for i, img in enumerate(D.images)}
    return out, "ok"


def cmd_radical(args, ctx):
    R, _ = _load(args.file, ctx.cap)
    rep = radical_report(R, ctx.cap)
    return {"jacobson": _ideal(R, rep.jacobson), "nilradical": _ideal(R, rep.nilradical),
            "nilpotence_index": rep.nilpotence_index}, "ok"


def cmd_dstable_core(args, ctx):
    R, D = _load(args.file, ctx.cap, need_derivation=True)
    rep = radical_report(R, ctx.cap)
    N = rep.nilradical
    S = d_stable_core(R, D, N)
    return {"nilradical": _ideal(R, N), "nilradical_d_stable": is_d_stable(D, N),
            "S": _ideal(R, S), "provenance": S_PROVENANCE}, "ok"


def _poly(text: str, D, which: str):
    try:
        return parse_poly(text, D)
    except ParseError as exc:
        raise InputError(f"{which}: column {exc.column}: {exc.message}") from exc
    except AlgebraError as exc:
        raise InputError(f"{which}: {exc}") from exc


def cmd_skew_mul(args, ctx):
    R, D = _load(args.file, ctx.cap, need_derivation=True)
    p, q = _poly(args.p, D, "p"), _poly(args.q, D, "q")
    return {"p": format_poly(p), "q": format_poly(q), "product": format_poly(poly_mul(p, q))}, "ok"


def cmd_skew_qinv(args, ctx):
    R, D = _load(args.file, ctx.cap, need_derivation=True)
    p = _poly(args.p, D, "p")
    res = quasi_inverse_search(p, ctx.max_degree)
    if isinstance(res, NotFound):
        return {"p": format_poly(p), "found": False, "max_degree": res.max_degree}, "ok"
    return {"p": format_poly(p), "found": True, "quasi_inverse": format_poly(res)}, "ok"


def cmd_identity_check(args, ctx):
    R, _ = _load(args.file, ctx.cap)
    if args.standard is not None:
        if args.standard < 2:
            raise InputError("--standard needs d >= 2")
        f = standard_identity(args.standard)
    else:
        try:
            f = parse_identity(args.identity)
        except ParseError as exc:
            raise InputError(f"identity: column {exc.column}: {exc.message}") from exc
    check = holds_on(R, f)
    out = {"identity": format_identity(f), "arity": f.arity, "holds": check.holds,
           "witness": None if check.witness is None else [format_element(R, a) for a in check.witness]}
    return out, "ok"


def _theorem_payload(R, D, ctx, ring_id):
    cert = certify_theorem(R, D, ring_id=ring_id, max_degree=ctx.max_degree, rng=ctx.rng(), cap=ctx.cap)
    failed_replays = [format_element(R, r.a) for r in cert.replay_results if not r.passed]
    out = {
        "S": _ideal(R, cert.S),
        "nilradical": _ideal(R, cert.nilradical),
        "S_nilpotence_index": cert.s_nilpotence_index,
        "is_ideal": cert.is_ideal,
        "d_stable": cert.d_stable,
        "nil": cert.nil,
        "skew_nilpotence": {"passed": cert.skew.passed, "products_checked": cert.skew.products_checked,
                            "exhaustive": cert.skew.exhaustive},
        "replay": {"checked": len(cert.replay_results), "failed": failed_replays},
        "outside_S": {
            "checked": len(cert.nonqr_evidence),
            "with_evidence": sum(ev.witness is not None for ev in cert.nonqr_evidence),
            "max_degree": ctx.max_degree,
        },
        "provenance": cert.provenance,
    }
    return out, "pass" if cert.passed else "fail"


def cmd_verify_theorem1(args, ctx):
    R, D = _load(args.file, ctx.cap, need_derivation=True)
    try:
        return _theorem_payload(R, D, ctx, args.file)
    except CertificateFailure as exc:
        return {"error": str(exc)}, "fail"


def cmd_verify_corollary(args, ctx):
    R, D = _load(args.file, ctx.cap, need_derivation=True)
    rep = radical_report(R, ctx.cap)
    if not rep.nilradical.is_zero():
        return {"error": "nilradical is nonzero", "nilradical": _ideal(R, rep.nilradical)}, "fail"
    cert = semiprimitivity_certificate(R, D, max_degree=ctx.max_degree, rng=ctx.rng(), cap=ctx.cap)
    entries = []
    for e in cert.entries:
        entries.append({
            "a": format_element(R, e.a),
            "x_a_quasi_inverse": None if e.x_a_quasi_inverse is None else format_poly(e.x_a_quasi_inverse),
            "not_found_witness": None if e.evidence.witness is None else format_poly(e.evidence.witness),
        })
    out = {"S": _ideal(R, cert.S), "max_degree": cert.max_degree,
           "checked": len(cert.entries), "direct_not_found": cert.direct_not_found,
           "entries": entries, "provenance": S_PROVENANCE}
    return out, "pass" if cert.passed else "fail"


def cmd_verify_centre(args, ctx):
    R, _ = _load(args.file, ctx.cap)
    rep = radical_report(R, ctx.cap)
    if not rep.nilradical.is_zero():
        return {"error": "nilradical is nonzero", "nilradical": _ideal(R, rep.nilradical)}, "fail"
    c = centre_intersection_check(R, ctx.cap)
    out = {"centre_size": c.centre_size, "checked": c.checked,
           "violations": _elements(R, c.violations)}
    return out, "pass" if c.passed else "fail"


def _ring_files(paths: list[str]) -> list[str]:
    files: list[str] = []
    for p in paths:
        path = Path(p)
        if path.is_dir():
            files.extend(str(f) for f in sorted(path.glob("*.ring")))
        else:
            files.append(p)
    return files


def cmd_corpus_run(args, ctx):
    files = _ring_files(args.paths)
    if not files:
        raise InputError("no ring files given")

    def one(path: str) -> dict:
        try:
            R, D = _load(path, ctx.cap, need_derivation=True)
            payload, status = _theorem_payload(R, D, ctx, path)
            transfer = quotient_transfer_check(R, D, ctx.cap)
            summary = {
                "file": path,
                "status": status,
                "S": payload["S"]["elements"],
                "nilradical": payload["nilradical"]["elements"],
                "replay_checked": payload["replay"]["checked"],
                "replay_failed": len(payload["replay"]["failed"]),
                "nilradical_d_stable": transfer.descends,
            }
            if transfer.witness is not None:
                summary["obstruction"] = format_element(R, transfer.witness)
            return summary
        except InputError as exc:
            return {"file": path, "status": "error", "error": str(exc)}
        except CertificateFailure as exc:
            return {"file": path, "status": "fail", "error": str(exc)}

    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        results = list(pool.map(one, files))
    statuses = {r["status"] for r in results}
    status = "error" if "error" in statuses else "fail" if "fail" in statuses else "pass"
    return {"runs": results}, status


# -- output ---------------------------------------------------------------------------------

def _text_lines(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for key, v in value.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{key}:")
                lines.extend(_text_lines(v, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(v)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, dict):
                inner = _text_lines(item, indent + 1)
                lines.append(f"{pad}- {inner[0].strip()}")
                lines.extend(inner[1:])
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    return lines


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, list):
        return "{" + ", ".join(_scalar(x) for x in v) + "}"
    if isinstance(v, dict):
        return "{}"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, ensure_ascii=False)
    head = [f"{' '.join(report['command'])}: {report['status']}"]
    return "\n".join(head + _text_lines(report["result"]))


# -- argument parsing -----------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE,
                   help="degree bound for quasi-inverse searches")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest ring size to enumerate")
    p.add_argument("--seed", type=int, default=0, help="seed for all sampling")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--timing", action="store_true", help="include wall-clock time in the report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="skewrad",
                                     description="Radicals of differential polynomial rings over finite rings")
    sub = parser.add_subparsers(dest="group", required=True)

    def leaf(subparsers, name, func, help_text):
        p = subparsers.add_parser(name, help=help_text)
        _add_common(p)
        p.set_defaults(func=func)
        return p

    ring = sub.add_parser("ring", help="ring inspection").add_subparsers(dest="action", required=True)
    leaf(ring, "info", cmd_ring_info, "sizes, labels, unit and centre").add_argument("file")
    leaf(sub, "radical", cmd_radical, "Jacobson radical and nilradical").add_argument("file")
    leaf(sub, "dstable-core", cmd_dstable_core, "largest D-stable ideal in the nilradical").add_argument("file")

    skew = sub.add_parser("skew", help="arithmetic in R[x;D]").add_subparsers(dest="action", required=True)
    p = leaf(skew, "mul", cmd_skew_mul, "multiply two polynomials")
    p.add_argument("file")
    p.add_argument("p")
    p.add_argument("q")
    p = leaf(skew, "qinv", cmd_skew_qinv, "bounded two-sided quasi-inverse search")
    p.add_argument("file")
    p.add_argument("p")

    ident = sub.add_parser("identity", help="polynomial identities").add_subparsers(dest="action", required=True)
    p = leaf(ident, "check", cmd_identity_check, "check a multilinear identity on all generator tuples")
    p.add_argument("file")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--identity", help='e.g. "x1*x2 - x2*x1"')
    which.add_argument("--standard", type=int, metavar="D", help="the standard identity of degree D")

    verify = sub.add_parser("verify", help="certificates").add_subparsers(dest="action", required=True)
    leaf(verify, "theorem1", cmd_verify_theorem1, "certify S is a nil D-ideal with nilpotent S[x;D]").add_argument("file")
    leaf(verify, "corollary", cmd_verify_corollary, "semiprimitivity of R[x;D] when N(R) = 0").add_argument("file")
    leaf(verify, "centre", cmd_verify_centre, "nonzero ideals meet the centre when N(R) = 0").add_argument("file")

    corpus = sub.add_parser("corpus", help="batch certificates").add_subparsers(dest="action", required=True)
    p = leaf(corpus, "run", cmd_corpus_run, "certify every ring file (directories expand to *.ring)")
    p.add_argument("paths", nargs="+")
    p.add_argument("--jobs", type=int, default=4)
    return parser


def run(argv: list[str] | None = None) -> tuple[int, str]:
    """Parse ``argv``, run the command and return (exit code, rendered report)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    ctx = Context(args)
    command = [args.group] + ([args.action] if getattr(args, "action", None) else [])
    start = time.perf_counter()
    try:
        payload, status = args.func(args, ctx)
    except InputError as exc:
        payload, status = {"error": str(exc)}, "error"
    except AlgebraError as exc:
        payload, status = {"error": f"{type(exc).__name__}: {exc}"}, "error"
    report = {
        "schema": SCHEMA,
        "command": command,
        "settings": {"cap": ctx.cap, "max_degree": ctx.max_degree, "seed": ctx.seed},
        "status": status,
        "result": payload,
    }
    if args.timing:
        report["timing_seconds"] = round(time.perf_counter() - start, 6)
    code = {"error": EXIT_INPUT, "fail": EXIT_FAIL}.get(status, EXIT_OK)
    return code, render(report, args.format)


def main(argv: list[str] | None = None) -> int:
    code, text = run(argv)
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
