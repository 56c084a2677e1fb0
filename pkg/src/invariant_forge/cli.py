"""Command-line front end: ``invariant-forge molien|beta|verify-alpha|examples``.

Exit codes: 0 success, 1 a check failed, 2 invalid input, 3 method not
applicable to the action, 4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .actionfile import dump_action, read_action_file
from .alpha import ALPHA_DEGREE_CAP, richman_certificate, verify_identity3
from .corpus import Corpus
from .errors import (ActionFileError, CapExceededError, InapplicableError,
                     InvariantForgeError)
from .fields import prime_power_base
from .invariants import minimal_generators
from .molien import molien_by_counting, molien_charsum, molien_compare
from .poly import count_monomials

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INAPPLICABLE, EXIT_CAP = 0, 1, 2, 3, 4

MAX_NVARS = 12
MAX_DEGREE = 16
MAX_MONOMIALS = 50_000


class _Failure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def check_caps(nvars: int, D: int, override: bool, messages: list) -> None:
    """Raise CapExceededError unless ``override``; then only warn."""
    problems = []
    if nvars > MAX_NVARS:
        problems.append(f"nvars = {nvars} exceeds the cap of {MAX_NVARS}")
    if D > MAX_DEGREE:
        problems.append(f"degree {D} exceeds the cap of {MAX_DEGREE}")
    top = count_monomials(nvars, D)
    if top > MAX_MONOMIALS:
        problems.append(f"{top} monomials in degree {D} exceeds the cap of {MAX_MONOMIALS}")
    if not problems:
        return
    if not override:
        raise CapExceededError("; ".join(problems) + " (use --cap-override)")
    for msg in problems:
        messages.append(f"warning: cap overridden: {msg}")


# --------------------------------------------------------------------------
# commands; each returns (results, exit_code, human lines)


def cmd_molien(args, messages):
    action = read_action_file(args.file)
    D = args.degree
    if D < 0:
        raise _Failure(EXIT_INPUT, "degree must be >= 0")
    check_caps(action.nvars, D, args.cap_override, messages)
    results = {"action": dump_action(action), "degree": D, "method": args.method}
    code = EXIT_OK
    if args.method == "counting":
        results["counting"] = list(molien_by_counting(action, D).coeffs)
    elif args.method == "charsum":
        series = molien_charsum(action, D)
        results["charsum"] = series.integers()
        results["abstract_only"] = series.abstract_only
    else:
        cmp = molien_compare(action, D)
        results.update(counting=list(cmp.native), verdict=cmp.verdict,
                       mismatches=list(cmp.mismatches), abstract_only=cmp.abstract_only)
        if cmp.charsum is not None:
            results.update(charsum=list(cmp.charsum), counting_rational=list(cmp.rational))
        if cmp.verdict == "mismatch":
            code = EXIT_FAIL
    lines = [f"{'degree':>6}  " + "  ".join(f"{k:>10}" for k in ("counting", "charsum"))]
    for d in range(D + 1):
        cells = [results[k][d] if k in results else "-" for k in ("counting", "charsum")]
        lines.append(f"{d:>6}  " + "  ".join(f"{c:>10}" for c in cells))
    if "verdict" in results:
        lines.append(f"verdict: {results['verdict']}")
    return results, code, lines


def cmd_beta(args, messages):
    action = read_action_file(args.file)
    D = args.degree if args.degree is not None else min(action.order, MAX_DEGREE)
    if D < 1:
        raise _Failure(EXIT_INPUT, "search limit must be >= 1")
    check_caps(action.nvars, D, args.cap_override, messages)
    cert = minimal_generators(action, D)
    results = {"action": dump_action(action), "degree": D,
               "generator_degrees": sorted(cert.generator_degrees),
               "beta_lower": cert.beta_lower,
               "certified_complete": cert.certified_complete,
               "certification_reason": cert.certification_reason,
               "search_limit": cert.search_limit}
    if not cert.certified_complete:
        messages.append(f"note: {cert.certification_reason}")
    counts = {d: cert.new_in_degree(d) for d in range(1, D + 1)}
    lines = [f"{'degree':>6}  {'new generators':>14}"]
    lines += [f"{d:>6}  {c:>14}" for d, c in counts.items()]
    lines.append(f"beta_lower: {cert.beta_lower}")
    lines.append("certified: " + ("yes" if cert.certified_complete else "no") +
                 f" ({cert.certification_reason})")
    return results, EXIT_OK, lines


def cmd_verify_alpha(args, messages):
    q, l = args.q, args.l
    if prime_power_base(q) is None:
        raise _Failure(EXIT_INPUT, f"q={q} is not a prime power")
    if l < 1:
        raise _Failure(EXIT_INPUT, "l must be >= 1")
    top = l * (q - 1)
    if top > ALPHA_DEGREE_CAP:
        if not args.cap_override:
            raise CapExceededError(f"l(q-1) = {top} exceeds the cap of {ALPHA_DEGREE_CAP}"
                                   " (use --cap-override)")
        messages.append(f"warning: cap overridden: l(q-1) = {top} exceeds {ALPHA_DEGREE_CAP}")
    check_caps(2 * l, top, args.cap_override, messages)
    do_id = args.identity3 or not args.certificate
    do_cert = args.certificate or not args.identity3
    results = {"q": q, "l": l, "degree": top}
    lines, ok = [], True
    if do_id:
        ids = {str(i): bool(verify_identity3(l, i, q)) for i in range(q)}
        results["identity3"] = ids
        ok &= all(ids.values())
        lines.append(f"{'i':>4}  {'identity':>8}")
        lines += [f"{i:>4}  {'ok' if v else 'FAIL':>8}" for i, v in ids.items()]
    if do_cert:
        cert = richman_certificate(q, l)
        results["certificate"] = {"g_degree": cert.g_degree, "g_invariant": cert.g_invariant,
                                  "indecomposability_witness": cert.indecomposability_witness,
                                  "beta_lower_from_engine": cert.beta_lower_from_engine,
                                  "certified": cert.certified}
        ok &= cert.certified
        lines.append(f"certificate: beta >= {l} " + ("certified" if cert.certified else "FAILED"))
        lines.append(f"  g_l invariant: {cert.g_invariant}; outside subalgebra: "
                     f"{cert.indecomposability_witness}; engine beta_lower: "
                     f"{cert.beta_lower_from_engine}")
    return results, EXIT_OK if ok else EXIT_FAIL, lines


def cmd_examples(args, messages):
    corpus = Corpus.load(args.file)
    if args.list:
        names = corpus.names()
        return {"items": names}, EXIT_OK, names
    results = [r.as_dict() for r in corpus.run()]
    failed = [r["name"] for r in results if not r["passed"]]
    for name in failed:
        messages.append(f"corpus item failed: {name}")
    lines = [f"{'PASS' if r['passed'] else 'FAIL'}  {r['name']}: {r['detail']}" for r in results]
    lines.append(f"{len(results) - len(failed)}/{len(results)} items passed")
    return {"items": results, "failed": failed}, EXIT_FAIL if failed else EXIT_OK, lines


COMMANDS = {"molien": cmd_molien, "beta": cmd_beta,
            "verify-alpha": cmd_verify_alpha, "examples": cmd_examples}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON report")
    common.add_argument("--cap-override", action="store_true",
                        help="exceed resource caps with a warning")
    parser = argparse.ArgumentParser(prog="invariant-forge", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("molien", parents=[common], help="Molien series coefficients")
    p.add_argument("file")
    p.add_argument("--degree", "-D", type=int, default=10)
    p.add_argument("--method", choices=("counting", "charsum", "both"), default="both")
    p = sub.add_parser("beta", parents=[common], help="minimal generator degrees")
    p.add_argument("file")
    p.add_argument("--degree", "-D", type=int, default=None,
                   help="search limit (default: |G|, capped)")
    p = sub.add_parser("verify-alpha", parents=[common], help="alpha_q identities and bound")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--identity3", action="store_true", help="only the coaction identities")
    p.add_argument("--certificate", action="store_true", help="only the lower-bound certificate")
    p = sub.add_parser("examples", parents=[common], help="replay the regression corpus")
    p.add_argument("file", nargs="?", default=None, help="corpus file (default: bundled)")
    p.add_argument("--list", action="store_true", help="list item names only")
    return parser


def _args_echo(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("json", "command")}


def emit_json(report: dict, stream=None) -> None:
    stream = stream or sys.stdout
    text = json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    buf = getattr(stream, "buffer", None)
    if buf is not None:
        stream.flush()
        buf.write(text.encode("utf-8"))
        buf.flush()
    else:
        stream.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    messages: list[str] = []
    t0 = time.perf_counter()
    results, lines = {}, []
    try:
        results, code, lines = COMMANDS[args.command](args, messages)
        status = "ok" if code == EXIT_OK else "failed"
    except _Failure as exc:
        code, status = exc.code, "error"
        messages.append(f"error: {exc}")
    except ActionFileError as exc:
        code, status = EXIT_INPUT, "error"
        messages.append(f"error: {exc}")
    except InapplicableError as exc:
        code, status = EXIT_INAPPLICABLE, "inapplicable"
        messages.append(f"error: {exc}")
    except CapExceededError as exc:
        code, status = EXIT_CAP, "cap-exceeded"
        messages.append(f"error: {exc}")
    except (InvariantForgeError, ValueError) as exc:
        code, status = EXIT_INPUT, "error"
        messages.append(f"error: {exc}")
    report = {"command": args.command, "args": _args_echo(args), "results": results,
              "messages": messages, "status": status, "exit_code": code,
              "timing": {"seconds": round(time.perf_counter() - t0, 6)},
              "version": __version__}
    if args.json:
        emit_json(report)
    else:
        for line in lines:
            print(line)
        for msg in messages:
            print(msg, file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
