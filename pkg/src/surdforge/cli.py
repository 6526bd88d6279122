"""Command line entry point: ``surdforge <command> [options]``.

Exit codes: 0 success, 1 domain error (perfect square, failed verification),
2 usage error.  ``--json`` prints exactly one JSON object on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import contfrac, pell
from .errors import SurdforgeError
from .numeric import parse_rational


class DomainError(Exception):
    pass


def _pairs_text(pairs) -> str:
    return "[" + ", ".join(f"[{p.a}, {p.b}]" for p in pairs) + "]"


def _pairs_json(pairs) -> list:
    return [[str(p.a), str(p.b)] for p in pairs]


def _frac_json(r) -> str:
    return f"{r.numerator}/{r.denominator}"


def cmd_search(args):
    res = pell.empirical_min_search(args.n, args.bound, method=args.method, workers=args.threads)
    text = f"minimum: {res.minimum}\nwitnesses: " + ", ".join(map(str, res.witnesses))
    payload = {"n": str(res.n), "bound": str(res.bound), "minimum": str(res.minimum),
               "witnesses": _pairs_json(res.witnesses)}
    return text, payload


def cmd_solutions(args):
    if args.generate is not None:
        pairs = pell.generate_unit_solutions(args.n, args.generate)
    else:
        pairs = pell.unit_solutions_in_box(args.n, args.bound)
    return _pairs_text(pairs), {"solutions": _pairs_json(pairs)}


def cmd_descend(args):
    try:
        start = pell.Pair(args.a, args.b)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    chain = pell.descent_chain(start)
    if len(chain) == 1:
        text = f"{start} is terminal"
    else:
        text = " -> ".join(map(str, chain))
    return text, {"chain": _pairs_json(chain), "length": len(chain)}


def _cf_input(args):
    if args.rational is not None:
        return contfrac.cf_rational(parse_rational(args.rational))
    return contfrac.cf_sqrt(args.sqrt)


def cmd_cf(args):
    cf = _cf_input(args)
    payload = {"text": str(cf), "preperiod": [str(t) for t in cf.preperiod],
               "period": [str(t) for t in cf.period], "finite": cf.is_finite}
    return str(cf), payload


def cmd_convergents(args):
    cf = _cf_input(args)
    k = args.count - 1
    convs = contfrac.convergents(cf, k) if args.count > 0 else []
    text = "\n".join(_frac_json(r) for r in convs)
    return text, {"convergents": [_frac_json(r) for r in convs]}


def cmd_approx(args):
    report = contfrac.approximation_report(args.sqrt, args.count)
    text = "\n".join(f"{_frac_json(r)}  defect {defect:+d}" for r, defect in report)
    payload = {"approximations": [{"convergent": _frac_json(r), "defect": str(defect)}
                                  for r, defect in report]}
    return text, payload


def cmd_certify(args):
    if args.sqrt is not None:
        cert = contfrac.irrationality_certificate(args.sqrt).to_json()
    else:
        cert = pell.descent_no_solution_certificate(args.no_square_double).to_json()
    return json.dumps(cert, indent=2), cert


def verify_certificate(cert) -> bool:
    """Dispatch on ``kind``; accepts a bare certificate or a ``--json`` envelope around one."""
    if not isinstance(cert, dict):
        return False
    if "command" in cert and "result" in cert:
        cert = cert["result"]
        if not isinstance(cert, dict):
            return False
    kind = cert.get("kind")
    if kind == contfrac.CERTIFICATE_KIND:
        return contfrac.verify_periodicity_certificate(cert)
    if kind == pell.CERTIFICATE_KIND:
        return pell.verify_descent_certificate(cert)
    return False


def cmd_verify(args):
    raw = open(args.file, encoding="utf-8").read() if args.file else sys.stdin.read()
    try:
        cert = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise DomainError(f"certificate is not valid JSON: {exc}") from None
    ok = verify_certificate(cert)
    payload = {"verified": ok, "kind": cert.get("kind") if isinstance(cert, dict) else None}
    return f"verified: {str(ok).lower()}", payload, (0 if ok else 1)


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _natural(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit one JSON object on stdout")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="no diagnostics on stderr")

    parser = argparse.ArgumentParser(prog="surdforge", parents=[common],
                                     description="Exact irrationality proofs for square roots.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("search", parents=[common], help="minimum of |a^2 - n b^2| on a box")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bound", type=_positive, default=1000)
    p.add_argument("--method", choices=["auto", "naive", "python", "numpy"], default="auto")
    p.add_argument("--threads", type=_natural, default=None,
                   help=f"worker count, 0 = auto (default: ${pell.THREADS_ENV})")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("solutions", parents=[common], help="unit solutions |a^2 - n b^2| = 1")
    p.add_argument("--n", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--bound", type=_positive, default=1000)
    g.add_argument("--generate", type=_natural, metavar="COUNT")
    p.set_defaults(func=cmd_solutions)

    p = sub.add_parser("descend", parents=[common], help="descent chain of a unit solution for n = 2")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.set_defaults(func=cmd_descend)

    for name, func, helptext in (("cf", cmd_cf, "continued fraction of p/q or sqrt(d)"),
                                 ("convergents", cmd_convergents, "convergents of p/q or sqrt(d)")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--rational", metavar="P/Q")
        g.add_argument("--sqrt", type=int, metavar="D")
        if name == "convergents":
            p.add_argument("--count", type=_natural, default=8)
        p.set_defaults(func=func)

    p = sub.add_parser("approx", parents=[common], help="convergents of sqrt(d) with defects")
    p.add_argument("--sqrt", type=int, required=True, metavar="D")
    p.add_argument("--count", type=_natural, default=8)
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("certify", parents=[common], help="emit a JSON certificate")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--sqrt", type=int, metavar="D", help="periodicity certificate for sqrt(d)")
    g.add_argument("--no-square-double", type=_positive, metavar="N",
                   help="descent certificate for a^2 != 2 b^2 on 1 <= a, b <= N")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", parents=[common], help="re-check a certificate (stdin or --file)")
    p.add_argument("--file")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    as_json = getattr(args, "json", False)
    quiet = getattr(args, "quiet", False)
    params = {k: v for k, v in vars(args).items() if k not in ("func", "command", "json", "quiet")}

    t0 = time.perf_counter()
    try:
        out = args.func(args)
    except (SurdforgeError, DomainError, ZeroDivisionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text, payload, code = out if len(out) == 3 else (*out, 0)
    elapsed_ms = round((time.perf_counter() - t0) * 1000)

    if as_json:
        envelope = {"command": args.command, "parameters": params,
                    "result": payload, "elapsed_ms": elapsed_ms}
        print(json.dumps(envelope))
    else:
        print(text)
    if not quiet:
        print(f"[{args.command}: {elapsed_ms} ms]", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
