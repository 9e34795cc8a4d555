"""Command-line front end.

A thin client over the service layer: each subcommand parses its input
files into a request model, runs the matching handler (in-process by
default, or against a running server via ``--server``), and prints a
report.  JSON reports are canonical: fixed field order, floats with 17
significant digits, so identical inputs give byte-identical output (the
wall-time field is the one run-dependent value; ``--no-timing`` zeroes it).

Exit codes: 0 success, 2 mathematical inapplicability (a not-regular shift
family, a formula whose preconditions fail, an undefined transform),
1 anything else.
"""

import argparse
import hashlib
import math
import sys
import time
from pathlib import Path

from . import __version__
from .config import DEFAULT_TOLS
from .errors import AvecondError, OneIsEigenvalueError
from .matio import parse_matrix, parse_vector
from .service import handlers
from .service import schemas as sc

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_APPLICABLE = 2


# ---------------------------------------------------------------- reports


def _fmt_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        return "null"
    return format(x, ".17g")


def canonical_json(obj, indent: int = 0) -> str:
    """Deterministic JSON: insertion-ordered keys, 17-significant-digit floats."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, str):
        import json

        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f'{inner}{canonical_json(str(k))}: {canonical_json(v, indent + 1)}'
            for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{inner}{canonical_json(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _checksum(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _text_lines(obj, prefix: str = ""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _text_lines(v, f"{prefix}{k}." if prefix else f"{k}.")
    elif isinstance(obj, (list, tuple)) and obj and isinstance(obj[0], (dict, list, tuple)):
        for i, v in enumerate(obj):
            yield from _text_lines(v, f"{prefix}{i}.")
    else:
        key = prefix[:-1] if prefix.endswith(".") else prefix
        if isinstance(obj, float):
            yield f"{key} = {obj:.12g}"
        elif isinstance(obj, (list, tuple)):
            yield f"{key} = [" + ", ".join(f"{v:.12g}" if isinstance(v, float) else str(v) for v in obj) + "]"
        else:
            yield f"{key} = {obj}"


def _emit(report: dict, args) -> None:
    if args.format == "json":
        text = canonical_json(report) + "\n"
    else:
        text = "\n".join(_text_lines(report)) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- requests


def _parse_norm(arg: str):
    """one | two | inf | scaled[:p]:FILE with a positive diagonal from FILE."""
    if arg in ("one", "two", "inf"):
        return arg, None
    for prefix, p in (("scaled1:", "one"), ("scaled2:", "two"),
                      ("scaledinf:", "inf"), ("scaled:", "inf")):
        if arg.startswith(prefix):
            scaling = parse_vector(arg[len(prefix):])
            return p, [float(v) for v in scaling]
    raise AvecondError(
        f"unknown norm {arg!r}; expected one, two, inf or scaled[:p]:<vector file>"
    )


def _dispatch(command: str, request, args):
    """Run in-process or against a remote server."""
    if args.server:
        import httpx

        url = args.server.rstrip("/") + "/" + command
        payload = None if request is None else request.model_dump()
        resp = httpx.post(url, json=payload, timeout=120.0)
        if resp.status_code != 200:
            raise AvecondError(f"server returned {resp.status_code}: {resp.text}")
        return resp.json()
    fn = {
        "condnum": handlers.handle_condnum,
        "certify": handlers.handle_certify,
        "regularity": handlers.handle_regularity,
        "solve": handlers.handle_solve,
        "lcp": handlers.handle_lcp,
    }[command]
    return fn(request, DEFAULT_TOLS).model_dump()


def _envelope(args, response: dict, inputs: list[str], started: float) -> dict:
    report = {
        "schema_version": response.pop("schema_version", sc.SCHEMA_VERSION),
        "command": response.pop("command", args.command),
        "inputs": {p: _checksum(p) for p in inputs},
        "seed": args.seed,
    }
    report.update(response)
    elapsed = 0.0 if args.no_timing else (time.perf_counter() - started) * 1000.0
    report["wall_time_ms"] = elapsed
    return report


# ---------------------------------------------------------------- commands


def _cmd_condnum(args) -> int:
    started = time.perf_counter()
    p, scaling = _parse_norm(args.norm)
    A = parse_matrix(args.matrix)
    req = sc.CondnumRequest(
        matrix=[[float(v) for v in row] for row in A],
        norm=sc.NormIn(p=p, scaling=scaling),
        method=args.method,
        enum_limit=args.enum_limit,
        gamma=args.gamma,
        radii=None if args.radii is None else [float(v) for v in parse_vector(args.radii)],
    )
    response = _dispatch("condnum", req, args)
    _emit(_envelope(args, response, [args.matrix], started), args)
    return EXIT_OK if response["kind"] != "not_applicable" else EXIT_NOT_APPLICABLE


def _cmd_certify(args) -> int:
    started = time.perf_counter()
    p, scaling = _parse_norm(args.norm)
    A = parse_matrix(args.matrix)
    b = parse_vector(args.rhs)
    x = parse_vector(args.candidate)
    req = sc.CertifyRequest(
        matrix=[[float(v) for v in row] for row in A],
        rhs=[float(v) for v in b],
        candidate=[float(v) for v in x],
        norm=sc.NormIn(p=p, scaling=scaling),
        method=args.method,
        enum_limit=args.enum_limit,
    )
    response = _dispatch("certify", req, args)
    _emit(_envelope(args, response, [args.matrix, args.rhs, args.candidate], started), args)
    return EXIT_OK if response["kind"] != "not_applicable" else EXIT_NOT_APPLICABLE


def _cmd_regularity(args) -> int:
    started = time.perf_counter()
    A = parse_matrix(args.matrix)
    req = sc.RegularityRequest(
        matrix=[[float(v) for v in row] for row in A],
        method=args.method,
        enum_limit=args.enum_limit,
    )
    response = _dispatch("regularity", req, args)
    _emit(_envelope(args, response, [args.matrix], started), args)
    return EXIT_OK if response["verdict"] == "regular" else EXIT_NOT_APPLICABLE


def _cmd_solve(args) -> int:
    started = time.perf_counter()
    A = parse_matrix(args.matrix)
    b = parse_vector(args.rhs)
    req = sc.SolveRequest(
        matrix=[[float(v) for v in row] for row in A],
        rhs=[float(v) for v in b],
    )
    response = _dispatch("solve", req, args)
    _emit(_envelope(args, response, [args.matrix, args.rhs], started), args)
    return EXIT_OK


def _cmd_lcp(args) -> int:
    started = time.perf_counter()
    p, scaling = _parse_norm(args.norm)
    M = parse_matrix(args.m_matrix)
    q = parse_vector(args.q)
    req = sc.LcpRequest(
        m_matrix=[[float(v) for v in row] for row in M],
        q=[float(v) for v in q],
        norm=sc.NormIn(p=p, scaling=scaling),
        enum_limit=args.enum_limit,
    )
    try:
        response = _dispatch("lcp", req, args)
    except OneIsEigenvalueError as exc:
        print(f"avecond: {exc}", file=sys.stderr)
        return EXIT_NOT_APPLICABLE
    _emit(_envelope(args, response, [args.m_matrix, args.q], started), args)
    return EXIT_OK


def _cmd_selftest(args) -> int:
    started = time.perf_counter()
    if args.server:
        import httpx

        resp = httpx.post(args.server.rstrip("/") + "/selftest", timeout=120.0)
        response = resp.json()
    else:
        response = handlers.handle_selftest(DEFAULT_TOLS).model_dump()
    for check in response["checks"]:
        status = "PASS" if check["passed"] else "FAIL"
        print(f"[{status}] {check['name']}: value {check['value']:.10g}", file=sys.stderr)
    if args.format == "json":
        report = {
            "schema_version": response.pop("schema_version", sc.SCHEMA_VERSION),
            "command": "selftest",
            "inputs": {},
            "seed": args.seed,
        }
        report.update(response)
        report["wall_time_ms"] = 0.0 if args.no_timing else (time.perf_counter() - started) * 1000.0
        _emit(report, args)
    return EXIT_OK if response["passed"] else EXIT_ERROR


def _cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("avecond.service.app:app", host=args.host, port=args.port)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--output", help="write the report to this file instead of stdout")
    p.add_argument("--seed", type=int, default=0, help="recorded in the report")
    p.add_argument("--server", help="base URL of a running avecond service")
    p.add_argument("--no-timing", action="store_true",
                   help="report wall_time_ms as 0 for byte-exact output")


def _add_norm(p: argparse.ArgumentParser) -> None:
    p.add_argument("--norm", default="inf",
                   help="one | two | inf | scaled[:p]:<vector file> (default inf)")


def _add_method(p: argparse.ArgumentParser) -> None:
    p.add_argument("--method", default="exact",
                   help="exact | auto | " + " | ".join(handlers.METHOD_NAMES))
    p.add_argument("--enum-limit", type=int, default=14,
                   help="largest n for which 'auto' may enumerate vertices")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="avecond",
        description="Condition numbers and certified error bounds for Ax - b = |x|.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("condnum", help="condition number of the shift family of A")
    p.add_argument("matrix")
    _add_norm(p)
    _add_method(p)
    p.add_argument("--gamma", type=float, default=None,
                   help="target spectral radius for scaled1_gamma")
    p.add_argument("--radii", default=None,
                   help="vector file with positive radii for row_dd")
    _add_common(p)
    p.set_defaults(fn=_cmd_condnum)

    p = sub.add_parser("certify", help="certified error bounds for a candidate solution")
    p.add_argument("matrix")
    p.add_argument("rhs")
    p.add_argument("candidate")
    _add_norm(p)
    _add_method(p)
    _add_common(p)
    p.set_defaults(fn=_cmd_certify)

    p = sub.add_parser("regularity", help="regularity of the shift family of A")
    p.add_argument("matrix")
    p.add_argument("--method", default="auto",
                   choices=("auto", "exact", "sufficient", "symmetric"))
    p.add_argument("--enum-limit", type=int, default=20)
    _add_common(p)
    p.set_defaults(fn=_cmd_regularity)

    p = sub.add_parser("solve", help="all solutions by sign enumeration")
    p.add_argument("matrix")
    p.add_argument("rhs")
    _add_common(p)
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("lcp", help="complementarity bridge report for (M, q)")
    p.add_argument("m_matrix")
    p.add_argument("q")
    _add_norm(p)
    p.add_argument("--enum-limit", type=int, default=14)
    _add_common(p)
    p.set_defaults(fn=_cmd_lcp)

    p = sub.add_parser("selftest", help="run the built-in regression checks")
    _add_common(p)
    p.set_defaults(fn=_cmd_selftest)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(fn=_cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except OneIsEigenvalueError as exc:
        print(f"avecond: {exc}", file=sys.stderr)
        return EXIT_NOT_APPLICABLE
    except (AvecondError, ValueError, OSError) as exc:
        print(f"avecond: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
