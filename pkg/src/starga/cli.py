"""Command-line front end: a thin client over the service handlers.

Commands run in-process by default; with --server URL they are sent to a
running HTTP instance instead, using the same request/response models.

Exit codes: 0 success, 1 evaluation error or failed verification check,
2 usage/parameter errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .service.app import RequestError, handle_eval, handle_kepler, \
    handle_verify
from .service.models import EvalRequest, KeplerRequest, VerifyRequest


def _parse_relations(args) -> list:
    names = []
    env = os.environ.get("GA_RELATIONS", "")
    if env:
        names.extend(part for part in env.split(",") if part.strip())
    if args.relations:
        names.extend(part for part in args.relations.split(",") if part.strip())
    return names


def _post(server: str, path: str, payload: dict) -> dict:
    import httpx

    response = httpx.post(f"{server.rstrip('/')}{path}", json=payload,
                          timeout=300.0)
    if response.status_code != 200:
        try:
            detail = response.json().get("detail", response.text)
        except ValueError:
            detail = response.text
        raise RequestError(detail)
    return response.json()


def cmd_eval(args) -> int:
    request = EvalRequest(expression=args.expression, algebra=args.algebra,
                          relations=_parse_relations(args))
    try:
        if args.server:
            result = _post(args.server, "/eval", request.model_dump())["result"]
        else:
            result = handle_eval(request).result
    except RequestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(result)
    return 0


def cmd_verify(args) -> int:
    request = VerifyRequest(suite=args.suite)
    try:
        if args.server:
            data = _post(args.server, "/verify", request.model_dump())
        else:
            data = handle_verify(request).model_dump()
    except RequestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps(data["reports"], indent=2))
    else:
        for report in data["reports"]:
            print(f"suite {report['suite']}: {report['passed']} passed, "
                  f"{report['failed']} failed, {report['flagged']} flagged")
            for check in report["checks"]:
                mark = {"pass": "ok", "fail": "FAIL", "flagged": "flag"}[check["status"]]
                line = f"  [{mark:4s}] {check['id']}: {check['anchor']}"
                print(line)
                if check["residual"]:
                    print(f"         note: {check['residual']}")
    total_failed = sum(r["failed"] for r in data["reports"])
    summary = (f"total: {sum(r['passed'] for r in data['reports'])} passed, "
               f"{total_failed} failed, "
               f"{sum(r['flagged'] for r in data['reports'])} flagged")
    print(summary, file=sys.stderr if args.json else sys.stdout)
    return data["exit_code"]


def cmd_kepler(args) -> int:
    request = KeplerRequest(method=args.method, e=args.e, a=args.a,
                            orbits=args.orbits, steps=args.steps,
                            sample_every=args.sample)
    try:
        if args.server:
            data = _post(args.server, "/kepler",
                         request.model_dump(by_alias=True))
        else:
            data = handle_kepler(request).model_dump()
    except RequestError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    lines = [",".join(data["columns"])]
    lines.extend(",".join(repr(v) for v in row) for row in data["rows"])
    csv_text = "\n".join(lines) + "\n"
    summary = "summary: " + " ".join(f"{k}={v}" for k, v in data["summary"].items())
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(csv_text)
        print(summary)
    else:
        sys.stdout.write(csv_text)
        print(summary, file=sys.stderr)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="starga",
        description="Exact star-product geometric algebra engine")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a star-product expression")
    p_eval.add_argument("expression")
    p_eval.add_argument("--algebra", default="sigma3",
                        help="sigmaN | thetaN | sta | phase:d | moyal:d | mc:d")
    p_eval.add_argument("--relations", default="",
                        help="comma list: circular, hyperbolic, massshell "
                             "(GA_RELATIONS env var is prepended)")
    p_eval.add_argument("--server", default="", help="send to a running service")
    p_eval.set_defaults(func=cmd_eval)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", nargs="?", default="all",
                          help="pauli | wigner | oscillator | hydrogen | ks | "
                               "rotors | sta | dirac | all")
    p_verify.add_argument("--json", action="store_true",
                          help="machine-readable report on stdout")
    p_verify.add_argument("--server", default="")
    p_verify.set_defaults(func=cmd_verify)

    p_kep = sub.add_parser("kepler", help="integrate a Kepler orbit")
    p_kep.add_argument("--method", default="ks", choices=["ks", "newton"])
    p_kep.add_argument("--e", type=float, default=0.6, help="eccentricity")
    p_kep.add_argument("--a", type=float, default=1.0, help="semi-major axis")
    p_kep.add_argument("--orbits", type=int, default=1)
    p_kep.add_argument("--steps", type=int, default=1000,
                       help="integration steps per orbit")
    p_kep.add_argument("--sample", type=int, default=1,
                       help="emit every Nth step")
    p_kep.add_argument("--out", default="", help="write CSV to a file")
    p_kep.add_argument("--server", default="")
    p_kep.set_defaults(func=cmd_kepler)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
