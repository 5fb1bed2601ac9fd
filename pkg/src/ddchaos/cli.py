"""Command line client for the scenario service.

The CLI is a thin HTTP client: it mounts the service in process through
an ASGI transport and prints the body bytes it receives, so terminal
output and server output can never drift apart.

Exit codes: 0 on success (all claims match where claims exist), 1 when a
run finishes but some expectation does not match, 2 on unknown names or
bad usage.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import os
import sys
from pathlib import Path

import httpx

from .scenarios import DEFAULT_SEED

_NUMERIC_KEYS = ("horizon", "delta", "sigma", "eps", "seed")


def _call(method: str, path: str, **kwargs) -> httpx.Response:
    from .service import create_app

    transport = httpx.ASGITransport(app=create_app())

    async def go() -> httpx.Response:
        async with httpx.AsyncClient(
            transport=transport, base_url="http://ddchaos.local"
        ) as client:
            return await client.request(method, path, **kwargs)

    return asyncio.run(go())


def _merged_overrides(args: argparse.Namespace) -> dict:
    """Config file first, then flags on top."""
    out: dict = {}
    cfg_path = getattr(args, "config", None)
    if cfg_path:
        with open(cfg_path, encoding="utf-8") as fh:
            cfg = json.load(fh)
        if not isinstance(cfg, dict):
            raise ValueError("config file must hold a JSON object")
        for k in _NUMERIC_KEYS:
            if k in cfg:
                out[k] = cfg[k]
    for k in _NUMERIC_KEYS:
        v = getattr(args, k, None)
        if v is not None:
            out[k] = v
    return out


def _fail(resp: httpx.Response) -> int:
    sys.stderr.write(resp.text + "\n")
    return 2


def _cmd_run(args: argparse.Namespace) -> int:
    try:
        ov = _merged_overrides(args)
    except (OSError, ValueError) as exc:
        sys.stderr.write(f"bad config: {exc}\n")
        return 2
    seed = ov.pop("seed", DEFAULT_SEED)
    resp = _call(
        "POST", f"/scenarios/{args.name}/run", json={**ov, "seed": seed}
    )
    if resp.status_code != 200:
        return _fail(resp)
    sys.stdout.write(resp.text + "\n")
    if args.out:
        out = Path(args.out)
        out.write_text(resp.text + "\n", encoding="utf-8")
        params = {k: v for k, v in ov.items() if k in ("horizon", "sigma", "eps")}
        trace_resp = _call(
            "GET", f"/scenarios/{args.name}/trace", params=params
        )
        if trace_resp.status_code != 200:
            return _fail(trace_resp)
        out.with_suffix(".csv").write_text(trace_resp.text, encoding="utf-8")
    report = json.loads(resp.text)
    return 0 if report["all_match"] else 1


def _cmd_list(args: argparse.Namespace) -> int:
    resp = _call("GET", "/scenarios")
    if resp.status_code != 200:
        return _fail(resp)
    for row in json.loads(resp.text)["scenarios"]:
        sys.stdout.write(f"{row['name']:34s} {row['summary']}\n")
    return 0


def _cmd_describe(args: argparse.Namespace) -> int:
    resp = _call("GET", f"/scenarios/{args.name}")
    if resp.status_code != 200:
        return _fail(resp)
    sys.stdout.write(resp.text + "\n")
    return 0


def _cmd_trace(args: argparse.Namespace) -> int:
    try:
        ov = _merged_overrides(args)
    except (OSError, ValueError) as exc:
        sys.stderr.write(f"bad config: {exc}\n")
        return 2
    params = {k: v for k, v in ov.items() if k in ("horizon", "sigma", "eps")}
    if args.plot:
        params["table"] = "plot"
    resp = _call("GET", f"/scenarios/{args.name}/trace", params=params)
    if resp.status_code != 200:
        return _fail(resp)
    Path(args.out).write_text(resp.text, encoding="utf-8")
    sys.stdout.write(f"wrote {args.out}\n")
    return 0


def _load_json_arg(raw: str) -> dict:
    if raw.startswith("@"):
        raw = Path(raw[1:]).read_text(encoding="utf-8")
    elif os.path.exists(raw):
        raw = Path(raw).read_text(encoding="utf-8")
    payload = json.loads(raw)
    if not isinstance(payload, dict):
        raise ValueError("expected a JSON object")
    return payload


def _cmd_density(args: argparse.Namespace) -> int:
    try:
        payload = _load_json_arg(args.set)
    except (OSError, ValueError) as exc:
        sys.stderr.write(f"bad --set value: {exc}\n")
        return 2
    resp = _call("POST", "/density", json=payload)
    if resp.status_code != 200:
        return _fail(resp)
    sys.stdout.write(resp.text + "\n")
    return 0


def _cmd_classify(args: argparse.Namespace) -> int:
    try:
        payload = _load_json_arg(args.scenario)
    except (OSError, ValueError) as exc:
        sys.stderr.write(f"bad --scenario value: {exc}\n")
        return 2
    resp = _call("POST", "/classify", json=payload)
    if resp.status_code != 200:
        return _fail(resp)
    sys.stdout.write(resp.text + "\n")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run(
        "ddchaos.service:app", host=args.host, port=args.port, log_level="info"
    )
    return 0


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--horizon", type=int, default=None)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--config", default=None,
                   help="JSON file with the same keys; flags win")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ddchaos",
        description="scenario registry for distributional-chaos "
        "constructions",
    )
    sub = parser.add_subparsers(dest="command")

    p_run = sub.add_parser("run", help="re-run a scenario's frozen claims")
    p_run.add_argument("name")
    _add_run_flags(p_run)
    p_run.add_argument("--out", default=None,
                       help="write the report here plus a .csv trace")
    p_run.set_defaults(func=_cmd_run)

    p_list = sub.add_parser("list", help="list registered scenarios")
    p_list.set_defaults(func=_cmd_list)

    p_desc = sub.add_parser("describe", help="show a scenario's record")
    p_desc.add_argument("name")
    p_desc.set_defaults(func=_cmd_describe)

    p_trace = sub.add_parser("trace", help="export the step/set table")
    p_trace.add_argument("name")
    _add_run_flags(p_trace)
    p_trace.add_argument("--out", required=True)
    p_trace.add_argument("--plot", action="store_true",
                         help="density and log-height columns instead")
    p_trace.set_defaults(func=_cmd_trace)

    p_dens = sub.add_parser("density", help="density profile of a set")
    p_dens.add_argument("--set", required=True,
                        help="JSON literal (or @file / path)")
    p_dens.set_defaults(func=_cmd_density)

    p_cls = sub.add_parser("classify", help="classify a vector under a "
                           "scenario's family")
    p_cls.add_argument("--scenario", required=True,
                       help="JSON request (or @file / path)")
    p_cls.set_defaults(func=_cmd_classify)

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "func", None) is None:
        parser.print_usage(sys.stderr)
        return 2
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
