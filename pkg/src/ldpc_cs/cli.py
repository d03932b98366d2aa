"""Command-line client for the service.

Every subcommand builds a request, posts it to the HTTP API (in-process by
default, or to a remote server via --server) and writes any file outputs
locally.  Exit codes: 0 success, 1 usage error (bad arguments, bad input
files, request validation), 2 runtime error (server failure, I/O failure).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import yaml


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(1)


class ServiceClient:
    """Thin HTTP client; runs the ASGI app in-process when no server given."""

    def __init__(self, server: str | None = None):
        if server:
            import httpx
            self._client = httpx.Client(base_url=server, timeout=None)
        else:
            from fastapi.testclient import TestClient

            from .service import create_app
            self._client = TestClient(create_app(),
                                      raise_server_exceptions=False)

    def post(self, path: str, payload: dict) -> dict:
        resp = self._client.post(path, json=payload)
        if resp.status_code >= 500:
            raise RuntimeError(f"{path}: server error: {resp.text[:500]}")
        if resp.status_code >= 400:
            try:
                detail = resp.json().get("detail")
            except Exception:
                detail = resp.text[:500]
            raise UsageError(f"{path}: {detail}")
        return resp.json()


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}")


def _write_text(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise RuntimeError(f"cannot write {path}: {exc}")


def _read_vector(path: str) -> list[float]:
    tokens = _read_text(path).replace(",", " ").split()
    try:
        return [float(t) for t in tokens]
    except ValueError as exc:
        raise UsageError(f"{path}: not a numeric vector: {exc}")


def _cmd_gen_code(client: ServiceClient, args) -> int:
    payload = {"kind": args.kind, "m": args.m, "checks": args.checks,
               "row_weight": args.wr, "col_weight": args.wc,
               "peg_degree": args.degree, "seed": args.seed}
    out = client.post("/codes/generate", payload)
    _write_text(args.out, out["alist"])
    print(f"wrote {args.out}: {out['m']} columns, {out['checks']} checks, "
          f"rank {out['rank']}, dimension {out['dimension']}, "
          f"rate {out['rate']:.6g}")
    return 0


def _cmd_matrix_info(client: ServiceClient, args) -> int:
    payload = {"alist": _read_text(args.code), "expurgate": args.expurgate,
               "k_max": args.kmax}
    out = client.post("/matrix/info", payload)
    print(out["text"])
    if args.csv:
        _write_text(args.csv, out["csv"])
        print(f"wrote {args.csv}")
    return 0


def _cmd_analyze(client: ServiceClient, args) -> int:
    payload = {"curve": args.curve, "rate": args.rate, "w_r": args.wr,
               "theta_step": args.theta_step, "x_max": args.x_max,
               "x_step": args.x_step, "k": args.k, "m": args.m,
               "n_cols": args.n_cols}
    out = client.post("/analyze", payload)
    _write_text(args.out, out["csv"])
    print(f"wrote {args.out}")
    for name, value in out["summary"].items():
        print(f"  {name} = {value:.10g}")
    return 0


def _cmd_decode(client: ServiceClient, args) -> int:
    payload = {"alist": _read_text(args.code), "y": _read_vector(args.y),
               "algorithm": args.alg, "k": args.k,
               "expurgate": args.expurgate, "scaling": args.scaling,
               "list_size": args.list_size, "bias": args.bias,
               "seed": args.seed, "signal_kind": args.signal_kind,
               "m_configs": args.m_configs, "n_bases": args.n_bases,
               "decoder": args.decoder}
    out = client.post("/decode", payload)
    print(json.dumps(out, sort_keys=True))
    return 0


def _load_config(path: str) -> dict:
    try:
        data = yaml.safe_load(_read_text(path))
    except yaml.YAMLError as exc:
        raise UsageError(f"{path}: invalid config: {exc}")
    if not isinstance(data, dict):
        raise UsageError(f"{path}: config must be a key-value mapping")
    return data


def _cmd_simulate(client: ServiceClient, args) -> int:
    config = _load_config(args.config)
    out = client.post("/simulate", config)
    csv_path = args.out or config.get("out_csv")
    if csv_path:
        _write_text(csv_path, out["csv"])
        print(f"wrote {csv_path}")
    else:
        sys.stdout.write(out["csv"])
    plot_path = args.plot or config.get("out_plot")
    if plot_path:
        plot = client.post("/plot", {"csv": out["csv"], "logy": True})
        _write_text(plot_path, plot["svg"])
        print(f"wrote {plot_path}")
    print(f"cutoff density (1% threshold): K* = {out['cutoff_at_1pct']}")
    return 0


def _cmd_plot(client: ServiceClient, args) -> int:
    out = client.post("/plot", {"csv": _read_text(args.infile),
                                "logy": args.logy})
    _write_text(args.out, out["svg"])
    print(f"wrote {args.out}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app
    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ldpc-cs",
                     description="code-based compressive sensing toolkit")
    parser.add_argument("--server", default=None,
                        help="base URL of a running service "
                             "(default: run in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-code", help="generate a parity-check matrix")
    p.add_argument("--kind", required=True,
                   choices=["ensemble-e", "col-regular", "peg"])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--checks", type=int, required=True)
    p.add_argument("--wr", type=int, default=4, help="row weight (ensemble-e)")
    p.add_argument("--wc", type=int, default=3, help="column weight (col-regular)")
    p.add_argument("--degree", type=int, default=3, help="column degree (peg)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output .alist path")

    p = sub.add_parser("matrix-info", help="coherence and guarantee table")
    p.add_argument("--code", required=True, help=".alist file")
    p.add_argument("--expurgate", action="store_true")
    p.add_argument("--kmax", type=int, default=8)
    p.add_argument("--csv", default=None, help="also write the table as CSV")

    p = sub.add_parser("analyze", help="closed-form curves and bounds")
    p.add_argument("--curve", required=True,
                   choices=["exponent", "rate-function", "bounds"])
    p.add_argument("--rate", type=float, default=1.0 / 16.0)
    p.add_argument("--wr", type=int, default=4)
    p.add_argument("--theta-step", type=float, default=1e-3)
    p.add_argument("--x-max", type=float, default=0.9)
    p.add_argument("--x-step", type=float, default=0.05)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--m", type=int, default=160)
    p.add_argument("--n-cols", type=int, default=1024)
    p.add_argument("--out", required=True, help="output CSV path")

    p = sub.add_parser("decode", help="reconstruct one observation")
    p.add_argument("--code", required=True, help=".alist file")
    p.add_argument("--y", required=True, help="observation vector file")
    p.add_argument("--alg", required=True,
                   choices=["omp", "sp", "bp-omp", "bp-sp", "mmpc-omp",
                            "mbbp-omp"])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--expurgate", action="store_true")
    p.add_argument("--scaling", choices=["normalized", "pm_one"],
                   default="normalized")
    p.add_argument("--list-size", "--L", dest="list_size", type=int, default=20)
    p.add_argument("--bias", "--B", dest="bias", type=float, default=100.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--signal-kind", choices=["binary", "gaussian"],
                   default="binary")
    p.add_argument("--m-configs", type=int, default=8)
    p.add_argument("--n-bases", type=int, default=4)
    p.add_argument("--decoder", choices=["bp", "rbp"], default="bp")

    p = sub.add_parser("simulate", help="run a Monte-Carlo sweep from a config")
    p.add_argument("--config", required=True, help="YAML key-value config file")
    p.add_argument("--out", default=None, help="results CSV (overrides config)")
    p.add_argument("--plot", default=None, help="SVG plot (overrides config)")

    p = sub.add_parser("plot", help="plot a results CSV as SVG")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--logy", action="store_true")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "serve":
            return _cmd_serve(args)
        client = ServiceClient(args.server)
        handler = {
            "gen-code": _cmd_gen_code,
            "matrix-info": _cmd_matrix_info,
            "analyze": _cmd_analyze,
            "decode": _cmd_decode,
            "simulate": _cmd_simulate,
            "plot": _cmd_plot,
        }[args.command]
        return handler(client, args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (RuntimeError, OSError) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
