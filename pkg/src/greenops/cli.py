"""Operator command line.

Subcommands: serve, migrate, seed, snapshot export/import, loadtest.
Exit codes are a stable contract for CI: 0 success, 1 usage error,
2 runtime failure.
"""
from __future__ import annotations

import argparse
import json
import socket
import sys

from . import loadtest as loadtest_mod
from .api import create_app
from .config import AppConfig, load_config
from .errors import AppError
from .seeds import PROFILES, seed
from .store import Store


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; this CLI reserves 2 for runtime failures
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="greenops", description=__doc__)
    parser.add_argument("--config", metavar="PATH", help="JSON config file")
    parser.add_argument("--store", choices=("memory", "file"), help="store mode override")
    parser.add_argument("--data-dir", metavar="DIR", help="state directory for the file store")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    serve = sub.add_parser("serve", help="run the HTTP service until interrupted")
    serve.add_argument("--host", help="bind address")
    serve.add_argument("--port", type=int, help="bind port")
    serve.add_argument(
        "--seed", choices=PROFILES, dest="seed_profile",
        help="populate the (empty) store with a fixture profile before serving",
    )

    sub.add_parser("migrate", help="bring a file store up to the current schema")

    seed_cmd = sub.add_parser("seed", help="populate an empty store with fixtures")
    seed_cmd.add_argument("profile", choices=PROFILES)

    snapshot = sub.add_parser("snapshot", help="portable line-delimited state dumps")
    actions = snapshot.add_subparsers(dest="action", required=True, parser_class=_Parser)
    actions.add_parser("export", help="write the store to a snapshot file").add_argument("path")
    actions.add_parser("import", help="load a snapshot into an empty store").add_argument("path")

    loadtest = sub.add_parser("loadtest", help="measure latency and throughput")
    loadtest.add_argument("target", help="base URL of a running, seeded service")
    loadtest.add_argument("--concurrency", type=int, default=10)
    loadtest.add_argument("--duration", type=float, default=10.0, metavar="SECONDS")
    loadtest.add_argument("--scenario", choices=loadtest_mod.SCENARIOS, default="read")
    loadtest.add_argument(
        "--raw", metavar="PATH", help="also write raw latencies, one millisecond value per line"
    )
    loadtest.add_argument("--username", default="admin")
    loadtest.add_argument("--password", default="admin-dev-12345")
    return parser


def _load_config(args) -> AppConfig:
    overrides = {
        "store_mode": args.store,
        "data_dir": args.data_dir,
        "host": getattr(args, "host", None),
        "port": getattr(args, "port", None),
    }
    return load_config(config_file=args.config, overrides=overrides)


def _open_store(config: AppConfig) -> Store:
    return Store(
        mode=config.store_mode,
        path=config.data_dir if config.store_mode == "file" else None,
    )


def cmd_serve(args) -> int:
    import uvicorn

    config = _load_config(args)
    # Fail fast with a readable message instead of a uvicorn traceback.
    with socket.socket(socket.AF_INET, socket.SOCK_STREAM) as probe:
        try:
            probe.bind((config.host, config.port))
        except OSError as exc:
            raise OSError(f"cannot bind {config.host}:{config.port}: {exc}") from exc
    store = _open_store(config)
    if args.seed_profile:
        seed(store, args.seed_profile)
    app = create_app(config, store=store)
    uvicorn.run(app, host=config.host, port=config.port, log_level=config.log_level)
    return 0


def cmd_migrate(args) -> int:
    config = _load_config(args)
    if config.store_mode != "file":
        print(json.dumps({"store_mode": "memory", "schema_version": Store().schema_version}))
        return 0
    store = _open_store(config)      # loading applies pending migrations
    version = store.migrate()
    print(json.dumps({"store_mode": "file", "schema_version": version}))
    return 0


def cmd_seed(args) -> int:
    config = _load_config(args)
    counts = seed(_open_store(config), args.profile)
    print(json.dumps({"profile": args.profile, "created": counts}))
    return 0


def cmd_snapshot(args) -> int:
    config = _load_config(args)
    store = _open_store(config)
    if args.action == "export":
        store.export_snapshot(args.path)
        print(json.dumps({"exported": args.path, "records": sum(store.counts().values())}))
    else:
        store.import_snapshot(args.path)
        print(json.dumps({"imported": args.path, "records": sum(store.counts().values())}))
    return 0


def cmd_loadtest(args) -> int:
    result, raw = loadtest_mod.run(
        args.target,
        concurrency=args.concurrency,
        duration_seconds=args.duration,
        scenario=args.scenario,
        username=args.username,
        password=args.password,
    )
    if args.raw:
        with open(args.raw, "w", encoding="utf-8") as fp:
            fp.writelines(f"{latency!r}\n" for latency in raw)
    print(json.dumps(result.as_dict(), indent=2))
    return 0


COMMANDS = {
    "serve": cmd_serve,
    "migrate": cmd_migrate,
    "seed": cmd_seed,
    "snapshot": cmd_snapshot,
    "loadtest": cmd_loadtest,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (AppError, OSError, ValueError) as exc:
        print(f"greenops: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
