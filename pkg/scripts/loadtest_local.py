#!/usr/bin/env python3
"""One-shot local benchmark: seeded server, load run, report, teardown.

Spawns the service in a child process on a free port with test fixtures,
drives it with the requested scenario, prints the summary JSON, and shuts
the server down. Useful for before/after comparisons while optimizing.
"""
import argparse
import json
import socket
import subprocess
import sys
import time

import httpx

from greenops import loadtest


def free_port() -> int:
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


def wait_healthy(target: str, timeout: float = 20.0) -> None:
    deadline = time.monotonic() + timeout
    while time.monotonic() < deadline:
        try:
            if httpx.get(f"{target}/healthz", timeout=1.0).status_code == 200:
                return
        except httpx.HTTPError:
            pass
        time.sleep(0.2)
    raise RuntimeError("server did not become healthy in time")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--concurrency", type=int, default=25)
    parser.add_argument("--duration", type=float, default=10.0)
    parser.add_argument("--scenario", choices=loadtest.SCENARIOS, default="read")
    parser.add_argument("--raw", metavar="PATH",
                        help="also write per-request latencies (ms), one per line")
    args = parser.parse_args()

    port = free_port()
    target = f"http://127.0.0.1:{port}"
    server = subprocess.Popen(
        [sys.executable, "-m", "greenops", "serve", "--port", str(port),
         "--seed", "test"],
        stdout=subprocess.DEVNULL, stderr=subprocess.STDOUT,
    )
    try:
        wait_healthy(target)
        result, raw = loadtest.run(
            target, concurrency=args.concurrency,
            duration_seconds=args.duration, scenario=args.scenario,
        )
    finally:
        server.terminate()
        server.wait(timeout=10)

    if args.raw:
        with open(args.raw, "w") as handle:
            handle.writelines(f"{latency!r}\n" for latency in raw)
    print(json.dumps(result.as_dict(), indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
