#!/usr/bin/env python3
"""Boot a throwaway development server with fixture data.

Runs the service on an in-memory store seeded with the given profile and
prints the fixture credentials, so a browser or curl session can start
immediately. State is gone when the process exits.
"""
import argparse
import sys

from greenops.cli import main as greenops_main
from greenops.seeds import SEED_CREDENTIALS


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8000)
    parser.add_argument("--profile", choices=("test", "demo"), default="demo")
    args = parser.parse_args()

    print(f"serving {args.profile!r} fixtures on http://{args.host}:{args.port}")
    for label, (username, password, role) in SEED_CREDENTIALS.items():
        print(f"  {label:<9} {username} / {password}  ({role.value})")
    print(flush=True)

    return greenops_main([
        "serve", "--host", args.host, "--port", str(args.port),
        "--seed", args.profile,
    ])


if __name__ == "__main__":
    sys.exit(main())
