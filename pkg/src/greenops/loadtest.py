"""Open-loop HTTP load generator and latency summarizer.

``concurrency`` asyncio workers each own an independent connection and fire
requests back to back until the deadline. The read scenario alternates
between tree detail fetches and species keyword searches; the mixed scenario
turns roughly one request in ten into a write (a tree condition report).

Percentiles use the nearest-rank method over the full recorded sample:
the k-th smallest latency with k = ceil(q * N). No streaming approximation;
at desk scale the raw sample fits comfortably in memory.
"""
from __future__ import annotations

import asyncio
import math
import random
import time
from dataclasses import dataclass

import httpx

from .errors import LoadTestFailed

DEFAULT_TIMEOUT = 10.0
WRITE_FRACTION = 0.10
SCENARIOS = ("read", "mixed")


@dataclass(frozen=True)
class LoadTestResult:
    total_requests: int
    successes: int
    failures: int
    throughput: float       # requests per second over the measured window
    latency_p50: float      # milliseconds
    latency_p95: float
    latency_p99: float

    def as_dict(self) -> dict:
        return {
            "total_requests": self.total_requests,
            "successes": self.successes,
            "failures": self.failures,
            "throughput": round(self.throughput, 2),
            "latency_p50": round(self.latency_p50, 2),
            "latency_p95": round(self.latency_p95, 2),
            "latency_p99": round(self.latency_p99, 2),
        }


def nearest_rank(sorted_sample: list[float], q: float) -> float:
    if not sorted_sample:
        return 0.0
    k = math.ceil(q * len(sorted_sample))
    return sorted_sample[min(max(k, 1), len(sorted_sample)) - 1]


def summarize(samples: list[tuple[float, bool]], elapsed_seconds: float) -> LoadTestResult:
    latencies = sorted(latency for latency, _ in samples)
    successes = sum(1 for _, ok in samples if ok)
    total = len(samples)
    return LoadTestResult(
        total_requests=total,
        successes=successes,
        failures=total - successes,
        throughput=total / elapsed_seconds if elapsed_seconds > 0 else 0.0,
        latency_p50=nearest_rank(latencies, 0.50),
        latency_p95=nearest_rank(latencies, 0.95),
        latency_p99=nearest_rank(latencies, 0.99),
    )


async def _worker(
    client: httpx.AsyncClient,
    headers: dict,
    scenario: str,
    tree_ids: list[int],
    deadline: float,
    samples: list[tuple[float, bool]],
    rng: random.Random,
) -> None:
    while time.perf_counter() < deadline:
        roll = rng.random()
        if scenario == "mixed" and roll < WRITE_FRACTION:
            method, url = "POST", f"/api/trees/{rng.choice(tree_ids)}/report"
            kwargs = {"json": {"description": "routine inspection"}}
        elif roll < 0.5 + WRITE_FRACTION / 2:
            method, url = "GET", f"/api/trees/{rng.choice(tree_ids)}"
            kwargs = {}
        else:
            method, url = "GET", "/api/species"
            kwargs = {"params": {"keyword": "p"}}
        started = time.perf_counter()
        try:
            response = await client.request(method, url, headers=headers, **kwargs)
            ok = response.status_code < 400
        except httpx.HTTPError:
            ok = False
        samples.append(((time.perf_counter() - started) * 1000.0, ok))


async def _run_async(
    target: str,
    concurrency: int,
    duration_seconds: float,
    scenario: str,
    username: str,
    password: str,
    seed: int,
) -> tuple[LoadTestResult, list[float]]:
    try:
        async with httpx.AsyncClient(base_url=target, timeout=DEFAULT_TIMEOUT) as probe:
            response = await probe.post(
                "/api/auth/login", json={"username": username, "password": password}
            )
            if response.status_code != 200:
                raise LoadTestFailed(
                    f"login as {username!r} failed with status {response.status_code}"
                )
            headers = {"Authorization": f"Bearer {response.json()['token']}"}
            response = await probe.get("/api/trees", params={"pageSize": 100}, headers=headers)
            if response.status_code != 200:
                raise LoadTestFailed(f"listing trees failed with status {response.status_code}")
            tree_ids = [item["id"] for item in response.json()["items"]]
    except httpx.HTTPError as exc:
        raise LoadTestFailed(f"target {target} unreachable: {exc}") from exc
    if not tree_ids:
        raise LoadTestFailed("target has no trees; seed the store before load testing")

    samples: list[tuple[float, bool]] = []
    clients = [
        httpx.AsyncClient(base_url=target, timeout=DEFAULT_TIMEOUT)
        for _ in range(concurrency)
    ]
    started = time.perf_counter()
    deadline = started + duration_seconds
    try:
        await asyncio.gather(
            *(
                _worker(
                    client, headers, scenario, tree_ids, deadline, samples,
                    random.Random(seed + index),
                )
                for index, client in enumerate(clients)
            )
        )
    finally:
        for client in clients:
            await client.aclose()
    elapsed = time.perf_counter() - started
    return summarize(samples, elapsed), [latency for latency, _ in samples]


def run(
    target: str,
    *,
    concurrency: int = 10,
    duration_seconds: float = 10.0,
    scenario: str = "read",
    username: str = "admin",
    password: str = "admin-dev-12345",
    seed: int = 1,
) -> tuple[LoadTestResult, list[float]]:
    """Drive the target and return (summary, raw latencies in ms)."""
    if scenario not in SCENARIOS:
        raise ValueError(f"scenario must be one of {SCENARIOS}")
    if concurrency < 1:
        raise ValueError("concurrency must be at least 1")
    return asyncio.run(
        _run_async(target, concurrency, duration_seconds, scenario, username, password, seed)
    )
