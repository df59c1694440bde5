"""Load generator: percentile math, result bookkeeping, and a short live run."""
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from greenops.auth import PasswordHasher
from greenops.errors import LoadTestFailed
from greenops.loadtest import nearest_rank, run, summarize
from greenops.seeds import seed
from tests.conftest import TEST_ITERATIONS, live_server

# Nearest-rank definition: the k-th smallest with k = ceil(q * N).
# Worked by hand for a 1..10 sample.
NEAREST_RANK_CASES = [
    ([1.0], 0.50, 1.0),
    ([1.0], 0.99, 1.0),
    ([1.0, 2.0], 0.50, 1.0),   # k = ceil(1.0) = 1
    ([1.0, 2.0], 0.51, 2.0),   # k = ceil(1.02) = 2
    (list(map(float, range(1, 11))), 0.50, 5.0),
    (list(map(float, range(1, 11))), 0.95, 10.0),
    (list(map(float, range(1, 11))), 0.99, 10.0),
    (list(map(float, range(1, 11))), 0.90, 9.0),
    (list(map(float, range(1, 101))), 0.95, 95.0),
    (list(map(float, range(1, 101))), 0.99, 99.0),
]


@pytest.mark.parametrize("sample, q, expected", NEAREST_RANK_CASES)
def test_nearest_rank_table(sample, q, expected):
    assert nearest_rank(sample, q) == expected


def test_nearest_rank_empty_sample():
    assert nearest_rank([], 0.95) == 0.0


@given(
    sample=st.lists(st.floats(min_value=0.0, max_value=1e6), min_size=1, max_size=200),
    q=st.floats(min_value=0.001, max_value=1.0),
)
def test_nearest_rank_is_a_member_and_matches_oracle(sample, q):
    ordered = sorted(sample)
    value = nearest_rank(ordered, q)
    assert value in ordered
    k = min(max(math.ceil(q * len(ordered)), 1), len(ordered))
    assert value == ordered[k - 1]


@given(
    samples=st.lists(
        st.tuples(st.floats(min_value=0.0, max_value=1e5), st.booleans()),
        min_size=1, max_size=200,
    ),
    elapsed=st.floats(min_value=0.01, max_value=100.0),
)
def test_summary_invariants(samples, elapsed):
    result = summarize(samples, elapsed)
    assert result.successes + result.failures == result.total_requests
    assert result.total_requests == len(samples)
    assert result.latency_p50 <= result.latency_p95 <= result.latency_p99
    assert result.throughput == pytest.approx(len(samples) / elapsed)


def test_summary_counts_failures():
    result = summarize([(5.0, True), (7.0, False), (9.0, True)], 1.0)
    assert result.failures == 1
    assert result.as_dict()["throughput"] == 3.0


def test_run_rejects_unknown_scenario():
    with pytest.raises(ValueError):
        run("http://127.0.0.1:1", scenario="write-everything")


def test_run_rejects_zero_concurrency():
    with pytest.raises(ValueError):
        run("http://127.0.0.1:1", concurrency=0)


def test_run_fails_fast_when_unreachable():
    with pytest.raises(LoadTestFailed):
        run("http://127.0.0.1:9", duration_seconds=0.5, concurrency=1)


def test_short_live_run(app):
    seed(app.state.ctx.store, "test", hasher=PasswordHasher(TEST_ITERATIONS))
    with live_server(app) as target:
        result, raw = run(target, concurrency=4, duration_seconds=1.0, scenario="mixed")
    assert result.total_requests > 0
    assert result.failures == 0
    assert result.latency_p50 > 0.0
    assert len(raw) == result.total_requests
    assert result.latency_p95 == nearest_rank(sorted(raw), 0.95)


def test_live_run_requires_seeded_trees(tmp_path):
    # an admin account but zero trees: the generator refuses to start
    from greenops.api import create_app
    from greenops.config import AppConfig
    from greenops.domain import Role

    bare = create_app(AppConfig(
        uploads_dir=str(tmp_path / "uploads"), hash_iterations=TEST_ITERATIONS
    ))
    bare.state.ctx.auth.register("admin", "admin-dev-12345", Role.ADMIN)
    with live_server(bare) as target:
        with pytest.raises(LoadTestFailed):
            run(target, duration_seconds=0.5, concurrency=1)


def test_live_run_requires_valid_credentials(app):
    seed(app.state.ctx.store, "test", hasher=PasswordHasher(TEST_ITERATIONS))
    with live_server(app) as target:
        with pytest.raises(LoadTestFailed):
            run(target, duration_seconds=0.5, concurrency=1, password="wrong-password")
