import contextlib
import socket
import threading
import time

import pytest
import uvicorn
from fastapi.testclient import TestClient

from greenops.api import create_app
from greenops.auth import PasswordHasher
from greenops.config import AppConfig
from greenops.seeds import SEED_CREDENTIALS, seed
from greenops.store import Store

# Production default is 120k; tests dial the cost down so seeding and the
# many logins across the suite stay fast. The hashing tests that care about
# the real cost floor construct their own hasher.
TEST_ITERATIONS = 1_000

PNG_BYTES = b"\x89PNG\r\n\x1a\n" + b"\x00" * 64


@pytest.fixture
def store():
    return Store()


@pytest.fixture
def app(tmp_path):
    config = AppConfig(
        data_dir=str(tmp_path / "data"),
        uploads_dir=str(tmp_path / "uploads"),
        hash_iterations=TEST_ITERATIONS,
    )
    return create_app(config)


@pytest.fixture
def client(app):
    seed(app.state.ctx.store, "test", hasher=PasswordHasher(TEST_ITERATIONS))
    with TestClient(app) as test_client:
        yield test_client


def login(client, key: str) -> dict:
    """Bearer headers for one of the seeded accounts ('admin', 'gardener',
    'supplier')."""
    username, password, _ = SEED_CREDENTIALS[key]
    response = client.post(
        "/api/auth/login", json={"username": username, "password": password}
    )
    assert response.status_code == 200, response.text
    return {"Authorization": f"Bearer {response.json()['token']}"}


def free_port() -> int:
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


@contextlib.contextmanager
def live_server(app, *, startup_timeout: float = 10.0):
    """Run the app under a real uvicorn server in a thread; yields the base
    URL. Loopback only; used where tests need genuine socket concurrency."""
    port = free_port()
    server = uvicorn.Server(
        uvicorn.Config(app, host="127.0.0.1", port=port, log_level="warning")
    )
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    deadline = time.monotonic() + startup_timeout
    while not server.started:
        if time.monotonic() > deadline or not thread.is_alive():
            raise RuntimeError("uvicorn did not start")
        time.sleep(0.02)
    try:
        yield f"http://127.0.0.1:{port}"
    finally:
        server.should_exit = True
        thread.join(timeout=10)


@pytest.fixture
def admin(client):
    return login(client, "admin")


@pytest.fixture
def gardener(client):
    return login(client, "gardener")


@pytest.fixture
def supplier(client):
    return login(client, "supplier")
