"""HTTP tests for registration, login, profile lookup, and password change."""
import pytest


def test_register_login_me_flow(client):
    created = client.post(
        "/api/auth/register",
        json={"username": "newgardener", "password": "spade-and-fork-9",
              "role": "GARDENER", "real_name": "Pat Moss", "phone": "13511112222"},
    )
    assert created.status_code == 201
    doc = created.json()
    assert doc["username"] == "newgardener"
    assert "password" not in doc and "password_hash" not in doc

    token = client.post(
        "/api/auth/login",
        json={"username": "newgardener", "password": "spade-and-fork-9"},
    ).json()["token"]
    me = client.get("/api/auth/me", headers={"Authorization": f"Bearer {token}"})
    assert me.status_code == 200
    body = me.json()
    assert body["account"]["role"] == "GARDENER"
    assert body["profile"]["name"] == "Pat Moss"


def test_register_defaults_to_gardener(client):
    doc = client.post(
        "/api/auth/register",
        json={"username": "plainuser", "password": "longenough1"},
    ).json()
    assert doc["role"] == "GARDENER"


def test_register_admin_requires_admin_token(client, admin, gardener):
    payload = {"username": "boss2", "password": "a-strong-pass1", "role": "ADMIN"}
    anonymous = client.post("/api/auth/register", json=payload)
    assert anonymous.status_code == 403
    lowly = client.post("/api/auth/register", headers=gardener, json=payload)
    assert lowly.status_code == 403
    blessed = client.post("/api/auth/register", headers=admin, json=payload)
    assert blessed.status_code == 201
    assert blessed.json()["role"] == "ADMIN"


def test_register_duplicate_username(client):
    response = client.post(
        "/api/auth/register", json={"username": "admin", "password": "whatever123"}
    )
    assert response.status_code == 409
    assert response.json()["code"] == "USERNAME_TAKEN"


def test_register_short_password(client):
    response = client.post(
        "/api/auth/register", json={"username": "shorty", "password": "short"}
    )
    assert response.status_code == 400


def test_login_failures_are_uniform(client):
    wrong_password = client.post(
        "/api/auth/login", json={"username": "admin", "password": "nope-nope-nope"}
    )
    unknown_user = client.post(
        "/api/auth/login", json={"username": "ghost", "password": "nope-nope-nope"}
    )
    assert wrong_password.status_code == unknown_user.status_code == 401
    assert wrong_password.json()["message"] == unknown_user.json()["message"]


def test_change_password_rotates_credentials(client, gardener):
    response = client.post(
        "/api/auth/change-password", headers=gardener,
        json={"old_password": "gardener-dev-12345", "new_password": "fresh-soil-77"},
    )
    assert response.status_code == 200
    stale = client.post(
        "/api/auth/login",
        json={"username": "gardener1", "password": "gardener-dev-12345"},
    )
    assert stale.status_code == 401
    fresh = client.post(
        "/api/auth/login", json={"username": "gardener1", "password": "fresh-soil-77"}
    )
    assert fresh.status_code == 200


def test_change_password_needs_correct_old(client, gardener):
    response = client.post(
        "/api/auth/change-password", headers=gardener,
        json={"old_password": "wrong-old-one", "new_password": "fresh-soil-77"},
    )
    assert response.status_code == 401


def test_me_for_admin_has_no_profile(client, admin):
    body = client.get("/api/auth/me", headers=admin).json()
    assert body["account"]["username"] == "admin"
    assert body["profile"] is None


def test_staff_listings_are_admin_only(client, admin, gardener):
    gardeners = client.get("/api/gardeners", headers=admin)
    assert gardeners.status_code == 200
    assert gardeners.json()["total_count"] == 1
    suppliers = client.get("/api/suppliers", headers=admin)
    assert suppliers.json()["items"][0]["name"] == "Evergreen Supplies"
    assert client.get("/api/gardeners", headers=gardener).status_code == 403
