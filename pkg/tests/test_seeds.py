"""Seed profiles: determinism, refusal on non-empty stores, and the
fixture contents the rest of the suite leans on."""
import pytest

from greenops.auth import PasswordHasher
from greenops.domain import HealthStatus, Role, TaskStatus
from greenops.errors import SeedRefused
from greenops.seeds import SEED_CREDENTIALS, STALE_TREE_DAYS, seed
from greenops.store import Store

HASHER = PasswordHasher(500)


def test_refuses_unknown_profile(store):
    with pytest.raises(SeedRefused):
        seed(store, "production")


def test_refuses_non_empty_store(store):
    seed(store, "test", hasher=HASHER)
    with pytest.raises(SeedRefused):
        seed(store, "test", hasher=HASHER)


def test_one_account_per_role(store):
    seed(store, "test", hasher=HASHER)
    roles = {a.role for a in store.list_all("user_account")}
    assert roles == {Role.ADMIN, Role.GARDENER, Role.SUPPLIER}


def test_seeded_credentials_verify(store):
    seed(store, "test", hasher=HASHER)
    for username, password, role in SEED_CREDENTIALS.values():
        account = next(
            a for a in store.list_all("user_account") if a.username == username
        )
        assert account.role is role
        assert HASHER.verify(password, account.password_hash)
        assert password not in account.password_hash


def test_poplar_fixture_present(store):
    seed(store, "test", hasher=HASHER)
    names = [t.name for t in store.list_all("tree")]
    assert "Poplar (Various Trees of The Genus Populus)" in names


def test_stale_tree_is_past_default_threshold(store):
    seed(store, "test", hasher=HASHER)
    assert STALE_TREE_DAYS > 30
    stale = store.get("tree", 1)
    assert stale.health is HealthStatus.HEALTHY  # not downgraded until a sweep runs


def test_plan_task_linkage(store):
    seed(store, "test", hasher=HASHER)
    plan = store.get("maintenance_plan", 1)
    assert plan.title == "Rose Care Program"
    task = store.get("maintenance_task", plan.task_ids[0])
    assert task.plan_id == plan.id
    assert task.status is TaskStatus.PENDING


def test_ids_are_deterministic(store):
    counts = seed(store, "test", hasher=HASHER)
    other = Store()
    assert seed(other, "test", hasher=HASHER) == counts
    assert store.table_dumps().count("\n") == other.table_dumps().count("\n")


def test_demo_covers_every_kind(store):
    counts = seed(store, "demo", hasher=HASHER)
    assert all(count >= 1 for count in counts.values()), counts


def test_demo_ran_a_health_sweep(store):
    seed(store, "demo", hasher=HASHER)
    reports = store.list_all("health_check_report")
    assert len(reports) == 1
    # the intentionally stale tree was downgraded by that sweep
    assert any(d.kind == "tree" for d in reports[0].downgraded)
