"""Store behavior: id assignment, uniqueness codes, referential and delete
guards, batches, filtering, file persistence, migrations, and snapshots."""
import json
from datetime import datetime, timezone
from decimal import Decimal

import pytest
from hypothesis import settings
from hypothesis import strategies as st
from hypothesis.stateful import RuleBasedStateMachine, initialize, invariant, rule

from greenops.domain import (
    AttendanceRecord,
    AuditStatus,
    Gardener,
    GeoPoint,
    GreenSpace,
    MaintenancePlan,
    MaintenanceTask,
    PurchaseApplication,
    PurchaseStatus,
    Role,
    SubjectKind,
    SubjectRef,
    Supplier,
    SupplyApplication,
    TaskKind,
    TaskStatus,
    Tree,
    TreeSpecies,
    UserAccount,
)
from greenops.errors import (
    ConflictInUse,
    NotFound,
    UniquenessViolation,
    UnknownVersion,
    UnsupportedVersion,
    ValidationFailed,
)
from greenops.store import SCHEMA_VERSION, Filter, PageRequest, Store

NOW = datetime(2026, 3, 1, tzinfo=timezone.utc)
TODAY = NOW.date()


def tree(name="Poplar", **overrides) -> Tree:
    values = dict(
        id=0, name=name, category="Salicaceae", quantity=3,
        planting_area="North", created_at=NOW,
    )
    values.update(overrides)
    return Tree(**values)


def account(username="amy", role=Role.GARDENER) -> UserAccount:
    return UserAccount(id=0, username=username, password_hash="x" * 20, role=role)


def gardener(account_id, name="Amy") -> Gardener:
    return Gardener(id=0, name=name, phone="555", hire_date=TODAY, account_id=account_id)


def task(plan_id, assignee, subject_id=1, **overrides) -> MaintenanceTask:
    values = dict(
        id=0, plan_id=plan_id, kind=TaskKind.WATERING,
        subject=SubjectRef(SubjectKind.TREE, subject_id),
        assignee_gardener_id=assignee, scheduled_at=NOW, location="North",
    )
    values.update(overrides)
    return MaintenanceTask(**values)


def supply(phone="139", **overrides) -> SupplyApplication:
    values = dict(
        id=0, username="sup", real_name="Sup Co", phone=phone,
        product_name="Shears", quantity=5, created_at=NOW,
    )
    values.update(overrides)
    return SupplyApplication(**values)


@pytest.fixture
def populated(store):
    """Account + gardener + tree + plan, enough to hang tasks off."""
    acc = store.insert("user_account", account())
    g = store.insert("gardener", gardener(acc.id))
    t = store.insert("tree", tree())
    plan = store.insert("maintenance_plan", MaintenancePlan(id=0, title="Care", created_by=acc.id))
    return store, acc, g, t, plan


# -- ids ------------------------------------------------------------------------


def test_ids_are_monotonic_per_kind(store):
    first = store.insert("tree", tree())
    second = store.insert("tree", tree(name="Willow"))
    assert (first.id, second.id) == (1, 2)
    assert store.insert("tree_species", TreeSpecies(id=0, name="Pine")).id == 1


def test_deleted_ids_are_never_reused(store):
    first = store.insert("tree", tree())
    store.delete("tree", first.id)
    assert store.insert("tree", tree(name="Willow")).id == first.id + 1


def test_get_update_delete_missing_raise(store):
    with pytest.raises(NotFound):
        store.get("tree", 7)
    with pytest.raises(NotFound):
        store.update("tree", 7, {"name": "x"})
    with pytest.raises(NotFound):
        store.delete("tree", 7)


def test_update_rejects_id_change(store):
    record = store.insert("tree", tree())
    with pytest.raises(ValidationFailed):
        store.update("tree", record.id, {"id": 9})


def test_insert_validates(store):
    with pytest.raises(ValidationFailed):
        store.insert("tree", tree(name=""))


# -- uniqueness ---------------------------------------------------------------------


def test_username_taken_code(store):
    store.insert("user_account", account())
    with pytest.raises(UniquenessViolation) as excinfo:
        store.insert("user_account", account())
    assert excinfo.value.code == "USERNAME_TAKEN"


def test_species_name_exists_code(store):
    store.insert("tree_species", TreeSpecies(id=0, name="Pine"))
    with pytest.raises(UniquenessViolation) as excinfo:
        store.insert("tree_species", TreeSpecies(id=0, name="Pine"))
    assert excinfo.value.code == "SPECIES_NAME_EXISTS"


def test_green_space_name_message(store):
    space = GreenSpace(
        id=0, name="Large Lawn", area_sq_m=Decimal("10.5"),
        location=GeoPoint(0.0, 0.0), created_at=NOW,
    )
    store.insert("green_space", space)
    with pytest.raises(UniquenessViolation) as excinfo:
        store.insert("green_space", space)
    assert excinfo.value.code == "GREEN_SPACE_NAME_EXISTS"
    assert excinfo.value.message == "The name of the green space already exists"


def test_duplicate_pending_phone_blocked(store):
    store.insert("supply_application", supply())
    with pytest.raises(UniquenessViolation) as excinfo:
        store.insert("supply_application", supply())
    assert excinfo.value.code == "DUPLICATE_PENDING_PHONE"
    assert (
        excinfo.value.message
        == "There is already a pending application for this cell phone number."
    )


def test_settled_phone_can_reapply(store):
    # the one-pending-per-phone rule only counts PENDING applications
    first = store.insert("supply_application", supply())
    store.update("supply_application", first.id, {"audit_status": AuditStatus.REJECTED})
    second = store.insert("supply_application", supply())
    assert second.id == first.id + 1


def test_same_day_sign_in_conflicts(store):
    acc = store.insert("user_account", account())
    record = AttendanceRecord(id=0, account_id=acc.id, sign_in_date=TODAY, sign_in_time=NOW)
    store.insert("attendance_record", record)
    with pytest.raises(UniquenessViolation) as excinfo:
        store.insert("attendance_record", record)
    assert excinfo.value.code == "ALREADY_SIGNED_IN"


def test_update_into_duplicate_name_blocked(store):
    store.insert("tree_species", TreeSpecies(id=0, name="Pine"))
    other = store.insert("tree_species", TreeSpecies(id=0, name="Fir"))
    with pytest.raises(UniquenessViolation):
        store.update("tree_species", other.id, {"name": "Pine"})
    # renaming a record to its own name is not a conflict
    store.update("tree_species", other.id, {"name": "Fir"})


# -- references and delete guards -----------------------------------------------------


def test_task_requires_existing_refs(populated):
    store, acc, g, t, plan = populated
    with pytest.raises(ValidationFailed):
        store.insert("maintenance_task", task(plan.id, assignee=99, subject_id=t.id))
    with pytest.raises(ValidationFailed):
        store.insert("maintenance_task", task(plan.id, g.id, subject_id=99))


def test_tree_requires_existing_species(store):
    with pytest.raises(ValidationFailed):
        store.insert("tree", tree(species_id=5))


def test_gardener_with_active_task_not_deletable(populated):
    store, acc, g, t, plan = populated
    store.insert("maintenance_task", task(plan.id, g.id, subject_id=t.id))
    with pytest.raises(ConflictInUse):
        store.delete("gardener", g.id)


def test_subject_with_active_task_not_deletable(populated):
    store, acc, g, t, plan = populated
    store.insert("maintenance_task", task(plan.id, g.id, subject_id=t.id))
    with pytest.raises(ConflictInUse):
        store.delete("tree", t.id)


def test_completed_task_releases_subject(populated):
    store, acc, g, t, plan = populated
    item = store.insert("maintenance_task", task(plan.id, g.id, subject_id=t.id))
    store.update("maintenance_task", item.id, {"status": TaskStatus.COMPLETED})
    store.delete("tree", t.id)


def test_referenced_species_not_deletable(store):
    species = store.insert("tree_species", TreeSpecies(id=0, name="Pine"))
    store.insert("tree", tree(species_id=species.id))
    with pytest.raises(ConflictInUse):
        store.delete("tree_species", species.id)


def test_account_with_profile_not_deletable(populated):
    store, acc, g, t, plan = populated
    with pytest.raises(ConflictInUse):
        store.delete("user_account", acc.id)


def test_supplier_with_open_purchase_not_deletable(store):
    acc = store.insert("user_account", account(role=Role.SUPPLIER))
    sup = store.insert("supplier", Supplier(id=0, name="Sup Co", phone="555", account_id=acc.id))
    store.insert(
        "purchase_application",
        PurchaseApplication(
            id=0, resource_name="Mulch", quantity=2, unit_price=9,
            status=PurchaseStatus.ACCEPTED, supplier_id=sup.id,
        ),
    )
    with pytest.raises(ConflictInUse):
        store.delete("supplier", sup.id)


def test_plan_delete_cascades_settled_tasks(populated):
    store, acc, g, t, plan = populated
    a = store.insert("maintenance_task", task(plan.id, g.id, subject_id=t.id))
    b = store.insert(
        "maintenance_task", task(plan.id, g.id, subject_id=t.id, status=TaskStatus.COMPLETED)
    )
    store.delete("maintenance_plan", plan.id)
    for task_id in (a.id, b.id):
        with pytest.raises(NotFound):
            store.get("maintenance_task", task_id)


def test_plan_with_started_work_not_deletable(populated):
    store, acc, g, t, plan = populated
    store.insert(
        "maintenance_task", task(plan.id, g.id, subject_id=t.id, status=TaskStatus.IN_PROGRESS)
    )
    with pytest.raises(ConflictInUse):
        store.delete("maintenance_plan", plan.id)


# -- batches ----------------------------------------------------------------------


def test_batch_rolls_back_everything_on_error(store):
    store.insert("tree", tree())
    with pytest.raises(ValidationFailed):
        with store.batch():
            store.insert("tree", tree(name="Willow"))
            store.insert("tree", tree(name=""))
    assert store.count("tree") == 1
    # next id is also rolled back, so numbering stays dense
    assert store.insert("tree", tree(name="Willow")).id == 2


def test_nested_batches_commit_once(store):
    with store.batch():
        store.insert("tree", tree())
        with store.batch():
            store.insert("tree", tree(name="Willow"))
    assert store.count("tree") == 2


def test_mutate_applies_atomically(store):
    record = store.insert("tree", tree())
    updated = store.mutate("tree", record.id, lambda t: t)
    assert updated == record


# -- query ------------------------------------------------------------------------


def test_keyword_is_case_insensitive_substring(store):
    store.insert("tree", tree(name="Locust Tree (Sophora Japonica)"))
    store.insert("tree", tree(name="Willow"))
    page = store.query("tree", Filter(keyword="locust"))
    assert [r.name for r in page.items] == ["Locust Tree (Sophora Japonica)"]


def test_pagination_envelope(store):
    for i in range(25):
        store.insert("tree", tree(name=f"Tree {i:02}"))
    page = store.query("tree", None, PageRequest(page=3, page_size=10))
    assert page.total_count == 25
    assert [r.id for r in page.items] == list(range(21, 26))
    beyond = store.query("tree", None, PageRequest(page=9, page_size=10))
    assert beyond.items == () and beyond.total_count == 25


def test_page_request_bounds():
    with pytest.raises(ValidationFailed):
        PageRequest(page=0)
    with pytest.raises(ValidationFailed):
        PageRequest(page_size=0)
    with pytest.raises(ValidationFailed):
        PageRequest(page_size=101)


def test_status_filter(store):
    store.insert("purchase_application", PurchaseApplication(
        id=0, resource_name="Mulch", quantity=2, unit_price=9))
    store.insert("purchase_application", PurchaseApplication(
        id=0, resource_name="Pots", quantity=2, unit_price=9, status=PurchaseStatus.SHIPPED))
    page = store.query("purchase_application", Filter(status=PurchaseStatus.SHIPPED))
    assert [r.resource_name for r in page.items] == ["Pots"]


def test_contains_filter(store):
    store.insert("tree", tree(name="Poplar", planting_area="East bed"))
    store.insert("tree", tree(name="Willow", planting_area="West bed"))
    flt = Filter()
    flt.contains["planting_area"] = "east"
    assert [r.name for r in store.query("tree", flt).items] == ["Poplar"]


# -- file persistence ----------------------------------------------------------------


def test_file_store_survives_reopen(tmp_path):
    store = Store(mode="file", path=tmp_path)
    record = store.insert("tree", tree())
    store.delete("tree", store.insert("tree", tree(name="Willow")).id)

    reopened = Store(mode="file", path=tmp_path)
    assert reopened.get("tree", record.id) == record
    # id counters persist too: no reuse after reopen
    assert reopened.insert("tree", tree(name="Acacia")).id == 3


def test_file_store_rolls_back_failed_batch(tmp_path):
    store = Store(mode="file", path=tmp_path)
    store.insert("tree", tree())
    with pytest.raises(ValidationFailed):
        with store.batch():
            store.insert("tree", tree(name="Willow"))
            store.insert("tree", tree(name=""))
    assert Store(mode="file", path=tmp_path).count("tree") == 1


def test_v1_file_migrates_distribution_string(tmp_path):
    raw = {
        "schema_version": 1,
        "next_ids": {"tree_species": 2},
        "tables": {
            "tree_species": {
                "1": {
                    "id": 1, "name": "Pine", "family": None, "characteristics": None,
                    "suitable_environment": None, "distribution": "north, south , east",
                }
            }
        },
    }
    (tmp_path / "store.json").write_text(json.dumps(raw), encoding="utf-8")
    store = Store(mode="file", path=tmp_path)
    assert store.get("tree_species", 1).distribution == ("north", "south", "east")
    assert store.schema_version == SCHEMA_VERSION


def test_newer_schema_refused(tmp_path):
    raw = {"schema_version": SCHEMA_VERSION + 1, "next_ids": {}, "tables": {}}
    (tmp_path / "store.json").write_text(json.dumps(raw), encoding="utf-8")
    with pytest.raises(UnknownVersion):
        Store(mode="file", path=tmp_path)


# -- snapshots --------------------------------------------------------------------


def seeded_store() -> Store:
    store = Store()
    acc = store.insert("user_account", account())
    g = store.insert("gardener", gardener(acc.id))
    species = store.insert("tree_species", TreeSpecies(id=0, name="Pine", distribution=("n",)))
    store.insert("tree", tree(species_id=species.id))
    plan = store.insert("maintenance_plan", MaintenancePlan(id=0, title="Care", created_by=acc.id))
    store.insert("maintenance_task", task(plan.id, g.id))
    return store


def test_snapshot_round_trip_is_byte_identical(tmp_path):
    store = seeded_store()
    path = tmp_path / "snap.ndjson"
    store.export_snapshot(path)

    restored = Store()
    restored.import_snapshot(path)
    assert restored.table_dumps() == store.table_dumps()
    # id counters restored: inserting yields the same next id in both
    assert (
        restored.insert("tree", tree(name="Willow")).id
        == store.insert("tree", tree(name="Willow")).id
    )


def test_import_refuses_non_empty_store(tmp_path):
    store = seeded_store()
    path = tmp_path / "snap.ndjson"
    store.export_snapshot(path)
    with pytest.raises(Exception) as excinfo:
        store.import_snapshot(path)
    assert "empty" in str(excinfo.value)


def test_import_rejects_unsupported_format(tmp_path):
    path = tmp_path / "snap.ndjson"
    store = Store()
    store.export_snapshot(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    header = json.loads(lines[0])
    header["format_version"] = 99
    path.write_text("\n".join([json.dumps(header)] + lines[1:]) + "\n", encoding="utf-8")
    with pytest.raises(UnsupportedVersion):
        Store().import_snapshot(path)


def test_export_empty_store_round_trips(tmp_path):
    path = tmp_path / "snap.ndjson"
    Store().export_snapshot(path)
    restored = Store()
    restored.import_snapshot(path)
    assert restored.is_empty()


# -- model-based check against a plain dict ---------------------------------------------


class StoreModel(RuleBasedStateMachine):
    """Drives inserts/updates/deletes on the tree table and mirrors them in
    a dict; the store must agree with the mirror at every step."""

    def __init__(self):
        super().__init__()
        self.store = Store()
        self.mirror: dict[int, Tree] = {}

    @initialize()
    def start(self):
        pass

    names = st.text(
        alphabet=st.characters(whitelist_categories=("Lu", "Ll", "Nd")), min_size=1, max_size=20
    )

    @rule(name=names, quantity=st.integers(min_value=0, max_value=1000))
    def insert(self, name, quantity):
        record = self.store.insert("tree", tree(name=name, quantity=quantity))
        self.mirror[record.id] = record

    @rule(data=st.data(), quantity=st.integers(min_value=0, max_value=1000))
    def update(self, data, quantity):
        if not self.mirror:
            return
        target = data.draw(st.sampled_from(sorted(self.mirror)))
        updated = self.store.update("tree", target, {"quantity": quantity})
        self.mirror[target] = updated

    @rule(data=st.data())
    def delete(self, data):
        if not self.mirror:
            return
        target = data.draw(st.sampled_from(sorted(self.mirror)))
        self.store.delete("tree", target)
        del self.mirror[target]

    @rule(data=st.data())
    def get_matches(self, data):
        if not self.mirror:
            return
        target = data.draw(st.sampled_from(sorted(self.mirror)))
        assert self.store.get("tree", target) == self.mirror[target]

    @invariant()
    def same_contents(self):
        assert {r.id: r for r in self.store.list_all("tree")} == self.mirror


TestStoreAgainstModel = StoreModel.TestCase
TestStoreAgainstModel.settings = settings(max_examples=25, stateful_step_count=30)
