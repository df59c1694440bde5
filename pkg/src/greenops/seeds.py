"""Fixture data for tests, demos, and load testing.

Two profiles:

* ``test`` - the minimal deterministic fixture set the test suites build
  on: one account per role, one stale tree (40 days past maintenance), a
  plan with one PENDING task, and one record in each pipeline.
* ``demo`` - everything in ``test`` plus enough extra volume that every
  entity kind has at least one record and list pages look alive.

Seeding refuses to touch a non-empty store; ids are deterministic because
insertion order is fixed and the store numbers records 1..n per kind.

The seeded credentials below are for local demos and tests only.
"""
from __future__ import annotations

from datetime import timedelta
from decimal import Decimal

from .auth import PasswordHasher
from .domain import (
    Announcement,
    AttendanceRecord,
    AuditStatus,
    Feedback,
    Flower,
    FlowerSpecies,
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
    SupplyApplication,
    Supplier,
    TaskKind,
    Tree,
    TreeSpecies,
    UserAccount,
)
from .errors import SeedRefused
from .scheduler import daily_check
from .store import Store
from .times import utc_now

SEED_CREDENTIALS = {
    "admin": ("admin", "admin-dev-12345", Role.ADMIN),
    "gardener": ("gardener1", "gardener-dev-12345", Role.GARDENER),
    "supplier": ("supplier1", "supplier-dev-12345", Role.SUPPLIER),
}

STALE_TREE_DAYS = 40

PROFILES = ("test", "demo")


def seed(store: Store, profile: str, *, hasher: PasswordHasher | None = None) -> dict:
    """Populate an empty store with the named profile; returns per-kind
    record counts."""
    if profile not in PROFILES:
        raise SeedRefused(f"unknown seed profile {profile!r}")
    if not store.is_empty():
        raise SeedRefused("seeding requires an empty store")
    hasher = hasher or PasswordHasher()
    now = utc_now()

    with store.batch():
        accounts = {}
        for key, (username, password, role) in SEED_CREDENTIALS.items():
            accounts[key] = store.insert(
                "user_account",
                UserAccount(
                    id=0,
                    username=username,
                    password_hash=hasher.hash(password),
                    role=role,
                    email=f"{username}@greenops.local",
                    phone=None,
                ),
            )
        gardener = store.insert(
            "gardener",
            Gardener(
                id=0,
                name="Chen Wei",
                phone="13800000001",
                hire_date=(now - timedelta(days=365)).date(),
                account_id=accounts["gardener"].id,
                responsible_area="East park",
            ),
        )
        supplier = store.insert(
            "supplier",
            Supplier(
                id=0,
                name="Evergreen Supplies",
                phone="13800000002",
                account_id=accounts["supplier"].id,
            ),
        )

        poplar_species = store.insert(
            "tree_species",
            TreeSpecies(
                id=0,
                name="Poplar",
                family="Salicaceae",
                characteristics="Fast-growing deciduous tree",
                suitable_environment="Temperate, moist soil",
                distribution=("North China", "Northwest China"),
            ),
        )
        store.insert(
            "tree_species",
            TreeSpecies(id=0, name="Pine", family="Pine", distribution=("Highlands",)),
        )
        rose_species = store.insert(
            "flower_species",
            FlowerSpecies(
                id=0,
                common_name="Rose",
                family="Rosaceae",
                colors="red, white, yellow",
                flowering_period="April to October",
            ),
        )

        # Stale on purpose: the daily health sweep is expected to downgrade
        # this tree exactly one level at the default 30-day threshold.
        stale_tree = store.insert(
            "tree",
            Tree(
                id=0,
                name="Poplar (Various Trees of The Genus Populus)",
                category="Deciduous",
                quantity=120,
                planting_area="North avenue",
                created_at=now - timedelta(days=400),
                species_id=poplar_species.id,
                last_maintained_at=now - timedelta(days=STALE_TREE_DAYS),
            ),
        )
        store.insert(
            "tree",
            Tree(
                id=0,
                name="Willow",
                category="Deciduous",
                quantity=40,
                planting_area="Lakeside",
                created_at=now,
                last_maintained_at=now - timedelta(days=1),
            ),
        )
        rose = store.insert(
            "flower",
            Flower(
                id=0,
                name="Rose",
                category="Rosaceae",
                quantity=300,
                planting_area="East bed",
                created_at=now,
                species_id=rose_species.id,
                last_maintained_at=now - timedelta(days=1),
                bloom_period="April to October",
            ),
        )
        store.insert(
            "green_space",
            GreenSpace(
                id=0,
                name="Large Lawn",
                area_sq_m=Decimal("5000.00"),
                location=GeoPoint(longitude=116.39, latitude=39.91),
                created_at=now,
                responsible_gardener_id=gardener.id,
                last_maintained_at=now - timedelta(days=1),
            ),
        )

        plan = store.insert(
            "maintenance_plan",
            MaintenancePlan(
                id=0,
                title="Rose Care Program",
                created_by=accounts["admin"].id,
                description="Seasonal care for the east rose beds",
            ),
        )
        task = store.insert(
            "maintenance_task",
            MaintenanceTask(
                id=0,
                plan_id=plan.id,
                kind=TaskKind.WATERING,
                subject=SubjectRef(kind=SubjectKind.FLOWER, subject_id=rose.id),
                assignee_gardener_id=gardener.id,
                scheduled_at=now + timedelta(days=1),
                location="East bed",
                required_tools="watering cart",
            ),
        )
        store.update("maintenance_plan", plan.id, {"task_ids": (task.id,)})

        store.insert(
            "purchase_application",
            PurchaseApplication(id=0, resource_name="Fertilizer", quantity=50, unit_price=1999),
        )
        store.insert(
            "supply_application",
            SupplyApplication(
                id=0,
                username=accounts["supplier"].username,
                real_name="Liu Yang",
                phone="13900000001",
                product_name="Garden shears",
                quantity=20,
                created_at=now,
            ),
        )
        store.insert(
            "announcement",
            Announcement(
                id=0,
                title="Spring planting schedule",
                body="Planting starts next Monday; check your task board.",
                published_at=now,
                pinned=True,
            ),
        )

        if profile == "demo":
            _extend_demo(store, accounts, supplier, now)

    if profile == "demo":
        daily_check(store, now=now)
    return store.counts()


def _extend_demo(store: Store, accounts, supplier, now):
    for name, family in (("Ginkgo", "Ginkgoaceae"), ("Camphor", "Lauraceae")):
        store.insert("tree_species", TreeSpecies(id=0, name=name, family=family))
    for name, quantity in (("Ginkgo", 25), ("Camphor Laurel", 60), ("Acacia", 15)):
        store.insert(
            "tree",
            Tree(
                id=0,
                name=name,
                category="Evergreen" if name != "Ginkgo" else "Deciduous",
                quantity=quantity,
                planting_area="Central park",
                created_at=now,
                last_maintained_at=now - timedelta(days=2),
            ),
        )
    store.insert(
        "flower_species",
        FlowerSpecies(
            id=0,
            common_name="Chrysanthemum",
            family="Asteraceae",
            colors="yellow, white",
            flowering_period="September to November",
        ),
    )
    store.insert(
        "flower",
        Flower(
            id=0,
            name="Chrysanthemum",
            category="Asteraceae",
            quantity=150,
            planting_area="South border",
            created_at=now,
            last_maintained_at=now - timedelta(days=2),
        ),
    )
    store.insert(
        "green_space",
        GreenSpace(
            id=0,
            name="Riverside Strip",
            area_sq_m=Decimal("1250.50"),
            location=GeoPoint(longitude=116.41, latitude=39.92),
            created_at=now,
            last_maintained_at=now - timedelta(days=3),
        ),
    )
    store.insert(
        "purchase_application",
        PurchaseApplication(
            id=0,
            resource_name="Mulch",
            quantity=200,
            unit_price=550,
            status=PurchaseStatus.DELIVERED,
            supplier_id=supplier.id,
            feedback_note="Quality confirmed on delivery",
        ),
    )
    store.insert(
        "supply_application",
        SupplyApplication(
            id=0,
            username=accounts["supplier"].username,
            real_name="Liu Yang",
            phone="13900000002",
            product_name="Compost",
            quantity=80,
            created_at=now - timedelta(days=7),
            audit_status=AuditStatus.APPROVED,
        ),
    )
    store.insert(
        "feedback",
        Feedback(
            id=0,
            title="Irrigation line leak",
            content="The east bed irrigation line is leaking near valve 3.",
            submitter_id=accounts["gardener"].id,
            created_at=now - timedelta(days=1),
        ),
    )
    store.insert(
        "attendance_record",
        AttendanceRecord(
            id=0,
            account_id=accounts["gardener"].id,
            sign_in_date=(now - timedelta(days=1)).date(),
            sign_in_time=now - timedelta(days=1),
        ),
    )
    store.insert(
        "announcement",
        Announcement(
            id=0,
            title="Tool shed inventory",
            body="Inventory check this Friday afternoon.",
            published_at=now - timedelta(days=2),
        ),
    )
