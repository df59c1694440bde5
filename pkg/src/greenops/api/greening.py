"""Endpoints for trees, tree species, flowers, flower species, and green
spaces. Trees are created from JSON with a separate image endpoint; flowers,
flower species, and green spaces accept multipart create with inline images.
That asymmetry is part of the API contract.
"""
from __future__ import annotations

from dataclasses import replace
from decimal import Decimal

from fastapi import APIRouter, Request
from fastapi.responses import JSONResponse, Response
from starlette.datastructures import UploadFile

from ..domain import (
    Flower,
    FlowerSpecies,
    GeoPoint,
    GreenSpace,
    HealthStatus,
    HistoryEntry,
    Role,
    Tree,
    TreeSpecies,
)
from ..errors import ValidationFailed
from ..store import Filter, PageRequest
from ..times import utc_now
from .common import (
    Body,
    ctx_of,
    keyword_filter,
    page_request,
    present,
    present_page,
    read_json,
    require,
)

router = APIRouter()


def _species_summary(store, table: str, species_id):
    if species_id is None:
        return None
    species = store.get(table, species_id)
    label = species.name if table == "tree_species" else species.common_name
    return {"id": species.id, "name": label, "family": species.family}


def _plant_detail(store, kind: str, record) -> dict:
    doc = present(record)
    species_table = "tree_species" if kind == "tree" else "flower_species"
    doc["species"] = _species_summary(store, species_table, record.species_id)
    return doc


async def _form_and_files(request: Request):
    form = await request.form()
    fields = {key: value for key, value in form.multi_items() if isinstance(value, str)}
    return form, fields


async def _save_upload(ctx, upload: UploadFile) -> str:
    data = await upload.read()
    return ctx.media.save(upload.filename, upload.content_type, data)


# -- trees --------------------------------------------------------------------


@router.post("/api/trees", status_code=201)
async def create_tree(request: Request, account=require(Role.ADMIN)):
    ctx = ctx_of(request)
    b = Body(await read_json(request))
    tree = Tree(
        id=0,
        name=b.str_("name", required=True) or "",
        category=b.str_("category", required=True) or "",
        quantity=b.int_("quantity", required=True) or 0,
        planting_area=b.str_("planting_area", required=True) or "",
        created_at=utc_now(),
        maintenance_note=b.str_("maintenance_note"),
        species_id=b.int_("species_id"),
        health=b.enum_(HealthStatus, "health", default=HealthStatus.HEALTHY),
    )
    b.finish()
    return JSONResponse(present(ctx.store.insert("tree", tree)), status_code=201)


@router.get("/api/trees")
async def list_trees(request: Request, account=require()):
    ctx = ctx_of(request)
    flt = keyword_filter(request, category=request.query_params.get("category"))
    page = ctx.store.query("tree", flt, page_request(request))
    return JSONResponse(present_page(page))


@router.get("/api/trees/{tree_id:int}")
async def get_tree(tree_id: int, request: Request, account=require()):
    ctx = ctx_of(request)
    tree = ctx.store.get("tree", tree_id)
    return JSONResponse(_plant_detail(ctx.store, "tree", tree))


@router.put("/api/trees/{tree_id:int}")
async def update_tree(tree_id: int, request: Request, account=require(Role.ADMIN)):
    ctx = ctx_of(request)
    doc = await read_json(request)
    changes = _plant_changes(doc)
    return JSONResponse(present(ctx.store.update("tree", tree_id, changes)))


@router.delete("/api/trees/{tree_id:int}", status_code=204)
async def delete_tree(tree_id: int, request: Request, account=require(Role.ADMIN)):
    ctx_of(request).store.delete("tree", tree_id)
    return Response(status_code=204)


@router.post("/api/trees/{tree_id:int}/image")
async def upload_tree_image(tree_id: int, request: Request, account=require(Role.ADMIN)):
    ctx = ctx_of(request)
    ctx.store.get("tree", tree_id)
    form = await request.form()
    upload = form.get("file")
    if not isinstance(upload, UploadFile):
        raise ValidationFailed([("file", "multipart file field 'file' is required")])
    image_url = await _save_upload(ctx, upload)
    try:
        ctx.store.update("tree", tree_id, {"image_url": image_url})
    except Exception:
        ctx.media.remove(image_url)
        raise
    return JSONResponse({"image_url": image_url})


@router.post("/api/trees/{tree_id:int}/report")
async def report_tree_condition(
    tree_id: int, request: Request, account=require(Role.GARDENER, Role.ADMIN)
):
    ctx = ctx_of(request)
    b = Body(await read_json(request))
    description = b.str_("description", required=True) or ""
    photo_path = b.str_("photo_path")
    if description is not None and not 1 <= len(description) <= 2000:
        b.errors.append(("description", "must be 1..2000 characters"))
    b.finish()
    text = description if photo_path is None else f"{description} [photo {photo_path}]"
    now = utc_now()

    def apply(tree):
        health = tree.health
        if health is HealthStatus.HEALTHY:
            health = HealthStatus.NEEDS_ATTENTION
        history = tree.maintenance_history + (HistoryEntry(at=now, text=text),)
        return replace(tree, health=health, maintenance_history=history)

    tree = ctx.store.mutate("tree", tree_id, apply)
    return JSONResponse({"acknowledged": True, "health": tree.health.value})


def _plant_changes(doc: dict, *, flower: bool = False) -> dict:
    b = Body(doc)
    changes = {}
    if "name" in doc:
        changes["name"] = b.str_("name", required=True)
    if "category" in doc:
        changes["category"] = b.str_("category", required=True)
    if "quantity" in doc:
        changes["quantity"] = b.int_("quantity", required=True)
    if "planting_area" in doc:
        changes["planting_area"] = b.str_("planting_area", required=True)
    if "maintenance_note" in doc:
        changes["maintenance_note"] = b.str_("maintenance_note")
    if "species_id" in doc:
        changes["species_id"] = b.int_("species_id")
    if "health" in doc:
        changes["health"] = b.enum_(HealthStatus, "health", required=True)
    if flower and "bloom_period" in doc:
        changes["bloom_period"] = b.str_("bloom_period")
    b.finish()
    if not changes:
        raise ValidationFailed([("body", "no updatable fields given")])
    return changes


# -- tree species ---------------------------------------------------------------

# Listing-level divergence in the source API: the species collection is
# reachable both as /api/species and /api/tree-species.


@router.get("/api/species")
@router.get("/api/tree-species")
async def list_tree_species(request: Request, account=require()):
    ctx = ctx_of(request)
    flt = keyword_filter(request, family=request.query_params.get("family"))
    page = ctx.store.query("tree_species", flt, page_request(request))
    return JSONResponse(present_page(page))


@router.post("/api/species", status_code=201)
@router.post("/api/tree-species", status_code=201)
async def create_tree_species(request: Request, account=require(Role.ADMIN)):
    ctx = ctx_of(request)
    b = Body(await read_json(request))
    species = TreeSpecies(
        id=0,
        name=b.str_("name", required=True) or "",
        family=b.str_("family"),
        characteristics=b.str_("characteristics"),
        suitable_environment=b.str_("suitable_environment"),
        distribution=b.str_list("distribution"),
    )
    b.finish()
    return JSONResponse(present(ctx.store.insert("tree_species", species)), status_code=201)


@router.get("/api/tree-species/{species_id:int}")
async def get_tree_species(species_id: int, request: Request, account=require()):
    return JSONResponse(present(ctx_of(request).store.get("tree_species", species_id)))


@router.put("/api/tree-species/{species_id:int}")
async def update_tree_species(species_id: int, request: Request, account=require(Role.ADMIN)):
    ctx = ctx_of(request)
    doc = await read_json(request)
    b = Body(doc)
    changes = {}
    if "name" in doc:
        changes["name"] = b.str_("name", required=True)
    for field in ("family", "characteristics", "suitable_environment"):
        if field in doc:
            changes[field] = b.str_(field)
    if "distribution" in doc:
        changes["distribution"] = b.str_list("distribution")
    b.finish()
    if not changes:
        raise ValidationFailed([("body", "no updatable fields given")])
    return JSONResponse(present(ctx.store.update("tree_species", species_id, changes)))


@router.delete("/api/tree-species/{species_id:int}", status_code=204)
async def delete_tree_species(species_id: int, request: Request, account=require(Role.ADMIN)):
    ctx_of(request).store.delete("tree_species", species_id)
    return Response(status_code=204)


# -- flowers -------------------------------------------------------------------


@router.post("/api/flowers", status_code=201)
async def create_flower(request: Request, account=require(Role.ADMIN)):
    ctx = ctx_of(request)
    form, fields = await _form_and_files(request)
    b = Body(fields, coerce=True)
    flower = Flower(
        id=0,
        name=b.str_("name", required=True) or "",
        category=b.str_("category", required=True) or "",
        quantity=b.int_("quantity", required=True) or 0,
        planting_area=b.str_("planting_area", required=True) or "",
        created_at=utc_now(),
        maintenance_note=b.str_("maintenance_note"),
        species_id=b.int_("species_id"),
        health=b.enum_(HealthStatus, "health", default=HealthStatus.HEALTHY),
        bloom_period=b.str_("bloom_period"),
    )
    b.finish()
    upload = form.get("image")
    image_url = None
    if isinstance(upload, UploadFile) and upload.filename:
        image_url = await _save_upload(ctx, upload)
    try:
        stored = ctx.store.insert("flower", replace_image(flower, image_url))
    except Exception:
        if image_url is not None:
            ctx.media.remove(image_url)
        raise
    return JSONResponse(present(stored), status_code=201)


def replace_image(record, image_url):
    if image_url is None:
        return record
    return replace(record, image_url=image_url)


@router.get("/api/flowers")
async def list_flowers(request: Request, account=require()):
    ctx = ctx_of(request)
    flt = keyword_filter(request, category=request.query_params.get("category"))
    page = ctx.store.query("flower", flt, page_request(request))
    return JSONResponse(present_page(page))


@router.get("/api/flowers/{flower_id:int}")
async def get_flower(flower_id: int, request: Request, account=require()):
    ctx = ctx_of(request)
    flower = ctx.store.get("flower", flower_id)
    return JSONResponse(_plant_detail(ctx.store, "flower", flower))


@router.put("/api/flowers/{flower_id:int}")
async def update_flower(flower_id: int, request: Request, account=require(Role.ADMIN)):
    ctx = ctx_of(request)
    doc = await read_json(request)
    changes = _plant_changes(doc, flower=True)
    return JSONResponse(present(ctx.store.update("flower", flower_id, changes)))


@router.delete("/api/flowers/{flower_id:int}", status_code=204)
async def delete_flower(flower_id: int, request: Request, account=require(Role.ADMIN)):
    ctx_of(request).store.delete("flower", flower_id)
    return Response(status_code=204)


# -- flower species --------------------------------------------------------------


@router.post("/api/flower-species", status_code=201)
async def create_flower_species(request: Request, account=require(Role.ADMIN)):
    ctx = ctx_of(request)
    form, fields = await _form_and_files(request)
    b = Body(fields, coerce=True)
    species = FlowerSpecies(
        id=0,
        common_name=b.str_("common_name", required=True) or "",
        family=b.str_("family"),
        colors=b.str_("colors"),
        flowering_period=b.str_("flowering_period"),
        description=b.str_("description"),
    )
    b.finish()
    upload = form.get("image")
    image_url = None
    if isinstance(upload, UploadFile) and upload.filename:
        image_url = await _save_upload(ctx, upload)
    try:
        stored = ctx.store.insert("flower_species", replace_image(species, image_url))
    except Exception:
        if image_url is not None:
            ctx.media.remove(image_url)
        raise
    return JSONResponse(present(stored), status_code=201)


def _flower_species_filter(name=None, family=None, flowering_period=None) -> Filter:
    flt = Filter()
    if name is not None:
        flt.contains["common_name"] = name
    if family is not None:
        flt.exact["family"] = family
    if flowering_period is not None:
        flt.contains["flowering_period"] = flowering_period
    return flt


@router.get("/api/flower-species")
async def list_flower_species(request: Request, account=require()):
    ctx = ctx_of(request)
    flt = _flower_species_filter(
        name=request.query_params.get("name"),
        family=request.query_params.get("family"),
    )
    page = ctx.store.query("flower_species", flt, page_request(request))
    return JSONResponse(present_page(page))


@router.post("/api/flower-species/search")
async def search_flower_species(request: Request, account=require()):
    ctx = ctx_of(request)
    doc = await read_json(request)
    b = Body(doc)
    b.reject_unknown("name", "family", "flowering_period", "page", "pageSize")
    name = b.str_("name")
    family = b.str_("family")
    flowering_period = b.str_("flowering_period")
    page_num = b.int_("page", default=1)
    page_size = b.int_("pageSize", default=10)
    b.finish()
    flt = _flower_species_filter(name, family, flowering_period)
    page = ctx.store.query("flower_species", flt, PageRequest(page_num, page_size))
    return JSONResponse(present_page(page))


@router.get("/api/flower-species/family/{family}")
async def flower_species_by_family(family: str, request: Request, account=require()):
    ctx = ctx_of(request)
    members = ctx.store.find("flower_species", lambda s: s.family == family)
    return JSONResponse([present(member) for member in members])


@router.get("/api/flower-species/{species_id:int}")
async def get_flower_species(species_id: int, request: Request, account=require()):
    return JSONResponse(present(ctx_of(request).store.get("flower_species", species_id)))


@router.put("/api/flower-species/{species_id:int}")
async def update_flower_species(species_id: int, request: Request, account=require(Role.ADMIN)):
    ctx = ctx_of(request)
    doc = await read_json(request)
    b = Body(doc)
    changes = {}
    if "common_name" in doc:
        changes["common_name"] = b.str_("common_name", required=True)
    for field in ("family", "colors", "flowering_period", "description", "image_url"):
        if field in doc:
            changes[field] = b.str_(field)
    b.finish()
    if not changes:
        raise ValidationFailed([("body", "no updatable fields given")])
    return JSONResponse(present(ctx.store.update("flower_species", species_id, changes)))


@router.delete("/api/flower-species/{species_id:int}", status_code=204)
async def delete_flower_species(species_id: int, request: Request, account=require(Role.ADMIN)):
    ctx_of(request).store.delete("flower_species", species_id)
    return Response(status_code=204)


# -- green spaces -----------------------------------------------------------------


@router.post("/api/green-spaces", status_code=201)
async def create_green_space(request: Request, account=require(Role.ADMIN)):
    ctx = ctx_of(request)
    form, fields = await _form_and_files(request)
    b = Body(fields, coerce=True)
    space = GreenSpace(
        id=0,
        name=b.str_("name", required=True) or "",
        area_sq_m=b.decimal_("area_sq_m", required=True, default=Decimal("0")),
        location=GeoPoint(
            longitude=b.float_("longitude", required=True) or 0.0,
            latitude=b.float_("latitude", required=True) or 0.0,
        ),
        created_at=utc_now(),
        responsible_gardener_id=b.int_("responsible_gardener_id"),
        maintenance_note=b.str_("maintenance_note"),
    )
    b.finish()
    image_urls: list[str] = []
    try:
        for upload in form.getlist("images"):
            if isinstance(upload, UploadFile) and upload.filename:
                image_urls.append(await _save_upload(ctx, upload))
        stored = ctx.store.insert("green_space", replace(space, image_urls=tuple(image_urls)))
    except Exception:
        for url in image_urls:
            ctx.media.remove(url)
        raise
    return JSONResponse(present(stored), status_code=201)


@router.get("/api/green-spaces")
async def list_green_spaces(request: Request, account=require()):
    ctx = ctx_of(request)
    flt = keyword_filter(request)
    health_raw = request.query_params.get("health")
    if health_raw is not None:
        try:
            flt.status = HealthStatus(health_raw)
        except ValueError:
            raise ValidationFailed([("health", "is not a valid health status")]) from None
    page = ctx.store.query("green_space", flt, page_request(request))
    return JSONResponse(present_page(page))


@router.get("/api/green-spaces/{space_id:int}")
async def get_green_space(space_id: int, request: Request, account=require()):
    return JSONResponse(present(ctx_of(request).store.get("green_space", space_id)))


@router.put("/api/green-spaces/{space_id:int}")
async def update_green_space(space_id: int, request: Request, account=require(Role.ADMIN)):
    ctx = ctx_of(request)
    doc = await read_json(request)
    b = Body(doc)
    changes = {}
    if "name" in doc:
        changes["name"] = b.str_("name", required=True)
    if "area_sq_m" in doc:
        changes["area_sq_m"] = b.decimal_("area_sq_m", required=True)
    if "longitude" in doc or "latitude" in doc:
        current = ctx.store.get("green_space", space_id).location
        changes["location"] = GeoPoint(
            longitude=b.float_("longitude", default=current.longitude),
            latitude=b.float_("latitude", default=current.latitude),
        )
    if "responsible_gardener_id" in doc:
        changes["responsible_gardener_id"] = b.int_("responsible_gardener_id")
    if "maintenance_note" in doc:
        changes["maintenance_note"] = b.str_("maintenance_note")
    if "health" in doc:
        changes["health"] = b.enum_(HealthStatus, "health", required=True)
    b.finish()
    if not changes:
        raise ValidationFailed([("body", "no updatable fields given")])
    return JSONResponse(present(ctx.store.update("green_space", space_id, changes)))


@router.delete("/api/green-spaces/{space_id:int}", status_code=204)
async def delete_green_space(space_id: int, request: Request, account=require(Role.ADMIN)):
    ctx_of(request).store.delete("green_space", space_id)
    return Response(status_code=204)
