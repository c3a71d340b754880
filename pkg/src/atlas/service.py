"""HTTP facade over the engine for the analyst workbench.

Knowledge bases are immutable shared state; case writes go through a per-case
lock and land on disk atomically (temp file + rename), so a client never sees
a half-written case.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .attack import Corpus, technique_lookup
from .cases import (
    Case,
    arc_from_json,
    build_report,
    event_from_json,
    event_to_json,
    parse_case,
    serialize_case,
    thread_placements,
)
from .coa import ActionMap, build_coa_matrix, coa_to_json, render_coa
from .data import (
    BIND_ADDR_ENV,
    CASE_SUFFIX,
    DEFAULT_BIND,
    default_data_dir,
    load_corpus,
    load_defense_map,
)
from .defense import DefenseMap, countermeasures_for, related_offensive_techniques
from .diamond import add_arc, add_event, enumerate_paths, pivot
from .errors import (
    AtlasError,
    DuplicateIdError,
    FormatError,
    NotFoundError,
    ValidationError,
)
from .killchain import PhaseMap, assign_phases, narrative
from .profiles import build_profile, export_navigator_layer, layer_to_json


class CaseStore:
    """Directory-backed case collection; one writer per case, many readers."""

    def __init__(self, directory: Path | str):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._guard = threading.Lock()

    def _lock(self, case_id: str) -> threading.Lock:
        with self._guard:
            return self._locks.setdefault(case_id, threading.Lock())

    def _path(self, case_id: str) -> Path:
        return self.directory / f"{case_id}{CASE_SUFFIX}"

    def list_ids(self) -> list[str]:
        return sorted(p.name[: -len(CASE_SUFFIX)] for p in self.directory.glob(f"*{CASE_SUFFIX}"))

    def exists(self, case_id: str) -> bool:
        return self._path(case_id).is_file()

    def get(self, case_id: str) -> Case:
        path = self._path(case_id)
        if not path.is_file():
            raise NotFoundError(f"no case {case_id!r}")
        return parse_case(path.read_bytes())

    def _write(self, case: Case) -> None:
        payload = serialize_case(case).encode("utf-8")
        fd, tmp_name = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as handle:
                handle.write(payload)
            os.replace(tmp_name, self._path(case.id))
        except BaseException:
            if os.path.exists(tmp_name):
                os.unlink(tmp_name)
            raise

    def create(self, case: Case) -> Case:
        with self._lock(case.id):
            if self.exists(case.id):
                raise DuplicateIdError(f"case {case.id!r} already exists")
            self._write(case)
        return case

    def replace(self, case: Case) -> Case:
        with self._lock(case.id):
            if not self.exists(case.id):
                raise NotFoundError(f"no case {case.id!r}")
            self._write(case)
        return case

    def delete(self, case_id: str) -> None:
        with self._lock(case_id):
            path = self._path(case_id)
            if not path.is_file():
                raise NotFoundError(f"no case {case_id!r}")
            path.unlink()

    def mutate(self, case_id: str, fn: Callable[[Case], Case]) -> Case:
        """Apply a validated mutation; a failure leaves the file untouched."""
        with self._lock(case_id):
            path = self._path(case_id)
            if not path.is_file():
                raise NotFoundError(f"no case {case_id!r}")
            updated = fn(parse_case(path.read_bytes()))
            self._write(updated)
        return updated


def _status_for(exc: Exception) -> int:
    if isinstance(exc, NotFoundError):
        return 404
    if isinstance(exc, DuplicateIdError):
        return 409
    if isinstance(exc, (ValidationError, FormatError, ValueError)):
        return 400
    return 500


def _code_for(status: int) -> str:
    return {400: "validation", 404: "not_found", 409: "duplicate"}.get(status, "internal")


def _error_body(exc: Exception, request_path: str) -> dict:
    status = _status_for(exc)
    path = getattr(exc, "path", "") or request_path
    return {"code": _code_for(status), "message": str(exc), "path": path}


def _technique_json(corpus: Corpus, technique_id: str) -> dict:
    tech = technique_lookup(corpus, technique_id)
    body = {
        "id": tech.id,
        "name": tech.name,
        "tactics": [t.value for t in sorted(tech.tactics, key=lambda t: t.order)],
        "revoked": tech.revoked,
        "deprecated": tech.deprecated,
        "parent": None,
    }
    if tech.parent_id and tech.parent_id in corpus.techniques:
        parent = corpus.techniques[tech.parent_id]
        body["parent"] = {"id": parent.id, "name": parent.name}
    return body


def _profile_json(profile) -> dict:
    return {
        "group": {"id": profile.group.id, "name": profile.group.name},
        "description": profile.description,
        "aliases": list(profile.aliases),
        "ttp": [
            {
                "tactic": tactic.value,
                "tactic_name": tactic.display,
                "techniques": [{"id": tid, "name": name} for tid, name in pairs],
            }
            for tactic, pairs in profile.ttp.items()
        ],
        "software": [{"id": s.id, "name": s.name, "kind": s.kind} for s in profile.software],
    }


def _case_json(case: Case) -> dict:
    return json.loads(serialize_case(case))


@dataclass(frozen=True)
class ServiceContext:
    corpus: Corpus
    defense_map: DefenseMap
    phase_map: PhaseMap
    action_map: ActionMap
    store: CaseStore


def create_app(ctx: ServiceContext) -> FastAPI:
    app = FastAPI(title="atlas", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(AtlasError)
    async def _atlas_error(request: Request, exc: AtlasError):
        return JSONResponse(status_code=_status_for(exc), content=_error_body(exc, request.url.path))

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content=_error_body(exc, request.url.path))

    @app.exception_handler(RequestValidationError)
    async def _request_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"code": "validation", "message": str(exc.errors()), "path": request.url.path},
        )

    def effective_phase_map(case: Case) -> PhaseMap:
        return ctx.phase_map.with_overrides(case.phase_overrides)

    @app.get("/groups")
    def groups():
        return [
            {"id": g.id, "name": g.name}
            for g in sorted(ctx.corpus.groups.values(), key=lambda g: g.id)
        ]

    @app.get("/groups/{name}/profile")
    def group_profile(name: str, software_derived: bool = False):
        return _profile_json(build_profile(ctx.corpus, name, software_derived))

    @app.get("/groups/{name}/layer")
    def group_layer(name: str):
        layer = export_navigator_layer(build_profile(ctx.corpus, name))
        return json.loads(layer_to_json(layer))

    @app.get("/techniques/{technique_id}")
    def technique(technique_id: str):
        return _technique_json(ctx.corpus, technique_id)

    @app.get("/techniques/{technique_id}/countermeasures")
    def technique_countermeasures(technique_id: str):
        pairs = countermeasures_for(ctx.defense_map, technique_id)
        return [
            {
                "defensive": {"id": d.id, "name": d.name, "tactic": d.tactic.value},
                "artifact": artifact,
            }
            for d, artifact in pairs
        ]

    @app.get("/countermeasures/{defensive_id}/related")
    def countermeasure_related(defensive_id: str):
        table = related_offensive_techniques(ctx.defense_map, defensive_id, ctx.corpus)
        return {
            tactic.value: [
                {"id": tid, "name": ctx.corpus.techniques[tid].name} for tid in sorted(ids)
            ]
            for tactic, ids in table.items()
        }

    @app.get("/cases")
    def cases():
        out = []
        for case_id in ctx.store.list_ids():
            case = ctx.store.get(case_id)
            out.append({"id": case.id, "title": case.title})
        return out

    @app.post("/cases", status_code=201)
    async def create_case(request: Request):
        case = parse_case(await request.body())
        return _case_json(ctx.store.create(case))

    @app.get("/cases/{case_id}")
    def get_case(case_id: str):
        return _case_json(ctx.store.get(case_id))

    @app.put("/cases/{case_id}")
    async def put_case(case_id: str, request: Request):
        case = parse_case(await request.body())
        if case.id != case_id:
            raise ValidationError(
                f"body case id {case.id!r} does not match path id {case_id!r}", path="id"
            )
        return _case_json(ctx.store.replace(case))

    @app.delete("/cases/{case_id}", status_code=204)
    def delete_case(case_id: str):
        ctx.store.delete(case_id)

    @app.post("/cases/{case_id}/events", status_code=201)
    async def post_event(case_id: str, request: Request):
        event = event_from_json(json.loads(await request.body()))
        updated = ctx.store.mutate(
            case_id, lambda case: _with_thread(case, add_event(case.thread, event))
        )
        return _case_json(updated)

    @app.post("/cases/{case_id}/arcs", status_code=201)
    async def post_arc(case_id: str, request: Request):
        arc = arc_from_json(json.loads(await request.body()))
        updated = ctx.store.mutate(
            case_id, lambda case: _with_thread(case, add_arc(case.thread, arc))
        )
        return _case_json(updated)

    @app.get("/cases/{case_id}/pivot")
    def case_pivot(case_id: str, field: str, value: str):
        case = ctx.store.get(case_id)
        return [event_to_json(e) for e in pivot(case.thread, field, value)]

    @app.get("/cases/{case_id}/paths")
    def case_paths(case_id: str):
        return enumerate_paths(ctx.store.get(case_id).thread)

    @app.get("/cases/{case_id}/narrative")
    def case_narrative(case_id: str):
        case = ctx.store.get(case_id)
        buckets = assign_phases(effective_phase_map(case), case.observation_pairs())
        return [
            {
                "phase": row.phase.value,
                "phase_name": row.phase.display,
                "prose": row.prose,
                "techniques": list(row.techniques),
            }
            for row in narrative(buckets, case.phase_prose)
        ]

    @app.get("/cases/{case_id}/coa")
    def case_coa(case_id: str, format: str = "json"):
        case = ctx.store.get(case_id)
        matrix = build_coa_matrix(
            case.observation_pairs(),
            effective_phase_map(case),
            ctx.defense_map,
            ctx.action_map,
            extra_placements=thread_placements(case.thread),
        )
        if format == "json":
            return coa_to_json(matrix)
        if format in ("markdown", "csv"):
            return {"format": format, "content": render_coa(matrix, format)}
        raise ValidationError(f"unknown format {format!r}", path="format")

    @app.get("/cases/{case_id}/report")
    def case_report(case_id: str):
        case = ctx.store.get(case_id)
        report = build_report(case, ctx.corpus, ctx.defense_map, ctx.phase_map, ctx.action_map)
        return {"id": case.id, "title": case.title, "markdown": report.markdown()}

    return app


def _with_thread(case: Case, thread) -> Case:
    from dataclasses import replace

    return replace(case, thread=thread)


def build_context(data_dir: Path | str | None = None) -> ServiceContext:
    directory = Path(data_dir) if data_dir else default_data_dir()
    return ServiceContext(
        corpus=load_corpus(directory / "attack-extract.json"),
        defense_map=load_defense_map(directory / "defense-map.json"),
        phase_map=PhaseMap.default(),
        action_map=ActionMap.default(),
        store=CaseStore(directory),
    )


def parse_bind(bind: str) -> tuple[str, int]:
    host, _, port = bind.rpartition(":")
    if not host or not port.isdigit():
        raise ValueError(f"bind address must look like host:port, got {bind!r}")
    return host, int(port)


def run_server(data_dir: Path | str | None = None, bind: str | None = None) -> None:
    import uvicorn

    host, port = parse_bind(bind or os.environ.get(BIND_ADDR_ENV, DEFAULT_BIND))
    app = create_app(build_context(data_dir))
    uvicorn.run(app, host=host, port=port, log_level="warning")
