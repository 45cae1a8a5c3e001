"""HTTP face of the workbench.

All bodies are JSON; errors come back as a structured
``{"code", "message", "diagnostics"}`` object. The caller's role
travels in the ``X-Role`` header (user|researcher, default user) and
the composition session token in ``X-Session`` - no further
authentication, by design.

Reads can run concurrently against the immutable registry and the
loaded store; writes are serialized inside the store itself, and no
handler holds a store lock while computing descriptors.
"""

from __future__ import annotations

from fastapi import FastAPI, Header, Query, Request, Response
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import geometry as geo
from .acceptability import RuleSet
from .closure import format_grid, format_records
from .document import SchemaError, from_xml
from .matching import EmptyIndexError
from .registry import (
    GlyphEntry,
    UnknownGlyphError,
    UnknownPathError,
    load_manifest,
    taxonomy_children,
)
from .render import RenderError, render_svg
from .sketch import SketchError, StrokeSketch, sketch_from_strokes
from .store import Store, ValidationRejected
from .workbench import ROLES, PolicyError, Workbench


class SketchBody(BaseModel):
    strokes: list[list[tuple[float, float]]]
    canvas_w: int | None = None
    canvas_h: int | None = None

    def to_sketch(self) -> StrokeSketch:
        return sketch_from_strokes(self.strokes, self.canvas_w, self.canvas_h)


class MatchBody(BaseModel):
    sketch: SketchBody
    k: int = Field(default=5, ge=1)


class SignBody(BaseModel):
    xml: str


class UserGlyphBody(BaseModel):
    sketch: SketchBody
    tags: list[str]


def _error(status: int, code: str, message: str, diagnostics=()) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"code": code, "message": message,
                 "diagnostics": list(diagnostics)})


def _entry_json(entry: GlyphEntry) -> dict:
    from .document import glyph_box_size
    motion = None
    if entry.motion is not None:
        motion = {"shape_class": entry.motion.shape_class,
                  "plane": entry.motion.plane,
                  "repetition": entry.motion.repetition}
    w, h = glyph_box_size(entry.geometry)
    return {
        "ref": entry.ref,
        "name": entry.name,
        "status": entry.status,
        "taxonomy": list(entry.taxonomy),
        "tags": sorted(entry.feature_tags),
        "motion": motion,
        "geometry": geo.format_path(entry.geometry),
        "box": [w, h],
    }


def _user_glyph_json(glyph, with_provenance: bool) -> dict:
    out = {
        "ref": glyph.ref,
        "tags": sorted(glyph.tags),
        "geometry": geo.format_path(glyph.geometry),
    }
    if with_provenance:
        out.update(author=glyph.author, session=glyph.session,
                   created_at=glyph.created_at)
    return out


def create_app(bench: Workbench) -> FastAPI:
    app = FastAPI(title="signbench", docs_url=None, redoc_url=None)

    try:
        from fastapi.middleware.cors import CORSMiddleware
        app.add_middleware(CORSMiddleware, allow_origins=["*"],
                           allow_methods=["*"], allow_headers=["*"])
    except ImportError:  # pragma: no cover - cors is optional plumbing
        pass

    @app.exception_handler(ValidationRejected)
    async def _rejected(_req: Request, exc: ValidationRejected):
        return _error(422, "validation-failed", str(exc),
                      [vars(d) for d in exc.diagnostics])

    @app.exception_handler(PolicyError)
    async def _policy(_req: Request, exc: PolicyError):
        return _error(403, "policy-violation", str(exc))

    @app.exception_handler(SketchError)
    async def _sketch(_req: Request, exc: SketchError):
        return _error(422, "bad-sketch", str(exc))

    @app.exception_handler(SchemaError)
    async def _schema(_req: Request, exc: SchemaError):
        return _error(422, "bad-sign-file", str(exc))

    def _headers(x_role: str | None, x_session: str | None):
        role = x_role or "user"
        if role not in ROLES:
            return None, None
        return role, (x_session or "")

    @app.get("/registry/categories")
    def categories():
        return {"categories": taxonomy_children(bench.registry, ())}

    @app.get("/registry/children")
    def children(path: str = ""):
        prefix = tuple(p for p in path.split("/") if p)
        try:
            result = taxonomy_children(bench.registry, prefix)
        except UnknownPathError as exc:
            return _error(404, "unknown-path", str(exc))
        except ValueError as exc:
            return _error(400, "bad-path", str(exc))
        if result and isinstance(result[0], GlyphEntry):
            return {"kind": "entries",
                    "items": [_entry_json(e) for e in result]}
        return {"kind": "labels", "items": result}

    @app.get("/registry/glyph/{ref}")
    def glyph(ref: str):
        try:
            return _entry_json(bench.registry.entry(ref))
        except UnknownGlyphError as exc:
            return _error(404, "glyph-not-found", str(exc))

    @app.post("/match")
    def match(body: MatchBody):
        try:
            matches = bench.match(body.sketch.to_sketch(), body.k)
        except EmptyIndexError as exc:
            return _error(409, "empty-index", str(exc))
        return {"matches": [{"ref": r, "distance": d} for r, d in matches]}

    @app.post("/signs", status_code=201)
    def save_sign(body: SignBody,
                  x_role: str | None = Header(default=None),
                  x_session: str | None = Header(default=None),
                  x_author: str | None = Header(default=None)):
        role, session = _headers(x_role, x_session)
        if role is None:
            return _error(400, "bad-role", f"role must be one of {ROLES}")
        doc = from_xml(body.xml)
        sign_id = bench.save_sign(doc, x_author or "", role, session)
        return {"id": sign_id}

    @app.get("/signs")
    def list_signs():
        return {"signs": bench.store.sign_ids()}

    @app.get("/signs/{sign_id}.xml")
    def sign_xml(sign_id: str):
        try:
            record = bench.store.get_sign_record(sign_id)
        except Exception:
            return _error(404, "sign-not-found", f"no sign {sign_id}")
        return Response(content=record.xml, media_type="application/xml")

    @app.get("/signs/{sign_id}.svg")
    def sign_svg(sign_id: str):
        try:
            doc = bench.store.get_sign(sign_id)
        except Exception:
            return _error(404, "sign-not-found", f"no sign {sign_id}")
        try:
            svg = render_svg(doc, bench.registry, bench.store)
        except RenderError as exc:
            return _error(409, "unrenderable", str(exc), exc.refs)
        return Response(content=svg, media_type="image/svg+xml")

    @app.get("/signs/{sign_id}")
    def sign(sign_id: str):
        try:
            record = bench.store.get_sign_record(sign_id)
        except Exception:
            return _error(404, "sign-not-found", f"no sign {sign_id}")
        return {"id": record.sign_id, "xml": record.xml,
                "author": record.author, "created_at": record.created_at}

    @app.post("/userglyphs", status_code=201)
    def submit_user_glyph(body: UserGlyphBody,
                          x_role: str | None = Header(default=None),
                          x_session: str | None = Header(default=None),
                          x_author: str | None = Header(default=None)):
        role, session = _headers(x_role, x_session)
        if role is None:
            return _error(400, "bad-role", f"role must be one of {ROLES}")
        if not body.tags:
            return _error(422, "no-tags",
                          "declare at least one function tag")
        sketch = body.sketch.to_sketch()
        glyph, verdict = bench.submit_user_glyph(
            sketch, body.tags, x_author or "", session)
        try:
            suggestions = bench.match(sketch, k=3)
        except EmptyIndexError:
            suggestions = []
        return {"id": glyph.ref,
                "verdict": verdict.to_json(),
                "suggestions": [{"ref": r, "distance": d}
                                for r, d in suggestions]}

    @app.get("/userglyphs")
    def list_user_glyphs(x_role: str | None = Header(default=None),
                         x_session: str | None = Header(default=None)):
        role, session = _headers(x_role, x_session)
        if role is None:
            return _error(400, "bad-role", f"role must be one of {ROLES}")
        glyphs = bench.list_user_glyphs(role, session)
        return {"glyphs": [_user_glyph_json(g, role == "researcher")
                           for g in glyphs]}

    @app.get("/userglyphs/{ref}")
    def palette_user_glyph(ref: str,
                           x_role: str | None = Header(default=None),
                           x_session: str | None = Header(default=None)):
        role, session = _headers(x_role, x_session)
        if role is None:
            return _error(400, "bad-role", f"role must be one of {ROLES}")
        try:
            glyph = bench.palette_user_glyph(ref, role, session)
        except KeyError:
            return _error(404, "glyph-not-found", f"no user glyph {ref}")
        return _user_glyph_json(glyph, role == "researcher")

    @app.get("/reports/closure")
    def closure_endpoint():
        report = bench.closure()
        return {
            "existing": len(report.existing),
            "added": len(report.added),
            "total_after": report.total_after,
            "records": [
                {"shape_class": e.motion.shape_class,
                 "plane": e.motion.plane,
                 "repetition": e.motion.repetition,
                 "new_ref": e.ref,
                 "template_ref": e.provenance["template"]}
                for e in report.entries
            ],
            "warnings": list(report.warnings),
            "grid": format_grid(report),
            "records_text": format_records(report),
        }

    @app.get("/corpus/query")
    def corpus(function_class: str = Query(default="", alias="class")):
        if not function_class:
            return _error(400, "bad-query", "pass ?class=<function-class>")
        return {"signs": bench.corpus_query(function_class)}

    return app


def build_workbench(manifest_path, store_path,
                    rules: RuleSet | None = None) -> Workbench:
    registry = load_manifest(manifest_path)
    store = Store(store_path, registry)
    return Workbench(registry, store, rules)


def serve(manifest_path, store_path, host: str = "127.0.0.1",
          port: int = 8765) -> None:  # pragma: no cover - thin wrapper
    import uvicorn

    app = create_app(build_workbench(manifest_path, store_path))
    uvicorn.run(app, host=host, port=port, log_level="info")
