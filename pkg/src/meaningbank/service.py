"""HTTP service over a bank directory.

Read endpoints expose documents, effective layer values (with statuses and
content-addressed ETags) and open conflicts; mutations append corrections
to the journal or rerun the pipeline.  All payloads are JSON.  Mutations on
a document serialize through the bank's per-document lock; reads never
block other reads.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Header, HTTPException, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import FileResponse, JSONResponse
from pydantic import BaseModel

from .bank import (
    BLOB_LAYERS, Bank, ConflictStateError, DocumentId, LAYERS,
    LayerPositionError, UnknownLayerError,
)
from .chartparser import NoParseError
from .composer import TemplateError
from .pipeline import AppConfig, ConfigError, projection_record, reannotate_doc
from .terms import ComposeError, KindError


class BowBody(BaseModel):
    part: str
    doc: int
    lang: str
    layer: str
    position: int
    value: object = None
    annotator: str = "anonymous"


class ResolveBody(BaseModel):
    kept: object = None
    annotator: str = "anonymous"


def create_app(bank: Bank, config: Optional[AppConfig] = None,
               frontend_dir: Optional[Path] = None) -> FastAPI:
    config = config or AppConfig()
    app = FastAPI(title="meaningbank", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
        allow_headers=["*"], expose_headers=["ETag"])

    def need_doc(part: str, number: int) -> DocumentId:
        try:
            doc = DocumentId(part, number)
        except ValueError as exc:
            raise HTTPException(404, str(exc)) from exc
        if not bank.exists(doc):
            raise HTTPException(404, f"unknown document {part}/{number}")
        return doc

    @app.get("/documents")
    def list_documents(part: Optional[str] = None):
        docs = []
        for doc in bank.list_documents(part):
            docs.append({"part": doc.part, "doc": doc.number,
                         "languages": bank.languages(doc),
                         "gold_designated": doc.gold_designated})
        return {"documents": docs}

    @app.get("/documents/{part}/{number}")
    def document_info(part: str, number: int):
        doc = need_doc(part, number)
        layers = {}
        projections = {}
        for lang in bank.languages(doc):
            layers[lang] = {}
            for layer in LAYERS:
                layers[lang][layer] = {
                    "status": bank.layer_status(doc, lang, layer),
                    "exists": bank.read_automatic(doc, lang, layer) is not None
                    or bool(bank.bows(doc, lang, layer)),
                }
            record = projection_record(bank, doc, lang)
            if record is not None:
                projections[lang] = record
        return {"part": doc.part, "doc": doc.number,
                "gold_designated": doc.gold_designated,
                "languages": bank.languages(doc),
                "raw": {lang: bank.read_raw(doc, lang)
                        for lang in bank.languages(doc)},
                "layers": layers, "projections": projections}

    @app.get("/documents/{part}/{number}/{lang}/layers/{layer}")
    def layer_values(part: str, number: int, lang: str, layer: str):
        doc = need_doc(part, number)
        if layer == "deriv":
            path = bank.doc_dir(doc) / f"{lang}.deriv"
            if not path.exists():
                raise HTTPException(404, "derivation not computed")
            text = path.read_text(encoding="utf-8")
            return Response(text, media_type="text/plain")
        if layer == "tokens":
            path = bank.doc_dir(doc) / f"{lang}.tok"
            if not path.exists():
                raise HTTPException(404, "tokens not computed")
            text = path.read_text(encoding="utf-8")
            return Response(text, media_type="text/plain")
        if layer not in LAYERS:
            raise HTTPException(404, f"unknown layer {layer}")
        value = bank.effective(doc, lang, layer)
        if value is None:
            raise HTTPException(404, f"layer {layer} not computed for {lang}")
        payload = {
            "lang": lang, "layer": layer,
            "status": bank.layer_status(doc, lang, layer),
            "bows": len(bank.bows(doc, lang, layer)),
        }
        if layer in BLOB_LAYERS:
            payload["text"] = value
        elif layer == "tok":
            payload["labels"] = "".join(value)
        else:
            payload["values"] = value
        etag = bank.etag(doc, lang, layer)
        payload["etag"] = etag
        return JSONResponse(payload, headers={"ETag": etag})

    @app.post("/bows")
    def post_bow(body: BowBody, if_match: Optional[str] = Header(default=None)):
        doc = need_doc(body.part, body.doc)
        if body.layer not in LAYERS:
            raise HTTPException(404, f"unknown layer {body.layer}")
        if if_match is not None:
            current = bank.etag(doc, body.lang, body.layer)
            if current != if_match.strip('"'):
                raise HTTPException(412, "layer changed since it was read")
        try:
            record = bank.add_bow(doc, body.lang, body.layer, body.position,
                                  body.value, body.annotator)
        except LayerPositionError as exc:
            raise HTTPException(422, str(exc)) from exc
        except UnknownLayerError as exc:
            raise HTTPException(404, f"unknown layer {exc}") from exc
        return {"status": bank.layer_status(doc, body.lang, body.layer),
                "etag": bank.etag(doc, body.lang, body.layer),
                "record": record}

    @app.post("/documents/{part}/{number}/{lang}/reannotate")
    def reannotate(part: str, number: int, lang: str):
        doc = need_doc(part, number)
        try:
            models = config.models(lang)
            conflicts = reannotate_doc(bank, doc, lang, models)
        except (ConfigError, NoParseError, TemplateError, ComposeError,
                KindError) as exc:
            raise HTTPException(422, f"pipeline failure: {exc}") from exc
        return {"conflicts": [
            {"id": c.id, "lang": c.lang, "layer": c.layer,
             "position": c.position, "gold": c.gold_value, "new": c.new_value,
             "state": c.state}
            for c in conflicts
        ]}

    @app.get("/conflicts")
    def list_conflicts(state: Optional[str] = None):
        state_name = None
        if state is not None:
            state_name = state.capitalize()
            if state_name not in ("Open", "Resolved"):
                raise HTTPException(422, f"unknown state {state}")
        out = []
        for c in bank.conflicts(state=state_name):
            out.append({"id": c.id, "part": c.doc.part, "doc": c.doc.number,
                        "lang": c.lang, "layer": c.layer, "position": c.position,
                        "gold": c.gold_value, "new": c.new_value,
                        "state": c.state, "kept": c.kept})
        return {"conflicts": out}

    @app.post("/conflicts/{conflict_id}/resolve")
    def resolve(conflict_id: str, body: ResolveBody):
        parts = conflict_id.split("-")
        if len(parts) < 6:
            raise HTTPException(404, f"unknown conflict {conflict_id}")
        try:
            doc = need_doc(parts[0], int(parts[1]))
        except ValueError as exc:
            raise HTTPException(404, str(exc)) from exc
        try:
            conflict = bank.resolve_conflict(doc, conflict_id, body.kept,
                                             body.annotator)
        except KeyError as exc:
            raise HTTPException(404, f"unknown conflict {conflict_id}") from exc
        except ConflictStateError as exc:
            raise HTTPException(409, str(exc)) from exc
        return {"id": conflict.id, "state": conflict.state, "kept": conflict.kept,
                "status": bank.layer_status(doc, conflict.lang, conflict.layer)}

    if frontend_dir is None:
        candidate = Path(__file__).resolve().parents[2] / "frontend" / "dist"
        frontend_dir = candidate if candidate.is_dir() else None

    if frontend_dir is not None:
        @app.get("/")
        def index():
            return FileResponse(frontend_dir / "index.html")

        @app.get("/ui/{path:path}")
        def ui_assets(path: str):
            target = (frontend_dir / path).resolve()
            if not str(target).startswith(str(frontend_dir.resolve())) \
                    or not target.is_file():
                raise HTTPException(404, "not found")
            return FileResponse(target)

    return app
