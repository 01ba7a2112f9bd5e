"""HTTP service over the trained artifacts.

All endpoints live under /v1.  The service loads the corpus bundle, the
model, and the theme map once at startup, verifies their content hashes
chain together, and serves them immutably; sessions are the only mutable
state.  GET /v1/themes returns the theme-map artifact file byte for byte,
so clients can cache and hash-check it.

Paper titles pass through one choke point (`_paper_record`): a title
appears in a payload only when the request carries a session whose titles
have been revealed.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from fastapi import APIRouter, FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import __version__
from .corpus import load_bundle
from .errors import (ConfigError, DataError, NotFoundError, ReadOnlyError,
                     ThemescopeError)
from .lda import load_model
from .report import excerpt_body, paper_record, session_report
from .sessions import SessionStore, StrategyEntry, session_payload
from .thememap import load_theme_map, map_payload
from .wheels import (build_multi_theme_wheel, build_single_theme_wheel,
                     rank_papers_for_theme, wheel_payload)

MAX_PAPERS = 10_000


@dataclass(frozen=True)
class ApiConfig:
    bundle_path: str
    model_path: str
    map_path: str
    store_path: str
    host: str = "127.0.0.1"
    port: int = 8765
    cors_origins: tuple[str, ...] = ()
    max_selection: int = 6
    theta_min: float = 0.05
    tau: float = 0.05
    ui_dir: str | None = None


def api_config(cfg: dict) -> ApiConfig:
    """Build an ApiConfig from a loaded pipeline config dict."""
    return ApiConfig(
        bundle_path=cfg["bundle"],
        model_path=cfg["model"],
        map_path=cfg["map"],
        store_path=cfg["sessions"],
        host=cfg["host"],
        port=cfg["port"],
        cors_origins=tuple(cfg["cors"]),
        max_selection=cfg["max_selection"],
        theta_min=cfg["theta_min"],
        tau=cfg["tau"],
        ui_dir=cfg["ui_dir"],
    )


class SelectionBody(BaseModel):
    doc_ids: list[str]


class StrategyEntryBody(BaseModel):
    doc_id: str
    rank: int
    note: str = ""
    segments: list[list[int]] = []


class StrategyBody(BaseModel):
    entries: list[StrategyEntryBody]


def _error_response(exc: ThemescopeError) -> JSONResponse:
    if isinstance(exc, NotFoundError):
        status = 404
    elif isinstance(exc, ReadOnlyError):
        status = 409
    else:
        status = 400
    return JSONResponse(
        status_code=status,
        content={"error": {"code": exc.code, "message": str(exc)}})


def create_app(config: ApiConfig) -> FastAPI:
    bundle = load_bundle(config.bundle_path)
    model = load_model(config.model_path)
    tmap = load_theme_map(config.map_path)
    if not bundle.documents:
        raise ConfigError("corpus bundle contains no documents")
    if len(bundle.documents) > MAX_PAPERS:
        raise ConfigError(
            f"corpus of {len(bundle.documents)} papers exceeds the "
            f"supported maximum of {MAX_PAPERS}")
    if model.vocab_hash != bundle.vocab_hash:
        raise ConfigError(
            "model was trained on a different vocabulary than the bundle")
    if tmap.model_hash != model.content_hash:
        raise ConfigError("theme map was built from a different model")

    map_bytes = Path(config.map_path).read_bytes()
    map_doc = map_payload(tmap)
    theme_records = {t["theme_id"]: t for t in map_doc["themes"]}
    store = SessionStore(
        config.store_path,
        config={
            "theta_min": config.theta_min,
            "tau": config.tau,
            "chunk_count": model.chunk_count,
            "k": model.k,
            "model_hash": model.content_hash,
        },
        known_docs=model.doc_ids,
        max_selection=config.max_selection,
    )
    # One cached excerpt map per session, keyed by its selection.
    excerpt_cache: dict[str, tuple[tuple[str, ...], dict]] = {}

    def _titles_visible(session_id: str | None) -> bool:
        if session_id is None:
            return False
        return store.get(session_id).titles_revealed

    def _excerpt_response(session) -> dict:
        cached = excerpt_cache.get(session.session_id)
        if cached is not None and cached[0] == session.selection:
            return cached[1]
        response = excerpt_body(model, session.selection,
                                theta_min=config.theta_min, tau=config.tau,
                                max_selection=config.max_selection)
        excerpt_cache[session.session_id] = (session.selection, response)
        return response

    router = APIRouter(prefix="/v1")

    @router.get("/about")
    def about() -> dict:
        return {
            "version": __version__,
            "k": model.k,
            "n_papers": len(model.doc_ids),
            "chunk_count": model.chunk_count,
            "n_clusters": tmap.tree.n_clusters,
            "vocab_hash": model.vocab_hash,
            "model_hash": model.content_hash,
            "map_hash": tmap.content_hash,
            "max_selection": config.max_selection,
            "theta_min": config.theta_min,
            "tau": config.tau,
        }

    @router.get("/themes")
    def themes() -> Response:
        return Response(content=map_bytes, media_type="application/json")

    @router.get("/themes/{theme_id}")
    def theme_detail(theme_id: int, session: str | None = None) -> dict:
        if theme_id not in theme_records:
            raise NotFoundError(f"no theme {theme_id}")
        visible = _titles_visible(session)
        papers = []
        for rel in rank_papers_for_theme(model, theme_id):
            record = paper_record(bundle, rel.doc_id, visible)
            record["relevance_percent"] = rel.relevance_percent
            record["wheel"] = wheel_payload(
                build_single_theme_wheel(model, rel.doc_id, theme_id, tmap))
            papers.append(record)
        return {"theme": theme_records[theme_id], "papers": papers}

    @router.get("/papers/{doc_id}")
    def paper(doc_id: str, session: str | None = None) -> dict:
        model.doc_index(doc_id)
        record = paper_record(bundle, doc_id, _titles_visible(session))
        record["chunk_count"] = model.chunk_count
        return record

    @router.get("/papers/{doc_id}/wheel")
    def paper_wheel(doc_id: str, variant: str = "multi",
                    theme: int | None = None) -> dict:
        model.doc_index(doc_id)
        if variant == "multi":
            return wheel_payload(build_multi_theme_wheel(model, doc_id, tmap))
        if variant == "single":
            if theme is None:
                raise ConfigError(
                    "single-theme wheels need a ?theme= parameter")
            return wheel_payload(
                build_single_theme_wheel(model, doc_id, theme, tmap))
        raise ConfigError(f"unknown wheel variant {variant!r}")

    @router.post("/sessions", status_code=201)
    def create_session() -> dict:
        return session_payload(store.create_session())

    @router.get("/sessions/{session_id}")
    def get_session(session_id: str) -> dict:
        return session_payload(store.get(session_id))

    @router.put("/sessions/{session_id}/selection")
    def put_selection(session_id: str, body: SelectionBody) -> dict:
        return session_payload(
            store.update_selection(session_id, body.doc_ids))

    @router.put("/sessions/{session_id}/strategy")
    def put_strategy(session_id: str, body: StrategyBody) -> dict:
        entries = []
        for e in body.entries:
            for seg in e.segments:
                if len(seg) != 2:
                    raise DataError(
                        f"chunk ranges are [start, end] pairs, got {seg}")
            entries.append(StrategyEntry(
                doc_id=e.doc_id, rank=e.rank, note=e.note,
                segments=tuple((seg[0], seg[1]) for seg in e.segments)))
        return session_payload(store.save_strategy(session_id, entries))

    @router.post("/sessions/{session_id}/reveal")
    def reveal(session_id: str) -> dict:
        return session_payload(store.reveal_titles(session_id))

    @router.get("/sessions/{session_id}/excerpt-map")
    def excerpt_map(session_id: str) -> dict:
        session = store.get(session_id)
        if not session.selection:
            raise DataError("session has no selected papers")
        return _excerpt_response(session)

    @router.get("/sessions/{session_id}/export")
    def export(session_id: str) -> dict:
        session = store.get(session_id)
        body = _excerpt_response(session) if session.selection else None
        return session_report(model, bundle, session,
                              theta_min=config.theta_min, tau=config.tau,
                              max_selection=config.max_selection, body=body)

    app = FastAPI(title="themescope", version=__version__)
    app.include_router(router)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(config.cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(ThemescopeError)
    async def themescope_error(request: Request, exc: ThemescopeError):
        return _error_response(exc)

    @app.exception_handler(RequestValidationError)
    async def validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=422,
            content={"error": {"code": "invalid_request",
                               "message": str(exc.errors())}})

    if config.ui_dir:
        app.mount("/", StaticFiles(directory=config.ui_dir, html=True))

    return app


def run_server(config: ApiConfig) -> None:
    import uvicorn

    uvicorn.run(create_app(config), host=config.host, port=config.port)
