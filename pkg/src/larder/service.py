"""HTTP API over a loaded artifact bundle.

Endpoints: POST /api/recommend, POST /api/classify, GET /api/ingredients,
GET /api/health. Requests carry raw ingredient strings; the service cleans
and resolves them, reports the unresolvable ones, and answers from the
immutable bundle, so identical requests get byte-identical responses. The
recommend response embeds the ingredient network so the UI's
exclude-and-requery loop costs one round trip.
"""

from __future__ import annotations

from typing import Any

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import classify, ingnet, recommend as recommend_mod
from .pipeline import ServingBundle, load_artifacts
from .recommend import RecommendQuery, recommendation_to_dict

_STATUS = {"bad_request": 400, "unknown_ingredient": 422, "not_ready": 503, "internal": 500}


class ApiError(Exception):
    def __init__(self, code: str, message: str, details: dict | None = None):
        self.code = code
        self.message = message
        self.details = details
        super().__init__(message)

    def body(self) -> dict:
        doc: dict[str, Any] = {"code": self.code, "message": self.message}
        if self.details is not None:
            doc["details"] = self.details
        return doc


class RecommendRequest(BaseModel):
    ingredients: list[str]
    exclude: list[str] = []
    max_results: int | None = None


class ClassifyRequest(BaseModel):
    ingredients: list[str]


def _normalize_prefix(prefix: str) -> str:
    letters = "".join(ch if ch.isalpha() else " " for ch in prefix.lower())
    return " ".join(letters.split())


def create_app(
    artifacts_dir=None,
    bundle: ServingBundle | None = None,
    cors_origins: tuple[str, ...] = (),
) -> FastAPI:
    """Build the API app; pass either a loaded bundle or an artifacts dir.

    With neither, the app starts in the "loading" state and every data
    endpoint answers 503 until a bundle is attached to ``app.state``.
    """
    if bundle is None and artifacts_dir is not None:
        bundle = load_artifacts(artifacts_dir)

    app = FastAPI(title="larder", docs_url=None, redoc_url=None)
    app.state.bundle = bundle
    if cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(cors_origins),
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(ApiError)
    async def _api_error(_req: Request, exc: ApiError):
        return JSONResponse(exc.body(), status_code=_STATUS[exc.code])

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_req: Request, exc: RequestValidationError):
        err = ApiError("bad_request", "invalid request body", {"errors": [
            {"loc": [str(p) for p in e["loc"]], "msg": e["msg"]} for e in exc.errors()
        ]})
        return JSONResponse(err.body(), status_code=400)

    @app.exception_handler(Exception)
    async def _internal_error(_req: Request, exc: Exception):
        return JSONResponse(
            ApiError("internal", f"{type(exc).__name__}: {exc}").body(), status_code=500
        )

    def ready() -> ServingBundle:
        loaded = app.state.bundle
        if loaded is None:
            raise ApiError("not_ready", "artifacts are still loading")
        return loaded

    @app.post("/api/recommend")
    async def api_recommend(req: RecommendRequest):
        b = ready()
        if not req.ingredients:
            raise ApiError("bad_request", "ingredients must be non-empty")
        include, unresolved_inc = b.resolve_many(req.ingredients)
        exclude, unresolved_exc = b.resolve_many(req.exclude)
        unresolved = unresolved_inc + unresolved_exc
        if not include:
            raise ApiError(
                "unknown_ingredient",
                "none of the ingredients could be resolved",
                {"unresolved": unresolved_inc},
            )
        overlap = set(include) & set(exclude)
        if overlap:
            names = sorted(b.lexicon.canon[i] for i in overlap)
            raise ApiError(
                "bad_request",
                f"ingredients cannot be both included and excluded: {', '.join(names)}",
            )
        try:
            query = RecommendQuery(
                frozenset(include),
                frozenset(exclude),
                req.max_results if req.max_results is not None else recommend_mod.DEFAULT_MAX_RESULTS,
            )
        except ValueError as exc:
            raise ApiError("bad_request", str(exc))
        recs = recommend_mod.recommend(b.corpus, b.rules, query)
        graph = ingnet.build_graph(recs, base=query.include, names=b.lexicon.canon)
        return {
            "recommendations": [recommendation_to_dict(r, b.lexicon.canon) for r in recs],
            "network": ingnet.export_graph(graph),
            "unresolved": unresolved,
        }

    @app.post("/api/classify")
    async def api_classify(req: ClassifyRequest):
        b = ready()
        if not req.ingredients:
            raise ApiError("bad_request", "ingredients must be non-empty")
        ids, unresolved = b.resolve_many(req.ingredients)
        if not ids:
            raise ApiError(
                "bad_request",
                "no ingredient could be resolved against the lexicon",
                {"unresolved": unresolved},
            )
        per_taxonomy = {}
        for tax in sorted(b.models):
            result = classify.predict_multilabel(b.models[tax], frozenset(ids))
            per_taxonomy[tax] = {
                "probabilities": result.per_class_probability,
                "assigned": list(result.assigned),
            }
        return {"per_taxonomy": per_taxonomy, "unresolved": unresolved}

    @app.get("/api/ingredients")
    async def api_ingredients(prefix: str = ""):
        b = ready()
        needle = _normalize_prefix(prefix)
        names = sorted(b.lexicon.canon.values())
        matches = [n for n in names if n.startswith(needle)][:25]
        reverse = {name: canon_id for canon_id, name in b.lexicon.canon.items()}
        return {"matches": [{"id": reverse[n], "name": n} for n in matches]}

    @app.get("/api/health")
    async def api_health():
        loaded = app.state.bundle
        if loaded is None:
            return {"status": "loading", "artifact_manifest_hash": None, "counts": None}
        counts = loaded.manifest["counts"]
        return {
            "status": "ready",
            "artifact_manifest_hash": loaded.manifest_hash,
            "counts": {
                "recipes": counts["recipes"],
                "rules": counts["rules"],
                "ingredients": counts["ingredients"],
            },
        }

    return app
