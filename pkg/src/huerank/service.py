"""JSON-over-HTTP facade for the index and query engine, plus thumbnails.

The app holds the index as an immutable snapshot taken at startup;
re-indexing means restarting. The thumbnail cache is the only mutable
state and uses write-to-temp-then-rename, so concurrent cache misses are
safe.
"""
from __future__ import annotations

import hashlib
import logging
import os
import tempfile
from dataclasses import asdict
from pathlib import Path
from typing import Literal, Optional
from urllib.parse import quote

from fastapi import FastAPI, HTTPException
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import FileResponse, JSONResponse
from fastapi.staticfiles import StaticFiles
from PIL import Image
from pydantic import BaseModel, Field
from starlette.exceptions import HTTPException as StarletteHTTPException

from .errors import InvalidQuerySpecError
from .index import IndexStore
from .query import QuerySpec, execute

log = logging.getLogger(__name__)

THUMBNAIL_MAX_SIDE = 256


class ApiQueryRequest(BaseModel):
    query_name: str
    method: str
    channels: str
    df: float
    scope: Literal["group", "corpus"] = "group"
    top: int = Field(default=8, ge=1)


def _thumbnail_url(name: str) -> str:
    return f"/api/images/{quote(name)}/thumbnail"


def _summary(fv) -> dict:
    return {
        "name": fv.name,
        "width": fv.width,
        "height": fv.height,
        "threshold": fv.threshold,
        "thumbnail_url": _thumbnail_url(fv.name),
    }


def create_app(
    store: IndexStore,
    images_dir,
    webroot=None,
    thumb_cache=None,
) -> FastAPI:
    """Build the service around an immutable index snapshot."""
    images_dir = Path(images_dir)
    thumb_dir = Path(thumb_cache) if thumb_cache else Path(
        tempfile.gettempdir()) / "huerank-thumbs"

    app = FastAPI(title="hue-rank", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(StarletteHTTPException)
    async def http_error(request, exc):
        return JSONResponse({"error": str(exc.detail)}, status_code=exc.status_code)

    @app.exception_handler(RequestValidationError)
    async def validation_error(request, exc):
        return JSONResponse({"error": str(exc.errors())}, status_code=400)

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "images": len(store)}

    @app.get("/api/images")
    def list_images(group: Optional[int] = None):
        if group is None:
            return [_summary(fv) for fv in store]
        found = store.group(group)
        if found is None:
            return []
        return [_summary(store.get(name)) for name in found.members]

    @app.get("/api/images/{name:path}/features")
    def image_features(name: str):
        if name not in store:
            raise HTTPException(404, f"unknown image: {name}")
        return asdict(store.get(name))

    @app.get("/api/images/{name:path}/thumbnail")
    def image_thumbnail(name: str):
        if name not in store:
            raise HTTPException(404, f"unknown image: {name}")
        source = images_dir / name
        try:
            mtime = source.stat().st_mtime_ns
        except OSError:
            raise HTTPException(502, f"source image unavailable: {name}")
        digest = hashlib.sha1(name.encode("utf-8")).hexdigest()[:16]
        cached = thumb_dir / f"{digest}-{mtime}.jpg"
        if not cached.is_file():
            thumb_dir.mkdir(parents=True, exist_ok=True)
            try:
                with Image.open(source) as im:
                    thumb = im.convert("RGB")
                    thumb.thumbnail((THUMBNAIL_MAX_SIDE, THUMBNAIL_MAX_SIDE))
                    fd, tmp_path = tempfile.mkstemp(
                        suffix=".jpg", dir=thumb_dir)
                    try:
                        with os.fdopen(fd, "wb") as fh:
                            thumb.save(fh, format="JPEG", quality=85)
                        os.replace(tmp_path, cached)
                    except BaseException:
                        os.unlink(tmp_path)
                        raise
            except OSError:
                raise HTTPException(502, f"source image unavailable: {name}")
        return FileResponse(cached, media_type="image/jpeg")

    @app.post("/api/query")
    def api_query(body: ApiQueryRequest):
        try:
            spec = QuerySpec(body.method, body.channels, body.df, body.scope)
        except InvalidQuerySpecError as exc:
            raise HTTPException(400, str(exc))
        if body.query_name not in store:
            raise HTTPException(404, f"unknown image: {body.query_name}")
        ranked = execute(store, body.query_name, spec)
        return {
            "query": asdict(store.get(body.query_name)),
            "results": [
                {
                    "name": item.name,
                    "score": item.score,
                    "rank": item.rank,
                    "thumbnail_url": _thumbnail_url(item.name),
                }
                for item in ranked.results[: body.top]
            ],
            "excluded_count": ranked.excluded,
        }

    if webroot is not None:
        app.mount("/", StaticFiles(directory=Path(webroot), html=True),
                  name="webroot")

    return app
