# main.py
from __future__ import annotations

import logging
import time
from typing import Any, Optional

from dotenv import load_dotenv
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from ksync import __version__
from ksync.cli import analyze_msc_report, decide_verdict, reach_report, system_from_doc
from ksync.config import load_verifier_config, setup_logging
from ksync.errors import ExplosionLimit, InputError
from ksync.schemas import Comm, MscDoc, SystemDoc

logger = logging.getLogger("main")

load_dotenv()


class AnalyzeMscRequest(BaseModel):
    msc: MscDoc
    k: int = Field(ge=1)
    comm: Comm = "mailbox"


class DecideRequest(BaseModel):
    system: SystemDoc
    k: int = Field(ge=1)
    comm: Optional[Comm] = None


class ReachRequest(BaseModel):
    system: SystemDoc
    k: int = Field(ge=1)
    goal: dict[str, str]
    comm: Optional[Comm] = None


def _envelope(command: str, k: int, comm: str, result: dict[str, Any], started: float) -> dict[str, Any]:
    return {
        "command": command,
        "k": k,
        "comm": comm,
        "result": result,
        "elapsedMs": round((time.perf_counter() - started) * 1000, 3),
    }


# -----------------------------------------------------------------------------
# Global app (для uvicorn main:app)
# -----------------------------------------------------------------------------

setup_logging()
CONFIG = load_verifier_config()
logger.info(
    "Config: max_states=%s, max_exchanges=%s, oracle_max_events=%s, output_dir=%s",
    CONFIG.max_states,
    CONFIG.max_exchanges,
    CONFIG.oracle_max_events,
    CONFIG.output_dir,
)

app = FastAPI(title="ksync", version=__version__)


@app.exception_handler(InputError)
async def on_input_error(request: Request, exc: InputError) -> JSONResponse:
    logger.warning("%s: rejected input: %s", request.url.path, exc)
    return JSONResponse(status_code=422, content={"detail": str(exc)})


@app.exception_handler(ExplosionLimit)
async def on_explosion(request: Request, exc: ExplosionLimit) -> JSONResponse:
    logger.warning("%s: resource limit: %s", request.url.path, exc)
    return JSONResponse(status_code=413, content={"detail": str(exc), "stats": exc.stats})


@app.exception_handler(Exception)
async def on_unexpected(request: Request, exc: Exception) -> JSONResponse:
    logger.exception("%s: verifier crashed: %s", request.url.path, exc)
    return JSONResponse(status_code=500, content={"detail": "internal error"})


@app.api_route("/", methods=["GET", "HEAD"])
async def root() -> dict:
    return {"status": "ok", "detail": "k-synchronizability verifier is running", "version": __version__}


@app.get("/health")
async def health() -> dict:
    return {"ok": True}


@app.post("/analyze-msc")
def analyze_msc(body: AnalyzeMscRequest) -> dict:
    started = time.perf_counter()
    result = analyze_msc_report(
        body.msc.to_msc(), body.k, body.comm, oracle_max_events=CONFIG.oracle_max_events
    )
    return _envelope("analyze-msc", body.k, body.comm, result, started)


@app.post("/decide")
def decide(body: DecideRequest) -> dict:
    started = time.perf_counter()
    system = system_from_doc(body.system, body.comm)
    verdict = decide_verdict(
        system, body.k, max_states=CONFIG.max_states, max_exchanges=CONFIG.max_exchanges
    )
    result = verdict.to_dict()
    if not verdict.synchronizable:
        result["deviatedRun"] = verdict.run_document()
    return _envelope("decide", body.k, system.comm, result, started)


@app.post("/reach")
def reach(body: ReachRequest) -> dict:
    started = time.perf_counter()
    system = system_from_doc(body.system, body.comm)
    result = reach_report(
        system, body.k, body.goal, max_states=CONFIG.max_states, max_exchanges=CONFIG.max_exchanges
    )
    return _envelope("reach", body.k, system.comm, result, started)


__all__ = ["app"]
