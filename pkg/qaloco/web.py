from fastapi import FastAPI, Request
from fastapi.responses import HTMLResponse, JSONResponse
from pathlib import Path
from pydantic import BaseModel
import json
import threading
import traceback
from typing import List, Optional

from .analysis import capacity, format_rate_table, generate_rate_table, normalized_capacity, rate
from .codec import QaLocoCodec
from .config import get_config, save_env
from .errors import QaLocoError
from .levels import CodeParams
from .oracle import cross_check
from .stream import decode_stream, encode_stream, run_bound

app = FastAPI()

_check_lock = threading.Lock()
_check_thread: Optional[threading.Thread] = None
_check_status = {
    "running": False,
    "params": None,
    "last_result": None,
    "last_error": None,
}
_logs: list[str] = []
_max_logs = 200


class EncodeRequest(BaseModel):
    q: int
    m: int
    x: int
    messages: List[str]


class DecodeRequest(BaseModel):
    q: int
    m: int
    x: int
    stream: List[int]
    strict: bool = False


class CheckRequest(BaseModel):
    q: int
    m: int
    x: int


def _codec(q: int, m: int, x: int) -> QaLocoCodec:
    return QaLocoCodec(q, m, x, m_max=get_config()['QALOCO_M_MAX'])


@app.exception_handler(QaLocoError)
async def qaloco_error_handler(request: Request, exc: QaLocoError):
    return JSONResponse(status_code=400, content={"error": type(exc).__name__, "message": str(exc)})


@app.get('/', response_class=HTMLResponse)
def index():
    return HTMLResponse('<h1>QA-LOCO codec</h1><p>See /docs for the API.</p>')


@app.get('/config')
def read_config():
    """Return current configuration."""
    return get_config()


@app.post('/config')
async def update_config(request: Request):
    """Update configuration values (unknown keys are ignored)."""
    data = await request.json()
    save_env(data)
    return get_config()


@app.get('/api/version')
def get_version():
    """Package name and version from version.json at the repository root."""
    version_file = Path(__file__).resolve().parent.parent / 'version.json'
    try:
        return json.loads(version_file.read_text())
    except FileNotFoundError:
        return {"version": "unknown"}
    except (OSError, ValueError) as e:
        return {"version": "unknown", "error": str(e)}


@app.get('/params')
def read_params(q: int, m: int, x: int):
    codec = _codec(q, m, x)
    report = rate(codec.params, codec.table)
    return {
        "q": q, "m": m, "x": x,
        "cardinality": codec.cardinality,
        "clocked_cardinality": codec.table.clocked_cardinality(m),
        "message_length": codec.message_length,
        "rate": report.rate,
        "normalized_rate": report.normalized_rate,
        "max_run": run_bound(m, x),
    }


@app.post('/encode')
def encode(req: EncodeRequest):
    codec = _codec(req.q, req.m, req.x)
    stream = encode_stream(req.messages, codec.table, req.m)
    return {"stream": list(stream.levels), "codewords": stream.codeword_count}


@app.post('/decode')
def decode(req: DecodeRequest):
    codec = _codec(req.q, req.m, req.x)
    return {"messages": decode_stream(req.stream, codec.table, req.m, strict=req.strict)}


@app.get('/capacity')
def read_capacity(q: int, x: int):
    return {"q": q, "x": x, "capacity": capacity(q, x), "normalized_capacity": normalized_capacity(q, x)}


@app.get('/tables')
def read_tables(x: int = 1):
    grids = get_config()['rate_grids']
    if x not in grids:
        return JSONResponse(status_code=404, content={"error": "NotFound", "message": f"no rate grid for x={x}"})
    grid = grids[x]
    rows = generate_rate_table(sorted(grid), x, grid)
    return {"x": x, "rows": [r.rounded() for r in rows], "text": format_rate_table(rows)}


@app.post('/check/run')
def trigger_check(req: CheckRequest):
    """Run the brute-force cross-check in a background thread if none is running."""
    global _check_thread
    params = CodeParams(req.q, req.m, req.x)
    limit = get_config()['QALOCO_ENUM_LIMIT']
    with _check_lock:
        if _check_status["running"]:
            return {"status": "already_running"}

        _check_status["running"] = True

        def _worker():
            _check_status["params"] = {"q": params.q, "m": params.m, "x": params.x}
            _check_status["last_error"] = None

            def _log_cb(msg: str):
                _logs.append(msg)
                if len(_logs) > _max_logs:
                    del _logs[: len(_logs) - _max_logs]

            try:
                failures = cross_check(params, limit=limit, log_cb=_log_cb)
                _check_status["last_result"] = {"ok": not failures, "failures": failures}
            except Exception as exc:  # noqa: BLE001
                _check_status["last_error"] = {
                    "type": type(exc).__name__,
                    "message": str(exc),
                    "traceback": traceback.format_exc(),
                }
            finally:
                _check_status["running"] = False

        _check_thread = threading.Thread(target=_worker, daemon=True)
        _check_thread.start()
        return {"status": "started"}


@app.get('/check/status')
def check_status():
    """Return the state of the background cross-check and its log."""
    return JSONResponse({**_check_status, "logs": list(_logs)})
