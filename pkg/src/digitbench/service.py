"""Local HTTP service exposing the trainer and tester as JSON endpoints
under /api/v1/, so a browser UI can drive a live draw/train/recognize
loop.

Sessions are in-memory and isolated; pattern and model files are the
durable artifacts. Each session allows one mutation at a time: training
runs on a background thread and mutating requests are rejected with
``busy-training`` until it finishes, while reads (recognize, projection,
status) keep serving the previous network.
"""

from __future__ import annotations

import threading
import uuid
from pathlib import Path

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .errors import DigitBenchError, TrainingDivergedError
from .evaluator import evaluate
from .network import (
    Network,
    NetworkTopology,
    TrainConfig,
    TrainReport,
    classify,
    dumps_model,
    init_network,
    load_model,
    loads_model,
    save_model,
    train,
)
from .patterns import (
    DigitPattern,
    PatternSet,
    dedup,
    dumps_patterns,
    load_patterns,
    loads_patterns,
    preprocess,
    save_patterns,
)
from .projection import build_features, pca_project

SESSION_TOPOLOGY = NetworkTopology(96, 48, 10)


class ApiError(Exception):
    def __init__(self, code: str, message: str, status: int):
        self.code = code
        self.message = message
        self.status = status
        super().__init__(message)


def _unknown_session(sid: str) -> ApiError:
    return ApiError("unknown-session", f"no session {sid!r}", 404)


def _busy() -> ApiError:
    return ApiError("busy-training", "a training run is in progress for this session", 409)


class Session:
    def __init__(self, sid: str):
        self.sid = sid
        self.lock = threading.Lock()
        self.pattern_set = PatternSet()
        self.network: Network | None = None
        self.report: TrainReport | None = None
        self.config = TrainConfig()
        self.status = "idle"  # idle | training | done | canceled | error
        self.error: str | None = None
        self.stop_event = threading.Event()
        self.thread: threading.Thread | None = None


class SessionStore:
    def __init__(self):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self) -> Session:
        session = Session(uuid.uuid4().hex)
        with self._lock:
            self._sessions[session.sid] = session
        return session

    def get(self, sid: str) -> Session:
        with self._lock:
            session = self._sessions.get(sid)
        if session is None:
            raise _unknown_session(sid)
        return session

    def drop(self, sid: str) -> None:
        with self._lock:
            self._sessions.pop(sid, None)


class AddPatternRequest(BaseModel):
    cells: str = Field(min_length=96, max_length=96)
    label: int = Field(ge=0, le=9)


class RecognizeRequest(BaseModel):
    cells: str = Field(min_length=96, max_length=96)


class FilePayload(BaseModel):
    path: str | None = None
    text: str | None = None


class TrainRequest(BaseModel):
    learning_rate: float | None = None
    momentum: float | None = None
    mse_threshold: float | None = None
    max_epochs: int | None = None
    rng_seed: int | None = None


class EvaluateRequest(BaseModel):
    models: list[str]
    patterns: str


def _parse_cells(text: str) -> DigitPattern:
    try:
        return DigitPattern.from_string(text)
    except DigitBenchError as err:
        raise ApiError("malformed-pattern", str(err), 400) from err


def _report_json(report: TrainReport | None):
    if report is None:
        return None
    return {
        "epochs_run": report.epochs_run,
        "final_mse": report.final_mse,
        "training_accuracy": report.training_accuracy,
        "wall_time_seconds": report.wall_time_seconds,
        "converged": report.converged,
    }


def _config_json(config: TrainConfig):
    return {
        "learning_rate": config.learning_rate,
        "momentum": config.momentum,
        "mse_threshold": config.mse_threshold,
        "max_epochs": config.max_epochs,
        "rng_seed": config.rng_seed,
    }


def _session_json(session: Session):
    return {
        "session_id": session.sid,
        "status": session.status,
        "pattern_count": len(session.pattern_set),
        "per_digit_counts": session.pattern_set.per_digit_counts,
        "has_network": session.network is not None,
        "config": _config_json(session.config),
        "report": _report_json(session.report),
        "error": session.error,
    }


def create_app(data_dir: Path | str = ".", frontend_dir: Path | str | None = None) -> FastAPI:
    data_dir = Path(data_dir)
    app = FastAPI(title="digitbench", version="0.1.0")
    store = SessionStore()
    app.state.sessions = store

    def resolve(name: str) -> Path:
        path = Path(name)
        return path if path.is_absolute() else data_dir / path

    @app.exception_handler(ApiError)
    async def _api_error_handler(_: Request, err: ApiError):
        return JSONResponse(status_code=err.status,
                            content={"error": {"code": err.code, "message": err.message}})

    @app.exception_handler(DigitBenchError)
    async def _domain_error_handler(_: Request, err: DigitBenchError):
        return JSONResponse(status_code=400,
                            content={"error": {"code": "data-error", "message": str(err)}})

    @app.post("/api/v1/sessions", status_code=201)
    def create_session():
        return _session_json(store.create())

    @app.get("/api/v1/sessions/{sid}")
    def get_session(sid: str):
        return _session_json(store.get(sid))

    @app.delete("/api/v1/sessions/{sid}")
    def delete_session(sid: str):
        session = store.get(sid)
        with session.lock:
            if session.status == "training":
                raise _busy()
            store.drop(sid)
        return {"deleted": sid}

    @app.get("/api/v1/sessions/{sid}/patterns")
    def list_patterns(sid: str):
        session = store.get(sid)
        with session.lock:
            return {
                "patterns": [{"cells": p.to_string(), "label": p.label}
                             for p in session.pattern_set],
                "per_digit_counts": session.pattern_set.per_digit_counts,
            }

    @app.post("/api/v1/sessions/{sid}/patterns")
    def add_pattern(sid: str, body: AddPatternRequest):
        session = store.get(sid)
        pattern = preprocess(_parse_cells(body.cells).with_label(body.label))
        with session.lock:
            if session.status == "training":
                raise _busy()
            before = len(session.pattern_set)
            session.pattern_set = dedup(session.pattern_set.add(pattern))
            added = len(session.pattern_set) > before
            return {
                "added": added,
                "pattern_count": len(session.pattern_set),
                "per_digit_counts": session.pattern_set.per_digit_counts,
            }

    @app.delete("/api/v1/sessions/{sid}/patterns/{index}")
    def delete_pattern(sid: str, index: int):
        session = store.get(sid)
        with session.lock:
            if session.status == "training":
                raise _busy()
            if not 0 <= index < len(session.pattern_set):
                raise ApiError("not-found", f"no pattern at index {index}", 404)
            session.pattern_set = session.pattern_set.remove(index)
            return {
                "pattern_count": len(session.pattern_set),
                "per_digit_counts": session.pattern_set.per_digit_counts,
            }

    @app.delete("/api/v1/sessions/{sid}/patterns")
    def clear_patterns(sid: str):
        session = store.get(sid)
        with session.lock:
            if session.status == "training":
                raise _busy()
            session.pattern_set = PatternSet()
            return {"pattern_count": 0, "per_digit_counts": [0] * 10}

    @app.post("/api/v1/sessions/{sid}/patterns/load")
    def load_patterns_into_session(sid: str, body: FilePayload):
        session = store.get(sid)
        if (body.path is None) == (body.text is None):
            raise ApiError("bad-request", "provide exactly one of 'path' or 'text'", 400)
        if body.path is not None:
            target = resolve(body.path)
            if not target.exists():
                raise ApiError("not-found", f"no file {str(target)!r}", 404)
            loaded = load_patterns(target)
        else:
            loaded = loads_patterns(body.text)
        with session.lock:
            if session.status == "training":
                raise _busy()
            merged = PatternSet(session.pattern_set.patterns + loaded.patterns)
            session.pattern_set = dedup(merged)
            return {
                "pattern_count": len(session.pattern_set),
                "per_digit_counts": session.pattern_set.per_digit_counts,
            }

    @app.post("/api/v1/sessions/{sid}/patterns/save")
    def save_session_patterns(sid: str, body: FilePayload):
        session = store.get(sid)
        with session.lock:
            snapshot = session.pattern_set
        if body.path is not None:
            save_patterns(snapshot, resolve(body.path))
            return {"path": str(resolve(body.path)), "pattern_count": len(snapshot)}
        return {"text": dumps_patterns(snapshot), "pattern_count": len(snapshot)}

    def _train_worker(session: Session, samples, config: TrainConfig):
        try:
            net = init_network(SESSION_TOPOLOGY, seed=config.rng_seed)
            report = train(net, samples, config, stop=session.stop_event.is_set)
            with session.lock:
                session.network = net
                session.report = report
                session.status = "canceled" if session.stop_event.is_set() else "done"
        except TrainingDivergedError as err:
            with session.lock:
                session.status = "error"
                session.error = str(err)

    @app.post("/api/v1/sessions/{sid}/train", status_code=202)
    def start_training(sid: str, body: TrainRequest):
        session = store.get(sid)
        with session.lock:
            if session.status == "training":
                raise _busy()
            if len(session.pattern_set) == 0:
                raise ApiError("empty-set", "add patterns before training", 409)
            overrides = {k: v for k, v in body.model_dump().items() if v is not None}
            try:
                config = TrainConfig(**{**_config_json(session.config), **overrides})
            except DigitBenchError as err:
                raise ApiError("bad-request", str(err), 400) from err
            session.config = config
            X, y = session.pattern_set.to_arrays()
            session.status = "training"
            session.error = None
            session.stop_event = threading.Event()
            session.thread = threading.Thread(
                target=_train_worker, args=(session, list(zip(X, y)), config), daemon=True
            )
            session.thread.start()
        return {"status": "training"}

    @app.get("/api/v1/sessions/{sid}/train/status")
    def train_status(sid: str):
        session = store.get(sid)
        with session.lock:
            return {"status": session.status, "report": _report_json(session.report),
                    "error": session.error}

    @app.post("/api/v1/sessions/{sid}/train/cancel")
    def cancel_training(sid: str):
        session = store.get(sid)
        with session.lock:
            if session.status != "training":
                return {"status": session.status}
            session.stop_event.set()
            thread = session.thread
        if thread is not None:
            thread.join(timeout=60)
        with session.lock:
            return {"status": session.status}

    @app.post("/api/v1/sessions/{sid}/recognize")
    def recognize(sid: str, body: RecognizeRequest):
        session = store.get(sid)
        pattern = preprocess(_parse_cells(body.cells))
        with session.lock:
            net = session.network
        if net is None:
            raise ApiError("no-network", "train a network before recognizing", 409)
        label, probs = classify(net, pattern.to_array())
        return {"label": label, "probs": [float(p) for p in probs]}

    @app.get("/api/v1/sessions/{sid}/projection")
    def projection(sid: str, augment: bool = False):
        session = store.get(sid)
        with session.lock:
            snapshot = session.pattern_set
            net = session.network
        if augment and net is None:
            raise ApiError("no-network", "augmented projection needs a trained network", 409)
        proj = pca_project(build_features(snapshot, net if augment else None))
        return {
            "points": [[float(x), float(y)] for x, y in proj.points],
            "labels": list(proj.labels),
            "explained_variance": list(proj.explained_variance),
            "degenerate": proj.degenerate,
            "augmented": augment,
        }

    @app.post("/api/v1/sessions/{sid}/model/save")
    def model_save(sid: str, body: FilePayload):
        session = store.get(sid)
        with session.lock:
            net = session.network
        if net is None:
            raise ApiError("no-network", "no trained network to save", 409)
        if body.path is not None:
            save_model(net, resolve(body.path))
            return {"path": str(resolve(body.path))}
        return {"text": dumps_model(net)}

    @app.post("/api/v1/sessions/{sid}/model/load")
    def model_load(sid: str, body: FilePayload):
        session = store.get(sid)
        if (body.path is None) == (body.text is None):
            raise ApiError("bad-request", "provide exactly one of 'path' or 'text'", 400)
        if body.path is not None:
            target = resolve(body.path)
            if not target.exists():
                raise ApiError("not-found", f"no file {str(target)!r}", 404)
            net = load_model(target)
        else:
            net = loads_model(body.text)
        if net.topology != SESSION_TOPOLOGY:
            raise ApiError("wrong-topology",
                           f"sessions require topology {SESSION_TOPOLOGY}, file has {net.topology}",
                           400)
        with session.lock:
            if session.status == "training":
                raise _busy()
            session.network = net
            session.report = None
            session.status = "done"
            return _session_json(session)

    @app.get("/api/v1/tester/files")
    def tester_files():
        models = sorted(p.name for p in data_dir.glob("*.nnmodel"))
        patterns = sorted(p.name for p in data_dir.glob("*.nnpat"))
        return {"models": models, "patterns": patterns}

    @app.post("/api/v1/tester/evaluate")
    def tester_evaluate(body: EvaluateRequest):
        if not body.models:
            raise ApiError("bad-request", "list at least one model", 400)
        test_path = resolve(body.patterns)
        if not test_path.exists():
            raise ApiError("not-found", f"no pattern file {str(test_path)!r}", 404)
        models = []
        for name in body.models:
            path = resolve(name)
            if not path.exists():
                raise ApiError("not-found", f"no model file {str(path)!r}", 404)
            models.append((path.name, load_model(path)))
        report = evaluate(models, load_patterns(test_path))
        return {
            "per_model": [{"model": name, "accuracy": acc} for name, acc in report.per_model],
            "per_pattern": [
                {
                    "model": row.model,
                    "pattern_index": row.pattern_index,
                    "label": row.label,
                    "predicted": row.predicted,
                    "correct": row.correct,
                    "probs": [float(p) for p in row.probabilities],
                }
                for row in report.per_pattern
            ],
        }

    if frontend_dir is not None and Path(frontend_dir).exists():
        app.mount("/", StaticFiles(directory=frontend_dir, html=True), name="ui")

    return app
