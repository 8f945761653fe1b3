"""JSON formats for series, frames and kernels, and deterministic report output."""

from __future__ import annotations

import json
import math
import re
from pathlib import Path

import numpy as np

from .errors import ParseError
from .holo import HoloSeries
from .qalg import Frame, ImaginaryUnit, Quaternion, complete_frame
from .slicefn import SliceSeries

_NAMED_UNITS = {"e1": (1.0, 0.0, 0.0), "e2": (0.0, 1.0, 0.0), "e3": (0.0, 0.0, 1.0)}


def parse_frame_spec(spec: str) -> Frame:
    """``"i=e1"`` or ``"i=x,y,z"``; ``j`` and ``k`` come from :func:`complete_frame`."""
    m = re.fullmatch(r"\s*i\s*=\s*(.+?)\s*", spec or "")
    if not m:
        raise ParseError(f"bad frame spec {spec!r}; expected 'i=e1' or 'i=x,y,z'")
    body = m.group(1)
    sign = 1.0
    if body.startswith("-") and body[1:] in _NAMED_UNITS:
        sign, body = -1.0, body[1:]
    if body in _NAMED_UNITS:
        vec = np.array(_NAMED_UNITS[body]) * sign
    else:
        try:
            vec = np.array([float(t) for t in body.split(",")])
        except ValueError as exc:
            raise ParseError(f"bad frame vector {body!r}") from exc
        if vec.shape != (3,):
            raise ParseError("frame vector needs three components")
    try:
        return complete_frame(ImaginaryUnit.from_vector(vec))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def parse_quaternion(text: str) -> Quaternion:
    try:
        parts = [float(t) for t in text.split(",")]
    except ValueError as exc:
        raise ParseError(f"bad quaternion {text!r}") from exc
    if len(parts) != 4:
        raise ParseError(f"quaternion {text!r} needs four components w,x,y,z")
    return Quaternion(*parts)


def frame_to_json(frame: Frame) -> list[list[float]]:
    return frame.tolist()


def frame_from_json(rows) -> Frame:
    try:
        vecs = [np.asarray(r, dtype=float) for r in rows]
        vecs = [v[1:] if v.size == 4 else v for v in vecs]
        i, j, k = (ImaginaryUnit.from_vector(v) for v in vecs)
        return Frame(i, j, k)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad frame: {exc}") from exc


def _coeffs(data) -> np.ndarray:
    try:
        c = np.asarray(data["coeffs"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad coeffs: {exc}") from exc
    if c.ndim != 2 or c.shape[1] != 4 or c.shape[0] == 0:
        raise ParseError("coeffs must be a non-empty list of [w,x,y,z]")
    return c


def holo_to_json(f: HoloSeries) -> dict:
    return {"frame": frame_to_json(f.frame), "radius": f.radius, "coeffs": f.coeffs.tolist()}


def holo_from_json(data: dict) -> HoloSeries:
    if "frame" not in data:
        raise ParseError("holomorphic series needs a 'frame'")
    return HoloSeries(frame_from_json(data["frame"]), _coeffs(data), float(data.get("radius", 1.0)))


def slice_to_json(F: SliceSeries) -> dict:
    return {"radius": F.radius, "coeffs": F.coeffs.tolist()}


def slice_from_json(data: dict) -> SliceSeries:
    return SliceSeries(_coeffs(data), float(data.get("radius", 1.0)))


def load_series(path) -> HoloSeries | SliceSeries:
    """Read a series file; a ``frame`` key marks a holomorphic series."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("series JSON must be an object")
    return holo_from_json(data) if "frame" in data else slice_from_json(data)


def format_float(x: float) -> str:
    if x is None or not math.isfinite(x):
        return "null"
    return format(float(x), ".17g")


def dumps_report(obj, indent: int = 2) -> str:
    """Deterministic JSON: insertion-ordered keys, floats at 17 significant digits."""
    out: list[str] = []

    def emit(v, level):
        pad = " " * (indent * (level + 1))
        end = " " * (indent * level)
        if isinstance(v, bool) or v is None:
            out.append(json.dumps(v))
        elif isinstance(v, (int, np.integer)):
            out.append(str(int(v)))
        elif isinstance(v, (float, np.floating)):
            out.append(format_float(float(v)))
        elif isinstance(v, str):
            out.append(json.dumps(v))
        elif isinstance(v, dict):
            if not v:
                out.append("{}")
                return
            out.append("{\n")
            for n, (k, val) in enumerate(v.items()):
                out.append(f"{pad}{json.dumps(str(k))}: ")
                emit(val, level + 1)
                out.append(",\n" if n < len(v) - 1 else "\n")
            out.append(end + "}")
        elif isinstance(v, (list, tuple, np.ndarray)):
            seq = list(v)
            if not seq:
                out.append("[]")
                return
            if any(isinstance(val, dict) for val in seq):
                out.append("[\n")
                for n, val in enumerate(seq):
                    out.append(pad)
                    emit(val, level + 1)
                    out.append(",\n" if n < len(seq) - 1 else "\n")
                out.append(end + "]")
                return
            out.append("[")
            for n, val in enumerate(seq):
                emit(val, level + 1)
                if n < len(seq) - 1:
                    out.append(", ")
            out.append("]")
        else:
            raise TypeError(f"cannot serialize {type(v).__name__}")

    emit(obj, 0)
    return "".join(out) + "\n"
