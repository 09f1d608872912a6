"""Rendering of experiment reports as JSON, CSV or a plain-text table.

JSON numbers are written with 17 significant digits so every float round
trips; non-finite floats become ``null``. CSV uses the row keys in
insertion order as the header, ``.`` as decimal point and LF line endings.
"""

from __future__ import annotations

import csv
import io
import json
import math
from importlib import resources
from typing import Any

from .experiments import ExperimentReport

__all__ = ["to_json", "to_csv", "to_table", "report_schema", "format_float"]


def format_float(x: float, digits: int = 17) -> str:
    if not math.isfinite(x):
        return "null"
    text = format(x, f".{digits}g")
    # keep a float marker so integers and floats stay distinguishable
    if text.lstrip("-").isdigit():
        text += ".0"
    return text


def _encode(obj: Any) -> str:
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    if hasattr(obj, "item"):
        return _encode(obj.item())
    raise TypeError(f"cannot encode {type(obj).__name__}")


def _document(report: ExperimentReport) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "experiment": report.experiment,
        "params": report.params,
        "rows": report.rows,
    }
    if report.fit is not None:
        doc["fit"] = report.fit.as_dict()
    meta = dict(report.meta)
    meta["status"] = report.status
    if report.message:
        meta["message"] = report.message
    doc["meta"] = meta
    return doc


def to_json(report: ExperimentReport) -> str:
    return _encode(_document(report)) + "\n"


def _cell(v: Any, digits: int) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format_float(v, digits) if math.isfinite(v) else ("nan" if math.isnan(v) else str(v))
    return str(v)


def to_csv(report: ExperimentReport) -> str:
    buf = io.StringIO()
    if report.rows:
        writer = csv.writer(buf, lineterminator="\n")
        keys = list(report.rows[0])
        writer.writerow(keys)
        for row in report.rows:
            writer.writerow([_cell(row[k], 17) for k in keys])
    return buf.getvalue()


def to_table(report: ExperimentReport) -> str:
    lines = [f"# {report.experiment}  [{report.status}]"]
    if report.message:
        lines.append(f"# {report.message}")
    if report.rows:
        keys = list(report.rows[0])
        cells = [keys] + [[_cell(row[k], 10) for k in keys] for row in report.rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(keys))]
        for r in cells:
            lines.append("  ".join(c.rjust(w) for c, w in zip(r, widths)))
    if report.fit is not None:
        fit = report.fit.as_dict()
        lines.append(f"fit {fit['model']}: c0_hat = {_cell(fit['c0_hat'], 10)} (error {_cell(fit['c0_error'], 3)})")
        lines.append("  " + ", ".join(f"{k} = {_cell(v, 10)}" for k, v in fit["coefficients"].items()))
        rms = f"  rms = {_cell(fit['rms'], 3)}"
        if "rms_without_b" in fit:
            rms += f", rms without b = {_cell(fit['rms_without_b'], 3)}"
        lines.append(rms)
    return "\n".join(lines) + "\n"


def report_schema() -> dict[str, Any]:
    """The JSON schema every report validates against."""
    text = resources.files("sinegap").joinpath("report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)
