import csv
import hashlib
import io
import json
import math
import platform
import sys
from typing import Any, Dict, List, Optional

import numpy as np
import pydantic
import scipy

from application.config.config import Config
from application.model.manifest import Report, RunManifest


def format_number(value: Any) -> str:
    """CSV cell: 17 significant digits for floats, empty for missing values."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        if math.isnan(value):
            return "nan"
        return "{:.17g}".format(float(value))
    if isinstance(value, (list, tuple)):
        return ";".join(format_number(v) for v in value)
    return str(value)


def to_plain(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def columns(rows: List[Dict[str, Any]]) -> List[str]:
    names: List[str] = []
    for row in rows:
        for key in row:
            if key not in names:
                names.append(key)
    return names


def to_csv(report: Report) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    header = columns(report.rows)
    writer.writerow(header)
    for row in report.rows:
        writer.writerow([format_number(row.get(name)) for name in header])
    return buffer.getvalue()


def to_json(payload: Dict[str, Any]) -> str:
    # json emits floats through repr, the shortest round-trip form
    return json.dumps(to_plain(payload), indent=2, allow_nan=False) + "\n"


def render(report: Report, fmt: str) -> str:
    if fmt == "csv":
        return to_csv(report)
    return to_json(report.to_dict())


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def write_output(text: str, path: Optional[str]) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)


def versions() -> Dict[str, str]:
    return {
        Config.APP_NAME: Config.VERSION,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "pydantic": pydantic.VERSION,
    }


def build_manifest(report: Report, outputs: Dict[str, str]) -> RunManifest:
    return RunManifest(
        command=report.command,
        parameters=to_plain(report.parameters),
        versions=versions(),
        outputs=outputs,
    )
