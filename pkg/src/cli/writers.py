"""
File:           writers.py
Created on:     15/10/26, 4:30 pm

CSV and JSON emission. Data files are deterministic; the run metadata (with its timestamp) goes
to a separate <out>.meta.json sidecar.
"""
from typing import Any, Dict, List, Optional, Sequence, TextIO
from pathlib import Path
import json
import math
import sys

import numpy as np
import pandas as pd

from src.utils import utcnow, utc_isoformat
from src.utils.enum import OutputFormat
from src.utils.logger import LogFacade


logger: LogFacade = LogFacade.get_logger("writers")

FLOAT_FORMAT = "%.17g"


def _plain(value: Any) -> Any:
    """ JSON friendly value: numpy scalars unwrapped, nan/inf as null """
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, dict):
        return {key: _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    return value


def rows_to_csv(rows: Sequence[Dict[str, Any]], columns: Sequence[str]) -> str:
    frame = pd.DataFrame(list(rows), columns=list(columns))
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def rows_to_json(rows: Sequence[Dict[str, Any]]) -> str:
    return json.dumps([_plain(row) for row in rows], indent=2) + "\n"


def write_rows(
        rows: Sequence[Dict[str, Any]],
        columns: Sequence[str],
        output_format: OutputFormat = OutputFormat.CSV,
        out: Optional[Path] = None,
        stream: Optional[TextIO] = None
) -> None:
    """ CSV keeps only the fixed column set; JSON carries every key of each row """
    if output_format == OutputFormat.JSON:
        text = rows_to_json(rows)
    else:
        text = rows_to_csv(rows, columns)
    if out is None:
        (stream or sys.stdout).write(text)
        return
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text)
    logger.info(f"Wrote {len(rows)} row(s) to {out}")


def sidecar_path(out: Path) -> Path:
    return Path(f"{out}.meta.json")


def write_metadata(out: Path, command: str, config: Dict[str, Any], rows: List[Dict[str, Any]],
                   **extra: Any) -> Path:
    path = sidecar_path(out)
    meta = {
        "command": command,
        "created_utc": utc_isoformat(utcnow()),
        "rows": len(rows),
        "config": _plain(config),
    }
    meta.update(_plain(extra))
    path.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    return path
