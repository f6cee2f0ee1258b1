from pathlib import Path
from typing import Any

import polars as pl

from hyperpurify.base_model import custom_json_serializer
from hyperpurify.logger import get_logger

log = get_logger(__name__)


def write_csv(frame: pl.DataFrame, out_dir: Path, name: str) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{name}.csv"
    frame.write_csv(path)
    log.info("Wrote %d rows to %s", frame.height, path)
    return path


def write_json(data: Any, out_dir: Path, name: str) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{name}.json"
    path.write_text(custom_json_serializer(data) + "\n")
    log.info("Wrote %s", path)
    return path
