"""CSV/JSON writers and the run manifest."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

import yaml

from cli import __version__
from prob_core.errors import ConfigurationError


def format_cell(value: Any) -> str:
    # no locale: repr-style decimal with 12 significant digits
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return format(value, ".12g")
    return str(value)


def render_csv(rows: Sequence[Dict[str, Any]], fieldnames: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(fieldnames), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: format_cell(r.get(k)) for k in fieldnames})
    return buf.getvalue()


def write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)


def dump_json(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2)


@dataclass
class RunManifest:
    command: str
    config: Dict[str, Any]
    seed: Optional[int]
    version: str
    duration_seconds: float
    created_at: str

    @classmethod
    def create(cls, command: str, config: Dict[str, Any], duration: float) -> "RunManifest":
        return cls(
            command=command,
            config=config,
            seed=config.get("seed"),
            version=__version__,
            duration_seconds=round(duration, 3),
            created_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        )

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def write(self, path: Path) -> None:
        data = self.to_dict()
        if path.suffix.lower() in (".yaml", ".yml"):
            text = yaml.safe_dump(data, allow_unicode=True, sort_keys=False)
        else:
            text = dump_json(data) + "\n"
        write_text(path, text)

    @classmethod
    def load(cls, path: Path) -> "RunManifest":
        try:
            text = Path(path).read_text(encoding="utf-8")
            # YAML 1.1 reads "1e-08" as a string, so JSON goes through json
            if text.lstrip().startswith("{"):
                data = json.loads(text)
            else:
                data = yaml.safe_load(text) or {}
        except (OSError, ValueError, yaml.YAMLError) as e:
            raise ConfigurationError(f"cannot read manifest {path}: {e}") from e
        if not isinstance(data, dict):
            raise ConfigurationError(f"manifest {path} is not a mapping")
        missing = [k for k in ("command", "config") if k not in data]
        if missing:
            raise ConfigurationError(f"manifest {path} lacks {', '.join(missing)}")
        return cls(
            command=str(data["command"]),
            config=dict(data["config"]),
            seed=data.get("seed"),
            version=str(data.get("version", "")),
            duration_seconds=float(data.get("duration_seconds", 0.0)),
            created_at=str(data.get("created_at", "")),
        )


def manifest_path_for(out: Optional[Path], explicit: Optional[Path]) -> Optional[Path]:
    """``--manifest`` wins; otherwise the manifest accompanies ``--out``."""
    if explicit is not None:
        return explicit
    if out is not None:
        return out.with_name(out.name + ".manifest.json")
    return None


def json_mirror_path(out: Path) -> Path:
    return out.with_suffix(".json") if out.suffix.lower() != ".json" else out.with_name(out.stem + ".mirror.json")


__all__ = [
    "format_cell",
    "render_csv",
    "write_text",
    "dump_json",
    "RunManifest",
    "manifest_path_for",
    "json_mirror_path",
]