import os
from dataclasses import asdict, dataclass
from typing import Any, Dict

try:
    from dotenv import load_dotenv  # type: ignore
except Exception:
    load_dotenv = None  # type: ignore

# Значения читаются из окружения при каждом вызове,
# чтобы корректно работать в тестах (monkeypatch) и в .env.

DEFAULT_SEED = 7


def _env_int(name: str, default: int, minimum: int = 0) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        return default
    return value if value >= minimum else default


@dataclass
class RuntimeConfig:
    threads: int = 0
    json_logs: bool = False
    log_level: str = "INFO"
    seed: int = DEFAULT_SEED

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def load_config(use_dotenv: bool = True) -> RuntimeConfig:
    if use_dotenv and load_dotenv is not None:
        try:
            load_dotenv()
        except Exception:
            # .env может отсутствовать или быть нечитаемым
            pass
    return RuntimeConfig(
        threads=_env_int("ORDSTAT_THREADS", 0),
        json_logs=os.environ.get("ORDSTAT_JSON_LOGS", "0") == "1",
        log_level=os.environ.get("ORDSTAT_LOG_LEVEL", "INFO").upper(),
        seed=_env_int("ORDSTAT_SEED", DEFAULT_SEED),
    )


def resolve_threads(requested: int = 0) -> int:
    """0 means all cores."""
    if requested and requested > 0:
        return int(requested)
    return os.cpu_count() or 1
