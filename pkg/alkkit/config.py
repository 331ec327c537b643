# alkkit/config.py
"""
Configuration module for alk-kit.
"""
from __future__ import annotations
from pathlib import Path
from dotenv import load_dotenv
import os

load_dotenv()


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name, str(default)).strip()
    try:
        return int(raw)
    except ValueError:
        raise RuntimeError(f"⚠️  {name} must be an integer, got {raw!r}")


# --- Core Directories ---
PROJECT_ROOT = Path(__file__).resolve().parent.parent
PACKAGE_DATA = Path(__file__).resolve().parent / "data"
SCHEMA_DIR   = Path(os.getenv("ALK_SCHEMA_DIR", PROJECT_ROOT / "schema"))
CORPUS_DIR   = Path(os.getenv("ALK_CORPUS_DIR", PROJECT_ROOT / "corpus"))

DATA_ROOT    = Path(os.getenv("ALK_DATA_ROOT", PROJECT_ROOT / "data"))
MANIFEST_DIR = Path(os.getenv("ALK_MANIFEST_DIR", DATA_ROOT / "manifests"))

# File logging stays off unless a directory is given.
_log_dir = os.getenv("ALK_LOG_DIR", "").strip()
LOG_DIR: Path | None = Path(_log_dir) if _log_dir else None
LOG_LEVEL = os.getenv("ALK_LOG_LEVEL", "WARNING").strip().upper()
LOG_JSON  = os.getenv("ALK_LOG_JSON", "0").strip().lower() in ("1", "true", "yes", "on")

# --- Search bounds ---
WORKERS     = _int_env("ALK_WORKERS", 4)
POWER_SLACK = _int_env("ALK_POWER_SLACK", 8)
BFS_LIMIT   = _int_env("ALK_BFS_LIMIT", 20000)

if WORKERS < 1:
    raise RuntimeError("⚠️  ALK_WORKERS must be at least 1.")
if BFS_LIMIT < 1:
    raise RuntimeError("⚠️  ALK_BFS_LIMIT must be positive.")

# Sign, orientation and letter-order conventions. Bump when any of them change.
#   orientation: polygon counterclockwise x fiber increasing
#   frame order: (tangent 1, v = dz1 - dz2, tangent 2)
#   letter order: a1 < A1 < b1 < B1 < a2 < ...
CONVENTION_VERSION = "alk-conv-1"
