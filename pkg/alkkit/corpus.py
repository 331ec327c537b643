# alkkit/corpus.py
"""
Replay the example corpus: every entry is a CLI argv plus the exact stdout it
must produce. Relative paths in argv resolve against the corpus directory.
"""
from __future__ import annotations
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from .config import CONVENTION_VERSION, CORPUS_DIR, WORKERS
from .formats import read_document
from .utils import get_context_logger

log = get_context_logger(step="corpus")

INDEX_FILE = "index.json"


def _resolve(arg: str, root: Path) -> str:
    if arg.startswith("-"):
        return arg
    candidate = root / arg
    return str(candidate) if candidate.exists() else arg


def _replay(entry: Dict[str, Any], root: Path) -> Dict[str, Any]:
    from .cli import execute

    argv = ["--no-manifest"] + [_resolve(a, root) for a in entry["argv"]]
    code, text = execute(argv, write_manifest=False)
    expected_path = root / entry["expected"]
    expected = expected_path.read_text(encoding="utf-8")
    want_code = entry.get("exit", 0)
    ok = text == expected and code == want_code
    result = {"name": entry["name"], "ok": ok, "exit": code}
    if not ok:
        log.warning("corpus entry %s differs (exit %s, expected %s)", entry["name"], code, want_code)
        result["expected_exit"] = want_code
        result["got"] = text
    return result


def verify_corpus(directory: Optional[Union[str, Path]] = None, workers: Optional[int] = None) -> Dict[str, Any]:
    """Replay every entry; the report has ok=False if any output or exit code differs."""
    root = Path(directory or CORPUS_DIR)
    index = read_document(root / INDEX_FILE, "corpus_index")
    if index["convention"] != CONVENTION_VERSION:
        log.warning("corpus written under %s, running %s", index["convention"], CONVENTION_VERSION)
    entries = index["entries"]
    with ThreadPoolExecutor(max_workers=workers or WORKERS) as pool:
        results: List[Dict[str, Any]] = list(pool.map(lambda e: _replay(e, root), entries))
    failed = [r["name"] for r in results if not r["ok"]]
    log.info("corpus: %d entries, %d failed", len(results), len(failed), extra={"source": str(root)})
    return {
        "ok": not failed and index["convention"] == CONVENTION_VERSION,
        "convention": index["convention"],
        "entries": results,
        "failed": failed,
        "files": [str(root / INDEX_FILE)] + [str(root / e["expected"]) for e in entries],
    }
