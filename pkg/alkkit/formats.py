# alkkit/formats.py
"""
JSON documents in and out: loops, movies, point movies, presets.

Every input is checked against its versioned schema in SCHEMA_DIR before it is
decoded. Rationals travel as integers, "p/q" strings or [num, den] pairs.
"""
from __future__ import annotations
import json
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

import jsonschema

from .bordism import Bor0Elem
from .config import SCHEMA_DIR
from .errors import GroupError, InputError
from .movie import Keyframe, LinkMovie
from .obstruct import PointMovie
from .polygon import FundamentalPolygon
from .presets import IndetPreset, indet_preset
from .surface import PLLoop, PLLoop3, torus_line
from .utils import as_fraction, as_point, fraction_pair, get_context_logger

log = get_context_logger(step="formats")

SCHEMA_VERSION = "v1"


@lru_cache(maxsize=None)
def load_schema(name: str) -> Dict[str, Any]:
    """Schema `name` with the shared definitions merged in as $defs."""
    schema = json.loads((SCHEMA_DIR / f"{name}.{SCHEMA_VERSION}.json").read_text(encoding="utf-8"))
    common = json.loads((SCHEMA_DIR / f"common.{SCHEMA_VERSION}.json").read_text(encoding="utf-8"))
    defs = dict(common["$defs"])
    defs.update(schema.get("$defs", {}))
    schema["$defs"] = defs
    return schema


def read_document(path: Union[str, Path], schema: str) -> Dict[str, Any]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(str(path), f"cannot read file: {e.strerror or e}")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(str(path), e.msg, line=e.lineno)
    validate(doc, schema, str(path))
    return doc


def validate(doc: Any, schema: str, source: str = "<document>"):
    validator = jsonschema.Draft202012Validator(load_schema(schema))
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        where = "/".join(str(p) for p in err.absolute_path) or "(root)"
        raise InputError(source, f"{where}: {err.message}")


def _decode(source: str, fn, *args):
    """Run a decoder and turn domain errors into input errors for `source`."""
    try:
        return fn(*args)
    except (ValueError, ZeroDivisionError, GroupError) as e:
        raise InputError(source, str(e))


# ---------------------------------------------------------------------------
# Loops
# ---------------------------------------------------------------------------

def loop_from_doc(doc: Dict[str, Any], genus: Optional[int] = None) -> PLLoop:
    g = doc.get("genus", genus)
    if g is None:
        raise ValueError("loop has no genus")
    if genus is not None and g != genus:
        raise ValueError(f"loop genus {g} differs from document genus {genus}")
    polygon = FundamentalPolygon.standard(g)
    if "torus_line" in doc:
        if g != 1:
            raise ValueError("torus_line loops need genus 1")
        spec = doc["torus_line"]
        start = as_point(spec["start"]) if "start" in spec else None
        bend = as_point(spec["bend"]) if "bend" in spec else None
        return torus_line(spec["p"], spec["q"], start=start, bend=bend)
    if "word" in doc:
        params = [as_fraction(s) for s in doc["params"]] if "params" in doc else None
        return PLLoop.from_word(polygon, doc["word"], params)
    points = [as_point(p) for p in doc["points"]]
    gates = doc.get("gates", [None] * len(points))
    return PLLoop(polygon, tuple(points), tuple(gates))


def loop3_from_doc(doc: Dict[str, Any], genus: Optional[int] = None) -> PLLoop3:
    base = loop_from_doc(doc, genus)
    if "heights" in doc:
        heights = tuple(as_fraction(h) for h in doc["heights"])
    else:
        heights = (as_fraction(doc.get("height", 0)),) * len(base.points)
    return PLLoop3(base, heights, doc.get("winding", 0))


def loop_to_doc(loop: PLLoop) -> Dict[str, Any]:
    return {
        "genus": loop.genus,
        "points": [[fraction_pair(x), fraction_pair(y)] for x, y in loop.points],
        "gates": list(loop.gates),
    }


def loop3_to_doc(loop: PLLoop3) -> Dict[str, Any]:
    doc = loop_to_doc(loop.base)
    doc["heights"] = [fraction_pair(h) for h in loop.heights]
    doc["winding"] = loop.winding
    return doc


def read_loop(path: Union[str, Path]) -> PLLoop:
    doc = read_document(path, "loop")
    return _decode(str(path), loop_from_doc, doc)


# ---------------------------------------------------------------------------
# Movies
# ---------------------------------------------------------------------------

def movie_from_doc(doc: Dict[str, Any]) -> LinkMovie:
    g = doc["genus"]
    frames = []
    for kf in doc["keyframes"]:
        frames.append(Keyframe(as_fraction(kf["t"]), loop3_from_doc(kf["l1"], g), loop3_from_doc(kf["l2"], g)))
    return LinkMovie(tuple(frames))


def movie_to_doc(movie: LinkMovie, preset: Optional[str] = None) -> Dict[str, Any]:
    doc: Dict[str, Any] = {
        "genus": movie.genus,
        "keyframes": [
            {"t": fraction_pair(kf.t), "l1": _strip_genus(loop3_to_doc(kf.l1)), "l2": _strip_genus(loop3_to_doc(kf.l2))}
            for kf in movie.keyframes
        ],
    }
    if preset:
        doc["preset"] = preset
    return doc


def _strip_genus(doc: Dict[str, Any]) -> Dict[str, Any]:
    doc.pop("genus", None)
    return doc


def read_movie(path: Union[str, Path]) -> Tuple[LinkMovie, Dict[str, Any]]:
    """The movie and its raw document (for the preset fields)."""
    doc = read_document(path, "movie")
    return _decode(str(path), movie_from_doc, doc), doc


def point_movie_from_doc(doc: Dict[str, Any]) -> PointMovie:
    g = doc["genus"]
    frames = [(as_fraction(kf["t"]), loop_from_doc(kf["loop"], g), as_point(kf["point"])) for kf in doc["keyframes"]]
    return PointMovie.from_frames(frames)


def read_point_movie(path: Union[str, Path]) -> PointMovie:
    doc = read_document(path, "point_movie")
    return _decode(str(path), point_movie_from_doc, doc)


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------

def read_user_preset(path: Union[str, Path]) -> IndetPreset:
    doc = read_document(path, "preset")
    g = doc["genus"]
    gens = [_decode(str(path), Bor0Elem.from_list, items, g) for items in doc["generators"]]
    return indet_preset("user", one_sided=doc.get("one_sided", False), generators=gens,
                        provenance=doc.get("provenance", f"user file {Path(path).name}"))
