# alkkit/representatives.py
"""
Drawn representatives for loop classes: straight lines on the torus, a
shipped library of drawings at genus 2.
"""
from __future__ import annotations
from functools import lru_cache
from pathlib import Path
from typing import Dict, Tuple, Union

from .config import PACKAGE_DATA
from .errors import MissingRepresentative
from .formats import read_document
from .goldman import Chooser
from .polygon import FundamentalPolygon
from .surface import PLLoop, torus_line
from .utils import as_fraction, get_context_logger
from .words import CyclicClass, conjugacy_canonical, exponent_sums, reduce

log = get_context_logger(step="representatives")

LIBRARY_FILE = PACKAGE_DATA / "representatives_g2.json"


class RepresentativeLibrary:
    def __init__(self, genus: int, loops: Dict[CyclicClass, PLLoop], pairs: Dict[str, Tuple[PLLoop, PLLoop]]):
        self.genus = genus
        self.loops = loops
        self.pairs = pairs

    @classmethod
    def load(cls, path: Union[str, Path] = LIBRARY_FILE) -> "RepresentativeLibrary":
        doc = read_document(path, "representatives")
        genus = doc["genus"]
        polygon = FundamentalPolygon.standard(genus)
        loops: Dict[CyclicClass, PLLoop] = {}
        for entry in doc["representatives"]:
            params = [as_fraction(s) for s in entry["params"]] if "params" in entry else None
            loop = PLLoop.from_word(polygon, entry["word"], params)
            # keyed by the computed class, not by the stored spelling
            loops[conjugacy_canonical(reduce(entry["word"], genus))] = loop
        pairs = {
            p["name"]: (PLLoop.from_word(polygon, p["l1"]), PLLoop.from_word(polygon, p["l2"]))
            for p in doc.get("pairs", [])
        }
        log.debug("loaded %d representatives", len(loops), extra={"genus": genus, "source": str(path)})
        return cls(genus, loops, pairs)

    def loop(self, cls: CyclicClass) -> PLLoop:
        try:
            return self.loops[cls]
        except KeyError:
            raise MissingRepresentative(str(cls), cls.genus)

    def pair(self, name: str) -> Tuple[PLLoop, PLLoop]:
        try:
            return self.pairs[name]
        except KeyError:
            raise MissingRepresentative(name, self.genus)


@lru_cache(maxsize=None)
def shipped_library() -> RepresentativeLibrary:
    return RepresentativeLibrary.load()


def torus_chooser(cls: CyclicClass) -> PLLoop:
    if cls.genus != 1:
        raise MissingRepresentative(str(cls), cls.genus)
    p, q = exponent_sums(cls.rep)
    return torus_line(p, q)


def default_chooser(genus: int) -> Chooser:
    if genus == 1:
        return torus_chooser
    library = shipped_library()
    if genus == library.genus:
        return library.loop

    def refuse(cls: CyclicClass) -> PLLoop:
        raise MissingRepresentative(str(cls), cls.genus)

    return refuse
