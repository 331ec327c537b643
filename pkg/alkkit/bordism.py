# alkkit/bordism.py
"""
Point classes of the configuration space and their integer combinations.

For two circle components mapped into F_g x S^1, a path component of the
configuration space is a pair of based loop classes at a common point, taken
up to simultaneous conjugation. Conjugation only moves the surface parts; the
fiber integers are central and stay as they are.
"""
from __future__ import annotations
from dataclasses import dataclass, field
from typing import Iterable, Tuple

from .combination import Combination
from .errors import GroupError
from .words import Elem3, Word, simultaneous_canonical


@dataclass(frozen=True)
class BClass:
    first: Elem3
    second: Elem3
    # how the canonical pair was found; not part of the class
    power_bound: int = field(default=0, compare=False)
    truncated: bool = field(default=False, compare=False)

    @classmethod
    def of(cls, g1: Elem3, g2: Elem3) -> "BClass":
        if g1.genus != g2.genus:
            raise GroupError(f"genus mismatch: {g1.genus} vs {g2.genus}")
        pair = simultaneous_canonical(g1.surface, g2.surface)
        return cls(Elem3(pair.first, g1.fiber), Elem3(pair.second, g2.fiber), pair.power_bound, pair.truncated)

    @classmethod
    def of_words(cls, w1: Word, w2: Word) -> "BClass":
        """Surface-only class: both fibers zero."""
        return cls.of(Elem3(w1, 0), Elem3(w2, 0))

    @classmethod
    def point(cls, genus: int = 1) -> "BClass":
        """The class of a pair of constant loops."""
        e = Elem3(Word.identity(genus), 0)
        return cls(e, e)

    @classmethod
    def parse(cls, text: str, genus: int) -> "BClass":
        """'(a1 ; 0 | b1 ; 0)' or 'a1 ; 0 | b1 ; 0'."""
        body = text.strip()
        if body.startswith("(") and body.endswith(")"):
            body = body[1:-1]
        left, sep, right = body.partition("|")
        if not sep:
            raise GroupError(f"not a class label: {text!r}")
        return cls.of(Elem3.parse(left, genus), Elem3.parse(right, genus))

    @property
    def genus(self) -> int:
        return self.first.genus

    @property
    def fibers(self) -> Tuple[int, int]:
        return (self.first.fiber, self.second.fiber)

    def swapped(self) -> "BClass":
        return BClass.of(self.second, self.first)

    def key(self):
        return (self.genus, self.first.key(), self.second.key())

    def __str__(self) -> str:
        return f"({self.first} | {self.second})"

    def as_dict(self) -> dict:
        return {"first": self.first.as_dict(), "second": self.second.as_dict(), "search": self.search_dict()}

    def search_dict(self) -> dict:
        return {"power_bound": self.power_bound, "truncated": self.truncated}


class Bor0Elem(Combination[BClass]):
    """Finite integer combination of point classes."""

    def swapped(self) -> "Bor0Elem":
        return self.map_keys(BClass.swapped)

    def as_list(self) -> list:
        return [{"class": str(k), "coefficient": c} for k, c in self.items()]

    @classmethod
    def from_list(cls, items: Iterable[dict], genus: int) -> "Bor0Elem":
        return cls([(BClass.parse(item["class"], genus), int(item["coefficient"])) for item in items])


def epsilon(x: Bor0Elem) -> int:
    """Augmentation: the coefficient sum."""
    return x.total()
