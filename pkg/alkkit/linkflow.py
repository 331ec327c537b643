# alkkit/linkflow.py
"""
The affine linking invariant along link homotopies.

delta_alk(movie) sums sign * class over the crossing events of a movie. The
invariant of a link is the value of delta_alk along any movie from a fixed
base link, read modulo the integer span of an indeterminacy preset.
"""
from __future__ import annotations
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, List, Sequence, Tuple, Union

from .bordism import BClass, Bor0Elem, epsilon
from .errors import GenericityError, ResolutionMismatch
from .lattice import in_integer_span
from .movie import LinkMovie
from .surface import PLLoop3
from .sweep import CrossingEvent, detect_crossings
from .utils import get_context_logger

if TYPE_CHECKING:
    from .presets import IndetPreset

log = get_context_logger(step="linkflow")

__all__ = [
    "AlkValue", "CrossingEvent", "alk", "delta_alk", "detect_crossings",
    "enumerate_distinct_bclasses", "epsilon", "vg_second_derivative",
]


def delta_alk(movie: LinkMovie, workers: int = 1) -> Bor0Elem:
    events = detect_crossings(movie, workers=workers)
    return Bor0Elem([(e.bclass, e.sign) for e in events])


def span_contains(generators: Sequence[Bor0Elem], x: Bor0Elem) -> bool:
    """Whether x is an integer combination of the generators."""
    basis = sorted({k for g in (*generators, x) for k in g.keys()}, key=lambda k: k.key())
    vectors = [[g.coefficient(k) for k in basis] for g in generators]
    return in_integer_span(vectors, [x.coefficient(k) for k in basis])


@dataclass(frozen=True)
class AlkValue:
    """A class in bor0(B) / Indet, held as a representative and the preset it is read modulo."""
    representative: Bor0Elem
    preset: "IndetPreset"

    def __post_init__(self):
        for genus in {k.genus for k in self.representative.keys()}:
            self.preset.check_genus(genus)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlkValue):
            return NotImplemented
        if self.preset.name != other.preset.name:
            raise ResolutionMismatch(f"values read modulo different presets: {self.preset.name} vs {other.preset.name}")
        return span_contains(self.preset.generators, self.representative - other.representative)

    def __hash__(self):
        # equal values may have different representatives
        return hash(self.preset.name)

    def as_dict(self) -> dict:
        return {
            "representative": self.representative.as_list(),
            "epsilon": epsilon(self.representative),
            "preset": self.preset.name,
        }


def _frame_pair(frame) -> Tuple[PLLoop3, PLLoop3]:
    return (frame.l1, frame.l2)


def alk(link: Tuple[PLLoop3, PLLoop3], base: Tuple[PLLoop3, PLLoop3], movie: LinkMovie,
        preset: "IndetPreset", workers: int = 1) -> AlkValue:
    """alk(link) - alk(base), read through `movie` from base to link."""
    if _frame_pair(movie.start) != tuple(base):
        raise GenericityError("movie does not start at the base link")
    if _frame_pair(movie.end) != tuple(link):
        raise GenericityError("movie does not end at the link")
    preset.check_genus(movie.genus)
    return AlkValue(delta_alk(movie, workers=workers), preset)


def vg_second_derivative(movies: Sequence[LinkMovie]) -> Bor0Elem:
    """
    Alternating sum d(++) - d(+-) - d(-+) + d(--) over the four resolution
    movies of a configuration with two double points.
    """
    if len(movies) != 4:
        raise ResolutionMismatch(f"expected four resolution movies, got {len(movies)}")
    base = _frame_pair(movies[0].start)
    for m in movies[1:]:
        if _frame_pair(m.start) != base:
            raise ResolutionMismatch("resolution movies do not share a base link")
    pp, pm, mp, mm = (delta_alk(m) for m in movies)
    return pp - pm - mp + mm


def enumerate_distinct_bclasses(sample: Iterable[Union[CrossingEvent, BClass]]) -> int:
    seen = set()
    for item in sample:
        seen.add(item.bclass if isinstance(item, CrossingEvent) else item)
    log.debug("%d distinct classes", len(seen))
    return len(seen)


def events_to_list(events: List[CrossingEvent]) -> list:
    return [e.as_dict() for e in events]
