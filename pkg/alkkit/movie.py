# alkkit/movie.py
"""
Keyframed link homotopies in F_g x S^1.

Between keyframes every point and height moves on a straight line. Jump
structure and fiber windings are fixed per component, so each component keeps
its free homotopy class. Within one interval at most one component moves;
`staggered` splits intervals where both do.
"""
from __future__ import annotations
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .errors import GenericityError
from .surface import PLLoop3, jitter_loop3, link_disjoint
from .utils import lerp2


@dataclass(frozen=True)
class Keyframe:
    t: Fraction
    l1: PLLoop3
    l2: PLLoop3

    def component(self, which: int) -> PLLoop3:
        return self.l1 if which == 1 else self.l2


def _same_shape(a: PLLoop3, b: PLLoop3) -> bool:
    return (a.base.polygon == b.base.polygon and a.base.gates == b.base.gates
            and a.winding == b.winding)


def _shift_of(a: PLLoop3, b: PLLoop3):
    """Integer n with b = a shifted by n in height, or None."""
    if a.base != b.base:
        return None
    diffs = {hb - ha for ha, hb in zip(a.heights, b.heights)}
    if len(diffs) != 1:
        return None
    d = diffs.pop()
    return int(d) if d.denominator == 1 else None


def _interpolate(a: PLLoop3, b: PLLoop3, s: Fraction) -> PLLoop3:
    if a == b:
        return a
    pts = tuple(lerp2(p, q, s) for p, q in zip(a.base.points, b.base.points))
    heights = tuple(ha + s * (hb - ha) for ha, hb in zip(a.heights, b.heights))
    return PLLoop3(a.base.with_points(pts), heights, a.winding)


@dataclass(frozen=True)
class LinkMovie:
    keyframes: Tuple[Keyframe, ...]

    def __post_init__(self):
        frames = tuple(self.keyframes)
        object.__setattr__(self, "keyframes", frames)
        if not frames:
            raise GenericityError("a movie needs at least one keyframe")
        first = frames[0]
        if first.l1.genus != first.l2.genus:
            raise GenericityError("components live on different surfaces")
        for idx, kf in enumerate(frames):
            if not (_same_shape(kf.l1, first.l1) and _same_shape(kf.l2, first.l2)):
                raise GenericityError("keyframes change jump structure or winding", where=idx)
            if idx and kf.t <= frames[idx - 1].t:
                raise GenericityError("keyframe times must increase", where=idx)

    @classmethod
    def from_frames(cls, frames: Sequence[Tuple[Fraction, PLLoop3, PLLoop3]]) -> "LinkMovie":
        return cls(tuple(Keyframe(Fraction(t), l1, l2) for t, l1, l2 in frames))

    @property
    def genus(self) -> int:
        return self.keyframes[0].l1.genus

    @property
    def start(self) -> Keyframe:
        return self.keyframes[0]

    @property
    def end(self) -> Keyframe:
        return self.keyframes[-1]

    def intervals(self) -> List[Tuple[Keyframe, Keyframe]]:
        return list(zip(self.keyframes, self.keyframes[1:]))

    def moving(self, idx: int) -> Tuple[bool, bool]:
        a, b = self.keyframes[idx], self.keyframes[idx + 1]
        return (a.l1 != b.l1, a.l2 != b.l2)

    def staggered(self) -> "LinkMovie":
        """Split every interval where both components move: first l1, then l2."""
        frames = [self.keyframes[0]]
        for idx, (a, b) in enumerate(self.intervals()):
            m1, m2 = self.moving(idx)
            if m1 and m2:
                frames.append(Keyframe((a.t + b.t) / 2, b.l1, a.l2))
            frames.append(b)
        return LinkMovie(tuple(frames))

    def jittered(self, bound: Fraction = Fraction(1, 50), seed: int = 0, attempts: int = 64) -> "LinkMovie":
        """
        Move the interior keyframes by less than `bound` (points and heights),
        keeping both endpoints. The result is staggered, since a jittered
        keyframe usually moves both components.
        """
        bound = Fraction(bound)
        if bound <= 0:
            raise GenericityError("jitter bound must be positive")
        rng = random.Random(seed)
        frames = [self.keyframes[0]]
        for idx, kf in enumerate(self.keyframes[1:-1], start=1):
            for _ in range(attempts):
                c1 = jitter_loop3(kf.l1, bound, rng)
                c2 = jitter_loop3(kf.l2, bound, rng)
                if c1 is not None and c2 is not None:
                    break
            else:
                raise GenericityError(f"no valid jitter within {bound}", where=idx)
            frames.append(Keyframe(kf.t, c1, c2))
        if len(self.keyframes) > 1:
            frames.append(self.keyframes[-1])
        return LinkMovie(tuple(frames)).staggered()

    def reversed(self) -> "LinkMovie":
        return LinkMovie(tuple(Keyframe(-kf.t, kf.l1, kf.l2) for kf in reversed(self.keyframes)))

    def concat(self, other: "LinkMovie") -> "LinkMovie":
        if (self.end.l1, self.end.l2) != (other.start.l1, other.start.l2):
            raise GenericityError("movies do not meet: last frame differs from the next first frame")
        dt = self.end.t - other.start.t
        tail = [Keyframe(kf.t + dt, kf.l1, kf.l2) for kf in other.keyframes[1:]]
        return LinkMovie(self.keyframes + tuple(tail))

    def frame_at(self, t: Fraction) -> Tuple[PLLoop3, PLLoop3]:
        """The link at time t (clamped to the movie's time span)."""
        t = Fraction(t)
        frames = self.keyframes
        if t <= frames[0].t:
            return frames[0].l1, frames[0].l2
        for a, b in self.intervals():
            if t <= b.t:
                s = (t - a.t) / (b.t - a.t)
                return _interpolate(a.l1, b.l1, s), _interpolate(a.l2, b.l2, s)
        return frames[-1].l1, frames[-1].l2

    def check_endpoints(self):
        for kf in (self.start, self.end):
            if not link_disjoint(kf.l1, kf.l2):
                raise GenericityError("movie endpoint is not a link (components meet)", where=str(kf.t))

    def is_closed(self) -> bool:
        """Last frame equals the first as a map; heights may differ by an integer per component."""
        return (_shift_of(self.start.l1, self.end.l1) is not None
                and _shift_of(self.start.l2, self.end.l2) is not None)
