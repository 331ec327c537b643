# alkkit/obstruct.py
"""
Disjunction obstruction for curve pairs on F_g, and affine winding numbers.

mu00 counts the double points of two curves with sign and point class (the
two loops read from the double point, up to simultaneous conjugation).
A nonzero value forbids disjoint representatives. Zero is only a necessary
condition for curves on surfaces.
"""
from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

import sympy

from .bordism import BClass, Bor0Elem
from .errors import GenericityError
from .surface import PLLoop, intersections, is_generic_pair, perturb_to_generic
from .sweep import TAU, at_root, exact_sign, linear_path
from .utils import Point, get_context_logger

log = get_context_logger(step="obstruct")

NECESSARY_ONLY = (
    "mu00 = 0 is necessary for disjoint representatives; for curves on a surface it is "
    "not claimed to be sufficient"
)


def mu00(l1: PLLoop, l2: PLLoop, perturb: bool = True, seed: int = 0) -> Bor0Elem:
    """Sum over double points of sign * (based word pair) with fibers 0."""
    if perturb and not is_generic_pair(l1, l2):
        l1, l2 = perturb_to_generic(l1, l2, seed=seed)
    return Bor0Elem([(BClass.of_words(*d.based_words), d.sign) for d in intersections(l1, l2)])


@dataclass(frozen=True)
class DisjunctionVerdict:
    status: str
    mu00: Bor0Elem
    disjoint_witness: bool
    note: str = NECESSARY_ONLY

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "mu00": self.mu00.as_list(),
            "disjoint_representatives_exhibited": self.disjoint_witness,
            "note": self.note,
        }


def disjointable_necessary(l1: PLLoop, l2: PLLoop) -> DisjunctionVerdict:
    value = mu00(l1, l2)
    witness = is_generic_pair(l1, l2) and not intersections(l1, l2)
    status = "obstructed" if value else "unobstructed"
    log.info("disjunction test: %s", status, extra={"genus": l1.genus})
    return DisjunctionVerdict(status, value, witness)


# ---------------------------------------------------------------------------
# Winding numbers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PointFrame:
    t: Fraction
    loop: PLLoop
    point: Point


@dataclass(frozen=True)
class PointMovie:
    """
    A loop and a point in F_g, both moving linearly between keyframes.

    The point stays in the open polygon for the whole movie, so it never
    crosses an identified edge. A motion that would carry it across an edge
    is written with the loop moving the opposite way instead; only the
    relative motion enters the winding number.
    """
    keyframes: Tuple[PointFrame, ...]

    def __post_init__(self):
        frames = tuple(self.keyframes)
        object.__setattr__(self, "keyframes", frames)
        if not frames:
            raise GenericityError("a point movie needs at least one keyframe")
        first = frames[0]
        for idx, kf in enumerate(frames):
            if kf.loop.gates != first.loop.gates or kf.loop.polygon != first.loop.polygon:
                raise GenericityError("keyframes change jump structure", where=idx)
            if not kf.loop.polygon.contains_open(kf.point):
                raise GenericityError("point must stay inside the polygon", where=idx)
            if idx and kf.t <= frames[idx - 1].t:
                raise GenericityError("keyframe times must increase", where=idx)
        for kf in (frames[0], frames[-1]):
            if _point_on_loop(kf.loop, kf.point):
                raise GenericityError("movie endpoint has the point on the loop", where=str(kf.t))

    @classmethod
    def from_frames(cls, frames: Sequence[Tuple[Fraction, PLLoop, Point]]) -> "PointMovie":
        return cls(tuple(PointFrame(Fraction(t), loop, (Fraction(p[0]), Fraction(p[1]))) for t, loop, p in frames))

    def reversed(self) -> "PointMovie":
        return PointMovie(tuple(PointFrame(-kf.t, kf.loop, kf.point) for kf in reversed(self.keyframes)))

    def concat(self, other: "PointMovie") -> "PointMovie":
        a, b = self.keyframes[-1], other.keyframes[0]
        if (a.loop, a.point) != (b.loop, b.point):
            raise GenericityError("point movies do not meet")
        dt = a.t - b.t
        return PointMovie(self.keyframes + tuple(PointFrame(kf.t + dt, kf.loop, kf.point) for kf in other.keyframes[1:]))


def _point_on_loop(loop: PLLoop, X: Point) -> bool:
    for i in loop.drawn_segments():
        P, Q = loop.segment(i)
        d = (Q[0] - P[0], Q[1] - P[1])
        w = (X[0] - P[0], X[1] - P[1])
        if d[0] * w[1] - d[1] * w[0] == 0:
            dot = d[0] * w[0] + d[1] * w[1]
            if 0 <= dot <= d[0] * d[0] + d[1] * d[1]:
                return True
    return False


def _interval_passages(idx: int, a: PointFrame, b: PointFrame) -> List[Tuple[sympy.Expr, int]]:
    X = tuple(linear_path(a.point[c], b.point[c]) for c in range(2))
    found = []
    for i in a.loop.drawn_segments():
        Pa, Qa = a.loop.segment(i)
        Pb, Qb = b.loop.segment(i)
        P = tuple(linear_path(Pa[c], Pb[c]) for c in range(2))
        Q = tuple(linear_path(Qa[c], Qb[c]) for c in range(2))
        d = tuple(sympy.expand(Q[c] - P[c]) for c in range(2))
        w = tuple(sympy.expand(X[c] - P[c]) for c in range(2))
        C = sympy.expand(d[0] * w[1] - d[1] * w[0])
        dot = sympy.expand(d[0] * w[0] + d[1] * w[1])
        nn = sympy.expand(d[0] ** 2 + d[1] ** 2)
        where, interval = i, (str(a.t), str(b.t))
        if C == 0:
            if any(exact_sign(at_root(dot, r)) >= 0 and exact_sign(at_root(nn - dot, r)) >= 0
                   for r in (sympy.Integer(0), sympy.Rational(1, 2), sympy.Integer(1))):
                raise GenericityError("point travels along the loop", where=where, interval=interval)
            continue
        roots = sympy.Poly(C, TAU).real_roots()
        for n, r in enumerate(roots):
            if n and roots[n - 1] == r:
                continue
            if exact_sign(r) < 0 or exact_sign(r - 1) > 0:
                continue
            s_num, s_den = at_root(dot, r), at_root(nn, r)
            lo, hi = exact_sign(s_num), exact_sign(s_den - s_num)
            if lo < 0 or hi < 0:
                continue
            if lo == 0 or hi == 0:
                raise GenericityError("point passes through a loop vertex", where=where, interval=interval)
            if exact_sign(r) == 0 or exact_sign(r - 1) == 0:
                raise GenericityError("passage at a keyframe time", where=where, interval=interval)
            if roots.count(r) > 1:
                raise GenericityError("tangential passage", where=where, interval=interval)
            # nn times (loop point velocity minus point velocity)
            dP = [sympy.diff(P[c], TAU) for c in range(2)]
            dd = [sympy.diff(d[c], TAU) for c in range(2)]
            dX = [sympy.diff(X[c], TAU) for c in range(2)]
            V = [nn * (dP[c] - dX[c]) + dot * dd[c] for c in range(2)]
            sign = exact_sign(at_root(d[0] * V[1] - d[1] * V[0], r))
            if sign == 0:
                raise GenericityError("passage is not transverse", where=where, interval=interval)
            found.append((r, sign))
    found.sort(key=lambda item: sympy.N(item[0], 50))
    for (r1, _), (r2, _) in zip(found, found[1:]):
        if sympy.expand(r1 - r2) == 0:
            raise GenericityError("two passages at the same moment", interval=(str(a.t), str(b.t)))
    return found


def passages(movie: PointMovie) -> List[int]:
    """Signs of the passages of the loop across the point, in time order."""
    out: List[int] = []
    for idx, (a, b) in enumerate(zip(movie.keyframes, movie.keyframes[1:])):
        out.extend(sign for _, sign in _interval_passages(idx, a, b))
    return out


def winding(movie: PointMovie) -> int:
    """
    Signed count of passages. A passage counts sign det[t | v], t the loop
    tangent and v the loop velocity minus the point velocity: a loop with
    tangent (1, 0) moving up across a fixed point counts +1.
    """
    return sum(passages(movie))
