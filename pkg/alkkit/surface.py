# alkkit/surface.py
"""
Piecewise-linear loops drawn in the fundamental polygon, and their lifts to F_g x S^1.

A loop is a cyclic list of rational points. Segment i joins points[i] to
points[i+1]; it is either drawn (a straight chord of the polygon) or a jump:
points[i] lies on edge gates[i] and points[i+1] is its image on the partner
edge. Jumps have no length on the surface; they only record which edge was
crossed, so every word is read off the gates.
"""
from __future__ import annotations
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

from .errors import GenericityError, GroupError
from .polygon import FundamentalPolygon
from .utils import Point, cross2, get_context_logger, lerp2, sign_of, sub2
from .words import Elem3, Word, reduce

log = get_context_logger(step="geometry")

Gate = Optional[int]


@dataclass(frozen=True)
class PLLoop:
    polygon: FundamentalPolygon
    points: Tuple[Point, ...]
    gates: Tuple[Gate, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple((Fraction(x), Fraction(y)) for x, y in self.points))
        object.__setattr__(self, "gates", tuple(self.gates))
        self._validate()

    # -- construction ---------------------------------------------------

    @classmethod
    def from_points(cls, polygon: FundamentalPolygon, points: Sequence[Point], gates: Sequence[Gate] | None = None) -> "PLLoop":
        return cls(polygon, tuple(points), tuple(gates) if gates is not None else (None,) * len(points))

    @classmethod
    def trivial(cls, polygon: FundamentalPolygon, center: Point | None = None, radius: Fraction = Fraction(1, 8)) -> "PLLoop":
        """A small counterclockwise triangle; contractible."""
        cx, cy = center if center is not None else polygon.centroid()
        r = Fraction(radius)
        pts = ((cx + r, cy), (cx, cy + r), (cx - r, cy - r))
        return cls(polygon, pts, (None, None, None))

    @classmethod
    def from_word(cls, polygon: FundamentalPolygon, word: Word | str, params: Sequence[Fraction] | None = None) -> "PLLoop":
        """
        A loop in the free homotopy class of a cyclically reduced word: one chord
        per letter, entering where the previous letter left and exiting through
        the edge that reads the letter. `params[t]` is the exit position of
        letter t along its edge.
        """
        if isinstance(word, str):
            word = reduce(word, polygon.genus)
        if word.genus != polygon.genus:
            raise GroupError(f"genus mismatch: word of genus {word.genus}, polygon of genus {polygon.genus}")
        letters = list(word.letters)
        m = len(letters)
        if m == 0:
            return cls.trivial(polygon)
        if m > 1 and letters[0] == -letters[-1]:
            raise GroupError(f"word {word} is not cyclically reduced")
        if params is None:
            params = [Fraction(2 * t + 1, 2 * m) for t in range(m)]
        if len(params) != m or not all(0 < Fraction(s) < 1 for s in params):
            raise GroupError("from_word needs one exit parameter in (0, 1) per letter")
        edge_of = {polygon.letter(k): k for k in range(polygon.size)}
        exits = [edge_of[x] for x in letters]
        pts: List[Point] = []
        gates: List[Gate] = []
        for t in range(m):
            prev = exits[t - 1]
            entry = polygon.identify(prev, polygon.edge_point(prev, Fraction(params[t - 1])))
            exit_pt = polygon.edge_point(exits[t], Fraction(params[t]))
            pts.extend((entry, exit_pt))
            gates.extend((None, exits[t]))
        return cls(polygon, tuple(pts), tuple(gates))

    # -- validation -----------------------------------------------------

    def _validate(self):
        poly, pts, gates = self.polygon, self.points, self.gates
        n = len(pts)
        if n < 2 or len(gates) != n:
            raise GenericityError("a loop needs at least two points and one gate slot per point")
        if all(g is not None for g in gates):
            raise GenericityError("a loop needs at least one drawn segment")
        for i in range(n):
            p, g = pts[i], gates[i]
            if poly.is_corner(p):
                raise GenericityError("loop point on a polygon corner", where=i)
            if not poly.contains_closed(p):
                raise GenericityError("loop point outside the polygon", where=i)
            if g is not None:
                if gates[i - 1] is not None:
                    raise GenericityError("consecutive jumps", where=i)
                if not 0 <= g < poly.size:
                    raise GenericityError(f"gate {g} is not an edge", where=i)
                s = poly.edge_param(g, p)
                if s is None:
                    raise GenericityError(f"jump start is not on edge {g}", where=i)
                if pts[(i + 1) % n] != poly.identify(g, p):
                    raise GenericityError("jump end is not the identified point", where=i)
            elif gates[i - 1] is None and not poly.contains_open(p):
                raise GenericityError("loop point on a polygon edge without a jump", where=i)
        for i in self.drawn_segments():
            p, q = pts[i], pts[(i + 1) % n]
            if p == q:
                raise GenericityError("zero-length segment", where=i)
            shared = set(poly.edges_through(p)) & set(poly.edges_through(q))
            if shared:
                raise GenericityError("segment runs along a polygon edge", where=i)

    # -- access ---------------------------------------------------------

    @property
    def genus(self) -> int:
        return self.polygon.genus

    def __len__(self) -> int:
        return len(self.points)

    def segment(self, i: int) -> Tuple[Point, Point]:
        n = len(self.points)
        return self.points[i % n], self.points[(i + 1) % n]

    def drawn_segments(self) -> Iterator[int]:
        return (i for i, g in enumerate(self.gates) if g is None)

    def boundary_points(self) -> List[Tuple[int, Point]]:
        """(index, point) for every jump start; each surface edge point appears once."""
        return [(i, self.points[i]) for i, g in enumerate(self.gates) if g is not None]

    def with_points(self, points: Sequence[Point]) -> "PLLoop":
        return PLLoop(self.polygon, tuple(points), self.gates)


def word_of_loop(loop: PLLoop, basepoint: int = 0) -> Word:
    """Word read from points[basepoint] once around the loop."""
    n = len(loop.points)
    letters = []
    for k in range(n):
        g = loop.gates[(basepoint + k) % n]
        if g is not None:
            letters.append(loop.polygon.letter(g))
    return reduce(letters, loop.genus)


def refine(loop: PLLoop) -> PLLoop:
    """Barycentric subdivision of every drawn segment."""
    pts: List[Point] = []
    gates: List[Gate] = []
    for i, g in enumerate(loop.gates):
        p, q = loop.segment(i)
        pts.append(p)
        gates.append(g)
        if g is None:
            pts.append(lerp2(p, q, Fraction(1, 2)))
            gates.append(None)
    return PLLoop(loop.polygon, tuple(pts), tuple(gates))


# ---------------------------------------------------------------------------
# Torus lines
# ---------------------------------------------------------------------------

_TORUS_EDGE = {(1, 0): 3, (-1, 0): 1, (0, 1): 0, (0, -1): 2}


def _lattice_breaks(a: Fraction, b: Fraction) -> List[Fraction]:
    """Parameters in (0, 1] where a + t (b - a) is an integer."""
    d = b - a
    if d == 0:
        return []
    if d > 0:
        ks = range(math.floor(a) + 1, math.floor(b) + 1)
    else:
        ks = range(math.ceil(a) - 1, math.ceil(b) - 1, -1)
    return [(k - a) / d for k in ks]


def _fold_lift(polygon: FundamentalPolygon, lift: Sequence[Point]) -> PLLoop:
    pieces = []
    for A, B in zip(lift, lift[1:]):
        bx, by = _lattice_breaks(A[0], B[0]), _lattice_breaks(A[1], B[1])
        if set(bx) & set(by):
            raise GenericityError("torus line passes through the polygon corner", where=(A, B))
        cuts = sorted({Fraction(0), Fraction(1), *bx, *by})
        for ta, tb in zip(cuts, cuts[1:]):
            Xa, Xb = lerp2(A, B, ta), lerp2(A, B, tb)
            mid = lerp2(A, B, (ta + tb) / 2)
            cell = (math.floor(mid[0]), math.floor(mid[1]))
            pieces.append((Xa, Xb, cell))
    pts: List[Point] = []
    gates: List[Gate] = []
    prev_cell = None
    for Xa, Xb, cell in pieces:
        S = (Xa[0] - cell[0], Xa[1] - cell[1])
        E = (Xb[0] - cell[0], Xb[1] - cell[1])
        if prev_cell is None:
            pts.append(S)
        elif cell != prev_cell:
            step = (cell[0] - prev_cell[0], cell[1] - prev_cell[1])
            gates.append(_TORUS_EDGE[step])
            pts.append(S)
        gates.append(None)
        pts.append(E)
        prev_cell = cell
    if pts[-1] != pts[0]:
        raise GenericityError("torus line does not close up inside the square")
    pts.pop()
    return PLLoop(polygon, tuple(pts), tuple(gates))


def torus_line(p: int, q: int, start: Point | None = None, bend: Point | None = None) -> PLLoop:
    """
    Loop on the torus in the class (p, q): a lift from `start` to start + (p, q)
    folded into the unit square. Non-primitive classes get a bent lift through
    start + (p, q)/2 + bend so that the loop only has transverse self-crossings.
    """
    square = FundamentalPolygon.standard(1)
    if p == 0 and q == 0:
        return PLLoop.trivial(square, center=start)
    x0, y0 = start if start is not None else (Fraction(2, 7), Fraction(3, 11))
    x0, y0 = Fraction(x0), Fraction(y0)
    if x0.denominator == 1 or y0.denominator == 1:
        raise GenericityError("torus line must start inside the square", where=(x0, y0))
    if bend is None and math.gcd(p, q) > 1:
        c = Fraction(1, 3 * (p * p + q * q))
        bend = (-q * c, p * c)
    lift = [(x0, y0)]
    if bend is not None:
        lift.append((x0 + Fraction(p, 2) + Fraction(bend[0]), y0 + Fraction(q, 2) + Fraction(bend[1])))
    lift.append((x0 + p, y0 + q))
    return _fold_lift(square, lift)


# ---------------------------------------------------------------------------
# Intersections
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntersectionDatum:
    location: Point
    sign: int
    based_words: Tuple[Word, Word]
    segments: Tuple[int, int] = field(compare=False)
    params: Tuple[Fraction, Fraction] = field(compare=False)

    def swapped(self) -> "IntersectionDatum":
        return IntersectionDatum(self.location, -self.sign, self.based_words[::-1],
                                 self.segments[::-1], self.params[::-1])


def _segment_contact(P: Point, Q: Point, R: Point, S: Point):
    """
    Contact of closed segments PQ and RS: None, ("point", s, u) or ("overlap",).
    """
    d1, d2, w = sub2(Q, P), sub2(S, R), sub2(R, P)
    den = cross2(d1, d2)
    if den == 0:
        if cross2(d1, w) != 0:
            return None
        dd = d1[0] * d1[0] + d1[1] * d1[1]
        t0 = (w[0] * d1[0] + w[1] * d1[1]) / dd
        t1 = ((S[0] - P[0]) * d1[0] + (S[1] - P[1]) * d1[1]) / dd
        lo, hi = min(t0, t1), max(t0, t1)
        if hi < 0 or lo > 1:
            return None
        return ("overlap",)
    s = cross2(w, d2) / den
    u = cross2(w, d1) / den
    if 0 <= s <= 1 and 0 <= u <= 1:
        return ("point", s, u)
    return None


def _multiplicity(loop: PLLoop, X: Point) -> int:
    count = 0
    for i in loop.drawn_segments():
        P, Q = loop.segment(i)
        if cross2(sub2(Q, P), sub2(X, P)) == 0:
            lo_x, hi_x = sorted((P[0], Q[0]))
            lo_y, hi_y = sorted((P[1], Q[1]))
            if lo_x <= X[0] <= hi_x and lo_y <= X[1] <= hi_y and X != Q:
                count += 1
    return count


def intersections(l1: PLLoop, l2: PLLoop) -> List[IntersectionDatum]:
    """
    Signed transverse double points of two mutually generic loops, ordered along l1.
    Sign is the orientation of (tangent of l1, tangent of l2) against the
    counterclockwise polygon.
    """
    if l1.polygon != l2.polygon:
        raise GroupError("loops live on different polygons")
    poly = l1.polygon
    b1 = {p for _, p in l1.boundary_points()}
    b1 |= {poly.identify(l1.gates[i], p) for i, p in l1.boundary_points()}
    for j, p in l2.boundary_points():
        if p in b1:
            raise GenericityError("loops meet on a polygon edge", where=p)
    out = []
    for i in l1.drawn_segments():
        P, Q = l1.segment(i)
        for j in l2.drawn_segments():
            R, S = l2.segment(j)
            contact = _segment_contact(P, Q, R, S)
            if contact is None:
                continue
            if contact[0] == "overlap":
                raise GenericityError("overlapping collinear segments", where=(i, j))
            _, s, u = contact
            if s in (0, 1) or u in (0, 1):
                raise GenericityError("segments touch at an endpoint", where=(i, j))
            X = lerp2(P, Q, s)
            if _multiplicity(l1, X) > 1 or _multiplicity(l2, X) > 1:
                raise GenericityError("double point sits on a self-intersection", where=X)
            sign = sign_of(cross2(sub2(Q, P), sub2(S, R)))
            words = (word_of_loop(l1, i + 1), word_of_loop(l2, j + 1))
            out.append(IntersectionDatum(X, sign, words, (i, j), (s, u)))
    out.sort(key=lambda d: (d.segments[0], d.params[0]))
    log.debug("found %d intersections", len(out), extra={"genus": l1.genus})
    return out


def is_generic_pair(l1: PLLoop, l2: PLLoop) -> bool:
    try:
        intersections(l1, l2)
    except GenericityError:
        return False
    return True


# ---------------------------------------------------------------------------
# Perturbation
# ---------------------------------------------------------------------------

_GRID = 997


def _jitter(rng: random.Random, bound: Fraction) -> Fraction:
    return Fraction(rng.randint(-(_GRID - 1), _GRID - 1), _GRID) * bound


def _perturbed(loop: PLLoop, bound: Fraction, rng: random.Random) -> Optional[PLLoop]:
    poly = loop.polygon
    pts = list(loop.points)
    n = len(pts)
    for i in range(n):
        g = loop.gates[i]
        if g is not None:
            # slide both copies of an edge point along the edge; the edge length is at most 2
            s = poly.edge_param(g, pts[i]) + _jitter(rng, bound) / 2
            if not 0 < s < 1:
                return None
            pts[i] = poly.edge_point(g, s)
            pts[(i + 1) % n] = poly.identify(g, pts[i])
        elif loop.gates[i - 1] is None:
            p = (pts[i][0] + _jitter(rng, bound) / 2, pts[i][1] + _jitter(rng, bound) / 2)
            if not poly.contains_open(p):
                return None
            pts[i] = p
    try:
        return loop.with_points(pts)
    except GenericityError:
        return None


def perturb_to_generic(l1: PLLoop, l2: PLLoop | None = None, bound: Fraction = Fraction(1, 50),
                       seed: int = 0, attempts: int = 64, force: bool = False):
    """
    Move vertices by less than `bound` until the loop (or pair) is generic.
    Generic input comes back unchanged unless `force` is set. Raises
    GenericityError when no attempt succeeds.
    """
    bound = Fraction(bound)
    if bound <= 0:
        raise GenericityError("perturbation bound must be positive")
    rng = random.Random(seed)
    if l2 is None:
        if not force:
            return l1
        for _ in range(attempts):
            cand = _perturbed(l1, bound, rng)
            if cand is not None:
                return cand
        raise GenericityError(f"no generic perturbation within {bound}")
    if not force and is_generic_pair(l1, l2):
        return l1, l2
    for _ in range(attempts):
        c1 = _perturbed(l1, bound, rng)
        c2 = _perturbed(l2, bound, rng)
        if c1 is not None and c2 is not None and is_generic_pair(c1, c2):
            return c1, c2
    log.warning("perturbation failed after %d attempts", attempts, extra={"genus": l1.genus})
    raise GenericityError(f"no generic perturbation within {bound}")


# ---------------------------------------------------------------------------
# Loops in F_g x S^1
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PLLoop3:
    """
    A loop in F_g x S^1: the base loop plus a lifted circle coordinate per point.
    Segment i climbs from heights[i] to heights[i+1]; the closing segment ends
    at heights[0] + winding. The circle coordinate is height mod 1.
    """
    base: PLLoop
    heights: Tuple[Fraction, ...]
    winding: int = 0

    def __post_init__(self):
        object.__setattr__(self, "heights", tuple(Fraction(h) for h in self.heights))
        n = len(self.base.points)
        if len(self.heights) != n:
            raise GenericityError("one height per loop point is required")
        for i, g in enumerate(self.base.gates):
            if g is not None and self.height_end(i) != self.heights[i]:
                raise GenericityError("height jumps across a polygon edge", where=i)

    @classmethod
    def flat(cls, base: PLLoop, height: Fraction = Fraction(0)) -> "PLLoop3":
        return cls(base, (Fraction(height),) * len(base.points), 0)

    @property
    def genus(self) -> int:
        return self.base.genus

    def height_end(self, i: int) -> Fraction:
        n = len(self.heights)
        return self.heights[i + 1] if i + 1 < n else self.heights[0] + self.winding

    def height_at(self, i: int, s: Fraction) -> Fraction:
        h0 = self.heights[i]
        return h0 + s * (self.height_end(i) - h0)

    def elem3(self, basepoint: int = 0) -> Elem3:
        return Elem3(word_of_loop(self.base, basepoint), self.winding)

    def shifted(self, dh: Fraction) -> "PLLoop3":
        return PLLoop3(self.base, tuple(h + dh for h in self.heights), self.winding)


def jitter_loop3(loop: PLLoop3, bound: Fraction, rng: random.Random) -> Optional[PLLoop3]:
    """One random move of every point and height by less than `bound`; None if it leaves the polygon."""
    base = _perturbed(loop.base, Fraction(bound), rng)
    if base is None:
        return None
    heights = [h + _jitter(rng, Fraction(bound)) for h in loop.heights]
    n = len(heights)
    for i, g in enumerate(loop.base.gates):
        if g is None:
            continue
        # both ends of a jump sit at one height
        if i + 1 < n:
            heights[i + 1] = heights[i]
        else:
            heights[i] = heights[0] + loop.winding
    return PLLoop3(base, tuple(heights), loop.winding)


def _integer_between(a: Fraction, b: Fraction) -> bool:
    lo, hi = min(a, b), max(a, b)
    return math.floor(hi) >= math.ceil(lo)


def link_disjoint(l1: PLLoop3, l2: PLLoop3) -> bool:
    """True iff the two loops are disjoint in F_g x S^1."""
    poly = l1.base.polygon
    if poly != l2.base.polygon:
        raise GroupError("loops live on different polygons")
    for i, p in l1.base.boundary_points():
        copies = {p, poly.identify(l1.base.gates[i], p)}
        for j, q in l2.base.boundary_points():
            if q in copies and (l1.heights[i] - l2.heights[j]).denominator == 1:
                return False
    for i in l1.base.drawn_segments():
        P, Q = l1.base.segment(i)
        for j in l2.base.drawn_segments():
            R, S = l2.base.segment(j)
            contact = _segment_contact(P, Q, R, S)
            if contact is None:
                continue
            if contact[0] == "point":
                _, s, u = contact
                if (l1.height_at(i, s) - l2.height_at(j, u)).denominator == 1:
                    return False
                continue
            # collinear overlap: height difference is affine along the shared stretch
            d1 = sub2(Q, P)
            dd = d1[0] * d1[0] + d1[1] * d1[1]
            t_r = ((R[0] - P[0]) * d1[0] + (R[1] - P[1]) * d1[1]) / dd
            t_s = ((S[0] - P[0]) * d1[0] + (S[1] - P[1]) * d1[1]) / dd
            lo, hi = max(Fraction(0), min(t_r, t_s)), min(Fraction(1), max(t_r, t_s))

            def diff(t: Fraction) -> Fraction:
                u = (t - t_r) / (t_s - t_r)
                return l1.height_at(i, t) - l2.height_at(j, u)

            if _integer_between(diff(lo), diff(hi)):
                return False
    return True
