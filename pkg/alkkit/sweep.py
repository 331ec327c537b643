# alkkit/sweep.py
"""
Exact detection of the moments a link homotopy passes through a double point.

On one keyframe interval, with time rescaled to tau in [0, 1], take a drawn
segment PQ of l1 and RS of l2. Their plane projections meet at
P + s (Q - P) = R + u (S - R) with D s = Ns and D u = Nu, where

    D = cross(Q - P, S - R),  Ns = cross(R - P, S - R),  Nu = cross(R - P, Q - P).

The lifted heights meet modulo 1 when, for some integer k,

    F_k = D (hP - hR - k) + Ns (hQ - hP) - Nu (hS - hR) = 0.

Only one component moves per interval, so F_k has degree at most 2 in tau and
its roots are exact quadratic surds. Every sign below is decided on those
radicals symbolically.

Sign of an event: sign det[t1 | v | t2] with t1, t2 the tangents of l1, l2 in
(x, y, height) coordinates and v = dz1/dt - dz2/dt the relative velocity of the
two colliding points. It is computed as sign(det[t1 | D v | t2]) * sign(D).
"""
from __future__ import annotations
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import sympy

from .bordism import BClass
from .errors import GenericityError
from .movie import Keyframe, LinkMovie
from .surface import PLLoop3, word_of_loop
from .utils import fraction_pair, get_context_logger
from .words import Elem3

log = get_context_logger(step="crossings")

TAU = sympy.Symbol("tau", real=True)

Vec = Tuple[sympy.Expr, ...]


def as_rational(x: Fraction) -> sympy.Rational:
    x = Fraction(x)
    return sympy.Rational(x.numerator, x.denominator)


def linear_path(a: Fraction, b: Fraction) -> sympy.Expr:
    return as_rational(a) + TAU * (as_rational(b) - as_rational(a))


def _cross(u: Vec, v: Vec) -> sympy.Expr:
    return sympy.expand(u[0] * v[1] - u[1] * v[0])


def _triple(a: Vec, b: Vec, c: Vec) -> sympy.Expr:
    """det of the matrix with columns a, b, c."""
    return sympy.expand(
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def exact_sign(expr: sympy.Expr) -> int:
    value = sympy.sign(sympy.expand(expr))
    if value not in (-1, 0, 1):
        value = sympy.sign(sympy.nsimplify(sympy.radsimp(expr)))
    return int(value)


def at_root(expr: sympy.Expr, r: sympy.Expr) -> sympy.Expr:
    return sympy.expand(expr.subs(TAU, r))


@dataclass(frozen=True)
class _MovingSegment:
    """Segment endpoints (x, y, h) as linear functions of tau."""
    start: Vec
    end: Vec
    box: Tuple[Fraction, Fraction, Fraction, Fraction]
    heights: Tuple[Fraction, Fraction]


def _moving_segment(a: PLLoop3, b: PLLoop3, i: int) -> _MovingSegment:
    Pa, Qa = a.base.segment(i)
    Pb, Qb = b.base.segment(i)
    ha = (a.heights[i], a.height_end(i))
    hb = (b.heights[i], b.height_end(i))
    start = (linear_path(Pa[0], Pb[0]), linear_path(Pa[1], Pb[1]), linear_path(ha[0], hb[0]))
    end = (linear_path(Qa[0], Qb[0]), linear_path(Qa[1], Qb[1]), linear_path(ha[1], hb[1]))
    xs = [Pa[0], Pb[0], Qa[0], Qb[0]]
    ys = [Pa[1], Pb[1], Qa[1], Qb[1]]
    hs = [*ha, *hb]
    return _MovingSegment(start, end, (min(xs), max(xs), min(ys), max(ys)), (min(hs), max(hs)))


def _boxes_meet(b1, b2) -> bool:
    return b1[0] <= b2[1] and b2[0] <= b1[1] and b1[2] <= b2[3] and b2[2] <= b1[3]


@dataclass(frozen=True)
class AlgebraicTime:
    """A crossing time: root `root` (ascending, in [0, 1]) of `poly` in tau on a keyframe interval."""
    interval: int
    t0: Fraction
    t1: Fraction
    poly: Tuple[Fraction, ...]
    root: int
    tau: sympy.Expr = field(compare=False)

    @property
    def value(self) -> sympy.Expr:
        return sympy.expand(as_rational(self.t0) + self.tau * (as_rational(self.t1) - as_rational(self.t0)))

    def as_dict(self) -> dict:
        return {
            "interval": self.interval,
            "keyframes": [fraction_pair(self.t0), fraction_pair(self.t1)],
            "poly": [fraction_pair(c) for c in self.poly],
            "root": self.root,
            "value": str(self.value),
        }


@dataclass(frozen=True)
class CrossingEvent:
    time: AlgebraicTime
    location: Tuple[sympy.Expr, sympy.Expr, sympy.Expr]
    sign: int
    bclass: BClass
    segments: Tuple[int, int]

    def as_dict(self) -> dict:
        return {
            "time": self.time.as_dict(),
            "location": [str(c) for c in self.location],
            "sign": self.sign,
            "class": str(self.bclass),
            "search": self.bclass.search_dict(),
            "segments": list(self.segments),
        }


def _poly_coeffs(poly: sympy.Poly) -> Tuple[Fraction, ...]:
    out = []
    for c in poly.all_coeffs():
        c = sympy.Rational(c)
        out.append(Fraction(int(c.p), int(c.q)))
    return tuple(out)


def _may_vanish_on_unit(coeffs: Tuple[Fraction, ...]) -> bool:
    """Exact test for a root of a polynomial of degree at most 2 in [0, 1]; coefficients highest first."""
    c = (Fraction(0),) * (3 - len(coeffs)) + tuple(coeffs)
    a, b, c0 = c
    f0, f1 = c0, a + b + c0
    if f0 == 0 or f1 == 0 or (f0 > 0) != (f1 > 0):
        return True
    if a == 0:
        return False
    vertex = -b / (2 * a)
    if not 0 < vertex < 1:
        return False
    return b * b - 4 * a * c0 >= 0


def _in_open_unit(num: sympy.Expr, den_sign: int, den: sympy.Expr) -> Optional[bool]:
    """
    True when num/den lies in (0, 1), False when outside [0, 1], None on the boundary.
    """
    a = exact_sign(num) * den_sign
    b = exact_sign(den - num) * den_sign
    if a == 0 or b == 0:
        return None
    return a > 0 and b > 0


def _segment_pair_events(idx: int, kf_a: Keyframe, kf_b: Keyframe, i: int, j: int,
                         seg1: _MovingSegment, seg2: _MovingSegment,
                         l1: PLLoop3, l2: PLLoop3) -> List[Tuple[sympy.Expr, CrossingEvent]]:
    P, Q = seg1.start, seg1.end
    R, S = seg2.start, seg2.end
    d1 = tuple(sympy.expand(Q[c] - P[c]) for c in range(3))
    d2 = tuple(sympy.expand(S[c] - R[c]) for c in range(3))
    w = tuple(sympy.expand(R[c] - P[c]) for c in range(2))
    D = _cross(d1, d2)
    Ns = _cross(w, d2)
    Nu = _cross(w, d1)
    where = (i, j)
    interval = (str(kf_a.t), str(kf_b.t))

    if D == 0:
        _reject_parallel_contact(Nu, P, Q, R, S, where, interval)
        return []

    lo = seg1.heights[0] - seg2.heights[1]
    hi = seg1.heights[1] - seg2.heights[0]
    events = []
    for k in range(math.floor(lo), math.ceil(hi) + 1):
        F = sympy.expand(D * (P[2] - R[2] - k) + Ns * d1[2] - Nu * d2[2])
        if F == 0:
            if _xy_meets_during(D, Ns, Nu):
                raise GenericityError("components overlap along a whole time span", where=where, interval=interval)
            continue
        poly = sympy.Poly(F, TAU)
        if not _may_vanish_on_unit(_poly_coeffs(poly)):
            continue
        roots = poly.real_roots()
        for n, r in enumerate(roots):
            if roots.count(r) > 1 and n != roots.index(r):
                continue
            if exact_sign(r) < 0 or exact_sign(r - 1) > 0:
                continue
            Dr = at_root(D, r)
            dsign = exact_sign(Dr)
            if dsign == 0:
                if at_root(Nu, r) == 0:
                    raise GenericityError("collinear segments at a crossing time", where=where, interval=interval)
                continue
            inside_s = _in_open_unit(at_root(Ns, r), dsign, Dr)
            inside_u = _in_open_unit(at_root(Nu, r), dsign, Dr)
            if inside_s is False or inside_u is False:
                continue
            if inside_s is None or inside_u is None:
                raise GenericityError("double point passes through a loop vertex", where=where, interval=interval)
            if exact_sign(r) == 0 or exact_sign(r - 1) == 0:
                raise GenericityError("double point at a keyframe time", where=where, interval=interval)
            if roots.count(r) > 1:
                raise GenericityError("tangential contact (double root)", where=where, interval=interval)
            sign = _event_sign(r, D, Ns, Nu, P, d1, R, d2, dsign)
            if sign == 0:
                raise GenericityError("crossing is not transverse (zero determinant)", where=where, interval=interval)
            s_val = sympy.expand(at_root(Ns, r) / Dr)
            location = tuple(sympy.radsimp(at_root(P[c] + s_val * d1[c], r)) for c in range(3))
            location = (location[0], location[1], location[2] - sympy.floor(location[2]))
            b1 = Elem3(word_of_loop(l1.base, i + 1), l1.winding)
            b2 = Elem3(word_of_loop(l2.base, j + 1), l2.winding)
            time = AlgebraicTime(idx, kf_a.t, kf_b.t, _poly_coeffs(poly), n, r)
            events.append((r, CrossingEvent(time, location, sign, BClass.of(b1, b2), (i, j))))
    return events


def _event_sign(r, D, Ns, Nu, P, d1, R, d2, dsign) -> int:
    dP = [sympy.diff(P[c], TAU) for c in range(3)]
    dd1 = [sympy.diff(d1[c], TAU) for c in range(3)]
    dR = [sympy.diff(R[c], TAU) for c in range(3)]
    dd2 = [sympy.diff(d2[c], TAU) for c in range(3)]
    # D times the relative velocity at fixed segment parameters
    V = tuple(D * dP[c] + Ns * dd1[c] - D * dR[c] - Nu * dd2[c] for c in range(3))
    det = _triple(d1, V, d2)
    return exact_sign(at_root(det, r)) * dsign


def _critical_points(polys: Sequence[sympy.Expr]) -> List[sympy.Expr]:
    pts = {sympy.Integer(0), sympy.Integer(1)}
    for p in polys:
        p = sympy.expand(p)
        if p.free_symbols:
            for r in sympy.Poly(p, TAU).real_roots():
                if exact_sign(r) >= 0 and exact_sign(r - 1) <= 0:
                    pts.add(r)
    ordered = sorted(pts, key=lambda e: sympy.N(e, 50))
    out = ordered[:1]
    for r in ordered[1:]:
        if sympy.expand(r - out[-1]) != 0:
            out.append(r)
    return out


def _rational_between(a: sympy.Expr, b: sympy.Expr) -> sympy.Rational:
    for prec in (30, 60, 120):
        mid = sympy.Rational(str(sympy.N((a + b) / 2, prec)))
        if exact_sign(mid - a) > 0 and exact_sign(b - mid) > 0:
            return mid
    raise GenericityError("cannot separate critical times")


def _xy_meets_during(D, Ns, Nu) -> bool:
    """Whether the projected segments meet (closed) at some tau in [0, 1]."""
    crit = _critical_points([D, Ns, Nu, D - Ns, D - Nu])
    probes = list(crit) + [_rational_between(a, b) for a, b in zip(crit, crit[1:])]
    for r in probes:
        Dr = at_root(D, r)
        ds = exact_sign(Dr)
        if ds == 0:
            continue
        ns, nu = at_root(Ns, r), at_root(Nu, r)
        if exact_sign(ns) * ds >= 0 and exact_sign(Dr - ns) * ds >= 0 and exact_sign(nu) * ds >= 0 and exact_sign(Dr - nu) * ds >= 0:
            return True
    return False


def _integer_in(a: sympy.Expr, b: sympy.Expr) -> bool:
    lo, hi = sorted((a, b), key=lambda e: sympy.N(e, 50))
    return sympy.floor(hi) >= sympy.ceiling(lo)


def _reject_parallel_contact(Nu, P, Q, R, S, where, interval):
    """
    Projections stay parallel for the whole interval. They can only collide
    while collinear; reject when the shared stretch carries equal circle
    coordinates.
    """
    if Nu == 0:
        # collinear throughout: sampled, the collision set would be a surface
        times = [sympy.Integer(0), sympy.Rational(1, 2), sympy.Integer(1)]
    else:
        times = [r for r in sympy.Poly(Nu, TAU).real_roots() if exact_sign(r) >= 0 and exact_sign(r - 1) <= 0]
    for r in times:
        p = [at_root(P[c], r) for c in range(3)]
        q = [at_root(Q[c], r) for c in range(3)]
        a = [at_root(R[c], r) for c in range(3)]
        b = [at_root(S[c], r) for c in range(3)]
        d = [q[0] - p[0], q[1] - p[1]]
        dd = sympy.expand(d[0] ** 2 + d[1] ** 2)
        ta = sympy.expand(((a[0] - p[0]) * d[0] + (a[1] - p[1]) * d[1]) / dd)
        tb = sympy.expand(((b[0] - p[0]) * d[0] + (b[1] - p[1]) * d[1]) / dd)
        lo = max(sympy.Integer(0), min(ta, tb, key=lambda e: sympy.N(e, 50)), key=lambda e: sympy.N(e, 50))
        hi = min(sympy.Integer(1), max(ta, tb, key=lambda e: sympy.N(e, 50)), key=lambda e: sympy.N(e, 50))
        if exact_sign(hi - lo) < 0:
            continue
        if Nu == 0:
            raise GenericityError("projections overlap on a common line", where=where, interval=interval)

        def diff(t):
            u = (t - ta) / (tb - ta)
            return sympy.expand(p[2] + t * (q[2] - p[2]) - a[2] - u * (b[2] - a[2]))

        if _integer_in(diff(lo), diff(hi)):
            raise GenericityError("parallel segments collide along a common line", where=where, interval=interval)


def _interval_events(movie: LinkMovie, idx: int) -> List[CrossingEvent]:
    kf_a, kf_b = movie.keyframes[idx], movie.keyframes[idx + 1]
    m1, m2 = movie.moving(idx)
    if not (m1 or m2):
        return []
    if m1 and m2:
        raise GenericityError("both components move in one interval; use LinkMovie.staggered()",
                              interval=(str(kf_a.t), str(kf_b.t)))
    l1, l2 = kf_a.l1, kf_a.l2
    segs1 = {i: _moving_segment(kf_a.l1, kf_b.l1, i) for i in l1.base.drawn_segments()}
    segs2 = {j: _moving_segment(kf_a.l2, kf_b.l2, j) for j in l2.base.drawn_segments()}
    found: List[Tuple[sympy.Expr, CrossingEvent]] = []
    for i, s1 in segs1.items():
        for j, s2 in segs2.items():
            if _boxes_meet(s1.box, s2.box):
                found.extend(_segment_pair_events(idx, kf_a, kf_b, i, j, s1, s2, l1, l2))
    found.sort(key=lambda item: sympy.N(item[0], 50))
    for (r1, e1), (r2, e2) in zip(found, found[1:]):
        if sympy.expand(r1 - r2) == 0:
            raise GenericityError("two double points at the same moment", where=(e1.segments, e2.segments),
                                  interval=(str(kf_a.t), str(kf_b.t)))
    return [e for _, e in found]


def detect_crossings(movie: LinkMovie, workers: int = 1) -> List[CrossingEvent]:
    """Time-ordered crossing events of a generic movie."""
    movie.check_endpoints()
    n = len(movie.keyframes) - 1
    if workers > 1 and n > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda idx: _interval_events(movie, idx), range(n)))
    else:
        chunks = [_interval_events(movie, idx) for idx in range(n)]
    events = [e for chunk in chunks for e in chunk]
    log.info("%d crossing events over %d intervals", len(events), n, extra={"genus": movie.genus})
    return events
