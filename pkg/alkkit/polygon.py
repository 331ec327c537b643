# alkkit/polygon.py
"""
The fundamental 4g-gon with its edge identifications.

Edges are numbered counterclockwise, edge k running from vertex k to vertex k+1.
Edges pair as 4j <-> 4j+2 and 4j+1 <-> 4j+3; the point at parameter s on
edge k is glued to the point at parameter 1 - s on its partner.

Leaving the polygon through an edge appends one letter to the word being read
(h = g - j for edges 4j..4j+3):

    edge 4j   -> b_h        edge 4j+2 -> B_h
    edge 4j+1 -> A_h        edge 4j+3 -> a_h

On the torus (the unit square, vertex 0 at (1, 1)) this reads a1 when crossing
the right edge and b1 when crossing the top edge:

        e0 (b1 up)
     +-----------+
     |           |
  e1 |           | e3 (a1 right)
     |           |
     +-----------+
        e2

Walking once around the single vertex class reads the relator
a1 b1 A1 B1 a2 b2 A2 B2 ... exactly; `vertex_relator` recomputes it.
"""
from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Tuple

import sympy

from .errors import GroupError
from .utils import Point, cross2, lerp2, sub2
from .words import check_genus


def _circle_point(t: Fraction) -> Point:
    """Rational point on the unit circle with half-angle tangent t."""
    d = 1 + t * t
    return ((1 - t * t) / d, 2 * t / d)


def _half_angle_tangent(r: int, genus: int) -> Fraction:
    # tan(pi r / 4g), a rational stand-in good to a few digits
    if r == 0:
        return Fraction(0)
    approx = sympy.N(sympy.tan(sympy.pi * r / (4 * genus)), 30)
    return Fraction(str(approx)).limit_denominator(256)


@lru_cache(maxsize=None)
def _regular_vertices(genus: int) -> Tuple[Point, ...]:
    if genus == 1:
        return ((Fraction(1), Fraction(1)), (Fraction(0), Fraction(1)),
                (Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)))
    quarter = [_circle_point(_half_angle_tangent(r, genus)) for r in range(genus)]
    verts = []
    for q in range(4):
        for x, y in quarter:
            for _ in range(q):
                x, y = -y, x
            verts.append((x, y))
    return tuple(verts)


@dataclass(frozen=True)
class FundamentalPolygon:
    genus: int
    vertices: Tuple[Point, ...]

    @classmethod
    def standard(cls, genus: int) -> "FundamentalPolygon":
        check_genus(genus)
        return _standard(genus)

    @property
    def size(self) -> int:
        return len(self.vertices)

    def edge(self, k: int) -> Tuple[Point, Point]:
        n = self.size
        return self.vertices[k % n], self.vertices[(k + 1) % n]

    def partner(self, k: int) -> int:
        k %= self.size
        return k + 2 if k % 4 < 2 else k - 2

    def letter(self, k: int) -> int:
        """Letter read when leaving the polygon through edge k."""
        j, r = divmod(k % self.size, 4)
        h = self.genus - j
        a, b = 2 * h - 1, 2 * h
        return (b, -a, -b, a)[r]

    def edge_point(self, k: int, s: Fraction) -> Point:
        p, q = self.edge(k)
        return lerp2(p, q, Fraction(s))

    def edge_param(self, k: int, point: Point) -> Optional[Fraction]:
        """Parameter of `point` on the closed edge k, or None when it is off the edge."""
        p, q = self.edge(k)
        d = sub2(q, p)
        w = sub2(point, p)
        if cross2(d, w) != 0:
            return None
        s = (w[0] * d[0] + w[1] * d[1]) / (d[0] * d[0] + d[1] * d[1])
        return s if 0 <= s <= 1 else None

    def edges_through(self, point: Point) -> Tuple[int, ...]:
        return tuple(k for k in range(self.size) if self.edge_param(k, point) is not None)

    def is_corner(self, point: Point) -> bool:
        return point in self.vertices

    def identify(self, k: int, point: Point) -> Point:
        """Image of a point of edge k on the partner edge."""
        s = self.edge_param(k, point)
        if s is None:
            raise GroupError(f"point {point} is not on edge {k}")
        return self.edge_point(self.partner(k), 1 - s)

    def side(self, k: int, point: Point) -> Fraction:
        """Positive strictly inside the half-plane of edge k."""
        p, q = self.edge(k)
        return cross2(sub2(q, p), sub2(point, p))

    def contains_open(self, point: Point) -> bool:
        return all(self.side(k, point) > 0 for k in range(self.size))

    def contains_closed(self, point: Point) -> bool:
        return all(self.side(k, point) >= 0 for k in range(self.size))

    def centroid(self) -> Point:
        n = self.size
        return (sum((v[0] for v in self.vertices), Fraction(0)) / n,
                sum((v[1] for v in self.vertices), Fraction(0)) / n)

    def vertex_relator(self) -> Tuple[int, ...]:
        """Letters read while circling the vertex class, starting at vertex 0."""
        out = []
        k = 0
        for _ in range(self.size):
            e = (k - 1) % self.size
            out.append(self.letter(e))
            k = self.partner(e)
        return tuple(out)


@lru_cache(maxsize=None)
def _standard(genus: int) -> FundamentalPolygon:
    return FundamentalPolygon(genus, _regular_vertices(genus))
