from fractions import Fraction as F

import pytest

from alkkit.errors import GenericityError
from alkkit.polygon import FundamentalPolygon
from alkkit.surface import (
    PLLoop, PLLoop3, intersections, is_generic_pair, link_disjoint, perturb_to_generic,
    refine, torus_line, word_of_loop,
)
from alkkit.words import exponent_sums, reduce, relator

from .oracles import torus_intersection, torus_lattice_crossings

BETA_START = (F(3, 5), F(2, 9))


@pytest.mark.parametrize("genus", [1, 2, 3])
def test_vertex_cycle_reads_relator(genus):
    poly = FundamentalPolygon.standard(genus)
    assert poly.vertex_relator() == relator(genus)


@pytest.mark.parametrize("genus", [1, 2, 3])
def test_edge_pairing(genus):
    poly = FundamentalPolygon.standard(genus)
    assert poly.size == 4 * genus
    for k in range(poly.size):
        m = poly.partner(k)
        assert poly.partner(m) == k
        assert poly.letter(m) == -poly.letter(k)
        p = poly.edge_point(k, F(1, 3))
        q = poly.identify(k, p)
        assert poly.edge_param(m, q) == F(2, 3)
        assert poly.identify(m, q) == p
    assert poly.contains_open(poly.centroid())


def test_torus_square_conventions():
    square = FundamentalPolygon.standard(1)
    assert square.vertices[0] == (1, 1)
    assert str(reduce([square.letter(3)], 1)) == "a1"
    assert str(reduce([square.letter(0)], 1)) == "b1"


@pytest.mark.parametrize("word", ["a1", "b2", "a1 b1", "a1 a2", "A2 b1", "a1 b1 A1 B1", "a1 a1 b2"])
def test_from_word_reads_its_word(word):
    poly = FundamentalPolygon.standard(2)
    loop = PLLoop.from_word(poly, word)
    assert word_of_loop(loop) == reduce(word, 2)
    assert word_of_loop(refine(loop)) == reduce(word, 2)
    assert len(list(refine(loop).drawn_segments())) == 2 * len(list(loop.drawn_segments()))


@pytest.mark.parametrize("p,q", [(1, 0), (0, 1), (1, 1), (2, 1), (1, -2), (3, 1), (2, 0), (2, 2)])
def test_torus_line_class(p, q):
    assert exponent_sums(word_of_loop(torus_line(p, q))) == (p, q)


def test_torus_line_rejects_corners():
    with pytest.raises(GenericityError):
        torus_line(1, 1, start=(F(1, 2), F(1, 2)))
    with pytest.raises(GenericityError):
        torus_line(1, 0, start=(F(0), F(1, 2)))


def test_trivial_loop():
    poly = FundamentalPolygon.standard(2)
    loop = PLLoop.trivial(poly)
    assert word_of_loop(loop).is_identity
    assert PLLoop.from_word(poly, "1") == loop


def test_loop_validation():
    square = FundamentalPolygon.standard(1)
    with pytest.raises(GenericityError):
        PLLoop.from_points(square, [(F(1), F(1)), (F(1, 2), F(1, 2)), (F(1, 3), F(1, 4))])
    with pytest.raises(GenericityError):
        PLLoop.from_points(square, [(F(1, 2), F(1, 2)), (F(1, 2), F(1, 2)), (F(1, 3), F(1, 4))])
    with pytest.raises(GenericityError):
        # a jump whose end is not the glued point
        PLLoop(square, ((F(1, 2), F(1, 2)), (F(1), F(1, 2)), (F(0), F(1, 3))), (None, 3, None))


def test_meridian_longitude_intersection():
    alpha, beta = torus_line(1, 0), torus_line(0, 1, start=BETA_START)
    data = intersections(alpha, beta)
    assert len(data) == 1
    d = data[0]
    assert d.location == (F(3, 5), F(3, 11))
    assert d.sign == 1
    assert tuple(str(w) for w in d.based_words) == ("a1", "b1")
    back = intersections(beta, alpha)
    assert [x.sign for x in back] == [-1]
    assert back[0].based_words == d.swapped().based_words


@pytest.mark.parametrize("p,q,r,s", [(1, 0, 0, 1), (1, 1, 1, -1), (2, 1, 1, 1), (1, 2, 3, 1), (1, 0, 3, 2), (1, 1, 1, 1)])
def test_torus_intersection_count(p, q, r, s):
    alpha, beta = torus_line(p, q), torus_line(r, s, start=BETA_START)
    if not is_generic_pair(alpha, beta):
        alpha, beta = perturb_to_generic(alpha, beta, seed=1)
    data = intersections(alpha, beta)
    assert sum(d.sign for d in data) == torus_intersection(p, q, r, s)
    if is_generic_pair(torus_line(p, q), torus_line(r, s, start=BETA_START)):
        assert len(data) == torus_lattice_crossings(p, q, r, s)


def test_perturbation_separates_identical_loops():
    loop = torus_line(1, 1)
    assert not is_generic_pair(loop, loop)
    a, b = perturb_to_generic(loop, loop, seed=3)
    assert is_generic_pair(a, b)
    assert word_of_loop(a) == word_of_loop(loop)
    assert sum(d.sign for d in intersections(a, b)) == 0
    assert perturb_to_generic(loop) is loop


def test_link_disjoint_uses_heights():
    alpha, beta = torus_line(1, 0), torus_line(0, 1, start=BETA_START)
    assert link_disjoint(PLLoop3.flat(alpha, F(0)), PLLoop3.flat(beta, F(1, 2)))
    assert not link_disjoint(PLLoop3.flat(alpha, F(0)), PLLoop3.flat(beta, F(0)))
    assert not link_disjoint(PLLoop3.flat(alpha, F(0)), PLLoop3.flat(beta, F(3)))


def test_loop3_heights():
    alpha = torus_line(1, 0)
    with pytest.raises(GenericityError):
        # height must not jump across the glued edge
        PLLoop3(alpha, (F(0), F(1, 3), F(0)), 0)
    lifted = PLLoop3(alpha, (F(0), F(1, 3), F(1, 3)), 1)
    assert lifted.height_end(2) == 1
    assert lifted.elem3().fiber == 1
    assert lifted.shifted(F(2)).heights == (2, F(7, 3), F(7, 3))
