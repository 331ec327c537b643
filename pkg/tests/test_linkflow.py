import itertools
import random
from fractions import Fraction as F

import pytest

from alkkit.bordism import BClass, Bor0Elem, epsilon
from alkkit.config import POWER_SLACK
from alkkit.errors import GenericityError, PresetError, ResolutionMismatch
from alkkit.linkflow import AlkValue, alk, delta_alk, enumerate_distinct_bclasses, vg_second_derivative
from alkkit.movie import LinkMovie
from alkkit.polygon import FundamentalPolygon
from alkkit.presets import example_link, fiber_slide_movie, indet_preset
from alkkit.surface import PLLoop, PLLoop3, link_disjoint, torus_line
from alkkit.sweep import detect_crossings
from alkkit.words import Elem3, conjugacy_canonical, exponent_sums, reduce

from .oracles import linking_number

BETA_START = (F(3, 5), F(2, 9))


def slide_class(genus):
    return BClass.parse("(a1 ; 0 | b1 ; 0)", genus)


def movie(*frames):
    return LinkMovie.from_frames(frames)


def height_movie(l1, l2, heights):
    """l1 flat at each listed height in turn, l2 fixed."""
    return movie(*[(t, l1.shifted(F(h)), l2) for t, h in enumerate(heights)])


# -- the basic slide --------------------------------------------------------

def test_torus_slide_event():
    l1, l2 = example_link(1)
    events = detect_crossings(fiber_slide_movie(l1, l2))
    assert len(events) == 1
    e = events[0]
    assert e.sign == -1
    assert e.bclass == slide_class(1)
    assert [str(c) for c in e.location] == ["3/5", "3/11", "1/2"]
    assert str(e.time.value) == "1/2"
    assert e.segments == (0, 0)


def test_genus_two_slide():
    l1, l2 = example_link(2)
    assert link_disjoint(l1, l2)
    assert delta_alk(fiber_slide_movie(l1, l2)) == Bor0Elem.single(slide_class(2), -1)
    # moving the other component up reverses the relative velocity
    assert delta_alk(fiber_slide_movie(l1, l2, which=2)) == Bor0Elem.single(slide_class(2), 1)


def test_reversal_negates():
    l1, l2 = example_link(1)
    m = fiber_slide_movie(l1, l2)
    assert delta_alk(m.reversed()) == -delta_alk(m)


def test_concatenation_adds():
    l1, l2 = example_link(1)
    first = height_movie(l1, l2, [0, F(3, 4)])
    second = height_movie(l1, l2, [F(3, 4), F(5, 4)])
    third = height_movie(l1, l2, [F(5, 4), 2])
    assert delta_alk(second).is_zero()
    whole = first.concat(second).concat(third)
    assert delta_alk(whole) == delta_alk(first) + delta_alk(second) + delta_alk(third)
    assert delta_alk(whole) == Bor0Elem.single(slide_class(1), -2)
    with pytest.raises(GenericityError):
        first.concat(third)


def test_across_and_back_cancels():
    l1, l2 = example_link(1)
    m = height_movie(l1, l2, [0, 1, 0])
    assert len(detect_crossings(m)) == 2
    assert delta_alk(m).is_zero()


def test_endpoint_must_be_a_link():
    l1, l2 = example_link(1)
    m = height_movie(l1, l2, [0, F(1, 2)])
    with pytest.raises(GenericityError):
        delta_alk(m)


def test_both_components_moving_needs_staggering():
    l1, l2 = example_link(1)
    m = movie((0, l1, l2), (1, l1.shifted(F(1)), l2.shifted(F(1, 4))))
    with pytest.raises(GenericityError):
        delta_alk(m)
    staggered = m.staggered()
    assert [kf.t for kf in staggered.keyframes] == [0, F(1, 2), 1]
    assert staggered.moving(0) == (True, False) and staggered.moving(1) == (False, True)
    assert delta_alk(staggered) == Bor0Elem.single(slide_class(1), -1)


def test_jitter_repairs_keyframe_on_a_crossing():
    l1, l2 = example_link(1)
    m = height_movie(l1, l2, [0, F(1, 2), 1])
    with pytest.raises(GenericityError):
        delta_alk(m)
    for seed in range(3):
        j = m.jittered(F(1, 100), seed=seed)
        assert (j.start, j.end) == (m.start, m.end)
        assert delta_alk(j) == Bor0Elem.single(slide_class(1), -1)
    with pytest.raises(GenericityError):
        m.jittered(F(0))


def test_movie_validation():
    l1, l2 = example_link(1)
    with pytest.raises(GenericityError):
        movie((1, l1, l2), (0, l1.shifted(F(1)), l2))
    with pytest.raises(GenericityError):
        LinkMovie(())
    wound = PLLoop3(l1.base, l1.heights, 1)
    with pytest.raises(GenericityError):
        movie((0, l1, l2), (1, wound, l2))
    assert fiber_slide_movie(l1, l2).is_closed()
    assert not height_movie(l1, l2, [0, F(1, 4)]).is_closed()


# -- against the linking number of the lifted link ---------------------------

def _triangle(rng, lo, hi):
    def coord():
        return lo + (hi - lo) * F(rng.randint(1, 96), 97)
    return tuple((coord(), coord()) for _ in range(3))


def _heights(rng):
    return tuple(F(rng.randint(0, 88), 89) for _ in range(3))


def _lift(loop3, shift=0):
    return [(p[0], p[1], h + shift) for p, h in zip(loop3.base.points, loop3.heights)]


def _total_linking(l1, l2):
    return sum(linking_number(_lift(l1), _lift(l2, n)) for n in range(-3, 4))


@pytest.mark.parametrize("genus,lo,hi", [(1, F(1, 8), F(7, 8)), (2, F(-1, 3), F(1, 3))])
def test_augmentation_tracks_linking_number(genus, lo, hi):
    poly = FundamentalPolygon.standard(genus)
    rng = random.Random(41 + genus)
    checked = 0
    for _ in range(60):
        try:
            a0 = PLLoop3(PLLoop.from_points(poly, _triangle(rng, lo, hi)), _heights(rng))
            a1 = PLLoop3(PLLoop.from_points(poly, _triangle(rng, lo, hi)), _heights(rng))
            b = PLLoop3(PLLoop.from_points(poly, _triangle(rng, lo, hi)), _heights(rng))
        except GenericityError:
            continue
        if not (link_disjoint(a0, b) and link_disjoint(a1, b)):
            continue
        try:
            got = epsilon(delta_alk(movie((0, a0, b), (1, a1, b))))
        except GenericityError:
            continue
        try:
            change = _total_linking(a1, b) - _total_linking(a0, b)
        except ValueError:
            continue
        assert got == -change
        checked += 1
    assert checked >= 10


# -- path independence ---------------------------------------------------------

def test_independent_of_path_between_links():
    poly = FundamentalPolygon.standard(2)
    a = PLLoop.from_word(poly, "a1")
    moved = PLLoop.from_word(poly, "a1", [F(1, 3)])
    beta = PLLoop3.flat(PLLoop.from_word(poly, "b1"), F(1, 2))
    direct = movie((0, PLLoop3.flat(a), beta), (1, PLLoop3.flat(a, F(1)), beta))
    detour = movie(
        (0, PLLoop3.flat(a), beta),
        (1, PLLoop3.flat(moved), beta),
        (2, PLLoop3.flat(moved, F(1)), beta),
        (3, PLLoop3.flat(a, F(1)), beta),
    )
    assert delta_alk(direct) == delta_alk(detour)
    assert delta_alk(direct) == Bor0Elem.single(slide_class(2), -1)


# -- second derivative -------------------------------------------------------

def _two_crossing_link():
    alpha = torus_line(2, 1)
    assert alpha.gates == (None, 3, None, 0, None, 3, None)
    beta = PLLoop3.flat(torus_line(0, 1, start=BETA_START), F(1, 2))
    return alpha, beta


def _lifted(alpha, h0, h3):
    return PLLoop3(alpha, (F(h0), 0, 0, F(h3), F(h3), 0, 0))


def test_vg_second_derivative_of_separate_crossings():
    alpha, beta = _two_crossing_link()
    base = _lifted(alpha, 0, 0)
    pp = movie((0, base, beta), (1, _lifted(alpha, 1, 0), beta), (2, _lifted(alpha, 1, 1), beta))
    pm = movie((0, base, beta), (1, _lifted(alpha, 1, 0), beta))
    mp = movie((0, base, beta), (1, _lifted(alpha, 0, 1), beta))
    mm = movie((0, base, beta), (1, base, beta))
    assert epsilon(delta_alk(pp)) == -2
    assert epsilon(delta_alk(pm)) == -1 and epsilon(delta_alk(mp)) == -1
    assert vg_second_derivative([pp, pm, mp, mm]).is_zero()


def test_vg_rejects_bad_input():
    alpha, beta = _two_crossing_link()
    base = _lifted(alpha, 0, 0)
    still = movie((0, base, beta), (1, base, beta))
    with pytest.raises(ResolutionMismatch):
        vg_second_derivative([still, still, still])
    other = movie((0, _lifted(alpha, 1, 0), beta), (1, _lifted(alpha, 1, 0), beta))
    with pytest.raises(ResolutionMismatch):
        vg_second_derivative([still, still, still, other])


def test_enumerate_distinct_bclasses():
    a2 = reduce("a2", 2)
    sample = [BClass.of_words(reduce("a1 " * n + "b1", 2), a2) for n in range(1, 11)]
    assert enumerate_distinct_bclasses(sample) == 10
    assert enumerate_distinct_bclasses(sample + sample[:4]) == 10
    l1, l2 = example_link(1)
    events = detect_crossings(height_movie(l1, l2, [0, 1, 2]))
    assert enumerate_distinct_bclasses(events) == 1


# -- presets and values --------------------------------------------------------

def test_fiber_slide_presets():
    two = indet_preset("fgxs1_example2")
    c = slide_class(2)
    assert two.generators == (Bor0Elem.single(c, -1), Bor0Elem.single(c, 1))
    assert indet_preset("fgxs1_example2", one_sided=True).generators == (Bor0Elem.single(c, -1),)
    torus = indet_preset("torus_x_s1_example2")
    assert torus.contains(Bor0Elem.single(slide_class(1), 7))
    assert "simulated" in torus.provenance
    with pytest.raises(PresetError):
        indet_preset("fgxs1_example2", genus=1)


def test_other_presets():
    lens = indet_preset("lens(5)")
    point = BClass.point(1)
    assert lens.contains(Bor0Elem.single(point, 10))
    assert not lens.contains(Bor0Elem.single(point, 3))
    assert indet_preset("zero_preissman").generators == ()
    assert indet_preset("zero_finite_pi").contains(Bor0Elem())
    user = indet_preset("user", generators=[Bor0Elem.single(point, 2)], provenance="hand")
    assert user.provenance == "hand" and user.contains(Bor0Elem.single(point, -4))
    for bad in ("nope", "lens(0)", "user"):
        with pytest.raises(PresetError):
            indet_preset(bad)
    with pytest.raises(PresetError):
        fiber_slide_movie(*example_link(1), which=3)


def test_alk_value_modulo_preset():
    l1, l2 = example_link(2)
    m = fiber_slide_movie(l1, l2)
    end = (m.end.l1, m.end.l2)
    slide = indet_preset("fgxs1_example2")
    zero = indet_preset("zero_preissman")
    value = alk(end, (l1, l2), m, slide)
    assert value == AlkValue(Bor0Elem(), slide)
    assert alk(end, (l1, l2), m, zero) != AlkValue(Bor0Elem(), zero)
    with pytest.raises(ResolutionMismatch):
        _ = value == AlkValue(Bor0Elem(), zero)
    assert value.as_dict()["epsilon"] == -1
    with pytest.raises(GenericityError):
        alk((l1, l2), end, m, slide)


def test_alk_rejects_preset_of_another_genus():
    l1, l2 = example_link(2)
    m = fiber_slide_movie(l1, l2)
    torus = indet_preset("torus_x_s1_example2")
    with pytest.raises(PresetError):
        alk((m.end.l1, m.end.l2), (l1, l2), m, torus)
    with pytest.raises(PresetError):
        AlkValue(Bor0Elem.single(slide_class(2), -1), torus)
    # a preset without generators fits every genus
    assert AlkValue(Bor0Elem.single(slide_class(2), -1), indet_preset("zero_preissman")).preset.genera == frozenset()


def test_event_records_its_class_search():
    l1, l2 = example_link(1)
    (event,) = detect_crossings(fiber_slide_movie(l1, l2))
    assert event.as_dict()["search"] == {"power_bound": 0, "truncated": False}
    l1, l2 = example_link(2)
    (event,) = detect_crossings(fiber_slide_movie(l1, l2))
    search = event.as_dict()["search"]
    assert search["power_bound"] >= POWER_SLACK + 2 and not search["truncated"]
    assert event.bclass.as_dict()["search"] == search
    # the record does not take part in equality
    assert event.bclass == BClass(event.bclass.first, event.bclass.second)


# -- randomized movies ----------------------------------------------------------

POLY2 = FundamentalPolygon.standard(2)
SHORT_WORDS = ("a1", "b1", "b2", "a1 b2", "a2 b1", "a1 a2")


def _chord_heights(rng, m):
    """Heights for a loop drawn from an m-letter word: chord t climbs from hs[t] to hs[t + 1]."""
    hs = [F(rng.randint(0, 88), 89) for _ in range(m)]
    out = []
    for t in range(m):
        out.extend((hs[t], hs[(t + 1) % m]))
    return tuple(out)


def _random_loop3(rng, word):
    m = len(reduce(word, 2))
    params = [F(rng.randint(1, 96), 97) for _ in range(m)]
    return PLLoop3(PLLoop.from_word(POLY2, word, params), _chord_heights(rng, m))


def _random_links(rng, count):
    w1, w2 = rng.choice(SHORT_WORDS), rng.choice(SHORT_WORDS)
    return [(_random_loop3(rng, w1), _random_loop3(rng, w2)) for _ in range(count)]


def _through(*links):
    """Movie visiting the links in order, l1 moving before l2 on every leg."""
    return movie(*[(t, a, b) for t, (a, b) in enumerate(links)]).staggered()


def test_movie_algebra_on_random_links():
    rng = random.Random(83)
    checked = 0
    for _ in range(40):
        if checked == 20:
            break
        s = _random_links(rng, 3)
        first, second = _through(s[0], s[1]), _through(s[1], s[2])
        whole = first.concat(second)
        try:
            d1, d2, dw = delta_alk(first), delta_alk(second), delta_alk(whole)
        except GenericityError:
            continue
        assert dw == d1 + d2
        assert delta_alk(whole.reversed()) == -dw
        assert delta_alk(first.concat(first.reversed())).is_zero()
        checked += 1
    assert checked >= 15


def test_closed_random_movies_cancel():
    rng = random.Random(89)
    checked = 0
    for _ in range(20):
        if checked == 10:
            break
        s = _random_links(rng, 3)
        loop = _through(s[0], s[1], s[2], s[0])
        try:
            value = delta_alk(loop)
        except GenericityError:
            continue
        assert loop.is_closed()
        assert epsilon(value) == 0
        assert value.is_zero()
        checked += 1
    assert checked >= 6


def test_path_independence_on_random_links():
    rng = random.Random(97)
    checked = 0
    for _ in range(15):
        if checked == 5:
            break
        s = _random_links(rng, 3)
        (a0, b0), (a1, b1) = s[0], s[2]
        via = _through(s[0], s[1], s[2])
        other_order = movie((0, a0, b0), (1, a0, b1), (2, a1, b1))
        try:
            values = [delta_alk(via), delta_alk(other_order), delta_alk(_through(s[0], s[2]))]
        except GenericityError:
            continue
        assert values[0] == values[1] == values[2]
        checked += 1
    assert checked >= 3


def _rotated(loop3, k):
    b = loop3.base
    base = PLLoop(b.polygon, b.points[k:] + b.points[:k], b.gates[k:] + b.gates[:k])
    return PLLoop3(base, loop3.heights[k:] + loop3.heights[:k], loop3.winding)


def test_classes_ignore_where_loops_are_read_from():
    rng = random.Random(101)
    checked = 0
    for _ in range(20):
        if checked == 5:
            break
        w1, w2 = rng.choice(("a1 b2", "a2 b1", "a1 a2")), rng.choice(SHORT_WORDS)
        s = [(_random_loop3(rng, w1), _random_loop3(rng, w2)) for _ in range(2)]
        turned = [(_rotated(a, 2), b) for a, b in s]
        try:
            plain = delta_alk(_through(*s))
        except GenericityError:
            continue
        assert delta_alk(_through(*turned)) == plain
        checked += 1
    assert checked >= 3


def test_bclass_lift_is_conjugation_invariant():
    rng = random.Random(103)
    letters = [1, -1, 2, -2, 3, -3, 4, -4]
    for _ in range(25):
        u, v, c = (reduce([rng.choice(letters) for _ in range(rng.randint(0, 3))], 2) for _ in range(3))
        f1, f2 = rng.randint(-2, 2), rng.randint(-2, 2)
        cls = BClass.of(Elem3(u, f1), Elem3(v, f2))
        assert BClass.of(Elem3(c * u * ~c, f1), Elem3(c * v * ~c, f2)) == cls
        assert cls.fibers == (f1, f2)
        assert cls.swapped().swapped() == cls


def test_enumerate_distinct_bclasses_against_invariants():
    rng = random.Random(107)
    bases = []
    seen = set()
    for u, v in itertools.product(("a1", "b1", "a1 b2", "a2 a2", "b1 A2"), ("a1", "b2", "a1 b1", "1")):
        for f in (0, 1):
            bases.append((reduce(u, 2), reduce(v, 2), f))
    sample = []
    for u, v, f in bases:
        # an invariant that separates every base pair
        key = (conjugacy_canonical(u), exponent_sums(v), f)
        assert key not in seen
        seen.add(key)
        for _ in range(3):
            c = reduce([rng.choice([1, -1, 2, -2, 3, -3, 4, -4]) for _ in range(rng.randint(0, 3))], 2)
            sample.append(BClass.of(Elem3(c * u * ~c, f), Elem3(c * v * ~c, 0)))
    rng.shuffle(sample)
    assert enumerate_distinct_bclasses(sample) == len(bases)


@pytest.mark.parametrize("start_y,height", [
    (F(2, 9), F(1, 2)), (F(1, 7), F(1, 3)), (F(7, 9), F(1, 5)), (F(2, 9), F(2, 5)), (F(1, 7), F(3, 10)),
])
def test_vg_vanishes_on_separate_crossings(start_y, height):
    alpha = torus_line(2, 1)
    beta = PLLoop3.flat(torus_line(0, 1, start=(F(3, 5), start_y)), height)
    base = _lifted(alpha, 0, 0)
    pp = movie((0, base, beta), (1, _lifted(alpha, 1, 0), beta), (2, _lifted(alpha, 1, 1), beta))
    pm = movie((0, base, beta), (1, _lifted(alpha, 1, 0), beta))
    mp = movie((0, base, beta), (1, _lifted(alpha, 0, 1), beta))
    mm = movie((0, base, beta), (1, base, beta))
    assert epsilon(delta_alk(pp)) == -2
    assert delta_alk(pp) == delta_alk(pm) + delta_alk(mp)
    assert vg_second_derivative([pp, pm, mp, mm]).is_zero()
