# alkkit/goldman.py
"""
Goldman bracket of free loops on F_g.

[l1, l2] = sum over double points p of sign(p) * class(g1 g2), with g1, g2 the
two loops read from p. Classes are canonical conjugacy representatives, so
the result does not depend on where each loop was based.
"""
from __future__ import annotations
from fractions import Fraction
from typing import Callable

from .combination import Combination
from .surface import PLLoop, intersections, is_generic_pair, perturb_to_generic
from .utils import get_context_logger
from .words import CyclicClass, conjugacy_canonical, multiply

log = get_context_logger(step="bracket")

Chooser = Callable[[CyclicClass], PLLoop]


class LoopClassCombination(Combination[CyclicClass]):
    """Element of Z[free loop classes]."""


def goldman_bracket(l1: PLLoop, l2: PLLoop, perturb: bool = True,
                    bound: Fraction = Fraction(1, 50), seed: int = 0) -> LoopClassCombination:
    if not is_generic_pair(l1, l2):
        if not perturb:
            intersections(l1, l2)  # raises with the diagnostic
        l1, l2 = perturb_to_generic(l1, l2, bound=bound, seed=seed)
    terms = []
    for datum in intersections(l1, l2):
        g1, g2 = datum.based_words
        terms.append((conjugacy_canonical(multiply(g1, g2)), datum.sign))
    result = LoopClassCombination(terms)
    log.debug("bracket with %d terms", len(result), extra={"genus": l1.genus})
    return result


def bracket_bilinear(x: LoopClassCombination, y: LoopClassCombination, chooser: Chooser,
                     seed: int = 0) -> LoopClassCombination:
    """
    Bilinear extension of goldman_bracket. `chooser` draws a representative for
    each basis class and raises MissingRepresentative when it has none.
    """
    out = LoopClassCombination()
    for cx, a in x.items():
        lx = chooser(cx)
        for cy, b in y.items():
            ly = chooser(cy)
            out = out + (a * b) * goldman_bracket(lx, ly, seed=seed)
    return out
