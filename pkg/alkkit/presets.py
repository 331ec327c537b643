# alkkit/presets.py
"""
Indeterminacy presets: declared generating sets of the subgroup alk is read modulo.

The geometric presets are not typed in; their generator is what delta_alk
returns on the closed movie that slides one component once around the fiber.
"""
from __future__ import annotations
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Tuple

from .bordism import BClass, Bor0Elem
from .errors import PresetError
from .linkflow import delta_alk, span_contains
from .movie import Keyframe, LinkMovie
from .polygon import FundamentalPolygon
from .surface import PLLoop, PLLoop3, torus_line
from .utils import get_context_logger

log = get_context_logger(step="presets")

PRESET_NAMES = ("zero_preissman", "zero_finite_pi", "fgxs1_example2", "torus_x_s1_example2", "lens(p)", "user")

_LENS = re.compile(r"^lens\((\d+)\)$")


@dataclass(frozen=True)
class IndetPreset:
    name: str
    generators: Tuple[Bor0Elem, ...]
    provenance: str
    one_sided: bool = False

    @property
    def genera(self) -> frozenset:
        """Genera of the classes the generators live on; empty for a zero preset."""
        return frozenset(k.genus for g in self.generators for k in g.keys())

    def check_genus(self, genus: int):
        stray = sorted(self.genera - {genus})
        if stray:
            raise PresetError(f"preset {self.name} is built for genus {stray[0]}, not genus {genus}")

    def contains(self, x: Bor0Elem) -> bool:
        return span_contains(self.generators, x)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "one_sided": self.one_sided,
            "provenance": self.provenance,
            "generators": [g.as_list() for g in self.generators],
        }


def fiber_slide_movie(l1: PLLoop3, l2: PLLoop3, which: int = 1, turns: int = 1) -> LinkMovie:
    """Closed movie moving one component `turns` times around the fiber, the other fixed."""
    if which == 1:
        end = (l1.shifted(Fraction(turns)), l2)
    elif which == 2:
        end = (l1, l2.shifted(Fraction(turns)))
    else:
        raise PresetError(f"component must be 1 or 2, got {which}")
    return LinkMovie((Keyframe(Fraction(0), l1, l2), Keyframe(Fraction(1), *end)))


def example_link(genus: int) -> Tuple[PLLoop3, PLLoop3]:
    """
    Two flat circles whose projections are simple and meet once: a1 at height 0
    and b1 at height 1/2.
    """
    if genus == 1:
        alpha = torus_line(1, 0)
        beta = torus_line(0, 1, start=(Fraction(3, 5), Fraction(2, 9)))
    else:
        polygon = FundamentalPolygon.standard(genus)
        alpha = PLLoop.from_word(polygon, "a1")
        beta = PLLoop.from_word(polygon, "b1")
    return PLLoop3.flat(alpha, Fraction(0)), PLLoop3.flat(beta, Fraction(1, 2))


@lru_cache(maxsize=None)
def _slide_generators(genus: int, one_sided: bool) -> Tuple[Bor0Elem, ...]:
    l1, l2 = example_link(genus)
    gens = [delta_alk(fiber_slide_movie(l1, l2, which=1))]
    if not one_sided:
        gens.append(delta_alk(fiber_slide_movie(l1, l2, which=2)))
    log.info("simulated fiber-slide generators: %s", [str(g) for g in gens], extra={"genus": genus})
    return tuple(gens)


def indet_preset(name: str, one_sided: bool = False, genus: int = 2,
                 generators: Optional[Sequence[Bor0Elem]] = None, provenance: str = "user") -> IndetPreset:
    """
    Build a preset by name. `genus` applies to fgxs1_example2; `generators` to
    user presets. With one_sided the second component is held fixed and only
    moves of the first component contribute.
    """
    if name in ("zero_preissman", "zero_finite_pi"):
        note = {
            "zero_preissman": "Indet vanishes when pi_1 of the ambient manifold is Preissman and the components are non-contractible",
            "zero_finite_pi": "Indet vanishes when pi_1 of the ambient manifold is finite",
        }[name]
        return IndetPreset(name, (), note, one_sided)
    if name == "fgxs1_example2":
        if genus < 2:
            raise PresetError("fgxs1_example2 needs genus >= 2; use torus_x_s1_example2 for the torus")
        return IndetPreset(name, _slide_generators(genus, one_sided),
                           f"fiber slide of a1 past b1 in F_{genus} x S^1, simulated", one_sided)
    if name == "torus_x_s1_example2":
        return IndetPreset(name, _slide_generators(1, one_sided),
                           "fiber slide of (1,0) past (0,1) in T^2 x S^1, simulated; Indet is all of bor0(B)", one_sided)
    m = _LENS.match(name)
    if m:
        p = int(m.group(1))
        if p < 1:
            raise PresetError("lens(p) needs p >= 1")
        # bor0(B) has rank one here; stored as a constant, not drawn
        return IndetPreset(name, (Bor0Elem.single(BClass.point(1), p),),
                           f"lens space L({p},q): Indet = {p}Z in bor0(B) = Z", one_sided)
    if name == "user":
        if generators is None:
            raise PresetError("user preset needs generators")
        return IndetPreset("user", tuple(generators), provenance or "user", one_sided)
    raise PresetError(f"unknown preset {name!r}; expected one of {', '.join(PRESET_NAMES)}")
