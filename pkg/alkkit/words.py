# alkkit/words.py
"""
Exact word arithmetic in surface groups.

pi_1(F_g) = < a1, b1, ..., ag, bg | [a1,b1]...[ag,bg] >, with [x,y] = x y x^-1 y^-1.
Genus 1 is free abelian of rank 2 and takes a separate exact path (exponent
sums). For g >= 2 the presentation is C'(1/6) and Dehn's algorithm decides the
word problem; conjugacy and element normal forms come from a bounded closure
search over half-relator swaps.

Letters are nonzero ints: a_i = 2i-1, b_i = 2i, inverses negative. Tokens are
"a1", "A1" (inverse), "b1", "B1", ...
"""
from __future__ import annotations
import re
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .config import BFS_LIMIT, POWER_SLACK
from .errors import AbelianCentralizer, GroupError
from .lattice import in_integer_span
from .utils import get_context_logger

Letters = Tuple[int, ...]

_TOKEN = re.compile(r"^([aAbB])([1-9][0-9]*)$")

log = get_context_logger(step="words")


def check_genus(genus: int) -> int:
    if not isinstance(genus, int) or isinstance(genus, bool) or genus < 1:
        raise GroupError(f"genus must be a positive integer, got {genus!r}")
    return genus


def letter_key(x: int) -> int:
    """Position in the fixed order a1 < A1 < b1 < B1 < a2 < ..."""
    return 2 * (abs(x) - 1) + (1 if x < 0 else 0)


def words_key(letters: Sequence[int]) -> Tuple[int, ...]:
    return tuple(letter_key(x) for x in letters)


def shortlex_key(letters: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    return (len(letters), words_key(letters))


def parse_token(token: str) -> int:
    m = _TOKEN.match(token)
    if not m:
        raise GroupError(f"not a generator token: {token!r}")
    kind, idx = m.group(1), int(m.group(2))
    x = 2 * idx - 1 if kind.lower() == "a" else 2 * idx
    return x if kind.islower() else -x


def format_letter(x: int) -> str:
    idx = (abs(x) + 1) // 2
    kind = "a" if abs(x) % 2 == 1 else "b"
    return f"{kind.upper() if x < 0 else kind}{idx}"


def format_letters(letters: Iterable[int]) -> str:
    return " ".join(format_letter(x) for x in letters)


def _check_letters(letters: Iterable[int], genus: int) -> List[int]:
    out = []
    for x in letters:
        if not isinstance(x, int) or x == 0 or abs(x) > 2 * genus:
            raise GroupError(f"letter {x!r} out of range for genus {genus}")
        out.append(x)
    return out


def _invert_letters(letters: Sequence[int]) -> List[int]:
    return [-x for x in reversed(letters)]


def _free_reduce(letters: Iterable[int]) -> List[int]:
    out: List[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def _abelian_form(letters: Iterable[int]) -> List[int]:
    p = q = 0
    for x in letters:
        if abs(x) == 1:
            p += 1 if x > 0 else -1
        else:
            q += 1 if x > 0 else -1
    return [1 if p > 0 else -1] * abs(p) + [2 if q > 0 else -2] * abs(q)


@lru_cache(maxsize=None)
def relator(genus: int) -> Letters:
    """The defining relator [a1,b1]...[ag,bg]."""
    out: List[int] = []
    for i in range(1, genus + 1):
        a, b = 2 * i - 1, 2 * i
        out.extend((a, b, -a, -b))
    return tuple(out)


@lru_cache(maxsize=None)
def _relator_rotations(genus: int) -> Tuple[Letters, ...]:
    r = relator(genus)
    r_inv = tuple(_invert_letters(r))
    rots = []
    for base in (r, r_inv):
        for k in range(len(base)):
            rots.append(base[k:] + base[:k])
    return tuple(rots)


@lru_cache(maxsize=None)
def _piece_table(genus: int, length: int) -> Dict[Letters, Letters]:
    """Subwords of relator rotations of the given length -> inverse of their complement."""
    table: Dict[Letters, Letters] = {}
    for rot in _relator_rotations(genus):
        table[rot[:length]] = tuple(_invert_letters(rot[length:]))
    return table


def _dehn_reduce(letters: Iterable[int], genus: int) -> List[int]:
    w = _free_reduce(letters)
    if genus < 2:
        return w
    n = 2 * genus + 1
    table = _piece_table(genus, n)
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - n + 1):
            rep = table.get(tuple(w[i:i + n]))
            if rep is not None:
                # more than half a relator -> the shorter complement
                w = _free_reduce(w[:i] + list(rep) + w[i + n:])
                changed = True
                break
    return w


def _reduce_letters(letters: Iterable[int], genus: int) -> List[int]:
    if genus == 1:
        return _abelian_form(letters)
    return _dehn_reduce(letters, genus)


@dataclass(frozen=True)
class Word:
    """
    A word in pi_1(F_g). Words built through reduce/parse/multiply are freely
    reduced and, for g >= 2, Dehn-reduced; genus 1 words are a1^p b1^q.
    Equality is letter equality; use same_element for group equality.
    """
    letters: Letters
    genus: int

    def __post_init__(self):
        check_genus(self.genus)
        _check_letters(self.letters, self.genus)

    @classmethod
    def identity(cls, genus: int) -> "Word":
        return cls((), genus)

    @classmethod
    def parse(cls, text: str, genus: int) -> "Word":
        return reduce(text, genus)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def key(self) -> Tuple[int, Tuple[int, ...]]:
        return shortlex_key(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_letters(self.letters) or "1"

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, n: int) -> "Word":
        return power(self, n)


def reduce(raw: Union[Sequence[int], Sequence[str], str, Word], genus: int) -> Word:
    """Free (and for g >= 2 Dehn) reduction of a raw letter sequence."""
    check_genus(genus)
    if isinstance(raw, Word):
        if raw.genus != genus:
            raise GroupError(f"genus mismatch: word of genus {raw.genus}, expected {genus}")
        letters: List[int] = list(raw.letters)
    elif isinstance(raw, str):
        letters = [parse_token(t) for t in raw.split() if t != "1"]
    else:
        letters = [parse_token(x) if isinstance(x, str) else x for x in raw]
    letters = _check_letters(letters, genus)
    return Word(tuple(_reduce_letters(letters, genus)), genus)


def _same_genus(u: Word, v: Word) -> int:
    if u.genus != v.genus:
        raise GroupError(f"genus mismatch: {u.genus} vs {v.genus}")
    return u.genus


def multiply(u: Word, v: Word) -> Word:
    g = _same_genus(u, v)
    return Word(tuple(_reduce_letters(u.letters + v.letters, g)), g)


def invert(u: Word) -> Word:
    return Word(tuple(_reduce_letters(_invert_letters(u.letters), u.genus)), u.genus)


def power(u: Word, n: int) -> Word:
    if n < 0:
        return power(invert(u), -n)
    return Word(tuple(_reduce_letters(list(u.letters) * n, u.genus)), u.genus)


def product(words: Iterable[Word], genus: int) -> Word:
    letters: List[int] = []
    for w in words:
        if w.genus != genus:
            raise GroupError(f"genus mismatch: {w.genus} vs {genus}")
        letters.extend(w.letters)
    return Word(tuple(_reduce_letters(letters, genus)), genus)


def is_trivial(u: Word) -> bool:
    return not _reduce_letters(u.letters, u.genus)


def same_element(u: Word, v: Word) -> bool:
    _same_genus(u, v)
    return is_trivial(multiply(u, invert(v)))


def commute(u: Word, v: Word) -> bool:
    return same_element(multiply(u, v), multiply(v, u))


def exponent_sums(u: Word) -> Tuple[int, ...]:
    """Abelianization: (a1, b1, ..., ag, bg) exponent sums."""
    sums = [0] * (2 * u.genus)
    for x in u.letters:
        sums[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(sums)


def homology_intersection(u: Word, v: Word) -> int:
    """Symplectic form sum_i (p_i s_i - q_i r_i) on exponent sums."""
    _same_genus(u, v)
    hu, hv = exponent_sums(u), exponent_sums(v)
    return sum(hu[2 * i] * hv[2 * i + 1] - hu[2 * i + 1] * hv[2 * i] for i in range(u.genus))


# ---------------------------------------------------------------------------
# Closure searches (g >= 2)
# ---------------------------------------------------------------------------

def _half_swaps(w: Sequence[int], genus: int) -> Iterator[List[int]]:
    n = 2 * genus
    table = _piece_table(genus, n)
    for i in range(len(w) - n + 1):
        rep = table.get(tuple(w[i:i + n]))
        if rep is not None:
            yield list(w[:i]) + list(rep) + list(w[i + n:])


def _closure(start, expand: Callable, size: Callable[[object], int], label: str) -> Tuple[dict, bool]:
    """
    Breadth-first closure of equal-size neighbours; restarts from any strictly
    smaller neighbour. Returns ({state_key: payload} of the final (minimal) layer,
    whether the search stopped at ALK_BFS_LIMIT).
    `expand(payload)` yields (state_key, payload) pairs.
    """
    current_key, current = start
    while True:
        seen = {current_key: current}
        queue = deque([current])
        shorter = None
        while queue and shorter is None:
            item = queue.popleft()
            for key, payload in expand(item):
                if size(payload) < size(current):
                    shorter = (key, payload)
                    break
                if key not in seen:
                    seen[key] = payload
                    queue.append(payload)
                    if len(seen) >= BFS_LIMIT:
                        log.warning("%s closure hit ALK_BFS_LIMIT=%d states", label, BFS_LIMIT)
                        return seen, True
        if shorter is None:
            return seen, False
        current_key, current = shorter


@lru_cache(maxsize=8192)
def _normal_search(letters: Letters, genus: int) -> Tuple[Letters, bool]:
    if genus == 1:
        return tuple(_abelian_form(letters)), False
    start = tuple(_dehn_reduce(letters, genus))

    def expand(w):
        for cand in _half_swaps(w, genus):
            c = tuple(_dehn_reduce(cand, genus))
            yield c, c

    layer, truncated = _closure((start, start), expand, len, "element")
    return min(layer, key=words_key), truncated


def _normal_letters(letters: Letters, genus: int) -> Letters:
    return _normal_search(letters, genus)[0]


def normal_form(u: Word) -> Word:
    """Canonical word for the group element u (shortlex-least minimal word found)."""
    return Word(_normal_letters(u.letters, u.genus), u.genus)


def _min_rotation(w: Sequence[int]) -> int:
    if not w:
        return 0
    return min(range(len(w)), key=lambda k: words_key(tuple(w[k:]) + tuple(w[:k])))


def _cyclic_reduce(w: List[int], conj: List[int], genus: int) -> Tuple[List[int], List[int]]:
    """
    Cyclic free and Dehn reduction. Invariant: c w c^-1 is unchanged as an element,
    i.e. the returned (w', c') satisfy c' w' c'^-1 = c w c^-1.
    """
    n = 2 * genus + 1
    table = _piece_table(genus, n) if genus >= 2 else {}
    while True:
        w = _dehn_reduce(w, genus) if genus >= 2 else _free_reduce(w)
        while len(w) >= 2 and w[0] == -w[-1]:
            conj = _free_reduce(conj + [w[0]])
            w = w[1:-1]
        if len(w) < n or genus < 2:
            return w, conj
        for k in range(1, len(w)):
            rotated = w[k:] + w[:k]
            if tuple(rotated[:n]) in table:
                conj = _free_reduce(conj + w[:k])
                w = rotated
                break
        else:
            return w, conj


@lru_cache(maxsize=4096)
def _conjugacy_search(letters: Letters, genus: int) -> Tuple[Tuple[Tuple[Letters, Letters], ...], bool]:
    """
    Minimal cyclic words of the conjugacy class of `letters`, each with a
    conjugator c such that c w c^-1 = u. Keyed by least rotation.
    """
    w0, c0 = _cyclic_reduce(list(letters), [], genus)

    def state(w: List[int], c: List[int]):
        k = _min_rotation(w)
        return tuple(w[k:] + w[:k]), (tuple(w), tuple(c))

    def expand(item):
        w, c = item
        w, c = list(w), list(c)
        for k in range(len(w)):
            rotated = w[k:] + w[:k]
            rc = _free_reduce(c + w[:k])
            for cand in _half_swaps(rotated, genus):
                cw, cc = _cyclic_reduce(cand, rc, genus)
                yield state(cw, cc)

    start = state(w0, c0)
    layer, truncated = _closure(start, expand, lambda item: len(item[0]), "conjugacy")
    return tuple(sorted(layer.values(), key=lambda item: words_key(item[0]))), truncated


def _conjugacy_layer(letters: Letters, genus: int) -> Tuple[Tuple[Letters, Letters], ...]:
    return _conjugacy_search(letters, genus)[0]


def _canonical_with_conjugator(u: Word) -> Tuple[Letters, Letters]:
    """(rep, c) with rep the canonical cyclic representative and c rep c^-1 = u."""
    if u.genus == 1:
        return tuple(_abelian_form(u.letters)), ()
    best = None
    for w, c in _conjugacy_layer(u.letters, u.genus):
        k = _min_rotation(w)
        rot = w[k:] + w[:k]
        cand = (words_key(rot), rot, tuple(_free_reduce(list(c) + list(w[:k]))))
        if best is None or cand[0] < best[0]:
            best = cand
    return best[1], best[2]


@dataclass(frozen=True)
class CyclicClass:
    """Canonical representative of a conjugacy class (a free loop class)."""
    rep: Word

    @property
    def genus(self) -> int:
        return self.rep.genus

    def key(self):
        return (self.rep.genus, self.rep.key())

    def __str__(self) -> str:
        return str(self.rep)


def conjugacy_canonical(u: Word) -> CyclicClass:
    rep, _ = _canonical_with_conjugator(u)
    return CyclicClass(Word(rep, u.genus))


def primitive_root(u: Word) -> Tuple[Word, int]:
    """
    (root, exponent) with root^exponent = u and exponent maximal; the
    centralizer of u is generated by root. Genus >= 2 only.
    """
    if u.genus == 1:
        raise AbelianCentralizer(u.genus)
    if is_trivial(u):
        raise GroupError("primitive_root of the identity is undefined")
    best = None
    for w, c in _conjugacy_layer(u.letters, u.genus):
        n = len(w)
        for d in range(1, n + 1):
            if n % d == 0 and w == w[:d] * (n // d):
                cand = (-(n // d), words_key(w[:d]), w[:d], c)
                if best is None or cand[:2] < best[:2]:
                    best = cand
                break
    _, _, period, conj = best
    g = u.genus
    root = reduce(list(conj) + list(period) + _invert_letters(conj), g)
    return root, -best[0]


@dataclass(frozen=True)
class CanonicalPair:
    """Canonical representative of a pair under simultaneous conjugation."""
    first: Word
    second: Word
    power_bound: int
    truncated: bool = False

    @property
    def pair(self) -> Tuple[Word, Word]:
        return (self.first, self.second)

    def search_dict(self) -> dict:
        return {"power_bound": self.power_bound, "truncated": self.truncated}


def simultaneous_canonical(u: Word, v: Word) -> CanonicalPair:
    g = _same_genus(u, v)
    if g == 1:
        return CanonicalPair(normal_form(u), normal_form(v), 0)
    if is_trivial(u):
        return CanonicalPair(Word.identity(g), conjugacy_canonical(v).rep, 0, _conjugacy_search(v.letters, g)[1])
    rep, c = _canonical_with_conjugator(u)
    truncated = _conjugacy_search(u.letters, g)[1]
    first = Word(rep, g)
    root, _ = primitive_root(first)
    c_word = reduce(list(c), g)
    v0 = product([invert(c_word), v, c_word], g)
    bound = len(u) + len(v) + POWER_SLACK
    best: Optional[Word] = None
    for k in range(-bound, bound + 1):
        rk = power(root, k)
        letters, cut = _normal_search(product([invert(rk), v0, rk], g).letters, g)
        truncated = truncated or cut
        cand = Word(letters, g)
        if best is None or cand.key() < best.key():
            best = cand
    return CanonicalPair(first, best, bound, truncated)


# ---------------------------------------------------------------------------
# pi_1(F_g x S^1) = pi_1(F_g) x Z
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Elem3:
    surface: Word
    fiber: int = 0

    @property
    def genus(self) -> int:
        return self.surface.genus

    @classmethod
    def parse(cls, text: str, genus: int) -> "Elem3":
        """'a1 B2 ; 3' -> surface a1 B2, fiber 3. The fiber part is optional."""
        surface, _, fiber = text.partition(";")
        return cls(Word.parse(surface, genus), int(fiber) if fiber.strip() else 0)

    def __mul__(self, other: "Elem3") -> "Elem3":
        return Elem3(multiply(self.surface, other.surface), self.fiber + other.fiber)

    def __invert__(self) -> "Elem3":
        return Elem3(invert(self.surface), -self.fiber)

    def __str__(self) -> str:
        return f"{self.surface} ; {self.fiber}"

    def key(self):
        return (self.surface.key(), self.fiber)

    def as_dict(self) -> dict:
        return {"surface": str(self.surface), "fiber": self.fiber}


class _Undecided(Exception):
    pass


def _root_exponent(x: Word, root: Word) -> Optional[int]:
    """m with root^m = x, or None when x is not a power of root (root primitive)."""
    if is_trivial(x):
        return 0
    if not commute(x, root):
        return None
    # centralizers are cyclic, so x is a power of root; only the range can fail
    for m in range(1, 2 * len(x) + 3):
        for e in (m, -m):
            if same_element(power(root, e), x):
                return e
    raise _Undecided(f"exponent of {x} over {root} beyond search range")


def _cyclic_image(gens: Sequence[Elem3]) -> Optional[Tuple[Optional[Word], List[Tuple[int, int]]]]:
    """
    Express generators as (root exponent, fiber) pairs over a common primitive
    root of their surface parts, or None when they are outside that class.
    """
    nontrivial = [e.surface for e in gens if not is_trivial(e.surface)]
    if not nontrivial:
        return None, [(0, e.fiber) for e in gens]
    root, _ = primitive_root(nontrivial[0])
    coords = []
    for e in gens:
        m = _root_exponent(e.surface, root)
        if m is None:
            return None
        coords.append((m, e.fiber))
    return root, coords


def _pair_minor(h2: Sequence[int], h1: Sequence[int]) -> Optional[Tuple[int, int, int]]:
    for i in range(len(h1)):
        for j in range(i + 1, len(h1)):
            det = h2[i] * h1[j] - h2[j] * h1[i]
            if det:
                return i, j, det
    return None


def _homology_solution(h2, h1, d) -> Optional[Tuple[int, int]]:
    """The unique integers (p, q) with p*h2 + q*h1 = d for independent h2, h1; None if there are none."""
    i, j, det = _pair_minor(h2, h1)
    p_num = d[i] * h1[j] - d[j] * h1[i]
    q_num = h2[i] * d[j] - h2[j] * d[i]
    if p_num % det or q_num % det:
        return None
    p, q = p_num // det, q_num // det
    if any(p * a + q * b != c for a, b, c in zip(h2, h1, d)):
        return None
    return p, q


def _double_coset_surface(u: Elem3, v: Elem3, rho1: Optional[Word], lat1, rho2: Optional[Word], lat2) -> Optional[bool]:
    g = u.genus
    df = v.fiber - u.fiber
    # (p, q, m + n) with (p, m) in L2 and (q, n) in L1, solving rho2^p u rho1^q = v
    span = [(a, 0, b) for a, b in lat2] + [(0, a, b) for a, b in lat1]

    def admissible(p: int, q: int) -> bool:
        return in_integer_span(span, (p, q, df))

    if rho1 is None and rho2 is None:
        return same_element(u.surface, v.surface) and admissible(0, 0)
    if rho2 is None:
        q = _root_exponent(multiply(invert(u.surface), v.surface), rho1)
        return q is not None and admissible(0, q)
    if rho1 is None:
        p = _root_exponent(multiply(v.surface, invert(u.surface)), rho2)
        return p is not None and admissible(p, 0)

    s = 1 if same_element(rho1, rho2) else -1 if same_element(rho1, invert(rho2)) else 0
    if s and commute(u.surface, rho1):
        # everything lives in <rho1> x Z: rho1^(s*p + e + q) = rho1^f
        e = _root_exponent(u.surface, rho1)
        f = _root_exponent(v.surface, rho1)
        if f is None:
            return False
        flat = [(s * a, b) for a, b in lat2] + list(lat1)
        return in_integer_span(flat, (f - e, df))

    h1, h2 = exponent_sums(rho1), exponent_sums(rho2)
    d = tuple(b - a for a, b in zip(exponent_sums(u.surface), exponent_sums(v.surface)))
    if not s and _pair_minor(h2, h1) is not None:
        # independent homology classes pin (p, q) down
        pq = _homology_solution(h2, h1, d)
        if pq is None:
            return False
        p, q = pq
        hit = same_element(product([power(rho2, p), u.surface, power(rho1, q)], g), v.surface)
        return hit and admissible(p, q)

    slack = max([abs(a) for a, _ in lat1 + lat2] + [0])
    bound = 2 * (len(u.surface) + len(v.surface)) + POWER_SLACK + slack + abs(df)
    u_inv = invert(u.surface)
    found = 0
    for p in range(-bound, bound + 1):
        q = _root_exponent(product([u_inv, power(rho2, -p), v.surface], g), rho1)
        if q is None:
            continue
        if admissible(p, q):
            return True
        found += 1
    if s and found:
        # u outside <rho1> makes the solution (p, q) unique
        return False
    log.warning("double coset search exhausted at power bound %d", bound)
    return None


def double_coset_equal(u: Elem3, v: Elem3, G1: Sequence[Elem3], G2: Sequence[Elem3]) -> Optional[bool]:
    """
    Decide G2 u G1 == G2 v G1 in pi_1(F_g) x Z.

    Supported: genus 1 (any finite generating sets) and, for g >= 2, generating
    sets of at most two elements whose surface parts are powers of a common root.
    Returns None ("undecided") outside that class or when a bounded power
    search runs out; never a guessed boolean.
    """
    g = u.genus
    for e in (v, *G1, *G2):
        if e.genus != g:
            raise GroupError(f"genus mismatch: {e.genus} vs {g}")
    diff = [b - a for a, b in zip(exponent_sums(u.surface) + (u.fiber,),
                                  exponent_sums(v.surface) + (v.fiber,))]
    if g == 1:
        gens = [exponent_sums(e.surface) + (e.fiber,) for e in (*G1, *G2)]
        return in_integer_span(gens, diff)
    if len(G1) > 2 or len(G2) > 2:
        return None
    try:
        img1, img2 = _cyclic_image(G1), _cyclic_image(G2)
        if img1 is None or img2 is None:
            return None
        # abelianized equation, necessary in every case
        abelian = [exponent_sums(e.surface) + (e.fiber,) for e in (*G1, *G2)]
        if not in_integer_span(abelian, diff):
            return False
        (rho1, lat1), (rho2, lat2) = img1, img2
        return _double_coset_surface(u, v, rho1, lat1, rho2, lat2)
    except _Undecided as e:
        log.warning("double coset undecided: %s", e)
        return None
