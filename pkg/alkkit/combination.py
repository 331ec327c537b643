# alkkit/combination.py
"""
Finite integer combinations over canonical keys.
"""
from __future__ import annotations
from typing import Any, Callable, Dict, Generic, Iterable, Iterator, Mapping, Tuple, TypeVar

K = TypeVar("K")


class Combination(Generic[K]):
    """
    Immutable map key -> nonzero integer. Keys must already be canonical and
    provide `.key()` for a deterministic sort order.
    """
    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[K, int] | Iterable[Tuple[K, int]] = ()):
        acc: Dict[K, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for k, c in items:
            if not isinstance(c, int) or isinstance(c, bool):
                raise TypeError(f"coefficient must be an integer, got {c!r}")
            acc[k] = acc.get(k, 0) + c
        self._terms = {k: c for k, c in acc.items() if c}

    @classmethod
    def single(cls, key: K, coeff: int = 1):
        return cls({key: coeff})

    def items(self) -> Iterator[Tuple[K, int]]:
        return iter(sorted(self._terms.items(), key=lambda kv: kv[0].key()))

    def keys(self):
        return [k for k, _ in self.items()]

    def coefficient(self, key: K) -> int:
        return self._terms.get(key, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other):
        self._check(other)
        return type(self)(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self):
        return type(self)({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        return type(self)({k: n * c for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((type(self).__name__, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{c:+d}·[{k}]" for k, c in self.items())
        return f"{type(self).__name__}({body})"

    def total(self) -> int:
        return sum(self._terms.values())

    def map_keys(self, fn: Callable[[K], K]):
        return type(self)([(fn(k), c) for k, c in self._terms.items()])

    def as_dict(self, label: Callable[[K], Any] = str) -> Dict[Any, int]:
        return {label(k): c for k, c in self.items()}

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
