"""Hereditarily finite sets, membership frames, and the singleton/pair join families."""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable

from .kripke import KripkeModel, PointedModel, join


def _enc_order(encoding: str) -> tuple[int, str]:
    return (len(encoding), encoding)


class HFSet:
    """A hereditarily finite set with a canonical brace-string encoding.

    Children are sorted by encoding, so two HFSets are equal iff they are
    extensionally equal, and the encoding is unique per set.
    """

    __slots__ = ("elements", "encoding", "_hash")

    def __init__(self, elements: Iterable["HFSet"] = ()) -> None:
        els = frozenset(elements)
        for e in els:
            if not isinstance(e, HFSet):
                raise TypeError(f"elements must be HFSet instances, got {e!r}")
        self.elements = els
        self.encoding = "{" + ",".join(sorted((e.encoding for e in els), key=_enc_order)) + "}"
        self._hash = hash(self.encoding)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HFSet):
            return NotImplemented
        return self.encoding == other.encoding

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "HFSet") -> bool:
        return _enc_order(self.encoding) < _enc_order(other.encoding)

    def __str__(self) -> str:
        return self.encoding

    def __repr__(self) -> str:
        return f"HFSet({self.encoding})"


EMPTY_SET = HFSet()


def parse_hf(text: str) -> HFSet:
    """Parse a nested-brace encoding such as ``{{},{{}}}``."""
    pos = 0

    def parse() -> HFSet:
        nonlocal pos
        if pos >= len(text) or text[pos] != "{":
            raise ValueError(f"expected '{{' at position {pos}")
        pos += 1
        elements = []
        if pos < len(text) and text[pos] == "}":
            pos += 1
            return HFSet(elements)
        while True:
            elements.append(parse())
            if pos >= len(text):
                raise ValueError("unexpected end of input")
            if text[pos] == ",":
                pos += 1
                continue
            if text[pos] == "}":
                pos += 1
                return HFSet(elements)
            raise ValueError(f"expected ',' or '}}' at position {pos}")

    value = parse()
    if pos != len(text):
        raise ValueError(f"trailing input at position {pos}")
    return value


def tower(n: int) -> int:
    """tower(0) = 1 and tower(n+1) = 2 ** tower(n)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    value = 1
    for _ in range(n):
        value = 2**value
    return value


# |level 5| = 65536 is the enumeration ceiling; level 5 only behind the flag.
_LEVEL_CAP = 4
_LEVEL_MAX = 5


def v_level(n: int, *, allow_large: bool = False) -> frozenset[HFSet]:
    """The n-th iterated powerset of the empty set."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > _LEVEL_MAX or (n > _LEVEL_CAP and not allow_large):
        raise ValueError(
            f"level {n} is too large to enumerate"
            + (f"; pass allow_large=True for level {_LEVEL_MAX}" if n == _LEVEL_MAX else "")
        )
    return _v_level(n)


@lru_cache(maxsize=None)
def _v_level(n: int) -> frozenset[HFSet]:
    if n == 0:
        return frozenset()
    below = sorted(_v_level(n - 1))
    out = []
    for mask in range(1 << len(below)):
        out.append(HFSet(e for i, e in enumerate(below) if mask >> i & 1))
    return frozenset(out)


def model_of(a: HFSet) -> PointedModel:
    """The membership frame on the transitive closure of ``a``, pointed at ``a``.

    Worlds are canonical encodings; there is an edge x -> y iff y is an
    element of x; the signature is empty.
    """
    closure: dict[str, HFSet] = {}
    stack = [a]
    while stack:
        x = stack.pop()
        if x.encoding in closure:
            continue
        closure[x.encoding] = x
        stack.extend(x.elements)
    edges = {
        (x.encoding, y.encoding) for x in closure.values() for y in x.elements
    }
    return PointedModel(KripkeModel(closure.keys(), edges, {}), a.encoding)


def frame(n: int, *, allow_large: bool = False) -> KripkeModel:
    """The full membership frame on level n (edge x -> y iff y in x)."""
    level = v_level(n, allow_large=allow_large)
    edges = {(x.encoding, y.encoding) for x in level for y in x.elements}
    return KripkeModel((x.encoding for x in level), edges, {})


_VV_CAP = 4
_EE_CAP = 3


def vv_set(n: int) -> frozenset[PointedModel]:
    """Fresh-root joins of the singleton families from level n+1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > _VV_CAP:
        raise ValueError(f"n={n} is too large (level {n + 1} is not enumerable)")
    level = v_level(n + 1, allow_large=(n + 1 == _LEVEL_MAX))
    return frozenset(join([model_of(a)]) for a in level)


def ee_set(n: int) -> frozenset[PointedModel]:
    """Fresh-root joins of all unordered distinct pairs from level n+1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > _EE_CAP:
        raise ValueError(f"n={n} is too large (the pair count explodes)")
    level = sorted(v_level(n + 1))
    return frozenset(
        join([model_of(a), model_of(b)]) for a, b in itertools.combinations(level, 2)
    )
