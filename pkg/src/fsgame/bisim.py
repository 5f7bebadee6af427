"""Depth-bounded and full bisimulation: checks, witnesses, quotients.

The workhorse is iterated signature refinement: worlds are colored first by
their proposition set and then, round by round, by the *set* of successor
colors.  Colors are hash-consed into integer ids shared process-wide, which
makes depth-bounded equivalence a single integer comparison and gives the
game solver cheap canonical keys.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache

from .kripke import KripkeModel, PointedModel, successors


class _TypeTable:
    """Hash-consed behavior descriptors: (propositions, set of child ids)."""

    def __init__(self) -> None:
        self._ids: dict[tuple[frozenset[str], frozenset[int]], int] = {}
        self._props: list[frozenset[str]] = []
        self._children: list[frozenset[int]] = []
        self._keys: list[str] = []
        self._lock = threading.Lock()

    def intern(self, props: frozenset[str], children: frozenset[int]) -> int:
        key = (props, children)
        tid = self._ids.get(key)
        if tid is not None:
            return tid
        with self._lock:
            tid = self._ids.get(key)
            if tid is None:
                tid = len(self._props)
                self._props.append(props)
                self._children.append(children)
                ckeys = sorted(self._keys[c] for c in children)
                self._keys.append("(" + ",".join(sorted(props)) + ";" + "|".join(ckeys) + ")")
                self._ids[key] = tid
        return tid

    def props(self, tid: int) -> frozenset[str]:
        return self._props[tid]

    def children(self, tid: int) -> frozenset[int]:
        return self._children[tid]

    def sort_key(self, tid: int) -> str:
        return self._keys[tid]


TYPES = _TypeTable()


@lru_cache(maxsize=None)
def _layer(model: KripkeModel, depth: int) -> dict[str, int]:
    if depth == 0:
        return {w: TYPES.intern(model.props_at(w), frozenset()) for w in model.worlds}
    prev = _layer(model, depth - 1)
    return {
        w: TYPES.intern(model.props_at(w), frozenset(prev[v] for v in model.succ(w)))
        for w in model.worlds
    }


def bounded_type(p: PointedModel, depth: int) -> int:
    """Id of the depth-bounded equivalence class of the distinguished point.

    Two pointed models (over any frames, same signature) are depth-n
    back-and-forth equivalent iff their ids at depth n coincide.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    return _layer(p.model, depth)[p.point]


@lru_cache(maxsize=None)
def truncate_type(tid: int, depth: int) -> int:
    """Coarsen a type id to a smaller depth."""
    props = TYPES.props(tid)
    if depth == 0:
        return TYPES.intern(props, frozenset())
    children = frozenset(truncate_type(c, depth - 1) for c in TYPES.children(tid))
    return TYPES.intern(props, children)


def _check_signatures(p: PointedModel, q: PointedModel) -> None:
    if p.model.prop_set != q.model.prop_set:
        raise ValueError(
            f"signature mismatch: {sorted(p.model.prop_set)} vs {sorted(q.model.prop_set)}"
        )


def prop_equivalent(p: PointedModel, q: PointedModel) -> bool:
    """True iff the two distinguished points satisfy the same propositions."""
    _check_signatures(p, q)
    return p.model.props_at(p.point) == q.model.props_at(q.point)


@dataclass(frozen=True)
class BisimWitness:
    """Nested relations Z_depth <= ... <= Z_0 certifying depth-bounded equivalence.

    Layers are materialized lazily; the solver never needs them, only
    verification does.
    """

    left: PointedModel
    right: PointedModel
    depth: int

    @property
    def layers(self) -> tuple[frozenset[tuple[str, str]], ...]:
        """layers[i] relates worlds of the two models that are i-equivalent."""
        return _witness_layers(self)

    def layer(self, i: int) -> frozenset[tuple[str, str]]:
        return self.layers[i]

    def verify(self) -> bool:
        """Clause-by-clause check of the layered relations, from raw structure."""
        zs = self.layers
        lm, rm = self.left.model, self.right.model
        if (self.left.point, self.right.point) not in zs[self.depth]:
            return False
        for v, v2 in zs[0]:
            if lm.props_at(v) != rm.props_at(v2):
                return False
        for i in range(self.depth):
            if not zs[i + 1] <= zs[i]:
                return False
            for v, v2 in zs[i + 1]:
                for u in lm.succ(v):
                    if not any((u, u2) in zs[i] for u2 in rm.succ(v2)):
                        return False
                for u2 in rm.succ(v2):
                    if not any((u, u2) in zs[i] for u in lm.succ(v)):
                        return False
        return True


@lru_cache(maxsize=None)
def _witness_layers(w: BisimWitness) -> tuple[frozenset[tuple[str, str]], ...]:
    out = []
    for i in range(w.depth + 1):
        left = _layer(w.left.model, i)
        right = _layer(w.right.model, i)
        out.append(
            frozenset(
                (v, v2) for v in w.left.model.worlds for v2 in w.right.model.worlds
                if left[v] == right[v2]
            )
        )
    return tuple(out)


def n_bisimilar(p: PointedModel, q: PointedModel, n: int) -> BisimWitness | None:
    """A witness if the pointed models are depth-n equivalent, else None."""
    _check_signatures(p, q)
    if bounded_type(p, n) != bounded_type(q, n):
        return None
    return BisimWitness(p, q, n)


def _reachable(p: PointedModel) -> list[str]:
    seen = {p.point}
    frontier = [p.point]
    while frontier:
        w = frontier.pop()
        for v in p.model.succ(w):
            if v not in seen:
                seen.add(v)
                frontier.append(v)
    return sorted(seen)


def quotient(p: PointedModel, depth: int | None = None) -> PointedModel:
    """Collapse the reachable part under depth-bounded world equivalence.

    With ``depth=None`` the refinement runs to its fixpoint, i.e. full
    bisimulation.  The result is depth-n equivalent to the input (fully
    equivalent in the unbounded case).
    """
    model = p.model
    reach = _reachable(p)
    if depth is None:
        d = 0
        while True:
            cur = _layer(model, d)
            nxt = _layer(model, d + 1)
            if _partition(cur, reach) == _partition(nxt, reach):
                break
            d += 1
        depth = d
    elif depth < 0:
        raise ValueError("depth must be non-negative")
    labels = _layer(model, depth)
    classes: dict[int, list[str]] = {}
    for w in reach:
        classes.setdefault(labels[w], []).append(w)
    ordered = sorted(classes.values())
    name: dict[str, str] = {}
    for i, members in enumerate(ordered):
        for w in members:
            name[w] = f"c{i}"
    worlds = {f"c{i}" for i in range(len(ordered))}
    edges = {(name[u], name[v]) for u in reach for v in model.succ(u)}
    valuation = {
        q: frozenset(name[w] for w in reach if w in extent)
        for q, extent in model.valuation.items()
    }
    return PointedModel(KripkeModel(worlds, edges, valuation), name[p.point])


def _partition(labels: dict[str, int], worlds: list[str]) -> frozenset[frozenset[str]]:
    groups: dict[int, set[str]] = {}
    for w in worlds:
        groups.setdefault(labels[w], set()).add(w)
    return frozenset(frozenset(g) for g in groups.values())


def in_class_A(p: PointedModel, n: int) -> bool:
    """True iff all successors of the point are pairwise depth-n equivalent."""
    succ = successors(p)
    if len(succ) <= 1:
        return True
    types = {bounded_type(s, n) for s in succ}
    return len(types) == 1
