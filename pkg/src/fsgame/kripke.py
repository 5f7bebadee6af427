"""Finite pointed Kripke models, successor operators, and the fresh-root join."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Mapping


class KripkeModel:
    """Immutable finite frame with a valuation.

    Worlds are opaque strings.  The proposition signature is exactly the key
    set of the valuation, so a proposition with empty extension must still be
    passed with an empty world set.  Two models are equal iff they have the
    same worlds, edges and valuation.
    """

    __slots__ = ("worlds", "edges", "valuation", "_succ", "_key", "_hash", "__weakref__")

    def __init__(
        self,
        worlds: Iterable[str],
        edges: Iterable[tuple[str, str]] = (),
        valuation: Mapping[str, Iterable[str]] | None = None,
    ) -> None:
        ws = frozenset(worlds)
        es = frozenset((u, v) for u, v in edges)
        val = {p: frozenset(extent) for p, extent in dict(valuation or {}).items()}
        for w in ws:
            if not isinstance(w, str):
                raise TypeError(f"world identifiers must be strings, got {w!r}")
        for u, v in es:
            if u not in ws or v not in ws:
                raise ValueError(f"edge ({u!r}, {v!r}) mentions a world outside the model")
        for p, extent in val.items():
            if not extent <= ws:
                raise ValueError(f"valuation of {p!r} mentions worlds outside the model")
        self.worlds = ws
        self.edges = es
        self.valuation = val
        succ: dict[str, list[str]] = {w: [] for w in ws}
        for u, v in es:
            succ[u].append(v)
        self._succ = {w: tuple(sorted(vs)) for w, vs in succ.items()}
        self._key = (
            tuple(sorted(ws)),
            tuple(sorted(es)),
            tuple(sorted((p, tuple(sorted(e))) for p, e in val.items())),
        )
        self._hash = hash(self._key)

    @property
    def prop_set(self) -> frozenset[str]:
        return frozenset(self.valuation)

    def succ(self, world: str) -> tuple[str, ...]:
        """Successor worlds of ``world``, sorted."""
        return self._succ[world]

    def props_at(self, world: str) -> frozenset[str]:
        """Propositions true at ``world``."""
        return frozenset(p for p, extent in self.valuation.items() if world in extent)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KripkeModel):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"KripkeModel({len(self.worlds)} worlds, {len(self.edges)} edges, props={sorted(self.valuation)})"


@dataclass(frozen=True)
class PointedModel:
    """A Kripke model with a distinguished evaluation point."""

    model: KripkeModel
    point: str

    def __post_init__(self) -> None:
        if self.point not in self.model.worlds:
            raise ValueError(f"point {self.point!r} is not a world of the model")

    def __repr__(self) -> str:
        return f"PointedModel(point={self.point!r}, {self.model!r})"


# A ModelSet is a plain frozenset; structural identity of the members is the
# deduplication criterion (no isomorphism checking here).
ModelSet = frozenset


def model_set(models: Iterable[PointedModel]) -> frozenset[PointedModel]:
    return frozenset(models)


def successors(p: PointedModel) -> frozenset[PointedModel]:
    """All pointed models (same frame) one step along the accessibility relation."""
    return frozenset(PointedModel(p.model, v) for v in p.model.succ(p.point))


def diamond_all(models: Iterable[PointedModel]) -> frozenset[PointedModel]:
    """Union of ``successors`` over a set of pointed models."""
    out: set[PointedModel] = set()
    for p in models:
        out.update(successors(p))
    return frozenset(out)


def diamond_choice(
    models: Iterable[PointedModel],
    choice: Mapping[PointedModel, PointedModel],
) -> frozenset[PointedModel]:
    """Image of a successor-choice function over a set of pointed models.

    ``choice`` must be total on the set and must map every member to one of
    its own successors.
    """
    out: set[PointedModel] = set()
    for p in models:
        if p not in choice:
            raise ValueError(f"choice function is not defined on {p!r}")
        target = choice[p]
        if target not in successors(p):
            raise ValueError(f"choice maps {p!r} outside its successor set")
        out.add(target)
    return frozenset(out)


def join(models: Iterable[PointedModel], *, root: str | None = None) -> PointedModel:
    """Attach a fresh root above a set of pointed models.

    The world set is the union of the member domains plus the root; the root
    has an edge to each member's point and satisfies no proposition.  Members
    sharing worlds must agree on outgoing edges and propositions there.
    """
    members = sorted(set(models), key=canonical_key)
    out_edges: dict[str, frozenset[str]] = {}
    props: dict[str, frozenset[str]] = {}
    seen_models: set[KripkeModel] = set()
    for pm in members:
        model = pm.model
        if model in seen_models:
            continue
        seen_models.add(model)
        for w in model.worlds:
            o = frozenset(model.succ(w))
            pr = model.props_at(w)
            if w in out_edges and (out_edges[w] != o or props[w] != pr):
                raise ValueError(f"members disagree on shared world {w!r}")
            out_edges[w] = o
            props[w] = pr
    if root is None:
        root = "_root"
        i = 0
        while root in out_edges:
            i += 1
            root = f"_root{i}"
    elif root in out_edges:
        raise ValueError(f"root {root!r} already occurs in a member")
    edges = {(w, v) for w, targets in out_edges.items() for v in targets}
    edges.update((root, pm.point) for pm in members)
    signature: set[str] = set()
    for model in seen_models:
        signature.update(model.prop_set)
    worlds = set(out_edges)
    valuation = {p: frozenset(w for w in worlds if p in props[w]) for p in signature}
    return PointedModel(KripkeModel(worlds | {root}, edges, valuation), root)


def generated(p: PointedModel) -> PointedModel:
    """Submodel on the worlds reachable from the point (signature preserved)."""
    model = p.model
    reach = {p.point}
    frontier = [p.point]
    while frontier:
        w = frontier.pop()
        for v in model.succ(w):
            if v not in reach:
                reach.add(v)
                frontier.append(v)
    edges = {(u, v) for (u, v) in model.edges if u in reach and v in reach}
    valuation = {q: extent & reach for q, extent in model.valuation.items()}
    return PointedModel(KripkeModel(reach, edges, valuation), p.point)


def pointed_to_dict(p: PointedModel) -> dict:
    """JSON-ready dict with sorted keys and arrays (byte-reproducible)."""
    m = p.model
    return {
        "worlds": sorted(m.worlds),
        "edges": sorted([u, v] for (u, v) in m.edges),
        "valuation": {q: sorted(extent) for q, extent in sorted(m.valuation.items())},
        "point": p.point,
    }


def pointed_from_dict(obj: object) -> PointedModel:
    if not isinstance(obj, dict):
        raise ValueError("model object must be a JSON object")
    missing = {"worlds", "edges", "valuation", "point"} - obj.keys()
    if missing:
        raise ValueError(f"model object is missing keys: {sorted(missing)}")
    worlds = obj["worlds"]
    edges = obj["edges"]
    valuation = obj["valuation"]
    point = obj["point"]
    if not isinstance(worlds, list) or not all(isinstance(w, str) for w in worlds):
        raise ValueError('"worlds" must be a list of strings')
    if not isinstance(edges, list) or not all(
        isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e) for e in edges
    ):
        raise ValueError('"edges" must be a list of [source, target] string pairs')
    if not isinstance(valuation, dict) or not all(
        isinstance(q, str) and isinstance(ws, list) and all(isinstance(w, str) for w in ws)
        for q, ws in valuation.items()
    ):
        raise ValueError('"valuation" must map proposition names to lists of worlds')
    if not isinstance(point, str):
        raise ValueError('"point" must be a string')
    model = KripkeModel(worlds, [tuple(e) for e in edges], valuation)
    return PointedModel(model, point)


def modelset_to_list(models: Iterable[PointedModel]) -> list[dict]:
    return [pointed_to_dict(p) for p in sorted(set(models), key=canonical_key)]


def modelset_from_list(objs: object) -> frozenset[PointedModel]:
    if not isinstance(objs, list):
        raise ValueError("model set must be a JSON array of model objects")
    return frozenset(pointed_from_dict(o) for o in objs)


@lru_cache(maxsize=None)
def canonical_key(p: PointedModel) -> str:
    """Stable total order on pointed models (canonical JSON encoding)."""
    return json.dumps(pointed_to_dict(p), sort_keys=True, separators=(",", ":"))


def read_pointed(path: str | Path) -> PointedModel:
    with open(path, encoding="utf-8") as fh:
        return pointed_from_dict(json.load(fh))


def write_pointed(path: str | Path, p: PointedModel) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(pointed_to_dict(p), fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_modelset(path: str | Path) -> frozenset[PointedModel]:
    with open(path, encoding="utf-8") as fh:
        return modelset_from_list(json.load(fh))


def write_modelset(path: str | Path, models: Iterable[PointedModel]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(modelset_to_list(models), fh, indent=2, sort_keys=True)
        fh.write("\n")
