"""Conflict graphs over join families, exact coloring, and coloring-guided play.

A family of singleton joins and a family of pair joins induce a graph: the
vertices are the unwrapped singletons and the edges are the pairs present in
the pair family.  Its chromatic number bounds the second player's safety: as
long as the connective budget k satisfies 2**k < chromatic number, the
responder below never loses.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .bisim import n_bisimilar
from .game import (
    GamePosition,
    IllegalMoveError,
    LeftSplit,
    LeftSucc,
    Move,
    RightSplit,
    RightSucc,
    apply_move,
    duplicator_bisim_strategy,
)
from .hierarchy import model_of, parse_hf
from .kripke import PointedModel, generated


@dataclass(frozen=True)
class Graph:
    """Finite simple graph; edges are stored as sorted pairs, no self-loops."""

    vertices: frozenset[str]
    edges: frozenset[tuple[str, str]]

    def __post_init__(self) -> None:
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at {u!r}")
            if (u, v) != tuple(sorted((u, v))):
                raise ValueError(f"edge ({u!r}, {v!r}) is not stored sorted")
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"edge ({u!r}, {v!r}) mentions an unknown vertex")


def make_graph(vertices: Iterable[str], edges: Iterable[tuple[str, str]]) -> Graph:
    norm = frozenset(tuple(sorted((u, v))) for u, v in edges)
    return Graph(frozenset(vertices), norm)


def _unwrap(member: PointedModel, expected: int) -> list[str]:
    """Recover the hierarchy elements under a join member's fresh root."""
    targets = member.model.succ(member.point)
    if len(targets) != expected:
        raise ValueError(
            f"member rooted at {member.point!r} has {len(targets)} children, expected {expected}"
        )
    if member.model.prop_set:
        raise ValueError("join members over the hierarchy carry no propositions")
    for world in targets:
        try:
            element = parse_hf(world)
        except ValueError as exc:
            raise ValueError(f"world {world!r} is not a canonical set encoding") from exc
        if generated(PointedModel(member.model, world)) != model_of(element):
            raise ValueError(f"submodel under {world!r} is not the membership frame of {world!r}")
    return list(targets)


def graph_of(vv: Iterable[PointedModel], ee: Iterable[PointedModel]) -> Graph:
    """The graph whose vertices unwrap the singleton joins and whose edges are
    the pairs (restricted to those vertices) present in the pair joins."""
    vv = frozenset(vv)
    if not vv:
        raise ValueError("the vertex family must be nonempty")
    vertices = {_unwrap(member, 1)[0] for member in vv}
    edges = set()
    for member in frozenset(ee):
        a, b = _unwrap(member, 2)
        if a in vertices and b in vertices:
            edges.add(tuple(sorted((a, b))))
    return Graph(frozenset(vertices), frozenset(edges))


def chromatic_number(g: Graph, *, max_vertices: int = 16) -> int:
    """Exact chromatic number via branch and bound.

    A saturation-greedy coloring provides the upper bound, a greedy clique the
    lower bound; the backtracking search follows the saturation order.
    """
    n = len(g.vertices)
    if n > max_vertices:
        raise ValueError(f"graph has {n} vertices, over the cap of {max_vertices}")
    if n == 0:
        return 0
    if not g.edges:
        return 1
    verts = sorted(g.vertices)
    index = {v: i for i, v in enumerate(verts)}
    adj = [0] * n
    for u, v in g.edges:
        adj[index[u]] |= 1 << index[v]
        adj[index[v]] |= 1 << index[u]
    lower = _greedy_clique(adj)
    upper = _dsatur_greedy(adj)
    if lower == upper:
        return upper

    best = upper
    colors = [-1] * n

    def pick() -> int:
        choice = -1
        choice_rank = (-1, -1)
        for v in range(n):
            if colors[v] != -1:
                continue
            sat = len({colors[u] for u in _bits(adj[v]) if colors[u] != -1})
            rank = (sat, bin(adj[v]).count("1"))
            if rank > choice_rank:
                choice_rank = rank
                choice = v
        return choice

    def backtrack(colored: int, used: int) -> None:
        nonlocal best
        if used >= best:
            return
        if colored == n:
            best = used
            return
        v = pick()
        forbidden = {colors[u] for u in _bits(adj[v])}
        for c in range(min(used + 1, best - 1)):
            if c in forbidden:
                continue
            colors[v] = c
            backtrack(colored + 1, max(used, c + 1))
            colors[v] = -1

    backtrack(0, 0)
    return best


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _greedy_clique(adj: list[int]) -> int:
    order = sorted(range(len(adj)), key=lambda v: -bin(adj[v]).count("1"))
    clique: list[int] = []
    for v in order:
        if all(adj[v] >> u & 1 for u in clique):
            clique.append(v)
    return len(clique)


def _dsatur_greedy(adj: list[int]) -> int:
    n = len(adj)
    colors = [-1] * n
    for _ in range(n):
        v = max(
            (u for u in range(n) if colors[u] == -1),
            key=lambda u: (
                len({colors[w] for w in _bits(adj[u]) if colors[w] != -1}),
                bin(adj[u]).count("1"),
            ),
        )
        taken = {colors[u] for u in _bits(adj[v])}
        c = 0
        while c in taken:
            c += 1
        colors[v] = c
    return max(colors) + 1


@lru_cache(maxsize=None)
def _chi(g: Graph) -> int:
    return chromatic_number(g)


def to_edge_list(g: Graph) -> str:
    """Edge-list text, one ``u v`` pair per line, for debugging."""
    return "\n".join(f"{u} {v}" for u, v in sorted(g.edges))


def _fits(k: int, chi: int) -> bool:
    # the guarantee needs k < log2(chi), i.e. 2**k < chi
    return (1 << k) < chi


class StrategyInvariantBroken(RuntimeError):
    """The coloring invariant failed; indicates a malformed position."""


def duplicator_coloring_strategy(pos: GamePosition) -> "_ColoringResponder":
    """Second-player play for positions of (singleton-family, pair-family)
    shape, valid whenever 2**k is below the chromatic number of the graph."""
    g = graph_of(pos.left, pos.right)
    chi = _chi(g)
    if chi < 2:
        raise ValueError(f"chromatic number {chi} is below 2; no guarantee applies")
    if not _fits(pos.k, chi):
        raise ValueError(f"budget k={pos.k} is not below log2({chi})")
    return _ColoringResponder(pos)


@dataclass
class _ColoringResponder:
    """Branch choices that keep the chromatic bound invariant; successor moves
    hand off to a pinned-pair responder on a duplicated model."""

    position: GamePosition

    def respond(self, move: Move) -> tuple[str | None, object]:
        pos = self.position
        if isinstance(move, LeftSplit):
            branches = (("left", move.k1, move.left1), ("right", move.k2, move.left2))
            for name, k_i, vv_i in branches:
                if vv_i and _fits(k_i, _chi(graph_of(vv_i, pos.right))):
                    nxt = apply_move(pos, move, name)
                    return name, _ColoringResponder(nxt)
            raise StrategyInvariantBroken("no split branch preserves the coloring bound")
        if isinstance(move, RightSplit):
            branches = (("left", move.k1, move.right1), ("right", move.k2, move.right2))
            for name, k_i, ee_i in branches:
                if _fits(k_i, _chi(graph_of(pos.left, ee_i))):
                    nxt = apply_move(pos, move, name)
                    return name, _ColoringResponder(nxt)
            raise StrategyInvariantBroken("no split branch preserves the coloring bound")
        if isinstance(move, (LeftSucc, RightSucc)):
            return None, self._hand_off(move)
        raise IllegalMoveError(f"not a move: {move!r}")

    def _hand_off(self, move: LeftSucc | RightSucc):
        pos = self.position
        g = graph_of(pos.left, pos.right)
        a, b = min(g.edges)
        by_vertex = {_unwrap(member, 1)[0]: member for member in pos.left}
        by_pair = {frozenset(_unwrap(member, 2)): member for member in pos.right}
        pair_member = by_pair[frozenset((a, b))]
        nxt = apply_move(pos, move, None)
        if isinstance(move, LeftSucc):
            pin_left = move.choice[by_vertex[a]]
            pin_right = PointedModel(pair_member.model, a)
        else:
            pin_right = move.choice[pair_member]
            c = pin_right.point
            pin_left = PointedModel(by_vertex[c].model, c)
        witness = n_bisimilar(pin_left, pin_right, nxt.m)
        if witness is None:
            raise StrategyInvariantBroken("duplicated model is not deeply equivalent")
        return duplicator_bisim_strategy(nxt, witness)
