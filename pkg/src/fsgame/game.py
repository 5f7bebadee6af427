"""The two-player budget game on pairs of model sets.

A position carries a modal budget m, a connective budget k, and two sets of
pointed models.  The first player claims the sets can be separated by a
formula with at most m modal operators and k binary connectives and moves by
splitting one side (a connective) or advancing both sides along the
accessibility relation (a modal operator); the second player picks a branch
after every split.  The solver is exact and memoized on depth-m behavior
classes, so its verdicts depend only on what formulas within budget can see.
"""

from __future__ import annotations

import itertools
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Mapping

from . import kripke
from .bisim import TYPES, BisimWitness, bounded_type, truncate_type
from .kripke import PointedModel, canonical_key, diamond_all, diamond_choice, successors
from .logic import ml
from .logic.ml import BOT, TOP, MLFormula, NegProp, Prop, eval_ml, ml_sizes, separates

DEFAULT_NODE_LIMIT = 10_000_000


class SearchBudgetExceeded(RuntimeError):
    """The solver ran out of its node budget; this is not a verdict."""

    def __init__(self, nodes: int) -> None:
        super().__init__(f"search budget exceeded after {nodes} explored states")
        self.nodes = nodes


class IllegalMoveError(ValueError):
    pass


class StrategyError(ValueError):
    pass


@dataclass(frozen=True)
class GamePosition:
    m: int
    k: int
    left: frozenset[PointedModel]
    right: frozenset[PointedModel]

    def __post_init__(self) -> None:
        if self.m < 0 or self.k < 0:
            raise ValueError("budgets must be non-negative")
        object.__setattr__(self, "left", frozenset(self.left))
        object.__setattr__(self, "right", frozenset(self.right))


def position_signature(pos: GamePosition) -> frozenset[str]:
    """The common proposition signature of all member models.

    Mixed signatures are rejected: a literal over one member's signature
    would be unevaluable on another.
    """
    sigs = {p.model.prop_set for p in pos.left | pos.right}
    if len(sigs) > 1:
        raise ValueError(f"position mixes signatures: {sorted(sorted(s) for s in sigs)}")
    return next(iter(sigs), frozenset())


@dataclass
class LeftSplit:
    m1: int
    k1: int
    left1: frozenset[PointedModel]
    m2: int
    k2: int
    left2: frozenset[PointedModel]


@dataclass
class RightSplit:
    m1: int
    k1: int
    right1: frozenset[PointedModel]
    m2: int
    k2: int
    right2: frozenset[PointedModel]


@dataclass
class LeftSucc:
    choice: Mapping[PointedModel, PointedModel]


@dataclass
class RightSucc:
    choice: Mapping[PointedModel, PointedModel]


Move = LeftSplit | RightSplit | LeftSucc | RightSucc


@dataclass(frozen=True)
class SWin:
    literal: MLFormula


@dataclass(frozen=True)
class DWin:
    pass


@dataclass(frozen=True)
class Ongoing:
    pass


D_WIN = DWin()
ONGOING = Ongoing()


def _literals(signature: Iterable[str]) -> list[MLFormula]:
    # BOT first: when both sides are empty every literal separates vacuously
    # and the tie is broken in favor of BOT.
    out: list[MLFormula] = [BOT, TOP]
    for p in sorted(set(signature)):
        out.append(Prop(p))
        out.append(NegProp(p))
    return out


def terminal_status(pos: GamePosition) -> SWin | DWin | Ongoing:
    """S wins if a literal separates; D wins at exhausted budgets or stuck positions."""
    for lit in _literals(position_signature(pos)):
        if separates(lit, pos.left, pos.right):
            return SWin(lit)
    if pos.m == 0 and pos.k == 0:
        return D_WIN
    if not _has_legal_move(pos):
        return D_WIN
    return ONGOING


def _side_can_advance(side: frozenset[PointedModel]) -> bool:
    return all(p.model.succ(p.point) for p in side)


def _has_legal_move(pos: GamePosition) -> bool:
    if pos.k >= 1:
        return True
    if pos.m >= 1 and (_side_can_advance(pos.left) or _side_can_advance(pos.right)):
        return True
    return False


def _sorted_members(side: frozenset[PointedModel]) -> list[PointedModel]:
    return sorted(side, key=canonical_key)


def legal_moves(pos: GamePosition) -> list[Move]:
    """Every legal move: partition splits when k >= 1, all successor-choice
    functions on a side whose members all have successors when m >= 1."""
    moves: list[Move] = []
    if pos.k >= 1:
        for split_left in (True, False):
            side = pos.left if split_left else pos.right
            members = _sorted_members(side)
            for mask in range(1 << len(members)):
                part1 = frozenset(p for i, p in enumerate(members) if mask >> i & 1)
                part2 = side - part1
                for k1 in range(pos.k):
                    k2 = pos.k - 1 - k1
                    for m1 in range(pos.m + 1):
                        m2 = pos.m - m1
                        if split_left:
                            moves.append(LeftSplit(m1, k1, part1, m2, k2, part2))
                        else:
                            moves.append(RightSplit(m1, k1, part1, m2, k2, part2))
    if pos.m >= 1:
        for is_left in (True, False):
            side = pos.left if is_left else pos.right
            if not _side_can_advance(side):
                continue
            members = _sorted_members(side)
            options = [sorted(successors(p), key=canonical_key) for p in members]
            for combo in itertools.product(*options):
                choice = dict(zip(members, combo))
                moves.append(LeftSucc(choice) if is_left else RightSucc(choice))
    return moves


def _check_split(pos: GamePosition, move: LeftSplit | RightSplit) -> None:
    side = pos.left if isinstance(move, LeftSplit) else pos.right
    part1 = move.left1 if isinstance(move, LeftSplit) else move.right1
    part2 = move.left2 if isinstance(move, LeftSplit) else move.right2
    if pos.k < 1:
        raise IllegalMoveError("splitting requires a connective budget of at least 1")
    if move.m1 + move.m2 != pos.m or move.k1 + move.k2 + 1 != pos.k:
        raise IllegalMoveError("split budgets do not add up")
    if min(move.m1, move.m2, move.k1, move.k2) < 0:
        raise IllegalMoveError("split budgets must be non-negative")
    if not (part1 <= side and part2 <= side and part1 | part2 == side):
        raise IllegalMoveError("split sets must be subsets covering the split side")


def _check_succ(pos: GamePosition, move: LeftSucc | RightSucc) -> None:
    side = pos.left if isinstance(move, LeftSucc) else pos.right
    if pos.m < 1:
        raise IllegalMoveError("successor moves require a modal budget of at least 1")
    if set(move.choice.keys()) != set(side):
        raise IllegalMoveError("choice function must be total on the advanced side")
    for p, target in move.choice.items():
        if target not in successors(p):
            raise IllegalMoveError(f"choice maps {p!r} outside its successor set")


def apply_move(pos: GamePosition, move: Move, d_choice: str | None = None) -> GamePosition:
    """The position after S's move (and D's branch choice, for splits)."""
    if isinstance(move, (LeftSplit, RightSplit)):
        _check_split(pos, move)
        if d_choice not in ("left", "right"):
            raise IllegalMoveError('split moves need a branch choice of "left" or "right"')
        if isinstance(move, LeftSplit):
            if d_choice == "left":
                return GamePosition(move.m1, move.k1, move.left1, pos.right)
            return GamePosition(move.m2, move.k2, move.left2, pos.right)
        if d_choice == "left":
            return GamePosition(move.m1, move.k1, pos.left, move.right1)
        return GamePosition(move.m2, move.k2, pos.left, move.right2)
    if isinstance(move, (LeftSucc, RightSucc)):
        _check_succ(pos, move)
        if d_choice is not None:
            raise IllegalMoveError("successor moves take no branch choice")
        if isinstance(move, LeftSucc):
            return GamePosition(
                pos.m - 1, pos.k, diamond_choice(pos.left, move.choice), diamond_all(pos.right)
            )
        return GamePosition(
            pos.m - 1, pos.k, diamond_all(pos.left), diamond_choice(pos.right, move.choice)
        )
    raise IllegalMoveError(f"not a move: {move!r}")


_MISS = object()


class _Solver:
    """Exhaustive memoized search over behavior-class positions.

    Sets are abstracted to sets of depth-m type ids (see ``bisim``); positions
    whose members are pairwise depth-m equivalent therefore share memo
    entries, and successor choices range over equivalence classes of
    successors rather than raw successors.
    """

    def __init__(self, signature: Iterable[str], node_limit: int) -> None:
        self.literals = _literals(signature)
        self.node_limit = node_limit
        self.memo: dict[tuple, MLFormula | None] = {}
        self.nodes = 0
        self._count_lock = threading.Lock()

    def win(self, m: int, k: int, left: frozenset[int], right: frozenset[int]) -> MLFormula | None:
        left = frozenset(truncate_type(t, m) for t in left)
        right = frozenset(truncate_type(t, m) for t in right)
        key = (m, k, left, right)
        hit = self.memo.get(key, _MISS)
        if hit is not _MISS:
            return hit
        with self._count_lock:
            self.nodes += 1
            nodes = self.nodes
        if nodes > self.node_limit:
            raise SearchBudgetExceeded(nodes)
        result = self._search(m, k, left, right)
        self.memo[key] = result
        return result

    def _search(self, m: int, k: int, A: frozenset[int], B: frozenset[int]) -> MLFormula | None:
        for lit in self.literals:
            if _literal_separates(lit, A, B):
                return lit
        if A & B:
            # a shared depth-m class defeats every formula within the budget
            return None
        if m == 0 and k == 0:
            return None
        if m >= 1:
            if all(TYPES.children(t) for t in A):
                b_all = _union_children(B)
                for image in _choice_images(A):
                    sub = self.win(m - 1, k, image, b_all)
                    if sub is not None:
                        return ml.Diamond(sub)
            if all(TYPES.children(t) for t in B):
                a_all = _union_children(A)
                for image in _choice_images(B):
                    sub = self.win(m - 1, k, a_all, image)
                    if sub is not None:
                        return ml.Box(sub)
        if k >= 1:
            found = self._try_splits(m, k, A, B, split_left=True)
            if found is not None:
                return found
            found = self._try_splits(m, k, A, B, split_left=False)
            if found is not None:
                return found
        return None

    def _try_splits(
        self, m: int, k: int, A: frozenset[int], B: frozenset[int], *, split_left: bool
    ) -> MLFormula | None:
        side = A if split_left else B
        for part1, part2 in _anchored_partitions(side):
            for k1 in range(k):
                k2 = k - 1 - k1
                for m1 in range(m + 1):
                    m2 = m - m1
                    if split_left:
                        f1 = self.win(m1, k1, part1, B)
                        if f1 is None:
                            continue
                        f2 = self.win(m2, k2, part2, B)
                        if f2 is None:
                            continue
                        return ml.Or(f1, f2)
                    f1 = self.win(m1, k1, A, part1)
                    if f1 is None:
                        continue
                    f2 = self.win(m2, k2, A, part2)
                    if f2 is None:
                        continue
                    return ml.And(f1, f2)
        return None


def _literal_separates(lit: MLFormula, A: frozenset[int], B: frozenset[int]) -> bool:
    return all(_literal_truth(lit, t) for t in A) and not any(_literal_truth(lit, t) for t in B)


def _literal_truth(lit: MLFormula, tid: int) -> bool:
    if isinstance(lit, ml.Top):
        return True
    if isinstance(lit, ml.Bot):
        return False
    if isinstance(lit, Prop):
        return lit.name in TYPES.props(tid)
    return lit.name not in TYPES.props(tid)


def _union_children(types: frozenset[int]) -> frozenset[int]:
    out: set[int] = set()
    for t in types:
        out.update(TYPES.children(t))
    return frozenset(out)


def _choice_images(types: frozenset[int]) -> list[frozenset[int]]:
    members = sorted(types, key=TYPES.sort_key)
    options = [sorted(TYPES.children(t), key=TYPES.sort_key) for t in members]
    images: list[frozenset[int]] = []
    seen: set[frozenset[int]] = set()
    for combo in itertools.product(*options):
        image = frozenset(combo)
        if image not in seen:
            seen.add(image)
            images.append(image)
    return images


def _anchored_partitions(side: frozenset[int]) -> list[tuple[frozenset[int], frozenset[int]]]:
    members = sorted(side, key=TYPES.sort_key)
    if not members:
        return [(frozenset(), frozenset())]
    # every unordered partition once: the first member is pinned to part 1
    anchor, rest = members[0], members[1:]
    out = []
    for mask in range(1 << len(rest)):
        part1 = frozenset([anchor] + [t for i, t in enumerate(rest) if mask >> i & 1])
        out.append((part1, side - part1))
    return out


@dataclass(frozen=True)
class SpoilerWins:
    strategy: "SpoilerStrategy"
    formula: MLFormula
    nodes: int


@dataclass(frozen=True)
class DuplicatorWins:
    nodes: int


Verdict = SpoilerWins | DuplicatorWins


def solve(
    pos: GamePosition, *, node_limit: int | None = None, threads: int = 1
) -> Verdict:
    """Exact verdict by exhaustive memoized search.

    Raises ``SearchBudgetExceeded`` (never a verdict) when the node ceiling is
    hit.  ``threads > 1`` explores the root moves concurrently and returns the
    same verdict as the single-threaded search.
    """
    signature = position_signature(pos)
    limit = DEFAULT_NODE_LIMIT if node_limit is None else node_limit
    A = frozenset(bounded_type(p, pos.m) for p in pos.left)
    B = frozenset(bounded_type(q, pos.m) for q in pos.right)
    solver = _Solver(signature, limit)
    if threads > 1:
        formula = _solve_parallel(solver, pos.m, pos.k, A, B, threads)
    else:
        formula = solver.win(pos.m, pos.k, A, B)
    if formula is None:
        return DuplicatorWins(nodes=solver.nodes)
    strategy = _strategy_for(formula, pos)
    return SpoilerWins(strategy=strategy, formula=formula, nodes=solver.nodes)


def _solve_parallel(
    solver: _Solver, m: int, k: int, A: frozenset[int], B: frozenset[int], threads: int
) -> MLFormula | None:
    """Root-level parallel search sharing the memo table.

    Workers may duplicate work; results are pure so duplicates agree.  The
    verdict is decided from the results in canonical move order.
    """
    A = frozenset(truncate_type(t, m) for t in A)
    B = frozenset(truncate_type(t, m) for t in B)
    for lit in solver.literals:
        if _literal_separates(lit, A, B):
            return lit
    if A & B or (m == 0 and k == 0):
        return None

    tasks: list[Callable[[], MLFormula | None]] = []

    def succ_task(advance_left: bool, image: frozenset[int]) -> Callable[[], MLFormula | None]:
        def run() -> MLFormula | None:
            if advance_left:
                sub = solver.win(m - 1, k, image, _union_children(B))
                return None if sub is None else ml.Diamond(sub)
            sub = solver.win(m - 1, k, _union_children(A), image)
            return None if sub is None else ml.Box(sub)

        return run

    def split_task(
        split_left: bool, parts: tuple[frozenset[int], frozenset[int]], m1: int, k1: int
    ) -> Callable[[], MLFormula | None]:
        def run() -> MLFormula | None:
            part1, part2 = parts
            m2, k2 = m - m1, k - 1 - k1
            if split_left:
                f1 = solver.win(m1, k1, part1, B)
                f2 = solver.win(m2, k2, part2, B) if f1 is not None else None
                return ml.Or(f1, f2) if f1 is not None and f2 is not None else None
            f1 = solver.win(m1, k1, A, part1)
            f2 = solver.win(m2, k2, A, part2) if f1 is not None else None
            return ml.And(f1, f2) if f1 is not None and f2 is not None else None

        return run

    if m >= 1:
        if all(TYPES.children(t) for t in A):
            for image in _choice_images(A):
                tasks.append(succ_task(True, image))
        if all(TYPES.children(t) for t in B):
            for image in _choice_images(B):
                tasks.append(succ_task(False, image))
    if k >= 1:
        for split_left in (True, False):
            side = A if split_left else B
            for parts in _anchored_partitions(side):
                for k1 in range(k):
                    for m1 in range(m + 1):
                        tasks.append(split_task(split_left, parts, m1, k1))

    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(lambda task: task(), tasks))
    for result in results:
        if result is not None:
            return result
    return None


@dataclass
class SpoilerStrategy:
    """Certificate tree for a first-player win.

    Leaves carry the separating literal.  Split nodes carry two children, one
    per branch the second player may pick; successor nodes carry one child.
    """

    position: GamePosition
    move: Move | None
    literal: MLFormula | None
    children: tuple["SpoilerStrategy", ...]


def strategy_from_formula(
    f: MLFormula, a: Iterable[PointedModel], b: Iterable[PointedModel]
) -> SpoilerStrategy:
    """Turn a separating formula into a winning strategy for the position
    whose budgets are exactly the formula's sizes."""
    a, b = frozenset(a), frozenset(b)
    sizes = ml_sizes(f)
    return _strategy_for(f, GamePosition(sizes.ms, sizes.cs, a, b))


def _strategy_for(f: MLFormula, pos: GamePosition) -> SpoilerStrategy:
    if not separates(f, pos.left, pos.right):
        raise ValueError(f"formula {f} does not separate the given sets")
    if isinstance(f, (ml.Top, ml.Bot, Prop, NegProp)):
        return SpoilerStrategy(pos, None, f, ())
    if isinstance(f, ml.Or):
        lsz, rsz = ml_sizes(f.left), ml_sizes(f.right)
        part1 = frozenset(p for p in pos.left if eval_ml(p, f.left))
        part2 = frozenset(p for p in pos.left if eval_ml(p, f.right))
        move = LeftSplit(lsz.ms, lsz.cs, part1, pos.m - lsz.ms, pos.k - 1 - lsz.cs, part2)
        return SpoilerStrategy(
            pos,
            move,
            None,
            (
                _strategy_for(f.left, apply_move(pos, move, "left")),
                _strategy_for(f.right, apply_move(pos, move, "right")),
            ),
        )
    if isinstance(f, ml.And):
        lsz, rsz = ml_sizes(f.left), ml_sizes(f.right)
        part1 = frozenset(q for q in pos.right if not eval_ml(q, f.left))
        part2 = frozenset(q for q in pos.right if not eval_ml(q, f.right))
        move = RightSplit(lsz.ms, lsz.cs, part1, pos.m - lsz.ms, pos.k - 1 - lsz.cs, part2)
        return SpoilerStrategy(
            pos,
            move,
            None,
            (
                _strategy_for(f.left, apply_move(pos, move, "left")),
                _strategy_for(f.right, apply_move(pos, move, "right")),
            ),
        )
    if isinstance(f, ml.Diamond):
        choice = {}
        for p in _sorted_members(pos.left):
            choice[p] = next(
                s for s in sorted(successors(p), key=canonical_key) if eval_ml(s, f.child)
            )
        move = LeftSucc(choice)
        return SpoilerStrategy(
            pos, move, None, (_strategy_for(f.child, apply_move(pos, move, None)),)
        )
    if isinstance(f, ml.Box):
        choice = {}
        for q in _sorted_members(pos.right):
            choice[q] = next(
                s for s in sorted(successors(q), key=canonical_key) if not eval_ml(s, f.child)
            )
        move = RightSucc(choice)
        return SpoilerStrategy(
            pos, move, None, (_strategy_for(f.child, apply_move(pos, move, None)),)
        )
    raise TypeError(f"not a modal formula node: {f!r}")


def extract_formula(strategy: SpoilerStrategy) -> MLFormula:
    """Read the separating formula off a strategy tree: left splits become
    disjunctions, right splits conjunctions, successor moves modal operators."""
    if strategy.move is None:
        if strategy.literal is None:
            raise StrategyError("leaf without a literal")
        return strategy.literal
    move = strategy.move
    if isinstance(move, (LeftSplit, RightSplit)):
        if len(strategy.children) != 2:
            raise StrategyError("split nodes need one child per branch")
        left = extract_formula(strategy.children[0])
        right = extract_formula(strategy.children[1])
        return ml.Or(left, right) if isinstance(move, LeftSplit) else ml.And(left, right)
    if isinstance(move, (LeftSucc, RightSucc)):
        if len(strategy.children) != 1:
            raise StrategyError("successor nodes need exactly one child")
        child = extract_formula(strategy.children[0])
        return ml.Diamond(child) if isinstance(move, LeftSucc) else ml.Box(child)
    raise StrategyError(f"not a move: {move!r}")


def verify_strategy(strategy: SpoilerStrategy) -> None:
    """Exhaustive playout of every branch; raises ``StrategyError`` unless all
    leaves carry a literal that separates their position."""
    pos = strategy.position
    if strategy.move is None:
        if strategy.literal is None:
            raise StrategyError("leaf without a literal")
        if not separates(strategy.literal, pos.left, pos.right):
            raise StrategyError(f"leaf literal {strategy.literal} does not separate")
        return
    move = strategy.move
    try:
        if isinstance(move, (LeftSplit, RightSplit)):
            expected = (apply_move(pos, move, "left"), apply_move(pos, move, "right"))
        else:
            expected = (apply_move(pos, move, None),)
    except IllegalMoveError as exc:
        raise StrategyError(f"illegal move in strategy: {exc}") from exc
    if len(strategy.children) != len(expected):
        raise StrategyError("wrong number of children for the recorded move")
    for child, child_pos in zip(strategy.children, expected):
        if child.position != child_pos:
            raise StrategyError("child position does not match the move")
        verify_strategy(child)


def duplicator_bisim_strategy(pos: GamePosition, witness: BisimWitness) -> "_BisimResponder":
    """A responder that keeps a depth-m equivalent cross pair pinned forever.

    The witness must relate a member of the left set to a member of the right
    set at depth at least ``pos.m``.
    """
    if witness.left not in pos.left:
        raise ValueError("witness left model is not in the left set")
    if witness.right not in pos.right:
        raise ValueError("witness right model is not in the right set")
    if witness.depth < pos.m:
        raise ValueError(f"witness depth {witness.depth} is less than the modal budget {pos.m}")
    if bounded_type(witness.left, witness.depth) != bounded_type(witness.right, witness.depth):
        raise ValueError("witness pair is not equivalent at its stated depth")
    return _BisimResponder(pos, witness.left, witness.right)


@dataclass
class _BisimResponder:
    """Second-player play glued to a pinned equivalent pair."""

    position: GamePosition
    pin_left: PointedModel
    pin_right: PointedModel

    def respond(self, move: Move) -> tuple[str | None, "_BisimResponder"]:
        pos = self.position
        if isinstance(move, LeftSplit):
            choice = "left" if self.pin_left in move.left1 else "right"
            return choice, replace(self, position=apply_move(pos, move, choice))
        if isinstance(move, RightSplit):
            choice = "left" if self.pin_right in move.right1 else "right"
            return choice, replace(self, position=apply_move(pos, move, choice))
        depth = pos.m - 1
        nxt = apply_move(pos, move, None)
        if isinstance(move, LeftSucc):
            new_left = move.choice[self.pin_left]
            new_right = _matching_successor(self.pin_right, new_left, depth)
            return None, _BisimResponder(nxt, new_left, new_right)
        if isinstance(move, RightSucc):
            new_right = move.choice[self.pin_right]
            new_left = _matching_successor(self.pin_left, new_right, depth)
            return None, _BisimResponder(nxt, new_left, new_right)
        raise IllegalMoveError(f"not a move: {move!r}")


def _matching_successor(p: PointedModel, target: PointedModel, depth: int) -> PointedModel:
    wanted = bounded_type(target, depth)
    for s in sorted(successors(p), key=canonical_key):
        if bounded_type(s, depth) == wanted:
            return s
    raise StrategyError("pinned pair is not equivalent deeply enough to answer")


def exhaustive_playout(responder) -> bool:
    """Play every legal first-player continuation against the responder.

    Returns True iff no reachable terminal is a first-player win.
    """
    pos = responder.position
    status = terminal_status(pos)
    if isinstance(status, SWin):
        return False
    if isinstance(status, DWin):
        return True
    for move in legal_moves(pos):
        _, nxt = responder.respond(move)
        if not exhaustive_playout(nxt):
            return False
    return True


def minimal_separating(
    a: Iterable[PointedModel],
    b: Iterable[PointedModel],
    max_total: int,
    *,
    node_limit: int | None = None,
) -> list[tuple[int, int, MLFormula]]:
    """All budget-minimal (m, k) with m + k <= max_total that admit a
    separating formula, each with one such formula.

    Minimality is componentwise; the search shares one memo table across the
    whole budget grid.
    """
    if max_total < 0:
        raise ValueError("budget must be non-negative")
    a, b = frozenset(a), frozenset(b)
    signature = position_signature(GamePosition(0, 0, a, b))
    limit = DEFAULT_NODE_LIMIT if node_limit is None else node_limit
    solver = _Solver(signature, limit)
    frontier: list[tuple[int, int, MLFormula]] = []
    for total in range(max_total + 1):
        for m in range(total + 1):
            k = total - m
            if any(fm <= m and fk <= k for fm, fk, _ in frontier):
                continue
            A = frozenset(bounded_type(p, m) for p in a)
            B = frozenset(bounded_type(q, m) for q in b)
            formula = solver.win(m, k, A, B)
            if formula is not None:
                frontier.append((m, k, formula))
    return sorted(frontier, key=lambda entry: (entry[0], entry[1]))


def position_to_dict(pos: GamePosition) -> dict:
    return {
        "m": pos.m,
        "k": pos.k,
        "left": kripke.modelset_to_list(pos.left),
        "right": kripke.modelset_to_list(pos.right),
    }


def position_from_dict(obj: object) -> GamePosition:
    if not isinstance(obj, dict):
        raise ValueError("position must be a JSON object")
    missing = {"m", "k", "left", "right"} - obj.keys()
    if missing:
        raise ValueError(f"position object is missing keys: {sorted(missing)}")
    if not isinstance(obj["m"], int) or not isinstance(obj["k"], int):
        raise ValueError('"m" and "k" must be integers')
    pos = GamePosition(
        obj["m"],
        obj["k"],
        kripke.modelset_from_list(obj["left"]),
        kripke.modelset_from_list(obj["right"]),
    )
    position_signature(pos)
    return pos


def verdict_to_dict(verdict: Verdict) -> dict:
    if isinstance(verdict, SpoilerWins):
        formula = extract_formula(verdict.strategy)
        sizes = ml_sizes(formula)
        return {
            "winner": "S",
            "formula": ml.print_ml(formula),
            "ms": sizes.ms,
            "cs": sizes.cs,
            "nodes": verdict.nodes,
        }
    return {"winner": "D", "formula": None, "ms": None, "cs": None, "nodes": verdict.nodes}
