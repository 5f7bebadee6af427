"""Command-line surface: evaluation, equivalence checks, game solving,
minimal-separator search, family generation, the size-gap experiment, and an
interactive play loop.

Machine-readable output is JSON on stdout, diagnostics go to stderr.  Exit
codes: 0 ok, 1 verdict-level refusal (budget ceilings, generation guards),
2 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass

from . import game, graphs, hierarchy, kripke
from . import bisim as bisim_mod
from .logic import fo, ml

MEMO_LIMIT_ENV = "FSGAME_MEMO_LIMIT"


class _Refusal(Exception):
    pass


def _out(data: object) -> None:
    print(json.dumps(data, indent=2, sort_keys=True))


def _err(message: str) -> None:
    print(message, file=sys.stderr)


def _node_limit(args: argparse.Namespace) -> int | None:
    if getattr(args, "node_limit", None) is not None:
        return args.node_limit
    env = os.environ.get(MEMO_LIMIT_ENV)
    return int(env) if env else None


def _cmd_eval(args: argparse.Namespace) -> int:
    p = kripke.read_pointed(args.model)
    f = ml.parse_ml(args.formula)
    value = ml.eval_ml(p, f)
    trace: list[dict] = []

    def walk(node: ml.MLFormula) -> None:
        if isinstance(node, (ml.And, ml.Or)):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, (ml.Diamond, ml.Box)):
            walk(node.child)
        trace.append({"subformula": ml.print_ml(node), "value": ml.eval_ml(p, node)})

    walk(f)
    sizes = ml.ml_sizes(f)
    _out(
        {
            "formula": ml.print_ml(f),
            "value": value,
            "ms": sizes.ms,
            "cs": sizes.cs,
            "trace": trace,
        }
    )
    return 0


def _cmd_bisim(args: argparse.Namespace) -> int:
    a = kripke.read_pointed(args.model_a)
    b = kripke.read_pointed(args.model_b)
    if args.depth < 0:
        raise ValueError("--depth must be non-negative")
    witness = bisim_mod.n_bisimilar(a, b, args.depth)
    result: dict = {"bisimilar": witness is not None, "depth": args.depth}
    if witness is not None and args.witness:
        result["witness"] = {
            "layers": [sorted([u, v] for u, v in layer) for layer in witness.layers]
        }
    _err(("" if witness is not None else "not ") + f"{args.depth}-bisimilar")
    _out(result)
    return 0


def _load_position(args: argparse.Namespace) -> game.GamePosition:
    if args.position is not None:
        if args.left or args.right or args.m is not None or args.k is not None:
            raise ValueError("give either a position file or --left/--right with --m/--k")
        with open(args.position, encoding="utf-8") as fh:
            return game.position_from_dict(json.load(fh))
    if not (args.left and args.right and args.m is not None and args.k is not None):
        raise ValueError("need a position file, or --left, --right, --m and --k")
    pos = game.GamePosition(
        args.m, args.k, kripke.read_modelset(args.left), kripke.read_modelset(args.right)
    )
    game.position_signature(pos)
    return pos


def _cmd_solve(args: argparse.Namespace) -> int:
    pos = _load_position(args)
    try:
        verdict = game.solve(pos, node_limit=_node_limit(args), threads=args.threads)
    except game.SearchBudgetExceeded as exc:
        _out({"error": "budget-exceeded", "nodes": exc.nodes})
        return 1
    _out(game.verdict_to_dict(verdict))
    return 0


def _cmd_minimal(args: argparse.Namespace) -> int:
    left = kripke.read_modelset(args.left)
    right = kripke.read_modelset(args.right)
    try:
        frontier = game.minimal_separating(
            left, right, args.max_size, node_limit=_node_limit(args)
        )
    except game.SearchBudgetExceeded as exc:
        _out({"error": "budget-exceeded", "nodes": exc.nodes})
        return 1
    _out(
        {
            "frontier": [
                {"m": m, "k": k, "s": m + k, "formula": ml.print_ml(f)}
                for m, k, f in frontier
            ]
        }
    )
    return 0


def _fo_sizes(f: fo.FOFormula) -> dict:
    return {
        convention.value: fo.fo_size(f, convention) for convention in fo.SizeConvention
    }


def _cmd_gen(args: argparse.Namespace) -> int:
    if args.level is not None:
        n = args.level
        if n < 0:
            raise ValueError("--level must be non-negative")
        if n > 5 or (n == 5 and not args.allow_large):
            raise _Refusal(
                f"refusing to enumerate level {n}"
                + ("; pass --allow-large to enumerate level 5" if n == 5 else "")
            )
        level = sorted(hierarchy.v_level(n, allow_large=args.allow_large))
        return _emit(args, f"level{n}.json", [s.encoding for s in level])
    if args.vv is not None:
        n = args.vv
        if n < 0:
            raise ValueError("--vv must be non-negative")
        if n > 4:
            raise _Refusal(f"refusing to build the singleton family at n={n}")
        return _emit_models(args, f"vv{n}", hierarchy.vv_set(n))
    if args.ee is not None:
        n = args.ee
        if n < 0:
            raise ValueError("--ee must be non-negative")
        if n > 3:
            raise _Refusal(f"refusing to build the pair family at n={n}")
        return _emit_models(args, f"ee{n}", hierarchy.ee_set(n))
    n = args.phi
    phi = fo.make_phi(n)
    psi = fo.make_psi(n)
    _out(
        {
            "n": n,
            "formula": fo.print_fo(phi),
            "sizes": _fo_sizes(phi),
            "psi_sizes": _fo_sizes(psi),
        }
    )
    return 0


def _emit(args: argparse.Namespace, filename: str, data: object) -> int:
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        path = os.path.join(args.out, filename)
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(data, fh, indent=2, sort_keys=True)
            fh.write("\n")
        _out({"written": [path]})
    else:
        _out(data)
    return 0


def _emit_models(args: argparse.Namespace, stem: str, models) -> int:
    ordered = sorted(models, key=kripke.canonical_key)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        written = []
        for i, p in enumerate(ordered):
            path = os.path.join(args.out, f"{stem}_{i:03d}.json")
            kripke.write_pointed(path, p)
            written.append(path)
        _out({"written": written})
    else:
        _out([kripke.pointed_to_dict(p) for p in ordered])
    return 0


@dataclass
class ExperimentReport:
    """Closed-form formula sizes of the first-order separators next to solver
    verdicts and chromatic certificates for the modal side, at one n."""

    n: int
    fo_sizes: dict
    separation: dict | None
    chromatic: dict
    grid: list | None
    frontier: list | None
    wall_seconds: float

    def __post_init__(self) -> None:
        expected_psi = 3 * 2 ** (self.n + 2) - 13
        default = fo.SizeConvention.ATOMIC_ONE.value
        if self.fo_sizes["psi"][default] != expected_psi:
            raise ValueError("psi size does not match its closed form")
        if self.fo_sizes["phi"][default] != expected_psi + 6:
            raise ValueError("phi size does not match its closed form")

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "fo_sizes": self.fo_sizes,
            "separation": self.separation,
            "chromatic": self.chromatic,
            "grid": self.grid,
            "frontier": self.frontier,
            "wall_seconds": self.wall_seconds,
        }


_GRID_CAPS = {1: (4, 2), 2: (3, 1)}
_FRONTIER_BUDGET = {1: 5}


def build_experiment_report(
    n: int, *, node_limit: int | None = None, threads: int = 1
) -> ExperimentReport:
    """Assemble the report; the solver grid and the separation check run only
    for n <= 2, larger n get the chromatic certificate alone."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > 3:
        raise _Refusal(f"the pair family at n={n} is not enumerable")
    started = time.perf_counter()
    psi, phi = fo.make_psi(n), fo.make_phi(n)
    sizes = {"psi": _fo_sizes(psi), "phi": _fo_sizes(phi)}
    vv = hierarchy.vv_set(n)
    ee = hierarchy.ee_set(n)

    separation = None
    if n <= 2:
        vv_ok = all(fo.eval_fo(p.model, phi, {"x": p.point}) for p in vv)
        ee_ok = all(not fo.eval_fo(p.model, phi, {"x": p.point}) for p in ee)
        separation = {
            "vv_all_true": vv_ok,
            "ee_all_false": ee_ok,
            "vv_count": len(vv),
            "ee_count": len(ee),
        }

    chi = graphs.chromatic_number(graphs.graph_of(vv, ee))
    chromatic = {
        "chi": chi,
        "duplicator_wins_k_up_to": (chi - 1).bit_length() - 1 if chi >= 2 else None,
    }

    grid = None
    frontier = None
    if n <= 2:
        m_cap, k_cap = _GRID_CAPS[n]
        grid = []
        for m in range(m_cap + 1):
            for k in range(k_cap + 1):
                cell: dict = {"m": m, "k": k}
                cell_start = time.perf_counter()
                try:
                    verdict = game.solve(
                        game.GamePosition(m, k, vv, ee),
                        node_limit=node_limit,
                        threads=threads,
                    )
                except game.SearchBudgetExceeded as exc:
                    cell.update({"winner": None, "error": "budget-exceeded", "nodes": exc.nodes})
                else:
                    cell.update(game.verdict_to_dict(verdict))
                cell["seconds"] = round(time.perf_counter() - cell_start, 6)
                grid.append(cell)
        budget = _FRONTIER_BUDGET.get(n)
        if budget is not None:
            frontier = [
                {"m": m, "k": k, "s": m + k, "formula": ml.print_ml(f)}
                for m, k, f in game.minimal_separating(vv, ee, budget, node_limit=node_limit)
            ]

    return ExperimentReport(
        n=n,
        fo_sizes=sizes,
        separation=separation,
        chromatic=chromatic,
        grid=grid,
        frontier=frontier,
        wall_seconds=round(time.perf_counter() - started, 6),
    )


def _cmd_experiment(args: argparse.Namespace) -> int:
    report = build_experiment_report(
        args.n, node_limit=_node_limit(args), threads=args.threads
    )
    _out(report.to_dict())
    return 0


def _describe_member(i: int, p: kripke.PointedModel) -> str:
    m = p.model
    val = {q: sorted(e) for q, e in sorted(m.valuation.items())}
    return (
        f"  #{i}: point={p.point!r} worlds={sorted(m.worlds)} "
        f"edges={sorted(m.edges)}" + (f" valuation={val}" if val else "")
    )


def _print_position(pos: game.GamePosition) -> None:
    print(f"position: m={pos.m} k={pos.k}")
    print("left:" if pos.left else "left: (empty)")
    for i, p in enumerate(game._sorted_members(pos.left)):
        print(_describe_member(i, p))
    print("right:" if pos.right else "right: (empty)")
    for i, p in enumerate(game._sorted_members(pos.right)):
        print(_describe_member(i, p))


def _member_labels(side) -> dict:
    return {p: f"#{i}" for i, p in enumerate(game._sorted_members(side))}


def _describe_move(pos: game.GamePosition, move: game.Move) -> str:
    if isinstance(move, (game.LeftSplit, game.RightSplit)):
        is_left = isinstance(move, game.LeftSplit)
        labels = _member_labels(pos.left if is_left else pos.right)
        part1 = move.left1 if is_left else move.right1
        part2 = move.left2 if is_left else move.right2
        fmt = lambda part: "{" + ",".join(sorted(labels[p] for p in part)) + "}"
        side = "left" if is_left else "right"
        return (
            f"{side}-split (m1={move.m1},k1={move.k1}) {fmt(part1)}"
            f" / (m2={move.m2},k2={move.k2}) {fmt(part2)}"
        )
    is_left = isinstance(move, game.LeftSucc)
    labels = _member_labels(pos.left if is_left else pos.right)
    picks = ", ".join(
        f"{labels[p]}->{target.point!r}"
        for p, target in sorted(move.choice.items(), key=lambda kv: labels[kv[0]])
    )
    return f"{'left' if is_left else 'right'}-succ [{picks}]"


def _prompt(text: str) -> str | None:
    try:
        line = input(text)
    except EOFError:
        return None
    line = line.strip()
    return None if line.lower() in ("q", "quit") else line


def _cmd_play(args: argparse.Namespace) -> int:
    with open(args.position, encoding="utf-8") as fh:
        pos = game.position_from_dict(json.load(fh))
    user_is_s = args.play_as == "S"
    limit = _node_limit(args)
    while True:
        _print_position(pos)
        status = game.terminal_status(pos)
        if isinstance(status, game.SWin):
            print(f"game over: S wins, literal {ml.print_ml(status.literal)} separates")
            return 0
        if isinstance(status, game.DWin):
            print("game over: D wins, no literal separates and no move remains")
            return 0
        moves = game.legal_moves(pos)
        if user_is_s:
            move = None
            while move is None:
                for i, candidate in enumerate(moves):
                    print(f"  [{i}] {_describe_move(pos, candidate)}")
                answer = _prompt("S move number> ")
                if answer is None:
                    print("quit")
                    return 0
                try:
                    move = moves[int(answer)]
                except (ValueError, IndexError):
                    print("illegal move, try again")
        else:
            verdict = game.solve(pos, node_limit=limit)
            if isinstance(verdict, game.SpoilerWins) and verdict.strategy.move is not None:
                move = verdict.strategy.move
            else:
                move = moves[0]
            print(f"S plays {_describe_move(pos, move)}")
        if isinstance(move, (game.LeftSplit, game.RightSplit)):
            if user_is_s:
                branches = {
                    "left": game.apply_move(pos, move, "left"),
                    "right": game.apply_move(pos, move, "right"),
                }
                choice = None
                for name, branch in branches.items():
                    verdict = game.solve(branch, node_limit=limit)
                    if isinstance(verdict, game.DuplicatorWins):
                        choice = name
                        break
                choice = choice or "left"
                print(f"D chooses the {choice} branch")
            else:
                choice = None
                while choice is None:
                    answer = _prompt("D branch (l/r)> ")
                    if answer is None:
                        print("quit")
                        return 0
                    if answer in ("l", "left"):
                        choice = "left"
                    elif answer in ("r", "right"):
                        choice = "right"
                    else:
                        print("illegal choice, try again")
                print(f"D chooses the {choice} branch")
        else:
            choice = None
        pos = game.apply_move(pos, move, choice)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fsgame",
        description="Separate sets of pointed Kripke models with size-budgeted modal formulas.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a modal formula on a pointed model")
    p.add_argument("model", help="model JSON file")
    p.add_argument("formula", help="formula text, e.g. '[]F | <>p'")
    p.set_defaults(handler=_cmd_eval)

    p = sub.add_parser("bisim", help="check depth-bounded equivalence of two pointed models")
    p.add_argument("model_a")
    p.add_argument("model_b")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--witness", action="store_true", help="include the layered relations")
    p.set_defaults(handler=_cmd_bisim)

    p = sub.add_parser("solve", help="solve a game position exactly")
    p.add_argument("position", nargs="?", help="position JSON file")
    p.add_argument("--left", help="left model-set JSON file")
    p.add_argument("--right", help="right model-set JSON file")
    p.add_argument("--m", type=int, help="modal budget")
    p.add_argument("--k", type=int, help="connective budget")
    p.add_argument("--node-limit", type=int)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(handler=_cmd_solve)

    p = sub.add_parser("minimal", help="budget-minimal separating formulas")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--node-limit", type=int)
    p.set_defaults(handler=_cmd_minimal)

    p = sub.add_parser("gen", help="generate hierarchy levels, join families, or separator formulas")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--level", type=int)
    group.add_argument("--vv", type=int)
    group.add_argument("--ee", type=int)
    group.add_argument("--phi", type=int)
    p.add_argument("--out", help="directory for generated files (default: stdout)")
    p.add_argument("--allow-large", action="store_true")
    p.set_defaults(handler=_cmd_gen)

    p = sub.add_parser("experiment", help="size report: first-order sizes vs solver verdicts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--node-limit", type=int)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(handler=_cmd_experiment)

    p = sub.add_parser("play", help="interactive play against the exact solver")
    p.add_argument("position", help="position JSON file")
    p.add_argument("--as", dest="play_as", choices=("S", "D"), required=True)
    p.add_argument("--node-limit", type=int)
    p.set_defaults(handler=_cmd_play)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except game.SearchBudgetExceeded as exc:
        _out({"error": "budget-exceeded", "nodes": exc.nodes})
        return 1
    except _Refusal as exc:
        _err(f"refused: {exc}")
        return 1
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        _err(f"error: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
