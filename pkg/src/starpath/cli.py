"""Command-line entry point: ``starpath verify|solve|render``.

On the 8x8 board the defaults are the classic instance: start c5, end d4,
14 strokes. Pass ``free`` to ``--start``/``--end``/``--strokes`` to lift one.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .bitcover import Policy
from .config import ConfigError, Mode, SearchConfig, Status
from .geometry import BoardSpec, GeometryError, Point, format_path, parse_path, parse_square
from .render import RenderOptions, render_ascii, render_svg
from .verifier import RuleSet, report_to_json, verify

CLASSIC_N = 8
CLASSIC_START = "c5"
CLASSIC_END = "d4"
CLASSIC_STROKES = 14


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _board(args) -> BoardSpec:
    try:
        return BoardSpec(args.board, args.margin)
    except GeometryError as e:
        raise UsageError(str(e)) from e


def _endpoint(text: Optional[str], default: str, board: BoardSpec) -> Optional[Point]:
    if text is None:
        text = default if board.n == CLASSIC_N else "free"
    if text == "free":
        return None
    try:
        return parse_square(text, board)
    except GeometryError as e:
        raise UsageError(str(e)) from e


def _rules(args, board: BoardSpec, strokes: Optional[int]) -> RuleSet:
    start = _endpoint(args.start, CLASSIC_START, board)
    end = _endpoint(args.end, CLASSIC_END, board)
    try:
        return RuleSet(board, Policy(args.policy), start, end, strokes)
    except (GeometryError, ValueError) as e:
        raise UsageError(str(e)) from e


def _strokes(text: Optional[str], board: BoardSpec) -> Optional[int]:
    if text is None:
        return CLASSIC_STROKES if board.n == CLASSIC_N else None
    if text == "free":
        return None
    try:
        k = int(text)
    except ValueError as e:
        raise UsageError(f"bad stroke count {text!r}") from e
    if k < 0:
        raise UsageError("stroke count must be non-negative")
    return k


def _path(text: str, board: BoardSpec):
    try:
        return parse_path(text, board)
    except (GeometryError, ValueError) as e:
        raise UsageError(str(e)) from e


def cmd_verify(args) -> int:
    board = _board(args)
    rules = _rules(args, board, _strokes(args.strokes, board))
    path = _path(args.path, board)
    report = verify(path, rules)
    print(report_to_json(report))
    return 0 if report.valid else 1


def _search_config(args, board: BoardSpec) -> SearchConfig:
    rules = _rules(args, board, None)
    max_k = args.max_strokes
    if max_k is None:
        max_k = CLASSIC_STROKES if board.n == CLASSIC_N else 4 * board.n
    return SearchConfig(
        rules=rules,
        max_strokes=max_k,
        mode=Mode(args.mode),
        progressive=args.progressive,
        node_limit=args.node_limit,
        time_limit=args.time_limit,
        seed=args.seed,
        workers=args.workers,
        allow_large=args.allow_large,
    )


def cmd_solve(args) -> int:
    from .solver import check_config, solve

    board = _board(args)
    try:
        config = _search_config(args, board)
        check_config(config)
    except (ConfigError, ValueError) as e:
        raise UsageError(str(e)) from e
    result = solve(config)
    for p in result.solutions:
        print(_dump({"path": format_path(p, board), "strokes": p.stroke_count}), flush=True)
    summary = {"status": result.status.value}
    if config.mode is Mode.COUNT:
        summary["count"] = result.count
    else:
        summary["solutions"] = len(result.solutions)
    if config.mode is Mode.MINIMIZE:
        summary["best_k"] = result.best_k
    summary["nodes"] = result.nodes_expanded
    print(_dump(summary), flush=True)
    print(f"elapsed {result.elapsed:.3f}s", file=sys.stderr)
    if config.mode in (Mode.FIRST, Mode.ALL):
        return 0 if result.solutions else 1
    return 0 if result.status is Status.COMPLETE else 1


def cmd_oracle(args) -> int:
    from .oracle import oracle_solve

    board = _board(args)
    try:
        config = _search_config(args, board)
        result = oracle_solve(config)
    except (ConfigError, ValueError) as e:
        raise UsageError(str(e)) from e
    for p in result.solutions:
        print(_dump({"path": format_path(p, board), "strokes": p.stroke_count}))
    summary = {"status": result.status.value, "count": result.count, "best_k": result.best_k}
    print(_dump(summary))
    return 0


def cmd_render(args) -> int:
    board = _board(args)
    path = _path(args.path, board) if args.path else None
    if args.format == "ascii":
        text = render_ascii(path, board)
    else:
        text = render_svg(path, board, RenderOptions(cell_size=args.cell_size,
                                                     show_coords=args.coords))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _pos(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--board", type=_pos, default=CLASSIC_N, metavar="N")
    shared.add_argument("--margin", type=_nonneg, default=0, metavar="M")
    shared.add_argument("--policy", choices=[p.value for p in Policy], default="queen")

    ends = argparse.ArgumentParser(add_help=False)
    ends.add_argument("--start", help="start square, or 'free' (default c5 on 8x8)")
    ends.add_argument("--end", help="end square, or 'free' (default d4 on 8x8)")

    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--max-strokes", type=_nonneg, metavar="K")
    search.add_argument("--mode", choices=[m.value for m in Mode], default="first")
    search.add_argument("--progressive", action="store_true",
                        help="every stroke must cover a new star")
    search.add_argument("--seed", type=_nonneg, default=0)
    search.add_argument("--workers", type=_pos, default=1)
    search.add_argument("--node-limit", type=_pos)
    search.add_argument("--time-limit", type=float)
    search.add_argument("--allow-large", action="store_true",
                        help="permit unbudgeted exhaustive search on boards above 4x4")

    parser = argparse.ArgumentParser(prog="starpath",
                                     description="Covering paths through a field of stars.")
    sub = parser.add_subparsers(dest="command", required=True,
                                metavar="{verify,solve,render}")

    p = sub.add_parser("verify", parents=[shared, ends], help="check a path")
    p.add_argument("--path", required=True)
    p.add_argument("--strokes", help="required stroke count, or 'free' (default 14 on 8x8)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", parents=[shared, ends, search], help="search for paths")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("render", parents=[shared], help="draw the board and a path")
    p.add_argument("--path")
    p.add_argument("--format", choices=["svg", "ascii"], default="svg")
    p.add_argument("--cell-size", type=_pos, default=40)
    p.add_argument("--coords", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_render)

    # Brute-force reference, kept out of the help listing.
    p = sub.add_parser("oracle", parents=[shared, ends, search])
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        parser.error(str(e))  # exits 2
    except (ConfigError, GeometryError, ValueError, RuntimeError) as e:
        print(_dump({"error": str(e)}))
        return 1
    return 1


if __name__ == "__main__":
    sys.exit(main())
