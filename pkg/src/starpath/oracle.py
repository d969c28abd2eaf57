"""Brute-force reference enumeration and path canonicalization.

The oracle walks every chained stroke sequence up to the budget with no
pruning at all. It shares nothing with the optimized solver beyond the
geometry primitives, which is what makes it useful as a cross-check.
"""

from __future__ import annotations

import time

from .config import ConfigError, Mode, SearchConfig, SearchResult, Status
from .geometry import (
    BoardSpec,
    Path,
    Point,
    Stroke,
    StrokeClass,
    board_symmetries,
    cells_on_stroke,
    stroke_class,
    transform_path,
)
from .bitcover import Policy
from .verifier import RuleSet

MAX_N = 4
MAX_MARGIN = 1
MAX_STROKES = 6


def path_class(path: Path, free_endpoints: bool, board: BoardSpec) -> list[Path]:
    members = [path, path.reversed()]
    if free_endpoints:
        members = [transform_path(m, g) for m in members for g in board_symmetries(board)]
    return members


def canonicalize(path: Path, free_endpoints: bool, board: BoardSpec) -> Path:
    """Least waypoint sequence among the path's equivalence class."""
    return min(path_class(path, free_endpoints, board), key=lambda p: p.waypoints)


def representative(path: Path, rules: RuleSet) -> Path:
    """Least class member that still satisfies the rules' endpoint demands."""
    members = [m for m in path_class(path, rules.free_endpoints, rules.board) if rules.endpoints_ok(m)]
    return min(members, key=lambda p: p.waypoints)


def _stars_bits(cells, n: int) -> int:
    bits = 0
    for p in cells:
        bits |= 1 << ((p.rank - 1) * n + p.file - 1)
    return bits


def oracle_solve(config: SearchConfig) -> SearchResult:
    rules = config.rules
    board = rules.board
    if board.n > MAX_N or board.margin > MAX_MARGIN or config.max_strokes > MAX_STROKES:
        raise ConfigError(
            f"oracle is capped at n <= {MAX_N}, margin <= {MAX_MARGIN}, k <= {MAX_STROKES}"
        )
    t0 = time.perf_counter()
    n = board.n
    full = (1 << (n * n)) - 1
    points = board.lattice_points()
    moves: dict[Point, list[tuple[Point, int]]] = {}
    for p in points:
        moves[p] = []
        for q in points:
            if q == p:
                continue
            s = Stroke(p, q)
            if rules.policy is Policy.QUEEN and stroke_class(s) is not StrokeClass.QUEEN:
                continue
            moves[p].append((q, _stars_bits(cells_on_stroke(s, board), n)))

    if config.mode is Mode.MINIMIZE:
        for k in range(config.max_strokes + 1):
            sub = _enumerate(config, rules, board, points, moves, full, k, first=True)
            if sub[0]:
                return SearchResult(
                    Status.COMPLETE, sub[0], count=1, best_k=k,
                    nodes_expanded=sub[1], elapsed=time.perf_counter() - t0,
                )
        return SearchResult(Status.COMPLETE, [], elapsed=time.perf_counter() - t0)

    found, nodes = _enumerate(
        config, rules, board, points, moves, full, config.max_strokes,
        first=config.mode is Mode.FIRST,
    )
    return SearchResult(
        Status.COMPLETE,
        [] if config.mode is Mode.COUNT else found,
        count=len(found),
        nodes_expanded=nodes,
        elapsed=time.perf_counter() - t0,
    )


def _enumerate(config, rules, board, points, moves, full, k, first):
    n = board.n
    canon: dict[tuple, Path] = {}
    starts = [rules.required_start] if rules.required_start is not None else points
    nodes = 0

    class Done(Exception):
        pass

    def accept(wps: list[Point], covered: int) -> None:
        if covered != full:
            return
        if rules.required_end is not None and wps[-1] != rules.required_end:
            return
        if rules.required_stroke_count is not None and len(wps) - 1 != rules.required_stroke_count:
            return
        path = Path(tuple(wps))
        key = canonicalize(path, rules.free_endpoints, board).waypoints
        if key not in canon:
            canon[key] = representative(path, rules)
            if first:
                raise Done

    def dfs(wps: list[Point], covered: int) -> None:
        nonlocal nodes
        nodes += 1
        accept(wps, covered)
        if len(wps) - 1 == k:
            return
        for q, bits in moves[wps[-1]]:
            if config.progressive and covered | bits == covered:
                continue
            wps.append(q)
            dfs(wps, covered | bits)
            wps.pop()

    try:
        for s in starts:
            start_bits = _stars_bits([s], n) if board.is_star(s) else 0
            dfs([s], start_bits)
    except Done:
        pass
    ordered = [canon[key] for key in sorted(canon)]
    return ordered, nodes
