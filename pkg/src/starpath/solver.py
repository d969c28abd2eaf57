"""Depth-first branch-and-bound search for covering paths under a stroke budget.

The search walks strokes out of the current point using a precomputed
:class:`~starpath.bitcover.LineTable`. A child is dropped when its stroke
count plus a lower bound exceeds the budget. Under the queen policy there is
one more test: the open stars must fit on as many queen lines as strokes
remain, one through the current point and, with a fixed end, one through the
end. A bounded transposition store remembers states proven to have no
completion within a given remaining budget.

The node loop itself is compiled (:mod:`starpath._kernel`); this module owns
configuration, start selection, work splitting and result assembly.
"""

from __future__ import annotations

import multiprocessing as mp
import random
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from . import _kernel as K
from .bitcover import LineTable, Policy, bit_index, cached_line_table, full_bits
from .config import ConfigError, Mode, Ordering, SearchConfig, SearchResult, Status
from .geometry import BoardSpec, Path, Point, board_symmetries
from .oracle import canonicalize, representative
from .verifier import verify

TRACTABLE_N = 4
CHUNK_NODES = 1 << 10
SOLUTION_BUFFER = 256
_DIRECTIONS = ((1, 0), (0, 1), (1, 1), (1, -1))


@dataclass(frozen=True)
class SearchState:
    current: Point
    covered: int
    strokes_used: int = 0


class LowerBound:
    """Admissible estimate of the strokes still needed to cover every star.

    Two counting arguments, take the larger:

    * chain: a stroke covers at most ``n`` stars, and when it leaves a star
      that is already covered at most ``n - 1`` of them are new;
    * independence: stars pairwise off any common legal line need one stroke
      each. Built greedily in bit order.
    """

    def __init__(self, board: BoardSpec, policy: Policy):
        self.board = board
        self.policy = policy
        self.full = full_bits(board.n)
        self.lmax = board.n
        self.attack = queen_attack_masks(board) if policy is Policy.QUEEN else []

    def chain(self, u: int, current_covered: bool) -> int:
        if u == 0:
            return 0
        lmax = self.lmax
        if lmax == 1:
            return 1
        if self.board.margin > 0:
            return -(-u // lmax)
        if current_covered:
            return -(-u // (lmax - 1))
        return 1 + -(-max(u - lmax, 0) // (lmax - 1))

    def independence(self, uncovered: int) -> int:
        if not uncovered:
            return 0
        if self.policy is Policy.GENERAL:
            return 1
        count = 0
        while uncovered:
            low = uncovered & -uncovered
            uncovered &= ~self.attack[low.bit_length() - 1]
            count += 1
        return count

    def __call__(self, current: Point, covered: int) -> int:
        uncovered = self.full & ~covered
        if not uncovered:
            return 0
        on_covered_star = self.board.is_star(current) and bool(
            covered >> bit_index(current, self.board.n) & 1
        )
        c = self.chain(uncovered.bit_count(), self.board.margin > 0 or on_covered_star)
        return max(c, self.independence(uncovered))


def lower_bound(state: SearchState, board: BoardSpec, policy: Policy) -> int:
    return LowerBound(board, policy)(state.current, state.covered)


def queen_attack_masks(board: BoardSpec) -> list[int]:
    """Per star (bit order): every star sharing a rank, file or diagonal, itself included."""
    n = board.n
    stars = board.stars()
    out = []
    for p in stars:
        bits = 0
        for q in stars:
            df, dr = q.file - p.file, q.rank - p.rank
            if df == 0 or dr == 0 or abs(df) == abs(dr):
                bits |= 1 << bit_index(q, n)
        out.append(bits)
    return out


def _orbit_representatives(board: BoardSpec) -> list[Point]:
    syms = board_symmetries(board)
    return [p for p in board.lattice_points() if p == min(g(p) for g in syms)]


def _u64(values) -> np.ndarray:
    return np.array([np.uint64(v) for v in values], dtype=np.uint64)


class _Engine:
    """Search over one configuration with compiled tables and shared stores."""

    def __init__(self, config: SearchConfig, table: LineTable):
        self.config = config
        self.rules = rules = config.rules
        self.board = board = rules.board
        self.table = table
        n = board.n
        pts = table.points
        self.full = full_bits(n)
        self.star_bits = [1 << bit_index(p, n) if board.is_star(p) else 0 for p in pts]
        self.end_id = -1 if rules.required_end is None else table.index[rules.required_end]
        self.exact = -1 if rules.required_stroke_count is None else rules.required_stroke_count
        self.max_strokes = config.max_strokes
        if self.exact >= 0:
            self.max_strokes = min(self.max_strokes, self.exact)
        self.queen = rules.policy is Policy.QUEEN
        self.found: dict[tuple, Path] = {}
        self.nodes = 0
        self._build_tables(pts)
        size = config.transposition_size
        if n <= TRACTABLE_N:
            size = min(size, 1 << 16)
        size = 1 << max(size - 1, 1).bit_length()
        self.tt_cov = np.zeros(size, dtype=np.uint64)
        self.tt_aux = np.zeros(size, dtype=np.int64)
        self.tt_rem = np.full(size, -1, dtype=np.int64)
        self.memo_key = np.zeros(size, dtype=np.uint64)
        self.memo_lo = np.zeros(size, dtype=np.int64)
        self.memo_hi = np.full(size, 1 << 30, dtype=np.int64)
        self.k_tt = (self.tt_cov, self.tt_aux, self.tt_rem)
        self._tuples()

    def _build_tables(self, pts: list[Point]) -> None:
        cfg = self.config
        if cfg.ordering is Ordering.NEW_COVERAGE_DESC:
            lex = {pid: r for r, pid in enumerate(sorted(range(len(pts)), key=lambda i: pts[i]))}
            tie = [lex[i] for i in range(len(pts))]
            if cfg.seed:
                tie = list(range(len(pts)))
                random.Random(cfg.seed).shuffle(tie)

            def static_key(pid: int, qid: int) -> tuple:
                a, b = pts[pid], pts[qid]
                return (-((a.file - b.file) ** 2 + (a.rank - b.rank) ** 2), tie[qid])
        else:

            def static_key(pid: int, qid: int) -> tuple:
                return pts[qid]

        off, dst, bits = [0], [], []
        for pid, row in enumerate(self.table.moves):
            for qid, b in sorted(row, key=lambda m: static_key(pid, m[0])):
                dst.append(qid)
                bits.append(b)
            off.append(len(dst))
        self.move_off = np.array(off, dtype=np.int64)
        self.move_dst = np.array(dst, dtype=np.int64)
        self.move_bits = _u64(bits)
        self.max_degree = max(off[i + 1] - off[i] for i in range(len(pts))) if pts else 0
        self.star_bit = _u64(self.star_bits)
        self.attack = _u64(queen_attack_masks(self.board) if self.queen else [0])

        # queen lines of the extended lattice, keyed by direction and offset
        board = self.board
        n = board.n
        ids: dict[tuple, int] = {}
        line_bits: list[int] = []
        point_lines = np.full((len(pts), 4), -1, dtype=np.int64)
        for pid, p in enumerate(pts):
            for d, (df, dr) in enumerate(_DIRECTIONS):
                key = (d, p.rank if d == 0 else p.file if d == 1 else
                       p.file - p.rank if d == 2 else p.file + p.rank)
                if key not in ids:
                    b = 0
                    for s in board.stars():
                        if (s.file - p.file) * dr == (s.rank - p.rank) * df:
                            b |= 1 << bit_index(s, n)
                    ids[key] = len(line_bits)
                    line_bits.append(b)
                point_lines[pid, d] = ids[key]
        self.line_bits = _u64(line_bits or [0])
        star_ids = [self.table.index[s] for s in board.stars()]
        self.star_lines = point_lines[star_ids] if star_ids else np.full((1, 4), -1, dtype=np.int64)

        rays = []
        for p in pts:
            row = []
            for df, dr in _DIRECTIONS + tuple((-a, -b) for a, b in _DIRECTIONS):
                b, f, r = 0, p.file, p.rank
                while board.in_lattice(Point(f, r)):
                    if board.is_star(Point(f, r)):
                        b |= 1 << bit_index(Point(f, r), n)
                    f, r = f + df, r + dr
                row.append(b)
            rays.append(_u64(row))
        self.ray_bits = np.array(rays, dtype=np.uint64)
        seg = [0] * len(pts)
        seg_ok = np.zeros(len(pts), dtype=np.bool_)
        if self.end_id >= 0:
            for pid, row in enumerate(self.table.moves):
                for qid, b in row:
                    if qid == self.end_id:
                        seg[pid] = b
                        seg_ok[pid] = True
        self.end_seg = _u64(seg)
        self.end_seg_ok = seg_ok
        self.use_cover = self.queen and n >= 2

    # -- compiled calls ------------------------------------------------------

    def _tuples(self) -> None:
        cfg = self.config
        self.k_moves = (self.move_off, self.move_dst, self.move_bits)
        self.k_bound = (np.uint64(self.full), self.star_bit, self.attack, self.board.n,
                        self.board.margin > 0, self.queen, self.end_id)
        self.k_lines = (self.line_bits, self.star_lines, self.ray_bits, self.end_seg,
                        self.end_seg_ok, self.use_cover)
        scratch = np.zeros((self.max_strokes + 2, len(self.line_bits)), dtype=np.int64)
        self.k_memo = (self.memo_key, self.memo_lo, self.memo_hi, scratch)
        self.k_flags = (cfg.progressive, -1 if cfg.zero_run_cap is None else cfg.zero_run_cap,
                        cfg.ordering is Ordering.NEW_COVERAGE_DESC)

    def bound(self, pid: int, covered: int, r_max: int) -> int:
        """Kernel lower bound (cheap bounds plus the line-cover test), capped at r_max + 1."""
        return int(K.full_bound(pid, np.uint64(covered), r_max, self.k_bound, self.k_lines,
                                self.k_memo))

    def cheap_bound(self, pid: int, covered: int) -> int:
        return int(K.cheap_bound(pid, np.uint64(covered), self.k_bound))

    def children(self, pid: int, covered: int, used: int, zrun: int) -> list[tuple[int, int, int]]:
        """Surviving strokes out of a node, in search order: (qid, covered, zrun)."""
        deg = max(self.max_degree, 1)
        ch_q = np.zeros((1, deg), dtype=np.int64)
        ch_cov = np.zeros((1, deg), dtype=np.uint64)
        ch_nz = np.zeros((1, deg), dtype=np.int64)
        ch_gain = np.zeros((1, deg), dtype=np.int64)
        cnt = K.expand(0, pid, np.uint64(covered), zrun, self.max_strokes - used - 1,
                       self.k_moves, self.k_bound, self.k_lines, self.k_memo, self.k_flags,
                       ch_q, ch_cov, ch_nz, ch_gain)
        return [(int(ch_q[0, i]), int(ch_cov[0, i]), int(ch_nz[0, i])) for i in range(cnt)]

    def run_from(self, prefix: list[int], pid: int, covered: int, zrun: int,
                 deadline: Optional[float] = None, stop=None) -> Status:
        """Exhaust (or stop inside) the subtree below one state.

        ``prefix`` holds the waypoint ids before ``pid``.
        """
        cfg = self.config
        base_used = len(prefix)
        depth = self.max_strokes - base_used + 1
        if depth < 1:
            return Status.COMPLETE
        deg = max(self.max_degree, 1)
        stack = (
            np.zeros(depth, dtype=np.int64),
            np.zeros(depth, dtype=np.uint64),
            np.zeros(depth, dtype=np.int64),
            np.zeros(depth, dtype=np.bool_),
            np.zeros(depth, dtype=np.int64),
            np.full(depth, -1, dtype=np.int64),
            np.zeros((depth, deg), dtype=np.int64),
            np.zeros((depth, deg), dtype=np.uint64),
            np.zeros((depth, deg), dtype=np.int64),
            np.zeros((depth, deg), dtype=np.int64),
            np.zeros(1, dtype=np.int64),
        )
        stack[0][0], stack[1][0], stack[2][0] = pid, np.uint64(covered), zrun
        sol = np.zeros((SOLUTION_BUFFER, depth), dtype=np.int64)
        sol_len = np.zeros(SOLUTION_BUFFER, dtype=np.int64)
        counters = np.zeros(2, dtype=np.int64)
        first = cfg.mode is Mode.FIRST
        rules = (self.exact, self.max_strokes, first, base_used)
        while True:
            quota = CHUNK_NODES
            if cfg.node_limit is not None:
                quota = min(quota, cfg.node_limit - self.nodes)
                if quota <= 0:
                    return Status.BUDGET_EXHAUSTED
            counters[0] = 0
            code = K.search(self.k_moves, self.k_bound, self.k_lines, self.k_memo, self.k_flags,
                            rules, stack, self.k_tt, sol, sol_len, counters, quota)
            self.nodes += int(counters[0])
            for k in range(int(counters[1])):
                if self._record(prefix + [int(x) for x in sol[k, : sol_len[k]]]) and first:
                    return Status.COMPLETE
            counters[1] = 0
            if code == K.DONE:
                return Status.COMPLETE
            if code == K.FOUND:
                continue
            if deadline is not None and time.monotonic() > deadline:
                return Status.BUDGET_EXHAUSTED
            if stop is not None and stop.is_set():
                return Status.BUDGET_EXHAUSTED

    def _record(self, pids: list[int]) -> bool:
        pts = self.table.points
        path = Path(tuple(pts[i] for i in pids))
        key = canonicalize(path, self.rules.free_endpoints, self.board).waypoints
        if key in self.found:
            return False
        self.found[key] = representative(path, self.rules)
        return True

    def starts(self) -> list[int]:
        r = self.rules
        if r.required_start is not None:
            pts = [r.required_start]
        elif r.free_endpoints:
            pts = _orbit_representatives(self.board)
        else:
            pts = self.board.lattice_points()
        return [self.table.index[p] for p in pts]

    def root_tasks(self) -> list[tuple[int, int, int, int]]:
        """Expand every start once: (start, first destination, covered, zero run).

        Zero-stroke solutions are recorded here.
        """
        tasks = []
        for sid in self.starts():
            covered = self.star_bits[sid]
            if self.cheap_bound(sid, covered) > self.max_strokes:
                continue
            self.nodes += 1
            if covered == self.full and self.end_id in (-1, sid) and self.exact in (-1, 0):
                self._record([sid])
            if self.max_strokes == 0:
                continue
            tasks.extend((sid, q, c, z) for q, c, z in self.children(sid, covered, 0, 0))
        return tasks

    def run(self, deadline: Optional[float] = None) -> Status:
        first = self.config.mode is Mode.FIRST
        for sid in self.starts():
            covered = self.star_bits[sid]
            if self.cheap_bound(sid, covered) > self.max_strokes:
                continue
            status = self.run_from([], sid, covered, 0, deadline)
            if status is not Status.COMPLETE or (first and self.found):
                return status
        return Status.COMPLETE


def check_config(config: SearchConfig) -> None:
    board = config.rules.board
    if (
        board.n > TRACTABLE_N
        and config.mode in (Mode.ALL, Mode.COUNT, Mode.MINIMIZE)
        and config.unbounded
        and not config.progressive
        and not config.allow_large
    ):
        raise ConfigError(
            f"exhaustive {config.mode.value} search on n={board.n} needs a node/time limit, "
            "progressive mode, or allow_large"
        )


def solve(config: SearchConfig) -> SearchResult:
    check_config(config)
    t0 = time.monotonic()
    deadline = None if config.time_limit is None else t0 + config.time_limit
    if config.mode is Mode.MINIMIZE:
        return _minimize(config, t0)
    table = cached_line_table(config.rules.board, config.rules.policy)
    if config.workers == 1:
        eng = _Engine(config, table)
        status = eng.run(deadline)
        found, nodes = eng.found, eng.nodes
    else:
        found, nodes, status = _solve_parallel(config, table, deadline)
    if config.mode is Mode.FIRST and found:
        status = Status.COMPLETE
    if config.mode is Mode.FIRST:
        sols = list(found.values())[:1]
    else:
        sols = [found[k] for k in sorted(found)]
    return SearchResult(
        status=status,
        solutions=[] if config.mode is Mode.COUNT else sols,
        count=len(found),
        nodes_expanded=nodes,
        elapsed=time.monotonic() - t0,
    )


# -- parallel split of the root's first strokes -------------------------------

_worker: dict = {}


def _worker_init(config: SearchConfig, deadline, stop) -> None:
    table = cached_line_table(config.rules.board, config.rules.policy)
    _worker.update(engine=_Engine(config, table), deadline=deadline, stop=stop)


def _worker_run(task):
    eng: _Engine = _worker["engine"]
    stop = _worker["stop"]
    if stop.is_set():
        return {}, 0, Status.BUDGET_EXHAUSTED
    eng.found, eng.nodes = {}, 0
    sid, qid, covered, zrun = task
    status = eng.run_from([sid], qid, covered, zrun, _worker["deadline"], stop)
    if eng.config.mode is Mode.FIRST and eng.found:
        stop.set()
    return eng.found, eng.nodes, status


def _solve_parallel(config: SearchConfig, table: LineTable, deadline):
    root = _Engine(config, table)
    tasks = root.root_tasks()
    found = dict(root.found)
    nodes = root.nodes
    if config.mode is Mode.FIRST and found:
        return found, nodes, Status.COMPLETE
    ctx = mp.get_context("fork")
    stop = ctx.Event()
    with ProcessPoolExecutor(
        max_workers=config.workers, mp_context=ctx,
        initializer=_worker_init, initargs=(config, deadline, stop),
    ) as pool:
        futures = [pool.submit(_worker_run, t) for t in tasks]
        if config.mode is Mode.FIRST:
            pending = set(futures)
            while pending:
                done, pending = wait(pending, return_when=FIRST_COMPLETED)
                if any(f.result()[0] for f in done):
                    stop.set()
        results = [f.result() for f in futures]
    status = Status.COMPLETE
    for sub_found, sub_nodes, sub_status in results:
        nodes += sub_nodes
        for k, p in sub_found.items():
            found.setdefault(k, p)
        if sub_status is Status.BUDGET_EXHAUSTED:
            status = Status.BUDGET_EXHAUSTED
    return found, nodes, status


def _minimize(config: SearchConfig, t0: float) -> SearchResult:
    nodes = 0
    for k in range(config.max_strokes + 1):
        left = None
        if config.time_limit is not None:
            left = max(config.time_limit - (time.monotonic() - t0), 0.0)
        budget = None if config.node_limit is None else max(config.node_limit - nodes, 0)
        sub = solve(replace(config, mode=Mode.FIRST, max_strokes=k, time_limit=left,
                            node_limit=budget))
        nodes += sub.nodes_expanded
        if sub.solutions:
            return SearchResult(Status.COMPLETE, sub.solutions, count=1, best_k=k,
                                nodes_expanded=nodes, elapsed=time.monotonic() - t0)
        if not sub.complete:
            return SearchResult(Status.BUDGET_EXHAUSTED, [], nodes_expanded=nodes,
                                elapsed=time.monotonic() - t0)
    return SearchResult(Status.COMPLETE, [], nodes_expanded=nodes, elapsed=time.monotonic() - t0)


def min_strokes(config: SearchConfig) -> tuple[Optional[int], Optional[Path]]:
    """Smallest budget admitting a covering path, with a witness.

    Returns ``(None, None)`` when no path of at most ``config.max_strokes``
    strokes exists or the budget ran out first (``solve`` reports which).
    """
    res = solve(replace(config, mode=Mode.MINIMIZE))
    if res.best_k is None:
        return None, None
    witness = res.solutions[0]
    assert verify(witness, replace(config.rules, required_stroke_count=res.best_k)).valid
    return res.best_k, witness
