"""Bit-set coverage masks and precomputed stroke tables.

Bit ``(rank - 1) * n + (file - 1)`` stands for a core star, so a1 is bit 0.
Margin points carry no bits.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .geometry import (
    BoardSpec,
    GeometryError,
    Path,
    Point,
    Stroke,
    StrokeClass,
    cells_on_stroke,
    stroke_class,
    strokes_of,
)

MAX_CORE_SIDE = 8


class Policy(enum.Enum):
    QUEEN = "queen"
    GENERAL = "general"


class IllegalStrokeError(ValueError):
    pass


def bit_index(p: Point, n: int) -> int:
    return (p.rank - 1) * n + (p.file - 1)


def point_of_bit(i: int, n: int) -> Point:
    return Point(i % n + 1, i // n + 1)


@dataclass(frozen=True)
class CoverageMask:
    bits: int
    n: int

    def __or__(self, other: CoverageMask) -> CoverageMask:
        if other.n != self.n:
            raise ValueError("masks of different boards")
        return CoverageMask(self.bits | other.bits, self.n)

    def popcount(self) -> int:
        return self.bits.bit_count()

    @property
    def full(self) -> bool:
        return self.bits == full_bits(self.n)

    def cells(self) -> list[Point]:
        return [point_of_bit(i, self.n) for i in range(self.n * self.n) if self.bits >> i & 1]

    def missing(self) -> list[Point]:
        return [point_of_bit(i, self.n) for i in range(self.n * self.n) if not self.bits >> i & 1]


def full_bits(n: int) -> int:
    return (1 << (n * n)) - 1


def mask_of(cells: Iterable[Point], board: BoardSpec) -> CoverageMask:
    bits = 0
    for p in cells:
        if not board.is_star(p):
            raise GeometryError(f"{p} is not a star of the core")
        bits |= 1 << bit_index(p, board.n)
    return CoverageMask(bits, board.n)


def policy_allows(policy: Policy, s: Stroke) -> bool:
    return policy is Policy.GENERAL or stroke_class(s) is StrokeClass.QUEEN


@dataclass
class LineTable:
    """Legal strokes of one board/policy pair with their coverage bits.

    ``points`` lists the extended lattice rank-major; a point's position in it
    is its id. ``moves[pid]`` holds ``(qid, bits)`` for every legal destination.
    """

    board: BoardSpec
    policy: Policy
    points: list[Point]
    index: dict[Point, int]
    moves: list[list[tuple[int, int]]]
    _masks: dict[tuple[int, int], int] = field(default_factory=dict, repr=False)

    def destinations(self, p: Point) -> list[Point]:
        return [self.points[q] for q, _ in self.moves[self.index[p]]]

    def stroke_bits(self, s: Stroke) -> int:
        try:
            key = (self.index[s.start], self.index[s.end])
        except KeyError:
            raise GeometryError(f"stroke {s} leaves the lattice") from None
        try:
            return self._masks[key]
        except KeyError:
            raise IllegalStrokeError(f"stroke {s} is illegal under {self.policy.value}") from None

    def stroke_mask(self, s: Stroke) -> CoverageMask:
        return CoverageMask(self.stroke_bits(s), self.board.n)

    def pair_count(self) -> int:
        return len(self._masks)


def build_line_table(board: BoardSpec, policy: Policy) -> LineTable:
    if board.n > MAX_CORE_SIDE:
        raise GeometryError(f"core side {board.n} exceeds the {MAX_CORE_SIDE}x{MAX_CORE_SIDE} mask")
    points = board.lattice_points()
    index = {p: i for i, p in enumerate(points)}
    moves: list[list[tuple[int, int]]] = []
    masks: dict[tuple[int, int], int] = {}
    for i, p in enumerate(points):
        row = []
        for j, q in enumerate(points):
            if i == j:
                continue
            s = Stroke(p, q)
            if not policy_allows(policy, s):
                continue
            bits = mask_of(cells_on_stroke(s, board), board).bits
            row.append((j, bits))
            masks[i, j] = bits
        moves.append(row)
    return LineTable(board, policy, points, index, moves, masks)


@lru_cache(maxsize=32)
def cached_line_table(board: BoardSpec, policy: Policy) -> LineTable:
    return build_line_table(board, policy)


def coverage_of_path(path: Path, board: BoardSpec, table: LineTable) -> CoverageMask:
    """Union of stroke masks; a bare waypoint covers itself when it is a star."""
    if len(path) == 1:
        p = path.start
        if not board.in_lattice(p):
            raise GeometryError(f"{p} lies outside the lattice")
        return mask_of([p] if board.is_star(p) else [], board)
    bits = 0
    for s in strokes_of(path):
        bits |= table.stroke_bits(s)
    return CoverageMask(bits, board.n)
