"""Lattice coordinates, square notation and straight strokes on a star field.

Stars sit on the ``n x n`` core of an integer lattice. An optional margin band
of width ``margin`` surrounds the core; its points may serve as turning points
but carry no stars.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from math import gcd
from typing import Callable, Iterable, Iterator, NamedTuple

FILE_LETTERS = "abcdefghijklmnop"
MAX_LATTICE_SIDE = 16

_ALGEBRAIC = re.compile(r"^([a-p])(\d+)$")
_PAIR = re.compile(r"^\(\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\)$")


class GeometryError(ValueError):
    """Raised for malformed notation or coordinates outside the lattice."""


class Point(NamedTuple):
    file: int
    rank: int


@dataclass(frozen=True)
class BoardSpec:
    n: int = 8
    margin: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GeometryError(f"board side must be >= 1, got {self.n}")
        if self.margin < 0:
            raise GeometryError(f"margin must be >= 0, got {self.margin}")
        if self.n + 2 * self.margin > MAX_LATTICE_SIDE:
            raise GeometryError(
                f"lattice side {self.n + 2 * self.margin} exceeds {MAX_LATTICE_SIDE}"
            )

    @property
    def lo(self) -> int:
        return 1 - self.margin

    @property
    def hi(self) -> int:
        return self.n + self.margin

    @property
    def side(self) -> int:
        return self.n + 2 * self.margin

    def is_star(self, p: Point) -> bool:
        return 1 <= p.file <= self.n and 1 <= p.rank <= self.n

    def in_lattice(self, p: Point) -> bool:
        return self.lo <= p.file <= self.hi and self.lo <= p.rank <= self.hi

    def stars(self) -> list[Point]:
        """Core stars in rank-major order (a1, b1, ..., a2, ...)."""
        return [Point(f, r) for r in range(1, self.n + 1) for f in range(1, self.n + 1)]

    def lattice_points(self) -> list[Point]:
        rng = range(self.lo, self.hi + 1)
        return [Point(f, r) for r in rng for f in rng]


class StrokeClass(enum.Enum):
    QUEEN = "queen"
    GENERAL = "general"


@dataclass(frozen=True)
class Stroke:
    start: Point
    end: Point

    def __post_init__(self) -> None:
        if self.start == self.end:
            raise GeometryError(f"degenerate stroke at {self.start}")

    @property
    def delta(self) -> tuple[int, int]:
        return self.end.file - self.start.file, self.end.rank - self.start.rank

    def reversed(self) -> Stroke:
        return Stroke(self.end, self.start)


@dataclass(frozen=True)
class Path:
    waypoints: tuple[Point, ...]

    def __post_init__(self) -> None:
        wps = tuple(Point(*p) for p in self.waypoints)
        object.__setattr__(self, "waypoints", wps)
        if not wps:
            raise GeometryError("a path needs at least one waypoint")
        for a, b in zip(wps, wps[1:]):
            if a == b:
                raise GeometryError(f"degenerate stroke at {a}")

    @property
    def start(self) -> Point:
        return self.waypoints[0]

    @property
    def end(self) -> Point:
        return self.waypoints[-1]

    @property
    def stroke_count(self) -> int:
        return len(self.waypoints) - 1

    def reversed(self) -> Path:
        return Path(self.waypoints[::-1])

    def __len__(self) -> int:
        return len(self.waypoints)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.waypoints)


def stroke_class(s: Stroke) -> StrokeClass:
    df, dr = s.delta
    if df == 0 or dr == 0 or abs(df) == abs(dr):
        return StrokeClass.QUEEN
    return StrokeClass.GENERAL


def lattice_points_on(s: Stroke) -> list[Point]:
    """All integer points of the closed segment, ordered from ``s.start``."""
    df, dr = s.delta
    g = gcd(abs(df), abs(dr))
    sf, sr = df // g, dr // g
    return [Point(s.start.file + k * sf, s.start.rank + k * sr) for k in range(g + 1)]


def cells_on_stroke(s: Stroke, board: BoardSpec) -> frozenset[Point]:
    """Stars covered by a stroke: lattice points of the closed segment on the core."""
    return frozenset(p for p in lattice_points_on(s) if board.is_star(p))


def strokes_of(path: Path) -> list[Stroke]:
    wps = path.waypoints
    return [Stroke(a, b) for a, b in zip(wps, wps[1:])]


def parse_square(text: str, board: BoardSpec) -> Point:
    """Parse ``"c5"`` or ``"(f,r)"`` into a lattice point of ``board``."""
    t = text.strip()
    m = _ALGEBRAIC.match(t)
    if m:
        if board.n > len(FILE_LETTERS):
            raise GeometryError("algebraic notation needs n <= 16")
        p = Point(FILE_LETTERS.index(m.group(1)) + 1, int(m.group(2)))
        if not board.is_star(p):
            raise GeometryError(f"{t!r} is not a square of the {board.n}x{board.n} board")
        return p
    m = _PAIR.match(t)
    if m:
        p = Point(int(m.group(1)), int(m.group(2)))
        if not board.in_lattice(p):
            raise GeometryError(f"{t!r} lies outside the lattice")
        return p
    raise GeometryError(f"malformed square {text!r}")


def format_square(p: Point, board: BoardSpec) -> str:
    if board.is_star(p) and board.n <= len(FILE_LETTERS):
        return f"{FILE_LETTERS[p.file - 1]}{p.rank}"
    return f"({p.file},{p.rank})"


def parse_path(text: str, board: BoardSpec) -> Path:
    """Parse a dash-joined list of squares, e.g. ``"c5-f8-c8"``.

    Pair squares may carry negative coordinates, so dashes inside parentheses
    are not separators.
    """
    parts: list[str] = []
    buf: list[str] = []
    depth = 0
    for ch in text.strip():
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "-" and depth == 0:
            parts.append("".join(buf))
            buf = []
        else:
            buf.append(ch)
    parts.append("".join(buf))
    if not parts or any(not p.strip() for p in parts):
        raise GeometryError(f"malformed path {text!r}")
    return Path(tuple(parse_square(p, board) for p in parts))


def format_path(path: Path, board: BoardSpec) -> str:
    return "-".join(format_square(p, board) for p in path.waypoints)


def board_symmetries(board: BoardSpec) -> list[Callable[[Point], Point]]:
    """The 8 symmetries of the square lattice about the board centre (identity first)."""
    c = board.n + 1

    def make(swap: bool, flip_f: bool, flip_r: bool) -> Callable[[Point], Point]:
        def g(p: Point) -> Point:
            f, r = (p.rank, p.file) if swap else (p.file, p.rank)
            return Point(c - f if flip_f else f, c - r if flip_r else r)

        return g

    return [make(s, a, b) for s in (False, True) for a in (False, True) for b in (False, True)]


def transform_path(path: Path, g: Callable[[Point], Point]) -> Path:
    return Path(tuple(g(p) for p in path.waypoints))


def check_in_lattice(points: Iterable[Point], board: BoardSpec) -> None:
    for p in points:
        if not board.in_lattice(p):
            raise GeometryError(f"{p} lies outside the lattice")
