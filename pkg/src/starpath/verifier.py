"""Legality and coverage checks for claimed covering paths."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .bitcover import Policy, mask_of, policy_allows
from .geometry import (
    BoardSpec,
    GeometryError,
    Path,
    Point,
    StrokeClass,
    cells_on_stroke,
    check_in_lattice,
    format_square,
    parse_path,
    stroke_class,
    strokes_of,
)

__all__ = ["RuleSet", "StrokeReport", "VerifyReport", "parse_path", "verify", "report_to_json"]


@dataclass(frozen=True)
class RuleSet:
    board: BoardSpec = field(default_factory=BoardSpec)
    policy: Policy = Policy.QUEEN
    required_start: Optional[Point] = None
    required_end: Optional[Point] = None
    required_stroke_count: Optional[int] = None

    def __post_init__(self) -> None:
        for name in ("required_start", "required_end"):
            p = getattr(self, name)
            if p is not None and not self.board.is_star(Point(*p)):
                raise GeometryError(f"{name} {p} is not a star of the board")
        if self.required_stroke_count is not None and self.required_stroke_count < 0:
            raise ValueError("required_stroke_count must be >= 0")

    @property
    def free_endpoints(self) -> bool:
        return self.required_start is None and self.required_end is None

    def endpoints_ok(self, path: Path) -> bool:
        return (self.required_start is None or path.start == self.required_start) and (
            self.required_end is None or path.end == self.required_end
        )


@dataclass(frozen=True)
class StrokeReport:
    start: Point
    end: Point
    stroke_class: StrokeClass
    legal: bool
    stars: int


@dataclass(frozen=True)
class VerifyReport:
    board: BoardSpec
    stroke_count: int
    strokes: tuple[StrokeReport, ...]
    covered: int
    uncovered: tuple[Point, ...]
    endpoints_ok: bool
    stroke_count_ok: bool

    @property
    def strokes_ok(self) -> bool:
        return all(s.legal for s in self.strokes)

    @property
    def illegal_strokes(self) -> list[int]:
        return [i for i, s in enumerate(self.strokes) if not s.legal]

    @property
    def valid(self) -> bool:
        return self.strokes_ok and self.endpoints_ok and self.stroke_count_ok and not self.uncovered

    @property
    def verdict(self) -> str:
        return "valid" if self.valid else "invalid"


def verify(path: Path, rules: RuleSet) -> VerifyReport:
    """Check every rule at once; only lattice violations raise."""
    board = rules.board
    check_in_lattice(path.waypoints, board)
    strokes = strokes_of(path)
    reports = []
    covered: set[Point] = set()
    if not strokes and board.is_star(path.start):
        covered.add(path.start)
    for s in strokes:
        cells = cells_on_stroke(s, board)
        covered |= cells
        reports.append(
            StrokeReport(s.start, s.end, stroke_class(s), policy_allows(rules.policy, s), len(cells))
        )
    mask = mask_of(covered, board)
    uncovered = tuple(mask.missing())
    return VerifyReport(
        board=board,
        stroke_count=len(strokes),
        strokes=tuple(reports),
        covered=mask.popcount(),
        uncovered=uncovered,
        endpoints_ok=rules.endpoints_ok(path),
        stroke_count_ok=rules.required_stroke_count is None
        or rules.required_stroke_count == len(strokes),
    )


def report_to_dict(report: VerifyReport) -> dict:
    sq = lambda p: format_square(p, report.board)  # noqa: E731
    return {
        "verdict": report.verdict,
        "covered": report.covered,
        "uncovered": [sq(p) for p in report.uncovered],
        "stroke_count": report.stroke_count,
        "stroke_count_ok": report.stroke_count_ok,
        "endpoints_ok": report.endpoints_ok,
        "strokes": [
            {"from": sq(s.start), "to": sq(s.end), "class": s.stroke_class.value, "legal": s.legal}
            for s in report.strokes
        ],
    }


def report_to_json(report: VerifyReport) -> str:
    return json.dumps(report_to_dict(report), separators=(",", ":"))
