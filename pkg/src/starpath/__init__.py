"""Covering a square field of stars with one chained pencil path of straight strokes."""

from .bitcover import CoverageMask, LineTable, Policy, build_line_table, coverage_of_path
from .config import ConfigError, Mode, Ordering, SearchConfig, SearchResult, Status
from .geometry import (
    BoardSpec,
    GeometryError,
    Path,
    Point,
    Stroke,
    StrokeClass,
    format_path,
    parse_path,
    parse_square,
)
from .oracle import canonicalize, oracle_solve
from .render import RenderOptions, render_ascii, render_svg
from .solver import LowerBound, lower_bound, min_strokes, solve
from .verifier import RuleSet, VerifyReport, verify

CLASSIC_PATH = "c5-f8-c8-h3-b3-g8-g3-b8-b2-g2-a8-a1-h1-h8-d4"

__all__ = [
    "BoardSpec", "CLASSIC_PATH", "ConfigError", "CoverageMask", "GeometryError", "LineTable",
    "LowerBound", "Mode", "Ordering", "Path", "Point", "Policy", "RenderOptions", "RuleSet",
    "SearchConfig", "SearchResult", "Status", "Stroke", "StrokeClass", "VerifyReport",
    "build_line_table", "canonicalize", "coverage_of_path", "format_path", "lower_bound",
    "min_strokes", "oracle_solve", "parse_path", "parse_square", "render_ascii", "render_svg",
    "solve", "verify",
]
