"""Search configuration and result records shared by the solver and the oracle."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .geometry import Path
from .verifier import RuleSet


class Mode(enum.Enum):
    FIRST = "first"
    ALL = "all"
    COUNT = "count"
    MINIMIZE = "min"


class Ordering(enum.Enum):
    NEW_COVERAGE_DESC = "coverage"
    LEXICOGRAPHIC = "lex"


class Status(enum.Enum):
    COMPLETE = "complete"
    BUDGET_EXHAUSTED = "budget_exhausted"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SearchConfig:
    rules: RuleSet = field(default_factory=RuleSet)
    max_strokes: int = 14
    mode: Mode = Mode.FIRST
    progressive: bool = False
    node_limit: Optional[int] = None
    time_limit: Optional[float] = None
    ordering: Ordering = Ordering.NEW_COVERAGE_DESC
    seed: int = 0
    workers: int = 1
    # consecutive strokes that add no star; None lifts the cap
    zero_run_cap: Optional[int] = 2
    transposition_size: int = 1 << 20
    allow_large: bool = False

    def __post_init__(self) -> None:
        if self.max_strokes < 0:
            raise ConfigError("max_strokes must be >= 0")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.zero_run_cap is not None and self.zero_run_cap < 0:
            raise ConfigError("zero_run_cap must be >= 0 or None")
        if self.transposition_size < 1:
            raise ConfigError("transposition_size must be >= 1")

    @property
    def unbounded(self) -> bool:
        return self.node_limit is None and self.time_limit is None


@dataclass
class SearchResult:
    status: Status
    solutions: list[Path]
    count: int = 0
    best_k: Optional[int] = None
    nodes_expanded: int = 0
    elapsed: float = 0.0

    @property
    def complete(self) -> bool:
        return self.status is Status.COMPLETE
