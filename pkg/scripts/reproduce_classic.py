"""Reproduce the 8x8 result end to end.

1. verify the known 14-stroke queen path (c5 to d4);
2. show that 8 strokes cannot work (root bound);
3. search for a 14-stroke path from scratch (progressive, first hit);
4. write SVG diagrams of both paths.

Usage: python scripts/reproduce_classic.py [--out DIR] [--seed N] [--time-limit S]
"""

import argparse
import pathlib
import time

from starpath import (
    CLASSIC_PATH, BoardSpec, Mode, Point, Policy, RuleSet, SearchConfig, format_path,
    parse_path, render_ascii, render_svg, solve, verify,
)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="out")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--time-limit", type=float, default=1800.0)
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    board = BoardSpec()
    rules = RuleSet(board, Policy.QUEEN, Point(3, 5), Point(4, 4))
    known = parse_path(CLASSIC_PATH, board)
    report = verify(known, RuleSet(board, Policy.QUEEN, Point(3, 5), Point(4, 4), 14))
    print(f"known path: {report.verdict}, {report.covered}/64 stars, {report.stroke_count} strokes")

    res8 = solve(SearchConfig(rules, max_strokes=8))
    print(f"8 strokes: {res8.status.value}, {len(res8.solutions)} solutions, "
          f"{res8.nodes_expanded} nodes")

    t0 = time.monotonic()
    res = solve(SearchConfig(rules, max_strokes=14, mode=Mode.FIRST, progressive=True,
                             seed=args.seed, time_limit=args.time_limit))
    print(f"search: {res.status.value}, {res.nodes_expanded} nodes, "
          f"{time.monotonic() - t0:.0f} s")
    (out / "known.svg").write_text(render_svg(known, board))
    if res.solutions:
        found = res.solutions[0]
        print(f"found: {format_path(found, board)} "
              f"({verify(found, rules).verdict})")
        print(render_ascii(found, board))
        (out / "found.svg").write_text(render_svg(found, board))
    print(f"diagrams in {out}/")


if __name__ == "__main__":
    main()
