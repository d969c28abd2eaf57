"""Nodes and time to the first 14-stroke path for several move-order seeds.

Seed 0 is the deterministic order (most new stars, then longest stroke);
other seeds shuffle the final tie-break.

Usage: python scripts/seed_sweep.py [--seeds 0-7] [--node-limit N]
"""

import argparse

from starpath import BoardSpec, Mode, Point, Policy, RuleSet, SearchConfig, format_path, solve


def parse_seeds(text):
    lo, _, hi = text.partition("-")
    return range(int(lo), int(hi or lo) + 1)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", default="0-7")
    ap.add_argument("--node-limit", type=int, default=5_000_000)
    args = ap.parse_args()
    board = BoardSpec()
    rules = RuleSet(board, Policy.QUEEN, Point(3, 5), Point(4, 4))
    print("seed\tstatus\tnodes\tseconds\tpath")
    for seed in parse_seeds(args.seeds):
        res = solve(SearchConfig(rules, max_strokes=14, mode=Mode.FIRST, progressive=True,
                                 seed=seed, node_limit=args.node_limit))
        path = format_path(res.solutions[0], board) if res.solutions else "-"
        print(f"{seed}\t{res.status.value}\t{res.nodes_expanded}\t{res.elapsed:.0f}\t{path}",
              flush=True)


if __name__ == "__main__":
    main()
