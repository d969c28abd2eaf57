"""Minimum stroke counts on small boards, solver against brute force.

Prints one row per (n, policy, margin) with free endpoints. The oracle column
is filled only where brute force is affordable.

Usage: python scripts/small_boards.py
"""

from starpath import BoardSpec, Mode, Policy, RuleSet, SearchConfig, format_path, oracle_solve
from starpath.solver import min_strokes

CASES = [
    (1, Policy.QUEEN, 0, 2),
    (2, Policy.QUEEN, 0, 6),
    (3, Policy.QUEEN, 0, 6),
    (3, Policy.GENERAL, 0, 6),
    (3, Policy.GENERAL, 1, 6),
    (4, Policy.QUEEN, 0, 8),
    (4, Policy.GENERAL, 1, 8),
]


def main():
    print("n\tpolicy\tmargin\tsolver\toracle\twitness")
    for n, policy, margin, cap in CASES:
        board = BoardSpec(n, margin)
        cfg = SearchConfig(RuleSet(board, policy), max_strokes=cap, mode=Mode.MINIMIZE)
        k, witness = min_strokes(cfg)
        ref = "-"
        if n <= 3:
            ref = oracle_solve(cfg).best_k
        w = format_path(witness, board) if witness else "-"
        print(f"{n}\t{policy.value}\t{margin}\t{k}\t{ref}\t{w}", flush=True)


if __name__ == "__main__":
    main()
