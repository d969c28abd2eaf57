import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starpath.bitcover import Policy
from starpath.config import ConfigError, Mode, SearchConfig
from starpath.geometry import BoardSpec, Path, Point, board_symmetries, transform_path
from starpath.oracle import canonicalize, oracle_solve, path_class, representative
from starpath.verifier import RuleSet, verify


def _cfg(n, k, mode=Mode.ALL, start=None, end=None, **kw):
    b = BoardSpec(n, kw.pop("margin", 0))
    rules = RuleSet(b, kw.pop("policy", Policy.QUEEN), start, end)
    return SearchConfig(rules, max_strokes=k, mode=mode, **kw)


def test_caps():
    with pytest.raises(ConfigError):
        oracle_solve(_cfg(5, 3))
    with pytest.raises(ConfigError):
        oracle_solve(_cfg(3, 7))


def test_one_star_board():
    res = oracle_solve(_cfg(1, 2, Mode.MINIMIZE))
    assert res.best_k == 0 and res.solutions[0] == Path((Point(1, 1),))


@pytest.mark.parametrize("n,expected", [(2, 3), (3, 5)])
def test_minimum_strokes(n, expected):
    res = oracle_solve(_cfg(n, 6, Mode.MINIMIZE))
    assert res.best_k == expected
    assert verify(res.solutions[0], RuleSet(BoardSpec(n))).valid


def test_nine_dots_needs_margin():
    assert oracle_solve(_cfg(3, 4, Mode.MINIMIZE, policy=Policy.GENERAL)).best_k is None
    res = oracle_solve(_cfg(3, 4, Mode.MINIMIZE, policy=Policy.GENERAL, margin=1))
    assert res.best_k == 4


def test_every_solution_verifies():
    res = oracle_solve(_cfg(3, 5, start=Point(1, 1)))
    assert res.count == len(res.solutions) > 0
    rules = RuleSet(BoardSpec(3), required_start=Point(1, 1))
    assert all(verify(p, rules).valid for p in res.solutions)


def test_progressive_is_a_subset():
    full = oracle_solve(_cfg(3, 5))
    prog = oracle_solve(_cfg(3, 5, progressive=True))
    assert 0 < prog.count <= full.count


def test_count_mode_matches_all():
    assert oracle_solve(_cfg(2, 4, Mode.COUNT)).count == oracle_solve(_cfg(2, 4)).count


paths3 = st.lists(st.sampled_from(BoardSpec(3).stars()), min_size=1, max_size=6).filter(
    lambda w: all(a != b for a, b in zip(w, w[1:]))
).map(lambda w: Path(tuple(w)))


@settings(max_examples=100)
@given(paths3, st.integers(0, 7))
def test_canonical_form_is_class_invariant(path, gi):
    b = BoardSpec(3)
    g = board_symmetries(b)[gi]
    img = transform_path(path, g)
    assert canonicalize(path, True, b) == canonicalize(img, True, b)
    assert canonicalize(path, True, b) == canonicalize(img.reversed(), True, b)
    assert canonicalize(path, True, b) in path_class(path, True, b)


@settings(max_examples=100)
@given(paths3)
def test_fixed_endpoints_only_use_reversal(path):
    b = BoardSpec(3)
    assert canonicalize(path, False, b) == min(
        path, path.reversed(), key=lambda p: p.waypoints
    )


def test_representative_respects_endpoints():
    b = BoardSpec(3)
    p = Path((Point(1, 1), Point(3, 3), Point(3, 1)))
    rules = RuleSet(b, required_start=Point(3, 1))
    assert representative(p, rules).start == Point(3, 1)
