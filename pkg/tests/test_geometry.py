from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from starpath.geometry import (
    BoardSpec,
    GeometryError,
    Path,
    Point,
    Stroke,
    StrokeClass,
    board_symmetries,
    cells_on_stroke,
    format_path,
    format_square,
    lattice_points_on,
    parse_path,
    parse_square,
    stroke_class,
    transform_path,
)

B8 = BoardSpec()
CLASSIC = "c5-f8-c8-h3-b3-g8-g3-b8-b2-g2-a8-a1-h1-h8-d4"

coords = st.integers(-6, 14)
points = st.builds(Point, coords, coords)


def test_board_defaults():
    assert (B8.n, B8.margin, B8.lo, B8.hi) == (8, 0, 1, 8)
    assert len(B8.stars()) == 64
    assert B8.stars()[0] == Point(1, 1) and B8.stars()[1] == Point(2, 1)


@pytest.mark.parametrize("n,m", [(0, 0), (3, -1), (15, 1), (17, 0)])
def test_board_rejects(n, m):
    with pytest.raises(GeometryError):
        BoardSpec(n, m)


def test_margin_points_are_not_stars():
    b = BoardSpec(3, 1)
    assert b.in_lattice(Point(0, 0)) and not b.is_star(Point(0, 0))
    assert len(b.lattice_points()) == 25
    assert len(b.stars()) == 9


def test_degenerate_stroke_rejected():
    with pytest.raises(GeometryError):
        Stroke(Point(1, 1), Point(1, 1))


def test_stroke_classes():
    assert stroke_class(Stroke(Point(1, 1), Point(8, 8))) is StrokeClass.QUEEN
    assert stroke_class(Stroke(Point(1, 1), Point(1, 5))) is StrokeClass.QUEEN
    assert stroke_class(Stroke(Point(1, 1), Point(2, 3))) is StrokeClass.GENERAL


def test_cells_on_long_diagonal():
    cells = cells_on_stroke(Stroke(Point(1, 1), Point(8, 8)), B8)
    assert cells == frozenset(Point(i, i) for i in range(1, 9))


def test_knight_stroke_covers_only_endpoints():
    s = Stroke(Point(1, 1), Point(2, 3))
    assert cells_on_stroke(s, B8) == {Point(1, 1), Point(2, 3)}


def test_nine_dots_stroke_through_margin():
    b = BoardSpec(3, 1)
    s = Stroke(Point(0, 3), Point(3, 0))
    assert cells_on_stroke(s, b) == {Point(1, 2), Point(2, 1)}


@given(points, points)
def test_lattice_points_match_gcd(a, b):
    if a == b:
        return
    s = Stroke(a, b)
    pts = lattice_points_on(s)
    df, dr = s.delta
    assert len(pts) == gcd(abs(df), abs(dr)) + 1
    assert pts[0] == a and pts[-1] == b
    # every point lies on the segment
    for p in pts:
        assert (p.file - a.file) * dr == (p.rank - a.rank) * df


@given(points, points)
def test_coverage_is_orientation_free(a, b):
    if a == b:
        return
    board = BoardSpec(8, 4)
    assert cells_on_stroke(Stroke(a, b), board) == cells_on_stroke(Stroke(b, a), board)


def test_parse_and_format_classic_path():
    p = parse_path(CLASSIC, B8)
    assert p.stroke_count == 14
    assert p.start == Point(3, 5) and p.end == Point(4, 4)
    assert format_path(p, B8) == CLASSIC


def test_parse_pair_form_with_negative_coords():
    b = BoardSpec(3, 1)
    p = parse_path("(0,0)-c3-(0,3)-(3,0)-(3,4)", b)
    assert p.waypoints[0] == Point(0, 0)
    assert format_path(p, b) == "(0,0)-c3-(0,3)-(3,0)-(3,4)"
    assert parse_square("(-1,2)", BoardSpec(3, 2)) == Point(-1, 2)


@pytest.mark.parametrize("text", ["", "c5-", "z9", "i1", "a9", "c5--d4", "(1,2"])
def test_parse_rejects(text):
    with pytest.raises(GeometryError):
        parse_path(text, B8)


def test_consecutive_duplicate_waypoints_rejected():
    with pytest.raises(GeometryError):
        Path((Point(1, 1), Point(1, 1)))


@given(st.integers(1, 8), st.data())
def test_square_round_trip(n, data):
    board = BoardSpec(n, data.draw(st.integers(0, 2)))
    p = data.draw(st.sampled_from(board.lattice_points()))
    assert parse_square(format_square(p, board), board) == p


def test_symmetries_form_a_group_of_eight():
    gs = board_symmetries(B8)
    assert gs[0](Point(3, 5)) == Point(3, 5)
    images = {tuple(g(p) for p in B8.stars()) for g in gs}
    assert len(images) == 8
    for g in gs:
        assert sorted(g(p) for p in B8.stars()) == sorted(B8.stars())


def test_symmetry_preserves_coverage():
    path = parse_path(CLASSIC, B8)
    for g in board_symmetries(B8):
        img = transform_path(path, g)
        assert img.stroke_count == 14
        assert all(stroke_class(Stroke(a, b)) is StrokeClass.QUEEN
                   for a, b in zip(img.waypoints, img.waypoints[1:]))
