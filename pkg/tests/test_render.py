import re
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starpath.geometry import BoardSpec, Path, Point, parse_path
from starpath.render import RenderOptions, render_ascii, render_svg

B8 = BoardSpec()
CLASSIC = parse_path("c5-f8-c8-h3-b3-g8-g3-b8-b2-g2-a8-a1-h1-h8-d4", B8)
NS = "{http://www.w3.org/2000/svg}"


def test_ascii_empty_board():
    assert render_ascii(None, B8) == ("*" * 8 + "\n") * 8


def test_ascii_classic_path():
    rows = render_ascii(CLASSIC, B8).splitlines()
    assert rows[8 - 5][2] == "S"  # c5
    assert rows[8 - 4][3] == "E"  # d4
    text = "".join(rows)
    assert text.count("o") == 13 and text.count("*") == 64 - 15


def test_ascii_start_wins_when_endpoints_coincide():
    assert render_ascii(Path((Point(1, 1),)), BoardSpec(1)) == "S\n"


def _svg(path, board=B8, **kw):
    return ET.fromstring(render_svg(path, board, RenderOptions(**kw)))


def test_svg_classic_counts():
    root = _svg(CLASSIC)
    circles = root.findall(f"{NS}circle")
    assert len(circles) == 64
    assert sum("light" in c.get("class") for c in circles) == 2
    (line,) = root.findall(f"{NS}polyline")
    assert len(line.get("points").split()) == 15


def test_svg_rank_eight_on_top():
    root = _svg(CLASSIC)
    first = root.find(f"{NS}polyline").get("points").split()[0]
    x, y = map(float, first.split(","))
    assert (x, y) == (2.5 * 40, 3.5 * 40)  # c5: third file, fourth row from the top


def test_svg_no_path():
    root = _svg(None)
    assert len(root.findall(f"{NS}circle")) == 64
    assert root.findall(f"{NS}polyline") == []


def test_svg_deterministic():
    assert render_svg(CLASSIC, B8) == render_svg(CLASSIC, B8)


def test_svg_margin_and_coords():
    b = BoardSpec(3, 1)
    p = parse_path("(0,0)-c3-(0,3)-(3,0)-(3,4)", b)
    text = render_svg(p, b, RenderOptions(show_coords=True))
    root = ET.fromstring(text)
    assert len(root.findall(f"{NS}circle")) == 9
    assert len(root.findall(f"{NS}text")) == 9
    assert 'class="core"' in text
    # the (0,0) corner sits in the margin, half a cell in from the left edge
    assert root.find(f"{NS}polyline").get("points").startswith("20,180")


def test_options_reject_bad_cell_size():
    with pytest.raises(ValueError):
        RenderOptions(cell_size=0)


@settings(max_examples=50)
@given(st.integers(1, 8), st.integers(0, 2), st.data())
def test_svg_counts_hold_everywhere(n, margin, data):
    board = BoardSpec(n, margin)
    wps = data.draw(st.lists(st.sampled_from(board.lattice_points()), min_size=1, max_size=8))
    wps = [p for i, p in enumerate(wps) if i == 0 or p != wps[i - 1]]
    path = Path(tuple(wps))
    text = render_svg(path, board)
    root = ET.fromstring(text)
    assert len(root.findall(f"{NS}circle")) == n * n
    assert len(root.find(f"{NS}polyline").get("points").split()) == len(wps)
    assert not re.search(r"\d{4}-\d{2}-\d{2}", text)
