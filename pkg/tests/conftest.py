"""Shared fixtures: the 3-building / 4-period dataset used across the suite.

Nonzero flows -- P1: A->B=5, B->A=1, A->C=2; P2: A->B=3; P3: none;
P4: B->C=10, C->A=4.
"""

from __future__ import annotations

import pytest

from relocviz.dataset import (
    Dataset,
    load_dataset,
    parse_color_map,
    parse_polygon_file,
    parse_relocation_file,
)

POLYGON_TEXT = """canvas 32 32
# vectorized campus map
FF0000 2,2 6,2 6,6 2,6
00FF00 10,2 14,2 14,6 10,6
0000FF 2,10 6,10 6,14 2,14
808080 8,8 16,8 16,16 8,16
"""

COLORMAP_TEXT = """FF0000 A
00FF00 B
0000FF C
"""

RELOCATION_TEXT = """buildings A B C
period P1
0 5 2
1 0 0
0 0 0
period P2
0 3 0
0 0 0
0 0 0
period P3
0 0 0
0 0 0
0 0 0
period P4
0 0 0
0 0 10
4 0 0
"""


@pytest.fixture(scope="session")
def fixture_series():
    return parse_relocation_file(RELOCATION_TEXT)


@pytest.fixture(scope="session")
def fixture_dataset() -> Dataset:
    return load_dataset(
        parse_polygon_file(POLYGON_TEXT),
        parse_color_map(COLORMAP_TEXT),
        parse_relocation_file(RELOCATION_TEXT),
    )


@pytest.fixture()
def fixture_files(tmp_path):
    """The three dataset files written to disk, for CLI-level tests."""
    paths = {
        "polygons": tmp_path / "map.poly",
        "colormap": tmp_path / "colors.map",
        "relocations": tmp_path / "moves.mat",
    }
    paths["polygons"].write_text(POLYGON_TEXT, encoding="utf-8")
    paths["colormap"].write_text(COLORMAP_TEXT, encoding="utf-8")
    paths["relocations"].write_text(RELOCATION_TEXT, encoding="utf-8")
    return paths
