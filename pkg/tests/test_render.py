"""
Tests for PGM rendering
"""

import io

import numpy as np
import pytest
from PIL import Image

from src.cli.render import (
    BACKGROUND,
    FOREGROUND,
    GLYPH_CELL,
    glyph_cell,
    pixel_span,
    render_raster,
)
from src.utils.errors import BudgetExceededError, CarpetLabError


def _cell_mask(spec, size):
    """Pixels whose centers fall in a level-1 digit cell, row 0 at the top"""
    centers = (np.arange(size) + 0.5) / size
    col = np.floor(centers * spec.n).astype(int)
    row = np.floor(centers * spec.m).astype(int)
    mask = np.zeros((size, size), dtype=bool)
    for i, j in spec.cells:
        mask[np.ix_(row == j, col == i)] = True
    return mask[::-1]


def test_pixel_span_half_open():
    assert pixel_span(0, 3, 512) == (0, 171)
    assert pixel_span(1, 3, 512) == (171, 341)
    assert pixel_span(2, 3, 512) == (341, 512)


def test_level_one_occupies_digit_cells(example_spec):
    image = render_raster(example_spec, 1, 512)
    np.testing.assert_array_equal(image.occupied(), _cell_mask(example_spec, 512))
    assert set(np.unique(image.pixels)) == {BACKGROUND, FOREGROUND}


def test_top_left_cell(example_spec):
    # Digit (0,2) is the top row, first column
    image = render_raster(example_spec, 1, 512)
    assert image.pixels[0, 0] == FOREGROUND
    assert image.pixels[511, 0] == FOREGROUND
    assert image.pixels[511, 200] == BACKGROUND


def test_full_grid_paints_everything(full_grid_4x2):
    for level in (0, 1, 3):
        assert render_raster(full_grid_4x2, level, 64).occupied().all()


def test_levels_are_nested(example_spec):
    coarse = render_raster(example_spec, 1, 512).occupied()
    fine = render_raster(example_spec, 2, 512).occupied()
    assert not np.any(fine & ~coarse)
    assert fine.sum() < coarse.sum()


def test_glyph_mirror():
    np.testing.assert_array_equal(glyph_cell(-1, 1), glyph_cell(1, 1)[:, ::-1])
    np.testing.assert_array_equal(glyph_cell(1, -1), glyph_cell(1, 1)[::-1, :])


def test_four_signature_classes_differ():
    cells = [glyph_cell(sx, sy) for sx in (1, -1) for sy in (1, -1)]
    for a in range(4):
        for b in range(a + 1, 4):
            assert not np.array_equal(cells[a], cells[b])


def test_glyph_render_uses_digit_signatures(example_spec):
    image = render_raster(example_spec, 1, 384, glyph=True)
    # n=4, m=3 at 384 px: every cell is 96 x 128 pixels
    plain = image.pixels[384 - 128:, 0:96]
    mirrored = image.pixels[256 - 128:256, 96:192]
    np.testing.assert_array_equal(mirrored, plain[:, ::-1])
    assert set(np.unique(image.pixels)) == {BACKGROUND, FOREGROUND, GLYPH_CELL}


def test_pgm_bytes(example_spec, tmp_path):
    image = render_raster(example_spec, 2, 64)
    data = image.to_pgm_bytes()
    assert data.startswith(b'P5')
    decoded = np.asarray(Image.open(io.BytesIO(data)))
    np.testing.assert_array_equal(decoded, image.pixels)
    path = image.save(tmp_path / 'carpet.pgm')
    assert path.read_bytes() == data


def test_render_is_deterministic(example_spec):
    first = render_raster(example_spec, 3, 128, glyph=True)
    second = render_raster(example_spec, 3, 128, glyph=True)
    assert first.to_pgm_bytes() == second.to_pgm_bytes()


def test_size_and_level_checks(example_spec):
    with pytest.raises(CarpetLabError, match='at least 16'):
        render_raster(example_spec, 1, 8)
    with pytest.raises(CarpetLabError):
        render_raster(example_spec, -1, 64)
    with pytest.raises(BudgetExceededError):
        render_raster(example_spec, 4, 64, budget=100)
