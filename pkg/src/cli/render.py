"""
Raster Render Module
Paints the level-k cylinders of a carpet into an 8-bit grayscale image and
writes it as binary PGM (P5). With the glyph flag each cylinder gets an "F"
stencil pulled back through its composed maps, so reflections are visible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import io
from pathlib import Path
import sys

import numpy as np
from PIL import Image

sys.path.append(str(Path(__file__).parent.parent.parent))
from src.boxlab.enumeration import cylinder_arrays
from src.carpet.carpet_spec import CarpetSpec
from src.utils.errors import CarpetLabError
from src.utils.logger import get_logger

logger = get_logger(__name__)

BACKGROUND = 255
FOREGROUND = 0
GLYPH_CELL = 192
MIN_SIZE = 16

# 3 columns x 5 rows, top row first; no mirror or rotation symmetry
F_STENCIL = np.array([
    [1, 1, 1],
    [1, 0, 0],
    [1, 1, 0],
    [1, 0, 0],
    [1, 0, 0],
], dtype=bool)


@dataclass(frozen=True, eq=False)
class RasterImage:
    """Grayscale raster with row 0 at the top (y = 1)"""

    pixels: np.ndarray
    provenance: dict = field(default_factory=dict)

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    def occupied(self) -> np.ndarray:
        """Boolean mask of painted (non-background) pixels"""
        return self.pixels != BACKGROUND

    def to_pgm_bytes(self) -> bytes:
        buffer = io.BytesIO()
        Image.fromarray(self.pixels).save(buffer, format='PPM')
        return buffer.getvalue()

    def save(self, path) -> Path:
        filepath = Path(path)
        filepath.parent.mkdir(parents=True, exist_ok=True)
        filepath.write_bytes(self.to_pgm_bytes())
        logger.info(f"✅ Saved {self.width}x{self.height} PGM: {filepath}")
        return filepath


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def pixel_span(index: int, cells: int, size: int) -> tuple[int, int]:
    """
    Pixels whose centers lie in [index/cells, (index+1)/cells)

    Center (p + 1/2)/size is inside iff 2*index*size <= (2p+1)*cells < 2*(index+1)*size.
    """
    start = _ceil_div(2 * index * size - cells, 2 * cells)
    stop = _ceil_div(2 * (index + 1) * size - cells, 2 * cells)
    return max(start, 0), min(stop, size)


def stencil_lookup(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Sample the F stencil at local cell coordinates (u right, v up), both in [0, 1]"""
    rows, cols = F_STENCIL.shape
    col = np.clip(np.floor(u * cols).astype(np.int64), 0, cols - 1)
    row = np.clip(np.floor((1.0 - v) * rows).astype(np.int64), 0, rows - 1)
    return F_STENCIL[row[:, None], col[None, :]]


def _local(coords: np.ndarray, index: int, cells: int, orientation: int) -> np.ndarray:
    scaled = coords * cells
    return scaled - index if orientation == 1 else index + 1 - scaled


def glyph_cell(sx: int, sy: int, size: int = 64) -> np.ndarray:
    """
    The stencil as painted into one cell of `size` x `size` pixels for a signature

    Returns:
        np.ndarray: Boolean mask, row 0 at the top
    """
    centers = (np.arange(size) + 0.5) / size
    u = _local(centers, 0, 1, sx)
    v = _local(centers, 0, 1, sy)
    # Image rows run top-down, v runs bottom-up
    return stencil_lookup(u, v[::-1])


def render_raster(spec: CarpetSpec, level: int, size: int, glyph: bool = False,
                  budget: int | None = None) -> RasterImage:
    """
    Render the union of level-`level` cylinders

    Args:
        spec (CarpetSpec): The carpet
        level (int): Cylinder level (0 = unit square)
        size (int): Image width and height in pixels (>= 16)
        glyph (bool): Paint the F stencil in each cylinder instead of filling it
        budget (int | None): Words per level allowed (defaults to config)

    Returns:
        RasterImage: Deterministic raster
    """
    if size < MIN_SIZE:
        raise CarpetLabError(f"image size must be at least {MIN_SIZE} pixels, got {size}")
    if level < 0:
        raise CarpetLabError(f"level must be non-negative, got {level}")

    logger.info(f"Rendering level {level} at {size}x{size} (glyph={glyph})")
    cylinders = cylinder_arrays(spec, level, budget)
    cells_x = spec.n ** level
    cells_y = spec.m ** level

    # Canvas indexed [py, px] with py counted from the bottom; flipped at the end
    canvas = np.full((size, size), BACKGROUND, dtype=np.uint8)
    centers = (np.arange(size) + 0.5) / size

    for x_index, y_index, sx, sy in zip(cylinders.x, cylinders.y, cylinders.sx, cylinders.sy):
        x0, x1 = pixel_span(int(x_index), cells_x, size)
        y0, y1 = pixel_span(int(y_index), cells_y, size)
        if x0 >= x1 or y0 >= y1:
            continue
        if not glyph:
            canvas[y0:y1, x0:x1] = FOREGROUND
            continue
        u = _local(centers[x0:x1], int(x_index), cells_x, int(sx))
        v = _local(centers[y0:y1], int(y_index), cells_y, int(sy))
        mask = stencil_lookup(u, v)
        block = np.where(mask, FOREGROUND, GLYPH_CELL).astype(np.uint8)
        canvas[y0:y1, x0:x1] = block

    pixels = np.ascontiguousarray(canvas[::-1])
    return RasterImage(pixels=pixels, provenance={
        'spec': spec.describe(),
        'level': level,
        'size': size,
        'glyph': glyph,
    })

