"""
Cylinder Geometry Module
Exact integer-coded cylinders: composing digit maps only ever produces
intervals [A*b^-k, (A+1)*b^-k] on each axis, so they are stored as (k, A, sign)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
import sys

import numpy as np

sys.path.append(str(Path(__file__).parent.parent.parent))
from src.carpet.carpet_spec import CarpetSpec, Digit
from src.utils.errors import DepthOverflowError, SpecValidationError

# Axis indices must fit an unsigned 128-bit integer
INDEX_CAPACITY = 2 ** 128 - 1


def max_depth(base: int) -> int:
    """Largest level k whose cells b^k are still representable"""
    k = 0
    while base ** (k + 1) <= INDEX_CAPACITY:
        k += 1
    return k


@dataclass(frozen=True)
class AxisCell:
    """The interval [A*b^-k, (A+1)*b^-k] plus the sign of the composed slope"""

    base: int
    level: int
    index: int
    orientation: int = 1

    @property
    def cells(self) -> int:
        return self.base ** self.level

    @property
    def bounds(self) -> tuple[Fraction, Fraction]:
        return Fraction(self.index, self.cells), Fraction(self.index + 1, self.cells)

    @property
    def float_bounds(self) -> tuple[float, float]:
        lo, hi = self.bounds
        return float(lo), float(hi)

    def contains(self, other: "AxisCell") -> bool:
        """Whether `other` (at a deeper level) is nested in this cell"""
        if other.base != self.base or other.level < self.level:
            return False
        return other.index // self.base ** (other.level - self.level) == self.index

    def extend(self, cell: int, sign: int) -> "AxisCell":
        if self.base ** (self.level + 1) > INDEX_CAPACITY:
            raise DepthOverflowError(
                f"level {self.level + 1} in base {self.base} exceeds the 128-bit index capacity "
                f"(max depth {max_depth(self.base)})"
            )
        offset = cell if self.orientation == 1 else self.base - 1 - cell
        return AxisCell(
            base=self.base,
            level=self.level + 1,
            index=self.index * self.base + offset,
            orientation=self.orientation * sign,
        )

    def apply(self, t):
        """The composed affine map on this axis, evaluated in floating point"""
        scale = float(self.base) ** -self.level
        if self.orientation == 1:
            return (self.index + t) * scale
        return (self.index + 1 - t) * scale


@dataclass(frozen=True)
class CylinderRect:
    """The image of the unit square under the maps of a finite word"""

    x: AxisCell
    y: AxisCell
    word: tuple[Digit, ...] = ()

    @property
    def level(self) -> int:
        return self.x.level

    def contains(self, other: "CylinderRect") -> bool:
        return self.x.contains(other.x) and self.y.contains(other.y)

    def apply(self, x, y):
        """phi_{w1} o ... o phi_{wk} evaluated at (x, y)"""
        return self.x.apply(x), self.y.apply(y)


def unit_square(spec: CarpetSpec) -> CylinderRect:
    """The level-0 cylinder: [0,1]^2 with both orientations +1"""
    return CylinderRect(x=AxisCell(spec.n, 0, 0, 1), y=AxisCell(spec.m, 0, 0, 1))


def extend_cylinder(parent: CylinderRect, d: Digit) -> CylinderRect:
    """
    Child cylinder of `parent` under digit `d`

    Per axis: A' = A*b + (c if sign == +1 else b-1-c), sign' = sign * s.

    Raises:
        DepthOverflowError: When b^(k+1) exceeds the index capacity
    """
    return CylinderRect(
        x=parent.x.extend(d.i, d.sx),
        y=parent.y.extend(d.j, d.sy),
        word=parent.word + (d,),
    )


def _resolve_word(spec: CarpetSpec, word):
    resolved = []
    for position, entry in enumerate(word):
        if isinstance(entry, Digit):
            if entry not in spec.digits:
                raise SpecValidationError(
                    f"{entry.label()} at word position {position} is not a digit of the spec",
                    'word',
                )
            resolved.append(entry)
        else:
            index = int(entry)
            if not 0 <= index < len(spec.digits):
                raise SpecValidationError(f"digit index {index} out of range", 'word', position)
            resolved.append(spec.digits[index])
    return resolved


def cylinder_of_word(spec: CarpetSpec, word) -> CylinderRect:
    """
    Cylinder of a finite word, folded from the unit square

    Args:
        spec (CarpetSpec): The carpet
        word (Sequence[Digit | int]): Digits (or digit indices), outermost first

    Returns:
        CylinderRect: Exact cylinder with x-width n^-k and y-height m^-k
    """
    rect = unit_square(spec)
    for d in _resolve_word(spec, word):
        rect = extend_cylinder(rect, d)
    return rect


def singular_values(spec: CarpetSpec, word) -> tuple[float, float]:
    """
    Singular values of the composed linear part diag(+-n^-k, +-m^-k)

    Returns:
        tuple[float, float]: (m^-k, n^-k), independent of the signatures
    """
    linear = np.eye(2)
    for d in _resolve_word(spec, word):
        linear = linear @ np.diag([d.sx / spec.n, d.sy / spec.m])
    values = np.linalg.svd(linear, compute_uv=False)
    return float(values[0]), float(values[1])
