"""
Carpet Spec Module
Digits with reflection signatures, the validated carpet spec, and the
per-digit affine axis maps x -> (sx*x + dx)/n, y -> (sy*y + dy)/m
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path
import sys

import numpy as np

sys.path.append(str(Path(__file__).parent.parent.parent))
from src.utils.errors import SpecValidationError
from src.utils.logger import get_logger

logger = get_logger(__name__)

SIGNS = (-1, 1)


@dataclass(frozen=True)
class Digit:
    """One chosen grid cell (i, j) with its signature (sx, sy)"""

    i: int
    j: int
    sx: int = 1
    sy: int = 1

    @property
    def dx(self) -> int:
        return self.i if self.sx == 1 else self.i + 1

    @property
    def dy(self) -> int:
        return self.j if self.sy == 1 else self.j + 1

    @property
    def cell(self) -> tuple[int, int]:
        return (self.i, self.j)

    def label(self) -> str:
        signs = ''.join('+' if s == 1 else '-' for s in (self.sx, self.sy))
        return f"({self.i},{self.j},{signs})"


@dataclass(frozen=True)
class CarpetSpec:
    """Grid dimensions n > m > 1 and an ordered tuple of distinct digits"""

    n: int
    m: int
    digits: tuple[Digit, ...]

    def __len__(self) -> int:
        return len(self.digits)

    @property
    def cells(self) -> tuple[tuple[int, int], ...]:
        return tuple(d.cell for d in self.digits)

    def arrays(self):
        """
        Column, row and sign arrays in digit order (used by vectorized code)

        Returns:
            dict: numpy int64 arrays keyed by 'i', 'j', 'sx', 'sy', 'dx', 'dy'
        """
        return {
            'i': np.array([d.i for d in self.digits], dtype=np.int64),
            'j': np.array([d.j for d in self.digits], dtype=np.int64),
            'sx': np.array([d.sx for d in self.digits], dtype=np.int64),
            'sy': np.array([d.sy for d in self.digits], dtype=np.int64),
            'dx': np.array([d.dx for d in self.digits], dtype=np.int64),
            'dy': np.array([d.dy for d in self.digits], dtype=np.int64),
        }

    def with_signatures(self, signatures) -> "CarpetSpec":
        """
        Same (i, j) set with new signatures

        Args:
            signatures (Sequence[tuple[int, int]]): (sx, sy) per digit, in digit order

        Returns:
            CarpetSpec: Validated spec with the reassigned signatures
        """
        signatures = list(signatures)
        if len(signatures) != len(self.digits):
            raise SpecValidationError(
                f"expected {len(self.digits)} signatures, got {len(signatures)}",
                field='digits',
            )
        return validate_spec({
            'n': self.n,
            'm': self.m,
            'digits': [
                {'i': d.i, 'j': d.j, 'sx': sx, 'sy': sy}
                for d, (sx, sy) in zip(self.digits, signatures)
            ],
        })

    def sign_free(self) -> "CarpetSpec":
        """Same (i, j) set with every signature forced to (+1, +1)"""
        return self.with_signatures([(1, 1)] * len(self.digits))

    def describe(self) -> str:
        return f"n={self.n}, m={self.m}, digits=[{', '.join(d.label() for d in self.digits)}]"


@dataclass(frozen=True)
class AxisMap:
    """The affine map t -> (sign*t + offset)/base on one axis"""

    base: int
    sign: int
    offset: int

    def __call__(self, t):
        return (self.sign * t + self.offset) / self.base

    @property
    def slope(self) -> float:
        return self.sign / self.base

    @property
    def image(self) -> tuple[float, float]:
        """Image of [0, 1] as an ordered interval"""
        ends = sorted((self(0.0), self(1.0)))
        return (ends[0], ends[1])


def _require_int(value, field, digit_index=None):
    # bool is an int subclass; a spec with True/False coordinates is a typo
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise SpecValidationError(f"expected an integer, got {value!r}", field, digit_index)
    return int(value)


def _digit_fields(entry, index):
    if isinstance(entry, Digit):
        return entry.i, entry.j, entry.sx, entry.sy
    if isinstance(entry, Mapping):
        missing = [key for key in ('i', 'j') if key not in entry]
        if missing:
            raise SpecValidationError(f"missing {', '.join(missing)}", 'digits', index)
        return entry['i'], entry['j'], entry.get('sx', 1), entry.get('sy', 1)
    if isinstance(entry, Sequence) and not isinstance(entry, str) and len(entry) in (2, 4):
        values = list(entry) + [1, 1] if len(entry) == 2 else list(entry)
        return tuple(values[:4])
    raise SpecValidationError(
        f"expected a mapping {{i, j, sx, sy}} or a 2/4-tuple, got {entry!r}", 'digits', index
    )


def validate_spec(raw) -> CarpetSpec:
    """
    Validate candidate spec data and build a CarpetSpec

    Args:
        raw (Mapping | CarpetSpec): Data with n, m and a digit list; each digit is
            a mapping with i, j and optional sx, sy (default +1), or a tuple

    Returns:
        CarpetSpec: Spec satisfying 1 < m < n, |D| >= 2 and distinct cells,
            digit order preserved

    Raises:
        SpecValidationError: Naming the offending field and digit index
    """
    if isinstance(raw, CarpetSpec):
        raw = {'n': raw.n, 'm': raw.m, 'digits': list(raw.digits)}
    if not isinstance(raw, Mapping):
        raise SpecValidationError(f"expected a mapping with n, m, digits, got {type(raw).__name__}")

    for key in ('n', 'm', 'digits'):
        if key not in raw:
            raise SpecValidationError("missing required field", key)

    n = _require_int(raw['n'], 'n')
    m = _require_int(raw['m'], 'm')
    if m <= 1:
        raise SpecValidationError(f"m={m} violates 1 < m < n", 'm')
    if m >= n:
        raise SpecValidationError(f"m={m}, n={n} violates 1 < m < n", 'm')

    entries = raw['digits']
    if isinstance(entries, (str, bytes)) or not isinstance(entries, Sequence):
        raise SpecValidationError("expected a list of digits", 'digits')
    if len(entries) < 2:
        raise SpecValidationError(f"need at least 2 digits, got {len(entries)}", 'digits')

    digits = []
    seen = {}
    for index, entry in enumerate(entries):
        i, j, sx, sy = _digit_fields(entry, index)
        i = _require_int(i, 'i', index)
        j = _require_int(j, 'j', index)
        sx = _require_int(sx, 'sx', index)
        sy = _require_int(sy, 'sy', index)
        if not 0 <= i < n:
            raise SpecValidationError(f"column i={i} outside [0, {n})", 'i', index)
        if not 0 <= j < m:
            raise SpecValidationError(f"row j={j} outside [0, {m})", 'j', index)
        if sx not in SIGNS:
            raise SpecValidationError(f"sign sx={sx} not in {{-1, +1}}", 'sx', index)
        if sy not in SIGNS:
            raise SpecValidationError(f"sign sy={sy} not in {{-1, +1}}", 'sy', index)
        if (i, j) in seen:
            raise SpecValidationError(
                f"cell ({i},{j}) already used by digit #{seen[(i, j)]}; cells must be distinct",
                'digits', index,
            )
        seen[(i, j)] = index
        digits.append(Digit(i, j, sx, sy))

    spec = CarpetSpec(n=n, m=m, digits=tuple(digits))
    logger.debug(f"Validated spec {spec.describe()}")
    return spec


def digit_axis_maps(d: Digit, spec: CarpetSpec) -> tuple[AxisMap, AxisMap]:
    """
    The two axis maps of a digit

    Args:
        d (Digit): A digit of the spec
        spec (CarpetSpec): The carpet

    Returns:
        tuple[AxisMap, AxisMap]: x -> (sx*x + dx)/n and y -> (sy*y + dy)/m
    """
    return AxisMap(spec.n, d.sx, d.dx), AxisMap(spec.m, d.sy, d.dy)


def random_signatures(count, rng):
    """
    Uniform random signature assignment

    Args:
        count (int): Number of digits
        rng (np.random.Generator): Source of randomness

    Returns:
        list[tuple[int, int]]: (sx, sy) per digit
    """
    draws = rng.choice(np.array(SIGNS, dtype=np.int64), size=(count, 2))
    return [(int(sx), int(sy)) for sx, sy in draws]


def worked_example_spec() -> CarpetSpec:
    """The n=4, m=3 carpet with six reflected digits used throughout the docs"""
    return validate_spec({
        'n': 4,
        'm': 3,
        'digits': [
            {'i': 0, 'j': 0, 'sx': 1, 'sy': 1},
            {'i': 3, 'j': 0, 'sx': 1, 'sy': 1},
            {'i': 1, 'j': 1, 'sx': -1, 'sy': 1},
            {'i': 0, 'j': 2, 'sx': 1, 'sy': -1},
            {'i': 2, 'j': 2, 'sx': -1, 'sy': -1},
            {'i': 3, 'j': 2, 'sx': 1, 'sy': -1},
        ],
    })


def full_grid_spec(n, m) -> CarpetSpec:
    """Every cell of the n x m grid, all signatures +1 (fills the unit square)"""
    return validate_spec({
        'n': n,
        'm': m,
        'digits': [{'i': i, 'j': j} for j in range(m) for i in range(n)],
    })
