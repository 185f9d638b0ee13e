"""
Shared fixtures for the carpetlab test suite
"""

import os

# Tests never write dated log files
os.environ.setdefault('CARPETLAB_LOG_TO_FILE', '0')

import numpy as np
import pytest

from src.carpet.carpet_spec import full_grid_spec, validate_spec, worked_example_spec

SPEC_DIR = os.path.join(os.path.dirname(__file__), '..', 'data', 'specs')


@pytest.fixture
def example_spec():
    """n=4, m=3 with six reflected digits, rows t = (2, 1, 3)"""
    return worked_example_spec()


@pytest.fixture
def sign_free_spec(example_spec):
    return example_spec.sign_free()


@pytest.fixture
def full_grid_4x2():
    return full_grid_spec(4, 2)


@pytest.fixture
def example_spec_path():
    return os.path.abspath(os.path.join(SPEC_DIR, 'worked_example.json'))


@pytest.fixture
def sign_free_spec_path():
    return os.path.abspath(os.path.join(SPEC_DIR, 'worked_example_sign_free.json'))


@pytest.fixture
def full_grid_spec_path():
    return os.path.abspath(os.path.join(SPEC_DIR, 'full_grid_4x2.json'))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_spec(rng, max_n=8):
    """Random valid spec with 1 < m < n <= max_n and at least two distinct cells"""
    n = int(rng.integers(3, max_n + 1))
    m = int(rng.integers(2, n))
    cells = [(i, j) for i in range(n) for j in range(m)]
    size = int(rng.integers(2, len(cells) + 1))
    chosen = rng.choice(len(cells), size=size, replace=False)
    digits = []
    for index in chosen:
        i, j = cells[int(index)]
        sx, sy = rng.choice([-1, 1], size=2)
        digits.append({'i': i, 'j': j, 'sx': int(sx), 'sy': int(sy)})
    return validate_spec({'n': n, 'm': m, 'digits': digits})


@pytest.fixture
def random_specs(rng):
    return [random_spec(rng) for _ in range(20)]


@pytest.fixture
def small_random_specs(rng):
    """20 random specs with 2 <= m < n <= 6"""
    return [random_spec(rng, max_n=6) for _ in range(20)]


@pytest.fixture
def few_digit_specs(rng):
    """20 random specs with at most six digits, small enough to enumerate to level 6"""
    specs = []
    while len(specs) < 20:
        spec = random_spec(rng, max_n=6)
        if len(spec.digits) <= 6:
            specs.append(spec)
    return specs
