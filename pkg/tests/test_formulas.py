"""
Tests for the closed-form dimension formulas
"""

import math

import numpy as np
import pytest

from src.carpet.carpet_spec import full_grid_spec, random_signatures, validate_spec
from src.dimension.formulas import (
    box_dimension_closed_form,
    conditional_form_dimension,
    dimension_report,
    hausdorff_dimension,
    lagrange_multiplier,
    ly_dimension,
    optimal_weights,
    row_profile,
)
from src.dimension.weights import Weights
from src.utils.errors import WeightsError


def _independent_hausdorff(spec):
    beta = math.log(spec.m) / math.log(spec.n)
    counts = {}
    for d in spec.digits:
        counts[d.j] = counts.get(d.j, 0) + 1
    return math.log(sum(t ** beta for t in counts.values())) / math.log(spec.m)


class TestWorkedExample:

    def test_row_profile(self, example_spec):
        profile = row_profile(example_spec)
        assert profile.t == (2, 1, 3)
        assert profile.beta == pytest.approx(0.7924813, abs=1e-7)
        assert (profile.r, profile.N) == (3, 6)

    def test_hausdorff_dimension(self, example_spec):
        profile = row_profile(example_spec)
        value = hausdorff_dimension(profile)
        assert value == pytest.approx(1.4867, abs=1e-3)
        assert value == pytest.approx(_independent_hausdorff(example_spec), abs=1e-12)
        assert profile.power_sum() == pytest.approx(5.12047, abs=1e-4)

    def test_box_dimension_exceeds_hausdorff(self, example_spec):
        report = dimension_report(row_profile(example_spec))
        assert report.box_closed_form == pytest.approx(1.5, abs=1e-12)
        assert not report.box_equals_hausdorff

    def test_uniform_weights(self, example_spec):
        profile = row_profile(example_spec)
        assert ly_dimension(profile, Weights.uniform(example_spec)) == pytest.approx(1.483527, abs=1e-5)

    def test_optimal_weights(self, example_spec):
        profile = row_profile(example_spec)
        w = optimal_weights(profile)
        S = profile.power_sum()
        expected_q = np.array([2, 1, 3], dtype=float) ** profile.beta / S
        np.testing.assert_allclose(w.q, expected_q, atol=1e-15)
        np.testing.assert_allclose(w.p, expected_q[[0, 0, 1, 2, 2, 2]] / np.array([2, 2, 1, 3, 3, 3]),
                                   atol=1e-15)
        assert ly_dimension(profile, w) == pytest.approx(hausdorff_dimension(profile), abs=1e-12)

    def test_lagrange_multiplier(self, example_spec):
        profile = row_profile(example_spec)
        assert lagrange_multiplier(profile) == pytest.approx(1 - math.log(5.12047), abs=1e-4)

    def test_signatures_do_not_matter(self, example_spec):
        base = hausdorff_dimension(row_profile(example_spec))
        flipped = example_spec.with_signatures([(-1, 1), (1, -1)] * 3)
        assert hausdorff_dimension(row_profile(flipped)) == base
        assert hausdorff_dimension(row_profile(example_spec.sign_free())) == base


def test_closed_forms_are_bit_identical_across_signatures(random_specs, rng):
    for spec in random_specs:
        profile = row_profile(spec)
        uniform_dimension = ly_dimension(profile, Weights.uniform(spec))
        optimal = optimal_weights(profile)
        variants = [spec.sign_free()] + [
            spec.with_signatures(random_signatures(len(spec.digits), rng)) for _ in range(5)
        ]
        for variant in variants:
            other = row_profile(variant)
            assert other == profile
            assert ly_dimension(other, Weights.uniform(variant)) == uniform_dimension
            assert np.array_equal(optimal_weights(other).p, optimal.p)
            assert np.array_equal(optimal_weights(other).q, optimal.q)


@pytest.mark.parametrize('n', range(3, 9))
def test_full_grid_fills_the_square(n):
    for m in range(2, n):
        profile = row_profile(full_grid_spec(n, m))
        assert hausdorff_dimension(profile) == pytest.approx(2.0, abs=1e-12)
        assert box_dimension_closed_form(profile) == pytest.approx(2.0, abs=1e-12)


def test_single_row():
    spec = validate_spec({'n': 5, 'm': 2, 'digits': [(0, 0), (2, 0), (4, 0)]})
    profile = row_profile(spec)
    assert hausdorff_dimension(profile) == pytest.approx(math.log(3) / math.log(5), abs=1e-12)


def test_uniform_fibres_box_equals_hausdorff():
    spec = validate_spec({'n': 4, 'm': 3, 'digits': [(0, 0), (2, 0), (1, 2), (3, 2)]})
    report = dimension_report(row_profile(spec))
    assert report.box_equals_hausdorff


def test_bounds_on_random_specs(random_specs):
    for spec in random_specs:
        profile = row_profile(spec)
        value = hausdorff_dimension(profile)
        assert value == pytest.approx(_independent_hausdorff(spec), abs=1e-12)
        assert 0 <= value <= 2 + 1e-12
        assert value <= box_dimension_closed_form(profile) + 1e-12
        assert value >= math.log(len(spec.digits)) / math.log(spec.n) - 1e-12
        assert value <= math.log(len(spec.digits)) / math.log(spec.m) + 1e-12


def test_optimal_weights_maximize(random_specs, rng):
    for spec in random_specs:
        profile = row_profile(spec)
        best = hausdorff_dimension(profile)
        assert ly_dimension(profile, optimal_weights(profile)) == pytest.approx(best, abs=1e-12)
        for p in rng.dirichlet(np.ones(len(spec.digits)), size=1000):
            w = Weights.for_spec(spec, p / p.sum(), strict=False)
            assert ly_dimension(profile, w) <= best + 1e-9


def test_conditional_form_agrees(example_spec, rng):
    profile = row_profile(example_spec)
    for p in rng.dirichlet(np.ones(6), size=100):
        w = Weights.for_spec(example_spec, p / p.sum(), strict=False)
        assert conditional_form_dimension(profile, w) == pytest.approx(ly_dimension(profile, w), abs=1e-12)


def test_point_mass_has_dimension_zero(example_spec):
    profile = row_profile(example_spec)
    assert ly_dimension(profile, Weights.point_mass(example_spec, 4)) == 0.0


def test_weights_must_match_profile(example_spec, full_grid_4x2):
    with pytest.raises(WeightsError):
        ly_dimension(row_profile(example_spec), Weights.uniform(full_grid_4x2))
