"""
Tests for the signature reassignment experiment
"""

import json

import pytest

from src.carpet.carpet_spec import validate_spec
from src.cli.invariance import invariance_report, run_trial
from src.utils.errors import CarpetLabError


def test_random_assignments(example_spec):
    report = invariance_report(example_spec, 10, seed=5)
    assert len(report.trials) == 10
    assert report.dimensions_identical
    assert report.max_slope_deviation <= 0.05
    assert len({trial.counts[:2] for trial in report.trials}) == 1
    assert report.trials[0].counts[:2] == (3, 18)


def test_identical_assignments_have_zero_deviation(example_spec):
    signatures = [(1, -1)] * 6
    report = invariance_report(example_spec, 2, assignments=[signatures, signatures])
    assert report.max_slope_deviation == 0.0
    assert not report.counts_differ


def test_middle_row_spec():
    spec = validate_spec({'n': 5, 'm': 3, 'digits': [(0, 1), (1, 1), (3, 1), (4, 1)]})
    report = invariance_report(spec, 4, seed=1, fit_levels=(4, 8))
    assert report.max_slope_deviation <= 0.01
    assert not report.counts_differ


def test_trial_records_signatures(example_spec):
    trial = run_trial(example_spec, [(1, 1)] * 6, fit_levels=(3, 5))
    assert trial.signatures == ((1, 1),) * 6
    assert trial.counts == (3, 18, 108, 648, 1944)


def test_report_json(example_spec):
    report = invariance_report(example_spec, 2, seed=0, fit_levels=(3, 5))
    document = json.loads(report.to_json())
    assert document['trials'] == 2
    assert document['fit_levels'] == [3, 5]
    assert len(document['per_trial']) == 2
    assert document['dimensions_identical'] is True


def test_needs_two_trials(example_spec):
    with pytest.raises(CarpetLabError, match='at least 2'):
        invariance_report(example_spec, 1)
