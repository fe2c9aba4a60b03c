"""Calibration fixtures: sign convention, ring symmetry, integrator."""

import numpy as np

from locnet.netinfer import CouplingDirection
from locnet.recurrence import RecurrenceConfig
from locnet.validate import (
    SIGN_CONVENTION,
    FixtureResult,
    integrator_fixture,
    master_slave_fixture,
    run_all,
    symmetric_ring_fixture,
)


def test_master_slave_arrow_is_forward():
    result = master_slave_fixture()
    assert result.passed
    assert "driver -> dependent" in result.detail
    assert "forward" in result.detail


def test_master_slave_deltas_clear_dead_zone():
    # reparse the reported delta range; min |delta| must beat the default
    # dead zone with margin, otherwise the fixture is too fragile to guard
    result = master_slave_fixture()
    lo = float(result.detail.split("range [")[1].split(",")[0])
    assert lo > RecurrenceConfig().direction_tol * 2


def test_master_slave_fails_with_huge_dead_zone():
    # a dead zone wider than every delta forces bidirectional decisions
    wide = RecurrenceConfig(direction_tol=0.5)
    result = master_slave_fixture(wide)
    assert not result.passed
    assert CouplingDirection.BIDIRECTIONAL.value in result.detail


def test_symmetric_ring_single_component():
    result = symmetric_ring_fixture()
    assert result.passed
    assert "1 component(s)" in result.detail


def test_integrator_fixture_accuracy():
    result = integrator_fixture()
    assert result.passed
    err = float(result.detail.split()[3])
    assert err < 1e-6


def test_run_all_passes_with_defaults():
    results = run_all()
    assert len(results) == 3
    assert all(isinstance(r, FixtureResult) for r in results)
    assert all(r.passed for r in results)
    names = [r.name for r in results]
    assert len(set(names)) == 3


def test_run_all_tol_override_only_affects_direction_fixtures():
    results = run_all(direction_tol=0.5)
    by_name = {r.name: r for r in results}
    assert not by_name["master-slave sign convention"].passed
    assert by_name["integrator vs analytic solution"].passed


def test_sign_convention_text_states_the_rule():
    assert "delta = T_ij - T_ji" in SIGN_CONVENTION
    assert "i -> j" in SIGN_CONVENTION
    assert "in-degree" in SIGN_CONVENTION


def test_master_slave_deltas_are_deterministic():
    a = master_slave_fixture()
    b = master_slave_fixture()
    assert a == b
