"""Tests for the detection-cycle rate equations."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stmldark.kinetics import (
    STATES,
    KineticsError,
    KineticsStabilityError,
    NoStationaryCycleError,
    Populations,
    RateModel,
    closed_form_emission_rate,
    closed_form_p17,
    evolve,
    photon_emission_rate,
    rate_generator,
    stationary_residual,
    steady_state,
    steady_state_report,
)


rates = st.floats(min_value=1e-3, max_value=1e10, allow_nan=False, allow_infinity=False)


@settings(max_examples=200, deadline=None)
@given(pump=rates, eta=rates, gamma0=rates, gamma3=st.one_of(st.just(0.0), rates))
def test_steady_state_matches_closed_form(pump, eta, gamma0, gamma3):
    model = RateModel(pump, eta, gamma0, gamma3)
    populations = steady_state(model)
    assert populations.p17 == pytest.approx(closed_form_p17(model), rel=1e-10)
    assert populations.p0 + populations.p3 + populations.p17 == pytest.approx(1.0, abs=1e-12)
    assert stationary_residual(model, populations) <= 1e-9 * model.max_rate


def test_default_detection_cycle_rate():
    model = RateModel(pump_rate_ies_per_s=13.0)
    gamma = photon_emission_rate(model)
    assert gamma == pytest.approx(12.9958, abs=1e-4)
    assert gamma == pytest.approx(13.0, rel=1e-3)
    assert gamma == pytest.approx(closed_form_emission_rate(model), rel=1e-12)
    assert model.gamma3_per_s == model.gamma0_per_s


def test_no_pump_leaves_ground_state():
    model = RateModel(pump_rate_ies_per_s=0.0)
    assert steady_state(model) == Populations.ground()
    assert closed_form_p17(model) == 0.0


def test_missing_laser_pump_traps_population():
    model = RateModel(pump_rate_ies_per_s=5.0, laser_pump_per_s=0.0)
    with pytest.raises(NoStationaryCycleError) as info:
        steady_state(model)
    assert info.value.state == "S3"
    with pytest.raises(NoStationaryCycleError):
        closed_form_p17(model)


def test_without_emission_ground_state_empties():
    model = RateModel(pump_rate_ies_per_s=5.0, laser_pump_per_s=3.0, gamma0_per_s=0.0, gamma3_per_s=1.0)
    populations = steady_state(model)
    assert populations.p0 == 0.0
    assert populations.p17 == pytest.approx(3.0 / 4.0, rel=1e-14)
    assert populations.p3 == pytest.approx(1.0 / 4.0, rel=1e-14)


def test_without_any_decay_the_excited_state_traps():
    model = RateModel(pump_rate_ies_per_s=5.0, laser_pump_per_s=3.0, gamma0_per_s=0.0, gamma3_per_s=0.0)
    with pytest.raises(NoStationaryCycleError) as info:
        steady_state(model)
    assert info.value.state == "S17"


def test_generator_conserves_probability():
    generator = rate_generator(RateModel(2.0, 3.0, 5.0, 7.0))
    assert np.allclose(generator.sum(axis=0), 0.0)
    assert generator[1, 0] == 2.0  # S0 -> S3
    assert generator[2, 1] == 3.0  # S3 -> S17
    assert generator[0, 2] == 5.0  # S17 -> S0
    assert generator[1, 2] == 7.0  # S17 -> S3
    assert STATES == ("S0", "S3", "S17")


def test_rate_and_population_validation():
    with pytest.raises(KineticsError):
        RateModel(pump_rate_ies_per_s=-1.0)
    with pytest.raises(KineticsError):
        RateModel(gamma0_per_s=float("nan"))
    with pytest.raises(KineticsError):
        Populations(0.5, 0.4, 0.2)
    with pytest.raises(KineticsError):
        Populations(1.2, -0.2, 0.0)
    with pytest.raises(KineticsError):
        Populations.from_vector([0.0, 0.0, 0.0])
    assert Populations.from_vector([2.0, 1.0, -1e-18]).as_array() == pytest.approx([2 / 3, 1 / 3, 0.0])
    assert RateModel.from_dict({"pump_rate_ies_per_s": 2.0, "gamma0_per_s": 9.0}).gamma3_per_s == 9.0


def test_unstable_step_is_refused():
    model = RateModel(pump_rate_ies_per_s=13.0)
    with pytest.raises(KineticsStabilityError) as info:
        evolve(model, Populations.ground(), 1e-6, 1e-8)
    assert info.value.max_rate == 1e8
    assert info.value.suggested_dt_s == pytest.approx(1e-9)
    assert "use dt <=" in str(info.value)


def test_evolution_reaches_steady_state():
    model = RateModel(3.0, 5.0, 2.0, 1.0)
    trajectory = evolve(model, Populations.ground(), 20.0, 0.01, record_every=100)
    assert trajectory.final.as_array() == pytest.approx(steady_state(model).as_array(), abs=1e-8)
    assert trajectory.max_sum_error() < 1e-12


def test_last_step_lands_on_final_time():
    model = RateModel(3.0, 5.0, 2.0, 1.0)
    trajectory = evolve(model, Populations.ground(), 0.105, 0.01, record_every=4)
    assert trajectory.times_s.tolist() == pytest.approx([0.0, 0.04, 0.08, 0.105])
    assert trajectory.times_s[-1] == 0.105


def test_record_every_counts_rows():
    model = RateModel(3.0, 5.0, 2.0, 1.0)
    trajectory = evolve(model, Populations.ground(), 1.0, 0.01, record_every=10)
    assert trajectory.populations.shape == (11, 3)
    assert trajectory.times_s[-1] == pytest.approx(1.0)
    assert evolve(model, Populations.ground(), 0.0, 0.01).populations.shape == (1, 3)


def test_evolution_argument_checks():
    model = RateModel(3.0, 5.0, 2.0, 1.0)
    with pytest.raises(KineticsError):
        evolve(model, Populations.ground(), 1.0, 0.0)
    with pytest.raises(KineticsError):
        evolve(model, Populations.ground(), -1.0, 0.01)
    with pytest.raises(KineticsError):
        evolve(model, Populations.ground(), 1.0, 0.01, record_every=0)


def test_steady_state_report_keys():
    report = dict(steady_state_report(RateModel(pump_rate_ies_per_s=13.0)))
    assert list(report) == ["gamma_emission_per_s", "p0", "p3", "p17"]
    assert report["p0"] == pytest.approx(1.0, abs=1e-3)
