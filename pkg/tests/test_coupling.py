"""Tests for the Coulomb kernels, potentials and matrix elements."""

from __future__ import annotations

import math

import numpy as np
import pytest

from stmldark.coupling import (
    CouplingConfigError,
    DirectSizeError,
    cell_self_integral,
    coulomb_potential,
    green_function,
    kernel_spectrum,
    matrix_element,
    matrix_element_direct,
    padded_dims,
    self_cell_value,
)
from stmldark.density import GridSpec, ScalarGrid3D
from stmldark.electrodes import pair_density
from stmldark.utils.logger import setup_logger


def test_cell_self_integral_of_unit_cube():
    assert cell_self_integral((1.0, 1.0, 1.0)) == pytest.approx(2.38008, abs=1e-5)
    assert self_cell_value((0.5, 0.5, 0.5)) == pytest.approx(2.0 * cell_self_integral((1.0, 1.0, 1.0)))


def test_cell_self_integral_is_symmetric_in_axes():
    assert cell_self_integral((0.3, 0.5, 0.7)) == pytest.approx(cell_self_integral((0.7, 0.3, 0.5)))


def test_green_function_uses_minimum_image():
    spec = GridSpec(origin=(0, 0, 0), spacing=(0.5, 0.5, 0.5), dims=(6, 6, 6))
    green = green_function(spec)
    assert green.shape == padded_dims(spec.dims) == (12, 12, 12)
    assert green[1, 0, 0] == pytest.approx(2.0)
    assert green[-1, 0, 0] == pytest.approx(2.0)
    assert green[6, 0, 0] == pytest.approx(1.0 / 3.0)
    assert green[0, 0, 0] == pytest.approx(self_cell_value(spec.spacing))


def test_periodic_kernel_drops_uniform_mode():
    spec = GridSpec(origin=(0, 0, 0), spacing=(0.5, 0.5, 0.5), dims=(6, 6, 6))
    assert kernel_spectrum(spec, "periodic")[0, 0, 0] == 0.0
    assert kernel_spectrum(spec, "isolated")[0, 0, 0] > 0.0
    with pytest.raises(CouplingConfigError):
        kernel_spectrum(spec, "ewald")


def test_point_charge_potential_is_inverse_distance():
    spec = GridSpec(origin=(0, 0, 0), spacing=(0.5, 0.5, 0.5), dims=(8, 8, 8))
    values = np.zeros(spec.dims)
    values[3, 4, 2] = 1.0 / spec.cell_volume
    potential = coulomb_potential(ScalarGrid3D(spec=spec, values=values), neutrality_tol=None)

    assert potential.values[3, 4, 2] == pytest.approx(self_cell_value(spec.spacing), rel=1e-10)
    for node in [(0, 0, 0), (7, 7, 7), (3, 4, 7), (5, 1, 2)]:
        distance = 0.5 * math.dist(node, (3, 4, 2))
        assert potential.values[node] == pytest.approx(1.0 / distance, rel=1e-10)


def test_charged_source_raises_neutrality_diagnostic(monkeypatch, make_blob_grid):
    logger = setup_logger()
    monkeypatch.setattr(logger._console, "log", lambda *a, **k: None)
    coulomb_potential(make_blob_grid())
    assert logger.diagnostics() == {"neutrality": 1}


@pytest.mark.parametrize("n, radius", [(16, 5.0), (32, 7.0)])
def test_spectral_route_matches_direct_sum(n, radius, make_dipole_grid, make_blob_grid):
    dipole = make_dipole_grid(n=n, radius=radius)
    blob = make_blob_grid(n=n, radius=radius)

    spectral = matrix_element(dipole, blob)
    direct = matrix_element_direct(dipole, blob)
    assert spectral.route == "spectral"
    assert direct.route == "direct"
    assert spectral.value == pytest.approx(direct.value, rel=1e-9)
    assert abs(spectral.imag_residue) < 1e-10 * abs(spectral.value)


def test_potential_route_matches_spectral(make_dipole_grid, make_blob_grid, monkeypatch):
    logger = setup_logger()
    monkeypatch.setattr(logger._console, "log", lambda *a, **k: None)
    dipole = make_dipole_grid()
    blob = make_blob_grid()
    # the dipole is the source of the potential, so no neutrality diagnostic
    via_potential = matrix_element(dipole, blob, route="potential")
    assert via_potential.value == pytest.approx(matrix_element(dipole, blob).value, rel=1e-10)
    assert logger.diagnostics() == {}


def test_coupling_is_symmetric(make_dipole_grid, make_blob_grid):
    dipole = make_dipole_grid()
    blob = make_blob_grid()
    assert matrix_element(dipole, blob).value == pytest.approx(matrix_element(blob, dipole).value, rel=1e-12)


def test_joint_lateral_translation_keeps_coupling(make_dipole_grid, make_blob_grid):
    dipole = make_dipole_grid()
    blob = make_blob_grid()
    shift = (-2, 2, 0)
    # nothing wraps around the box
    assert not np.any(blob.values[:2]) and not np.any(blob.values[:, -2:])
    assert not np.any(dipole.values[:2]) and not np.any(dipole.values[:, -2:])

    moved_dipole = dipole.with_values(np.roll(dipole.values, shift, axis=(0, 1, 2)))
    moved_blob = blob.with_values(np.roll(blob.values, shift, axis=(0, 1, 2)))
    reference = matrix_element(dipole, blob).value
    assert abs(reference) > 0.0
    assert matrix_element(moved_dipole, moved_blob).value == pytest.approx(reference, rel=1e-8)
    # moving only one of them changes the coupling
    assert matrix_element(moved_dipole, blob).value != pytest.approx(reference, rel=1e-3)


def test_analytic_transition_with_pair_density(electrodes, dark_transition):
    spec = GridSpec.lattice((-10, -10, -4), (20, 20, 16), 0.1)
    pair = pair_density(electrodes, -5.0, -4.5, (0.2, 0.0), spec)

    spectral = matrix_element(dark_transition, pair)
    direct = matrix_element_direct(dark_transition, pair)
    assert spectral.value == pytest.approx(direct.value, rel=1e-9)
    assert spectral.transition_label == "dark"
    assert spectral.substrate_energy_ev == -5.0
    assert spectral.tip_energy_ev == -4.5
    assert spectral.tip_lateral_nm == (0.2, 0.0)
    assert spectral.value_ev == pytest.approx(spectral.value * 27.211386)


def test_coupling_is_linear_in_transition_amplitude(electrodes, dark_transition):
    spec = GridSpec.lattice((-10, -10, -4), (20, 20, 16), 0.1)
    pair = pair_density(electrodes, -5.0, -4.5, (0.0, 0.0), spec)
    flipped = matrix_element(dark_transition.scaled(-1.0), pair)
    assert flipped.value == pytest.approx(-matrix_element(dark_transition, pair).value, rel=1e-12)


def test_incommensurate_grids_are_rejected(make_dipole_grid):
    a = make_dipole_grid(n=16, spacing=0.5)
    b = make_dipole_grid(n=16, spacing=0.4)
    with pytest.raises(CouplingConfigError, match="Incommensurate"):
        matrix_element(a, b)
    with pytest.raises(CouplingConfigError):
        matrix_element(a, a, route="multipole")


def test_direct_sum_refuses_large_problems(make_dipole_grid, make_blob_grid):
    dipole = make_dipole_grid()
    blob = make_blob_grid()
    with pytest.raises(DirectSizeError) as info:
        matrix_element_direct(dipole, blob, max_pairs=1000)
    assert info.value.cap == 1000
    assert info.value.pairs > 1000


def test_direct_sum_of_empty_field_is_zero(make_dipole_grid):
    dipole = make_dipole_grid()
    empty = dipole.with_values(np.zeros(dipole.dims))
    assert matrix_element_direct(dipole, empty).value == 0.0
