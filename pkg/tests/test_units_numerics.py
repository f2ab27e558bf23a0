"""Unit tests for unit conversions and the numerical helpers."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from stmldark.utils.numerics import (
    compensated_dot,
    is_transform_size,
    next_transform_size,
    trapezoid_weights,
)
from stmldark.utils.units import BOHR_NM, HARTREE_EV, bohr_to_nm, ev_to_hartree, hartree_to_ev, nm_to_bohr


def test_conversion_constants():
    assert ev_to_hartree(HARTREE_EV) == pytest.approx(1.0)
    assert nm_to_bohr(BOHR_NM) == pytest.approx(1.0)
    assert bohr_to_nm(np.array([1.0, 2.0])) == pytest.approx([BOHR_NM, 2 * BOHR_NM])


@given(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False))
def test_conversions_invert_each_other(value):
    assert hartree_to_ev(ev_to_hartree(value)) == pytest.approx(value, rel=1e-14, abs=1e-300)
    assert bohr_to_nm(nm_to_bohr(value)) == pytest.approx(value, rel=1e-14, abs=1e-300)


@pytest.mark.parametrize("n, accepted", [(1, True), (2, True), (63, True), (64, True), (125, True),
                                         (11, False), (13, False), (121, False), (0, False)])
def test_transform_size_policy(n, accepted):
    assert is_transform_size(n) is accepted


@given(st.integers(min_value=1, max_value=5000))
def test_next_transform_size_is_smallest_accepted(n):
    m = next_transform_size(n)
    assert m >= n
    assert is_transform_size(m)
    assert all(not is_transform_size(k) for k in range(n, m))


def test_trapezoid_weights():
    weights = trapezoid_weights(5, 2.0)
    assert weights == pytest.approx([0.25, 0.5, 0.5, 0.5, 0.25])
    assert math.fsum(weights) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        trapezoid_weights(1, 1.0)


def test_trapezoid_integrates_linear_exactly():
    nodes = np.linspace(-1.0, 3.0, 17)
    weights = trapezoid_weights(17, 4.0)
    assert compensated_dot(weights, 2.0 * nodes + 1.0) == pytest.approx(12.0, abs=1e-14)


def test_compensated_dot_is_exact_on_cancelling_terms():
    values = [1e16, 1.0, -1e16]
    assert compensated_dot([1.0, 1.0, 1.0], values) == 1.0
