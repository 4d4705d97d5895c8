"""Dielectric-model behavior on both frequency axes."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from casimir1d import (
    ConstantPermittivity,
    LorentzPermittivity,
    TabulatedPermittivity,
    UnsupportedAxisError,
    validate_model,
)


def test_constant_is_constant_on_both_axes():
    model = ConstantPermittivity(4.0)
    assert model.eval_imag(0.0) == 4.0
    assert model.eval_imag(123.4) == 4.0
    assert model.eval_real(1.0) == 4.0 + 0.0j


def test_lorentz_undamped_limits():
    model = LorentzPermittivity(((1.0, 1.0, 0.0),))
    assert model.eval_imag(0.0) == pytest.approx(2.0, rel=1e-15)
    assert model.eval_imag(1e8) == pytest.approx(1.0, abs=1e-12)


def test_lorentz_damped_hand_value():
    # 1 + 1/(1 + 1 + 1) at p = 1
    model = LorentzPermittivity(((1.0, 1.0, 1.0),))
    assert model.eval_imag(1.0) == pytest.approx(4.0 / 3.0, rel=1e-15)


def test_lorentz_real_axis_hand_values():
    lossless = LorentzPermittivity(((1.0, 1.0, 0.0),))
    assert lossless.eval_real(2.0) == pytest.approx(2.0 / 3.0, rel=1e-15)
    damped = LorentzPermittivity(((1.0, 1.0, 1.0),))
    assert damped.eval_real(1.0) == pytest.approx(1.0 + 1.0j, rel=1e-15)


def test_lorentz_absorption_sign():
    model = LorentzPermittivity(((2.0, 3.0, 0.5),))
    omegas = np.linspace(0.1, 10.0, 50)
    assert np.all(model.eval_real(omegas).imag >= 0)


def test_lorentz_real_below_resonance_is_real_and_above_one():
    model = LorentzPermittivity(((1.0, 5.0, 0.0),))
    vals = model.eval_real(np.linspace(0.1, 4.0, 20))
    assert np.all(vals.imag == 0)
    assert np.all(vals.real > 1)


def test_negative_p_rejected():
    with pytest.raises(ValueError):
        ConstantPermittivity(2.0).eval_imag(-0.1)
    with pytest.raises(ValueError):
        LorentzPermittivity(((1.0, 1.0, 0.0),)).eval_imag(np.array([0.5, -1.0]))


def test_lorentz_rejects_zero_resonance_and_negative_damping():
    with pytest.raises(ValueError):
        LorentzPermittivity(((1.0, 0.0, 0.0),))
    with pytest.raises(ValueError):
        LorentzPermittivity(((1.0, 1.0, -0.5),))


def test_tabulated_interpolation_and_tail():
    # samples taken from a Lorentz model; interpolation should stay close
    ref = LorentzPermittivity(((1.5, 2.0, 0.3),))
    ps = np.logspace(-3, 2, 40)
    table = TabulatedPermittivity(tuple(zip(ps, ref.eval_imag(ps))))
    mid = np.logspace(-2.5, 1.5, 33)
    assert np.allclose(table.eval_imag(mid), ref.eval_imag(mid), rtol=1e-3)
    # beyond the last sample: 1 + A/p^2 matched at the last point
    p_last, e_last = table.samples[-1]
    far = 10.0 * p_last
    expect = 1.0 + (e_last - 1.0) * p_last**2 / far**2
    assert table.eval_imag(far) == pytest.approx(expect, rel=1e-12)
    assert table.eval_imag(1e6) >= 1.0


def test_tabulated_domain_errors():
    table = TabulatedPermittivity(((0.5, 3.0), (1.0, 2.0), (2.0, 1.5)), tail_decay=False)
    with pytest.raises(ValueError):
        table.eval_imag(0.1)  # below first sample
    with pytest.raises(ValueError):
        table.eval_imag(5.0)  # beyond last sample, decay disabled
    with pytest.raises(UnsupportedAxisError):
        table.eval_real(1.0)


def test_tabulated_zero_frequency_sample():
    table = TabulatedPermittivity(((0.0, 4.0), (1.0, 2.0), (2.0, 1.5)))
    assert table.eval_imag(0.0) == pytest.approx(4.0)
    assert table.eval_imag(0.5) == pytest.approx(3.0)  # linear join toward p = 0


def test_validate_constant():
    assert not validate_model(ConstantPermittivity(0.5)).passed
    assert validate_model(ConstantPermittivity(1.0)).passed
    assert validate_model(ConstantPermittivity(4.0)).passed


def test_validate_lorentz_grid_scan():
    report = validate_model(LorentzPermittivity(((1.0, 1.0, 0.1),)))
    assert report.passed, report.failures


def test_validate_reports_first_violation():
    report = validate_model(ConstantPermittivity(0.5))
    assert report.first_violation is not None
    p, eps = report.first_violation
    assert eps == pytest.approx(0.5)


@settings(max_examples=50, deadline=None)
@given(
    strength=st.floats(0.01, 50.0),
    resonance=st.floats(0.01, 50.0),
    damping=st.floats(0.0, 10.0),
)
def test_lorentz_bound_and_monotone(strength, resonance, damping):
    model = LorentzPermittivity(((strength, resonance, damping),))
    grid = np.logspace(-6, 6, 100)
    vals = model.eval_imag(grid)
    assert np.all(vals >= 1.0)
    assert np.all(np.diff(vals) <= 1e-12 * vals[:-1])
