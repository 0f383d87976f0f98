import numpy as np
import pytest
from hypothesis import given, strategies as st

from spinkerr.params import (
    PhysicalParams,
    derive_rates,
    params_from_config,
    parse_config,
)

# hand evaluation: omega0 = 2 pi c / lambda, gamma = omega0 / Q
OMEGA0 = 2 * np.pi * 299792458.0 / 1550e-9
GAMMA = OMEGA0 / 5e9


def test_gamma_is_omega0_over_q(nominal_params):
    r = derive_rates(nominal_params)
    assert r.omega0 == pytest.approx(OMEGA0, rel=1e-14)
    assert r.gamma == r.omega0 / nominal_params.quality_factor
    assert r.gamma == pytest.approx(2.43e5, rel=2e-3)


def test_kerr_and_drive_in_units_of_gamma(nominal_params):
    r = derive_rates(nominal_params)
    assert r.chi / r.gamma == pytest.approx(1.30, abs=0.01)
    assert r.xi / r.gamma == pytest.approx(0.080, abs=0.001)


def test_zero_rotation_has_no_shift(nominal_params):
    r = derive_rates(nominal_params.replace(omega=0.0))
    assert r.delta_f == 0.0 and r.delta_f_abs == 0.0


def test_sagnac_shift_at_fig1_speed(nominal_params):
    r = derive_rates(nominal_params.replace(omega=3.8e3))
    # n r Omega omega0 / c (1 - 1/n^2) with n = 1.4, r = 30 um
    hand = 1.4 * 30e-6 * 3.8e3 * OMEGA0 / 299792458.0 * (1 - 1 / 1.4**2)
    assert r.delta_f_abs == pytest.approx(hand, rel=1e-12)
    assert r.delta_f_abs / r.gamma == pytest.approx(1.30, abs=0.01)


def test_drive_sign_convention(nominal_params):
    cw = derive_rates(nominal_params.replace(omega=3.8e3, drive="cw"))
    ccw = derive_rates(nominal_params.replace(omega=3.8e3, drive="ccw"))
    assert cw.delta_f > 0 > ccw.delta_f
    assert cw.delta_f == -ccw.delta_f


@given(st.one_of(st.just(0.0), st.floats(min_value=1e-6, max_value=1e5)))
def test_shift_linear_in_rotation(omega):
    p = PhysicalParams(omega=omega)
    one = derive_rates(p).delta_f_abs
    two = derive_rates(p.replace(omega=2 * omega)).delta_f_abs
    assert two == pytest.approx(2 * one, rel=1e-14, abs=0.0)


@given(st.floats(min_value=-2e4, max_value=2e4, allow_nan=False))
def test_dispersion_factor(dn_dl):
    p = PhysicalParams(omega=5e3)
    n1, lam = p.sagnac_index, p.wavelength
    denom = 1 - 1 / n1**2 - (lam / n1) * dn_dl
    if abs(denom) < 1e-3:
        return
    with_disp = derive_rates(p.replace(dn1_dlambda=dn_dl)).delta_f_abs
    without = derive_rates(p).delta_f_abs
    assert without / with_disp == pytest.approx((1 - 1 / n1**2) / abs(denom), rel=1e-12)


def test_separate_sagnac_index():
    base = derive_rates(PhysicalParams(omega=1e3))
    other = derive_rates(PhysicalParams(omega=1e3, n1=1.45))
    assert base.chi == other.chi
    assert other.delta_f_abs > base.delta_f_abs


@pytest.mark.parametrize("field", ["wavelength", "quality_factor", "mode_volume", "n0", "n2", "radius", "power", "n1"])
@pytest.mark.parametrize("bad", [0.0, -1.0, float("nan")])
def test_rejects_non_positive(field, bad):
    with pytest.raises(ValueError):
        PhysicalParams(**{field: bad})


def test_rejects_negative_rotation_and_bad_drive():
    with pytest.raises(ValueError):
        PhysicalParams(omega=-1.0)
    with pytest.raises(ValueError):
        PhysicalParams(drive="left")


def test_config_roundtrip():
    cfg = parse_config(
        """
        # nominal set, spun up
        wavelength_m = 1.55e-6
        quality_factor = 5e9
        omega_rad_s = 3800   # rad/s
        drive = CCW
        j_over_gamma = 2
        nmax = 7
        """
    )
    assert cfg["nmax"] == 7 and cfg["j_over_gamma"] == 2.0
    p = params_from_config(cfg)
    assert p.omega == 3800.0 and p.drive == "ccw"
    assert p.power == PhysicalParams().power


@pytest.mark.parametrize("text", ["bogus_key = 1", "quality_factor 5e9", "nmax = seven"])
def test_config_errors(text):
    with pytest.raises(ValueError):
        parse_config(text)
