import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given, settings, strategies as st

from spinkerr.errors import DimensionError, SolverError
from spinkerr.fock import FockOperator, annihilation, two_mode_annihilators
from spinkerr.hamiltonian import ModelPoint, build_h1, build_h2
from spinkerr.lindblad import (
    DensityMatrix,
    Liouvillian,
    build_liouvillian,
    check_truncation,
    evolve_rk4,
    model_liouvillian,
    solve_model,
    steady_state,
)
from spinkerr.observables import g2_zero, g3_zero, mean_photon
from spinkerr.sweep import model_points


def master_rhs(H, ops, rho):
    """Right-hand side of the master equation in matrix form."""
    out = -1j * (H @ rho - rho @ H)
    for a, rate in ops:
        ad = a.conj().T
        out += 0.5 * rate * (2 * a @ rho @ ad - ad @ a @ rho - rho @ ad @ a)
    return out


def random_state(d, rng):
    x = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = x @ x.conj().T
    return rho / np.trace(rho)


def test_single_photon_decay():
    d = 3
    L = build_liouvillian(0.0 * annihilation(d), [(annihilation(d), 2.5)])
    out = L.apply(DensityMatrix.fock((d,), 1))
    expected = np.zeros((d, d)); expected[0, 0] = 2.5; expected[1, 1] = -2.5
    np.testing.assert_allclose(out, expected, atol=1e-14)


def test_unitary_part_kills_identity():
    mp = ModelPoint(0.3, 1.1, 0.8, 0.4, 1.0)
    L = build_liouvillian(build_h1(mp, 6))
    assert np.abs(L.apply(DensityMatrix.maximally_mixed((6,)))).max() < 1e-14


@pytest.mark.parametrize("two_mode", [False, True])
def test_trace_preservation(two_mode):
    mp = ModelPoint(0.3, -1.1, 0.8, 0.4, 1.0, j=1.5)
    L = model_liouvillian(mp, (4, 3) if two_mode else (7,))
    d = L.hilbert_dim
    trace_row = np.eye(d).reshape(-1, order="F")
    assert np.abs(trace_row @ L.matrix).max() < 1e-12


@settings(max_examples=20)
@given(st.integers(0, 2**31 - 1))
def test_vectorization_matches_matrix_form(seed):
    rng = np.random.default_rng(seed)
    mp = ModelPoint(*rng.uniform(-2, 2, 2), *rng.uniform(0, 2, 2), rng.uniform(0.2, 2), j=rng.uniform(0, 2))
    H = build_h2(mp, 3, 4)
    a1, a2 = two_mode_annihilators(3, 4)
    L = build_liouvillian(H, [(a1, 0.7), (a2, 1.3)])
    rho = random_state(12, rng)
    expected = master_rhs(H.toarray(), [(a1.toarray(), 0.7), (a2.toarray(), 1.3)], rho)
    np.testing.assert_allclose(L.apply(DensityMatrix((3, 4), rho)), expected, atol=1e-12)


def test_liouvillian_errors():
    with pytest.raises(DimensionError):
        build_liouvillian(build_h1(ModelPoint(0, 0, 1, 0.1, 1.0), 4), [(annihilation(5), 1.0)])
    with pytest.raises(ValueError):
        build_liouvillian(build_h1(ModelPoint(0, 0, 1, 0.1, 1.0), 4), [(annihilation(4), 0.0)])


def test_empty_cavity_relaxes_to_vacuum():
    d = 5
    sol = steady_state(build_liouvillian(0.0 * annihilation(d), [(annihilation(d), 1.0)]))
    np.testing.assert_allclose(sol.rho.matrix, DensityMatrix.fock((d,), 0).matrix, atol=1e-14)
    assert sol.converged


@pytest.mark.parametrize("detuning", [-2.0, -0.3, 0.0, 1.5])
def test_linear_cavity_is_coherent(detuning):
    gamma, xi = 1.0, 0.3
    mp = ModelPoint(detuning, 0.0, 0.0, xi, gamma)
    rho = solve_model(mp, (20,)).rho
    alpha = -xi / (detuning - 0.5j * gamma)
    n = np.arange(20)
    coherent = np.exp(-abs(alpha) ** 2 / 2) * alpha**n / np.sqrt([float(np.prod(np.arange(1, k + 1))) for k in n])
    np.testing.assert_allclose(rho.matrix, np.outer(coherent, coherent.conj()), atol=1e-10)
    assert mean_photon(rho) == pytest.approx(xi**2 / (detuning**2 + gamma**2 / 4), rel=1e-10)
    assert g2_zero(rho) == pytest.approx(1.0, abs=1e-10)


def test_nominal_point_against_closed_form(nominal_params):
    mp = model_points(nominal_params, 0.0, 3.8e3)["cw"]
    rho = solve_model(mp, (8,)).rho
    d, q = mp.delta1, mp.gamma**2 / 4
    closed = (d**2 + q) / ((d + mp.chi) ** 2 + q)
    assert g2_zero(rho) == pytest.approx(closed, rel=0.05)


@settings(max_examples=15, deadline=None)
@given(
    st.floats(-4, 4), st.floats(-3, 3), st.floats(0, 3), st.floats(0.01, 0.3), st.floats(0, 3),
    st.booleans(),
)
def test_solution_health(dl, df, chi, xi, j, two_mode):
    mp = ModelPoint(dl, df, chi, xi, 1.0, j if two_mode else 0.0)
    sol = solve_model(mp, (5, 5) if two_mode else (8,))
    h = sol.health()
    assert h["trace_error"] < 1e-10
    assert h["hermiticity_error"] < 1e-10
    assert h["min_eigenvalue"] >= -1e-10
    assert h["relative_residual"] < 1e-8
    assert sol.converged and sol.healthy()


@pytest.mark.parametrize("dims,freq", [((8,), 0.0), ((5, 5), 2.0)])
def test_steady_state_is_unique(dims, freq):
    mp = ModelPoint(0.2, 1.3, 1.3, 0.08, 1.0, j=freq)
    L = model_liouvillian(mp, dims)
    ss = steady_state(L).rho
    for start in (DensityMatrix.fock(dims, (0,) * len(dims)), DensityMatrix.maximally_mixed(dims)):
        late = evolve_rk4(L, start, t_final=40.0, dt=0.01)
        assert late.trace_distance(ss) < 1e-6


def test_j_zero_two_mode_decouples(nominal_params):
    mp = model_points(nominal_params, 0.4, 3.8e3)["ccw"]
    single = solve_model(mp, (6,)).rho
    double = solve_model(mp, (6, 6)).rho
    r = double.matrix.reshape(6, 6, 6, 6)
    rho1 = np.einsum("anbn->ab", r)
    rho2 = np.einsum("mamb->ab", r)
    vac = np.zeros((6, 6)); vac[0, 0] = 1
    assert np.abs(rho2 - vac).max() < 1e-8
    assert np.abs(rho1 - single.matrix).max() < 1e-8
    for f in (mean_photon, g2_zero, g3_zero):
        assert f(double) == pytest.approx(f(single), rel=1e-8)


def test_singular_system_is_reported():
    d = 3
    L = Liouvillian((d,), sp.csc_matrix((d * d, d * d), dtype=complex))
    with pytest.raises(SolverError):
        steady_state(L)


def test_non_convergence_flag():
    sol = solve_model(ModelPoint(0.0, 0.0, 1.0, 0.1, 1.0), (6,))
    strict = steady_state(model_liouvillian(ModelPoint(0.0, 0.0, 1.0, 0.1, 1.0), (6,)), rtol=0.0)
    assert sol.converged and not strict.converged


def test_truncation_vacuum():
    assert check_truncation(ModelPoint(0.0, 0.0, 1.3, 0.0, 1.0), (2,)) == (2,)


def test_truncation_nominal_drive(nominal_params):
    mp = model_points(nominal_params, 0.0, 3.8e3)["ccw"]
    dims = check_truncation(mp, (2,))
    assert dims[0] <= 8
    stronger = ModelPoint(mp.delta_l, mp.delta_f, mp.chi, 2 * mp.xi, mp.gamma)
    assert check_truncation(stronger, (2,))[0] >= dims[0]


def test_truncation_two_mode(nominal_params):
    mp = model_points(nominal_params, 0.0, 5.8e3, 2.0)["ccw"]
    dims = check_truncation(mp, (4, 4))
    assert len(dims) == 2 and dims[0] <= 6


def test_density_matrix_checks():
    with pytest.raises(DimensionError):
        DensityMatrix((3,), np.eye(4))
    rho = DensityMatrix.fock((2, 3), (1, 2))
    assert rho.matrix[5, 5] == 1.0 and rho.is_physical()
