import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given, strategies as st

from spinkerr.errors import DimensionError
from spinkerr.fock import (
    FockOperator,
    annihilation,
    creation,
    embed_two_mode,
    expectation,
    identity,
    number,
    two_mode_annihilators,
)


def test_ladder_entries():
    a = annihilation(3).toarray()
    assert a[1, 2] == pytest.approx(np.sqrt(2))
    assert a[0, 1] == 1.0
    assert np.count_nonzero(a) == 2


def test_number_operator():
    a = annihilation(3)
    np.testing.assert_allclose((a.dag() @ a).toarray(), np.diag([0, 1, 2]))
    np.testing.assert_allclose(number(3).toarray(), np.diag([0, 1, 2]))


@given(st.integers(min_value=2, max_value=20))
def test_truncated_commutator(d):
    a = annihilation(d)
    comm = a.commutator(creation(d)).toarray()
    expected = np.eye(d)
    expected[-1, -1] -= d
    np.testing.assert_allclose(comm, expected, atol=1e-12)


def test_dagger_involution():
    a = annihilation(5) * (0.3 + 2j)
    np.testing.assert_array_equal(a.dag().dag().toarray(), a.toarray())


def test_rejects_small_dimension():
    with pytest.raises(DimensionError):
        annihilation(1)


def test_embed_mode1_structure():
    a1 = embed_two_mode(annihilation(2), 1, 2, 2).toarray()
    nz = list(zip(*np.nonzero(a1)))
    assert nz == [(0, 2), (1, 3)]
    assert np.all(a1[a1 != 0] == 1.0)


@given(st.integers(2, 6), st.integers(2, 6))
def test_distinct_modes_commute(d1, d2):
    a1, a2 = two_mode_annihilators(d1, d2)
    assert abs(a1.commutator(a2).data).max() if a1.commutator(a2).data.nnz else 0.0 == 0.0
    assert abs(a1.commutator(a2.dag()).data).sum() == 0.0


@given(st.integers(2, 6), st.integers(2, 6))
def test_embedded_number_operator(d1, d2):
    a1, a2 = two_mode_annihilators(d1, d2)
    n1 = np.real(np.diag((a1.dag() @ a1).toarray())).reshape(d1, d2)
    n2 = np.real(np.diag((a2.dag() @ a2).toarray())).reshape(d1, d2)
    m, n = np.meshgrid(np.arange(d1), np.arange(d2), indexing="ij")
    np.testing.assert_allclose(n1, m, atol=1e-12)
    np.testing.assert_allclose(n2, n, atol=1e-12)


def test_embedding_preserves_norm_and_sparsity():
    op = annihilation(4) @ annihilation(4) + creation(4)
    for mode, (d1, d2) in ((1, (4, 3)), (2, (5, 4))):
        big = embed_two_mode(op, mode, d1, d2)
        other = d2 if mode == 1 else d1
        assert np.linalg.norm(big.toarray(), 2) == pytest.approx(np.linalg.norm(op.toarray(), 2))
        assert big.data.nnz == op.data.nnz * other


def test_embed_dimension_mismatch():
    with pytest.raises(DimensionError):
        embed_two_mode(annihilation(3), 1, 4, 4)
    with pytest.raises(DimensionError):
        embed_two_mode(annihilation(3), 2, 3, 4)
    with pytest.raises(ValueError):
        embed_two_mode(annihilation(3), 3, 3, 3)


def test_operator_arithmetic_checks_dims():
    with pytest.raises(DimensionError):
        annihilation(3) + annihilation(4)
    with pytest.raises(DimensionError):
        FockOperator((2, 2), sp.identity(3))


def test_expectation_examples():
    d = 4
    n = number(d)
    one = np.zeros((d, d)); one[1, 1] = 1
    vac = np.zeros((d, d)); vac[0, 0] = 1
    assert expectation(one, n) == pytest.approx(1.0)
    a = annihilation(d)
    for op in (n, a.dag() @ a.dag() @ a @ a, a.dag() @ a.dag() @ a.dag() @ a @ a @ a):
        assert expectation(vac, op) == 0.0
    assert expectation(np.eye(2) / 2, number(2)) == pytest.approx(0.5)


def test_expectation_of_hermitian_is_real():
    rng = np.random.default_rng(3)
    x = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    rho = x @ x.conj().T
    rho /= np.trace(rho)
    a = annihilation(5)
    h = a.dag() @ a.dag() @ a @ a + (a + a.dag()) * 0.7
    assert abs(expectation(rho, h).imag) < 1e-10
    assert expectation(rho, h) == pytest.approx(np.trace(rho @ h.toarray()))


def test_expectation_dimension_mismatch():
    with pytest.raises(DimensionError):
        expectation(np.eye(3) / 3, number(4))
    assert identity((2, 3)).dim == 6
