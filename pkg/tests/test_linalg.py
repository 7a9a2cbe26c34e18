import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from npconfig.errors import NonFinite, NotHermitian
from npconfig.linalg import (
    as_cmatrix,
    herm_eig,
    herm_eig_batch,
    matrix_from_json,
    matrix_to_json,
    op_norm,
    poly_apply,
)


def random_hermitian(n, rng):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (a + a.conj().T) / 2


def test_swap_matrix_eigenvalues():
    e = herm_eig([[0, 1], [1, 0]])
    assert np.allclose(e.values, [1, -1], atol=1e-15)


def test_diagonal_is_already_diagonal():
    e = herm_eig(np.diag([3.0, -1.0, 2.0]))
    assert list(e.values) == [3.0, 2.0, -1.0]


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 13, 20])
def test_eigen_residual_and_orthonormality(n, rng):
    a = random_hermitian(n, rng)
    e = herm_eig(a)
    v = e.vectors
    assert np.max(np.abs(a @ v - v * e.values)) <= 1e-12 * max(1.0, np.abs(a).max())
    assert np.max(np.abs(v.conj().T @ v - np.eye(n))) <= 1e-12
    assert np.all(np.diff(e.values) <= 0)
    # numpy as an independent oracle
    assert np.allclose(e.values, np.linalg.eigvalsh(a)[::-1], atol=1e-11)


def test_batch_matches_single(rng):
    stack = np.array([random_hermitian(4, rng) for _ in range(7)])
    vals, _ = herm_eig_batch(stack)
    for k in range(7):
        assert np.allclose(vals[k], herm_eig(stack[k]).values, atol=1e-13)


def test_not_hermitian():
    with pytest.raises(NotHermitian):
        herm_eig([[0, 1], [0, 0]])


def test_non_finite():
    with pytest.raises(NonFinite):
        as_cmatrix([[np.nan, 0], [0, 1]])


def test_op_norm_examples():
    assert op_norm(np.diag([2, -3j])) == pytest.approx(3.0, abs=1e-14)
    assert op_norm([[0, 1], [0, 0]]) == pytest.approx(1.0, abs=1e-14)
    assert op_norm(np.zeros((3, 3))) == 0.0


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7), st.integers(0, 2**32 - 1))
def test_op_norm_against_svd(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    assert op_norm(a) == pytest.approx(np.linalg.norm(a, 2), rel=1e-10)


def test_poly_apply_horner(rng):
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    c = [1, -2, 0.5j, 3]
    expect = c[0] * np.eye(4) + c[1] * a + c[2] * a @ a + c[3] * a @ a @ a
    assert np.allclose(poly_apply(c, a), expect, atol=1e-12)


def test_poly_apply_overflow():
    with pytest.raises(NonFinite):
        poly_apply([0] * 40 + [1], 1e10 * np.eye(2))


def test_matrix_json_round_trip(rng):
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    assert np.array_equal(matrix_from_json(matrix_to_json(a)), a)


def test_matrix_json_ragged():
    with pytest.raises(ValueError):
        matrix_from_json({"n": 2, "entries": [[[0, 0]], [[0, 0], [1, 0]]]})
