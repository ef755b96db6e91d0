"""Kernel checks: elimination ranks, Cholesky, the rotation eigensolver.

numpy's LAPACK-backed eigvalsh serves as the independent oracle for the
hand-rolled cyclic rotation solver.
"""

import numpy as np
import pytest

from liericci import linalg


def rng(seed=0):
    return np.random.Generator(np.random.Philox(key=seed))


def test_orthonormal_columns_rank_and_span():
    r = rng(1)
    base = r.normal(size=(6, 3))
    cols = np.hstack([base, base @ r.normal(size=(3, 4))])  # rank 3 by design
    q = linalg.orthonormal_columns(cols)
    assert q.shape == (6, 3)
    assert np.abs(q.T @ q - np.eye(3)).max() < 1e-12
    assert linalg.span_residual(q, cols) < 1e-9


def test_zero_columns_have_rank_zero():
    q = linalg.orthonormal_columns(np.zeros((4, 5)))
    assert q.shape == (4, 0)
    # numerically-zero columns must not fake rank when a floor is given
    dust = 1e-17 * np.ones((4, 5))
    assert linalg.orthonormal_columns(dust, abs_floor=1e-12).shape == (4, 0)
    # without a floor the relative rule sees one direction
    assert linalg.orthonormal_columns(dust).shape[1] == 1


def test_pivot_columns_select_independent_subset():
    r = rng(2)
    a = r.normal(size=(5, 2))
    cols = np.column_stack([a[:, 0], 2 * a[:, 0], a[:, 1], a[:, 0] - a[:, 1]])
    picked = linalg.pivot_columns(cols)
    assert len(picked) == 2
    sub = cols[:, picked]
    assert np.linalg.matrix_rank(sub) == 2


def test_nullspace_against_numpy():
    r = rng(3)
    for _ in range(25):
        m, n = int(r.integers(1, 7)), int(r.integers(1, 9))
        a = r.normal(size=(m, n))
        if r.random() < 0.5 and n >= 2:  # force rank deficiency
            a[:, -1] = a[:, 0] * 0.5 - (a[:, 1] if n > 1 else 0)
        ker = linalg.nullspace(a)
        assert ker.shape[1] == n - np.linalg.matrix_rank(a, tol=1e-9)
        if ker.shape[1]:
            assert np.abs(a @ ker).max() < 1e-9


def test_complement_basis():
    r = rng(4)
    q = linalg.orthonormal_columns(r.normal(size=(7, 3)))
    comp = linalg.complement_basis(q)
    assert comp.shape == (7, 4)
    assert np.abs(q.T @ comp).max() < 1e-12


def test_cholesky_matches_numpy_and_names_failing_pivot():
    r = rng(5)
    m = r.normal(size=(5, 5))
    gram = m.T @ m + 0.3 * np.eye(5)
    lower = linalg.cholesky_spd(gram)
    assert np.abs(lower @ lower.T - gram).max() < 1e-12
    assert np.abs(lower - np.linalg.cholesky(gram)).max() < 1e-10
    bad = np.eye(3)
    bad[1, 1] = -2.0
    with pytest.raises(ValueError, match="pivot 1"):
        linalg.cholesky_spd(bad)


def test_inverse_lower_triangular():
    r = rng(6)
    lower = np.tril(r.normal(size=(6, 6))) + 3.0 * np.eye(6)
    inv = linalg.inverse_lower_triangular(lower)
    assert np.abs(lower @ inv - np.eye(6)).max() < 1e-12


def test_symmetric_eigenvalues_against_lapack():
    r = rng(7)
    for _ in range(60):
        n = int(r.integers(1, 11))
        sym = linalg.sym_part(r.normal(size=(n, n)))
        mine = linalg.symmetric_eigenvalues(sym)
        ref = np.linalg.eigvalsh(sym)
        assert np.abs(mine - ref).max() < 1e-10 * (1.0 + np.abs(ref).max())


def test_symmetric_eigenvalues_exact_cases():
    assert np.allclose(
        linalg.symmetric_eigenvalues(np.diag([-0.5, -0.5, 0.5])),
        [-0.5, -0.5, 0.5])
    assert np.allclose(
        linalg.symmetric_eigenvalues(np.array([[0.0, 1.0], [1.0, 0.0]])),
        [-1.0, 1.0])
    assert linalg.symmetric_eigenvalues(np.zeros((4, 4))).tolist() == [0.0] * 4


def test_symmetric_eigenvalues_rejects_asymmetric():
    with pytest.raises(ValueError, match="symmetric"):
        linalg.symmetric_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_eigenvalues_deterministic():
    r = rng(8)
    sym = linalg.sym_part(r.normal(size=(8, 8)))
    first = linalg.symmetric_eigenvalues(sym)
    second = linalg.symmetric_eigenvalues(sym)
    assert first.tobytes() == second.tobytes()


def test_interlacing_slack_on_known_case():
    outer = [0.0, 1.0, 2.0]
    inner = [0.5, 1.5]
    assert linalg.interlacing_slack(outer, inner) == 0.5
    assert linalg.interlacing_slack([0.0, 1.0], [2.0]) < 0  # violated
