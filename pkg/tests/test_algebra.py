"""Algebra core: brackets, Jacobi, series, predicates."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liericci import (
    LieAlgebra,
    derived_algebra,
    jacobi_residual,
    lower_central_series,
    structural_predicates,
    validate_jacobi,
)
from liericci.generator import abelian, filiform4, heisenberg3


def hyperbolic():
    # [f, e] = e with basis (e, f)
    return LieAlgebra.from_brackets(2, [(0, 1, 0, -1.0)], name="hyperbolic")


def brute_force_jacobi(constants):
    """Independent oracle: explicit triple loop over basis brackets."""
    c = np.asarray(constants, dtype=float)
    n = c.shape[0]

    def bracket(x, y):
        out = np.zeros(n)
        for i in range(n):
            for j in range(n):
                out += x[i] * y[j] * c[i, j]
        return out

    eye = np.eye(n)
    worst = 0.0
    for i in range(n):
        for j in range(n):
            for k in range(n):
                total = (bracket(bracket(eye[i], eye[j]), eye[k])
                         + bracket(bracket(eye[j], eye[k]), eye[i])
                         + bracket(bracket(eye[k], eye[i]), eye[j]))
                worst = max(worst, np.abs(total).max())
    return worst


def test_bracket_catalog_values():
    h3 = heisenberg3()
    e = np.eye(3)
    assert np.allclose(h3.bracket(e[0], e[1]), e[2])
    assert np.allclose(h3.bracket(e[1], e[0]), -e[2])
    assert np.allclose(h3.bracket(e[0], e[0]), 0)
    ab = abelian(3)
    assert np.allclose(ab.bracket(e[0], e[1]), 0)


def test_bracket_dimension_mismatch():
    h3 = heisenberg3()
    with pytest.raises(ValueError):
        h3.bracket(np.ones(2), np.ones(3))


def test_ad_matrix_values():
    h3 = heisenberg3()
    ad1 = h3.ad_matrix(np.eye(3)[0])
    expected = np.zeros((3, 3))
    expected[2, 1] = 1.0
    assert np.array_equal(ad1, expected)
    assert np.array_equal(h3.ad_matrix(np.zeros(3)), np.zeros((3, 3)))
    hyp = hyperbolic()
    ad_f = hyp.ad_matrix(np.eye(2)[1])
    assert np.allclose(ad_f, np.diag([1.0, 0.0]))  # [f, e] = e, f second


def test_antisymmetry_violation_named():
    tensor = np.zeros((3, 3, 3))
    tensor[0, 1, 2] = 1.0
    tensor[1, 0, 2] = 1.0  # should be -1
    with pytest.raises(ValueError, match=r"antisymmetry"):
        LieAlgebra(tensor)


def test_self_bracket_rejected():
    tensor = np.zeros((2, 2, 2))
    tensor[0, 0, 1] = 1.0
    with pytest.raises(ValueError, match="itself"):
        LieAlgebra(tensor)


def test_jacobi_constructor_enforced():
    # [e1,e2]=e1, [e1,e3]=e2 fails the Jacobi identity
    tensor = np.zeros((3, 3, 3))
    tensor[0, 1, 0] = 1.0
    tensor[0, 2, 1] = 1.0
    with pytest.raises(ValueError, match="Jacobi"):
        LieAlgebra(tensor)


def test_validate_jacobi_against_brute_force():
    tensor = np.zeros((3, 3, 3))
    tensor[0, 1, 0] = 1.0
    tensor[0, 2, 1] = 1.0
    ok, residual = validate_jacobi(tensor)
    oracle = brute_force_jacobi(tensor - np.swapaxes(tensor, 0, 1))
    assert not ok
    assert residual == pytest.approx(oracle, abs=1e-12)
    assert validate_jacobi(heisenberg3()) == (True, 0.0)
    assert validate_jacobi(np.zeros((4, 4, 4))) == (True, 0.0)


def test_jacobi_residual_matches_oracle_on_catalog():
    for alg in (heisenberg3(), filiform4(), hyperbolic()):
        assert jacobi_residual(alg.constants) == pytest.approx(
            brute_force_jacobi(alg.constants), abs=1e-14)


def test_derived_algebra_catalog():
    h3 = heisenberg3()
    der = derived_algebra(h3)
    assert der.dim == 1
    assert der.residual(np.eye(3)[2]) < 1e-12
    assert derived_algebra(abelian(4)).dim == 0
    hyp = hyperbolic()
    der = derived_algebra(hyp)
    assert der.dim == 1
    assert der.residual(np.eye(2)[0]) < 1e-12


def test_lower_central_series_catalog():
    h3 = heisenberg3()
    dims = [s.dim for s in lower_central_series(h3)]
    assert dims == [3, 1, 0]
    assert [s.dim for s in lower_central_series(abelian(5))] == [5, 0]
    # [f, e] = e stabilizes at span(e): not nilpotent
    dims = [s.dim for s in lower_central_series(hyperbolic())]
    assert dims == [2, 1]
    fili = filiform4()
    assert [s.dim for s in lower_central_series(fili)] == [4, 2, 1, 0]


def test_structural_predicates_catalog():
    p = structural_predicates(heisenberg3())
    assert (p.is_abelian, p.is_nilpotent, p.is_solvable, p.is_unimodular) == \
        (False, True, True, True)
    assert p.nilpotency_degree == 2
    p = structural_predicates(hyperbolic())
    assert (p.is_abelian, p.is_nilpotent, p.is_solvable, p.is_unimodular) == \
        (False, False, True, False)
    assert p.nilpotency_degree is None
    p = structural_predicates(abelian(3))
    assert (p.is_abelian, p.is_nilpotent, p.is_solvable, p.is_unimodular) == \
        (True, True, True, True)
    assert p.nilpotency_degree == 1


def test_derived_algebra_equals_second_series_entry():
    for alg in (heisenberg3(), filiform4(), hyperbolic(), abelian(3)):
        series = lower_central_series(alg)
        der = derived_algebra(alg)
        if len(series) > 1:
            assert der.same_span(series[1])
        else:
            assert der.dim == 0


def test_nilpotent_series_strictly_decreases():
    for alg in (heisenberg3(), filiform4(), abelian(4)):
        dims = [s.dim for s in lower_central_series(alg)]
        assert all(a > b for a, b in zip(dims, dims[1:]))
        assert dims[-1] == 0


coords = st.floats(min_value=-10, max_value=10, allow_nan=False,
                   allow_infinity=False)


@settings(max_examples=60, deadline=None)
@given(st.lists(coords, min_size=12, max_size=12))
def test_bracket_bilinear_antisymmetric(values):
    h3 = filiform4()
    x = np.array(values[:4])
    y = np.array(values[4:8])
    z = np.array(values[8:])
    assert np.allclose(h3.bracket(x, y), -h3.bracket(y, x), atol=1e-9)
    assert np.allclose(h3.bracket(x + 2.0 * y, z),
                       h3.bracket(x, z) + 2.0 * h3.bracket(y, z), atol=1e-8)
    assert np.abs(h3.bracket(x, x)).max() < 1e-9


@settings(max_examples=60, deadline=None)
@given(st.lists(coords, min_size=8, max_size=8))
def test_ad_matrix_linear_and_consistent(values):
    fili = filiform4()
    x = np.array(values[:4])
    y = np.array(values[4:])
    lhs = fili.ad_matrix(0.5 * x - 3.0 * y)
    rhs = 0.5 * fili.ad_matrix(x) - 3.0 * fili.ad_matrix(y)
    assert np.abs(lhs - rhs).max() < 1e-9
    assert np.allclose(fili.ad_matrix(x) @ y, fili.bracket(x, y), atol=1e-9)
