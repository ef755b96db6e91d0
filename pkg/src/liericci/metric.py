"""Inner products on a Lie algebra and the orthonormal-basis machinery.

Every downstream formula assumes coordinates in which the metric is the
identity, so the adjoint of an operator is its matrix transpose.  This
module produces those coordinates and the handful of metric-level
quantities: mean-curvature vector, Killing operator, trace inner product
on endomorphisms, and the skew/normal/traceless predicates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebra import LieAlgebra

SYM_REL_TOL = 1e-12
ONB_REL_TOL = 1e-10
PREDICATE_TOL = 1e-9


class InnerProduct:
    """Symmetric positive-definite Gram matrix on the defining basis."""

    def __init__(self, gram, rel_sym_tol=SYM_REL_TOL, rel_pd_tol=linalg.PD_REL_TOL):
        g = np.array(gram, dtype=float, copy=True)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise ValueError("gram must be a square matrix")
        if linalg.frob(g - g.T) > rel_sym_tol * (1.0 + linalg.frob(g)):
            raise ValueError("gram matrix is not symmetric")
        g = 0.5 * (g + g.T)
        self.cholesky = linalg.cholesky_spd(g, rel_pd_tol)  # raises naming the pivot
        g.setflags(write=False)
        self.gram = g

    @classmethod
    def identity(cls, dim):
        return cls(np.eye(dim))

    @property
    def dim(self):
        return self.gram.shape[0]

    def pairing(self, x, y):
        return float(np.asarray(x, dtype=float) @ self.gram @ np.asarray(y, dtype=float))

    def __repr__(self):
        return f"<InnerProduct dim={self.dim}>"


class MetricLieAlgebra:
    """A Lie algebra with an inner product, plus cached orthonormal data.

    onb is the change-of-basis T with T' gram T = I; constants_onb are the
    structure constants rewritten in that orthonormal basis.  All Ricci
    and derivation computations downstream read constants_onb only.
    """

    def __init__(self, alg, metric=None):
        if metric is None:
            metric = InnerProduct.identity(alg.dim)
        if metric.dim != alg.dim:
            raise ValueError(f"metric dim {metric.dim} != algebra dim {alg.dim}")
        self.alg = alg
        self.metric = metric
        lower = metric.cholesky
        t = linalg.inverse_lower_triangular(lower).T
        t_inv = lower.T
        onb_check = t.T @ metric.gram @ t - np.eye(alg.dim)
        if linalg.frob(onb_check) > ONB_REL_TOL * (1.0 + alg.dim):
            raise RuntimeError("orthonormalization failed to reach the identity gram")
        constants = np.einsum("ia,jb,ijk,ck->abc", t, t, alg.constants, t_inv,
                              optimize=True)
        self.onb = t
        self.onb_inverse = t_inv
        self.onb_algebra = LieAlgebra(_resymmetrize(constants), name=alg.name,
                                      jacobi_rel_tol=alg.jacobi_rel_tol)
        self.constants_onb = self.onb_algebra.constants

    @property
    def dim(self):
        return self.alg.dim

    @property
    def ad_onb(self):
        """Stack of ad(X_i) in the orthonormal basis."""
        return self.onb_algebra.ad_basis

    def to_onb(self, x):
        """Coordinates of x (given in the defining basis) in the orthonormal basis."""
        return self.onb_inverse @ np.asarray(x, dtype=float)

    def from_onb(self, x):
        return self.onb @ np.asarray(x, dtype=float)

    def __repr__(self):
        label = self.alg.name or "MetricLieAlgebra"
        return f"<{label} dim={self.dim}>"


def _resymmetrize(tensor):
    """Rebuild an almost-antisymmetric tensor exactly from its i < j part."""
    dim = tensor.shape[0]
    idx = np.arange(dim)
    upper = np.where(idx[:, None, None] < idx[None, :, None], tensor, 0.0)
    return upper - np.swapaxes(upper, 0, 1)


def orthonormalize(alg, metric=None):
    """Pair a Lie algebra with an inner product (identity by default)."""
    return MetricLieAlgebra(alg, metric)


def metric_adjoint(m, a):
    """Adjoint of an operator given in the orthonormal basis (its transpose)."""
    a = np.asarray(a, dtype=float)
    if a.shape != (m.dim, m.dim):
        raise ValueError(f"expected a {m.dim}x{m.dim} matrix")
    return a.T


def symmetric_part(a):
    """(a + a') / 2 for a square matrix."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    return linalg.sym_part(a)


def trace_inner_product(a, b):
    """<A, B> = trace(A B') on endomorphisms in an orthonormal basis."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected square matrices of the same shape")
    return float(np.sum(a * b))


def mean_curvature_vector(m):
    """(H, t): H_i = trace(ad X_i) in the orthonormal basis, t = ||H||.

    H vanishes exactly when the algebra is unimodular.
    """
    h = np.einsum("ikk->i", m.constants_onb)
    return h, float(np.sqrt(h @ h))


def killing_operator(m):
    """Matrix with entries trace(ad X_i ad X_j) in the orthonormal basis."""
    ads = m.ad_onb
    k = np.einsum("iab,jba->ij", ads, ads)
    return 0.5 * (k + k.T)


@dataclass(frozen=True)
class OperatorPredicates:
    is_skew: bool
    is_normal: bool
    is_traceless: bool
    tol: float


def operator_predicates(a, tol=PREDICATE_TOL):
    """Skew / normal / traceless flags for an operator in orthonormal coordinates."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    nrm = linalg.frob(a)
    is_skew = linalg.frob(a + a.T) <= tol * (1.0 + nrm)
    is_normal = linalg.frob(a @ a.T - a.T @ a) <= tol * (1.0 + nrm * nrm)
    is_traceless = abs(float(np.trace(a))) <= tol * (1.0 + nrm)
    return OperatorPredicates(bool(is_skew), bool(is_normal), bool(is_traceless), tol)
