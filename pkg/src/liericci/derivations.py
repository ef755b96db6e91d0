"""Derivations of a nilpotent Lie algebra and their trace identities.

A derivation satisfies D[x, y] = [Dx, y] + [x, Dy]; the inner ones are
the ad(x).  The space of derivations is the kernel of a linear system
over the l^2 matrix entries, solved densely (the algebras here are desk
scale, l <= 12).  On top of the two spaces this module exposes:

  * the orthogonal projection onto inner derivations under the trace
    inner product <A, B> = trace(A B');
  * the filtration subspaces attached to the lower central series
    (preserve every term / preserve every orthogonal slice / shift every
    term one step down);
  * the identities these objects satisfy, as residuals a test can check:
    inner parts have zero self- and cross-traces, the symmetric part of
    a derivation dominates half the inner part, slices are orthogonal to
    shifts, and pairing the Ricci operator with [A, A'] is nonnegative
    with equality exactly when the adjoint is again a derivation.

The filtration slices depend on the inner product.  When built from a
MetricLieAlgebra everything lives in its orthonormal basis; a bare
LieAlgebra gets the standard inner product on the defining basis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebra import LieAlgebra, Subspace, lower_central_series, structural_predicates
from .metric import MetricLieAlgebra, trace_inner_product
from .ricci import ricci_nilpotent

DER_REL_TOL = 1e-8
CHECK_TOL = 1e-9


def leibniz_residual(alg, a):
    """Largest component of A[e_i,e_j] - [Ae_i,e_j] - [e_i,Ae_j] over pairs."""
    c = alg.constants
    a = np.asarray(a, dtype=float)
    term1 = np.einsum("km,ijm->ijk", a, c)
    term2 = np.einsum("ai,ajk->ijk", a, c)
    term3 = np.einsum("bj,ibk->ijk", a, c)
    res = term1 - term2 - term3
    return float(np.max(np.abs(res))) if res.size else 0.0


def is_derivation(alg, a, der_rel_tol=DER_REL_TOL):
    a = np.asarray(a, dtype=float)
    return leibniz_residual(alg, a) <= der_rel_tol * (1.0 + linalg.frob(a))


def _leibniz_system(alg):
    """Rows of the linear system whose kernel is the derivation space."""
    c = alg.constants
    l = alg.dim
    rows = []
    for i in range(l - 1):
        for j in range(i + 1, l):
            for k in range(l):
                row = np.zeros((l, l))
                row[k, :] += c[i, j, :]
                row[:, i] -= c[:, j, k]
                row[:, j] -= c[i, :, k]
                rows.append(row.ravel())
    if not rows:
        return np.zeros((0, l * l))
    return np.array(rows)


@dataclass(frozen=True)
class DerivationSpace:
    """Derivations and inner derivations of one algebra, with projection data.

    der_basis is orthonormal under the trace inner product; inner_basis is
    an independent subset of the ad(e_i) (indices in inner_indices) with
    its Gram matrix under <.,.> in gram_inner.  series / slices hold the
    lower central series and its orthogonal slices when the algebra is
    nilpotent (slices is None otherwise).
    """

    alg: LieAlgebra
    der_basis: np.ndarray          # (n_der, l, l)
    inner_basis: np.ndarray        # (n_inner, l, l)
    inner_indices: tuple[int, ...]
    gram_inner: np.ndarray
    series: list
    slices: list | None
    rank_rel_tol: float
    der_rel_tol: float

    @property
    def dim_der(self):
        return self.der_basis.shape[0]

    @property
    def dim_inner(self):
        return self.inner_basis.shape[0]


def derivation_algebra(source, rank_rel_tol=linalg.RANK_REL_TOL,
                       der_rel_tol=DER_REL_TOL):
    """Compute Der and InnDer for a LieAlgebra or MetricLieAlgebra."""
    alg = source.onb_algebra if isinstance(source, MetricLieAlgebra) else source
    l = alg.dim
    floor = rank_rel_tol * (1.0 + alg.max_abs)
    system = _leibniz_system(alg)
    kernel = linalg.nullspace(system, rank_rel_tol, abs_floor=floor)
    der_basis = np.ascontiguousarray(kernel.T.reshape(-1, l, l))
    ads = alg.ad_basis
    ad_cols = ads.reshape(l, l * l).T
    picked = linalg.pivot_columns(ad_cols, rank_rel_tol, abs_floor=floor)
    inner_basis = np.ascontiguousarray(ads[picked]) if picked else np.zeros((0, l, l))
    gram = np.einsum("aij,bij->ab", inner_basis, inner_basis)
    preds = structural_predicates(alg, rank_rel_tol)
    series = lower_central_series(alg, rank_rel_tol)
    slices = _series_slices(series, rank_rel_tol) if preds.is_nilpotent else None
    return DerivationSpace(alg=alg, der_basis=der_basis, inner_basis=inner_basis,
                           inner_indices=tuple(picked), gram_inner=gram,
                           series=series, slices=slices,
                           rank_rel_tol=rank_rel_tol, der_rel_tol=der_rel_tol)


def _series_slices(series, rel_tol):
    """Orthogonal complement of each series term inside its predecessor."""
    slices = []
    for k in range(1, len(series)):
        prev = series[k - 1].basis
        cur = series[k].basis
        resid = prev - cur @ (cur.T @ prev)
        slices.append(Subspace.span(resid, rel_tol, abs_floor=rel_tol))
    return slices


def project_inner(ds, a, check=True):
    """Trace-orthogonal projection of a derivation onto the inner ones.

    Solves the normal equations on the Gram matrix of the independent
    ad(e_i); falls back to an orthonormalized spanning set when that
    Gram matrix is numerically singular.
    """
    a = np.asarray(a, dtype=float)
    if check and not is_derivation(ds.alg, a, ds.der_rel_tol):
        raise ValueError("operator is not a derivation within tolerance")
    if ds.dim_inner == 0:
        return np.zeros_like(a)
    rhs = np.einsum("bij,ij->b", ds.inner_basis, a)
    try:
        lower = linalg.cholesky_spd(ds.gram_inner)
        coeff = _solve_cholesky(lower, rhs)
        return np.einsum("b,bij->ij", coeff, ds.inner_basis)
    except ValueError:
        flat = ds.inner_basis.reshape(ds.dim_inner, -1).T
        q = linalg.orthonormal_columns(flat, ds.rank_rel_tol)
        return (q @ (q.T @ a.ravel())).reshape(a.shape)


def _solve_cholesky(lower, rhs):
    n = lower.shape[0]
    y = np.zeros(n)
    for i in range(n):
        y[i] = (rhs[i] - float(lower[i, :i] @ y[:i])) / lower[i, i]
    x = np.zeros(n)
    for i in range(n - 1, -1, -1):
        x[i] = (y[i] - float(lower[i + 1:, i] @ x[i + 1:])) / lower[i, i]
    return x


@dataclass(frozen=True)
class FiltrationMembership:
    in_l1: bool        # preserves every lower-central term
    in_l2: bool        # preserves every orthogonal slice
    in_l3: bool        # shifts every term one step down
    residual_l1: float
    residual_l2: float
    residual_l3: float


def filtration_membership(ds, a, tol=CHECK_TOL):
    """Test preservation/shift of the lower central series by an operator."""
    if ds.slices is None:
        raise ValueError("filtration is defined for nilpotent algebras only")
    a = np.asarray(a, dtype=float)
    scale = 1.0 + linalg.frob(a)
    series = ds.series
    r1 = 0.0
    r3 = 0.0
    for k in range(len(series) - 1):
        image = a @ series[k].basis
        r1 = max(r1, series[k].residual(image))
        r3 = max(r3, series[k + 1].residual(image))
    r2 = 0.0
    for piece in ds.slices:
        image = a @ piece.basis
        r2 = max(r2, piece.residual(image))
    return FiltrationMembership(
        in_l1=r1 <= tol * scale, in_l2=r2 <= tol * scale, in_l3=r3 <= tol * scale,
        residual_l1=r1, residual_l2=r2, residual_l3=r3,
    )


def nilpotent_trace_gap(mat):
    """|2 trace(L_sym L_sym) - trace(L L')|; zero for nilpotent L."""
    mat = np.asarray(mat, dtype=float)
    s = linalg.sym_part(mat)
    return abs(2.0 * float(np.sum(s * s)) - float(np.sum(mat * mat)))


@dataclass(frozen=True)
class DerivationIdentities:
    """Residuals of the identities a derivation of a nilpotent algebra obeys."""

    inner_self_trace: float        # trace(P A . P A) vanishes
    inner_cross_trace: float       # trace(P A . (A - P A)) vanishes
    inner_nilpotent_gap: float     # the inner part is nilpotent
    sym_lower_bound_slack: float   # <A_s, A_s> - <P A, P A>/2 >= 0
    sym_bound_tight: bool          # slack inside the tolerance band
    outer_part_skew: bool          # A - P A skew; tightness happens iff this
    in_l2: bool
    shift_pairing_max: float | None  # <A, B> over inner B, when A preserves slices
    adjoint_is_derivation: bool
    adjoint_in_l2: bool | None     # both A and A' preserve slices, when A' derives


def derivation_identities(ds, a, tol=CHECK_TOL):
    """Evaluate the trace identities for one derivation."""
    a = np.asarray(a, dtype=float)
    if not is_derivation(ds.alg, a, ds.der_rel_tol):
        raise ValueError("operator is not a derivation within tolerance")
    proj = project_inner(ds, a, check=False)
    outer = a - proj
    scale = 1.0 + float(np.sum(a * a))
    self_trace = abs(float(np.trace(proj @ proj)))
    cross_trace = abs(float(np.trace(proj @ outer)))
    sym = linalg.sym_part(a)
    slack = float(np.sum(sym * sym)) - 0.5 * float(np.sum(proj * proj))
    tight = abs(slack) <= tol * scale
    outer_skew = linalg.frob(outer + outer.T) <= tol * (1.0 + linalg.frob(outer))
    membership = filtration_membership(ds, a, tol)
    shift_pairing = None
    if membership.in_l2:
        pairings = [abs(trace_inner_product(a, b)) for b in ds.inner_basis]
        shift_pairing = max(pairings, default=0.0)
    adj_der = is_derivation(ds.alg, a.T, ds.der_rel_tol)
    adj_l2 = None
    if adj_der:
        adj_l2 = membership.in_l2 and filtration_membership(ds, a.T, tol).in_l2
    return DerivationIdentities(
        inner_self_trace=self_trace,
        inner_cross_trace=cross_trace,
        inner_nilpotent_gap=nilpotent_trace_gap(proj),
        sym_lower_bound_slack=slack,
        sym_bound_tight=tight,
        outer_part_skew=bool(outer_skew),
        in_l2=membership.in_l2,
        shift_pairing_max=shift_pairing,
        adjoint_is_derivation=bool(adj_der),
        adjoint_in_l2=adj_l2,
    )


def ricci_derivation_pairing(m, a, der_rel_tol=DER_REL_TOL):
    """(value, adjoint_is_derivation) for a nilpotent metric Lie algebra.

    value = trace(Ric . [A, A']) with A in the orthonormal basis; it is
    nonnegative and vanishes exactly when A' is again a derivation.
    """
    a = np.asarray(a, dtype=float)
    alg = m.onb_algebra
    if not structural_predicates(m.alg).is_nilpotent:
        raise ValueError("defined for nilpotent metric Lie algebras")
    if not is_derivation(alg, a, der_rel_tol):
        raise ValueError("operator is not a derivation within tolerance")
    ric = ricci_nilpotent(m).ricci
    comm = a @ a.T - a.T @ a
    value = float(np.sum(ric * comm))  # both symmetric, so this is the trace
    return value, is_derivation(alg, a.T, der_rel_tol)
