"""The Ricci operator of a metric Lie algebra, by three routes.

Route one is the general curvature formula in an orthonormal basis

    Ric = -1/2 sum_i ad'(X_i) ad(X_i) + 1/4 sum_i ad(X_i) ad'(X_i)
          - 1/2 B - ad_sym(H),

with B the Killing operator and H the mean-curvature vector.  Route two
rewrites Ric in a basis adapted to the splitting s = n + a, where n is
the derived algebra and a its orthogonal complement, as a 2x2 block
matrix assembled from the blocks of the ad operators.  Route three is
the nilpotent shortcut (B = 0, H = 0).  The routes agree; the tests and
the verification campaigns lean on that redundancy.

The module also carries the eigenvalue-signature report and the
codimension-one reduction: when dim(a) = 1 and the single generator does
not act skew-symmetrically, a congruence transform splits off one
negative eigenvalue, so the full operator has at least two negative
eigenvalues exactly when the reduced block has at least one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .algebra import Subspace, derived_algebra, structural_predicates
from .metric import mean_curvature_vector, killing_operator

ZERO_REL_TOL = 1e-8
BLOCK_REL_TOL = 1e-10


@dataclass(frozen=True)
class RicciReport:
    """Ricci matrix in an orthonormal basis, with its spectral summary.

    zero_tol is the relative tolerance used for the zero band; zero_band
    is the resulting absolute half-width zero_tol * (1 + ||Ric||_F).
    signature counts (negative, zero, positive) eigenvalues.
    """

    ricci: np.ndarray
    eigenvalues: np.ndarray
    signature: tuple[int, int, int]
    scalar_curvature: float
    zero_tol: float
    zero_band: float

    @property
    def n_negative(self):
        return self.signature[0]

    @property
    def n_zero(self):
        return self.signature[1]

    @property
    def n_positive(self):
        return self.signature[2]

    def form(self, x, y):
        """Value of the Ricci form (Ric x, y)."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return float(x @ self.ricci @ y)


def eigen_signature(matrix, zero_tol=ZERO_REL_TOL):
    """(eigenvalues ascending, (n_neg, n_zero, n_pos)) of a symmetric matrix.

    An eigenvalue counts as zero when |lambda| <= zero_tol * (1 + ||M||_F).
    Raises ValueError for a non-symmetric input.
    """
    matrix = np.asarray(matrix, dtype=float)
    if zero_tol <= 0:
        raise ValueError("zero_tol must be positive")
    eigs = linalg.symmetric_eigenvalues(matrix)
    band = zero_tol * (1.0 + linalg.frob(matrix))
    n_neg = int(np.sum(eigs < -band))
    n_pos = int(np.sum(eigs > band))
    n_zero = eigs.size - n_neg - n_pos
    return eigs, (n_neg, n_zero, n_pos)


def _build_report(ric, zero_tol):
    ric = 0.5 * (ric + ric.T)
    eigs, signature = eigen_signature(ric, zero_tol)
    scalar = float(np.trace(ric))
    total = float(np.sum(eigs))
    if abs(scalar - total) > 1e-9 * (1.0 + abs(scalar)):
        raise RuntimeError(
            f"eigenvalue sum {total:.6e} drifted from trace {scalar:.6e}"
        )
    band = zero_tol * (1.0 + linalg.frob(ric))
    ric.setflags(write=False)
    eigs.setflags(write=False)
    return RicciReport(ricci=ric, eigenvalues=eigs, signature=signature,
                       scalar_curvature=scalar, zero_tol=zero_tol, zero_band=band)


def ricci_operator(m):
    """Ricci matrix in the orthonormal basis, by the general formula."""
    ads = m.ad_onb
    down = np.einsum("iab,iac->bc", ads, ads)      # sum ad'(X_i) ad(X_i)
    up = np.einsum("iab,icb->ac", ads, ads)        # sum ad(X_i) ad'(X_i)
    killing = killing_operator(m)
    h, _ = mean_curvature_vector(m)
    ad_h = np.tensordot(h, ads, axes=1)
    ric = -0.5 * down + 0.25 * up - 0.5 * killing - linalg.sym_part(ad_h)
    sym_gap = linalg.frob(ric - ric.T)
    if sym_gap > 1e-10 * (1.0 + linalg.frob(ric)):
        raise RuntimeError(f"Ricci matrix asymmetry {sym_gap:.3e} out of tolerance")
    return 0.5 * (ric + ric.T)


def ricci_direct(m, zero_tol=ZERO_REL_TOL):
    """RicciReport for any metric Lie algebra (not only solvable ones)."""
    return _build_report(ricci_operator(m), zero_tol)


def ricci_nilpotent(m, zero_tol=ZERO_REL_TOL):
    """RicciReport by the nilpotent shortcut; requires a nilpotent algebra."""
    if not structural_predicates(m.alg).is_nilpotent:
        raise ValueError("nilpotent route requires a nilpotent algebra")
    ads = m.ad_onb
    ric = (-0.5 * np.einsum("iab,iac->bc", ads, ads)
           + 0.25 * np.einsum("iab,icb->ac", ads, ads))
    return _build_report(ric, zero_tol)


@dataclass(frozen=True)
class AdaptedDecomposition:
    """Basis of s adapted to n = [s, s] and a = n-perp, with ad blocks.

    Columns of e_basis / f_basis are orthonormal coordinates (in the
    orthonormal basis of the metric) spanning n and a.  In the adapted
    basis, ad of the j-th a-generator has upper blocks (a_blocks[j],
    b_blocks[j]) and ad of the i-th n-generator has (d_blocks[i],
    c_blocks[i]); all bottom rows vanish because brackets land in n.
    t = trace of ad of the first a-generator; the remaining generators
    have traceless ad, so t is the norm of the mean-curvature vector.
    """

    e_basis: np.ndarray
    f_basis: np.ndarray
    a_blocks: np.ndarray
    b_blocks: np.ndarray
    d_blocks: np.ndarray
    c_blocks: np.ndarray
    t: float
    metric_algebra: object = field(repr=False)

    @property
    def n_dim(self):
        return self.e_basis.shape[1]

    @property
    def a_dim(self):
        return self.f_basis.shape[1]

    @property
    def basis(self):
        """Full adapted basis, e-columns then f-columns (orthogonal matrix)."""
        return np.hstack([self.e_basis, self.f_basis])

    @property
    def n_subspace(self):
        return Subspace(self.e_basis)

    @property
    def a_subspace(self):
        return Subspace(self.f_basis)


def adapted_decomposition(m, rank_rel_tol=linalg.RANK_REL_TOL,
                          block_rel_tol=BLOCK_REL_TOL, check_solvable=True):
    """Split a solvable metric Lie algebra along its derived algebra.

    The first a-generator is H/||H|| when the algebra is non-unimodular;
    otherwise any unit vector of a works and the first basis vector of
    the computed complement is used.
    """
    if check_solvable and not structural_predicates(m.alg).is_solvable:
        raise ValueError("adapted decomposition requires a solvable algebra")
    onb_alg = m.onb_algebra
    dim = m.dim
    n_sub = derived_algebra(onb_alg, rank_rel_tol)
    l = n_sub.dim
    comp = n_sub.complement()
    h, t = mean_curvature_vector(m)
    scale = 1.0 + onb_alg.max_abs
    if t > 1e-9 * dim * scale:
        f1 = h / t
        if n_sub.dim and linalg.frob(n_sub.basis.T @ f1) > 1e-8 * scale:
            raise RuntimeError("mean-curvature vector is not orthogonal to [s, s]")
        f1 = comp.project(f1)
        f1 = f1 / float(np.sqrt(f1 @ f1))
        coeffs = comp.basis.T @ f1
        rest = linalg.complement_basis(coeffs[:, None], rank_rel_tol)
        f_basis = comp.basis @ np.column_stack([coeffs[:, None], rest])
    else:
        t = 0.0
        f_basis = comp.basis
    u = np.hstack([n_sub.basis, f_basis])
    c_ad = np.einsum("ia,jb,ijk,kc->abc", u, u, onb_alg.constants, u, optimize=True)
    leak = float(np.max(np.abs(c_ad[:, :, l:]))) if l < dim else 0.0
    if leak > block_rel_tol * scale:
        raise RuntimeError(f"brackets leak out of the derived algebra by {leak:.3e}")
    ads = c_ad.transpose(0, 2, 1)
    d_blocks = ads[:l, :l, :l]
    c_blocks = ads[:l, :l, l:]
    a_blocks = ads[l:, :l, :l]
    b_blocks = ads[l:, :l, l:]
    a_traces = np.einsum("jkk->j", a_blocks)
    if a_traces.size:
        t_check = float(a_traces[0])
        if abs(t_check - t) > 1e-8 * (1.0 + dim * scale) or t_check < -1e-10 * scale:
            raise RuntimeError(f"trace of the leading generator is {t_check:.3e}, expected {t:.3e}")
        if a_traces.size > 1 and float(np.max(np.abs(a_traces[1:]))) > 1e-8 * (1.0 + dim * scale):
            raise RuntimeError("trailing generators are not traceless")
    return AdaptedDecomposition(
        e_basis=n_sub.basis, f_basis=f_basis,
        a_blocks=np.ascontiguousarray(a_blocks),
        b_blocks=np.ascontiguousarray(b_blocks),
        d_blocks=np.ascontiguousarray(d_blocks),
        c_blocks=np.ascontiguousarray(c_blocks),
        t=float(t), metric_algebra=m,
    )


def ricci_of_derived(d):
    """Ricci matrix of (n, Q|n) in the adapted e-basis (nilpotent shortcut)."""
    dd = d.d_blocks
    if d.n_dim == 0:
        return np.zeros((0, 0))
    return (-0.5 * np.einsum("iab,iac->bc", dd, dd)
            + 0.25 * np.einsum("iab,icb->ac", dd, dd))


@dataclass(frozen=True)
class BlockRicci:
    """Ricci operator assembled from the adapted-basis blocks."""

    r1: np.ndarray
    r2: np.ndarray
    r3: np.ndarray
    assembled: np.ndarray          # adapted-basis coordinates
    assembled_onb: np.ndarray      # rotated back to the orthonormal basis
    ricci_n: np.ndarray


def ricci_blocks(d):
    """Assemble Ric = [[R1, R2], [R2', R3]] from an adapted decomposition."""
    l, mm = d.n_dim, d.a_dim
    aa, bb = d.a_blocks, d.b_blocks
    dd, cc = d.d_blocks, d.c_blocks
    ric_n = ricci_of_derived(d)
    r1 = ric_n.copy()
    if mm:
        comm = np.einsum("jab,jcb->ac", aa, aa) - np.einsum("jab,jac->bc", aa, aa)
        r1 += 0.5 * comm
        r1 += 0.25 * np.einsum("jab,jcb->ac", bb, bb)
        r1 -= d.t * linalg.sym_part(aa[0])
    r2 = np.zeros((l, mm))
    if l and mm:
        r2 -= 0.5 * np.einsum("iab,iac->bc", dd, cc)
    if mm:
        r2 -= 0.5 * np.einsum("jab,jac->bc", aa, bb)
        r2 -= 0.5 * d.t * bb[0]
    sym_a = 0.5 * (aa + aa.transpose(0, 2, 1))
    trace_gram = np.einsum("pab,qab->pq", sym_a, sym_a)
    r3 = -0.5 * np.einsum("jab,jac->bc", bb, bb) - trace_gram
    assembled = np.zeros((l + mm, l + mm))
    assembled[:l, :l] = r1
    assembled[:l, l:] = r2
    assembled[l:, :l] = r2.T
    assembled[l:, l:] = r3
    assembled = 0.5 * (assembled + assembled.T)
    u = d.basis
    return BlockRicci(r1=r1, r2=r2, r3=r3, assembled=assembled,
                      assembled_onb=u @ assembled @ u.T, ricci_n=ric_n)


def route_deviation(m, d=None):
    """Relative Frobenius gap between the direct and block Ricci routes."""
    if d is None:
        d = adapted_decomposition(m)
    direct = ricci_operator(m)
    blocks = ricci_blocks(d)
    u = d.basis
    aligned = u.T @ direct @ u
    return linalg.frob(aligned - blocks.assembled) / (1.0 + linalg.frob(aligned))


@dataclass(frozen=True)
class Codim1Reduction:
    """Congruence reduction when the derived algebra has codimension one.

    r is trace(A_sym A_sym) for the single generator action A.  The full
    operator has at least two negative eigenvalues exactly when r_tilde =
    R1 + R2 R2'/r has at least one; trace_test < 0 is a sufficient
    certificate for that.
    """

    r: float
    r2_entries: np.ndarray
    r_tilde: np.ndarray
    trace_test: float
    full_signature: tuple[int, int, int]
    r_tilde_signature: tuple[int, int, int]
    equivalence_holds: bool
    r2_formula_gap: float


def codim1_reduction(d, zero_tol=ZERO_REL_TOL, skew_tol=1e-12):
    """Reduce the signature question to the derived-algebra block.

    Requires dim(a) = 1 and a generator that is not skew (r > 0).
    """
    if d.a_dim != 1:
        raise ValueError("reduction requires a codimension-one derived algebra")
    a = d.a_blocks[0]
    sym_a = linalg.sym_part(a)
    r = float(np.sum(sym_a * sym_a))
    if r <= skew_tol * (1.0 + float(np.sum(a * a))):
        raise ValueError("generator acts skew-symmetrically: r vanishes")
    blocks = ricci_blocks(d)
    r2_entries = -0.5 * np.einsum("iab,ab->i", d.d_blocks, a)
    gap = float(np.max(np.abs(r2_entries - blocks.r2[:, 0]))) if d.n_dim else 0.0
    r_tilde = blocks.r1 + np.outer(r2_entries, r2_entries) / r
    trace_test = float(np.trace(blocks.ricci_n)) - d.t ** 2 + float(r2_entries @ r2_entries) / r
    _, full_sig = eigen_signature(blocks.assembled, zero_tol)
    if d.n_dim:
        _, tilde_sig = eigen_signature(r_tilde, zero_tol)
    else:
        tilde_sig = (0, 0, 0)
    equivalence = (full_sig[0] >= 2) == (tilde_sig[0] >= 1)
    return Codim1Reduction(r=r, r2_entries=r2_entries, r_tilde=r_tilde,
                           trace_test=trace_test, full_signature=full_sig,
                           r_tilde_signature=tilde_sig,
                           equivalence_holds=bool(equivalence),
                           r2_formula_gap=gap)


def r2_pairing_trace(d, e_rotation=None):
    """trace(R2 R2') = 1/4 sum_i <ad(e_i)|_n, A>^2 for a codim-1 split.

    e_rotation, when given, is an orthogonal matrix rotating the
    orthonormal basis of the derived algebra; the value must not depend
    on that choice.
    """
    if d.a_dim != 1:
        raise ValueError("defined for a codimension-one derived algebra")
    a = d.a_blocks[0]
    dd = d.d_blocks
    if e_rotation is not None:
        o = np.asarray(e_rotation, dtype=float)
        rotated = np.einsum("ji,ab,jbc,cd->iad", o, o.T, dd, o, optimize=True)
        dd = rotated
        a = o.T @ a @ o
    pair = np.einsum("iab,ab->i", dd, a)
    return 0.25 * float(pair @ pair)
