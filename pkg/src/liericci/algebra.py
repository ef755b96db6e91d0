"""Structure-constant Lie algebras and their structural predicates."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg

JACOBI_REL_TOL = 1e-9
ABELIAN_ABS_TOL = 1e-10
UNIMODULAR_REL_TOL = 1e-9


def jacobi_residual(constants):
    """Largest component of [[x,y],z] + [[y,z],x] + [[z,x],y] over basis triples."""
    c = np.asarray(constants, dtype=float)
    t1 = np.einsum("ijl,lkm->ijkm", c, c)
    res = t1 + np.transpose(t1, (1, 2, 0, 3)) + np.transpose(t1, (2, 0, 1, 3))
    return float(np.max(np.abs(res))) if res.size else 0.0


class LieAlgebra:
    """Finite-dimensional real Lie algebra given by structure constants.

    constants[i, j, k] is the e_k coefficient of [e_i, e_j].  Only the
    i < j entries are authoritative: the stored tensor is rebuilt from
    them, so antisymmetry is exact and the diagonal is identically zero.
    Instances are immutable and safe to share between threads.
    """

    def __init__(self, constants, name=None, jacobi_rel_tol=JACOBI_REL_TOL,
                 validate=True):
        tensor = np.asarray(constants, dtype=float)
        if tensor.ndim != 3 or len(set(tensor.shape)) != 1:
            raise ValueError(f"structure constants must be cubic, got shape {tensor.shape}")
        dim = tensor.shape[0]
        if dim < 1:
            raise ValueError("dimension must be positive")
        idx = np.arange(dim)
        upper = np.where(idx[:, None, None] < idx[None, :, None], tensor, 0.0)
        full = upper - np.swapaxes(upper, 0, 1)
        scale = 1.0 + float(np.max(np.abs(tensor)))
        diag = np.where(idx[:, None, None] == idx[None, :, None], tensor, 0.0)
        if float(np.max(np.abs(diag))) > 1e-12 * scale:
            i, j, k = np.unravel_index(int(np.argmax(np.abs(diag))), diag.shape)
            raise ValueError(f"nonzero bracket of a vector with itself: c[{i}][{i}][{k}]")
        strict_lower = np.where(idx[:, None, None] > idx[None, :, None], tensor, 0.0)
        if np.any(strict_lower != 0.0):
            # long-form input: the lower entries must mirror the upper ones
            mismatch = np.abs(full - tensor)
            if float(mismatch.max()) > 1e-12 * scale:
                i, j, k = np.unravel_index(int(np.argmax(mismatch)), mismatch.shape)
                raise ValueError(
                    f"antisymmetry violated at c[{i}][{j}][{k}]: "
                    f"{tensor[i, j, k]:.6g} vs -c[{j}][{i}][{k}] = {full[i, j, k]:.6g}"
                )
        full.setflags(write=False)
        self.dim = dim
        self.name = name
        self.constants = full
        self.jacobi_rel_tol = float(jacobi_rel_tol)
        self.jacobi_residual = jacobi_residual(full)
        self.jacobi_tol = self.jacobi_rel_tol * (1.0 + self.max_abs) ** 3
        if validate and self.jacobi_residual > self.jacobi_tol:
            raise ValueError(
                f"Jacobi identity fails: residual {self.jacobi_residual:.3e} "
                f"> tol {self.jacobi_tol:.3e}"
            )

    @classmethod
    def from_brackets(cls, dim, entries, name=None, **kwargs):
        """Build from a list of (i, j, k, value) with i < j, zero elsewhere."""
        tensor = np.zeros((dim, dim, dim))
        for i, j, k, value in entries:
            if not 0 <= i < j < dim or not 0 <= k < dim:
                raise ValueError(f"bad bracket entry ({i}, {j}, {k}, {value})")
            tensor[i, j, k] += value
        return cls(tensor, name=name, **kwargs)

    @property
    def max_abs(self):
        return float(np.max(np.abs(self.constants)))

    @property
    def ad_basis(self):
        """Stack of ad(e_i) matrices, shape (dim, dim, dim)."""
        return self.constants.transpose(0, 2, 1)

    def bracket(self, x, y):
        """[x, y] for coordinate vectors x, y."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if x.shape != (self.dim,) or y.shape != (self.dim,):
            raise ValueError(f"expected vectors of length {self.dim}")
        return np.einsum("i,j,ijk->k", x, y, self.constants)

    def ad_matrix(self, x):
        """Matrix of ad(x): y -> [x, y] in the defining basis."""
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise ValueError(f"expected a vector of length {self.dim}")
        return np.einsum("i,ijk->kj", x, self.constants)

    def bracket_entries(self):
        """Sorted list of nonzero (i, j, k, value) with i < j."""
        out = []
        for i in range(self.dim - 1):
            for j in range(i + 1, self.dim):
                for k in range(self.dim):
                    v = self.constants[i, j, k]
                    if v != 0.0:
                        out.append((i, j, k, float(v)))
        return out

    def __repr__(self):
        label = self.name or "LieAlgebra"
        return f"<{label} dim={self.dim}>"


def validate_jacobi(alg_or_constants, tol=None):
    """(holds, max residual) for the Jacobi identity over all basis triples."""
    if isinstance(alg_or_constants, LieAlgebra):
        constants = alg_or_constants.constants
        default = alg_or_constants.jacobi_tol
    else:
        constants = np.asarray(alg_or_constants, dtype=float)
        scale = 1.0 + (float(np.max(np.abs(constants))) if constants.size else 0.0)
        default = JACOBI_REL_TOL * scale ** 3
    if tol is None:
        tol = default
    residual = jacobi_residual(constants)
    return residual <= tol, residual


class Subspace:
    """Subspace of R^n carried by an orthonormal column basis."""

    def __init__(self, basis, rel_tol=linalg.RANK_REL_TOL):
        basis = np.array(basis, dtype=float, copy=True)
        if basis.ndim != 2:
            raise ValueError("basis must be a matrix of column vectors")
        gram = basis.T @ basis
        if linalg.frob(gram - np.eye(basis.shape[1])) > 1e-12 * (1.0 + basis.shape[1]):
            raise ValueError("basis columns are not orthonormal")
        basis.setflags(write=False)
        self.basis = basis
        self.rel_tol = rel_tol

    @classmethod
    def span(cls, vectors, rel_tol=linalg.RANK_REL_TOL, abs_floor=0.0):
        return cls(linalg.orthonormal_columns(vectors, rel_tol, abs_floor), rel_tol)

    @classmethod
    def full(cls, n):
        return cls(np.eye(n))

    @classmethod
    def zero(cls, n):
        return cls(np.zeros((n, 0)))

    @property
    def ambient_dim(self):
        return self.basis.shape[0]

    @property
    def dim(self):
        return self.basis.shape[1]

    def project(self, x):
        return self.basis @ (self.basis.T @ np.asarray(x, dtype=float))

    def residual(self, x):
        """Distance from x (vector or column stack) to the subspace."""
        return linalg.span_residual(self.basis, x)

    def contains(self, x, tol):
        return self.residual(x) <= tol

    def complement(self):
        return Subspace(linalg.complement_basis(self.basis, self.rel_tol), self.rel_tol)

    def same_span(self, other, tol=1e-9):
        return (self.dim == other.dim
                and self.residual(other.basis) <= tol * (1.0 + np.sqrt(max(self.dim, 1)))
                and other.residual(self.basis) <= tol * (1.0 + np.sqrt(max(self.dim, 1))))

    def __repr__(self):
        return f"<Subspace {self.dim} of R^{self.ambient_dim}>"


def _span_floor(alg, rel_tol):
    # brackets of unit vectors scale with the constants, so rank decisions
    # on bracket images are anchored there rather than on the images
    return rel_tol * (1.0 + alg.max_abs)


def derived_algebra(alg, rel_tol=linalg.RANK_REL_TOL):
    """Span of all brackets [e_i, e_j], i < j, as a Subspace."""
    cols = [alg.constants[i, j] for i in range(alg.dim - 1) for j in range(i + 1, alg.dim)]
    if not cols:
        return Subspace.zero(alg.dim)
    return Subspace.span(np.column_stack(cols), rel_tol, _span_floor(alg, rel_tol))


def _bracket_span(alg, left, right, rel_tol):
    """Span of [x, y] over x in columns of left, y in columns of right."""
    if left.shape[1] == 0 or right.shape[1] == 0:
        return Subspace.zero(alg.dim)
    vecs = np.einsum("ia,jb,ijk->kab", left, right, alg.constants)
    return Subspace.span(vecs.reshape(alg.dim, -1), rel_tol, _span_floor(alg, rel_tol))


def lower_central_series(alg, rel_tol=linalg.RANK_REL_TOL):
    """Descending series g, [g, g], [[g, g], g], ... until it stabilizes.

    The last entry is the zero subspace exactly when the algebra is
    nilpotent.
    """
    current = Subspace.full(alg.dim)
    series = [current]
    full = current.basis
    for _ in range(alg.dim + 1):
        nxt = _bracket_span(alg, current.basis, full, rel_tol)
        if nxt.dim == current.dim:
            break
        series.append(nxt)
        current = nxt
        if current.dim == 0:
            break
    return series


def derived_series(alg, rel_tol=linalg.RANK_REL_TOL):
    """Descending series g, [g, g], [[g, g], [g, g]], ... until stable."""
    current = Subspace.full(alg.dim)
    series = [current]
    for _ in range(alg.dim + 1):
        nxt = _bracket_span(alg, current.basis, current.basis, rel_tol)
        if nxt.dim == current.dim:
            break
        series.append(nxt)
        current = nxt
        if current.dim == 0:
            break
    return series


@dataclass(frozen=True)
class StructuralPredicates:
    is_abelian: bool
    is_nilpotent: bool
    is_solvable: bool
    is_unimodular: bool
    nilpotency_degree: int | None


def structural_predicates(alg, rel_tol=linalg.RANK_REL_TOL,
                          abelian_tol=ABELIAN_ABS_TOL,
                          unimodular_rel_tol=UNIMODULAR_REL_TOL):
    """Abelian / nilpotent / solvable / unimodular flags plus nilpotency degree.

    Nilpotency degree is the first power of the lower central series that
    vanishes (1 for abelian algebras), None when not nilpotent.
    """
    is_abelian = alg.max_abs <= abelian_tol
    lcs = lower_central_series(alg, rel_tol)
    is_nilpotent = lcs[-1].dim == 0
    degree = len(lcs) - 1 if is_nilpotent else None
    is_solvable = is_nilpotent or derived_series(alg, rel_tol)[-1].dim == 0
    traces = np.einsum("ikk->i", alg.constants)
    utol = unimodular_rel_tol * (1.0 + alg.dim * alg.max_abs)
    is_unimodular = float(np.max(np.abs(traces))) <= utol if alg.dim else True
    return StructuralPredicates(
        is_abelian=bool(is_abelian),
        is_nilpotent=bool(is_nilpotent),
        is_solvable=bool(is_solvable),
        is_unimodular=bool(is_unimodular),
        nilpotency_degree=degree,
    )
