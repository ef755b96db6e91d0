"""Small dense linear-algebra kernels shared by the whole toolkit.

Rank decisions go through column-pivoted elimination with an explicit,
reported threshold; symmetric eigenvalues come from a cyclic two-sided
rotation sweep.  Both are deterministic: the same input bits always give
the same output bits, which is what the seeded test campaigns rely on.
"""

from __future__ import annotations

import numpy as np

RANK_REL_TOL = 1e-9
EIGEN_REL_TOL = 1e-12
PD_REL_TOL = 1e-12
MAX_SWEEPS = 100


class ConvergenceError(RuntimeError):
    """Rotation sweep failed to reach the requested off-diagonal norm."""


def frob(a):
    """Frobenius norm."""
    a = np.asarray(a, dtype=float)
    return float(np.sqrt(np.sum(a * a)))


def sym_part(a):
    """Symmetric part (a + a') / 2."""
    a = np.asarray(a, dtype=float)
    return 0.5 * (a + a.T)


def is_symmetric(a, rel_tol=1e-9):
    a = np.asarray(a, dtype=float)
    return frob(a - a.T) <= rel_tol * (1.0 + frob(a))


def _pivoted_mgs(vectors, rel_tol, abs_floor=0.0):
    """Greedy column-pivoted modified Gram-Schmidt.

    Returns (q, picked): q has orthonormal columns spanning the input
    columns, picked lists the chosen column indices in pivot order.  A
    column is accepted while its residual norm exceeds
    max(rel_tol * largest input column norm, abs_floor); the absolute
    floor is how callers anchor the rank decision to the scale of the
    data the columns came from, so that a stack of numerically-zero
    columns has rank zero.
    """
    v = np.array(vectors, dtype=float, copy=True)
    if v.ndim != 2:
        raise ValueError("expected a matrix of column vectors")
    n, m = v.shape
    if n == 0 or m == 0:
        return np.zeros((n, 0)), []
    norms = np.sqrt(np.sum(v * v, axis=0))
    threshold = max(rel_tol * float(norms.max()), abs_floor)
    if threshold == 0.0:
        return np.zeros((n, 0)), []
    q_cols: list[np.ndarray] = []
    picked: list[int] = []
    for _ in range(min(n, m)):
        res_norms = np.sqrt(np.sum(v * v, axis=0))
        j = int(np.argmax(res_norms))
        if res_norms[j] <= threshold:
            break
        q = v[:, j] / res_norms[j]
        for prev in q_cols:  # one re-orthogonalization pass
            q = q - prev * float(prev @ q)
        q = q / float(np.sqrt(q @ q))
        q_cols.append(q)
        picked.append(j)
        v -= np.outer(q, q @ v)
        v[:, j] = 0.0
    if not q_cols:
        return np.zeros((n, 0)), []
    return np.column_stack(q_cols), picked


def orthonormal_columns(vectors, rel_tol=RANK_REL_TOL, abs_floor=0.0):
    """Orthonormal basis of the column span (column-pivoted elimination)."""
    q, _ = _pivoted_mgs(vectors, rel_tol, abs_floor)
    return q


def pivot_columns(vectors, rel_tol=RANK_REL_TOL, abs_floor=0.0):
    """Indices of an independent subset of columns, in pivot order."""
    _, picked = _pivoted_mgs(vectors, rel_tol, abs_floor)
    return picked


def matrix_rank(a, rel_tol=RANK_REL_TOL, abs_floor=0.0):
    return orthonormal_columns(a, rel_tol, abs_floor).shape[1]


def complement_basis(q, rel_tol=RANK_REL_TOL):
    """Orthonormal basis of the orthogonal complement of span(q) in R^n.

    q must already have orthonormal columns.
    """
    q = np.asarray(q, dtype=float)
    n = q.shape[0]
    resid = np.eye(n) - q @ q.T
    comp = orthonormal_columns(resid, rel_tol, abs_floor=rel_tol)
    expected = n - q.shape[1]
    if comp.shape[1] != expected:
        raise RuntimeError(
            f"complement rank {comp.shape[1]} != {expected}; input not orthonormal?"
        )
    return comp


def nullspace(a, rel_tol=RANK_REL_TOL, abs_floor=0.0):
    """Orthonormal basis of the kernel of a, thresholded like the span.

    abs_floor anchors the rank decision on the rows: rows smaller than it
    are treated as zero equations.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2:
        raise ValueError("expected a matrix")
    row_space = orthonormal_columns(a.T, rel_tol, abs_floor)
    return complement_basis(row_space, rel_tol)


def span_residual(q, x):
    """Distance from x (vector or matrix of columns) to span(q)."""
    x = np.asarray(x, dtype=float)
    return frob(x - q @ (q.T @ x))


def cholesky_spd(gram, rel_pd_tol=PD_REL_TOL):
    """Lower-triangular L with gram = L L'.

    Raises ValueError naming the first pivot at or below
    rel_pd_tol * max|diagonal|.
    """
    g = np.asarray(gram, dtype=float)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise ValueError("expected a square matrix")
    n = g.shape[0]
    diag_scale = float(np.max(np.abs(np.diag(g)))) if n else 0.0
    floor = rel_pd_tol * diag_scale
    lower = np.zeros_like(g)
    for j in range(n):
        d = g[j, j] - float(lower[j, :j] @ lower[j, :j])
        if d <= floor:
            raise ValueError(
                f"matrix is not positive definite: pivot {j} is {d:.6e}"
            )
        lower[j, j] = np.sqrt(d)
        if j + 1 < n:
            lower[j + 1:, j] = (g[j + 1:, j] - lower[j + 1:, :j] @ lower[j, :j]) / lower[j, j]
    return lower


def inverse_lower_triangular(lower):
    """Inverse of a lower-triangular matrix by forward substitution."""
    lower = np.asarray(lower, dtype=float)
    n = lower.shape[0]
    inv = np.zeros_like(lower)
    for j in range(n):
        inv[j, j] = 1.0 / lower[j, j]
        for i in range(j + 1, n):
            inv[i, j] = -float(lower[i, j:i] @ inv[j:i, j]) / lower[i, i]
    return inv


def symmetric_eigenvalues(m, rel_tol=EIGEN_REL_TOL, max_sweeps=MAX_SWEEPS,
                          sym_rel_tol=1e-9):
    """Eigenvalues of a symmetric matrix, ascending.

    Cyclic two-sided rotation sweeps; converged when the off-diagonal
    Frobenius norm is at most rel_tol * (1 + ||m||_F).  The sweep order is
    fixed, so results are reproducible bit for bit.  Raises
    ConvergenceError after max_sweeps; a failure is never silently
    accepted.
    """
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    nrm = frob(a)
    if frob(a - a.T) > sym_rel_tol * (1.0 + nrm):
        raise ValueError("matrix is not symmetric within tolerance")
    n = a.shape[0]
    if n == 0:
        return np.zeros(0)
    a = 0.5 * (a + a.T)
    if n == 1:
        return np.array([a[0, 0]])
    target = rel_tol * (1.0 + nrm)
    skip = target / (2.0 * n * n)
    for _ in range(max_sweeps):
        off = a - np.diag(np.diag(a))
        if frob(off) <= target:
            return np.sort(np.diag(a))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                theta = 0.5 * (a[q, q] - a[p, p]) / apq
                if theta == 0.0:
                    t = 1.0
                else:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = 0.0
                a[q, p] = 0.0
    raise ConvergenceError(
        f"off-diagonal norm still above {target:.3e} after {max_sweeps} sweeps"
    )


def interlacing_slack(outer_eigs, inner_eigs):
    """Worst slack of the one-row-one-column deletion interlacing.

    For eigenvalues of a symmetric matrix (outer) and of a principal
    submatrix one size smaller (inner), every inner value must sit between
    consecutive outer values; the returned slack is >= 0 up to rounding
    when interlacing holds.
    """
    outer = np.sort(np.asarray(outer_eigs, dtype=float))
    inner = np.sort(np.asarray(inner_eigs, dtype=float))
    if outer.size != inner.size + 1:
        raise ValueError("inner spectrum must be one shorter than outer")
    if inner.size == 0:
        return 0.0
    lo = float(np.min(inner - outer[:-1]))
    hi = float(np.min(outer[1:] - inner))
    return min(lo, hi)
