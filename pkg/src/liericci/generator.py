"""Deterministic construction of test instances.

Random algebras are built as matrix subalgebras of (strictly) upper
triangular matrices: brackets of matrices satisfy the Jacobi identity
exactly, triangularity makes the result solvable (strictly triangular:
nilpotent) by construction, and no rejection sampling of raw structure
tensors is ever needed.  A greedy loop draws sparse triangular matrices
and keeps a candidate only while the bracket closure of the span stays
within the target dimension, so the reached dimension is exact.  The
distribution is biased toward low nilpotency degree at small matrix
sizes; campaigns vary the matrix size to compensate.

All randomness flows through a named counter-based generator
(numpy's Philox, 64-bit keys), so identical seeds give identical
instances bit for bit on any platform.  Derived streams use seed XOR
index; the CLI campaigns document their index layout.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .algebra import LieAlgebra
from .derivations import derivation_algebra, is_derivation, leibniz_residual
from .metric import InnerProduct, MetricLieAlgebra, orthonormalize

CLOSURE_REL_TOL = 1e-9
METRIC_RIDGE = 0.1

CATALOG_NAMES = (
    "abelian_n", "heisenberg3", "filiform_n4", "hyperbolic2",
    "diag_split", "euclid_motion", "grading_ext",
)


class GenerationError(RuntimeError):
    """The sampler could not reach the requested dimension."""


def _rng(seed):
    return np.random.Generator(np.random.Philox(key=np.uint64(seed)))


def derived_seed(seed, index):
    """Per-instance stream key: seed XOR index (both 64-bit)."""
    return int(np.uint64(seed) ^ np.uint64(index))


def abelian(dim):
    return LieAlgebra(np.zeros((dim, dim, dim)), name=f"abelian{dim}")


def heisenberg3():
    return LieAlgebra.from_brackets(3, [(0, 1, 2, 1.0)], name="heisenberg3")


def filiform4():
    return LieAlgebra.from_brackets(4, [(0, 1, 2, 1.0), (0, 2, 3, 1.0)],
                                    name="filiform_n4")


def semidirect(n_alg, derivs, der_rel_tol=1e-8, name=None):
    """Extend a Lie algebra by generators f_j acting by derivations.

    [f_j, x] = D_j(x) for x in the base, [f_j, f_k] = 0.  Each D_j must
    be a derivation of the base; the assembled constants are re-validated
    against the Jacobi identity, which fails when the derivations do not
    commute.
    """
    l = n_alg.dim
    derivs = [np.asarray(d, dtype=float) for d in derivs]
    for j, d in enumerate(derivs):
        if d.shape != (l, l):
            raise ValueError(f"derivation {j} has shape {d.shape}, expected ({l}, {l})")
        if not is_derivation(n_alg, d, der_rel_tol):
            raise ValueError(
                f"matrix {j} is not a derivation "
                f"(residual {leibniz_residual(n_alg, d):.3e})"
            )
    m = len(derivs)
    dim = l + m
    tensor = np.zeros((dim, dim, dim))
    tensor[:l, :l, :l] = np.triu(np.ones((l, l)), 1)[:, :, None] * n_alg.constants
    for j, d in enumerate(derivs):
        for i in range(l):
            tensor[i, l + j, :l] = -d[:, i]     # [e_i, f_j] = -D_j e_i
    return LieAlgebra(tensor, name=name)  # raises on Jacobi failure


def catalog(name):
    """Named instances with integer constants and the identity metric.

    abelian_n takes the dimension in place of n, e.g. abelian3.
    """
    if name.startswith("abelian"):
        tail = name[len("abelian"):].lstrip("_")
        if tail.isdigit() and int(tail) >= 1:
            return orthonormalize(abelian(int(tail)))
        raise ValueError(f"bad abelian catalog name {name!r}; use e.g. abelian3")
    builders = {
        "heisenberg3": heisenberg3,
        "filiform_n4": filiform4,
        "hyperbolic2": lambda: semidirect(abelian(1), [[[1.0]]], name="hyperbolic2"),
        "diag_split": lambda: semidirect(
            abelian(2), [np.diag([1.0, -1.0])], name="diag_split"),
        "euclid_motion": lambda: semidirect(
            abelian(2), [np.array([[0.0, -1.0], [1.0, 0.0]])], name="euclid_motion"),
        "grading_ext": lambda: semidirect(
            heisenberg3(), [np.diag([1.0, 1.0, 2.0])], name="grading_ext"),
    }
    if name not in builders:
        raise ValueError(f"unknown catalog name {name!r}; known: {', '.join(CATALOG_NAMES)}")
    return orthonormalize(builders[name]())


IN_SPAN_REL_TOL = 1e-11
NEW_DIR_REL_TOL = 1e-6


def _extend_closure(q, members, new_mats, cap):
    """Extend a bracket-closed orthonormal family by new matrices.

    q is the (k^2, d) column stack of the current members; both are left
    untouched.  Returns the extended (q, members), or None when the
    dimension would exceed cap or when a bracket falls in the numerical
    gray zone between "inside the span" and "a clean new direction".
    Gray-zone draws are simply re-drawn by the caller; the emitted
    instances stay well conditioned.
    """
    k = new_mats[0].shape[0]
    q = q.copy()
    members = list(members)
    pending = [np.asarray(m, dtype=float) for m in new_mats]
    while pending:
        v = pending.pop(0).ravel()
        r = v - q @ (q.T @ v)
        nr = float(np.sqrt(r @ r))
        scale = 1.0 + float(np.sqrt(v @ v))
        if nr <= IN_SPAN_REL_TOL * scale:
            continue
        if nr <= NEW_DIR_REL_TOL * scale:
            return None
        if len(members) + 1 > cap:
            return None
        unit = r / nr
        if q.shape[1]:
            unit = unit - q @ (q.T @ unit)
            unit = unit / float(np.sqrt(unit @ unit))
        new_mat = unit.reshape(k, k)
        for old in members:
            pending.append(old @ new_mat - new_mat @ old)
        q = np.hstack([q, unit[:, None]])
        members.append(new_mat)
    return q, members


def _constants_from_matrices(members, name):
    """Structure constants of a bracket-closed orthonormal matrix family."""
    d = len(members)
    stack = np.stack(members) if d else np.zeros((0, 1, 1))
    flat = stack.reshape(d, -1)
    tensor = np.zeros((d, d, d))
    for a in range(d - 1):
        for b in range(a + 1, d):
            br = members[a] @ members[b] - members[b] @ members[a]
            coeff = flat @ br.ravel()
            resid = br.ravel() - flat.T @ coeff
            if float(np.sqrt(resid @ resid)) > 1e-10 * (1.0 + linalg.frob(br)):
                raise GenerationError("span is not closed under the bracket")
            tensor[a, b, :] = coeff
    return LieAlgebra(tensor, name=name)


def _draw_triangular(k, rng, strict):
    m = rng.uniform(-1.0, 1.0, size=(k, k))
    keep = rng.random((k, k)) < rng.uniform(0.25, 1.0)
    m = np.triu(m * keep, 1 if strict else 0)
    return m


def _random_matrix_algebra(dim, seed, strict, name):
    rng = _rng(seed)
    kmin = 2
    while (kmin * (kmin - 1) // 2 if strict else kmin * (kmin + 1) // 2) < dim:
        kmin += 1
    for attempt in range(96):
        k = kmin + int(rng.integers(0, 3))
        q = np.zeros((k * k, 0))
        members: list[np.ndarray] = []
        for _ in range(6 * dim + 8):
            cand = _draw_triangular(k, rng, strict)
            if linalg.frob(cand) < 1e-12:
                continue
            trial = _extend_closure(q, members, [cand], cap=dim)
            if trial is None:
                continue
            q, members = trial
            if len(members) == dim:
                return _constants_from_matrices(members, name)
    raise GenerationError(f"could not sample a dimension-{dim} algebra (seed {seed})")


def random_solvable(dim, seed):
    """Seeded solvable Lie algebra of the exact dimension requested."""
    if not 2 <= dim <= 12:
        raise ValueError("dimension must be between 2 and 12")
    return _random_matrix_algebra(dim, seed, strict=False,
                                  name=f"random_solvable_{dim}_{seed}")


def random_nilpotent(dim, seed):
    """Seeded nilpotent Lie algebra of the exact dimension requested."""
    if not 2 <= dim <= 12:
        raise ValueError("dimension must be between 2 and 12")
    return _random_matrix_algebra(dim, seed, strict=True,
                                  name=f"random_nilpotent_{dim}_{seed}")


def random_metric(dim, seed):
    """Seeded SPD Gram matrix G = M'M + ridge * I with M uniform in [-1, 1]."""
    if dim < 1:
        raise ValueError("dimension must be positive")
    rng = _rng(seed)
    m = rng.uniform(-1.0, 1.0, size=(dim, dim))
    return InnerProduct(m.T @ m + METRIC_RIDGE * np.eye(dim))


def _commuting_normal_family(l, count, rng, style):
    """Pairwise-commuting normal operators on R^l, conjugated by one rotation.

    Coordinates split into 2x2 rotation blocks plus singles; each family
    member is a combination of per-block rotations (skew part) and
    per-block/single scalings (symmetric part).  style picks how much
    symmetric content the family gets:
      'skew'    -- rotations only (every member skew);
      'tilted'  -- one shared traceless symmetric direction;
      'generic' -- independent symmetric parts.
    """
    npairs = int(rng.integers(0, l // 2 + 1))
    singles = l - 2 * npairs
    gauss = rng.normal(size=(l, l))
    basis, _ = np.linalg.qr(gauss)
    if npairs == 0 and style != "generic":
        style = "skew" if style == "skew" else "tilted"
    shared_sym = None
    if style == "tilted":
        shared_sym = _traceless_profile(npairs, singles, rng)
    mats = []
    for _ in range(count):
        lam = np.zeros((l, l))
        spins = rng.uniform(-2.0, 2.0, size=npairs)
        if style == "skew":
            stretch = np.zeros(npairs + singles)
        elif style == "tilted":
            stretch = float(rng.uniform(0.5, 2.0)) * shared_sym
        else:
            stretch = rng.uniform(-2.0, 2.0, size=npairs + singles)
        for p in range(npairs):
            i = 2 * p
            lam[i, i] = lam[i + 1, i + 1] = stretch[p]
            lam[i, i + 1] = -spins[p]
            lam[i + 1, i] = spins[p]
        for s in range(singles):
            i = 2 * npairs + s
            lam[i, i] = stretch[npairs + s]
        mats.append(basis @ lam @ basis.T)
    return mats


def _traceless_profile(npairs, singles, rng):
    profile = rng.uniform(-2.0, 2.0, size=npairs + singles)
    weights = np.concatenate([2.0 * np.ones(npairs), np.ones(singles)])
    if weights.size:
        profile -= weights * float(profile @ weights) / float(weights @ weights)
    return profile


def random_semidirect(dim, seed):
    """Seeded semidirect instance: base algebra plus derivation generators.

    Abelian bases get commuting normal families (reaching all three
    trichotomy cases under the identity metric); nilpotent bases get a
    single derivation drawn from the derivation space.
    """
    if dim < 2:
        raise ValueError("dimension must be at least 2")
    rng = _rng(seed)
    use_nilpotent = dim >= 4 and rng.random() < 0.4
    if use_nilpotent:
        # one generator over a nilpotent base keeps Jacobi exact
        base = random_nilpotent(dim - 1, derived_seed(seed, 0x62617365))
        ds = derivation_algebra(base)
        coeff = rng.normal(size=ds.dim_der)
        derivs = [np.einsum("a,aij->ij", coeff, ds.der_basis)]
    else:
        m = 1 + int(rng.integers(0, min(3, dim - 1)))
        l = dim - m
        base = abelian(l)
        style = ["skew", "tilted", "generic"][int(rng.integers(0, 3))]
        derivs = _commuting_normal_family(l, m, rng, style)
    return semidirect(base, derivs, name=f"random_semidirect_{dim}_{seed}")


@dataclass(frozen=True)
class GeneratorSpec:
    """Reproducible description of one generated metric instance.

    family is one of catalog / random_nilpotent / random_solvable /
    semidirect; params carries the catalog name and the metric choice
    ('identity' or 'random'; the random-metric stream uses seed XOR
    0x6d65747269).  Identical specs produce bit-identical output.
    """

    family: str
    dim: int
    seed: int
    params: dict = field(default_factory=dict)


METRIC_STREAM_SALT = 0x6D65747269  # 'metri'


def generate(spec):
    """Build the MetricLieAlgebra a GeneratorSpec describes."""
    if spec.family == "catalog":
        m = catalog(spec.params["name"])
        alg = m.alg
    elif spec.family == "random_nilpotent":
        alg = random_nilpotent(spec.dim, spec.seed)
    elif spec.family == "random_solvable":
        alg = random_solvable(spec.dim, spec.seed)
    elif spec.family == "semidirect":
        alg = random_semidirect(spec.dim, spec.seed)
    else:
        raise ValueError(f"unknown generator family {spec.family!r}")
    metric_kind = spec.params.get("metric", "identity")
    if metric_kind == "identity":
        metric = InnerProduct.identity(alg.dim)
    elif metric_kind == "random":
        metric = random_metric(alg.dim, derived_seed(spec.seed, METRIC_STREAM_SALT))
    else:
        raise ValueError(f"unknown metric kind {metric_kind!r}")
    return MetricLieAlgebra(alg, metric)
