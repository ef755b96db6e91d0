"""Trichotomy of Ricci signatures for solvable metric Lie algebras.

With n = [s, s] and a its orthogonal complement, exactly one of the
following holds:

  case 1: n and a are abelian and every generator of a acts on n by a
          skew-symmetric operator -- the Ricci operator is zero;
  case 2: n and a are abelian, every generator acts by a traceless
          normal operator, and the skew-acting generators form a
          subspace of codimension one in a -- exactly one negative
          eigenvalue, all others zero;
  case 3: anything else -- at least two negative eigenvalues.

The structural tests decide the case label; the spectral signature of
the Ricci operator is computed independently and must agree with the
label's invariants.  A mismatch means mis-set tolerances or a genuine
bug, so it raises instead of picking a side.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebra import Subspace, structural_predicates
from .metric import operator_predicates
from .ricci import RicciReport, adapted_decomposition, eigen_signature, ricci_direct

STRUCT_TOL = 1e-9


class TrichotomyCase(enum.Enum):
    CASE1_FLAT = "case1_flat"
    CASE2_ONE_NEGATIVE = "case2_one_negative"
    CASE3_TWO_NEGATIVE = "case3_two_negative"


@dataclass(frozen=True)
class GeneratorWitness:
    """Predicates of one a-generator acting on the derived algebra."""
    is_skew: bool
    is_normal: bool
    is_traceless: bool


@dataclass(frozen=True)
class ClassificationWitnesses:
    n_abelian: bool
    a_abelian: bool
    generators: tuple[GeneratorWitness, ...]
    skew_subspace: Subspace      # coordinates in the a-generator basis
    codim_skew: int
    all_traceless: bool
    spectral_signature: tuple[int, int, int]
    tol: float
    rank_rel_tol: float


@dataclass(frozen=True)
class Classification:
    case: TrichotomyCase
    witnesses: ClassificationWitnesses
    report: RicciReport
    consistent: bool


class RouteDisagreement(RuntimeError):
    """Structural case label and spectral signature contradict each other."""

    def __init__(self, case, witnesses, report):
        self.case = case
        self.witnesses = witnesses
        self.report = report
        super().__init__(
            f"structural case {case.value} is inconsistent with spectral "
            f"signature {witnesses.spectral_signature} "
            f"(zero band {report.zero_band:.3e})"
        )


def _case_matches_signature(case, signature, dim):
    n_neg, n_zero, _ = signature
    if case is TrichotomyCase.CASE1_FLAT:
        return signature == (0, dim, 0)
    if case is TrichotomyCase.CASE2_ONE_NEGATIVE:
        return signature == (1, dim - 1, 0)
    return n_neg >= 2


def classify(m, tol=STRUCT_TOL, zero_tol=None, rank_rel_tol=linalg.RANK_REL_TOL,
             decomposition=None):
    """Decide the trichotomy case of a solvable metric Lie algebra.

    The structural route is authoritative for the label; the spectral
    signature is a mandatory cross-check.  Raises RouteDisagreement when
    the two contradict each other, and ValueError for non-solvable input.
    A precomputed adapted decomposition can be passed to avoid repeating
    the split.
    """
    if not structural_predicates(m.alg).is_solvable:
        raise ValueError("classification requires a solvable algebra")
    d = decomposition
    if d is None:
        d = adapted_decomposition(m, rank_rel_tol, check_solvable=False)
    l, mm = d.n_dim, d.a_dim
    scale = 1.0 + m.onb_algebra.max_abs
    n_abelian = d.d_blocks.size == 0 or float(np.max(np.abs(d.d_blocks))) <= tol * scale
    a_abelian = d.b_blocks.size == 0 or float(np.max(np.abs(d.b_blocks))) <= tol * scale
    generators = tuple(
        GeneratorWitness(p.is_skew, p.is_normal, p.is_traceless)
        for p in (operator_predicates(a, tol) for a in d.a_blocks)
    )
    if mm and l:
        sym_map = np.stack([linalg.sym_part(a).ravel() for a in d.a_blocks], axis=1)
        skew_basis = linalg.nullspace(sym_map, rank_rel_tol,
                                      abs_floor=rank_rel_tol * scale)
    else:
        skew_basis = np.eye(mm)
    skew_subspace = Subspace(skew_basis)
    codim = mm - skew_subspace.dim
    all_traceless = d.t <= tol * m.dim * scale
    if n_abelian and a_abelian and codim == 0:
        case = TrichotomyCase.CASE1_FLAT
    elif (n_abelian and a_abelian and codim == 1 and all_traceless
          and all(g.is_normal and g.is_traceless for g in generators)):
        case = TrichotomyCase.CASE2_ONE_NEGATIVE
    else:
        case = TrichotomyCase.CASE3_TWO_NEGATIVE
    report = ricci_direct(m) if zero_tol is None else ricci_direct(m, zero_tol)
    witnesses = ClassificationWitnesses(
        n_abelian=bool(n_abelian), a_abelian=bool(a_abelian),
        generators=generators, skew_subspace=skew_subspace,
        codim_skew=int(codim), all_traceless=bool(all_traceless),
        spectral_signature=report.signature, tol=tol, rank_rel_tol=rank_rel_tol,
    )
    if not _case_matches_signature(case, report.signature, m.dim):
        raise RouteDisagreement(case, witnesses, report)
    return Classification(case=case, witnesses=witnesses, report=report,
                          consistent=True)


def verify_nonunimodular(m, tol=STRUCT_TOL):
    """Check that a non-unimodular solvable algebra lands in case 3.

    Every inner product on such an algebra yields at least two negative
    Ricci eigenvalues.
    """
    preds = structural_predicates(m.alg)
    if not preds.is_solvable or preds.is_unimodular:
        raise ValueError("expected a non-unimodular solvable algebra")
    result = classify(m, tol)
    return (result.case is TrichotomyCase.CASE3_TWO_NEGATIVE
            and result.report.n_negative >= 2)


@dataclass(frozen=True)
class CorollaryChecks:
    """Consequences of the trichotomy on one classified instance."""

    positive_implies_two_negative: bool   # n_pos >= 1 forces n_neg >= 2
    has_positive: bool
    noncommutative_a_implies_case3: bool  # a not a commutative subalgebra forces case 3
    a_commutative: bool


def verify_corollaries(m, tol=STRUCT_TOL):
    result = classify(m, tol)
    n_neg, _, n_pos = result.report.signature
    has_positive = n_pos >= 1
    pos_ok = (not has_positive) or n_neg >= 2
    a_comm = result.witnesses.a_abelian
    noncomm_ok = a_comm or result.case is TrichotomyCase.CASE3_TWO_NEGATIVE
    return CorollaryChecks(
        positive_implies_two_negative=bool(pos_ok),
        has_positive=bool(has_positive),
        noncommutative_a_implies_case3=bool(noncomm_ok),
        a_commutative=bool(a_comm),
    )
