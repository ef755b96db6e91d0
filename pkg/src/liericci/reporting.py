"""File formats and analysis reports.

Input files (format version 1) are JSON objects:

    {
      "format_version": 1,            // optional
      "name": "heisenberg3",          // optional
      "dim": 3,
      "brackets": [[0, 1, 2, 1.0]],   // [i, j, k, value], 0-based, i < j
      "metric": [[..], [..], [..]]    // optional row-major dim x dim gram
    }

Entries with i > j are tolerated on read and folded into the i < j slot;
an inconsistent pair is a validation error naming the triple.  Reports
are plain JSON-able dicts: serializing and parsing one is a lossless
round trip (floats survive exactly).  Text rendering uses six
significant digits; JSON keeps full precision.
"""

from __future__ import annotations

import json

import numpy as np

from . import __version__ as _version
from . import linalg
from .algebra import LieAlgebra, structural_predicates, validate_jacobi
from .classifier import RouteDisagreement, classify
from .derivations import derivation_algebra, derivation_identities
from .metric import InnerProduct, MetricLieAlgebra
from .ricci import (
    ZERO_REL_TOL,
    adapted_decomposition,
    ricci_direct,
    ricci_blocks,
    ricci_nilpotent,
)

FORMAT_VERSION = 1
REPORT_SCHEMA = "liericci-analysis@1"


class InputFormatError(ValueError):
    """The input file cannot be parsed into an algebra description."""


class InputValidationError(ValueError):
    """The parsed description violates a structural requirement."""


def parse_algebra_dict(data):
    """(LieAlgebra untested for Jacobi, InnerProduct or None) from a file dict.

    Raises InputFormatError for malformed data and InputValidationError
    for index or antisymmetry violations; Jacobi and positive
    definiteness are checked by the caller so it can report residuals.
    """
    if not isinstance(data, dict):
        raise InputFormatError("top-level value must be an object")
    version = data.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise InputFormatError(f"unsupported format_version {version}")
    try:
        dim = int(data["dim"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError("missing or malformed 'dim'") from exc
    if dim < 1:
        raise InputFormatError("'dim' must be a positive integer")
    brackets = data.get("brackets", [])
    if not isinstance(brackets, list):
        raise InputFormatError("'brackets' must be a list of [i, j, k, value]")
    tensor = np.zeros((dim, dim, dim))
    seen = {}
    for entry in brackets:
        if not isinstance(entry, (list, tuple)) or len(entry) != 4:
            raise InputFormatError(f"bad bracket entry {entry!r}")
        i, j, k = (int(entry[0]), int(entry[1]), int(entry[2]))
        value = float(entry[3])
        if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
            raise InputValidationError(f"bracket index out of range: [{i}, {j}, {k}]")
        if i == j:
            if value != 0.0:
                raise InputValidationError(
                    f"antisymmetry violated at [{i}, {j}, {k}]: [x, x] must vanish"
                )
            continue
        # fold long-form rows onto the i < j storage slot
        si, sj, sv = (i, j, value) if i < j else (j, i, -value)
        key = (si, sj, k)
        if key in seen and seen[key] != sv:
            raise InputValidationError(
                f"antisymmetry violated at [{i}, {j}, {k}]: "
                f"conflicts with entry for [{si}, {sj}, {k}]"
            )
        seen[key] = sv
        tensor[si, sj, k] = sv
    alg = LieAlgebra(tensor, name=data.get("name"), validate=False)
    metric = None
    if data.get("metric") is not None:
        gram = np.asarray(data["metric"], dtype=float)
        if gram.shape != (dim, dim):
            raise InputFormatError(f"metric must be {dim}x{dim}, got {gram.shape}")
        metric = gram  # SPD check deferred to the caller
    return alg, metric


def load_algebra_file(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    return parse_algebra_dict(data)


def algebra_to_dict(alg, metric=None):
    """Input-file dict for an algebra (and optional InnerProduct/gram)."""
    out = {
        "format_version": FORMAT_VERSION,
        "dim": alg.dim,
        "brackets": [[i, j, k, v] for i, j, k, v in alg.bracket_entries()],
    }
    if alg.name:
        out["name"] = alg.name
    if metric is not None:
        gram = metric.gram if isinstance(metric, InnerProduct) else np.asarray(metric)
        out["metric"] = [[float(x) for x in row] for row in gram]
    return out


def _matrix_list(a):
    return [[float(x) for x in row] for row in np.asarray(a, dtype=float)]


def build_report(m, zero_tol=ZERO_REL_TOL, source=None, seed=None,
                 with_derivations=True):
    """Full analysis of a metric Lie algebra as a JSON-able dict.

    Non-solvable algebras get the Ricci spectrum only, with the
    classification marked not applicable.
    """
    alg = m.alg
    preds = structural_predicates(alg)
    report = {
        "schema": REPORT_SCHEMA,
        "tool_version": _version,
        "source": source or {},
        "algebra": {
            "dim": alg.dim,
            "name": alg.name,
            "brackets": [[i, j, k, v] for i, j, k, v in alg.bracket_entries()],
            "jacobi_residual": alg.jacobi_residual,
            "jacobi_tol": alg.jacobi_tol,
        },
        "metric": _matrix_list(m.metric.gram),
        "predicates": {
            "is_abelian": preds.is_abelian,
            "is_nilpotent": preds.is_nilpotent,
            "is_solvable": preds.is_solvable,
            "is_unimodular": preds.is_unimodular,
            "nilpotency_degree": preds.nilpotency_degree,
        },
        "tolerances": {
            "zero_tol": zero_tol,
            "rank_rel_tol": linalg.RANK_REL_TOL,
            "jacobi_rel_tol": alg.jacobi_rel_tol,
        },
    }
    if seed is not None:
        report["seed"] = seed
    ric = ricci_direct(m, zero_tol)
    report["ricci"] = {
        "matrix": _matrix_list(ric.ricci),
        "eigenvalues": [float(x) for x in ric.eigenvalues],
        "signature": list(ric.signature),
        "scalar_curvature": ric.scalar_curvature,
        "zero_tol": ric.zero_tol,
        "zero_band": ric.zero_band,
    }
    if preds.is_solvable:
        d = adapted_decomposition(m, check_solvable=False)
        blocks = ricci_blocks(d)
        u = d.basis
        aligned = u.T @ ric.ricci @ u
        deviation = linalg.frob(aligned - blocks.assembled) / (1.0 + linalg.frob(aligned))
        report["ricci"]["block_route_deviation"] = deviation
        if preds.is_nilpotent:
            nil = ricci_nilpotent(m, zero_tol)
            gap = linalg.frob(nil.ricci - ric.ricci) / (1.0 + linalg.frob(ric.ricci))
            report["ricci"]["nilpotent_route_deviation"] = gap
        try:
            cls = classify(m, zero_tol=zero_tol, decomposition=d)
            report["classification"] = {
                "applicable": True,
                "case": cls.case.value,
                "consistent": cls.consistent,
                "witnesses": {
                    "n_abelian": cls.witnesses.n_abelian,
                    "a_abelian": cls.witnesses.a_abelian,
                    "codim_skew": cls.witnesses.codim_skew,
                    "all_traceless": cls.witnesses.all_traceless,
                    "generators": [
                        {"is_skew": g.is_skew, "is_normal": g.is_normal,
                         "is_traceless": g.is_traceless}
                        for g in cls.witnesses.generators
                    ],
                    "spectral_signature": list(cls.witnesses.spectral_signature),
                },
            }
        except RouteDisagreement as exc:
            report["classification"] = {
                "applicable": True,
                "case": exc.case.value,
                "consistent": False,
                "error": str(exc),
            }
    else:
        report["classification"] = {
            "applicable": False,
            "reason": "algebra is not solvable",
        }
    if with_derivations and preds.is_nilpotent and not preds.is_abelian:
        report["derivation_summary"] = _derivation_summary(m)
    return report


def _derivation_summary(m):
    """Worst residuals of the derivation identities over the basis of Der."""
    ds = derivation_algebra(m)
    summary = {
        "dim_der": ds.dim_der,
        "dim_inner": ds.dim_inner,
        "max_inner_self_trace": 0.0,
        "max_inner_cross_trace": 0.0,
        "min_sym_lower_bound_slack": float("inf"),
        "series_preserved": True,
    }
    for a in ds.der_basis:
        ident = derivation_identities(ds, a)
        summary["max_inner_self_trace"] = max(
            summary["max_inner_self_trace"], ident.inner_self_trace)
        summary["max_inner_cross_trace"] = max(
            summary["max_inner_cross_trace"], ident.inner_cross_trace)
        summary["min_sym_lower_bound_slack"] = min(
            summary["min_sym_lower_bound_slack"], ident.sym_lower_bound_slack)
    from .derivations import filtration_membership
    summary["series_preserved"] = all(
        filtration_membership(ds, a).in_l1 for a in ds.der_basis)
    if not np.isfinite(summary["min_sym_lower_bound_slack"]):
        summary["min_sym_lower_bound_slack"] = 0.0
    return summary


def serialize_report(report):
    """Canonical JSON text; byte-identical for identical report dicts."""
    return json.dumps(report, sort_keys=True, indent=2, allow_nan=False) + "\n"


def parse_report(text):
    return json.loads(text)


def _sig(x):
    return f"{x:.6g}"


def render_text(report):
    """Six-significant-digit human-readable rendering of a report."""
    lines = []
    alg = report["algebra"]
    name = alg.get("name") or "(unnamed)"
    lines.append(f"algebra {name}  dim {alg['dim']}  [tool {report['tool_version']}]")
    lines.append(f"  jacobi residual {_sig(alg['jacobi_residual'])}"
                 f" (tol {_sig(alg['jacobi_tol'])})")
    preds = report["predicates"]
    flags = [key.removeprefix("is_") for key in
             ("is_abelian", "is_nilpotent", "is_solvable", "is_unimodular")
             if preds[key]]
    lines.append(f"  predicates: {', '.join(flags) if flags else 'none'}"
                 + (f", nilpotency degree {preds['nilpotency_degree']}"
                    if preds["nilpotency_degree"] is not None else ""))
    ric = report["ricci"]
    eigs = ", ".join(_sig(x) for x in ric["eigenvalues"])
    lines.append(f"  ricci eigenvalues: {eigs}")
    neg, zero, pos = ric["signature"]
    lines.append(f"  signature: ({neg} negative, {zero} zero, {pos} positive)")
    lines.append(f"  scalar curvature: {_sig(ric['scalar_curvature'])}"
                 f"   zero band {_sig(ric['zero_band'])}")
    if "block_route_deviation" in ric:
        lines.append(f"  block-route deviation: {_sig(ric['block_route_deviation'])}")
    cls = report["classification"]
    if cls["applicable"]:
        lines.append(f"  case: {cls['case']}  consistent: {cls['consistent']}")
    else:
        lines.append(f"  classification not applicable: {cls['reason']}")
    if "derivation_summary" in report:
        ds = report["derivation_summary"]
        lines.append(f"  derivations: dim {ds['dim_der']} (inner {ds['dim_inner']}),"
                     f" worst slack {_sig(ds['min_sym_lower_bound_slack'])}")
    return "\n".join(lines) + "\n"


def validate_input(alg, gram, jacobi_rel_tol=None):
    """Validation verdict for a parsed (algebra, gram) pair.

    Returns (ok, findings): findings are human-readable strings for every
    failed check (Jacobi residual, metric symmetry / positivity).
    """
    findings = []
    tol = None
    if jacobi_rel_tol is not None:
        tol = jacobi_rel_tol * (1.0 + alg.max_abs) ** 3
    ok, residual = validate_jacobi(alg, tol)
    if not ok:
        findings.append(
            f"Jacobi identity fails: residual {residual:.6e} above tolerance")
    if gram is not None:
        try:
            InnerProduct(gram)
        except ValueError as exc:
            findings.append(f"metric rejected: {exc}")
    return not findings, findings
