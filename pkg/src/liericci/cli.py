"""Command-line interface: validate, analyze, verify.

    liericci validate FILE
    liericci analyze (--file F | --catalog NAME | --random FAMILY --dim D --seed S)
                     [--metric-file G | --metric identity|random]
                     [--tol-zero X] [--format json|text]
    liericci verify --suite NAME [--count N] [--dims A..B] [--seed S]
                    [--out-dir DIR] [--format json|text]
    liericci verify --replay FILE

Exit codes: 0 success, 1 validation or property failure, 2 usage/parse
error.  Reports echo every tolerance and seed, and identical seeds give
byte-identical JSON output.

Suites: trichotomy (structural case label vs spectral signature),
non-unimodular (at least two negative eigenvalues), nilpotent (same, for
non-abelian nilpotent algebras), lemmas (derivation and trace
identities), interlacing (eigenvalues under row/column deletion),
route-agreement (the three Ricci formulas against each other).  The
aliases theorem1 / theorem2 / theorem3 map to the first three.

Per-instance randomness derives from the campaign seed as
seed XOR (dim << 44 | index << 12 | attempt << 1 | metric_bit); the
generator module documents the underlying Philox streams.  Environment
variables LIERICCI_ZERO_TOL and LIERICCI_RANK_TOL override the default
tolerances; command-line flags win over both.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__, linalg
from .algebra import structural_predicates
from .classifier import RouteDisagreement, TrichotomyCase, classify
from .derivations import (
    derivation_algebra,
    derivation_identities,
    filtration_membership,
    nilpotent_trace_gap,
    ricci_derivation_pairing,
)
from .generator import (
    GeneratorSpec,
    catalog,
    derived_seed,
    generate,
    random_metric,
    random_nilpotent,
    random_semidirect,
    random_solvable,
    _rng,
)
from .metric import InnerProduct, MetricLieAlgebra, operator_predicates
from .reporting import (
    InputFormatError,
    InputValidationError,
    algebra_to_dict,
    build_report,
    load_algebra_file,
    parse_algebra_dict,
    render_text,
    serialize_report,
    validate_input,
)
from .ricci import (
    ZERO_REL_TOL,
    adapted_decomposition,
    codim1_reduction,
    eigen_signature,
    r2_pairing_trace,
    ricci_blocks,
    ricci_direct,
    ricci_nilpotent,
)

SUITE_ALIASES = {
    "theorem1": "trichotomy",
    "theorem2": "non-unimodular",
    "theorem3": "nilpotent",
}
SUITES = ("trichotomy", "non-unimodular", "nilpotent", "lemmas",
          "interlacing", "route-agreement")

RANDOM_FAMILIES = ("random_solvable", "random_nilpotent", "semidirect")


def _env_float(name, default):
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        raise SystemExit(f"bad value for {name}: {raw!r}")


def _instance_seed(seed, dim, index, attempt=0, metric=False):
    return derived_seed(seed, (dim << 44) | (index << 12) | (attempt << 1)
                        | (1 if metric else 0))


def _parse_dims(spec):
    try:
        if ".." in spec:
            lo, hi = spec.split("..")
            dims = list(range(int(lo), int(hi) + 1))
        else:
            dims = [int(spec)]
    except ValueError:
        raise SystemExit(f"bad --dims value {spec!r}; expected e.g. 2..6")
    if not dims or dims[0] < 2:
        raise SystemExit("--dims must start at 2 or higher")
    return dims


def _print_report(report, fmt, stream=None):
    stream = stream or sys.stdout
    if fmt == "json":
        stream.write(serialize_report(report))
    else:
        stream.write(render_text(report))


# ---------------------------------------------------------------------------
# validate / analyze
# ---------------------------------------------------------------------------

def cmd_validate(args):
    try:
        alg, gram = load_algebra_file(args.file)
    except InputValidationError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return 1
    except InputFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    ok, findings = validate_input(alg, gram)
    verdict = {
        "schema": "liericci-validate@1",
        "tool_version": __version__,
        "file": args.file,
        "dim": alg.dim,
        "jacobi_residual": alg.jacobi_residual,
        "jacobi_tol": alg.jacobi_tol,
        "valid": ok,
        "findings": findings,
    }
    if args.format == "json":
        sys.stdout.write(serialize_report(verdict))
    else:
        status = "valid" if ok else "INVALID"
        print(f"{args.file}: {status} (jacobi residual {alg.jacobi_residual:.6g})")
        for f in findings:
            print(f"  - {f}")
    return 0 if ok else 1


def _resolve_metric(args, alg, seed):
    if args.metric_file:
        with open(args.metric_file, "r", encoding="utf-8") as fh:
            gram = np.asarray(json.load(fh), dtype=float)
        return InnerProduct(gram)
    if args.metric == "random":
        return random_metric(alg.dim, derived_seed(seed, 0x6D65747269))
    return InnerProduct.identity(alg.dim)


def cmd_analyze(args):
    zero_tol = args.tol_zero if args.tol_zero is not None else \
        _env_float("LIERICCI_ZERO_TOL", ZERO_REL_TOL)
    seed = args.seed or 0
    source = {}
    if args.file:
        try:
            alg, gram = load_algebra_file(args.file)
        except (InputFormatError, InputValidationError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        ok, findings = validate_input(alg, gram)
        if not ok:
            for f in findings:
                print(f"invalid input: {f}", file=sys.stderr)
            return 1
        metric = InnerProduct(gram) if gram is not None else _resolve_metric(args, alg, seed)
        source = {"kind": "file", "path": args.file}
    elif args.catalog:
        try:
            m0 = catalog(args.catalog)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        alg = m0.alg
        metric = _resolve_metric(args, alg, seed)
        source = {"kind": "catalog", "name": args.catalog}
    else:
        spec = GeneratorSpec(family=args.random, dim=args.dim, seed=seed,
                             params={"metric": args.metric})
        try:
            m0 = generate(spec)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        alg, metric = m0.alg, m0.metric
        source = {"kind": "random", "family": args.random,
                  "dim": args.dim, "seed": seed, "metric": args.metric}
    m = MetricLieAlgebra(alg, metric)
    report = build_report(m, zero_tol=zero_tol, source=source,
                          seed=seed if source.get("kind") == "random" else None)
    _print_report(report, args.format)
    cls = report.get("classification", {})
    return 0 if cls.get("consistent", True) else 1


# ---------------------------------------------------------------------------
# verify campaign
# ---------------------------------------------------------------------------

class Violation(Exception):
    """A property check failed on one instance."""


def _draw_solvable(seed, dim, index, attempt=0, want=None, max_attempts=64):
    """Deterministic filtered draw; want(alg) -> bool narrows the family."""
    for j in range(attempt, attempt + max_attempts):
        alg = random_solvable(dim, _instance_seed(seed, dim, index, j))
        if want is None or want(alg):
            return alg, j
    raise RuntimeError(f"no admissible draw after {max_attempts} attempts")


def _metric_for(seed, dim, index, attempt):
    return random_metric(dim, _instance_seed(seed, dim, index, attempt, metric=True))


def _check_trichotomy(m, residuals):
    d = adapted_decomposition(m, check_solvable=False)
    cls = classify(m, decomposition=d)  # raises RouteDisagreement on mismatch
    residuals[f"case_{cls.case.value}"] = residuals.get(f"case_{cls.case.value}", 0) + 1
    scal = cls.report.scalar_curvature
    if cls.case is TrichotomyCase.CASE1_FLAT:
        if abs(scal) > cls.report.zero_band * m.dim:
            raise Violation(f"flat case with scalar curvature {scal:.3e}")
    elif scal >= 0.0:
        raise Violation(f"non-flat case with scalar curvature {scal:.3e}")
    return cls


def _suite_trichotomy(seed, dims, count, record):
    for dim in dims:
        for i in range(count):
            alg, att = _draw_solvable(seed, dim, i)
            m = MetricLieAlgebra(alg, _metric_for(seed, dim, i, att))
            with record(m, dim, i) as residuals:
                _check_trichotomy(m, residuals)
            # mix in semidirect instances to reach all three cases
            if i % 4 == 0:
                sd = random_semidirect(dim, _instance_seed(seed, dim, i, 101))
                msd = MetricLieAlgebra(sd)
                with record(msd, dim, i) as residuals:
                    _check_trichotomy(msd, residuals)


def _suite_non_unimodular(seed, dims, count, record):
    for dim in dims:
        for i in range(count):
            alg, att = _draw_solvable(
                seed, dim, i,
                want=lambda a: not structural_predicates(a).is_unimodular)
            m = MetricLieAlgebra(alg, _metric_for(seed, dim, i, att))
            with record(m, dim, i) as residuals:
                cls = classify(m)
                if cls.report.n_negative < 2:
                    raise Violation(
                        f"non-unimodular with signature {cls.report.signature}")
                residuals["min_n_negative"] = min(
                    residuals.get("min_n_negative", 99), cls.report.n_negative)


def _suite_nilpotent(seed, dims, count, record):
    for dim in dims:
        if dim < 3:
            continue
        for i in range(count):
            for j in range(64):
                alg = random_nilpotent(dim, _instance_seed(seed, dim, i, j))
                if not structural_predicates(alg).is_abelian:
                    break
            else:
                raise RuntimeError("no non-abelian nilpotent draw")
            m = MetricLieAlgebra(alg, _metric_for(seed, dim, i, j))
            with record(m, dim, i) as residuals:
                cls = classify(m)
                if cls.case is not TrichotomyCase.CASE3_TWO_NEGATIVE \
                        or cls.report.n_negative < 2:
                    raise Violation(
                        f"non-abelian nilpotent landed in {cls.case.value} "
                        f"with signature {cls.report.signature}")
                residuals["min_n_negative"] = min(
                    residuals.get("min_n_negative", 99), cls.report.n_negative)


def _random_orthogonal(rng, n):
    q, r = np.linalg.qr(rng.normal(size=(n, n)))
    return q * np.sign(np.diag(r))


def _check_derivation_battery(m, ds, rng, residuals):
    tol = 1e-9
    coeff = rng.normal(size=ds.dim_der)
    nrm = float(np.sqrt(coeff @ coeff))
    if ds.dim_der == 0 or nrm == 0.0:
        return
    a = np.einsum("c,cij->ij", coeff / nrm, ds.der_basis)
    ident = derivation_identities(ds, a)
    residuals["max_inner_self_trace"] = max(
        residuals.get("max_inner_self_trace", 0.0), ident.inner_self_trace)
    residuals["max_inner_cross_trace"] = max(
        residuals.get("max_inner_cross_trace", 0.0), ident.inner_cross_trace)
    residuals["min_sym_slack"] = min(
        residuals.get("min_sym_slack", 0.0), ident.sym_lower_bound_slack)
    if ident.inner_self_trace > tol or ident.inner_cross_trace > tol:
        raise Violation("projection trace identity failed")
    if ident.sym_lower_bound_slack < -tol:
        raise Violation(
            f"symmetric-part bound violated: slack {ident.sym_lower_bound_slack:.3e}")
    if ident.sym_bound_tight != ident.outer_part_skew:
        raise Violation("tightness of the symmetric-part bound mis-detected")
    if ident.inner_nilpotent_gap > 1e-10:
        raise Violation("inner part failed the nilpotent trace identity")
    if ident.shift_pairing_max is not None and ident.shift_pairing_max > 1e-10:
        raise Violation("slice-preserving operator not orthogonal to shifts")
    if ident.adjoint_is_derivation and ident.adjoint_in_l2 is False:
        raise Violation("adjoint derivation does not preserve the slices")
    value, adj = ricci_derivation_pairing(m, a)
    residuals["min_ricci_pairing"] = min(
        residuals.get("min_ricci_pairing", 0.0), value)
    if value < -tol:
        raise Violation(f"Ricci pairing negative: {value:.3e}")
    if (value <= tol) != adj:
        raise Violation("Ricci pairing equality case mis-detected")


def _check_structure_lemmas(ds, residuals):
    for a in ds.der_basis:
        mem = filtration_membership(ds, a)
        residuals["max_series_residual"] = max(
            residuals.get("max_series_residual", 0.0), mem.residual_l1)
        if mem.residual_l1 > 1e-10 * (1.0 + linalg.frob(a)):
            raise Violation("derivation does not preserve the series")
    for a in ds.inner_basis:
        mem = filtration_membership(ds, a)
        residuals["max_shift_residual"] = max(
            residuals.get("max_shift_residual", 0.0), mem.residual_l3)
        if mem.residual_l3 > 1e-10 * (1.0 + linalg.frob(a)):
            raise Violation("inner derivation does not shift the series")


def _check_complement_form(seed, dim, index, attempt, residuals):
    alg, att = _draw_solvable(seed, dim, index, attempt)
    m = MetricLieAlgebra(alg, _metric_for(seed, dim, index, att + 7))
    d = adapted_decomposition(m, check_solvable=False)
    if d.a_dim == 0:
        return
    rng = _rng(_instance_seed(seed, dim, index, att + 9))
    ric = ricci_direct(m)
    coeff = rng.normal(size=d.a_dim)
    x = d.f_basis @ coeff
    x = x / float(np.sqrt(x @ x))
    value = ric.form(x, x)
    residuals["max_complement_form"] = max(
        residuals.get("max_complement_form", -np.inf), value)
    if value > 1e-9:
        raise Violation(f"Ricci form positive on the complement: {value:.3e}")
    if abs(value) <= 1e-9:
        ad_x = m.onb_algebra.ad_matrix(x)
        if not operator_predicates(ad_x, 1e-7).is_skew:
            raise Violation("zero Ricci form but ad(x) is not skew")


def _suite_lemmas(seed, dims, count, record):
    for dim in dims:
        ndim = max(dim, 3)
        for i in range(count):
            for j in range(64):
                alg = random_nilpotent(ndim, _instance_seed(seed, dim, i, j))
                if not structural_predicates(alg).is_abelian:
                    break
            m = MetricLieAlgebra(alg)
            rng = _rng(_instance_seed(seed, dim, i, 97))
            with record(m, dim, i) as residuals:
                ds = derivation_algebra(m)
                if ds.dim_inner >= ds.dim_der:
                    raise Violation("inner derivations do not sit strictly inside")
                _check_structure_lemmas(ds, residuals)
                for _ in range(3):
                    _check_derivation_battery(m, ds, rng, residuals)
                # trace identity for an arbitrary nilpotent matrix
                strict = np.triu(rng.uniform(-1, 1, (ndim, ndim)), 1)
                basis = _random_orthogonal(rng, ndim)
                gap = nilpotent_trace_gap(basis @ strict @ basis.T)
                residuals["max_nilpotent_gap"] = max(
                    residuals.get("max_nilpotent_gap", 0.0), gap)
                if gap > 1e-10 * (1.0 + float(np.sum(strict * strict))):
                    raise Violation(f"nilpotent trace identity off by {gap:.3e}")
                _check_complement_form(seed, dim, i, 23, residuals)


def _suite_interlacing(seed, dims, count, record):
    for dim in dims:
        n = min(max(dim, 2), 10)
        for i in range(count):
            rng = _rng(_instance_seed(seed, n, i))
            sym = linalg.sym_part(rng.uniform(-1.0, 1.0, (n + 1, n + 1)))
            with record(None, n, i) as residuals:
                outer = linalg.symmetric_eigenvalues(sym)
                inner = linalg.symmetric_eigenvalues(sym[:-1, :-1])
                slack = linalg.interlacing_slack(outer, inner)
                residuals["min_slack"] = min(
                    residuals.get("min_slack", np.inf), slack)
                if slack < -1e-10 * (1.0 + linalg.frob(sym)):
                    raise Violation(f"interlacing violated by {slack:.3e}")
                # definite principal submatrices force matching eigenvalues
                keep = sorted(rng.choice(n + 1, size=rng.integers(1, n + 1),
                                         replace=False))
                sub = sym[np.ix_(keep, keep)]
                sub_eigs = linalg.symmetric_eigenvalues(sub)
                band = 1e-12 * (1.0 + linalg.frob(sub))
                if np.all(sub_eigs > band):
                    if int(np.sum(outer > 0)) < len(keep):
                        raise Violation("positive-definite submatrix undercounted")
                if np.all(sub_eigs < -band):
                    if int(np.sum(outer < 0)) < len(keep):
                        raise Violation("negative-definite submatrix undercounted")


def _suite_route_agreement(seed, dims, count, record):
    for dim in dims:
        for i in range(count):
            alg, att = _draw_solvable(seed, dim, i)
            m = MetricLieAlgebra(alg, _metric_for(seed, dim, i, att))
            with record(m, dim, i) as residuals:
                d = adapted_decomposition(m, check_solvable=False)
                blocks = ricci_blocks(d)
                direct = ricci_direct(m)
                u = d.basis
                aligned = u.T @ direct.ricci @ u
                dev = linalg.frob(aligned - blocks.assembled) / (1.0 + linalg.frob(aligned))
                residuals["max_block_deviation"] = max(
                    residuals.get("max_block_deviation", 0.0), dev)
                if dev > 1e-9:
                    raise Violation(f"block route deviates by {dev:.3e}")
                if structural_predicates(alg).is_nilpotent:
                    nil = ricci_nilpotent(m)
                    gap = linalg.frob(nil.ricci - direct.ricci) / (1.0 + linalg.frob(direct.ricci))
                    residuals["max_nilpotent_deviation"] = max(
                        residuals.get("max_nilpotent_deviation", 0.0), gap)
                    if gap > 1e-10:
                        raise Violation(f"nilpotent route deviates by {gap:.3e}")
                if d.a_dim == 1:
                    _check_codim1(m, d, seed, dim, i, residuals)


def _check_codim1(m, d, seed, dim, i, residuals):
    a = d.a_blocks[0]
    sym_a = linalg.sym_part(a)
    if float(np.sum(sym_a * sym_a)) <= 1e-9 * (1.0 + float(np.sum(a * a))):
        return
    red = codim1_reduction(d)
    if not red.equivalence_holds:
        raise Violation(
            f"reduction signature {red.r_tilde_signature} inconsistent "
            f"with full signature {red.full_signature}")
    if red.r2_formula_gap > 1e-10:
        raise Violation(f"pairing formula for the off-block off by {red.r2_formula_gap:.3e}")
    base = r2_pairing_trace(d)
    rng = _rng(_instance_seed(seed, dim, i, 55))
    drift = 0.0
    for _ in range(20):
        rot = _random_orthogonal(rng, d.n_dim)
        drift = max(drift, abs(r2_pairing_trace(d, rot) - base))
    rel = drift / (1.0 + abs(base))
    residuals["max_rebase_drift"] = max(residuals.get("max_rebase_drift", 0.0), rel)
    if rel > 1e-9:
        raise Violation(f"pairing trace drifts under rebasing by {rel:.3e}")


SUITE_RUNNERS = {
    "trichotomy": _suite_trichotomy,
    "non-unimodular": _suite_non_unimodular,
    "nilpotent": _suite_nilpotent,
    "lemmas": _suite_lemmas,
    "interlacing": _suite_interlacing,
    "route-agreement": _suite_route_agreement,
}


class _Recorder:
    """Collects residuals and serializes counterexamples on violation."""

    def __init__(self, suite, seed, out_dir):
        self.suite = suite
        self.seed = seed
        self.out_dir = out_dir
        self.instances = 0
        self.violations = []
        self.residuals = {}
        self._current = None

    def __call__(self, m, dim, index):
        self._current = (m, dim, index)
        return self

    def __enter__(self):
        self.instances += 1
        return self.residuals

    def __exit__(self, exc_type, exc, tb):
        m, dim, index = self._current
        if exc_type is None:
            return False
        if not issubclass(exc_type, (Violation, RouteDisagreement)):
            return False
        path = None
        if m is not None:
            payload = {
                "schema": "liericci-counterexample@1",
                "tool_version": __version__,
                "suite": self.suite,
                "seed": self.seed,
                "dim": dim,
                "index": index,
                "violation": str(exc),
                "algebra": algebra_to_dict(m.alg, m.metric),
            }
            os.makedirs(self.out_dir, exist_ok=True)
            path = os.path.join(
                self.out_dir,
                f"counterexample-{self.suite}-d{dim}-i{index}.json")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(serialize_report(payload))
        self.violations.append({
            "dim": dim, "index": index, "violation": str(exc),
            "counterexample": path,
        })
        return True  # violation recorded; campaign continues

    def summary(self, dims, count):
        merged = {}
        for key, value in sorted(self.residuals.items()):
            merged[key] = value
        return {
            "schema": "liericci-verify@1",
            "tool_version": __version__,
            "suite": self.suite,
            "seed": self.seed,
            "dims": dims,
            "count_per_dim": count,
            "instances": self.instances,
            "violations": self.violations,
            "residuals": merged,
            "tolerances": {
                "zero_tol": ZERO_REL_TOL,
                "rank_rel_tol": linalg.RANK_REL_TOL,
            },
        }


def run_suite(suite, count, dims, seed, out_dir):
    """Run one named campaign; returns its summary dict."""
    recorder = _Recorder(suite, seed, out_dir)
    SUITE_RUNNERS[suite](seed, dims, count, recorder)
    return recorder.summary(dims, count)


def _replay(path):
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    if payload.get("schema") != "liericci-counterexample@1":
        raise InputFormatError("not a counterexample file")
    alg, gram = parse_algebra_dict(payload["algebra"])
    metric = InnerProduct(gram) if gram is not None else None
    m = MetricLieAlgebra(alg, metric)
    suite = payload["suite"]
    residuals = {}
    try:
        if suite in ("trichotomy", "non-unimodular", "nilpotent"):
            cls = classify(m)
            if suite == "non-unimodular" and cls.report.n_negative < 2:
                raise Violation(f"signature {cls.report.signature}")
            if suite == "nilpotent" and cls.report.n_negative < 2:
                raise Violation(f"signature {cls.report.signature}")
        elif suite == "route-agreement":
            d = adapted_decomposition(m)
            blocks = ricci_blocks(d)
            direct = ricci_direct(m)
            u = d.basis
            dev = linalg.frob(u.T @ direct.ricci @ u - blocks.assembled)
            if dev > 1e-9 * (1.0 + linalg.frob(direct.ricci)):
                raise Violation(f"block route deviates by {dev:.3e}")
        elif suite == "lemmas":
            ds = derivation_algebra(m)
            _check_structure_lemmas(ds, residuals)
        else:
            raise InputFormatError(f"suite {suite!r} has no single-instance replay")
    except (Violation, RouteDisagreement) as exc:
        print(f"replayed violation: {exc}")
        return 1
    print("replay passed: violation did not reproduce")
    return 0


def cmd_verify(args):
    if args.replay:
        return _replay(args.replay)
    if not args.suite:
        print("error: --suite or --replay is required", file=sys.stderr)
        return 2
    suite = SUITE_ALIASES.get(args.suite, args.suite)
    if suite not in SUITES:
        print(f"error: unknown suite {args.suite!r}; known: {', '.join(SUITES)}",
              file=sys.stderr)
        return 2
    dims = _parse_dims(args.dims)
    summary = run_suite(suite, args.count, dims, args.seed, args.out_dir)
    if args.format == "json":
        sys.stdout.write(serialize_report(summary))
    else:
        print(f"suite {suite}: {summary['instances']} instances, "
              f"{len(summary['violations'])} violations (seed {args.seed})")
        for key, value in summary["residuals"].items():
            print(f"  {key}: {value:.6g}" if isinstance(value, float)
                  else f"  {key}: {value}")
        for v in summary["violations"]:
            print(f"  VIOLATION dim {v['dim']} index {v['index']}: {v['violation']}")
            if v["counterexample"]:
                print(f"    replay file: {v['counterexample']}")
    return 1 if summary["violations"] else 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _build_parser():
    parser = argparse.ArgumentParser(
        prog="liericci",
        description="Ricci operator signatures of solvable metric Lie algebras",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_val = sub.add_parser("validate", help="check an algebra file")
    p_val.add_argument("file")
    p_val.add_argument("--format", choices=("json", "text"), default="text")

    p_an = sub.add_parser("analyze", help="full analysis of one instance")
    src = p_an.add_mutually_exclusive_group(required=True)
    src.add_argument("--file")
    src.add_argument("--catalog")
    src.add_argument("--random", choices=RANDOM_FAMILIES)
    p_an.add_argument("--dim", type=int, default=4)
    p_an.add_argument("--seed", type=int, default=0)
    p_an.add_argument("--metric", choices=("identity", "random"), default="identity")
    p_an.add_argument("--metric-file")
    p_an.add_argument("--tol-zero", type=float, default=None)
    p_an.add_argument("--format", choices=("json", "text"), default="text")

    p_ver = sub.add_parser("verify", help="run a seeded verification campaign")
    p_ver.add_argument("--suite")
    p_ver.add_argument("--count", type=int, default=100)
    p_ver.add_argument("--dims", default="2..6")
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--out-dir", default="liericci-counterexamples")
    p_ver.add_argument("--format", choices=("json", "text"), default="text")
    p_ver.add_argument("--replay")
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    if args.command == "validate":
        return cmd_validate(args)
    if args.command == "analyze":
        return cmd_analyze(args)
    return cmd_verify(args)


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
