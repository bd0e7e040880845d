"""Command line interface.

Exit codes: 0 when the checked property holds or the artifact was built,
1 when a check finds a violation, 2 for malformed input or usage errors.
Reports print as text by default; ``--format json-report`` emits a canonical
JSON document instead.  ``--jobs`` (or the QLSMUB_JOBS environment variable)
bounds the worker pool of the commutator sweep.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import serialize
from .bases import (
    BipartiteBasis,
    check_mub,
    is_maximally_entangled,
    is_orthonormal_basis,
    lbw_meb,
    qls_meb,
)
from .fixtures import (
    FIXTURE_NAMES,
    fixture,
    hadamard_9_corrected,
    paper_p_grid,
    paper_q_grid,
)
from .hadamard import (
    HadamardMatrix,
    constant_family,
    hadamard_family,
    validate_hadamard,
)
from .numerics import DEFAULT_TOL, OBSTRUCTION_THRESHOLD
from .search import (
    count_latin_by_columns,
    cross_validate_lemma16,
    enumerate_latin,
    find_orthogonal_pairs,
)
from .squares import (
    QuantumLatinSquare,
    WeakOrthWitness,
    are_left_orthogonal,
    are_orthogonal,
    left_conjugate,
    validate_qls,
    weak_orth_witness,
)
from .ueb import (
    UnitaryErrorBasis,
    check_mu_ueb,
    meb_to_ueb,
    monomial_obstruction,
    ueb_to_meb,
    validate_ueb,
)


def _resolve_jobs(args) -> int:
    if getattr(args, "jobs", None):
        return max(1, args.jobs)
    env = os.environ.get("QLSMUB_JOBS", "")
    if env.strip():
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise serialize.SerializeError(f"QLSMUB_JOBS is not an integer: {env!r}") from exc
    return 1


def _emit_report(args, report: dict, lines: list[str]) -> None:
    if args.format == "json-report":
        payload = serialize.dumps(report)
    else:
        payload = "\n".join(lines) + "\n"
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _emit_artifact(args, doc: dict, report: dict, lines: list[str]) -> None:
    # Artifact goes to --out when given, otherwise to stdout; a status report
    # accompanies it only when the artifact went to a file.
    if args.out:
        serialize.save_path(args.out, doc)
        _emit_report_to_stdout(args, report, lines)
    else:
        sys.stdout.write(serialize.dumps(doc))


def _emit_report_to_stdout(args, report: dict, lines: list[str]) -> None:
    if args.format == "json-report":
        sys.stdout.write(serialize.dumps(report))
    else:
        sys.stdout.write("\n".join(lines) + "\n")


def _complex_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _load_grid(path: str):
    return serialize.grid_from_doc(serialize.load_path(path))


def _load_latin(path: str):
    return serialize.latin_from_doc(serialize.load_path(path))


def _load_matrix(path: str):
    return serialize.matrix_from_doc(serialize.load_path(path))


def _load_basis(path: str) -> BipartiteBasis:
    n, states = serialize.basis_from_doc(serialize.load_path(path))
    return BipartiteBasis(n, states)


def _load_ueb_members(path: str) -> np.ndarray:
    return serialize.matrix_list_from_doc(serialize.load_path(path))


def _load_family(path: str, tol: float):
    members = serialize.matrix_list_from_doc(serialize.load_path(path))
    validated = []
    for idx, mat in enumerate(members):
        result = validate_hadamard(mat, tol)
        if not isinstance(result, HadamardMatrix):
            return None, f"family member {idx}: {result}"
        validated.append(result)
    try:
        return hadamard_family(validated), None
    except ValueError as exc:
        return None, str(exc)


# ---------------------------------------------------------------- commands


def _cmd_validate_qls(args) -> int:
    grid = _load_grid(args.grid)
    result = validate_qls(grid, args.tol)
    ok = isinstance(result, QuantumLatinSquare)
    report = {"command": "validate-qls", "ok": ok, "n": grid.n, "tol": args.tol}
    if ok:
        lines = [f"valid quantum Latin square of order {grid.n} (tol {args.tol:g})"]
    else:
        report.update(
            line=result.line,
            index=result.index,
            pair=list(result.pair),
            value=_complex_pair(result.value),
        )
        lines = [f"INVALID: {result}"]
    _emit_report(args, report, lines)
    return 0 if ok else 1


def _cmd_validate_hadamard(args) -> int:
    mat = _load_matrix(args.matrix)
    result = validate_hadamard(mat, args.tol)
    ok = isinstance(result, HadamardMatrix)
    report = {
        "command": "validate-hadamard",
        "ok": ok,
        "n": int(mat.shape[0]),
        "tol": args.tol,
    }
    if ok:
        lines = [f"valid complex Hadamard matrix of order {mat.shape[0]} (tol {args.tol:g})"]
    else:
        report.update(
            constraint=result.constraint,
            indices=list(result.indices),
            value=_complex_pair(result.value),
        )
        lines = [f"INVALID: {result.constraint} violated: {result}"]
    _emit_report(args, report, lines)
    return 0 if ok else 1


def _cmd_check_weak_orth(args) -> int:
    qg = _load_grid(args.grid_q)
    pg = _load_grid(args.grid_p)
    result = weak_orth_witness(qg, pg, args.tol)
    ok = isinstance(result, WeakOrthWitness)
    report = {"command": "check-weak-orth", "ok": ok, "n": qg.n, "tol": args.tol}
    if ok:
        report["table"] = result.table.tolist()
        lines = ["weakly orthogonal; witness table (rows of first vs rows of second):"]
        lines += ["  " + " ".join(str(int(x)) for x in row) for row in result.table]
    else:
        report.update(
            q_row=result.q_row,
            p_row=result.p_row,
            kind=result.kind,
            column=result.column,
            value=None if result.value is None else _complex_pair(result.value),
        )
        lines = [f"NOT weakly orthogonal: {result}"]
    _emit_report(args, report, lines)
    return 0 if ok else 1


def _cmd_check_orth(args) -> int:
    a = _load_latin(args.latin_a)
    b = _load_latin(args.latin_b)
    ok = are_orthogonal(a, b)
    report = {"command": "check-orth", "ok": ok, "n": a.n}
    lines = ["orthogonal" if ok else "NOT orthogonal: repeated ordered symbol pair"]
    _emit_report(args, report, lines)
    return 0 if ok else 1


def _cmd_check_left_orth(args) -> int:
    a = _load_latin(args.latin_a)
    b = _load_latin(args.latin_b)
    ok = are_left_orthogonal(a, b)
    report = {"command": "check-left-orth", "ok": ok, "n": a.n}
    lines = ["left orthogonal" if ok else "NOT left orthogonal"]
    _emit_report(args, report, lines)
    return 0 if ok else 1


def _cmd_left_conj(args) -> int:
    latin = _load_latin(args.latin)
    conj = left_conjugate(latin)
    doc = serialize.latin_doc(conj)
    report = {"command": "left-conj", "ok": True, "n": latin.n}
    _emit_artifact(args, doc, report, [f"left conjugate of order {latin.n} written"])
    return 0


def _cmd_build_meb(args) -> int:
    grid = _load_grid(args.grid)
    result = validate_qls(grid, args.tol)
    if not isinstance(result, QuantumLatinSquare):
        _emit_report_to_stdout(
            args,
            {"command": "build-meb", "ok": False, "reason": str(result)},
            [f"INVALID grid: {result}"],
        )
        return 1
    family, err = _load_family(args.family, args.tol)
    if family is None:
        _emit_report_to_stdout(
            args,
            {"command": "build-meb", "ok": False, "reason": err},
            [f"INVALID family: {err}"],
        )
        return 1
    basis = qls_meb(result, family)
    doc = serialize.basis_doc(basis.n, basis.states)
    report = {"command": "build-meb", "ok": True, "n": basis.n, "states": basis.n**2}
    _emit_artifact(args, doc, report, [f"built {basis.n ** 2} states of order {basis.n}"])
    return 0


def _cmd_build_lbw(args) -> int:
    latin = _load_latin(args.latin)
    result = validate_hadamard(_load_matrix(args.matrix), args.tol)
    if not isinstance(result, HadamardMatrix):
        _emit_report_to_stdout(
            args,
            {"command": "build-lbw", "ok": False, "reason": str(result)},
            [f"INVALID matrix: {result}"],
        )
        return 1
    basis = lbw_meb(latin, result)
    doc = serialize.basis_doc(basis.n, basis.states)
    report = {"command": "build-lbw", "ok": True, "n": basis.n, "states": basis.n**2}
    _emit_artifact(args, doc, report, [f"built {basis.n ** 2} states of order {basis.n}"])
    return 0


def _cmd_check_mub(args) -> int:
    a = _load_basis(args.basis_a)
    b = _load_basis(args.basis_b)
    rep = check_mub(a, b, args.tol)
    report = {
        "command": "check-mub",
        "ok": rep.passed,
        "dim": rep.dim,
        "min_sq": rep.min_sq,
        "max_sq": rep.max_sq,
        "mean_sq": rep.mean_sq,
        "target": 1.0 / rep.dim,
        "tol": rep.tol,
    }
    lines = [
        f"dim {rep.dim}: |overlap|^2 min {rep.min_sq:.12g}, max {rep.max_sq:.12g}, "
        f"mean {rep.mean_sq:.12g}, target {1.0 / rep.dim:.12g}",
        "mutually unbiased" if rep.passed else "NOT mutually unbiased",
    ]
    _emit_report(args, report, lines)
    return 0 if rep.passed else 1


def _cmd_dual(args) -> int:
    if args.to_ueb:
        basis = _load_basis(args.to_ueb)
        try:
            u = meb_to_ueb(basis, args.tol)
        except ValueError as exc:
            _emit_report_to_stdout(
                args,
                {"command": "dual", "ok": False, "reason": str(exc)},
                [f"FAILED: {exc}"],
            )
            return 1
        doc = serialize.matrix_list_doc(u.members)
        report = {"command": "dual", "ok": True, "direction": "to-ueb", "n": u.n}
        _emit_artifact(args, doc, report, [f"extracted {len(u)} unitaries of order {u.n}"])
        return 0
    members = _load_ueb_members(args.to_meb)
    result = validate_ueb(members, args.tol)
    if not isinstance(result, UnitaryErrorBasis):
        _emit_report_to_stdout(
            args,
            {"command": "dual", "ok": False, "reason": str(result)},
            [f"INVALID unitary error basis: {result}"],
        )
        return 1
    basis = ueb_to_meb(result)
    doc = serialize.basis_doc(basis.n, basis.states)
    report = {"command": "dual", "ok": True, "direction": "to-meb", "n": basis.n}
    _emit_artifact(args, doc, report, [f"built {basis.n ** 2} states of order {basis.n}"])
    return 0


def _cmd_check_ueb(args) -> int:
    members = _load_ueb_members(args.ueb)
    result = validate_ueb(members, args.tol)
    ok = isinstance(result, UnitaryErrorBasis)
    report = {"command": "check-ueb", "ok": ok, "tol": args.tol}
    if ok:
        report["n"] = result.n
        lines = [f"valid unitary error basis of order {result.n} ({len(result)} members)"]
    else:
        report.update(
            kind=result.kind,
            index=result.index,
            pair=None if result.pair is None else list(result.pair),
        )
        lines = [f"INVALID: {result}"]
    _emit_report(args, report, lines)
    return 0 if ok else 1


def _cmd_check_mu_ueb(args) -> int:
    loaded = []
    for path in (args.ueb_a, args.ueb_b):
        result = validate_ueb(_load_ueb_members(path), args.tol)
        if not isinstance(result, UnitaryErrorBasis):
            _emit_report_to_stdout(
                args,
                {"command": "check-mu-ueb", "ok": False, "reason": f"{path}: {result}"},
                [f"INVALID unitary error basis {path}: {result}"],
            )
            return 1
        loaded.append(result)
    rep = check_mu_ueb(loaded[0], loaded[1], args.tol)
    report = {
        "command": "check-mu-ueb",
        "ok": rep.passed,
        "dim": rep.dim,
        "min_sq": rep.min_sq,
        "max_sq": rep.max_sq,
        "mean_sq": rep.mean_sq,
        "target": 1.0 / rep.dim,
        "raw_trace_sq_min": float(rep.trace_sq.min()),
        "raw_trace_sq_max": float(rep.trace_sq.max()),
        "tol": rep.tol,
    }
    lines = [
        f"dim {rep.dim}: normalized |tr|^2 min {rep.min_sq:.12g}, max {rep.max_sq:.12g}, "
        f"target {1.0 / rep.dim:.12g}",
        f"raw |tr|^2 range [{report['raw_trace_sq_min']:.12g}, {report['raw_trace_sq_max']:.12g}]",
        "mutually unbiased" if rep.passed else "NOT mutually unbiased",
    ]
    _emit_report(args, report, lines)
    return 0 if rep.passed else 1


def _cmd_monomial_obstruction(args) -> int:
    members = _load_ueb_members(args.ueb)
    result = validate_ueb(members, args.tol)
    if not isinstance(result, UnitaryErrorBasis):
        _emit_report_to_stdout(
            args,
            {"command": "monomial-obstruction", "ok": False, "reason": str(result)},
            [f"INVALID unitary error basis: {result}"],
        )
        return 1
    rep = monomial_obstruction(result, args.threshold, jobs=_resolve_jobs(args))
    report = {
        "command": "monomial-obstruction",
        "ok": not rep.obstructed,
        "mu": rep.mu,
        "normalizer_index": rep.normalizer_index,
        "worst_pair": list(rep.worst_pair),
        "worst_norm": rep.worst_norm,
        "sample_entry": _complex_pair(rep.sample_entry),
        "obstructed": rep.obstructed,
        "threshold": rep.threshold,
    }
    lines = [
        f"mu {rep.mu}, normalizer {rep.normalizer_index}: worst commutator "
        f"|[U^mu, V^mu]|_F = {rep.worst_norm:.6g} at pair {rep.worst_pair}",
        (
            "OBSTRUCTED: not equivalent to a monomial basis"
            if rep.obstructed
            else f"no obstruction above threshold {rep.threshold:g}"
        ),
    ]
    _emit_report(args, report, lines)
    return 1 if rep.obstructed else 0


def _cmd_fixtures(args) -> int:
    try:
        obj = fixture(args.name)
    except KeyError as exc:
        raise serialize.SerializeError(exc.args[0]) from exc
    if args.name in ("hadamard-9-corrected",):
        doc = serialize.matrix_doc(obj.mat)
    elif args.name in ("hadamard-9-printed",):
        doc = serialize.matrix_doc(obj)
    elif args.name.endswith("-triple"):
        doc = serialize.vector_list_doc(np.stack(obj))
    else:
        doc = serialize.grid_doc(obj)
    report = {"command": "fixtures", "ok": True, "name": args.name, "kind": doc["kind"]}
    _emit_artifact(args, doc, report, [f"fixture {args.name} ({doc['kind']}) written"])
    return 0


def _cmd_search(args) -> int:
    if args.what == "latin":
        result = enumerate_latin(args.order)
        recount = count_latin_by_columns(args.order)
        ok = result.count == recount
        report = {
            "command": "search",
            "what": "latin",
            "ok": ok,
            "order": args.order,
            "count": result.count,
            "recount": recount,
        }
        lines = [
            f"order {args.order}: {result.count} Latin squares "
            f"(column-major recount {recount})"
        ]
        _emit_report(args, report, lines)
        return 0 if ok else 1
    if args.what == "orth-pairs":
        pairs = find_orthogonal_pairs(args.order)
        report = {
            "command": "search",
            "what": "orth-pairs",
            "ok": True,
            "order": args.order,
            "count": len(pairs),
        }
        lines = [f"order {args.order}: {len(pairs)} ordered orthogonal pairs"]
        _emit_report(args, report, lines)
        return 0
    rep = cross_validate_lemma16(args.order, args.tol)
    report = {
        "command": "search",
        "what": "lemma16",
        "ok": rep.consistent,
        "order": rep.order,
        "pairs_checked": rep.pairs_checked,
        "positives": rep.positives,
        "disagreements": len(rep.disagreements),
    }
    lines = [
        f"order {rep.order}: {rep.pairs_checked} ordered pairs, "
        f"{rep.positives} weakly orthogonal, "
        f"{len(rep.disagreements)} disagreements between the three routes"
    ]
    _emit_report(args, report, lines)
    return 0 if rep.consistent else 1


def _cmd_reproduce_appendix_c(args) -> int:
    tol = args.tol
    family = constant_family(hadamard_9_corrected())
    bases = []
    for name, grid in (("P", paper_p_grid()), ("Q", paper_q_grid())):
        result = validate_qls(grid, tol)
        if not isinstance(result, QuantumLatinSquare):
            _emit_report_to_stdout(
                args,
                {"command": "reproduce-appendix-c", "ok": False, "reason": str(result)},
                [f"grid {name} failed validation: {result}"],
            )
            return 1
        bases.append(qls_meb(result, family))
    a, b = bases
    orthonormal = is_orthonormal_basis(a, tol) and is_orthonormal_basis(b, tol)
    entangled = all(
        is_maximally_entangled(s, tol) for basis in bases for s in basis.states
    )
    rep = check_mub(a, b, tol)
    ok = orthonormal and entangled and rep.passed
    report = {
        "command": "reproduce-appendix-c",
        "ok": ok,
        "dim": rep.dim,
        "overlaps": rep.dim * rep.dim,
        "min_sq": rep.min_sq,
        "max_sq": rep.max_sq,
        "mean_sq": rep.mean_sq,
        "target": 1.0 / rep.dim,
        "orthonormal": orthonormal,
        "maximally_entangled": entangled,
        "tol": tol,
    }
    lines = [
        f"two bases of {rep.dim} states each: orthonormal={orthonormal}, "
        f"maximally entangled={entangled}",
        f"{rep.dim * rep.dim} cross overlaps: |overlap|^2 min {rep.min_sq:.12g}, "
        f"max {rep.max_sq:.12g}, target {1.0 / rep.dim:.12g}",
        "PASS" if ok else "FAIL",
    ]
    _emit_report(args, report, lines)
    return 0 if ok else 1


# ---------------------------------------------------------------- parser


def _add_common(p: argparse.ArgumentParser, threshold: bool = False) -> None:
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="absolute tolerance")
    if threshold:
        p.add_argument(
            "--threshold",
            type=float,
            default=OBSTRUCTION_THRESHOLD,
            help="obstruction threshold on the commutator norm",
        )
    p.add_argument("--jobs", type=int, default=None, help="worker threads")
    p.add_argument("--out", default=None, help="write the artifact or report here")
    p.add_argument(
        "--format",
        choices=("text", "json-report"),
        default="text",
        help="report rendering",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qlsmub",
        description=(
            "Construct and verify maximally entangled bases from quantum Latin "
            "squares and Hadamard families."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate-qls", help="row/column orthonormality of a grid")
    p.add_argument("grid")
    _add_common(p)
    p.set_defaults(fn=_cmd_validate_qls)

    p = sub.add_parser("validate-hadamard", help="Hadamard axioms of a matrix")
    p.add_argument("matrix")
    _add_common(p)
    p.set_defaults(fn=_cmd_validate_hadamard)

    p = sub.add_parser("check-weak-orth", help="weak orthogonality witness of two grids")
    p.add_argument("grid_q")
    p.add_argument("grid_p")
    _add_common(p)
    p.set_defaults(fn=_cmd_check_weak_orth)

    p = sub.add_parser("check-orth", help="orthogonality of two Latin squares")
    p.add_argument("latin_a")
    p.add_argument("latin_b")
    _add_common(p)
    p.set_defaults(fn=_cmd_check_orth)

    p = sub.add_parser("check-left-orth", help="orthogonality of the left conjugates")
    p.add_argument("latin_a")
    p.add_argument("latin_b")
    _add_common(p)
    p.set_defaults(fn=_cmd_check_left_orth)

    p = sub.add_parser("left-conj", help="left conjugate of a Latin square")
    p.add_argument("latin")
    _add_common(p)
    p.set_defaults(fn=_cmd_left_conj)

    p = sub.add_parser("build-meb", help="entangled basis from grid + Hadamard family")
    p.add_argument("grid")
    p.add_argument("family")
    _add_common(p)
    p.set_defaults(fn=_cmd_build_meb)

    p = sub.add_parser("build-lbw", help="entangled basis from Latin square + Hadamard")
    p.add_argument("latin")
    p.add_argument("matrix")
    _add_common(p)
    p.set_defaults(fn=_cmd_build_lbw)

    p = sub.add_parser("check-mub", help="mutual unbiasedness of two bases")
    p.add_argument("basis_a")
    p.add_argument("basis_b")
    _add_common(p)
    p.set_defaults(fn=_cmd_check_mub)

    p = sub.add_parser("dual", help="convert between entangled bases and unitary error bases")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--to-ueb", metavar="BASIS")
    group.add_argument("--to-meb", metavar="UEB")
    _add_common(p)
    p.set_defaults(fn=_cmd_dual)

    p = sub.add_parser("check-ueb", help="unitary error basis axioms")
    p.add_argument("ueb")
    _add_common(p)
    p.set_defaults(fn=_cmd_check_ueb)

    p = sub.add_parser("check-mu-ueb", help="mutual unbiasedness of two unitary error bases")
    p.add_argument("ueb_a")
    p.add_argument("ueb_b")
    _add_common(p)
    p.set_defaults(fn=_cmd_check_mu_ueb)

    p = sub.add_parser(
        "monomial-obstruction",
        help="commutator sweep of lcm powers; exits 1 when an obstruction is found",
    )
    p.add_argument("ueb")
    _add_common(p, threshold=True)
    p.set_defaults(fn=_cmd_monomial_obstruction)

    p = sub.add_parser("fixtures", help="emit a bundled reference object")
    p.add_argument("action", choices=("emit",))
    p.add_argument("name", help=f"one of: {', '.join(FIXTURE_NAMES)}")
    _add_common(p)
    p.set_defaults(fn=_cmd_fixtures)

    p = sub.add_parser("search", help="exhaustive small-order searches")
    p.add_argument("what", choices=("latin", "orth-pairs", "lemma16"))
    p.add_argument("order", type=int)
    _add_common(p)
    p.set_defaults(fn=_cmd_search)

    p = sub.add_parser(
        "reproduce-appendix-c",
        help="rebuild the bundled order-9 pair and verify all cross overlaps",
    )
    _add_common(p)
    p.set_defaults(fn=_cmd_reproduce_appendix_c)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return 2 if exc.code not in (0,) else 0
    try:
        return args.fn(args)
    except serialize.SerializeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
