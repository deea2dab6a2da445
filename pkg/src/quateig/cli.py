"""Command-line front-end.

One invocation reads one JSON matrix document (file path or standard
input), dispatches to a solver and writes a JSON or text report to
standard output (or --output).  Every report echoes the input hash, the
tolerances and convention in force, and the residuals behind each
printed number.

Exit codes: 0 success, 1 numerical failure (no convergence, not
diagonalizable, ...), 2 malformed or precondition-violating input.
"""
from __future__ import annotations

import argparse
import cmath
import hashlib
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__, complex_eig, left_eig, right_eig
from .errors import (
    MalformedDocument,
    NoConvergence,
    NoRootsFound,
    NotAntiHermitian,
    NotCommuting,
    NotDiagonalizable,
    NotSimultaneouslyDiagonalizable,
    QuatEigError,
    SingularEigenvectorMatrix,
    Unsupported,
    UnpairedEigenvalue,
    ZeroQuaternion,
)
from .io import (
    complex_json,
    dumps,
    hlcr_json,
    matrix_document,
    parse_matrix,
    parse_quaternion,
    parse_vector,
    quaternion_json,
    vector_json,
)
from .matrices import (
    HlcrMatrix,
    QuatMatrix,
    complexify_matrix,
    dequaternionify_matrix,
)
from .quaternion import Quaternion

COMMANDS = ("translate", "eig", "diag", "left-eig", "compare-left",
            "co-spec", "herm-from-antiherm", "verify")

_NUMERICAL_FAILURES = (NoConvergence, NotDiagonalizable, SingularEigenvectorMatrix,
                       UnpairedEigenvalue, NotSimultaneouslyDiagonalizable,
                       NoRootsFound, ZeroQuaternion)
_INPUT_FAILURES = (MalformedDocument, Unsupported, NotAntiHermitian, NotCommuting)


@dataclass
class CliConfig:
    command: str
    input_path: str = "-"
    output_path: str | None = None
    tol: float = 1e-10
    pairing_tol: float = 1e-8
    convention: str = right_eig.POSITIVE_IMAG
    output_format: str = "json"
    polar: bool = False
    force_complex: bool = False


def _polar(z: complex) -> list[float]:
    mod, arg = cmath.polar(complex(z))
    if arg <= -3.141592653589793:
        arg += 2 * 3.141592653589793
    return [mod, arg]


def _complex_entry(z: complex, polar: bool):
    return {"rect": complex_json(z), "polar": _polar(z)} if polar else complex_json(z)


def _spectrum_json(values, polar: bool):
    return [_complex_entry(z, polar) for z in values]


# ----------------------------------------------------------------------
# command handlers: each returns the "result" payload
# ----------------------------------------------------------------------

def _cmd_translate(cfg: CliConfig, doc):
    m = parse_matrix(doc)
    if isinstance(m, np.ndarray):
        return {"matrix": matrix_document(dequaternionify_matrix(m))}
    return {"matrix": matrix_document(complexify_matrix(m))}


def _cmd_eig(cfg: CliConfig, doc):
    m = parse_matrix(doc)
    if cfg.force_complex and not isinstance(m, np.ndarray):
        raise MalformedDocument('--complex requires a document of kind "complex"')
    if isinstance(m, np.ndarray):
        res = complex_eig.eig(m, cfg.tol)
        return {
            "kind": "complex",
            "eigenvalues": _spectrum_json(res.eigenvalues, cfg.polar),
            "eigenvectors": [[complex_json(z) for z in res.eigenvectors[:, k]]
                             for k in range(res.eigenvectors.shape[1])],
            "residuals": [float(r) for r in res.residuals],
            "condition_estimate": float(res.condition_estimate),
            "defective": bool(res.defective_flag),
        }
    if isinstance(m, HlcrMatrix):
        res = right_eig.right_spectrum_complexlinear(m, cfg.tol)
        return {
            "kind": "hlcr",
            "spectrum": _spectrum_json(res.spectrum, cfg.polar),
            "eigenvectors": [vector_json(v) for v in res.eigenvectors],
            "residuals": res.residuals,
            "diagonal": matrix_document(res.diagonal),
        }
    res = right_eig.right_spectrum_quaternionic(
        m, cfg.convention, cfg.tol, cfg.pairing_tol)
    return {
        "kind": "quaternion",
        "reduced_spectrum": _spectrum_json(res.reduced_spectrum, cfg.polar),
        "full_spectrum": _spectrum_json(res.full_spectrum, cfg.polar),
        "eigenvectors": [vector_json(v) for v in res.eigenvectors],
        "residuals": res.residuals,
        "diagonalizable": res.diagonalizable,
    }


def _cmd_diag(cfg: CliConfig, doc):
    m = parse_matrix(doc)
    if isinstance(m, np.ndarray):
        raise MalformedDocument('diag requires kind "quaternion" or "hlcr"')
    if isinstance(m, HlcrMatrix):
        s, d = right_eig.diagonalize_complexlinear(m, tol=cfg.tol)
        gap = (s @ m @ s.inverse()) - d
    else:
        s, d = right_eig.diagonalize_quaternionic(
            m, cfg.convention, cfg.tol, cfg.pairing_tol)
        gap = (s @ m @ s.inverse()) - d
    return {
        "diagonalizer": matrix_document(s),
        "diagonal": matrix_document(d),
        "residual": float(gap.norm()),
    }


def _cmd_left_eig(cfg: CliConfig, doc):
    m = parse_matrix(doc)
    if not isinstance(m, QuatMatrix):
        raise MalformedDocument('left-eig requires kind "quaternion"')
    res = left_eig.left_eig_2x2(m)

    def sol(s: left_eig.LeftSolution):
        return {
            "eigenvalue": quaternion_json(s.eigenvalue),
            "eigenvector": vector_json(s.eigenvector),
            "residual": float(s.residual),
            "family": s.family_flag,
        }

    return {
        "solutions": [sol(s) for s in res.solutions],
        "families": [{"description": f.description,
                      "members": [sol(s) for s in f.members]}
                     for f in res.families],
    }


def _pair_documents(doc):
    if not isinstance(doc, dict) or doc.get("kind") != "pair":
        raise MalformedDocument(
            'expected {"kind": "pair", "first": {...}, "second": {...}}')
    if "first" not in doc or "second" not in doc:
        raise MalformedDocument('pair document needs "first" and "second"')
    return doc["first"], doc["second"]


def _cmd_compare_left(cfg: CliConfig, doc):
    first, second = _pair_documents(doc)
    m, n = parse_matrix(first), parse_matrix(second)
    if not isinstance(m, QuatMatrix) or not isinstance(n, QuatMatrix):
        raise MalformedDocument('compare-left requires two "quaternion" matrices')
    res = left_eig.compare_left_spectra_similarity(m, n, cfg.pairing_tol)
    return {
        "verdict": res.verdict,
        "left_spectra_match": res.left_spectra_match,
        "complexified_spectra_match": res.complexified_spectra_match,
        "left_first": [quaternion_json(q) for q in res.left_first],
        "left_second": [quaternion_json(q) for q in res.left_second],
    }


def _cmd_co_spec(cfg: CliConfig, doc):
    first, second = _pair_documents(doc)
    m1, m2 = parse_matrix(first), parse_matrix(second)
    if not isinstance(m1, QuatMatrix) or not isinstance(m2, QuatMatrix):
        raise MalformedDocument('co-spec requires two "quaternion" matrices')
    basis = None
    if "basis" in doc:
        if not isinstance(doc["basis"], list):
            raise MalformedDocument('"basis" must be a list of quaternion vectors')
        basis = [parse_vector(v) for v in doc["basis"]]
    res = right_eig.co_spectrum(m1, m2, basis=basis, convention=cfg.convention,
                                pairing_tol=cfg.pairing_tol)
    return {
        "basis": [vector_json(v) for v in res.basis],
        "pairs": [[_complex_entry(a, cfg.polar), _complex_entry(b, cfg.polar)]
                  for a, b in res.pairs],
        "residuals": res.residuals,
    }


def _cmd_herm(cfg: CliConfig, doc):
    m = parse_matrix(doc)
    if not isinstance(m, QuatMatrix):
        raise MalformedDocument('herm-from-antiherm requires kind "quaternion"')
    spec = right_eig.right_spectrum_quaternionic(
        m, cfg.convention, cfg.tol, cfg.pairing_tol)
    h = right_eig.hermitian_from_antihermitian(m)
    return {
        "matrix": matrix_document(h),
        "antihermitian_spectrum": _spectrum_json(spec.reduced_spectrum, cfg.polar),
        "hermitian_spectrum": _spectrum_json(
            [abs(l) + 0j for l in spec.reduced_spectrum], cfg.polar),
        "residuals": spec.residuals,
    }


def _cmd_verify(cfg: CliConfig, doc):
    if not isinstance(doc, dict) or "pairs" not in doc:
        raise MalformedDocument('verify needs a matrix document with a "pairs" list')
    m = parse_matrix(doc)
    if isinstance(m, np.ndarray):
        raise MalformedDocument('verify requires kind "quaternion" or "hlcr"')
    reports = []
    for k, pair in enumerate(doc["pairs"]):
        if not isinstance(pair, dict):
            raise MalformedDocument(f"pairs[{k}] must be an object")
        side = pair.get("side", "right")
        if side not in ("left", "right"):
            raise MalformedDocument(f'pairs[{k}].side must be "left" or "right"')
        raw_val = pair.get("eigenvalue")
        if isinstance(raw_val, list) and len(raw_val) == 2:
            value = Quaternion.from_complex(complex(raw_val[0], raw_val[1]))
        else:
            value = parse_quaternion(raw_val)
        psi = parse_vector(pair.get("eigenvector"))
        if side == "left":
            if not isinstance(m, QuatMatrix):
                raise MalformedDocument("left verification needs a quaternion matrix")
            residual = left_eig.verify_left_pair(m, value, psi)
        else:
            image = m @ psi if isinstance(m, QuatMatrix) else m.apply(psi)
            gap = image - psi * value
            residual = gap.norm() / (max(m.norm(), 1e-300) * max(psi.norm(), 1e-300))
        reports.append({"side": side, "residual": float(residual),
                        "pass": bool(residual <= cfg.tol)})
    return {"pairs": reports, "all_pass": all(r["pass"] for r in reports)}


_HANDLERS = {
    "translate": _cmd_translate,
    "eig": _cmd_eig,
    "diag": _cmd_diag,
    "left-eig": _cmd_left_eig,
    "compare-left": _cmd_compare_left,
    "co-spec": _cmd_co_spec,
    "herm-from-antiherm": _cmd_herm,
    "verify": _cmd_verify,
}


# ----------------------------------------------------------------------
# rendering
# ----------------------------------------------------------------------

def _render_text(report: dict) -> str:
    lines: list[str] = []

    def walk(prefix: str, obj):
        if isinstance(obj, dict):
            for key, val in obj.items():
                walk(f"{prefix}{key}.", val) if isinstance(val, (dict, list)) \
                    else lines.append(f"{prefix}{key} = {_scalar(val)}")
        elif isinstance(obj, list):
            if all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in obj):
                lines.append(f"{prefix[:-1]} = [{', '.join(_scalar(x) for x in obj)}]")
            else:
                for k, item in enumerate(obj):
                    walk(f"{prefix}{k}.", item) if isinstance(item, (dict, list)) \
                        else lines.append(f"{prefix}{k} = {_scalar(item)}")
        else:
            lines.append(f"{prefix[:-1]} = {_scalar(obj)}")

    def _scalar(x):
        if isinstance(x, bool):
            return "true" if x else "false"
        if isinstance(x, float):
            return format(x, ".17g")
        return str(x)

    walk("", report)
    return "\n".join(lines) + "\n"


def run(cfg: CliConfig, raw: bytes) -> tuple[int, str]:
    """Execute one command on one raw input document."""
    digest = hashlib.sha256(raw).hexdigest()
    report = {
        "command": cfg.command,
        "quateig_version": __version__,
        "input_sha256": digest,
        "tol": cfg.tol,
        "pairing_tol": cfg.pairing_tol,
        "convention": cfg.convention,
    }
    try:
        try:
            doc = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise MalformedDocument(f"input is not valid JSON: {exc}") from exc
        report["result"] = _HANDLERS[cfg.command](cfg, doc)
    except _NUMERICAL_FAILURES as exc:
        report["error"] = type(exc).__name__
        report["reason"] = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        return 1, _emit(cfg, report)
    except _INPUT_FAILURES as exc:
        report["error"] = type(exc).__name__
        report["reason"] = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        return 2, _emit(cfg, report)
    except QuatEigError as exc:
        report["error"] = type(exc).__name__
        report["reason"] = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        return 2, _emit(cfg, report)
    return 0, _emit(cfg, report)


def _emit(cfg: CliConfig, report: dict) -> str:
    return dumps(report) if cfg.output_format == "json" else _render_text(report)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quateig",
        description="Eigenvalue problems for quaternionic and complex-linear "
                    "matrix operators via complex translation.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("input", nargs="?", default="-",
                       help="input document path, or - for stdin")
        p.add_argument("--output", "-o", default=None,
                       help="output path (default: stdout)")
        p.add_argument("--tol", type=float, default=1e-10,
                       help="eigensolver/residual tolerance (default 1e-10)")
        p.add_argument("--pairing-tol", type=float, default=1e-8,
                       help="conjugate-pair matching tolerance (default 1e-8)")
        p.add_argument("--convention",
                       choices=[right_eig.POSITIVE_IMAG, right_eig.NEGATIVE_IMAG],
                       default=right_eig.POSITIVE_IMAG,
                       help="representative choice per conjugate pair")
        p.add_argument("--format", choices=["json", "text"], default="json")
        p.add_argument("--polar", action="store_true",
                       help="also print eigenvalues as (modulus, argument)")
        if name == "eig":
            p.add_argument("--complex", action="store_true", dest="force_complex",
                           help='require a raw "complex" document')
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.tol <= 0 or args.pairing_tol <= 0:
        print("tolerances must be positive", file=sys.stderr)
        return 2
    cfg = CliConfig(
        command=args.command,
        input_path=args.input,
        output_path=args.output,
        tol=args.tol,
        pairing_tol=args.pairing_tol,
        convention=args.convention,
        output_format=args.format,
        polar=args.polar,
        force_complex=getattr(args, "force_complex", False),
    )
    try:
        if cfg.input_path == "-":
            raw = sys.stdin.buffer.read()
        else:
            with open(cfg.input_path, "rb") as fh:
                raw = fh.read()
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return 2
    code, output = run(cfg, raw)
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(output)
    else:
        sys.stdout.write(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
