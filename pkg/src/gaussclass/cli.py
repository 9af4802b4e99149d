"""Batch command-line front end.

Reads documents from a file (or ``-`` for stdin), writes one JSON document
per line to stdout.  Exit status: 0 when every record succeeded, 2 when any
record was invalid or raised a numerical error, 1 on parse or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .alambda import c_normalization, from_covariance, generating_function, to_covariance
from .classical import classical_covariance, table_form
from .classify import classify
from .documents import (
    DocumentError,
    dumps,
    encode,
    iter_documents,
    params_document,
    parse_params,
    parse_probe,
    parse_state,
    state_document,
)
from .errors import GaussianError
from .randgen import CLASSES, GenSpec, random_state
from .state import validate
from .symplectic import Tolerances, standard_symplectic_form
from .williamson import thermal_parameters, williamson_decompose

EXIT_OK, EXIT_IO, EXIT_INVALID = 0, 1, 2


def _tolerances(args) -> Tolerances:
    return Tolerances(
        sym_tol=args.sym_tol,
        psd_tol=args.psd_tol,
        commutator_tol=args.commutator_tol,
        residual_tol=args.residual_tol,
    )


def _error_entry(exc) -> dict:
    entry = {"type": type(exc).__name__, "message": str(exc)}
    if getattr(exc, "residual", None) is not None:
        entry["residual"] = exc.residual
    return entry


def _base(kind, index, label, tol) -> dict:
    return {
        "kind": kind,
        "index": index,
        "label": label,
        "version": __version__,
        "tolerances": tol.as_dict(),
    }


def _validate(doc, index, tol):
    state = parse_state(doc, index)
    report = validate(state, tol)
    out = _base("validate", index, state.label, tol)
    out.update(
        ok=report.valid,
        flags={"symmetric": report.symmetric, "uncertainty_ok": report.uncertainty_ok},
        residuals={"uncertainty_min_eig": report.min_eig},
        certificates={"sympl_eigs": report.sympl_eigs},
    )
    return out


def _classify(doc, index, tol):
    state = parse_state(doc, index)
    report = classify(state, tol)
    out = _base("classify", index, state.label, tol)
    out.update(
        ok=report.is_gaussian,
        flags=report.flags,
        residuals=report.residuals,
        certificates=report.certificates,
    )
    return out


def _williamson(doc, index, tol):
    state = parse_state(doc, index)
    dec = williamson_decompose(state.cov, tol)
    thermal = thermal_parameters(dec.d, tol)
    J = standard_symplectic_form(state.n)
    out = _base("williamson", index, state.label, tol)
    out.update(
        ok=True,
        residuals={
            "symplectic": float(np.linalg.norm(dec.L.T @ J @ dec.L - J)),
            "diagonal": float(np.linalg.norm(dec.L.T @ state.cov @ dec.L - dec.D_R)),
        },
        certificates={"L": dec.L, "d": dec.d, "s": thermal.s, "nbar": thermal.nbar},
    )
    return out


def _to_alambda(doc, index, tol):
    state = parse_state(doc, index)
    params = from_covariance(state, tol)
    back = to_covariance(params, tol)
    out = params_document(params, state.label)
    out["c"] = c_normalization(params.A, params.Lambda, tol)
    out["residuals"] = {
        "cov_roundtrip": float(np.linalg.norm(back.cov - state.cov)),
        "mean_roundtrip": float(np.linalg.norm(back.mean - state.mean)),
    }
    return out


def _from_alambda(doc, index, tol):
    params = parse_params(doc, index)
    state = to_covariance(params, tol)
    out = state_document(state)
    if isinstance(doc.get("label"), str):
        out["label"] = doc["label"]
    return out


def _pfunction(doc, index, tol):
    state = parse_state(doc, index)
    noise = classical_covariance(state, tol)
    out = _base("pfunction", index, state.label, tol)
    certificates = {"mu_R": noise.mu_R, "sigma_R": noise.sigma_R}
    if np.linalg.norm(state.mean) <= tol.residual_tol:
        form = table_form(state, tol)
        certificates.update(class_tag=form.class_tag, N=form.N)
        if form.transform is not None:
            certificates["transform"] = form.transform
    out.update(ok=True, certificates=certificates)
    return out


def _genfun(doc, index, tol):
    if isinstance(doc, dict) and "A" in doc:
        params = parse_params(doc, index)
    else:
        params = from_covariance(parse_state(doc, index), tol)
    u = parse_probe(doc, "u", params.n, index)
    v = parse_probe(doc, "v", params.n, index)
    out = _base("genfun", index, doc.get("label"), tol)
    out.update(ok=True, value=generating_function(params, u, v, tol))
    return out


HANDLERS = {
    "validate": _validate,
    "classify": _classify,
    "williamson": _williamson,
    "to-alambda": _to_alambda,
    "from-alambda": _from_alambda,
    "pfunction": _pfunction,
    "genfun": _genfun,
}


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _pretty(out) -> str:
    lines = [f"[{out.get('index', '?')}] {out.get('kind', 'document')} {out.get('label') or ''}".rstrip()]
    if "error" in out:
        lines.append(f"  error: {out['error']['type']}: {out['error']['message']}")
    for key in ("flags", "residuals"):
        for name, value in (out.get(key) or {}).items():
            lines.append(f"  {name:<26} {value}")
    if "value" in out:
        lines.append(f"  value {out['value']}")
    return "\n".join(lines)


def run_batch(command, args, stdout) -> int:
    tol = _tolerances(args)
    try:
        text = _read(args.input)
        docs = list(iter_documents(text))
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return EXIT_IO
    except json.JSONDecodeError as exc:
        print(f"error: parse error at line {exc.lineno} column {exc.colno}: {exc.msg}", file=sys.stderr)
        return EXIT_IO

    handler = HANDLERS[command]
    status = EXIT_OK
    for index, doc in docs:
        try:
            out = handler(doc, index, tol)
        except DocumentError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO
        except GaussianError as exc:
            label = doc.get("label") if isinstance(doc, dict) else None
            out = _base(command, index, label, tol)
            out.update(ok=False, error=_error_entry(exc))
        if out.get("ok") is False:
            status = EXIT_INVALID
        if args.pretty:
            stdout.write(_pretty(encode(out)) + "\n")
        else:
            stdout.write(dumps(out) + "\n")
    return status


def run_random(args, stdout) -> int:
    tag = args.cls.upper()
    if tag not in CLASSES:
        print(f"error: unknown class {args.cls!r}; expected one of {', '.join(c.lower() for c in CLASSES)}",
              file=sys.stderr)
        return EXIT_IO
    seed = args.seed_flag if args.seed_flag is not None else args.seed
    count = args.count_flag if args.count_flag is not None else args.count
    if args.n < 1 or count < 0:
        print("error: n must be >= 1 and count >= 0", file=sys.stderr)
        return EXIT_IO
    for k in range(count):
        spec = GenSpec(seed + k, args.n, tag, scale=args.scale, displaced=not args.zero_mean)
        stdout.write(dumps(state_document(random_state(spec))) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    defaults = Tolerances()
    common.add_argument("--sym-tol", type=float, default=defaults.sym_tol)
    common.add_argument("--psd-tol", type=float, default=defaults.psd_tol)
    common.add_argument("--commutator-tol", type=float, default=defaults.commutator_tol)
    common.add_argument("--residual-tol", type=float, default=defaults.residual_tol)
    common.add_argument("--pretty", action="store_true", help="human-readable output (not for pipelines)")

    parser = argparse.ArgumentParser(prog="gaussclass", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "validate": "check symmetry and the uncertainty relation",
        "classify": "decide GS/CGS/PUN/CSGS membership with certificates",
        "williamson": "Williamson normal form and thermal parameters",
        "to-alambda": "convert states to (mu, A, Lambda) documents",
        "from-alambda": "convert (mu, A, Lambda) documents to states",
        "pfunction": "classical noise covariance and p-function table form",
        "genfun": "evaluate the generating function at the document's u, v",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("input", nargs="?", default="-", help="input file, '-' for stdin")

    p = sub.add_parser("random", parents=[common], help="generate class-targeted random states")
    p.add_argument("cls", metavar="class", help="one of gs, cgs, pun, csgs, pure")
    p.add_argument("n", type=int)
    p.add_argument("seed", type=int, nargs="?", default=0)
    p.add_argument("count", type=int, nargs="?", default=1)
    p.add_argument("--seed", dest="seed_flag", type=int, default=None)
    p.add_argument("--count", dest="count_flag", type=int, default=None)
    p.add_argument("--scale", type=float, default=4.0)
    p.add_argument("--zero-mean", action="store_true")
    return parser


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        _tolerances(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    if args.command == "random":
        return run_random(args, stdout)
    return run_batch(args.command, args, stdout)


if __name__ == "__main__":
    sys.exit(main())
