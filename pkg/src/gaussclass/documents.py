"""Text document format shared by every CLI command.

Documents are JSON objects, one per line when streamed.  Complex numbers are
``[re, im]`` pairs; real matrices are nested lists of floats.  Python's float
``repr`` is the shortest round-tripping form, so serialization is lossless.

StateDocument::

    {"n": 1, "mean": [[0.0, 0.0]], "cov": [[0.5, 0.0], [0.0, 0.5]], "label": "vacuum"}

ParamsDocument (the ``(mu, A, Lambda)`` form)::

    {"n": 1, "mu": [[0.0, 0.0]], "A": [[[-0.16, 0.0]]], "Lambda": [[[0.0, 0.0]]]}
"""

from __future__ import annotations

import json

import numpy as np

from .alambda import ALambdaParams
from .state import GaussianState


class DocumentError(ValueError):
    """A document is syntactically valid JSON but has a bad or missing field."""

    def __init__(self, message, index=None, field=None):
        where = []
        if index is not None:
            where.append(f"record {index}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)
        self.index = index
        self.field = field


def encode(value):
    """Convert numpy values into JSON-ready Python objects."""
    if isinstance(value, np.ndarray):
        if np.iscomplexobj(value):
            return np.stack([value.real, value.imag], axis=-1).tolist()
        if value.dtype == bool:
            return value.tolist()
        return value.astype(float).tolist()
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, dict):
        return {k: encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    return value


def dumps(doc) -> str:
    return json.dumps(encode(doc))


def iter_documents(text: str):
    """Yield ``(index, object)`` for every JSON value in ``text``.

    Accepts newline-delimited objects, concatenated (pretty-printed) objects
    and top-level arrays of objects.  Raises :class:`json.JSONDecodeError`
    with line/column information on malformed input.
    """
    decoder = json.JSONDecoder()
    pos = 0
    index = 0
    end = len(text)
    while True:
        while pos < end and text[pos].isspace():
            pos += 1
        if pos >= end:
            return
        obj, pos = decoder.raw_decode(text, pos)
        items = obj if isinstance(obj, list) else [obj]
        for item in items:
            yield index, item
            index += 1


def _complex_vector(raw, n, index, field):
    try:
        arr = np.asarray(raw, dtype=float)
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"expected a list of [re, im] pairs ({exc})", index, field) from None
    if arr.shape != (n, 2):
        raise DocumentError(f"expected shape ({n}, 2), got {arr.shape}", index, field)
    return arr[:, 0] + 1j * arr[:, 1]


def _complex_matrix(raw, n, index, field):
    try:
        arr = np.asarray(raw, dtype=float)
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"expected a matrix of [re, im] pairs ({exc})", index, field) from None
    if arr.shape != (n, n, 2):
        raise DocumentError(f"expected shape ({n}, {n}, 2), got {arr.shape}", index, field)
    return arr[..., 0] + 1j * arr[..., 1]


def _mode_count(doc, index, fallback_field, fallback_len):
    if "n" in doc:
        n = doc["n"]
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise DocumentError(f"expected a positive integer, got {n!r}", index, "n")
        return n
    try:
        return fallback_len(doc[fallback_field])
    except (KeyError, TypeError):
        raise DocumentError("missing", index, "n") from None


def _finite(arr, index, field):
    if not np.all(np.isfinite(arr)):
        raise DocumentError("entries must be finite", index, field)
    return arr


def parse_state(doc, index=None) -> GaussianState:
    if not isinstance(doc, dict):
        raise DocumentError(f"expected an object, got {type(doc).__name__}", index)
    n = _mode_count(doc, index, "cov", lambda c: len(c) // 2)
    if "cov" not in doc:
        raise DocumentError("missing", index, "cov")
    try:
        cov = np.asarray(doc["cov"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"expected a real matrix ({exc})", index, "cov") from None
    if cov.shape != (2 * n, 2 * n):
        raise DocumentError(f"expected shape ({2 * n}, {2 * n}), got {cov.shape}", index, "cov")
    mean = np.zeros(n, dtype=complex)
    if "mean" in doc:
        mean = _complex_vector(doc["mean"], n, index, "mean")
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise DocumentError("expected text", index, "label")
    return GaussianState(_finite(mean, index, "mean"), _finite(cov, index, "cov"), label)


def state_document(state: GaussianState) -> dict:
    doc = {"n": state.n, "mean": encode(state.mean), "cov": encode(state.cov)}
    if state.label is not None:
        doc["label"] = state.label
    return doc


def parse_params(doc, index=None) -> ALambdaParams:
    if not isinstance(doc, dict):
        raise DocumentError(f"expected an object, got {type(doc).__name__}", index)
    n = _mode_count(doc, index, "A", len)
    for name in ("A", "Lambda"):
        if name not in doc:
            raise DocumentError("missing", index, name)
    A = _finite(_complex_matrix(doc["A"], n, index, "A"), index, "A")
    Lam = _finite(_complex_matrix(doc["Lambda"], n, index, "Lambda"), index, "Lambda")
    mu = np.zeros(n, dtype=complex)
    if "mu" in doc:
        mu = _finite(_complex_vector(doc["mu"], n, index, "mu"), index, "mu")
    return ALambdaParams(mu, A, Lam)


def params_document(params: ALambdaParams, label=None) -> dict:
    doc = {
        "n": params.n,
        "mu": encode(params.mu),
        "A": encode(params.A),
        "Lambda": encode(params.Lambda),
    }
    if label is not None:
        doc["label"] = label
    return doc


def parse_probe(doc, name, n, index=None) -> np.ndarray:
    if name not in doc:
        raise DocumentError("missing", index, name)
    return _finite(_complex_vector(doc[name], n, index, name), index, name)
