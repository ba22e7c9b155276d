"""
JSON relation files.

A file holds one relation on C^n::

    {"format_version": 1, "ambient": n,
     "generators": [[[re, im], ... 2n entries], ...]}

or the operator form ``{"operator": n rows of n [re, im], "domain": [...]}``
where ``domain`` is an optional list of n-vectors (all of C^n when absent).
A ``corpus_spec`` object may stand in for both encodings; when it sits next
to one of them it is kept as provenance only.

Serialization always writes the generator form from the orthonormal graph
basis, with floats in shortest round-trip notation.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from . import relation as rel
from .corpus import CorpusSpec, generate
from .exceptions import DimensionMismatchError, RelcalcError
from .subspace import DEFAULT_TOL

FORMAT_VERSION = 1

MISSING_FILE = "missing-file"
SCHEMA = "schema"
DIMENSION = "dimension"


class RelationFileError(RelcalcError):
    """Problem reading a relation file; ``code`` is one of the module constants."""

    def __init__(self, code, message, path=None, field=None, line=None):
        where = []
        if path is not None:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field}")
        super().__init__(f"{': '.join(where)}: {message}" if where else message)
        self.code = code
        self.path = path
        self.field = field
        self.line = line


def _scalar(z):
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _vector(v):
    return [_scalar(z) for z in np.asarray(v).reshape(-1)]


def relation_to_dict(T, corpus_spec=None):
    doc = {
        "format_version": FORMAT_VERSION,
        "ambient": T.n,
        "generators": [_vector(T.graph.basis[:, j]) for j in range(T.dim)],
    }
    if corpus_spec is not None:
        doc["corpus_spec"] = corpus_spec.as_dict() if isinstance(corpus_spec, CorpusSpec) else corpus_spec
    return doc


def serialize_relation(T, corpus_spec=None):
    return json.dumps(relation_to_dict(T, corpus_spec), indent=1)


def write_relation_file(path, T, corpus_spec=None):
    Path(path).write_text(serialize_relation(T, corpus_spec) + "\n")


class _Reader:
    """Field-path aware parsing of one decoded document."""

    def __init__(self, path, text):
        self.path = path
        self.text = text

    def line_of(self, key):
        # best effort: first line mentioning the top-level key
        needle = f'"{key}"'
        for i, line in enumerate(self.text.splitlines(), 1):
            if needle in line:
                return i
        return None

    def fail(self, code, message, field, key=None):
        raise RelationFileError(code, message, self.path, field,
                                self.line_of(key) if key else None)

    def scalar(self, value, field, key):
        ok = (isinstance(value, list) and len(value) == 2
              and all(isinstance(p, (int, float)) and not isinstance(p, bool) for p in value)
              and all(math.isfinite(p) for p in value))
        if not ok:
            self.fail(SCHEMA, f"expected [re, im] pair of finite numbers, got {value!r}", field, key)
        return complex(value[0], value[1])

    def vector(self, value, length, field, key):
        if not isinstance(value, list):
            self.fail(SCHEMA, "expected a list of [re, im] pairs", field, key)
        if len(value) != length:
            self.fail(DIMENSION, f"vector has {len(value)} entries, expected {length}", field, key)
        return np.array([self.scalar(z, f"{field}[{i}]", key) for i, z in enumerate(value)])

    def vectors(self, value, length, key):
        if not isinstance(value, list):
            self.fail(SCHEMA, "expected a list of vectors", key, key)
        return [self.vector(v, length, f"{key}[{i}]", key) for i, v in enumerate(value)]


def relation_from_dict(doc, path=None, text="", tol=DEFAULT_TOL):
    r = _Reader(path, text)
    if not isinstance(doc, dict):
        r.fail(SCHEMA, "top level must be an object", "<root>")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        r.fail(SCHEMA, f"unsupported format_version {version!r}", "format_version", "format_version")

    has_ops = "operator" in doc
    has_gens = "generators" in doc
    if has_ops and has_gens:
        r.fail(SCHEMA, "give either operator or generators, not both", "generators", "generators")
    if not (has_ops or has_gens):
        if "corpus_spec" not in doc:
            r.fail(SCHEMA, "missing operator, generators or corpus_spec", "<root>")
        return _from_spec(r, doc, tol)

    n = doc.get("ambient")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        r.fail(SCHEMA, f"ambient must be a positive integer, got {n!r}", "ambient", "ambient")
    try:
        if has_gens:
            gens = r.vectors(doc["generators"], 2 * n, "generators")
            return rel.build(generators=gens, n=n, tol=tol)
        rows = doc["operator"]
        if not isinstance(rows, list) or len(rows) != n:
            r.fail(DIMENSION, f"operator must have {n} rows", "operator", "operator")
        M = np.array([r.vector(row, n, f"operator[{i}]", "operator") for i, row in enumerate(rows)])
        domain = None
        if doc.get("domain") is not None:
            domain = r.vectors(doc["domain"], n, "domain")
        return rel.build(operator=M, domain=domain, n=n, tol=tol)
    except DimensionMismatchError as exc:
        raise RelationFileError(DIMENSION, str(exc), path) from exc


def _from_spec(r, doc, tol):
    spec_doc = doc["corpus_spec"]
    try:
        spec = CorpusSpec.from_dict(spec_doc)
    except (KeyError, TypeError, ValueError) as exc:
        r.fail(SCHEMA, f"bad corpus_spec: {exc}", "corpus_spec", "corpus_spec")
    n = doc.get("ambient", spec.ambient_dim)
    if n != spec.ambient_dim:
        r.fail(DIMENSION, f"ambient {n} disagrees with corpus_spec ambient_dim {spec.ambient_dim}",
               "ambient", "ambient")
    if spec.kind == "pair":
        r.fail(SCHEMA, "a pair spec describes two relations; store them in two files",
               "corpus_spec.kind", "corpus_spec")
    try:
        return generate(spec, tol)
    except ValueError as exc:
        r.fail(SCHEMA, str(exc), "corpus_spec", "corpus_spec")


def parse_relation_text(text, path=None, tol=DEFAULT_TOL):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RelationFileError(SCHEMA, f"invalid JSON: {exc.msg}", path, line=exc.lineno) from exc
    return relation_from_dict(doc, path, text, tol)


def parse_relation_file(path, tol=DEFAULT_TOL):
    p = Path(path)
    try:
        text = p.read_text()
    except FileNotFoundError as exc:
        raise RelationFileError(MISSING_FILE, "no such file", path) from exc
    except OSError as exc:
        raise RelationFileError(MISSING_FILE, exc.strerror or str(exc), path) from exc
    return parse_relation_text(text, path, tol)
