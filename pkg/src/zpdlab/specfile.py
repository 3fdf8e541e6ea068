"""Spec documents: algebras, bimodules, ideals and idempotent families as text.

A document is either a JSON object or ``key = value`` lines (``#`` starts a
comment, ``;`` may separate entries on one line). Values are JSON or a bare
builder expression::

    algebra = triangular(2)
    bimodule = regular
    ideal = [{"E12": "1"}]

Keys: ``name``, ``algebra``, ``bimodule``, ``ideal``, ``family``.

* algebra: ``matrix(n)``, ``triangular(n)``, ``block([2,1])``, ``remark`` or
  ``{"labels": [...], "unit": [...], "structure": c[i][j][k]}``
* bimodule: ``regular``, ``ambient``, ``remark`` or
  ``{"dim": m, "labels": [...], "left": l[i][j][k], "right": r[j][i][k]}``
* ideal: ``full`` or a list of elements; family: ``standard`` or a list of elements.
  Elements are coordinate lists or ``{label: scalar}`` maps.

Scalars are integers or strings such as ``"1/2-3/4 i"``.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass

from .algebra import (
    Algebra, Bimodule, ambient_matrix_bimodule, block_triangular, matrix_algebra,
    regular_bimodule, remark_bimodule, triangular_algebra,
)
from .errors import ScalarSyntaxError, SpecSyntaxError
from .idempotents import IdealSpec, IdempotentFamily, standard_family, validate_ideal
from .linalg import ZERO, Scalar, Subspace

__all__ = ["SpecDocument", "parse_spec", "load_spec", "algebra_to_json", "bimodule_to_json",
           "build_algebra", "dump_spec"]

KEYS = ("name", "algebra", "bimodule", "ideal", "family")


@dataclass(frozen=True)
class SpecDocument:
    name: str
    algebra: Algebra
    bimodule: Bimodule | None = None
    ideal: IdealSpec | None = None
    family: IdempotentFamily | None = None
    source: str = ""

    def require_bimodule(self) -> Bimodule:
        if self.bimodule is None:
            raise SpecSyntaxError(f"spec {self.name!r} defines no bimodule")
        return self.bimodule

    def require_ideal(self) -> IdealSpec:
        if self.ideal is not None:
            return self.ideal
        return validate_ideal(self.algebra, Subspace.full(self.algebra.dim))

    def family_or_standard(self) -> IdempotentFamily:
        return self.family if self.family is not None else standard_family(self.algebra)


_BUILDER_RE = re.compile(r"\s*(\w+)\s*(?:\((.*)\))?\s*")


def build_algebra(expr: str) -> Algebra:
    """Evaluate a builder expression such as ``matrix(3)`` or ``block([2,1])``."""
    m = _BUILDER_RE.fullmatch(expr)
    if m is None:
        raise SpecSyntaxError(f"unknown algebra expression {expr!r}")
    name, arg = m.group(1), m.group(2)
    try:
        if name == "remark" and arg in (None, ""):
            return remark_bimodule()[0]
        if name in ("matrix", "triangular") and arg is not None:
            n = int(arg)
            return matrix_algebra(n) if name == "matrix" else triangular_algebra(n)
        if name == "block" and arg is not None:
            return block_triangular([int(x) for x in json.loads(arg)])
    except (ValueError, TypeError, json.JSONDecodeError) as exc:
        raise SpecSyntaxError(f"bad argument in {expr!r}: {exc}") from None
    raise SpecSyntaxError(f"unknown algebra expression {expr!r}")


def _scalar(x, where: str) -> Scalar:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise SpecSyntaxError(f"{where}: scalars must be integers or strings, got {x!r}")
    try:
        return Scalar.coerce(x) if isinstance(x, int) else Scalar.parse(x)
    except ScalarSyntaxError as exc:
        raise SpecSyntaxError(f"{where}: {exc}") from None


def _scalars(data, where: str):
    if isinstance(data, list):
        return [_scalars(x, f"{where}[{k}]") for k, x in enumerate(data)]
    return _scalar(data, where)


def _element(data, labels: tuple, where: str) -> tuple:
    if isinstance(data, dict):
        v = [ZERO] * len(labels)
        for lab, c in data.items():
            if lab not in labels:
                raise SpecSyntaxError(f"{where}: unknown basis label {lab!r}")
            v[labels.index(lab)] = _scalar(c, f"{where}.{lab}")
        return tuple(v)
    if not isinstance(data, list) or len(data) != len(labels):
        raise SpecSyntaxError(f"{where}: expected {len(labels)} coordinates")
    return tuple(_scalar(c, f"{where}[{k}]") for k, c in enumerate(data))


def _explicit_algebra(obj: dict) -> Algebra:
    structure = obj.get("structure")
    if structure is None or "unit" not in obj:
        raise SpecSyntaxError("explicit algebra needs 'structure' and 'unit'")
    n = len(structure)
    labels = tuple(obj.get("labels") or [f"e{k + 1}" for k in range(n)])
    return Algebra(n, labels, _scalars(structure, "algebra.structure"),
                   _element(obj["unit"], labels, "algebra.unit"), name=obj.get("name", "explicit"))


def _explicit_bimodule(A: Algebra, obj: dict) -> Bimodule:
    for key in ("dim", "left", "right"):
        if key not in obj:
            raise SpecSyntaxError(f"explicit bimodule needs {key!r}")
    return Bimodule(A, int(obj["dim"]), _scalars(obj["left"], "bimodule.left"),
                    _scalars(obj["right"], "bimodule.right"), labels=tuple(obj.get("labels") or ()),
                    name=obj.get("name", "explicit"))


def _parse_value(raw: str, line: int, col: int):
    raw = raw.strip()
    if not raw:
        raise SpecSyntaxError("missing value", line, col)
    if raw[0] in "[{\"" or raw[0].isdigit() or raw[0] == "-":
        try:
            return json.loads(raw)
        except json.JSONDecodeError as exc:
            raise SpecSyntaxError(f"bad JSON value: {exc.msg}", line, col + exc.colno - 1) from None
    return raw


def _split_entries(line: str):
    """Yield ``(offset, chunk)`` for each ``;``-separated entry, skipping JSON and comments."""
    depth, quoted, start = 0, False, 0
    for pos, ch in enumerate(line):
        if quoted:
            quoted = ch != '"' or line[pos - 1] == "\\"
        elif ch == '"':
            quoted = True
        elif ch in "[{(":
            depth += 1
        elif ch in "]})":
            depth -= 1
        elif ch == "#":
            yield start, line[start:pos]
            return
        elif ch == ";" and depth == 0:
            yield start, line[start:pos]
            start = pos + 1
    yield start, line[start:]


def _key_values(text: str) -> dict:
    out = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        for start, chunk in _split_entries(line):
            if not chunk.strip():
                continue
            if "=" not in chunk:
                col = start + len(chunk) - len(chunk.lstrip()) + 1
                raise SpecSyntaxError("expected 'key = value'", lineno, col)
            key, value = chunk.split("=", 1)
            key = key.strip()
            if key not in KEYS:
                raise SpecSyntaxError(f"unknown key {key!r}", lineno, start + chunk.index(key) + 1)
            out[key] = _parse_value(value, lineno, start + len(key) + 2)
    return out


def parse_spec(text: str) -> SpecDocument:
    """Parse and validate a spec document (axioms and ideal checked on load)."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise SpecSyntaxError(f"bad JSON: {exc.msg}", exc.lineno, exc.colno) from None
        unknown = set(data) - set(KEYS)
        if unknown:
            raise SpecSyntaxError(f"unknown keys {sorted(unknown)}")
    else:
        data = _key_values(text)
    if "algebra" not in data:
        raise SpecSyntaxError("spec has no 'algebra' entry")

    alg = data["algebra"]
    remark_default = alg == "remark"
    if isinstance(alg, str):
        A = build_algebra(alg)
    elif isinstance(alg, dict):
        A = _explicit_algebra(alg)
    else:
        raise SpecSyntaxError("algebra must be a builder expression or an object")

    mod = data.get("bimodule", "remark" if remark_default else None)
    M = None
    if isinstance(mod, str):
        if mod == "regular":
            M = regular_bimodule(A)
        elif mod == "ambient":
            M = ambient_matrix_bimodule(A)
        elif mod == "remark":
            RA, M = remark_bimodule()
            if RA != A:
                raise SpecSyntaxError("the remark bimodule is defined over triangular(2) only")
        else:
            raise SpecSyntaxError(f"unknown bimodule {mod!r}")
    elif isinstance(mod, dict):
        M = _explicit_bimodule(A, mod)
    elif mod is not None:
        raise SpecSyntaxError("bimodule must be a name or an object")

    fam = None
    if "family" in data and data["family"] != "standard":
        if not isinstance(data["family"], list):
            raise SpecSyntaxError("family must be 'standard' or a list of elements")
        fam = IdempotentFamily(A, tuple(_element(x, A.labels, f"family[{k}]")
                                        for k, x in enumerate(data["family"])))

    ideal = None
    if "ideal" in data:
        J = data["ideal"]
        if J == "full":
            space = Subspace.full(A.dim)
        elif isinstance(J, dict) and "basis" in J:
            space = Subspace.span([_element(x, A.labels, f"ideal[{k}]") for k, x in enumerate(J["basis"])], A.dim)
        elif isinstance(J, list):
            space = Subspace.span([_element(x, A.labels, f"ideal[{k}]") for k, x in enumerate(J)], A.dim)
        else:
            raise SpecSyntaxError("ideal must be 'full' or a list of elements")
        ideal = validate_ideal(A, space)

    name = str(data.get("name") or (alg if isinstance(alg, str) else A.name))
    return SpecDocument(name, A, M, ideal, fam, source=text)


def load_spec(arg: str) -> SpecDocument:
    """Read a spec from a file path, or parse ``arg`` itself as inline text."""
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return parse_spec(fh.read())
    return parse_spec(arg)


def algebra_to_json(A: Algebra) -> dict:
    return {
        "labels": list(A.labels),
        "unit": [x.format() for x in A.unit],
        "structure": [[[x.format() for x in cell] for cell in row] for row in A.structure],
    }


def bimodule_to_json(M: Bimodule) -> dict:
    return {
        "dim": M.dim,
        "labels": list(M.labels),
        "left": [[[x.format() for x in cell] for cell in row] for row in M.left],
        "right": [[[x.format() for x in cell] for cell in row] for row in M.right],
    }


def dump_spec(doc: SpecDocument) -> str:
    """Explicit JSON form of a document (round-trips through :func:`parse_spec`)."""
    data: dict = {"name": doc.name, "algebra": algebra_to_json(doc.algebra)}
    if doc.bimodule is not None:
        data["bimodule"] = bimodule_to_json(doc.bimodule)
    if doc.ideal is not None:
        data["ideal"] = [[x.format() for x in v] for v in doc.ideal.space.basis]
    if doc.family is not None:
        data["family"] = [[x.format() for x in v] for v in doc.family.elements]
    return json.dumps(data, indent=1)
