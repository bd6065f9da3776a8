"""Algebra files, Gram files and report documents (all JSON).

Algebra file::

    {"name": "heisenberg3", "dimension": 3, "weights": [1, 1, 2],
     "brackets": [{"i": 1, "j": 2, "coeffs": {"3": "1"}}]}

Gram file: {"gram": [["1", "0"], ["0", "1/2"]]} or the bare nested list; the
Gram is on covectors theta^1..theta^n.  Rationals are strings "p" or "p/q"
(integers are accepted too).
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .lie import LieAlgebraSpec, builtin, validate
from .linalg import Matrix
from .subcomplex import SubcomplexReport

BUILTIN_PREFIX = "builtin:"


class InputError(ValueError):
    """Malformed input; `path` locates the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
        self.message = message

    def as_dict(self) -> dict:
        return {"path": self.path, "message": self.message}


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(x: Any, path: str) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise InputError(path, f"expected a rational string like '3/4', got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            pass
        raise InputError(path, f"not a rational: {x!r}")
    raise InputError(path, f"expected a rational string, got {type(x).__name__}")


def _int(x: Any, path: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(path, f"expected an integer, got {x!r}")
    return x


def _load_json(text: str, where: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{where}:{e.lineno}:{e.colno}", e.msg) from None


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise InputError(path, f"cannot read file ({e.strerror})") from None


# ---------------------------------------------------------------------------
# algebras


def algebra_from_dict(doc: Any) -> LieAlgebraSpec:
    if not isinstance(doc, dict):
        raise InputError("", "algebra document must be an object")
    for key in ("name", "dimension", "weights", "brackets"):
        if key not in doc:
            raise InputError(key, "missing field")
    name = doc["name"]
    if not isinstance(name, str):
        raise InputError("name", "expected a string")
    n = _int(doc["dimension"], "dimension")
    if n < 1:
        raise InputError("dimension", "must be at least 1")
    weights = doc["weights"]
    if not isinstance(weights, list):
        raise InputError("weights", "expected a list of integers")
    w = [_int(x, f"weights[{p}]") for p, x in enumerate(weights)]
    if len(w) != n:
        raise InputError("weights", f"expected {n} entries, got {len(w)}")
    for p, x in enumerate(w):
        if x < 1:
            raise InputError(f"weights[{p}]", "weights must be positive")
        if p and x < w[p - 1]:
            raise InputError(f"weights[{p}]", "weights must be nondecreasing")
    brackets = doc["brackets"]
    if not isinstance(brackets, list):
        raise InputError("brackets", "expected a list of records")
    br: dict[tuple[int, int], dict[int, Fraction]] = {}
    for p, rec in enumerate(brackets):
        at = f"brackets[{p}]"
        if not isinstance(rec, dict):
            raise InputError(at, "expected an object with i, j, coeffs")
        for key in ("i", "j", "coeffs"):
            if key not in rec:
                raise InputError(f"{at}.{key}", "missing field")
        i, j = _int(rec["i"], f"{at}.i"), _int(rec["j"], f"{at}.j")
        if not 1 <= i <= n:
            raise InputError(f"{at}.i", f"index {i} outside 1..{n}")
        if not 1 <= j <= n:
            raise InputError(f"{at}.j", f"index {j} outside 1..{n}")
        if i >= j:
            raise InputError(at, f"requires i < j, got i={i}, j={j}")
        if (i, j) in br:
            raise InputError(at, f"duplicate bracket [e{i}, e{j}]")
        coeffs = rec["coeffs"]
        if not isinstance(coeffs, dict):
            raise InputError(f"{at}.coeffs", "expected a mapping index -> rational")
        vec = {}
        for key, val in coeffs.items():
            try:
                k = int(key)
            except ValueError:
                raise InputError(f"{at}.coeffs.{key}", "index must be an integer") from None
            if not 1 <= k <= n:
                raise InputError(f"{at}.coeffs.{key}", f"index {k} outside 1..{n}")
            vec[k] = parse_rational(val, f"{at}.coeffs.{key}")
        br[(i, j)] = vec
    return LieAlgebraSpec(name, n, tuple(w), br)


def algebra_to_dict(spec: LieAlgebraSpec) -> dict:
    return {
        "name": spec.name,
        "dimension": spec.n,
        "weights": list(spec.weights),
        "brackets": [{"i": i, "j": j, "coeffs": {str(k): format_rational(c) for k, c in vec.items()}}
                     for (i, j), vec in spec.brackets.items()],
    }


def load_algebra(source: str) -> LieAlgebraSpec:
    """A path to an algebra file or builtin:NAME; syntax is checked, validity is not."""
    if source.startswith(BUILTIN_PREFIX):
        name = source[len(BUILTIN_PREFIX):]
        try:
            return builtin(name)
        except KeyError as e:
            raise InputError("source", e.args[0]) from None
    return algebra_from_dict(_load_json(_read(source), source))


def validation_document(spec: LieAlgebraSpec) -> dict:
    rep = validate(spec)
    violations = [{"kind": "jacobi", "triple": list(t),
                   "residual": {str(k): format_rational(v) for k, v in res.items()}}
                  for t, res in rep.jacobi]
    violations += [{"kind": "filtration", "pair": list(p), "component": k} for p, k in rep.filtration]
    return {"name": spec.name, "ok": rep.ok, "graded": rep.graded, "violations": violations,
            "messages": rep.messages()}


# ---------------------------------------------------------------------------
# Grams


def gram_from_doc(doc: Any, n: int) -> Matrix:
    rows = doc.get("gram") if isinstance(doc, dict) else doc
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError("gram", "expected a square nested list of rationals")
    if len(rows) != n or any(len(r) != n for r in rows):
        raise InputError("gram", f"expected a {n}x{n} matrix")
    return Matrix([[parse_rational(x, f"gram[{a}][{b}]") for b, x in enumerate(r)] for a, r in enumerate(rows)])


def load_gram(source: str | None, n: int) -> Matrix | None:
    """None for "identity" (or no source), else the degree-1 Gram from a file."""
    if source is None or source == "identity":
        return None
    return gram_from_doc(_load_json(_read(source), source), n)


def gram_to_doc(G: Matrix) -> dict:
    return {"gram": matrix_to_list(G)}


# ---------------------------------------------------------------------------
# reports


def matrix_to_list(M: Matrix) -> list[list[str]]:
    return [[format_rational(x) for x in r] for r in M.rows]


def report_to_dict(report: SubcomplexReport, emit_matrices: bool = False) -> dict:
    """Structured report.  The differential choice is not part of the payload
    (at constant coefficients the two pipelines agree)."""
    doc: dict[str, Any] = {
        "name": report.name,
        "gram_fingerprint": report.gram_fingerprint,
        "dims_E0": list(report.dims_E0),
        "dims_F0": list(report.dims_F0),
        "betti": list(report.betti),
        "oracle_betti": list(report.oracle_betti),
        "ok": report.ok,
        "ledger": {k: ("pass" if e.ok else f"fail: {e.witness}") for k, e in report.ledger.items()},
    }
    if emit_matrices:
        ops = report.ops
        b = report.bundle
        families = {"d": ops["d"], "d0": ops["d0"], "delta0": ops["delta0"], "D": ops["D"], "C": ops["C"],
                    "d_c": ops["d_c"], "Pi0": b.Pi0, "P": b.P, "PiF": b.PiF, "L": b.L, "Linv": b.Linv,
                    "d0inv": b.d0inv, "g": ops["g"], "h": ops["h"]}
        doc["matrices"] = {
            "E0_basis": [matrix_to_list(M) for M in report.E0_bases],
            "F0_basis": [matrix_to_list(M) for M in report.F0_bases],
            "D_E0": [matrix_to_list(M) for M in report.D_E0],
            "C_F0": [matrix_to_list(M) for M in report.C_F0],
        }
        for key, fam in families.items():
            doc["matrices"][key] = [matrix_to_list(M) for M in fam.mats]
    return doc


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def loads_report(text: str) -> dict:
    doc = _load_json(text, "report")
    if not isinstance(doc, dict) or "dims_E0" not in doc:
        raise InputError("report", "not a subcomplex report")
    return doc


def report_matrices(doc: dict, key: str) -> list[list[list[Fraction]]]:
    return [[[parse_rational(x, f"matrices.{key}") for x in r] for r in M] for M in doc["matrices"][key]]


def _fmt_tuple(xs) -> str:
    return "(" + ", ".join(str(x) for x in xs) + ")"


def report_to_text(report: SubcomplexReport, emit_matrices: bool = False) -> str:
    lines = [
        f"algebra: {report.name}",
        f"gram: {report.gram_fingerprint}",
        f"E0 dims: {_fmt_tuple(report.dims_E0)}",
        f"F0 dims: {_fmt_tuple(report.dims_F0)}",
        f"Betti (E0, D): {_fmt_tuple(report.betti)}",
        f"Betti oracle: {_fmt_tuple(report.oracle_betti)}",
    ]
    passed = sum(e.ok for e in report.ledger.values())
    lines.append(f"ledger: {passed}/{len(report.ledger)} pass")
    for name, e in report.ledger.items():
        lines.append(f"  [{'pass' if e.ok else 'FAIL'}] {name}" + ("" if e.ok else f": {e.witness}"))
    if emit_matrices:
        doc = report_to_dict(report, emit_matrices=True)["matrices"]
        for key in sorted(doc):
            for k, M in enumerate(doc[key]):
                body = "; ".join(", ".join(r) for r in M)
                lines.append(f"{key}[{k}] = [{body}]")
    return "\n".join(lines) + "\n"
