"""Lie algebras with complex structure: built-in surface families and
user-supplied structure-constant tables."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from pathlib import Path
from typing import Dict, Mapping, Optional, Tuple

from .forms import BAR, INDEX_NAMES, Form
from .scalars import ONE, ZERO, I, Scalar, ScalarParseError, format_scalar, parse_rational, parse_scalar

Triple = Tuple[int, int, int]

SURFACES = ("hopf", "inoue_sm", "inoue_spm", "kodaira_primary", "kodaira_secondary")
SURFACE_PARAMS: Dict[str, Tuple[str, ...]] = {
    "hopf": (),
    "inoue_sm": ("alpha", "beta"),
    "inoue_spm": ("q",),
    "kodaira_primary": (),
    "kodaira_secondary": (),
}


class CatalogError(ValueError):
    pass


class UnknownSurface(CatalogError):
    pass


class MissingParam(CatalogError):
    pass


class InvalidParam(CatalogError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.line = line
        self.field = field


class ValidationError(ValueError):
    def __init__(self, report: "ValidationReport"):
        super().__init__(f"invalid structure constants: {report.summary()}")
        self.report = report


@dataclass(frozen=True)
class AlgebraSpec:
    """Structure constants ``[phi_I, phi_H] = c_{IH}^K phi_K`` over the frame
    ``(phi_1, phi_2, phi_1b, phi_2b)``; ``c`` holds the nonzero entries."""

    name: str
    params: Mapping[str, Fraction] = field(default_factory=dict)
    c: Mapping[Triple, Scalar] = field(default_factory=dict)

    def constant(self, i: int, h: int, k: int) -> Scalar:
        return self.c.get((i, h, k), ZERO)

    def structure_equations(self) -> Tuple[Form, Form]:
        """``(d phi^1, d phi^2)`` read off the table."""
        out = []
        for k in (0, 1):
            out.append(Form({(a, b): -self.constant(a, b, k) for a, b in combinations(range(4), 2)}))
        return out[0], out[1]

    def key(self) -> Tuple:
        return (self.name, tuple(sorted(self.params.items())), tuple(sorted(self.c.items())))


def from_structure_equations(name: str, dphi1: Form, dphi2: Form, params=None) -> AlgebraSpec:
    """Table of constants for ``d phi^i`` given on the (1,0)-coframe.

    Uses ``d phi^K = - sum_{I<H} c_{IH}^K phi^{IH}``; the barred half follows by
    conjugation and the lower pair is antisymmetric.
    """
    c: Dict[Triple, Scalar] = {}
    for k, dphi in ((0, dphi1), (1, dphi2)):
        for mono, v in dphi.items():
            if len(mono) != 2:
                raise ValueError("structure equations must be 2-forms")
            a, b = mono
            val = -v
            c[(a, b, k)] = val
            c[(b, a, k)] = -val
            c[(BAR[a], BAR[b], BAR[k])] = val.conj()
            c[(BAR[b], BAR[a], BAR[k])] = -val.conj()
    return AlgebraSpec(name, dict(params or {}), {t: v for t, v in c.items() if v})


def abelian_spec() -> AlgebraSpec:
    return AlgebraSpec("abelian", {}, {})


def _phi(text: str, coeff) -> Form:
    return Form.monomial(text, coeff)


def load_surface(name: str, params: Optional[Mapping[str, object]] = None) -> AlgebraSpec:
    """Structure constants of a catalog surface.

    ``params`` values may be ints, Fractions or rational text. ``inoue_sm``
    takes ``alpha`` (nonzero) and ``beta``; ``inoue_spm`` takes ``q``.
    """
    if name not in SURFACES:
        raise UnknownSurface(f"unknown surface {name!r}; choose from {', '.join(SURFACES)}")
    raw = dict(params or {})
    wanted = SURFACE_PARAMS[name]
    extra = set(raw) - set(wanted)
    if extra:
        raise InvalidParam(f"{name} takes no parameter(s) {sorted(extra)}")
    p: Dict[str, Fraction] = {}
    for key in wanted:
        if key not in raw:
            raise MissingParam(f"{name} requires parameter {key!r}")
        v = raw[key]
        try:
            p[key] = parse_rational(v) if isinstance(v, str) else Fraction(v)
        except (ScalarParseError, TypeError, ValueError) as exc:
            raise InvalidParam(f"parameter {key}={v!r} is not a rational number") from exc
        if isinstance(v, float):
            raise InvalidParam(f"parameter {key}: floats are not accepted")

    half = Fraction(1, 2)
    if name == "hopf":
        d1 = _phi("12", I) + _phi("12b", I)
        d2 = _phi("11b", -I)
    elif name == "inoue_sm":
        alpha, beta = p["alpha"], p["beta"]
        if alpha == 0:
            raise InvalidParam("inoue_sm requires alpha != 0")
        coef = Scalar(alpha, -beta) / (2 * I)
        d1 = _phi("12", coef) + _phi("12b", -coef)
        d2 = _phi("22b", -I * alpha)
    elif name == "inoue_spm":
        q = p["q"]
        coef = ONE / (2 * I)
        d1 = _phi("12", coef) + _phi("21b", coef) + _phi("22b", I * q * half)
        d2 = _phi("22b", coef)
    elif name == "kodaira_primary":
        d1 = Form()
        d2 = _phi("11b", I * half)
    else:  # kodaira_secondary
        d1 = _phi("12", -half) + _phi("12b", half)
        d2 = _phi("11b", I * half)
    return from_structure_equations(name, d1, d2, p)


# -- validation -----------------------------------------------------------------


def triple_name(t: Tuple[int, ...]) -> str:
    return "(" + ",".join(INDEX_NAMES[a] for a in t) + ")"


@dataclass
class CheckResult:
    passed: bool
    violation: Optional[Tuple[int, ...]] = None

    def describe(self) -> str:
        if self.passed:
            return "pass"
        return f"fail at {triple_name(self.violation)}"


@dataclass
class ValidationReport:
    checks: Dict[str, CheckResult]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.checks.values())

    def summary(self) -> str:
        return "; ".join(f"{k}: {v.describe()}" for k, v in self.checks.items())


def _check_antisymmetry(c) -> CheckResult:
    for i, h, k in product(range(4), repeat=3):
        if c.get((i, h, k), ZERO) != -c.get((h, i, k), ZERO):
            return CheckResult(False, (i, h, k))
    return CheckResult(True)


def _check_reality(c) -> CheckResult:
    for i, h, k in product(range(4), repeat=3):
        if c.get((BAR[i], BAR[h], BAR[k]), ZERO) != c.get((i, h, k), ZERO).conj():
            return CheckResult(False, (i, h, k))
    return CheckResult(True)


def _check_jacobi(c) -> CheckResult:
    # sum over cyclic (I,H,K) of [[X_I, X_H], X_K] = 0, component M
    for i, h, k in combinations(range(4), 3):
        for m in range(4):
            total = ZERO
            for a, b, e in ((i, h, k), (h, k, i), (k, i, h)):
                for l in range(4):
                    x = c.get((a, b, l))
                    if x:
                        y = c.get((l, e, m))
                        if y:
                            total = total + x * y
            if total:
                return CheckResult(False, (i, h, k, m))
    return CheckResult(True)


def _check_integrability(c) -> CheckResult:
    # d phi^i has no (0,2) part: c_{1b 2b}^i = 0 for unbarred i
    for k in (0, 1):
        if c.get((2, 3, k), ZERO) or c.get((3, 2, k), ZERO):
            return CheckResult(False, (2, 3, k))
    return CheckResult(True)


def validate(spec: AlgebraSpec) -> ValidationReport:
    c = dict(spec.c)
    return ValidationReport(
        {
            "antisymmetry": _check_antisymmetry(c),
            "reality": _check_reality(c),
            "jacobi": _check_jacobi(c),
            "integrability": _check_integrability(c),
        }
    )


# -- spec files -----------------------------------------------------------------

_INDEX_CODE = {name: n for n, name in enumerate(INDEX_NAMES)}


def complete_constants(entries: Mapping[Triple, Scalar]) -> Dict[Triple, Scalar]:
    """Close a partial table under antisymmetry and conjugation.

    Raises ValueError when two declared entries disagree with each other.
    """
    out: Dict[Triple, Scalar] = {}

    def put(t, v):
        if t in out and out[t] != v:
            raise ValueError(f"conflicting values for c{triple_name(t)}: {out[t]} vs {v}")
        out[t] = v

    for (i, h, k), v in entries.items():
        put((i, h, k), v)
        put((h, i, k), -v)
        put((BAR[i], BAR[h], BAR[k]), v.conj())
        put((BAR[h], BAR[i], BAR[k]), -v.conj())
    return {t: v for t, v in out.items() if v}


def _line_of(text: str, needle_index: int) -> int:
    return text.count("\n", 0, needle_index) + 1


def parse_spec(text: str) -> AlgebraSpec:
    """Parse the JSON spec-file format and complete the constant table."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    if not isinstance(data, dict):
        raise ParseError("top level must be an object", line=1)
    name = data.get("name", "custom")
    if not isinstance(name, str):
        raise ParseError("name must be a string", field="name")
    params: Dict[str, Fraction] = {}
    for key, val in (data.get("params") or {}).items():
        try:
            params[key] = parse_rational(str(val)) if not isinstance(val, int) else Fraction(val)
        except ScalarParseError as exc:
            raise ParseError(str(exc), field=f"params.{key}") from None
    constants = data.get("constants") or []
    if not isinstance(constants, list):
        raise ParseError("constants must be a list", field="constants")
    entries: Dict[Triple, Scalar] = {}
    for n, entry in enumerate(constants):
        where = f"constants[{n}]"
        if not isinstance(entry, dict):
            raise ParseError("constant entry must be an object", field=where)
        idx = []
        for key in ("i", "h", "k"):
            code = entry.get(key)
            if code not in _INDEX_CODE:
                raise ParseError(f"index must be one of {list(_INDEX_CODE)}", field=f"{where}.{key}")
            idx.append(_INDEX_CODE[code])
        value = entry.get("value")
        if isinstance(value, int) and not isinstance(value, bool):
            v = Scalar(value)
        else:
            try:
                v = parse_scalar(value)
            except ScalarParseError as exc:
                raise ParseError(str(exc), field=f"{where}.value") from None
        t = tuple(idx)
        if t in entries and entries[t] != v:
            raise ParseError("duplicate constant with a different value", field=where)
        entries[t] = v
    try:
        c = complete_constants(entries)
    except ValueError as exc:
        raise ParseError(str(exc), field="constants") from None
    return AlgebraSpec(name, params, c)


def ingest_spec_text(text: str) -> AlgebraSpec:
    spec = parse_spec(text)
    report = validate(spec)
    if not report.ok:
        raise ValidationError(report)
    return spec


def ingest_spec_file(path) -> AlgebraSpec:
    return ingest_spec_text(Path(path).read_text(encoding="utf-8"))


def spec_to_json(spec: AlgebraSpec, full: bool = False) -> dict:
    """Serialize; by default only one representative per antisymmetric and
    conjugate orbit is written."""
    seen = set()
    rows = []
    for (i, h, k), v in sorted(spec.c.items()):
        orbit = {(i, h, k), (h, i, k), (BAR[i], BAR[h], BAR[k]), (BAR[h], BAR[i], BAR[k])}
        if not full and orbit & seen:
            continue
        seen.add((i, h, k))
        rows.append({"i": INDEX_NAMES[i], "h": INDEX_NAMES[h], "k": INDEX_NAMES[k], "value": format_scalar(v)})
    return {
        "name": spec.name,
        "params": {k: str(v) for k, v in spec.params.items()},
        "constants": rows,
    }
