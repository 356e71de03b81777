"""Geometric formality verdicts: is a harmonic space closed under wedge product?"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .catalog import load_surface
from .flow import metric_at, solve_flow
from .forms import Form
from .harmonic import HarmonicBasis, harmonic_basis, harmonic_spaces
from .hodge import Metric
from .scalars import Scalar

PROPERTIES = ("kotschick", "dolbeault", "bott_chern", "aeppli_algebra", "aeppli_bc_module")
HEADERS = {
    "kotschick": "Kotschick",
    "dolbeault": "Dolbeault",
    "bott_chern": "Bott-Chern",
    "aeppli_algebra": "Aeppli algebra",
    "aeppli_bc_module": "Aeppli BC-module",
}
_KIND_OF = {"kotschick": "dR", "dolbeault": "Dolbeault", "bott_chern": "BottChern"}


@dataclass
class Witness:
    """Two harmonic forms whose product is not harmonic of the target kind."""

    left: Form
    right: Form
    product: Form
    target: str

    def to_json(self) -> dict:
        return {
            "left": self.left.to_json(),
            "right": self.right.to_json(),
            "product": self.product.to_json(),
            "target": self.target,
        }

    def __str__(self):
        return f"({self.left}) ^ ({self.right}) = {self.product} is not {self.target}-harmonic"


@dataclass
class FormalityVerdict:
    kotschick: bool
    dolbeault: bool
    bott_chern: bool
    aeppli_algebra: bool
    aeppli_bc_module: bool
    witnesses: Dict[str, Witness] = field(default_factory=dict)

    def as_tuple(self) -> Tuple[bool, ...]:
        return tuple(getattr(self, p) for p in PROPERTIES)

    def letters(self) -> str:
        return "(" + ",".join("T" if v else "F" for v in self.as_tuple()) + ")"

    def to_json(self) -> dict:
        out = {p: getattr(self, p) for p in PROPERTIES}
        out["witnesses"] = {k: w.to_json() for k, w in self.witnesses.items()}
        return out


def _grading_of_product(kind: str, a: HarmonicBasis, b: HarmonicBasis):
    if kind == "dR":
        k = a.grading + b.grading
        return k if k <= 4 else None
    p, q = a.grading[0] + b.grading[0], a.grading[1] + b.grading[1]
    return (p, q) if p <= 2 and q <= 2 else None


def _products_harmonic(
    left: Dict, right: Dict, target_kind: str, spec, m: Metric, symmetric: bool
) -> Optional[Witness]:
    """First pair (in grading order) whose product leaves the target harmonic space."""
    lkeys = list(left)
    for i, g1 in enumerate(lkeys):
        for g2 in right:
            if symmetric and lkeys.index(g2) < i:
                continue
            a, b = left[g1], right[g2]
            if not a.basis or not b.basis:
                continue
            g = _grading_of_product(target_kind, a, b)
            if g is None:
                continue
            target = harmonic_basis(target_kind, spec, m, g)
            for x in a.basis:
                for y in b.basis:
                    prod = x ^ y
                    if prod and not target.contains(prod):
                        return Witness(x, y, prod, target_kind)
    return None


def check_closure(kind: str, spec, m: Metric) -> Tuple[bool, Optional[Witness]]:
    """Whether the harmonic space of ``kind`` is closed under wedge (on basis pairs)."""
    spaces = harmonic_spaces(kind, spec, m)
    w = _products_harmonic(spaces, spaces, kind, spec, m, symmetric=True)
    return w is None, w


def check_aeppli_algebra(spec, m: Metric) -> Tuple[bool, Optional[Witness]]:
    return check_closure("Aeppli", spec, m)


def check_aeppli_module(spec, m: Metric) -> Tuple[bool, Optional[Witness]]:
    bc = harmonic_spaces("BottChern", spec, m)
    a = harmonic_spaces("Aeppli", spec, m)
    w = _products_harmonic(bc, a, "Aeppli", spec, m, symmetric=False)
    return w is None, w


def verdict(spec, m: Metric) -> FormalityVerdict:
    values, witnesses = {}, {}
    for prop, kind in _KIND_OF.items():
        values[prop], w = check_closure(kind, spec, m)
        if w is not None:
            witnesses[prop] = w
    values["aeppli_algebra"], w = check_aeppli_algebra(spec, m)
    if w is not None:
        witnesses["aeppli_algebra"] = w
    values["aeppli_bc_module"], w = check_aeppli_module(spec, m)
    if w is not None:
        witnesses["aeppli_bc_module"] = w
    return FormalityVerdict(witnesses=witnesses, **values)


def verdict_along_flow(spec, m0: Metric, times: Sequence) -> List[Tuple[Fraction, FormalityVerdict]]:
    sol = solve_flow(spec, m0)
    return [(Fraction(t), verdict(spec, metric_at(sol, t))) for t in times]


def is_preserved(trajectory: Sequence[Tuple[Fraction, FormalityVerdict]]) -> bool:
    return len({v.as_tuple() for _, v in trajectory}) <= 1


# -- summary table ----------------------------------------------------------------

TABLE_SURFACES = (
    ("Hopf", "hopf", {}),
    ("Inoue-Bombieri S_M", "inoue_sm", {"alpha": 1, "beta": Fraction(1, 2)}),
    ("Inoue S+-", "inoue_spm", {"q": 1}),
    ("primary Kodaira", "kodaira_primary", {}),
    ("secondary Kodaira", "kodaira_secondary", {}),
)

# the published summary: "always", "never", or "diagonal" (true iff u = 0)
PUBLISHED = {
    "hopf": ("always", "always", "always", "diagonal", "always"),
    "inoue_sm": ("always", "always", "always", "diagonal", "always"),
    "inoue_spm": ("always", "always", "always", "diagonal", "always"),
    "kodaira_primary": ("never", "never", "never", "never", "never"),
    "kodaira_secondary": ("always", "always", "always", "diagonal", "always"),
}

STATIC_ROW = ("class VII b2>0", ("never", "?", "?", "?", "?"), "obstruction, not computed")

SAMPLE_METRICS = {
    "diagonal": (Metric(1, 1, 0), Metric(2, 3, 0), Metric(Fraction(1, 2), 5, 0)),
    "generic": (
        Metric(1, 1, Scalar(Fraction(1, 2))),
        Metric(3, 2, Scalar(Fraction(1, 2), Fraction(1, 3))),
        Metric(2, 5, Scalar(-1, 2)),
    ),
}


def published_value(entry: str, diagonal: bool) -> bool:
    if entry == "diagonal":
        return diagonal
    return entry == "always"


@dataclass
class TableRow:
    label: str
    surface: str
    values: Tuple[Optional[bool], ...]  # None when the verdict varies over the sample
    expected: Tuple[bool, ...]

    @property
    def matches(self) -> bool:
        return self.values == self.expected


@dataclass
class Table1:
    metric_choice: str
    rows: List[TableRow]

    @property
    def matches(self) -> bool:
        return all(r.matches for r in self.rows)

    def mismatches(self) -> List[Tuple[str, str, Optional[bool], bool]]:
        out = []
        for r in self.rows:
            for p, got, want in zip(PROPERTIES, r.values, r.expected):
                if got != want:
                    out.append((r.surface, p, got, want))
        return out

    def to_json(self) -> dict:
        return {
            "metric_choice": self.metric_choice,
            "properties": list(PROPERTIES),
            "rows": [
                {
                    "surface": r.surface,
                    "label": r.label,
                    "computed": list(r.values),
                    "published": list(r.expected),
                }
                for r in self.rows
            ],
            "static_rows": [{"label": STATIC_ROW[0], "values": list(STATIC_ROW[1]), "note": STATIC_ROW[2]}],
            "matches_published": self.matches,
        }

    def render(self) -> str:
        def cell(v):
            return "varies" if v is None else ("T" if v else "F")

        head = ["surface"] + [HEADERS[p] for p in PROPERTIES]
        body = [[STATIC_ROW[0] + " *"] + list(STATIC_ROW[1])]
        for r in self.rows:
            cells = []
            for got, want in zip(r.values, r.expected):
                c = cell(got)
                if got != want:
                    c += " (published " + cell(want) + ")"
                cells.append(c)
            body.append([r.label] + cells)
        widths = [max(len(row[i]) for row in [head] + body) for i in range(len(head))]
        lines = [f"metrics: {self.metric_choice} (invariant)"]
        fmt = lambda row: " | ".join(s.ljust(w) for s, w in zip(row, widths))
        lines.append(fmt(head))
        lines.append("-+-".join("-" * w for w in widths))
        lines.extend(fmt(row) for row in body)
        lines.append(f"* {STATIC_ROW[2]}")
        return "\n".join(lines)


def table1(metric_choice: str = "generic", metrics: Optional[Sequence[Metric]] = None) -> Table1:
    if metric_choice not in SAMPLE_METRICS:
        raise ValueError("metric_choice must be 'diagonal' or 'generic'")
    diagonal = metric_choice == "diagonal"
    sample = tuple(metrics) if metrics is not None else SAMPLE_METRICS[metric_choice]
    if any(m.is_diagonal != diagonal for m in sample):
        raise ValueError(f"sample metrics are not all {metric_choice}")
    rows = []
    for label, name, params in TABLE_SURFACES:
        spec = load_surface(name, params)
        verdicts = [verdict(spec, m).as_tuple() for m in sample]
        values = tuple(
            verdicts[0][i] if all(v[i] == verdicts[0][i] for v in verdicts) else None for i in range(len(PROPERTIES))
        )
        expected = tuple(published_value(e, diagonal) for e in PUBLISHED[name])
        rows.append(TableRow(label, name, values, expected))
    return Table1(metric_choice, rows)


def table1_json(*tables: Table1) -> str:
    return json.dumps([t.to_json() for t in tables], indent=2)
