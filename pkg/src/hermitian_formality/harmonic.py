"""Laplacians, harmonic spaces and cohomology dimensions on invariant forms."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Sequence, Tuple, Union

from .forms import BIDEGREES, INDEX_OF, MONOMIALS, Form, Operator, forms_basis, generator
from .hodge import HermitianModel, Metric, get_model
from .linalg import nullspace, rank, same_span, solve
from .scalars import Scalar

Grading = Union[int, Tuple[int, int]]

KINDS = ("dR", "Dolbeault", "BottChern", "Aeppli")
# conjugate-Dolbeault (del-Laplacian) spaces, needed for the star duality
DEL_KIND = "Del"

_ALIASES = {
    "dr": "dR",
    "derham": "dR",
    "de_rham": "dR",
    "dolbeault": "Dolbeault",
    "delbar": "Dolbeault",
    "bc": "BottChern",
    "bottchern": "BottChern",
    "bott_chern": "BottChern",
    "a": "Aeppli",
    "aeppli": "Aeppli",
    "del": DEL_KIND,
}


def normalize_kind(kind: str) -> str:
    if kind in KINDS or kind == DEL_KIND:
        return kind
    try:
        return _ALIASES[kind.lower().replace("-", "_")]
    except KeyError:
        raise ValueError(f"unknown Laplacian kind {kind!r}") from None


def gradings(kind: str) -> List[Grading]:
    return list(range(5)) if normalize_kind(kind) == "dR" else list(BIDEGREES)


@dataclass
class HarmonicBasis:
    kind: str
    grading: Grading
    basis: List[Form]

    def __len__(self):
        return len(self.basis)

    def vectors(self) -> List[List[Scalar]]:
        mons = forms_basis(self.grading)
        return [f.vector(mons) for f in self.basis]

    def contains(self, form: Form) -> bool:
        """Exact membership of ``form`` in the span."""
        mons = forms_basis(self.grading)
        if any(m not in mons for m, _ in form.items()):
            return form.is_zero()
        v = form.vector(mons)
        vecs = self.vectors()
        return rank(vecs + [v]) == rank(vecs) if vecs else not any(v)

    def same_span(self, forms: Sequence[Form]) -> bool:
        mons = forms_basis(self.grading)
        return same_span(self.vectors(), [f.vector(mons) for f in forms], len(mons))

    def to_json(self) -> dict:
        g = list(self.grading) if isinstance(self.grading, tuple) else self.grading
        return {"kind": self.kind, "grading": g, "basis": [f.to_json() for f in self.basis]}


class Laplacians:
    """The four Laplacians (and the del-Laplacian) of one Hermitian model."""

    def __init__(self, model: HermitianModel):
        self.model = model

    @cached_property
    def dR(self) -> Operator:
        M = self.model
        return M.d @ M.d_star + M.d_star @ M.d

    @cached_property
    def Dolbeault(self) -> Operator:
        M = self.model
        return M.delbar @ M.delbar_star + M.delbar_star @ M.delbar

    @cached_property
    def Del(self) -> Operator:
        M = self.model
        return M.del_ @ M.del_star + M.del_star @ M.del_

    @cached_property
    def BottChern(self) -> Operator:
        M = self.model
        dl, db, dls, dbs = M.del_, M.delbar, M.del_star, M.delbar_star
        return (
            dl @ db @ dbs @ dls
            + dbs @ dls @ dl @ db
            + dbs @ dl @ dls @ db
            + dls @ db @ dbs @ dl
            + dbs @ db
            + dls @ dl
        )

    @cached_property
    def Aeppli(self) -> Operator:
        # fifth summand is del delbar* delbar del*, the self-adjoint form
        M = self.model
        dl, db, dls, dbs = M.del_, M.delbar, M.del_star, M.delbar_star
        return (
            dl @ dls
            + db @ dbs
            + dbs @ dls @ dl @ db
            + dl @ db @ dbs @ dls
            + dl @ dbs @ db @ dls
            + db @ dls @ dl @ dbs
        )

    @cached_property
    def AeppliPrinted(self) -> Operator:
        """Variant with fifth summand ``del delbar* del del*``; not self-adjoint in
        general, kept only to compare kernels."""
        M = self.model
        dl, db, dls, dbs = M.del_, M.delbar, M.del_star, M.delbar_star
        return (
            dl @ dls
            + db @ dbs
            + dbs @ dls @ dl @ db
            + dl @ db @ dbs @ dls
            + dl @ dbs @ dl @ dls
            + db @ dls @ dl @ dbs
        )

    def get(self, kind: str) -> Operator:
        return getattr(self, normalize_kind(kind))


def _laplacians(model: HermitianModel) -> Laplacians:
    lap = model.__dict__.get("_laplacians")
    if lap is None:
        lap = Laplacians(model)
        model.__dict__["_laplacians"] = lap
    return lap


def laplacian(kind: str, spec, m: Metric) -> Operator:
    return _laplacians(get_model(spec, m)).get(kind)


def _kernel_forms(ops: Sequence[Operator], grading: Grading) -> List[Form]:
    dom = forms_basis(grading)
    rows: List[List[Scalar]] = []
    for op in ops:
        touched = set()
        for mono in dom:
            touched.update(op.cols[INDEX_OF[mono]].keys())
        cod = [MONOMIALS[i] for i in sorted(touched)]
        rows.extend(op.block(dom, cod))
    return [Form.from_vector(v, dom) for v in nullspace(rows, len(dom))]


def harmonic_basis(kind: str, spec, m: Metric, grading: Grading) -> HarmonicBasis:
    """Exact kernel of the Laplacian on one grading (echelon-normalized)."""
    kind = normalize_kind(kind)
    lap = laplacian(kind, spec, m)
    cache = get_model(spec, m).__dict__.setdefault("_harmonic", {})
    key = (kind, grading)
    if key not in cache:
        cache[key] = HarmonicBasis(kind, grading, _kernel_forms([lap], grading))
    hb = cache[key]
    return HarmonicBasis(hb.kind, hb.grading, list(hb.basis))


def harmonic_spaces(kind: str, spec, m: Metric) -> Dict[Grading, HarmonicBasis]:
    return {g: harmonic_basis(kind, spec, m, g) for g in gradings(kind)}


def kernel_characterization(kind: str, spec, m: Metric, grading: Tuple[int, int]) -> HarmonicBasis:
    """Harmonic space from the first-order conditions.

    Bott-Chern: ``del h = delbar h = 0`` and ``del delbar * h = 0``.
    Aeppli: ``del delbar h = 0`` and ``del * h = delbar * h = 0``.
    """
    kind = normalize_kind(kind)
    M = get_model(spec, m)
    if kind == "BottChern":
        ops = [M.del_, M.delbar, M.del_delbar @ M.star]
    elif kind == "Aeppli":
        ops = [M.del_delbar, M.del_ @ M.star, M.delbar @ M.star]
    else:
        raise ValueError("kernel characterization is defined for BottChern and Aeppli")
    return HarmonicBasis(kind, grading, _kernel_forms(ops, grading))


def cohomology_dims(spec, m: Metric) -> Dict[str, Dict[Grading, int]]:
    return {k: {g: len(harmonic_basis(k, spec, m, g)) for g in gradings(k)} for k in KINDS}


def betti_numbers(spec, m: Metric) -> Tuple[int, ...]:
    return tuple(len(harmonic_basis("dR", spec, m, k)) for k in range(5))


# -- harmonic representatives of classes ------------------------------------------


def _closed_ops(kind: str, M: HermitianModel) -> List[Operator]:
    return {
        "dR": [M.d],
        "Dolbeault": [M.delbar],
        "Del": [M.del_],
        "BottChern": [M.del_, M.delbar],
        "Aeppli": [M.del_delbar],
    }[kind]


def _exact_generators(kind: str, M: HermitianModel, grading: Grading) -> List[Form]:
    out: List[Form] = []

    def images(op: Operator, src: Grading):
        if isinstance(src, int):
            if src < 0:
                return
        elif min(src) < 0:
            return
        for mono in forms_basis(src):
            img = op(Form({mono: 1}))
            if img:
                out.append(img)

    if kind == "dR":
        images(M.d, grading - 1)
    else:
        p, q = grading
        if kind == "Dolbeault":
            images(M.delbar, (p, q - 1))
        elif kind == "Del":
            images(M.del_, (p - 1, q))
        elif kind == "BottChern":
            images(M.del_delbar, (p - 1, q - 1))
        elif kind == "Aeppli":
            images(M.del_, (p - 1, q))
            images(M.delbar, (p, q - 1))
    return out


def _grading_of(kind: str, form: Form) -> Grading:
    if kind == "dR":
        return form.degree
    bds = form.bidegrees()
    if len(bds) != 1:
        raise ValueError("form must have a single bidegree")
    return bds.pop()


class NotClosed(ValueError):
    pass


def harmonic_representative(kind: str, spec, m: Metric, form: Form) -> Form:
    """The unique harmonic form in the class of ``form``.

    Solves ``Lap(form + e) = 0`` over exact invariant forms ``e`` of the
    matching cohomology; ``form`` must be closed for that cohomology.
    """
    kind = normalize_kind(kind)
    M = get_model(spec, m)
    if any(op(form) for op in _closed_ops(kind, M)):
        raise NotClosed(f"form is not {kind}-closed")
    if form.is_zero():
        return form
    grading = _grading_of(kind, form)
    lap = _laplacians(M).get(kind)
    gens = _exact_generators(kind, M, grading)
    mons = forms_basis(grading)
    target = lap(form).vector(mons)
    if not gens:
        if any(target):
            raise ArithmeticError("class has no harmonic representative")
        return form
    cols = [lap(e).vector(mons) for e in gens]
    rows = [[c[i] for c in cols] for i in range(len(mons))]
    sol = solve(rows, [-t for t in target])
    if sol is None:
        raise ArithmeticError("class has no harmonic representative")
    x, _ = sol
    h = form
    for coef, e in zip(x, gens):
        h = h + e * coef
    return h


def representative_is_unique(kind: str, spec, m: Metric, grading: Grading) -> bool:
    """Whether ``{a + exact}`` meets the harmonic space in at most one point.

    True iff the Laplacian is injective on the exact forms of this grading.
    """
    kind = normalize_kind(kind)
    M = get_model(spec, m)
    gens = _exact_generators(kind, M, grading)
    if not gens:
        return True
    mons = forms_basis(grading)
    lap = _laplacians(M).get(kind)
    return rank([lap(e).vector(mons) for e in gens]) == rank([e.vector(mons) for e in gens])


# -- star dualities -----------------------------------------------------------------


@dataclass
class DualityReport:
    results: Dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.results.values())


def duality_check(spec, m: Metric) -> DualityReport:
    """Check that the star maps harmonic spaces onto their dual spaces exactly:
    dR^k -> dR^(4-k), Dolbeault^(p,q) -> Del^(2-q,2-p), BC^(p,q) -> A^(2-q,2-p)."""
    M = get_model(spec, m)
    star = M.star
    report = DualityReport()
    pairs = [("dR", k, "dR", 4 - k) for k in range(5)]
    for p, q in BIDEGREES:
        pairs.append(("Dolbeault", (p, q), "Del", (2 - q, 2 - p)))
        pairs.append(("BottChern", (p, q), "Aeppli", (2 - q, 2 - p)))
    for src, g, dst, h in pairs:
        a = harmonic_basis(src, spec, m, g)
        b = harmonic_basis(dst, spec, m, h)
        images = [star(f) for f in a.basis]
        ok = len(a) == len(b) and b.same_span(images)
        report.results[f"{src}{g}->{dst}{h}"] = ok
    return report


# -- the Aeppli (1,1) class of phi^{2 2b} -------------------------------------------


@dataclass
class LambdaSystem:
    """Linear conditions on ``lambda`` for
    ``h = phi^{2 2b} + del(l1 phi^1b + l2 phi^2b) + delbar(l3 phi^1 + l4 phi^2)``
    to satisfy ``del * h = delbar * h = 0``."""

    rows: List[List[Scalar]]
    rhs: List[Scalar]
    model: HermitianModel = field(repr=False, default=None)

    @property
    def rank(self) -> int:
        return rank(self.rows)

    def solve(self):
        return solve(self.rows, self.rhs)

    def form(self, lam: Sequence[Scalar]) -> Form:
        return _lambda_form(self.model, lam)


def _lambda_parts(M: HermitianModel) -> List[Form]:
    return [
        M.del_(generator(2)),
        M.del_(generator(3)),
        M.delbar(generator(0)),
        M.delbar(generator(1)),
    ]


def _lambda_form(M: HermitianModel, lam: Sequence[Scalar]) -> Form:
    h = Form.monomial("22b")
    for coef, part in zip(lam, _lambda_parts(M)):
        h = h + part * coef
    return h


def aeppli_lambda_system(spec, m: Metric) -> LambdaSystem:
    M = get_model(spec, m)
    ops = [M.del_ @ M.star, M.delbar @ M.star]
    base = Form.monomial("22b")
    parts = _lambda_parts(M)
    rows, rhs = [], []
    for op in ops:
        img0 = op(base)
        imgs = [op(p) for p in parts]
        monos = sorted(set(img0.coeffs) | {mo for f in imgs for mo in f.coeffs}, key=INDEX_OF.get)
        for mo in monos:
            row = [f.coeff(mo) for f in imgs]
            if any(row) or img0.coeff(mo):
                rows.append(row)
                rhs.append(-img0.coeff(mo))
    return LambdaSystem(rows, rhs, M)
