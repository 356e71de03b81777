"""Invariant Hermitian metrics, the Hodge star, and codifferentials."""

from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Tuple

from .forms import (
    INDEX_OF,
    MONOMIALS,
    Form,
    Monomial,
    Operator,
    conjugate_form,
    exterior_d,
    monomials_of_degree,
    sort_sign,
    split_bidegree,
    wedge,
)
from .linalg import det
from .scalars import ONE, ZERO, I, Scalar, ScalarParseError, format_scalar, parse_rational, parse_scalar

TOP = (0, 1, 2, 3)


class InvalidMetric(ValueError):
    pass


@dataclass(frozen=True)
class Metric:
    """``2 omega = i r2 phi^{1 1b} + i s2 phi^{2 2b} + u phi^{1 2b} - conj(u) phi^{2 1b}``."""

    r2: Fraction
    s2: Fraction
    u: Scalar = Scalar(0)

    def __post_init__(self):
        for name in ("r2", "s2"):
            v = getattr(self, name)
            if isinstance(v, float):
                raise InvalidMetric(f"{name} must be rational, not float")
            object.__setattr__(self, name, Fraction(v))
        object.__setattr__(self, "u", Scalar.coerce(self.u))
        if self.r2 <= 0:
            raise InvalidMetric("r2 <= 0")
        if self.s2 <= 0:
            raise InvalidMetric("s2 <= 0")
        if self.V <= 0:
            raise InvalidMetric("V <= 0")

    @property
    def V(self) -> Fraction:
        return self.r2 * self.s2 - self.u.norm()

    @property
    def is_diagonal(self) -> bool:
        return not self.u

    def scaled(self, lam) -> "Metric":
        lam = Fraction(lam)
        return Metric(self.r2 * lam, self.s2 * lam, self.u * lam)

    def g_matrix(self) -> List[List[Scalar]]:
        """``g(phi_i, conj phi_j)`` for unbarred i, j."""
        h = Fraction(1, 2)
        return [
            [Scalar(self.r2 * h), -I * self.u * h],
            [I * self.u.conj() * h, Scalar(self.s2 * h)],
        ]

    def g_inverse(self) -> List[List[Scalar]]:
        """Inverse of :meth:`g_matrix`, ``2/V [[s2, i u], [-i conj(u), r2]]``."""
        k = Fraction(2) / self.V
        return [
            [Scalar(self.s2 * k), I * self.u * k],
            [-I * self.u.conj() * k, Scalar(self.r2 * k)],
        ]

    def as_text(self) -> str:
        return f"{format_scalar(Scalar(self.r2))},{format_scalar(Scalar(self.s2))},{format_scalar(self.u)}"

    def to_json(self) -> dict:
        return {
            "r2": format_scalar(Scalar(self.r2)),
            "s2": format_scalar(Scalar(self.s2)),
            "u": format_scalar(self.u),
            "V": format_scalar(Scalar(self.V)),
        }


def parse_metric(text: str) -> Metric:
    """``"r2,s2,u"`` with exact rational text, e.g. ``"1,1,1/2-i"``."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) == 2:
        parts.append("0")
    if len(parts) != 3:
        raise InvalidMetric(f"metric must be 'r2,s2,u', got {text!r}")
    try:
        return Metric(parse_rational(parts[0]), parse_rational(parts[1]), parse_scalar(parts[2]))
    except ScalarParseError as exc:
        raise InvalidMetric(str(exc)) from None


def random_metric(rng, bound: int = 5, diagonal: bool = False) -> Metric:
    """A valid metric with small rational entries drawn from ``rng`` (a ``random.Random``)."""
    while True:
        r2 = Fraction(rng.randint(1, 4 * bound), rng.randint(1, 4))
        s2 = Fraction(rng.randint(1, 4 * bound), rng.randint(1, 4))
        if diagonal:
            u = Scalar(0)
        else:
            u = Scalar(Fraction(rng.randint(-2 * bound, 2 * bound), rng.randint(1, 4)),
                       Fraction(rng.randint(-2 * bound, 2 * bound), rng.randint(1, 4)))
        if r2 * s2 - u.norm() > 0:
            return Metric(r2, s2, u)


def fundamental_form(m: Metric) -> Form:
    h = Fraction(1, 2)
    return Form(
        {
            (0, 2): I * m.r2 * h,
            (1, 3): I * m.s2 * h,
            (0, 3): m.u * h,
            (1, 2): -m.u.conj() * h,
        }
    )


def volume_form(m: Metric) -> Form:
    omega = fundamental_form(m)
    return wedge(omega, omega) * Fraction(1, 2)


def coframe_gram(m: Metric) -> List[List[Scalar]]:
    """Hermitian products of the coframe ``<phi^A, phi^B>``, A, B over 1,2,1b,2b.

    The dual metric pairs ``phi^i`` with ``conj phi^j`` through the inverse of
    ``g(phi_i, conj phi_j)``; (1,0) and (0,1) covectors are orthogonal.
    """
    ginv = m.g_inverse()
    gram = [[ZERO] * 4 for _ in range(4)]
    for i in range(2):
        for j in range(2):
            gram[i][j] = ginv[j][i]
            gram[i + 2][j + 2] = ginv[i][j]
    return gram


def gram_matrix(m: Metric, k: int) -> List[List[Scalar]]:
    """``<phi^A, phi^B>`` on degree-k monomials (determinants of coframe products)."""
    g1 = coframe_gram(m)
    basis = monomials_of_degree(k)
    if k == 0:
        return [[ONE]]
    return [[det([[g1[a][b] for b in B] for a in A]) for B in basis] for A in basis]


def inner_product(m: Metric, a: Form, b: Form) -> Scalar:
    """Hermitian product, linear in ``a`` and conjugate-linear in ``b``."""
    total = ZERO
    g1 = coframe_gram(m)
    for ma, va in a.items():
        for mb, vb in b.items():
            if len(ma) != len(mb):
                continue
            if ma:
                e = det([[g1[x][y] for y in mb] for x in ma])
            else:
                e = ONE
            if e:
                total = total + va * vb.conj() * e
    return total


def _complement(mono: Monomial) -> Monomial:
    return tuple(i for i in TOP if i not in mono)


def hodge_star_operator(m: Metric) -> Operator:
    """Complex-linear star determined by ``a ^ *conj(b) = <a, b> vol``."""
    volc = m.V * Fraction(1, 4)
    g1 = coframe_gram(m)
    cols = []
    for c in MONOMIALS:
        k = len(c)
        cbar = conjugate_form(Form({c: ONE}))
        col: Dict[int, Scalar] = {}
        for a in monomials_of_degree(k):
            comp = _complement(a)
            sign, _ = sort_sign(a + comp)
            # <phi^a, conj phi^c>
            val = ZERO
            for mb, vb in cbar.items():
                e = det([[g1[x][y] for y in mb] for x in a]) if a else ONE
                val = val + vb.conj() * e
            if val:
                col[INDEX_OF[comp]] = val * volc * sign
        cols.append(col)
    return Operator(cols)


def hodge_star(m: Metric, a: Form) -> Form:
    return hodge_star_operator(m)(a)


class HermitianModel:
    """All operators for a fixed (spec, metric) pair, built lazily once."""

    def __init__(self, spec, metric: Metric):
        self.spec = spec
        self.metric = metric

    @cached_property
    def d(self) -> Operator:
        return exterior_d(self.spec)

    @cached_property
    def _split(self) -> Tuple[Operator, Operator]:
        return split_bidegree(self.d)

    @property
    def del_(self) -> Operator:
        return self._split[0]

    @property
    def delbar(self) -> Operator:
        return self._split[1]

    @cached_property
    def star(self) -> Operator:
        return hodge_star_operator(self.metric)

    @cached_property
    def d_star(self) -> Operator:
        return -(self.star @ self.d @ self.star)

    @cached_property
    def del_star(self) -> Operator:
        return -(self.star @ self.delbar @ self.star)

    @cached_property
    def delbar_star(self) -> Operator:
        return -(self.star @ self.del_ @ self.star)

    def codifferential(self, kind: str) -> Operator:
        return {"d": self.d_star, "del": self.del_star, "delbar": self.delbar_star}[kind]

    def differential(self, kind: str) -> Operator:
        return {"d": self.d, "del": self.del_, "delbar": self.delbar}[kind]

    @cached_property
    def del_delbar(self) -> Operator:
        return self.del_ @ self.delbar

    def gram(self, k: int):
        return gram_matrix(self.metric, k)

    def inner(self, a: Form, b: Form) -> Scalar:
        return inner_product(self.metric, a, b)


_MODEL_CACHE: "OrderedDict[tuple, HermitianModel]" = OrderedDict()
_MODEL_CACHE_SIZE = 256


def get_model(spec, metric: Metric) -> HermitianModel:
    """Cached :class:`HermitianModel`, keyed on the exact spec and metric values."""
    key = (spec.key(), metric)
    model = _MODEL_CACHE.get(key)
    if model is None:
        model = HermitianModel(spec, metric)
        _MODEL_CACHE[key] = model
        if len(_MODEL_CACHE) > _MODEL_CACHE_SIZE:
            _MODEL_CACHE.popitem(last=False)
    else:
        _MODEL_CACHE.move_to_end(key)
    return model


def codifferential(kind: str, spec, m: Metric) -> Operator:
    """``d* = -*d*``, ``del* = -*delbar*``, ``delbar* = -*del*`` (real dimension 4)."""
    return get_model(spec, m).codifferential(kind)
