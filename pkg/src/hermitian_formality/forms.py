"""Invariant forms on a complex surface: the 16-dimensional bigraded exterior
algebra over the coframe (phi^1, phi^2, phi^1b, phi^2b).

Indices are encoded as integers 0, 1, 2, 3 for 1, 2, 1b, 2b, so sorting a
multi-index numerically puts it in canonical order (unbarred ascending, then
barred ascending).
"""

from __future__ import annotations

import re
from itertools import combinations
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

from .scalars import ONE, ZERO, Scalar, ScalarLike, format_scalar, parse_scalar

Monomial = Tuple[int, ...]

INDEX_NAMES = ("1", "2", "1b", "2b")
BAR = (2, 3, 0, 1)
UNBARRED = (0, 1)
BARRED = (2, 3)

MONOMIALS: Tuple[Monomial, ...] = tuple(
    m for k in range(5) for m in combinations(range(4), k)
)
INDEX_OF: Dict[Monomial, int] = {m: i for i, m in enumerate(MONOMIALS)}
DIM = len(MONOMIALS)


class NonIntegrable(ValueError):
    """d has a component outside bidegrees (1,0) + (0,1)."""


def bidegree(mono: Monomial) -> Tuple[int, int]:
    p = sum(1 for a in mono if a < 2)
    return p, len(mono) - p


def monomials_of_degree(k: int) -> List[Monomial]:
    return [m for m in MONOMIALS if len(m) == k]


def monomials_of_bidegree(p: int, q: int) -> List[Monomial]:
    return [m for m in MONOMIALS if bidegree(m) == (p, q)]


BIDEGREES = [(p, q) for p in range(3) for q in range(3)]


def sort_sign(indices: Sequence[int]) -> Tuple[int, Monomial]:
    """Sign of the permutation sorting ``indices``; 0 on a repeated index."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign, tuple(sorted(idx))


_TOKEN = re.compile(r"([12])(b?)")


def parse_monomial(text: str) -> Tuple[int, Monomial]:
    """Parse "12b1" style text (``b`` marks the preceding index as barred).

    Returns ``(sign, canonical_monomial)``; the empty string is the unit.
    """
    s = text.replace(" ", "")
    pos, idx = 0, []
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if m is None:
            raise ValueError(f"bad monomial {text!r}")
        idx.append(int(m.group(1)) - 1 + (2 if m.group(2) else 0))
        pos = m.end()
    return sort_sign(idx)


def monomial_name(mono: Monomial) -> str:
    return "".join(INDEX_NAMES[a] for a in mono)


def pretty_monomial(mono: Monomial) -> str:
    if not mono:
        return "1"
    return "phi^{" + " ".join(INDEX_NAMES[a] for a in mono) + "}"


class Form:
    """A complex invariant form, stored sparsely on the canonical monomials."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[Monomial, ScalarLike] | None = None):
        c: Dict[Monomial, Scalar] = {}
        for mono, v in (coeffs or {}).items():
            v = Scalar.coerce(v)
            if v:
                if mono not in INDEX_OF:
                    raise ValueError(f"non-canonical monomial {mono!r}")
                c[mono] = v
        self._c = c

    @classmethod
    def _raw(cls, c: Dict[Monomial, Scalar]) -> "Form":
        f = cls.__new__(cls)
        f._c = c
        return f

    @classmethod
    def monomial(cls, text: str | Sequence[int], coeff: ScalarLike = 1) -> "Form":
        """Build ``coeff * phi^{...}``; unsorted input is re-signed."""
        if isinstance(text, str):
            sign, mono = parse_monomial(text)
        else:
            sign, mono = sort_sign(text)
        if sign == 0:
            return cls()
        return cls({mono: sign * Scalar.coerce(coeff)})

    @classmethod
    def from_vector(cls, vec: Sequence[Scalar], basis: Sequence[Monomial]) -> "Form":
        return cls({m: v for m, v in zip(basis, vec)})

    @property
    def coeffs(self) -> Dict[Monomial, Scalar]:
        return dict(self._c)

    def items(self):
        return self._c.items()

    def coeff(self, mono: Monomial | str) -> Scalar:
        if isinstance(mono, str):
            sign, mono = parse_monomial(mono)
            return sign * self._c.get(mono, ZERO)
        return self._c.get(mono, ZERO)

    def vector(self, basis: Sequence[Monomial]) -> List[Scalar]:
        return [self._c.get(m, ZERO) for m in basis]

    def degrees(self) -> set:
        return {len(m) for m in self._c}

    def bidegrees(self) -> set:
        return {bidegree(m) for m in self._c}

    @property
    def degree(self) -> int:
        """Total degree of a homogeneous form (0 for the zero form)."""
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError("form is not homogeneous")
        return degs.pop() if degs else 0

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, Form):
            return self._c == other._c
        if other == 0:
            return not self._c
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        c = dict(self._c)
        for m, v in other._c.items():
            s = c.get(m, ZERO) + v
            if s:
                c[m] = s
            else:
                c.pop(m, None)
        return Form._raw(c)

    def __neg__(self) -> "Form":
        return Form._raw({m: -v for m, v in self._c.items()})

    def __sub__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __mul__(self, k) -> "Form":
        if isinstance(k, Form):
            return NotImplemented
        k = Scalar.coerce(k)
        if not k:
            return Form()
        return Form._raw({m: v * k for m, v in self._c.items()})

    __rmul__ = __mul__

    def __truediv__(self, k) -> "Form":
        return self * (ONE / Scalar.coerce(k))

    def __xor__(self, other: "Form") -> "Form":
        return wedge(self, other)

    def conj(self) -> "Form":
        return conjugate_form(self)

    def part(self, p: int, q: int) -> "Form":
        return Form._raw({m: v for m, v in self._c.items() if bidegree(m) == (p, q)})

    def of_degree(self, k: int) -> "Form":
        return Form._raw({m: v for m, v in self._c.items() if len(m) == k})

    def to_json(self) -> List[dict]:
        return [
            {"monomial": monomial_name(m), "coeff": format_scalar(v)}
            for m, v in sorted(self._c.items(), key=lambda mv: INDEX_OF[mv[0]])
        ]

    @classmethod
    def from_json(cls, data: Iterable[Mapping[str, str]]) -> "Form":
        out = cls()
        for entry in data:
            out = out + cls.monomial(entry["monomial"], parse_scalar(entry["coeff"]))
        return out

    def __repr__(self):
        return f"Form({self})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for m, v in sorted(self._c.items(), key=lambda mv: INDEX_OF[mv[0]]):
            parts.append(f"({format_scalar(v)}) {pretty_monomial(m)}")
        return " + ".join(parts)


def wedge(a: Form, b: Form) -> Form:
    c: Dict[Monomial, Scalar] = {}
    for ma, va in a._c.items():
        for mb, vb in b._c.items():
            sign, mono = sort_sign(ma + mb)
            if sign == 0:
                continue
            v = va * vb
            if sign < 0:
                v = -v
            s = c.get(mono, ZERO) + v
            if s:
                c[mono] = s
            else:
                c.pop(mono, None)
    return Form._raw(c)


def conjugate_form(a: Form) -> Form:
    out: Dict[Monomial, Scalar] = {}
    for m, v in a._c.items():
        sign, mono = sort_sign([BAR[i] for i in m])
        out[mono] = v.conj() if sign > 0 else -v.conj()
    return Form._raw(out)


def generator(i: int) -> Form:
    return Form({(i,): ONE})


UNIT = Form({(): ONE})


class Operator:
    """A linear endomorphism of the 16-dimensional form space.

    Stored column-wise: ``cols[j]`` maps row index to the (nonzero) matrix
    entry, i.e. the image of basis monomial ``MONOMIALS[j]``.
    """

    __slots__ = ("cols",)

    def __init__(self, cols: Sequence[Mapping[int, Scalar]]):
        if len(cols) != DIM:
            raise ValueError("operator needs one column per basis monomial")
        self.cols = tuple({i: v for i, v in col.items() if v} for col in cols)

    @classmethod
    def from_function(cls, f: Callable[[Form], Form]) -> "Operator":
        cols = []
        for m in MONOMIALS:
            img = f(Form({m: ONE}))
            cols.append({INDEX_OF[k]: v for k, v in img.items()})
        return cls(cols)

    @classmethod
    def zero(cls) -> "Operator":
        return cls([{} for _ in range(DIM)])

    @classmethod
    def identity(cls) -> "Operator":
        return cls([{j: ONE} for j in range(DIM)])

    def __call__(self, a: Form) -> Form:
        acc: Dict[int, Scalar] = {}
        for m, v in a.items():
            for i, e in self.cols[INDEX_OF[m]].items():
                acc[i] = acc.get(i, ZERO) + e * v
        return Form({MONOMIALS[i]: v for i, v in acc.items()})

    def __matmul__(self, other: "Operator") -> "Operator":
        cols = []
        for col in other.cols:
            acc: Dict[int, Scalar] = {}
            for k, v in col.items():
                for i, e in self.cols[k].items():
                    acc[i] = acc.get(i, ZERO) + e * v
            cols.append(acc)
        return Operator(cols)

    def __add__(self, other: "Operator") -> "Operator":
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            for i, v in b.items():
                c[i] = c.get(i, ZERO) + v
            cols.append(c)
        return Operator(cols)

    def __neg__(self) -> "Operator":
        return Operator([{i: -v for i, v in c.items()} for c in self.cols])

    def __sub__(self, other: "Operator") -> "Operator":
        return self + (-other)

    def __mul__(self, k) -> "Operator":
        k = Scalar.coerce(k)
        return Operator([{i: v * k for i, v in c.items()} for c in self.cols])

    __rmul__ = __mul__

    def entry(self, row: int, col: int) -> Scalar:
        return self.cols[col].get(row, ZERO)

    def is_zero(self) -> bool:
        return not any(self.cols)

    def __eq__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        return self.cols == other.cols

    __hash__ = None

    def block(self, domain: Sequence[Monomial], codomain: Sequence[Monomial]) -> List[List[Scalar]]:
        """Dense matrix of the restriction, rows indexed by ``codomain``."""
        rows = []
        for mc in codomain:
            i = INDEX_OF[mc]
            rows.append([self.cols[INDEX_OF[md]].get(i, ZERO) for md in domain])
        return rows

    def conj_transpose(self) -> "Operator":
        """Entrywise conjugate transpose in the monomial basis."""
        cols: List[Dict[int, Scalar]] = [{} for _ in range(DIM)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                cols[i][j] = v.conj()
        return Operator(cols)

    def conjugated(self) -> "Operator":
        """The operator ``a -> conj(T(conj(a)))``."""
        return Operator.from_function(lambda a: conjugate_form(self(conjugate_form(a))))

    def maps_bidegree(self, shift: Tuple[int, int]) -> bool:
        for j, col in enumerate(self.cols):
            p, q = bidegree(MONOMIALS[j])
            for i in col:
                if bidegree(MONOMIALS[i]) != (p + shift[0], q + shift[1]):
                    return False
        return True


def exterior_d(spec) -> Operator:
    """The Chevalley-Eilenberg differential of ``spec``.

    On generators ``d phi^I = - sum_{H<K} c_{HK}^I phi^{HK}``; extended to all
    monomials as a degree +1 antiderivation.
    """
    gens = []
    for i in range(4):
        gens.append(
            Form({(h, k): -spec.c.get((h, k, i), ZERO) for h, k in combinations(range(4), 2)})
        )
    return Operator.from_function(lambda a: _derivation(a, gens))


def _derivation(a: Form, gens: Sequence[Form]) -> Form:
    out = Form()
    for mono, v in a.items():
        for pos, idx in enumerate(mono):
            if not gens[idx]:
                continue
            left = Form({mono[:pos]: ONE}) if pos else UNIT
            right = Form({mono[pos + 1:]: ONE}) if pos + 1 < len(mono) else UNIT
            term = wedge(wedge(left, gens[idx]), right)
            if pos % 2:
                term = -term
            out = out + term * v
    return out


def split_bidegree(d: Operator) -> Tuple[Operator, Operator]:
    """Split ``d`` into ``(del, delbar)`` by output bidegree."""
    dl: List[Dict[int, Scalar]] = []
    db: List[Dict[int, Scalar]] = []
    for j, col in enumerate(d.cols):
        p, q = bidegree(MONOMIALS[j])
        a: Dict[int, Scalar] = {}
        b: Dict[int, Scalar] = {}
        for i, v in col.items():
            bd = bidegree(MONOMIALS[i])
            if bd == (p + 1, q):
                a[i] = v
            elif bd == (p, q + 1):
                b[i] = v
            else:
                raise NonIntegrable(
                    f"d{pretty_monomial(MONOMIALS[j])} has a component of bidegree {bd}"
                )
        dl.append(a)
        db.append(b)
    return Operator(dl), Operator(db)


def forms_basis(grading) -> List[Monomial]:
    """Monomials of a total degree (int) or a bidegree (tuple)."""
    if isinstance(grading, tuple):
        return monomials_of_bidegree(*grading)
    return monomials_of_degree(grading)


def iter_gradings(kind_bigraded: bool) -> Iterator:
    return iter(BIDEGREES if kind_bigraded else range(5))
