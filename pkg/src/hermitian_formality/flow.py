"""Chern-Ricci flow of invariant metrics.

The Chern-Ricci form of an invariant metric does not depend on the metric, so the
flow is affine in time: ``2 omega(t) = 2 omega_0 - t * 2 Ric``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Union

from .curvature import RicciForm, chern_ricci_form
from .hodge import Metric
from .scalars import Scalar, format_scalar


class OutOfInterval(ValueError):
    def __init__(self, t, t_max):
        super().__init__(f"t = {t} is outside the existence interval [0, {t_max})")
        self.t = t
        self.t_max = t_max


def _is_square(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


@dataclass(frozen=True)
class Surd:
    """Exact real ``a + b sqrt(d)`` with ``d > 0`` not a rational square (or ``b = 0``)."""

    a: Fraction
    b: Fraction = Fraction(0)
    d: Fraction = Fraction(0)

    @classmethod
    def make(cls, a, b, d) -> "Surd":
        a, b, d = Fraction(a), Fraction(b), Fraction(d)
        if not b or not d:
            return cls(a)
        root = _is_square(d)
        if root is not None:
            return cls(a + b * root)
        return cls(a, b, d)

    @property
    def is_rational(self) -> bool:
        return not self.b

    def sign(self) -> int:
        """Exact sign, by comparing squares."""
        if not self.b:
            return (self.a > 0) - (self.a < 0)
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sa == 0:
            return sb
        # opposite signs: compare a^2 with b^2 d
        diff = self.a * self.a - self.b * self.b * self.d
        return sa if diff > 0 else sb

    def __sub__(self, other) -> "Surd":
        if isinstance(other, Surd):
            if other.b and self.b and other.d != self.d:
                raise ValueError("incompatible surds")
            d = self.d or other.d
            return Surd.make(self.a - other.a, self.b - other.b, d)
        return Surd.make(self.a - Fraction(other), self.b, self.d)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return not self.b and self.a == other
        if isinstance(other, Surd):
            return (self.a, self.b, self.d if self.b else 0) == (other.a, other.b, other.d if other.b else 0)
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d if self.b else 0))

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def to_fraction(self) -> Fraction:
        if self.b:
            raise ValueError("irrational value")
        return self.a

    def __str__(self):
        if not self.b:
            return format_scalar(Scalar(self.a))
        a = "" if not self.a else format_scalar(Scalar(self.a))
        sign = "-" if self.b < 0 else ("+" if a else "")
        mag = abs(self.b)
        coef = "" if mag == 1 else f"{format_scalar(Scalar(mag))}*"
        return f"{a}{sign}{coef}sqrt({format_scalar(Scalar(self.d))})"


INF = math.inf
Time = Union[Surd, float]


def _linear_root(c0: Fraction, c1: Fraction) -> Optional[Surd]:
    """Positive root of ``c0 + c1 t`` (c0 > 0), or None."""
    if c1 < 0:
        return Surd(-c0 / c1)
    return None


def _quadratic_roots(a: Fraction, b: Fraction, c: Fraction) -> List[Surd]:
    if not a:
        if not b:
            return []
        return [Surd(-c / b)]
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    p = -b / (2 * a)
    q = Fraction(1) / (2 * a)
    if not disc:
        return [Surd(p)]
    return [Surd.make(p, q, disc), Surd.make(p, -q, disc)]


@dataclass(frozen=True)
class FlowSolution:
    initial: Metric
    rho: RicciForm
    t_max: Time

    @property
    def is_eternal(self) -> bool:
        return self.t_max == INF

    def coefficients(self, t) -> tuple:
        t = Fraction(t)
        m = self.initial
        return (m.r2 - t * self.rho.rho_r, m.s2 - t * self.rho.rho_s, m.u - self.rho.rho_u * t)

    def V_polynomial(self) -> tuple:
        """``V(t) = c0 + c1 t + c2 t^2``."""
        m, rho = self.initial, self.rho
        c2 = rho.rho_r * rho.rho_s - rho.rho_u.norm()
        c1 = -(m.r2 * rho.rho_s + m.s2 * rho.rho_r) + 2 * (m.u * rho.rho_u.conj()).re
        return (m.V, c1, c2)

    def t_max_text(self) -> str:
        return "inf" if self.t_max == INF else str(self.t_max)


def existence_time(m0: Metric, rho: RicciForm) -> Time:
    """Least positive zero of ``r2(t)``, ``s2(t)`` or ``V(t)``; ``inf`` if none."""
    candidates = []
    for c0, c1 in ((m0.r2, -rho.rho_r), (m0.s2, -rho.rho_s)):
        root = _linear_root(c0, c1)
        if root is not None:
            candidates.append(root)
    c2 = rho.rho_r * rho.rho_s - rho.rho_u.norm()
    c1 = -(m0.r2 * rho.rho_s + m0.s2 * rho.rho_r) + 2 * (m0.u * rho.rho_u.conj()).re
    candidates.extend(r for r in _quadratic_roots(c2, c1, m0.V) if r.sign() > 0)
    if not candidates:
        return INF
    return min(candidates)


def solve_flow(spec, m0: Metric) -> FlowSolution:
    rho = chern_ricci_form(spec, m0)
    return FlowSolution(m0, rho, existence_time(m0, rho))


def _check_time(sol: FlowSolution, t: Fraction):
    if t < 0 or (sol.t_max != INF and not sol.t_max > t):
        raise OutOfInterval(t, sol.t_max_text())


def metric_at(sol: FlowSolution, t) -> Metric:
    if isinstance(t, float):
        raise TypeError("time must be rational")
    t = Fraction(t)
    _check_time(sol, t)
    r2, s2, u = sol.coefficients(t)
    return Metric(r2, s2, u)


def sample_trajectory(sol: FlowSolution, times: Sequence) -> List[Metric]:
    return [metric_at(sol, t) for t in times]


def default_times(sol: FlowSolution, n: int = 5) -> List[Fraction]:
    """``n`` rational times in ``[0, t_max)``: evenly spaced fractions of a rational
    lower bound on t_max, or ``0..n-1`` for eternal solutions."""
    if sol.t_max == INF:
        return [Fraction(k) for k in range(n)]
    if sol.t_max.is_rational:
        T = sol.t_max.a
    else:
        T = Fraction(float(sol.t_max)).limit_denominator(10**6)
        while not sol.t_max > T:
            T = T * Fraction(999, 1000)
    return [T * Fraction(k, n) for k in range(n)]


CSV_COLUMNS = ("t", "r2", "s2", "Re(u)", "Im(u)", "V")


def trajectory_rows(times: Iterable, metrics: Iterable[Metric]) -> List[List[str]]:
    rows = []
    for t, m in zip(times, metrics):
        rows.append(
            [format_scalar(Scalar(Fraction(t)))]
            + [format_scalar(Scalar(x)) for x in (m.r2, m.s2, m.u.re, m.u.im, m.V)]
        )
    return rows


def trajectory_csv(times: Sequence, metrics: Sequence[Metric]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    w.writerows(trajectory_rows(times, metrics))
    return buf.getvalue()
