"""Levi-Civita, Gauduchon and Chern connections on the frame, their curvature,
and the Chern-Ricci form.

All indices run over the frame ``(phi_1, phi_2, phi_1b, phi_2b)`` encoded 0..3.
``gamma[I][H][K]`` is the coefficient in ``nabla_{phi_I} phi_H = gamma_{IH}^K phi_K``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Tuple

from .forms import BAR, Form, exterior_d, sort_sign
from .hodge import Metric, fundamental_form
from .scalars import ZERO, I, Scalar, format_scalar

R4 = range(4)
HALF = Fraction(1, 2)


def _is_barred(a: int) -> bool:
    return a >= 2


def metric_tensor(m: Metric) -> List[List[Scalar]]:
    """Complex-bilinear extension of g to the full frame (symmetric, block anti-diagonal)."""
    G = m.g_matrix()
    g = [[ZERO] * 4 for _ in R4]
    for k in range(2):
        for l in range(2):
            g[k][l + 2] = G[k][l]
            g[l + 2][k] = G[k][l]
    return g


def metric_tensor_inverse(m: Metric) -> List[List[Scalar]]:
    Ginv = m.g_inverse()
    # inverse of [[0, G], [G^T, 0]] is [[0, G^-T], [G^-1, 0]]
    h = [[ZERO] * 4 for _ in R4]
    for k in range(2):
        for l in range(2):
            h[k][l + 2] = Ginv[l][k]
            h[l + 2][k] = Ginv[l][k]
    return h


def J(a: int) -> Scalar:
    """Eigenvalue of the complex structure on frame vector ``a``."""
    return -I if _is_barred(a) else I


@dataclass
class Connection:
    gamma: List[List[List[Scalar]]]
    name: str = ""

    def __call__(self, i: int, h: int, k: int) -> Scalar:
        return self.gamma[i][h][k]

    def nonzero(self) -> Dict[Tuple[int, int, int], Scalar]:
        return {(i, h, k): self.gamma[i][h][k] for i, h, k in product(R4, R4, R4) if self.gamma[i][h][k]}

    def __eq__(self, other):
        return isinstance(other, Connection) and self.gamma == other.gamma

    def conjugation_symmetric(self) -> bool:
        return all(
            self.gamma[BAR[i]][BAR[h]][BAR[k]] == self.gamma[i][h][k].conj() for i, h, k in product(R4, R4, R4)
        )


@dataclass
class CurvatureTensor:
    R: Dict[Tuple[int, int, int, int], Scalar]

    def __call__(self, i: int, h: int, k: int, l: int) -> Scalar:
        return self.R.get((i, h, k, l), ZERO)

    def nonzero(self) -> Dict[Tuple[int, int, int, int], Scalar]:
        return dict(self.R)

    def is_zero(self) -> bool:
        return not self.R

    def antisymmetric(self) -> bool:
        return all(
            self(i, h, k, l) == -self(h, i, k, l) and self(i, h, k, l) == -self(i, h, l, k)
            for i, h, k, l in product(R4, R4, R4, R4)
        )


@dataclass(frozen=True)
class RicciForm:
    """Coefficients of ``2 Ric = i rho_r phi^{1 1b} + i rho_s phi^{2 2b} + rho_u phi^{1 2b} - conj(rho_u) phi^{2 1b}``."""

    rho_r: Fraction
    rho_s: Fraction
    rho_u: Scalar

    def form(self) -> Form:
        """``Ric`` itself (half of the expression above)."""
        return Form(
            {
                (0, 2): I * self.rho_r * HALF,
                (1, 3): I * self.rho_s * HALF,
                (0, 3): self.rho_u * HALF,
                (1, 2): -self.rho_u.conj() * HALF,
            }
        )

    def is_zero(self) -> bool:
        return not (self.rho_r or self.rho_s or self.rho_u)

    def to_json(self) -> dict:
        return {
            "rho_r": format_scalar(Scalar(self.rho_r)),
            "rho_s": format_scalar(Scalar(self.rho_s)),
            "rho_u": format_scalar(self.rho_u),
        }


def _zero_gamma():
    return [[[ZERO] * 4 for _ in R4] for _ in R4]


def levi_civita(spec, m: Metric) -> Connection:
    """Koszul formula on the (non-holonomic) frame:
    ``G_{IH}^K = c_{IH}^K/2 - g^{KA} g_{BI} c_{HA}^B/2 - g^{KA} g_{BH} c_{IA}^B/2``."""
    g = metric_tensor(m)
    gi = metric_tensor_inverse(m)
    c = spec.constant
    gam = _zero_gamma()
    for i, h, k in product(R4, R4, R4):
        val = c(i, h, k) * HALF
        for a, b in product(R4, R4):
            if not gi[k][a]:
                continue
            t = g[b][i] * c(h, a, b) + g[b][h] * c(i, a, b)
            if t:
                val = val - gi[k][a] * g[b][i] * c(h, a, b) * HALF - gi[k][a] * g[b][h] * c(i, a, b) * HALF
        gam[i][h][k] = val
    return Connection(gam, "levi-civita")


def _three_form_value(f: Form, a: int, b: int, c: int) -> Scalar:
    if len({a, b, c}) < 3:
        return ZERO
    sign, mono = sort_sign((a, b, c))
    return f.coeff(mono) * sign


def torsion_tensors(spec, m: Metric):
    """``T_{IHL} = -dF(J phi_I, J phi_H, J phi_L)``, ``C_{IHL} = dF(J phi_I, phi_H, phi_L)``.

    ``F(X, Y) = g(X, JY) = -omega(X, Y)``: the torsion formula is stated for this
    sign of the fundamental form; with ``+omega`` the (0, 1/2) member is not the
    Chern connection.
    """
    domega = exterior_d(spec)(fundamental_form(m) * -1)
    T, C = {}, {}
    for i, h, l in product(R4, R4, R4):
        v = _three_form_value(domega, i, h, l)
        if v:
            T[(i, h, l)] = -(J(i) * J(h) * J(l) * v)
            C[(i, h, l)] = J(i) * v
    return T, C


def gauduchon_connection(spec, m: Metric, eps, rho) -> Connection:
    """``G^{eps,rho} = G^{LC} + eps g^{KL} T_{IHL} + rho g^{KL} C_{IHL}``."""
    eps, rho = Fraction(eps), Fraction(rho)
    lc = levi_civita(spec, m)
    if not eps and not rho:
        return Connection(lc.gamma, "gauduchon(0,0)")
    gi = metric_tensor_inverse(m)
    T, C = torsion_tensors(spec, m)
    gam = [[list(row) for row in plane] for plane in lc.gamma]
    for i, h, k in product(R4, R4, R4):
        extra = ZERO
        for l in R4:
            if gi[k][l]:
                extra = extra + gi[k][l] * (T.get((i, h, l), ZERO) * eps + C.get((i, h, l), ZERO) * rho)
        gam[i][h][k] = gam[i][h][k] + extra
    return Connection(gam, f"gauduchon({eps},{rho})")


def chern_connection(spec, m: Metric) -> Connection:
    """Chern connection from its defining properties, independent of the torsion formula.

    ``nabla_{conj X} Y = [conj X, Y]^{1,0}`` on (1,0)-fields, the (1,0)-direction
    from ``X g(Y, conj Z) = 0`` for invariant fields, barred fields by conjugation.
    """
    c = spec.constant
    G = m.g_matrix()
    Ginv = m.g_inverse()
    gam = _zero_gamma()
    for i in range(2):
        for j in range(2):
            # nabla_{phi_ib} phi_j = [phi_ib, phi_j]^{1,0}
            for k in range(2):
                gam[BAR[i]][j][k] = c(BAR[i], j, k)
            # g(nabla_{phi_i} phi_j, phi_kb) = -g(phi_j, [phi_i, phi_kb]^{0,1})
            rhs = [ZERO, ZERO]
            for k in range(2):
                v = ZERO
                for l in range(2):
                    v = v - G[j][l] * c(i, BAR[k], BAR[l])
                rhs[k] = v
            # solve sum_a Gamma^a G[a][k] = rhs[k]
            for a in range(2):
                gam[i][j][a] = sum((rhs[k] * Ginv[k][a] for k in range(2)), ZERO)
    for i, h, k in product(R4, R4, R4):
        if _is_barred(h) and _is_barred(k):
            gam[i][h][k] = gam[BAR[i]][BAR[h]][BAR[k]].conj()
    return Connection(gam, "chern")


def curvature_tensor(spec, m: Metric, conn: Connection) -> CurvatureTensor:
    """``R_{IHKL} = g(R(phi_I, phi_H) phi_K, phi_L)`` with ``R(X,Y) = [nabla_X, nabla_Y] - nabla_{[X,Y]}``."""
    g = metric_tensor(m)
    G = conn.gamma
    c = spec.constant
    out: Dict[Tuple[int, int, int, int], Scalar] = {}
    for i, h, k in product(R4, R4, R4):
        # vector R(phi_i, phi_h) phi_k in the frame
        vec = [ZERO] * 4
        for a in R4:
            v = ZERO
            for b in R4:
                v = v + G[h][k][b] * G[i][b][a] - G[i][k][b] * G[h][b][a] - c(i, h, b) * G[b][k][a]
            vec[a] = v
        for l in R4:
            val = sum((g[a][l] * vec[a] for a in R4), ZERO)
            if val:
                out[(i, h, k, l)] = val
    return CurvatureTensor(out)


def ricci_tensor(m: Metric, R: CurvatureTensor) -> List[List[Scalar]]:
    """Trace over the last pair with the Hermitian inverse, ``Ric_{IH} = g^{l kb} R_{IH k lb}``."""
    Ginv = m.g_inverse()
    ric = [[ZERO] * 4 for _ in R4]
    for i, h in product(R4, R4):
        v = ZERO
        for k in range(2):
            for l in range(2):
                v = v + Ginv[l][k] * R(i, h, k, BAR[l])
        ric[i][h] = v
    return ric


def chern_ricci_form(spec, m: Metric) -> RicciForm:
    """``Ric = i sum_{i,h} Ric_{i hb} phi^i ^ phi^hb``, returned through its ``2 Ric`` coefficients."""
    R = curvature_tensor(spec, m, chern_connection(spec, m))
    ric = ricci_tensor(m, R)
    two = 2
    # 2 Ric = 2i Ric_{1 1b} phi^{1 1b} + ...
    rho_r = ric[0][2] * two
    rho_s = ric[1][3] * two
    rho_u = I * ric[0][3] * two
    other = I * ric[1][2] * two
    if not (rho_r.is_real() and rho_s.is_real()) or other != -rho_u.conj():
        raise ArithmeticError("Chern-Ricci form is not a real (1,1)-form")
    return RicciForm(rho_r.re, rho_s.re, rho_u)


def cartan_curvature(spec, m: Metric, conn: Connection) -> Dict[Tuple[int, int, int, int], Scalar]:
    """Curvature through ``Omega_K^A = d theta_K^A + theta_B^A ^ theta_K^B``,
    ``theta_K^A = sum_I gamma_{IK}^A phi^I``; returns ``g(R(phi_I,phi_H)phi_K, phi_L)``.

    Independent of :func:`curvature_tensor`; used as a test oracle.
    """
    d = exterior_d(spec)
    g = metric_tensor(m)
    G = conn.gamma
    theta = [[Form({(i,): G[i][k][a] for i in R4}) for a in R4] for k in R4]  # theta[k][a]
    omega = [[None] * 4 for _ in R4]
    for k in R4:
        for a in R4:
            f = d(theta[k][a])
            for b in R4:
                f = f + (theta[b][a] ^ theta[k][b])
            omega[k][a] = f
    out = {}
    for i, h, k, l in product(R4, R4, R4, R4):
        if i == h:
            continue
        sign, mono = sort_sign((i, h))
        val = ZERO
        for a in R4:
            if g[a][l]:
                val = val + g[a][l] * omega[k][a].coeff(mono) * sign
        if val:
            out[(i, h, k, l)] = val
    return out
