"""Published closed-form values, transcribed as functions of the metric (r2, s2, u).

Frame index names: "1", "2", "1b", "2b". Two curvature entries carry the
corrected labels (see CORRECTED_CURVATURE).
"""

from fractions import Fraction

from hermitian_formality.forms import Form
from hermitian_formality.scalars import I

HALF = Fraction(1, 2)
P = Form.monomial
FRAME = {"1": 0, "2": 1, "1b": 2, "2b": 3}


def frame(text):
    return tuple(FRAME[t] for t in text.split())


def _vars(m):
    return m.r2, m.s2, m.u, m.u.conj(), m.u.norm(), 1 / m.V


def star_formulas(m):
    """Source monomial -> expected star image (14 identities)."""
    r2, s2, u, uc, n, iV = _vars(m)
    s4, r4 = s2 * s2, r2 * r2
    return {
        "1": P("121b", I * uc * HALF) + P("122b", s2 * HALF),
        "2": P("121b", -r2 * HALF) + P("122b", I * u * HALF),
        "1b": P("11b2b", -I * u * HALF) + P("21b2b", s2 * HALF),
        "2b": P("11b2b", -r2 * HALF) + P("21b2b", -I * uc * HALF),
        "12": P("12"),
        "1b2b": P("1b2b"),
        "11b": (P("11b", n) + P("12b", -I * u * s2) + P("21b", I * uc * s2) + P("22b", s4)) * iV,
        "12b": (P("11b", -I * uc * r2) + P("12b", -r2 * s2) + P("21b", uc * uc) + P("22b", -I * uc * s2)) * iV,
        "21b": (P("11b", I * u * r2) + P("12b", u * u) + P("21b", -r2 * s2) + P("22b", I * u * s2)) * iV,
        "22b": (P("11b", r4) + P("12b", -I * u * r2) + P("21b", I * uc * r2) + P("22b", n)) * iV,
        "121b": (P("1", -2 * I * u) + P("2", 2 * s2)) * iV,
        "122b": (P("1", -2 * r2) + P("2", -2 * I * uc)) * iV,
        "11b2b": (P("1b", 2 * I * uc) + P("2b", 2 * s2)) * iV,
        "21b2b": (P("1b", -2 * r2) + P("2b", 2 * I * u)) * iV,
    }


def hopf_dR3(m):
    r2, s2, u, uc, n, iV = _vars(m)
    return P("121b", -r2 * HALF) + P("122b", I * u * HALF) + P("11b2b", r2 * HALF) + P("21b2b", I * uc * HALF)


def hopf_aeppli_11(m):
    r2, s2, u, uc, n, iV = _vars(m)
    s4 = s2 * s2
    return P("11b", n / s4) + P("12b", -I * u / s2) + P("21b", I * uc / s2) + P("22b")


def sm_table(m):
    """(kind, bidegree) -> printed harmonic generator, for Inoue-Bombieri S_M."""
    r2, s2, u, uc, n, iV = _vars(m)
    low = P("11b2b", -r2 * HALF) + P("21b2b", -I * uc * HALF)
    high = P("121b", -r2 * HALF) + P("122b", I * u * HALF)
    return [
        ("Dolbeault", (0, 0), P("")),
        ("Dolbeault", (0, 1), P("2b")),
        ("Dolbeault", (1, 2), low),
        ("Dolbeault", (2, 2), P("121b2b")),
        ("BottChern", (0, 0), P("")),
        ("BottChern", (1, 1), P("22b")),
        ("BottChern", (1, 2), low),
        ("BottChern", (2, 1), high),
        ("BottChern", (2, 2), P("121b2b")),
        ("Aeppli", (0, 0), P("")),
        ("Aeppli", (1, 0), P("2")),
        ("Aeppli", (0, 1), P("2b")),
        ("Aeppli", (1, 1), P("11b") + P("12b", -I * u / r2) + P("21b", I * uc / r2) + P("22b", n / (r2 * r2))),
        ("Aeppli", (2, 2), P("121b2b")),
    ]


def hopf_lambda_matrix(m):
    r2, s2, u, uc, n, iV = _vars(m)
    s4 = s2 * s2
    rows = [
        [I * u * u, -u * s2, -I * r2 * s2, -u * s2],
        [-u * s2, -I * s4, uc * s2, -I * s4],
        [-I * r2 * s2, uc * s2, I * uc * uc, uc * s2],
        [-u * s2, -I * s4, uc * s2, -I * s4],
    ]
    rhs = [I * u * r2, -n, -I * uc * r2, -n]
    return rows, rhs


def hopf_levi_civita(m):
    """Gamma_{I H}^K keyed by "I H K" (24 entries)."""
    r2, s2, u, uc, n, iV = _vars(m)
    s4 = s2 * s2
    return {
        "1 1 1": -s2 * u * iV,
        "1 1 2": -I * u * u * iV,
        "1 2 1": (-I * s4 + I * n) * iV * HALF,
        "1 2 2": -(r2 - s2) * u * iV * HALF,
        "1 1b 1": s2 * uc * iV * HALF,
        "1 1b 2": I * r2 * s2 * iV * HALF,
        "1 1b 1b": s2 * u * iV * HALF,
        "1 1b 2b": (I * r2 * s2 - 2 * I * n) * iV * HALF,
        "1 2b 1": -I * s4 * iV * HALF,
        "1 2b 2": s2 * u * iV * HALF,
        "1 2b 1b": I * u * u * iV * HALF,
        "1 2b 2b": r2 * u * iV * HALF,
        "2 1 1": (2 * I * r2 * s2 - I * s4 - I * n) * iV * HALF,
        "2 1 2": -(r2 - s2) * u * iV * HALF,
        "2 2 1": -s2 * uc * iV,
        "2 2 2": -I * n * iV,
        "2 1b 1": -I * uc * uc * iV * HALF,
        "2 1b 2": r2 * uc * iV * HALF,
        "2 1b 1b": (-2 * I * r2 * s2 + I * s4 + 2 * I * n) * iV * HALF,
        "2 1b 2b": s2 * uc * iV * HALF,
        "2 2b 1": -s2 * uc * iV * HALF,
        "2 2b 2": -I * n * iV * HALF,
        "2 2b 1b": -s2 * u * iV * HALF,
        "2 2b 2b": I * n * iV * HALF,
    }


def hopf_chern(m):
    r2, s2, u, uc, n, iV = _vars(m)
    s4 = s2 * s2
    return {
        "2 1 2": -r2 * u * iV,
        "2 1 1": I * r2 * s2 * iV,
        "1 1b 2b": I,
        "2 1b 1b": -I,
        "1 2 1": -I * s4 * iV,
        "1 2 2": s2 * u * iV,
    }


# the two printed labels that are not the entries their values belong to
CORRECTED_CURVATURE = {"1 2b 2 1b": "1 1b 2 1b", "1 2b 2 2b": "(1 2b 2 2b"}


def hopf_chern_curvature(m):
    """R_{I H K L} keyed by "I H K L" (16 entries, corrected labels)."""
    r2, s2, u, uc, n, iV = _vars(m)
    s4, r4 = s2 * s2, r2 * r2
    return {
        "1 1b 1 1b": (2 * r4 * s2 - r2 * s4 - 2 * (r2 - s2) * n) * iV * HALF,
        "1 1b 1 2b": (I * n * u + (-I * r2 * s2 - I * s4) * u) * iV * HALF,
        "1 1b 2 1b": (-I * n * uc - (-I * r2 * s2 - I * s4) * uc) * iV * HALF,
        "1 1b 2 2b": s4 * s2 * iV * HALF,
        "1 2b 1 1b": (-I * r2 * s2 * u + 2 * I * n * u) * iV * HALF,
        "1 2b 1 2b": s2 * u * u * iV * HALF,
        "1 2b 2 1b": -s2 * n * iV * HALF,
        "1 2b 2 2b": I * s4 * u * iV * HALF,
        "2 1b 1 1b": (I * r2 * s2 * uc - 2 * I * n * uc) * iV * HALF,
        "2 1b 1 2b": -s2 * n * iV * HALF,
        "2 1b 2 1b": s2 * uc * uc * iV * HALF,
        "2 1b 2 2b": -I * s4 * uc * iV * HALF,
        "2 2b 1 1b": r2 * n * iV * HALF,
        "2 2b 1 2b": -I * r2 * s2 * u * iV * HALF,
        "2 2b 2 1b": I * r2 * s2 * uc * iV * HALF,
        "2 2b 2 2b": s2 * n * iV * HALF,
    }


# 2 Ric coefficients as printed: (rho_r, rho_s, rho_u) with alpha for S_M
PRINTED_RICCI = {
    "inoue_sm": lambda alpha: (0, -alpha * alpha, 0),
    "inoue_spm": lambda alpha: (0, -1, 0),
    "kodaira_primary": lambda alpha: (0, 0, 0),
    "kodaira_secondary": lambda alpha: (0, 0, 0),
}

# the printed flow: d/dt of (r2, s2) along the solution
PRINTED_FLOW_RATE = {
    "hopf": lambda alpha: (-1, 0),
    "inoue_sm": lambda alpha: (0, alpha * alpha),
    "inoue_spm": lambda alpha: (0, 1),
    "kodaira_primary": lambda alpha: (0, 0),
    "kodaira_secondary": lambda alpha: (0, 0),
}
