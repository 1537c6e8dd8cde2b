"""Published reference data for the model, in exact form.

The defining publication of this oscillator lists critical energy
polynomials, reduced rho-space operators and three-term recurrences.  They
are embedded here exactly (integer/rational coefficients, no strings) so the
comparison against the mechanical derivation is arithmetic, not textual.

Known quirks preserved verbatim:

* the free-mode table entry of degree 3 is transcribed with its natural
  bracket reading (the source's parenthesization is garbled);
* the last coefficient of the degree-9 field entry is 88504707 as published;
  the derivation gives 88504704, and the comparison report shows the gap.
"""

from __future__ import annotations

from fractions import Fraction

from .model import PhysicalParams, eta_squared
from .opcalc import DiffOperator, LaurentPoly, Q, QPoly

__all__ = [
    "published_free_table",
    "published_field_table",
    "published_reduced_operator",
    "FIELD_TABLE_COEFFS",
]


def _w(params: PhysicalParams) -> Fraction:
    # the recurring combination 4 M c^2 hbar omega
    return 4 * params.M * params.c**2 * params.hbar * params.omega


def published_free_table(params: PhysicalParams) -> dict[int, QPoly]:
    """Field-free critical polynomials P_1..P_4 in x = eps^2 (physical), as published."""
    M, c, h, om, q = params.M, params.c, params.hbar, params.omega, params.q
    x = QPoly.x()
    w = _w(params)
    u = eta_squared(params)
    p1 = x + w
    p2 = (x + w) * (x + 2 * w) - 2 * u
    # degree 3: eps^6 + 8 c^2 h (3 eps^4 M om + 48 c^4 h^2 M om (M^2 om^2 - 3 q h)
    #                            + 2 c^2 h eps^2 (11 M^2 om^2 - 10 q h))
    p3 = (
        x**3
        + 8 * c**2 * h * (
            3 * M * om * x**2
            + QPoly.const(48 * c**4 * h**2 * M * om * (M**2 * om**2 - 3 * q * h))
            + 2 * c**2 * h * (11 * M**2 * om**2 - 10 * q * h) * x
        )
    )
    # degree 4: eps^8 + 40 eps^6 M c^2 h om + 80 eps^4 c^4 h^2 (7 M^2 om^2 - 6 h q)
    #           + 128 eps^2 c^6 h^3 M om (25 M^2 om^2 - 69 h q)
    #           + 6144 c^8 h^4 (3 h^2 q^2 - 6 M^2 om^2 h q + M^4 om^4)
    p4 = (
        x**4
        + 40 * M * c**2 * h * om * x**3
        + 80 * c**4 * h**2 * (7 * M**2 * om**2 - 6 * h * q) * x**2
        + 128 * c**6 * h**3 * M * om * (25 * M**2 * om**2 - 69 * h * q) * x
        + QPoly.const(6144 * c**8 * h**4 * (3 * h**2 * q**2 - 6 * M**2 * om**2 * h * q + M**4 * om**4))
    )
    return {1: p1, 2: p2, 3: p3, 4: p4}


#: Field-mode table: {degree n: {power k of x: integer}} where the full entry is
#: sum_k coeff * eta^(n-k) * x^k with x the reduced eps^2 and eta^2 = 16 q c^4 hbar^3.
FIELD_TABLE_COEFFS: dict[int, dict[int, int]] = {
    1: {1: 1},
    2: {2: 1, 0: -2},
    3: {3: 1, 1: -10},
    4: {4: 1, 2: -30, 0: 72},
    5: {5: 1, 3: -70, 1: 712},
    6: {6: 1, 4: -140, 2: 3820, 0: -10800},
    7: {7: 1, 5: -252, 3: 14796, 1: -164592},
    8: {8: 1, 6: -420, 4: 46380, 2: -1307600, 0: 4233600},
    9: {9: 1, 7: -660, 5: 125004, 3: -7250320, 1: 88504707},
}


def published_field_table(params: PhysicalParams, n: int) -> QPoly:
    """Magnetic-mode critical polynomial P_n in the reduced x, as published.

    Entries exist for n = 1..9 (the source announces ten and lists nine).
    """
    if n not in FIELD_TABLE_COEFFS:
        raise KeyError(f"no published field-mode entry of degree {n}")
    u = eta_squared(params)
    coeffs: dict[int, Fraction] = {}
    for k, val in FIELD_TABLE_COEFFS[n].items():
        coeffs[k] = Q(val) * u ** ((n - k) // 2)
    c = [coeffs.get(i, Q(0)) for i in range(n + 1)]
    return QPoly(c)


def published_reduced_operator(params: PhysicalParams, m: int, mode: str) -> DiffOperator:
    """The rho-space operator exactly as published, constants included.

    free:  -rho D^2 + (m-1 + 4 c^2 hbar omega M rho - eta^2 rho^2) D
           - 4 M c^2 hbar omega (m-1) + eta^2 (m-2) rho
    field: -rho D^2 + (j+1 - eta^2 rho^2) D + eta^2 j rho       (j = m-2,
           no constant term: the published form silently absorbs the
           radial operator's constant into its eigenvalue symbol)
    """
    u = eta_squared(params)
    w = _w(params)
    j = m - 2
    if mode == "free":
        return DiffOperator({
            2: LaurentPoly({1: -1}),
            1: LaurentPoly({0: Q(m - 1), 1: w, 2: -u}),
            0: LaurentPoly({0: -w * (m - 1), 1: u * (m - 2)}),
        }, var="rho")
    if mode == "field":
        return DiffOperator({
            2: LaurentPoly({1: -1}),
            1: LaurentPoly({0: Q(j + 1), 2: -u}),
            0: LaurentPoly({1: u * j}),
        }, var="rho")
    raise ValueError(f"unknown mode {mode!r}")
