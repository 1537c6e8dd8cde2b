"""Rendering tests: exact decimal strings, polynomial text, JSON shapes."""

from fractions import Fraction as Q

from sextic.model import PhysicalParams
from sextic.opcalc import QPoly
from sextic.qes import RootEnclosure, spectrum
from sextic.render import (decimal_fixed, dumps, enclosure_json, frac_str,
                           poly_text, spectrum_json)


def test_frac_str():
    assert frac_str(Q(3, 4)) == "3/4"
    assert frac_str(Q(-8, 2)) == "-4"


def test_decimal_fixed():
    assert decimal_fixed(Q(1, 3), 5) == "0.33333"
    assert decimal_fixed(Q(2, 3), 5) == "0.66667"
    assert decimal_fixed(Q(-1, 8), 4) == "-0.1250"
    assert decimal_fixed(Q(5), 2) == "5.00"
    assert decimal_fixed(Q(0), 3) == "0.000"


def test_enclosure_json_tags():
    exact = enclosure_json(RootEnclosure(Q(2), Q(2)), 10)
    assert exact["error_bound"] == "exact" and exact["fraction"] == "2"
    approx = enclosure_json(RootEnclosure(Q(1, 3), Q(1, 3) + Q(1, 10**12)), 10)
    assert approx["error_bound"] == "1.5e-10"


def test_poly_text_with_unit():
    u = Q(16)
    p = QPoly([0, 712 * u**2, 0, -70 * u, 0, 1])
    assert poly_text(p, unit=u) == "x^5 - 70*eta^2*x^3 + 712*eta^4*x"


def test_poly_text_plain():
    assert poly_text(QPoly([4, 1])) == "x + 4"
    assert poly_text(QPoly([0, -1])) == "-x"
    assert poly_text(QPoly()) == "0"


def test_spectrum_json_carries_provenance():
    spec = spectrum(PhysicalParams(M=1, omega=1, q=1), 1, "field", digits=20)
    blob = spectrum_json(spec, 20)
    assert blob["ledger"]["shift"] == "-8"
    assert blob["gauge"]["normalizability"] == "divergent-at-origin-and-infinity"
    assert len(blob["roots"]) == 2
    assert dumps(blob) == dumps(blob)
