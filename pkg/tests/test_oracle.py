"""Numerical-solver tests: discretization, Sturm counts, refinement, shooting."""

import math
from fractions import Fraction as Q

import mpmath
import numpy as np
import pytest
import scipy.linalg

from sextic.model import DomainError, PhysicalParams
from sextic.opcalc import GaugeAnsatz
from sextic.oracle import (Grid, discretize, eigenvalues_bisection, match_report,
                           ode_residual, potential_on_grid, refine, residual,
                           shoot, sturm_count, suggest_grid)
from sextic.qes import RadialWavefunction, spectrum, wavefunction


def natural(**kw):
    base = dict(M=1, omega=1, q=1)
    base.update(kw)
    return PhysicalParams(**base)


# ---------------------------------------------------------------------------
# Discretization
# ---------------------------------------------------------------------------


def test_discretize_box_structure():
    g = Grid(math.pi, 64)
    diag, off = discretize(None, 0, "box", g)
    assert len(diag) == 63 and len(off) == 62
    h2 = g.h * g.h
    assert np.all(diag == 2.0 / h2)
    # exactly symmetric: the single off-diagonal array is bitwise constant
    assert np.all(off == off[0])


def test_discretize_potential_alignment():
    p = natural()
    g = Grid(4.0, 128)
    u = potential_on_grid(p, 2, "free", g)
    r1 = g.h
    from sextic.model import potential_free, coupling_constant
    want = float(potential_free(p, 2, Q(r1).limit_denominator(10**12)) +
                 coupling_constant(p, 2))
    assert u[0] == pytest.approx(want, rel=1e-9)


def test_grid_validation():
    with pytest.raises(DomainError):
        Grid(1.0, 32)
    with pytest.raises(DomainError):
        Grid(-1.0, 128)


# ---------------------------------------------------------------------------
# Sturm counts and bisection
# ---------------------------------------------------------------------------


def test_bisection_2x2_analytic():
    vals = eigenvalues_bisection(np.array([2.0, 2.0]), np.array([-1.0]), 2)
    assert vals == pytest.approx([1.0, 3.0], abs=1e-12)


def test_bisection_diagonal():
    d = np.array([3.0, -1.0, 2.0, 0.5])
    vals = eigenvalues_bisection(d, np.zeros(3), 4)
    assert vals == pytest.approx(sorted(d), abs=1e-12)


def test_sturm_count_matches_dense_diagonalization():
    rng = np.random.default_rng(5)
    diag = rng.normal(size=64)
    off = rng.normal(size=63)
    full = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
    ev = np.linalg.eigvalsh(full)
    for sigma in (-2.5, -0.3, 0.0, 0.7, 3.1):
        assert sturm_count(diag, off, sigma) == int(np.sum(ev < sigma))


def test_bisection_against_lapack():
    rng = np.random.default_rng(12)
    diag = rng.normal(size=400)
    off = rng.normal(size=399)
    mine = eigenvalues_bisection(diag, off, 7)
    ref = scipy.linalg.eigh_tridiagonal(diag, off, select="i",
                                        select_range=(0, 6), eigvals_only=True)
    assert mine == pytest.approx(ref, abs=1e-10)


def test_box_single_grid_accuracy():
    # pre-extrapolation accuracy at n = 4096
    diag, off = discretize(None, 0, "box", Grid(math.pi, 4096))
    vals = eigenvalues_bisection(diag, off, 3)
    assert vals == pytest.approx([1.0, 4.0, 9.0], abs=1e-5)


# ---------------------------------------------------------------------------
# Refinement
# ---------------------------------------------------------------------------


def test_refine_box():
    spec = refine(None, 0, "box", 3, Grid(math.pi, 1024))
    for rec, want in zip(spec.records, (1.0, 4.0, 9.0)):
        assert abs(rec.extrapolated - want) < 1e-8
        assert 1.7 <= rec.observed_order <= 2.3
        assert rec.trusted


def test_refine_oscillator_q0():
    p = natural(q=0)
    for m in (2, 3):
        grid = suggest_grid(p, m, "free", 3, n=1024)
        spec = refine(p, m, "free", 3, grid)
        for rec, want in zip(spec.records, (4.0, 8.0, 12.0)):
            assert abs(rec.extrapolated - want) < 1e-6


def test_refine_eigenvalues_increasing():
    p = natural()
    grid = suggest_grid(p, 3, "field", 6, n=512)
    spec = refine(p, 3, "field", 6, grid)
    ev = spec.eigenvalues
    assert all(a < b for a, b in zip(ev, ev[1:]))


def test_domain_size_stability():
    # enlarging r_max at fixed h moves converged eigenvalues by less than
    # the reported error bound
    p = natural(q=0)
    g1 = Grid(8.0, 1024)
    g2 = Grid(10.0, 1280)
    s1 = refine(p, 2, "free", 2, g1)
    s2 = refine(p, 2, "free", 2, g2)
    for r1, r2 in zip(s1.records, s2.records):
        assert abs(r1.extrapolated - r2.extrapolated) <= \
            r1.error_estimate + r2.error_estimate + 1e-9


# ---------------------------------------------------------------------------
# Shooting
# ---------------------------------------------------------------------------


def test_shoot_box():
    ev = shoot(None, 0, "box", 1.0, (0.5, 1.5), math.pi)
    assert abs(ev - 1.0) < 1e-9


def test_shoot_oscillator():
    p = natural(q=0)
    grid = suggest_grid(p, 2, "free", 2, n=512)
    ev = shoot(p, 2, "free", 4.0, (3.0, 5.0), grid.r_max)
    assert abs(ev - 4.0) < 1e-8


def test_shoot_agrees_with_refine():
    p = natural()
    grid = suggest_grid(p, 2, "field", 3, n=1024)
    spec = refine(p, 2, "field", 3, grid)
    for rec in spec.records[:2]:
        lo, hi = rec.extrapolated - 0.5, rec.extrapolated + 0.5
        ev = shoot(p, 2, "field", rec.extrapolated, (lo, hi), grid.r_max)
        assert abs(ev - rec.extrapolated) <= rec.error_estimate + 1e-6


def test_shoot_no_sign_change_is_informative():
    with pytest.raises(DomainError, match="no Wronskian sign change"):
        shoot(None, 0, "box", 2.0, (1.7, 2.3), math.pi)


# ---------------------------------------------------------------------------
# Residuals
# ---------------------------------------------------------------------------


def test_residual_analytic_oscillator_state():
    wf = RadialWavefunction(GaugeAnsatz(Q(5, 2), 1, 0), Q(2), (Q(1),), 2, Q(1),
                            "normalizable")
    assert residual(wf, natural(q=0), 2, "free", 4) < 1e-12


def test_residual_negative_control():
    with mpmath.workdps(30):
        r = ode_residual(lambda r: mpmath.exp(-r), lambda r: mpmath.exp(-r),
                         lambda r: 0 * r, mpmath.mpf(1), mpmath.mpf(1), (0.5, 2.5))
    assert r > 0.5


def test_residual_field_j0_block_root():
    p = natural()
    spec = spectrum(p, 0, "field")
    wf = wavefunction(p, 0, spec.roots_reduced[0], "field")
    assert residual(wf, p, 2, "field", spec.roots_physical[0].midpoint) < 1e-10


def test_residual_every_block_root_j_le_2():
    p = natural()
    for mode in ("free", "field"):
        for j in range(3):
            spec = spectrum(p, j, mode)
            for enc, ph in zip(spec.roots_reduced, spec.roots_physical):
                wf = wavefunction(p, j, enc, mode)
                assert residual(wf, p, j + 2, mode, ph.mpf(50)) < 1e-10


# ---------------------------------------------------------------------------
# Matching
# ---------------------------------------------------------------------------


def _fake_oracle(mode, m, values):
    from sextic.oracle import EigenvalueRecord, OracleSpectrum
    recs = tuple(EigenvalueRecord(i, v, v, v, v, 2.0, 1e-9)
                 for i, v in enumerate(values))
    return OracleSpectrum(mode, m, None, Grid(4.0, 64), recs)


def test_match_identical_lists():
    p = natural()
    spec = spectrum(p, 1, "field")
    oracle = _fake_oracle("field", 3, [float(e.midpoint) for e in spec.roots_physical])
    rep = match_report(spec, oracle, 1e-4)
    assert all(e.verdict == "MATCHED" for e in rep.entries)
    assert all(e.absolute_gap == 0 for e in rep.entries)


def test_match_disjoint_lists():
    p = natural()
    spec = spectrum(p, 1, "field")
    oracle = _fake_oracle("field", 3, [1e3, 2e3])
    rep = match_report(spec, oracle, 1e-4)
    assert all(e.verdict == "UNMATCHED" for e in rep.entries)


def test_match_monotone_in_tolerance():
    p = natural()
    spec = spectrum(p, 1, "field")
    vals = [float(e.midpoint) + 1e-3 for e in spec.roots_physical]
    oracle = _fake_oracle("field", 3, vals)
    loose = match_report(spec, oracle, 1e-2)
    tight = match_report(spec, oracle, 1e-6)
    assert loose.matched >= tight.matched


def test_match_requires_compatible_runs():
    p = natural()
    spec = spectrum(p, 1, "field")
    with pytest.raises(DomainError):
        match_report(spec, _fake_oracle("free", 3, [1.0]), 1e-4)
