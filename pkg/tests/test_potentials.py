import numpy as np
import pytest
from scipy.integrate import quad

from bosegas.errors import FermiNormalizationError, ResolutionError
from bosegas.grids import make_grid
from bosegas.potentials import (
    GaussianPotentialProfile,
    build_potential,
    fermi_normalize,
    potential_seminorms,
)


def _gaussian_pot(d=1, n=1.0, s=1.0, rho0=0.01, n_per_dim=256, L=40.0):
    grid = make_grid(d, n_per_dim, L)
    prof = GaussianPotentialProfile(n=n, s=s, rho0=rho0, d=d)
    return build_potential(n, prof, rho0, grid), prof, grid


def test_w_matches_minus_second_derivative():
    # n = 1: W = -V'' ; 4th-order central differences of the sampled V
    pot, prof, grid = _gaussian_pot(n_per_dim=4096)
    V = pot.V_phys()
    h = grid.dx
    Vpp = (
        -np.roll(V, 2) + 16 * np.roll(V, 1) - 30 * V
        + 16 * np.roll(V, -1) - np.roll(V, -2)
    ) / (12 * h * h)
    W = pot.W_phys()
    assert np.max(np.abs(W + Vpp)) <= 1e-6 * np.max(np.abs(W))


def test_w_hat_zero_frequency_vanishes():
    pot, _, _ = _gaussian_pot()
    assert pot.W_hat.flat[0] == 0.0


def test_fermi_normalize_scaling():
    f = np.array([2.0, 0.3, -0.1], dtype=complex)
    out = fermi_normalize(f)
    assert np.allclose(out, f / 2.0)
    assert abs(out[0]) == 1.0


def test_fermi_normalize_unit_mass_unchanged():
    grid = make_grid(1, 128, 40.0)
    s = 1.0
    # unit-integral Gaussian: int V = 1 means V_hat(0) = 1
    V = np.exp(-0.5 * (grid.x1d / s) ** 2) / (s * np.sqrt(2 * np.pi))
    V_hat = grid.forward(V)
    out = fermi_normalize(V_hat)
    assert np.max(np.abs(out - V_hat)) <= 1e-12 * np.max(np.abs(V_hat))


def test_zero_potential_cannot_normalize():
    grid = make_grid(1, 16, 10.0)
    with pytest.raises(FermiNormalizationError):
        build_potential(1.0, np.zeros(grid.shape), 0.01, grid)
    with pytest.raises(FermiNormalizationError):
        fermi_normalize(np.zeros(4, dtype=complex))


def test_potential_reality():
    pot, _, _ = _gaussian_pot(d=2, n_per_dim=64)
    W_complex = pot.grid.inverse(pot.W_hat)
    assert np.max(np.abs(W_complex.imag)) <= 1e-12 * np.max(np.abs(W_complex))


def test_seminorm_l1_vs_adaptive_quadrature():
    # |W| has kinks at its zeros, so the rectangle rule converges at
    # O(h^2); 16384 points on L = 40 bring it below 1e-6 relative
    pot, prof, grid = _gaussian_pot(n_per_dim=16384)
    report = potential_seminorms(pot)
    # analytic W = -V'' for the normalized Gaussian (c = (2 pi s^2)^{-1/2})
    s = prof.s
    c = 1.0 / np.sqrt(2 * np.pi * s * s)

    def absW(x):
        return abs(-c * (x * x / s**4 - 1.0 / s**2) * np.exp(-0.5 * x * x / s**2))

    oracle, _ = quad(absW, -20.0, 20.0, limit=200)
    assert abs(report["W_l1"] - oracle) <= 1e-6 * oracle


def test_seminorm_homogeneity():
    pot, _, _ = _gaussian_pot(n_per_dim=256)
    base = potential_seminorms(pot)
    pot.W_hat = 2.0 * pot.W_hat
    pot.V_hat = 2.0 * pot.V_hat
    doubled = potential_seminorms(pot)
    for key in ("W_l1", "W_w41", "W_h4", "weighted_V_sobolev", "total"):
        assert abs(doubled[key] - 2.0 * base[key]) <= 1e-10 * max(base[key], 1.0)


def test_seminorms_fail_on_unresolved_tail():
    grid = make_grid(1, 16, 4.0)  # box far too small for s = 1
    prof = GaussianPotentialProfile(n=1.0, s=1.0, rho0=0.01, d=1)
    pot = build_potential(1.0, prof, 0.01, grid)
    with pytest.raises(ResolutionError):
        potential_seminorms(pot)


def test_profile_invalid_parameters():
    with pytest.raises(FermiNormalizationError):
        GaussianPotentialProfile(n=0.0, s=1.0, rho0=0.01)
    with pytest.raises(FermiNormalizationError):
        GaussianPotentialProfile(n=1.0, s=-1.0, rho0=0.01)


def test_profile_hat_consistency_with_grid():
    # the analytic spectral profile matches the grid transform
    pot, prof, grid = _gaussian_pot(n_per_dim=512)
    r = np.abs(grid.xi1d)
    ny = grid.nyquist_mask
    assert np.max(np.abs(pot.V_hat.real[~ny] - prof.v_hat(r[~ny]))) <= 1e-10
    assert np.max(np.abs(pot.W_hat.real[~ny] - prof.w_hat(r[~ny]))) <= 1e-10
