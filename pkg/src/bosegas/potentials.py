"""Potential construction with the Fermi golden rule W = (-Laplace)^n V.

Two representations coexist:

* GaussianPotentialProfile -- analytic radial profiles V_hat / W_hat used
  by the friction and dispersion modules (no grid is ever built in d = 5);
* Potential -- the same data sampled on a SpectralGrid for time evolution.

The built-in family is Gaussian, V(x) = c exp(-|x|^2 / (2 s^2)); the Fermi
normalization |V_hat(0)| = 1 fixes c = (2 pi)^{-d/2} s^{-d} so that
V_hat(rho) = exp(-s^2 rho^2 / 2) in every dimension.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import FermiNormalizationError, ResolutionError
from .grids import SpectralGrid

__all__ = [
    "GaussianPotentialProfile",
    "Potential",
    "fermi_normalize",
    "build_potential",
    "potential_seminorms",
]


@dataclass(frozen=True)
class GaussianPotentialProfile:
    """Analytic radial Gaussian potential, Fermi-normalized.

    n is the order of the fractional Laplacian in W = (-Laplace)^n V,
    s the Gaussian width, rho0 the coupling constant.
    """

    n: float
    s: float
    rho0: float
    d: int = 5

    def __post_init__(self):
        if self.n <= 0:
            raise FermiNormalizationError(
                f"Fermi exponent n={self.n} must be positive"
            )
        if self.s <= 0 or self.rho0 <= 0:
            raise FermiNormalizationError(
                "width s and coupling rho0 must be positive"
            )

    def v_hat(self, rho):
        rho = np.asarray(rho, dtype=float)
        return np.exp(-0.5 * self.s**2 * rho * rho)

    def w_hat(self, rho):
        rho = np.asarray(rho, dtype=float)
        return rho ** (2.0 * self.n) * self.v_hat(rho)

    def v_phys(self, r):
        r = np.asarray(r, dtype=float)
        c = (2.0 * np.pi) ** (-0.5 * self.d) * self.s ** (-self.d)
        return c * np.exp(-0.5 * r * r / self.s**2)

    def spectral_tail(self, r_max: float) -> float:
        """|W_hat| envelope at r_max relative to its peak (tail check)."""
        peak_r = np.sqrt(2.0 * self.n) / self.s
        return float(self.w_hat(r_max) / max(self.w_hat(peak_r), 1e-300))


@dataclass
class Potential:
    """Grid-sampled potential pair (V, W) with W_hat = |xi|^{2n} V_hat."""

    n: float
    rho0: float
    grid: SpectralGrid
    V_hat: np.ndarray
    W_hat: np.ndarray
    profile: GaussianPotentialProfile | None = None

    @property
    def sqrt_rho0(self) -> float:
        return float(np.sqrt(self.rho0))

    def W_phys(self) -> np.ndarray:
        return self.grid.inverse(self.W_hat).real

    def V_phys(self) -> np.ndarray:
        return self.grid.inverse(self.V_hat).real

    def w_l2(self) -> float:
        return self.grid.l2_norm_hat(self.W_hat)


def fermi_normalize(V_hat: np.ndarray) -> np.ndarray:
    """Rescale a spectral profile so that |V_hat(0)| = 1.

    The zero frequency sits at flat index 0 in FFT ordering.
    """
    v0 = abs(V_hat.flat[0])
    if v0 == 0:
        raise FermiNormalizationError(
            "cannot normalize: V_hat(0) = 0 (zero-mean potential)"
        )
    return V_hat / v0


def build_potential(n, V_profile, rho0, grid: SpectralGrid) -> Potential:
    """Sample a potential on the grid and apply the Fermi golden rule.

    V_profile is either a GaussianPotentialProfile, a callable of the
    radial coordinate, or a physical-space array on the grid.
    """
    if n <= 0:
        raise FermiNormalizationError(f"Fermi exponent n={n} must be > 0")
    profile = None
    if isinstance(V_profile, GaussianPotentialProfile):
        profile = V_profile
        V = V_profile.v_phys(np.sqrt(grid.x_radius_sq()))
    elif callable(V_profile):
        V = np.asarray(V_profile(np.sqrt(grid.x_radius_sq())), dtype=float)
    else:
        V = np.asarray(V_profile, dtype=float)
        if V.shape != grid.shape:
            raise FermiNormalizationError(
                f"potential array shape {V.shape} != grid shape {grid.shape}"
            )
    V_hat = grid.forward(V)
    V_hat[grid.nyquist_mesh()] = 0.0
    V_hat = fermi_normalize(V_hat)
    r = grid.xi_radius()
    W_hat = r ** (2.0 * float(n)) * V_hat
    return Potential(
        n=float(n), rho0=float(rho0), grid=grid,
        V_hat=V_hat, W_hat=W_hat, profile=profile,
    )


def _check_tail(pot: Potential, tol=1e-10):
    """Require the potential tail at the box edge to be negligible."""
    V = pot.V_phys()
    peak = np.max(np.abs(V))
    # farthest lattice point from the origin: all coordinates at L/2
    edge_idx = (pot.grid.n_per_dim // 2,) * pot.grid.d
    tail = abs(V[edge_idx])
    if peak == 0:
        return
    if tail > tol * peak:
        raise ResolutionError(
            f"potential unresolved: box-edge tail {tail/peak:.2e} of peak "
            f"exceeds {tol:.0e}; enlarge box_length"
        )


def _spectral_derivative(f_hat, grid, alpha):
    """Multiply by (i xi)^alpha for a multi-index alpha."""
    out = f_hat
    for axis, order in enumerate(alpha):
        if order:
            out = out * (1j * grid.xi_mesh(axis)) ** order
    return out


def potential_seminorms(pot: Potential, tail_tol=1e-10) -> dict:
    """Seminorm report for W (grid-truncated regularity diagnostics).

    Returns W^{4,1} and H^4 norms of W, the weighted H^{4n+4} norm of
    (1 + |x|^4) V, and their sum.  All derivatives are spectral; L1 sums
    use the periodic rectangle rule.
    """
    _check_tail(pot, tail_tol)
    grid = pot.grid
    # W^{4,1}: sum of L1 norms of all derivatives up to order 4
    w41 = 0.0
    for total in range(5):
        for alpha in itertools.product(range(total + 1), repeat=grid.d):
            if sum(alpha) != total:
                continue
            der = grid.inverse(_spectral_derivative(pot.W_hat, grid, alpha))
            w41 += grid.l1_norm_phys(der.real)
    # H^4 via Parseval: || (1+|xi|^2)^2 W_hat ||
    r2 = grid.xi_radius_sq()
    h4 = grid.l2_norm_hat((1.0 + r2) ** 2 * pot.W_hat)
    # weighted fractional norm || (1+|x|^4) V ||_{H^{4n+4}}
    x4 = pot.grid.x_radius_sq() ** 2
    g_hat = grid.forward((1.0 + x4) * pot.V_phys())
    sobolev_order = 4.0 * pot.n + 4.0
    weighted = grid.l2_norm_hat((1.0 + r2) ** (sobolev_order / 2.0) * g_hat)
    w_l1 = grid.l1_norm_phys(pot.W_phys())
    return {
        "W_l1": w_l1,
        "W_w41": w41,
        "W_h4": h4,
        "weighted_V_sobolev": weighted,
        "total": w41 + h4 + weighted,
    }
