"""Two-component field state (Re beta, Im beta) in the moving frame.

Fields are stored spectrally as the complex pair (h1_hat, h2_hat); since
the physical components are real, both satisfy the conjugate-reflection
constraint h_hat(-xi) = conj(h_hat(xi)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .grids import SpectralGrid
from .spectral import apply_U_power

__all__ = [
    "FieldState",
    "zero_field",
    "gaussian_pulse",
    "enforce_reality",
    "reality_defect",
    "field_norms",
]


@dataclass
class FieldState:
    grid: SpectralGrid
    h1_hat: np.ndarray
    h2_hat: np.ndarray

    def copy(self) -> "FieldState":
        return FieldState(self.grid, self.h1_hat.copy(), self.h2_hat.copy())

    def beta_hat(self) -> np.ndarray:
        """Spectral profile of the complex field beta = h1 + i h2."""
        return self.h1_hat + 1j * self.h2_hat

    def phys(self):
        """Physical-space (h1, h2), imaginary round-off dropped."""
        return (
            self.grid.inverse(self.h1_hat).real,
            self.grid.inverse(self.h2_hat).real,
        )


def zero_field(grid: SpectralGrid) -> FieldState:
    shape = grid.shape
    return FieldState(
        grid,
        np.zeros(shape, dtype=complex),
        np.zeros(shape, dtype=complex),
    )


def gaussian_pulse(grid, amplitude, width, phase=0.0) -> FieldState:
    """Initial data beta0 = A e^{i theta} exp(-|x|^2 / (2 w^2))."""
    if width <= 0:
        raise ConfigError(f"pulse width {width} must be positive")
    envelope = np.exp(-0.5 * grid.x_radius_sq() / width**2)
    h1 = amplitude * np.cos(phase) * envelope
    h2 = amplitude * np.sin(phase) * envelope
    ny = grid.nyquist_mesh()
    h1_hat = grid.forward(h1)
    h2_hat = grid.forward(h2)
    h1_hat[ny] = 0.0
    h2_hat[ny] = 0.0
    return FieldState(grid, h1_hat, h2_hat)


def enforce_reality(h_hat: np.ndarray, grid: SpectralGrid) -> np.ndarray:
    """Project onto the conjugate-symmetric subspace."""
    return 0.5 * (h_hat + np.conj(grid.reflect(h_hat)))


def reality_defect(state: FieldState) -> float:
    """Max violation of h_hat(-xi) = conj(h_hat(xi)) over both components."""
    g = state.grid
    d1 = np.max(np.abs(g.reflect(state.h1_hat) - np.conj(state.h1_hat)))
    d2 = np.max(np.abs(g.reflect(state.h2_hat) - np.conj(state.h2_hat)))
    return float(max(d1, d2))


def field_norms(state: FieldState) -> dict:
    """L2 norms used by the bound monitors plus weighted L1 diagnostics.

    The U-weighted quantities apply the multiplier (|xi|/sqrt(1+|xi|^2))^s
    spectrally and then take a physical-space L1 sum; they are on-grid
    surrogates for the continuum weighted norms.
    """
    g = state.grid
    r = g.xi_radius()
    re_l2 = g.l2_norm_hat(state.h1_hat)
    im_l2 = g.l2_norm_hat(state.h2_hat)
    grad_re_l2 = g.l2_norm_hat(r * state.h1_hat)
    grad_im_l2 = g.l2_norm_hat(r * state.h2_hat)
    beta_hat = state.beta_hat()
    out = {
        "re_l2": re_l2,
        "im_l2": im_l2,
        "grad_re_l2": grad_re_l2,
        "grad_im_l2": grad_im_l2,
        "energy_norm": float(
            np.sqrt(grad_re_l2**2 + grad_im_l2**2 + re_l2**2)
        ),
    }
    for s in (0.5, 1.5):
        weighted = apply_U_power(beta_hat, g, s)
        out[f"u{s}_l1"] = g.l1_norm_phys(g.inverse(weighted))
    return out
