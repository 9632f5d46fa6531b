"""Periodic tensor grids and their dual frequency lattices.

Fourier convention: the forward transform approximates
``f_hat(xi) = int e^{-i x.xi} f(x) dx`` and the inverse carries the
``(2 pi)^{-d}`` factor.  On an N-point axis of period L this means

    forward  = (L/N)^d * fftn
    inverse  = (N/L)^d * ifftn

and Parseval reads ``int conj(f) g dx = (2 pi)^{-d} sum conj(f_hat) g_hat
(2 pi / L)^d``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError

__all__ = ["SpectralGrid", "make_grid"]


@dataclass(frozen=True, eq=False)
class SpectralGrid:
    """Periodic grid in dimension d with its centered frequency lattice.

    Axes are stored in FFT order (0, h, ..., -h), so physical fields sampled
    on ``x_mesh`` transform with plain ``fftn`` without phase corrections.
    Nyquist frequencies (k = -N/2) have no negative partner on the lattice;
    they are flagged in ``nyquist_mask`` and zeroed by odd multipliers to
    keep the lattice symmetric and real fields real.
    """

    d: int
    n_per_dim: int
    box_length: float
    x1d: np.ndarray = field(repr=False)
    xi1d: np.ndarray = field(repr=False)
    nyquist_mask: np.ndarray = field(repr=False)

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.n_per_dim,) * self.d

    @property
    def dx(self) -> float:
        return self.box_length / self.n_per_dim

    @property
    def dxi(self) -> float:
        return 2.0 * np.pi / self.box_length

    @property
    def cell_volume(self) -> float:
        return self.dx**self.d

    @property
    def mode_weight(self) -> float:
        """Parseval weight per lattice point: (2 pi)^{-d} (2 pi / L)^d."""
        return (2.0 * np.pi) ** (-self.d) * self.dxi**self.d

    def x_mesh(self, axis: int) -> np.ndarray:
        return _broadcast_axis(self.x1d, axis, self.d)

    def xi_mesh(self, axis: int) -> np.ndarray:
        return _broadcast_axis(self.xi1d, axis, self.d)

    def x_radius_sq(self) -> np.ndarray:
        out = np.zeros(self.shape)
        for a in range(self.d):
            out = out + self.x_mesh(a) ** 2
        return out

    def xi_radius_sq(self) -> np.ndarray:
        out = np.zeros(self.shape)
        for a in range(self.d):
            out = out + self.xi_mesh(a) ** 2
        return out

    def xi_radius(self) -> np.ndarray:
        return np.sqrt(self.xi_radius_sq())

    def nyquist_mesh(self) -> np.ndarray:
        """Boolean mask of lattice points with any Nyquist component."""
        out = np.zeros(self.shape, dtype=bool)
        for a in range(self.d):
            out |= _broadcast_axis(self.nyquist_mask, a, self.d)
        return out

    def forward(self, f: np.ndarray) -> np.ndarray:
        return np.fft.fftn(f) * self.cell_volume

    def inverse(self, f_hat: np.ndarray) -> np.ndarray:
        return np.fft.ifftn(f_hat) / self.cell_volume

    def reflect(self, a: np.ndarray) -> np.ndarray:
        """Index map xi -> -xi on an array in FFT order."""
        out = a
        for axis in range(self.d):
            out = np.roll(np.flip(out, axis), 1, axis)
        return out

    def l2_norm_hat(self, f_hat: np.ndarray) -> float:
        """L2 norm of a field given spectrally, by Parseval."""
        return float(np.sqrt(np.sum(np.abs(f_hat) ** 2) * self.mode_weight))

    def l1_norm_phys(self, f: np.ndarray) -> float:
        """L1 norm by the periodic trapezoid rule (= rectangle rule)."""
        return float(np.sum(np.abs(f)) * self.cell_volume)

    def integral_phys(self, f: np.ndarray) -> float:
        return float(np.sum(f).real * self.cell_volume)


def _broadcast_axis(arr1d: np.ndarray, axis: int, d: int) -> np.ndarray:
    shape = [1] * d
    shape[axis] = arr1d.size
    return arr1d.reshape(shape)


def make_grid(d: int, n_per_dim: int, box_length: float) -> SpectralGrid:
    """Build a periodic grid with a symmetric centered frequency lattice.

    Raises ConfigError for d < 1, non-power-of-two n_per_dim < 8, or a
    non-positive period.
    """
    if not isinstance(d, (int, np.integer)) or d < 1:
        raise ConfigError(f"invalid dimension d={d}; need an integer >= 1")
    n = int(n_per_dim)
    if n < 8 or (n & (n - 1)) != 0:
        raise ConfigError(
            f"n_per_dim={n_per_dim} must be a power of two >= 8"
        )
    if not (box_length > 0):
        raise ConfigError(f"box_length={box_length} must be positive")
    x1d = box_length * np.fft.fftfreq(n)
    xi1d = 2.0 * np.pi * np.fft.fftfreq(n, d=box_length / n)
    k = np.rint(np.fft.fftfreq(n) * n).astype(int)
    nyquist_mask = k == -(n // 2)
    return SpectralGrid(
        d=int(d),
        n_per_dim=n,
        box_length=float(box_length),
        x1d=x1d,
        xi1d=xi1d,
        nyquist_mask=nyquist_mask,
    )
