"""Pure-numpy implementation of the hot per-mode propagation kernel.

One call advances every Fourier mode of the two-component field by dt
under the frozen-momentum mode matrices, with the constant forcing
(0, g2) integrated exactly.  Shares its contract with the compiled
version in _kernels_cy; see kernels.py for dispatch.
"""

from __future__ import annotations

import numpy as np

from .spectral import phi_tilde

__all__ = ["field_step"]


def field_step(h1, h2, pxi, r, m, phi1v, g2, dt):
    """Advance flat spectral arrays by one exact per-mode step.

    Parameters are flat, equally shaped complex/real arrays:
    h1, h2 spectral field components; pxi = P.xi per mode; r = |xi|;
    m = sqrt(1+r^2); phi1v = phi1(r); g2 second forcing component.
    Returns new (h1, h2).  Mode 0 (r == 0) is propagated by the exact
    nilpotent formula; all other modes through the eigenbasis.
    """
    safe_r = np.where(r == 0.0, 1.0, r)
    half_over_r = 0.5 / safe_r
    half_over_m = 0.5 / m
    a_plus = h1 * half_over_r - 1j * h2 * half_over_m
    a_minus = h1 * half_over_r + 1j * h2 * half_over_m
    g_plus = -1j * g2 * half_over_m
    z_plus = 1j * dt * (phi1v + pxi)
    z_minus = 1j * dt * (-phi1v + pxi)
    a_plus = np.exp(z_plus) * a_plus + dt * phi_tilde(z_plus) * g_plus
    a_minus = np.exp(z_minus) * a_minus - dt * phi_tilde(z_minus) * g_plus
    new_h1 = r * (a_plus + a_minus)
    new_h2 = 1j * m * (a_plus - a_minus)
    zero = r == 0.0
    if np.any(zero):
        new_h1[zero] = h1[zero]
        new_h2[zero] = h2[zero] - dt * h1[zero] + dt * g2[zero]
    return new_h1, new_h2
