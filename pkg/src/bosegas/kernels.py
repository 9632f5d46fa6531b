"""Dispatch between the compiled and the pure-numpy propagation kernel.

The compiled extension is optional; set BOSEGAS_PURE_PYTHON=1 to force the
numpy fallback (used by the tests and the benchmark to compare both).
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

__all__ = ["field_step", "field_step_grid", "IMPLEMENTATION", "available"]

_impl = _kernels_py
IMPLEMENTATION = "numpy"

if os.environ.get("BOSEGAS_PURE_PYTHON", "0") != "1":
    try:
        from . import _kernels_cy as _impl_cy

        _impl = _impl_cy
        IMPLEMENTATION = "cython"
    except ImportError:
        pass


def available() -> dict:
    """Which kernel implementations can be imported here."""
    out = {"numpy": True, "cython": False}
    try:
        from . import _kernels_cy  # noqa: F401

        out["cython"] = True
    except ImportError:
        pass
    return out


def field_step(h1, h2, pxi, r, m, phi1v, g2, dt):
    """Advance flat spectral arrays one step (see _kernels_py.field_step)."""
    return _impl.field_step(h1, h2, pxi, r, m, phi1v, g2, dt)


def field_step_grid(state, precomp, P, g2, dt):
    """Convenience wrapper advancing a FieldState on its grid.

    precomp is the dict from make_precomputed(grid); P is the frozen
    momentum for the step; g2 the flat second forcing component.
    """
    pxi = precomp["xi_flat"] @ np.asarray(P, dtype=float)
    h1, h2 = field_step(
        state.h1_hat.ravel(),
        state.h2_hat.ravel(),
        pxi,
        precomp["r"],
        precomp["m"],
        precomp["phi1"],
        g2,
        dt,
    )
    shape = state.grid.shape
    state.h1_hat = h1.reshape(shape)
    state.h2_hat = h2.reshape(shape)
    return state


def make_precomputed(grid) -> dict:
    """Flat per-mode geometry arrays reused across time steps."""
    from .spectral import phi1

    d = grid.d
    xi_flat = np.stack(
        [np.broadcast_to(grid.xi_mesh(a), grid.shape).ravel() for a in range(d)],
        axis=1,
    ).astype(float)
    r = np.sqrt(np.sum(xi_flat**2, axis=1))
    return {
        "xi_flat": np.ascontiguousarray(xi_flat),
        "r": np.ascontiguousarray(r),
        "m": np.ascontiguousarray(np.sqrt(1.0 + r * r)),
        "phi1": np.ascontiguousarray(phi1(r)),
    }
