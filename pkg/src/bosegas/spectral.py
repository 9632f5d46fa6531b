"""Per-mode 2x2 linear algebra for the moving-frame field operator.

Each Fourier mode xi evolves under the 2x2 matrix

    Hhat_eps(xi, P) = [[i P.xi - eps,   |xi|^2      ],
                       [-1 - |xi|^2,    i P.xi - eps]]

with det = (i P.xi - eps)^2 + phi1(|xi|)^2 and eigenvalues
+-i phi1 + i P.xi - eps.  For xi != 0 the eigenbasis is

    A(xi)      = [[r, r], [i m, -i m]],        r = |xi|, m = sqrt(1 + r^2)
    A^{-1}(xi) = [[1/(2r), -i/(2m)], [1/(2r), i/(2m)]]

so the exact one-step propagator with constant forcing is diagonal in the
(a+, a-) amplitudes.  The xi = 0 matrix is eps-shifted nilpotent, handled
by the two-term closed form.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import SingularModeError

__all__ = [
    "phi1",
    "phi1_prime",
    "phi1_second",
    "mode_matrix",
    "mode_eigenvalues",
    "diag_matrix",
    "diag_matrix_inv",
    "to_diagonal",
    "from_diagonal",
    "phi_tilde",
    "propagate_mode",
    "apply_U_power",
]

_PHI_TILDE_CUTOFF = 1e-4
_PHI_TILDE_TERMS = 8


def phi1(r):
    """Dispersion relation r*sqrt(1+r^2) of the diagonalized field."""
    r = np.asarray(r, dtype=float)
    return r * np.sqrt(1.0 + r * r)


def phi1_prime(r):
    """d phi1 / dr = (1 + 2 r^2) / sqrt(1 + r^2)."""
    r = np.asarray(r, dtype=float)
    return (1.0 + 2.0 * r * r) / np.sqrt(1.0 + r * r)


def phi1_second(r):
    """d^2 phi1 / dr^2 = r (3 + 2 r^2) / (1 + r^2)^{3/2}."""
    r = np.asarray(r, dtype=float)
    return r * (3.0 + 2.0 * r * r) / (1.0 + r * r) ** 1.5


def mode_matrix(xi, P, eps=0.0):
    """The 2x2 matrix driving mode xi at particle momentum P."""
    xi = np.asarray(xi, dtype=float)
    P = np.asarray(P, dtype=float)
    r2 = float(xi @ xi)
    diag = 1j * float(P @ xi) - eps
    return np.array([[diag, r2], [-1.0 - r2, diag]], dtype=complex)


def mode_eigenvalues(xi, P, eps=0.0):
    """(lambda_plus, lambda_minus) = +-i phi1 + i P.xi - eps."""
    xi = np.asarray(xi, dtype=float)
    r = float(np.sqrt(xi @ xi))
    shift = 1j * float(np.asarray(P, dtype=float) @ xi) - eps
    w = 1j * phi1(r)
    return shift + w, shift - w


def diag_matrix(xi):
    """Eigenvector matrix A(xi); valid only for xi != 0."""
    xi = np.asarray(xi, dtype=float)
    r = float(np.sqrt(xi @ xi))
    m = np.sqrt(1.0 + r * r)
    return np.array([[r, r], [1j * m, -1j * m]], dtype=complex)


def diag_matrix_inv(xi):
    """Closed-form inverse of A(xi); valid only for xi != 0."""
    xi = np.asarray(xi, dtype=float)
    r = float(np.sqrt(xi @ xi))
    m = np.sqrt(1.0 + r * r)
    return np.array(
        [[0.5 / r, -0.5j / m], [0.5 / r, 0.5j / m]], dtype=complex
    )


def to_diagonal(h1_hat, h2_hat, grid):
    """Map spectral field components to eigen amplitudes (a+, a-).

    The xi = 0 entry is set to 0; that mode lives outside the eigenbasis
    and is propagated by the nilpotent closed form in propagate_mode.
    """
    r = grid.xi_radius()
    m = np.sqrt(1.0 + r * r)
    with np.errstate(divide="ignore", invalid="ignore"):
        over_r = np.where(r > 0, 0.5 / np.where(r > 0, r, 1.0), 0.0)
    a_plus = h1_hat * over_r - 0.5j * h2_hat / m
    a_minus = h1_hat * over_r + 0.5j * h2_hat / m
    zero = r == 0
    a_plus[zero] = 0.0
    a_minus[zero] = 0.0
    return a_plus, a_minus


def from_diagonal(a_plus, a_minus, grid):
    """Inverse of to_diagonal (xi = 0 entry comes back as 0)."""
    r = grid.xi_radius()
    m = np.sqrt(1.0 + r * r)
    h1_hat = r * (a_plus + a_minus)
    h2_hat = 1j * m * (a_plus - a_minus)
    return h1_hat, h2_hat


def phi_tilde(z):
    """Entire function (e^z - 1)/z, Taylor-evaluated near the origin."""
    z = np.asarray(z, dtype=complex)
    small = np.abs(z) < _PHI_TILDE_CUTOFF
    zs = np.where(small, z, 0.0)
    # Horner evaluation of 1 + z/2 + z^2/6 + ... (8 terms)
    acc = np.full_like(z, 1.0 / math.factorial(_PHI_TILDE_TERMS))
    for k in range(_PHI_TILDE_TERMS - 1, 0, -1):
        acc = acc * zs + 1.0 / math.factorial(k)
    zb = np.where(small, 1.0, z)
    big = (np.exp(np.where(small, 0.0, z)) - 1.0) / zb
    out = np.where(small, acc, big)
    return out if out.ndim else complex(out)


def propagate_mode(h, g, xi, P, dt, eps=0.0):
    """Advance one mode by dt: exact exponential plus constant forcing.

    h, g are length-2 complex vectors (spectral field and forcing at xi);
    returns the advanced pair e^{dt H} h + dt phitilde(dt H) g.
    """
    h = np.asarray(h, dtype=complex)
    g = np.asarray(g, dtype=complex)
    xi = np.asarray(xi, dtype=float)
    r = float(np.sqrt(xi @ xi))
    if r == 0.0:
        # H(0) = -eps I + N with N = [[0,0],[-1,0]] nilpotent, so
        # f(H) = f(-eps) I + f'(-eps) N for any entire f.
        e = np.exp(-eps * dt)
        if eps == 0.0:
            fv, fd = dt, 0.5 * dt * dt
        else:
            fv = (e - 1.0) / (-eps)
            fd = (dt * e * (-eps) - (e - 1.0)) / (eps * eps)
        h1 = e * h[0] + fv * g[0]
        h2 = e * h[1] - dt * e * h[0] + fv * g[1] - fd * g[0]
        return np.array([h1, h2], dtype=complex)
    lam_p, lam_m = mode_eigenvalues(xi, P, eps)
    ainv = diag_matrix_inv(xi)
    a = ainv @ h
    ga = ainv @ g
    zp, zm = dt * lam_p, dt * lam_m
    a_new = np.array(
        [
            np.exp(zp) * a[0] + dt * phi_tilde(zp) * ga[0],
            np.exp(zm) * a[1] + dt * phi_tilde(zm) * ga[1],
        ]
    )
    return diag_matrix(xi) @ a_new


def apply_U_power(h_hat, grid, s):
    """Apply the multiplier (|xi| / sqrt(1 + |xi|^2))^s mode by mode.

    s = 0 is the identity; s > 0 kills the zero mode; s < 0 is singular
    there and is refused when the field has zero-mode content.
    """
    if s == 0:
        return h_hat.copy()
    r = grid.xi_radius()
    m = np.sqrt(1.0 + r * r)
    zero = r == 0
    if s < 0 and np.any(np.abs(h_hat[zero]) > 0):
        raise SingularModeError(
            "U^s with s < 0 is singular at xi = 0; remove the mean first"
        )
    base = np.where(zero, 1.0, r) / m
    mult = base**s
    mult = np.where(zero, 0.0 if s > 0 else 0.0, mult)
    return h_hat * mult
