"""Cherenkov friction force and remainder terms, evaluated in d = 5.

Two independent routes to the friction force:

* coupling_force -- the eps-regularized coupling term.  With
  u = P.xi and det = (i u - eps)^2 + phi1^2 one has
  Re[i/det] = -2 eps u / |det|^2, so the force along P is

      F.Phat = rho0 (2 pi)^{-5} int dxi  r^3 mu W_hat(r)^2 (-2 eps u)/|det|^2,

  evaluated by axisymmetric Gauss quadrature and Richardson-extrapolated
  in eps (3 geometric levels, factor 2).

* friction_limit -- the eps -> 0 limit taken analytically.  The
  Sokhotski-Plemelj limit concentrates Re[i/det] on the resonant shell
  u = +-phi1(r), which is nonempty iff |P| > 1 and is parametrized by
  r in (0, sqrt(|P|^2 - 1)], mu*(r) = sqrt(1+r^2)/|P|.  Collapsing the
  mu integral against the delta functions gives the closed radial form

      F.Phat = -rho0/(16 pi^2 |P|^4)
               int_0^{sqrt(|P|^2-1)} r^5 W_hat(r)^2 (|P|^2 - 1 - r^2) dr.

  Both routes are cross-validated by the dual-route tests.

remainder_term evaluates the R1/R2/R4 integrands on collinear
(X(t)-X(0), P(t), P(0)) data via the same (r, mu) reduction, with
quadrature sized to the oscillation t phi1 + (X(t)-X(0)).xi.
"""

from __future__ import annotations

import warnings

import numpy as np
from scipy.integrate import quad as scipy_quad

from .errors import ConfigError, ResolutionError, ResolutionWarning, SingularModeError
from .fitting import loglog_fit
from .potentials import GaussianPotentialProfile
from .quadrature import RadialQuadrature
from .spectral import phi1, phi1_prime

__all__ = [
    "profile_rmax",
    "coupling_force",
    "richardson_force",
    "friction_limit",
    "lambda_fit",
    "remainder_term",
]


def profile_rmax(profile: GaussianPotentialProfile, tol=1e-14) -> float:
    """Radius beyond which W_hat^2 r^{d+4} is below tol of its peak."""
    r = np.linspace(1e-3, 60.0 / profile.s + 10.0, 4000)
    env = profile.w_hat(r) ** 2 * r ** (profile.d + 4)
    peak = env.max()
    above = np.nonzero(env > tol * peak)[0]
    return float(r[above[-1]] + 0.5)


def _default_quad(profile, p_abs, eps):
    shell = np.sqrt(max(p_abs**2 - 1.0, 0.0))
    r_max = max(profile_rmax(profile), 2.0 * shell, 2.0)
    if p_abs > 1.0:
        # resolve the eps-wide Lorentzian across the resonant shell
        n_mu = int(np.clip(40.0 / eps, 800, 60000))
    else:
        n_mu = 800
    return RadialQuadrature(d=profile.d, r_max=r_max, n_r=400, n_mu=n_mu)


def coupling_force(P, profile: GaussianPotentialProfile, eps,
                   quad: RadialQuadrature | None = None) -> np.ndarray:
    """The eps-regularized coupling force (full vector, aligned with P)."""
    if eps <= 0:
        raise ConfigError(f"eps={eps} must be positive")
    P = np.asarray(P, dtype=float)
    p_abs = float(np.linalg.norm(P))
    if p_abs == 0.0:
        return np.zeros_like(P)
    if quad is None:
        quad = _default_quad(profile, p_abs, eps)
    if p_abs > 1.0:
        mu_star = min(1.0 / p_abs, 1.0)
        spacing = quad.mu_spacing_near(mu_star)
        if eps < 3.0 * spacing:
            warnings.warn(
                f"eps={eps:.3g} below 3x the mu spacing "
                f"{spacing:.3g} near the resonant shell; "
                "the regularized force may be under-resolved",
                ResolutionWarning,
            )
    w_hat = profile.w_hat

    def integrand(r, mu):
        u = p_abs * r * mu
        phi_sq = r * r * (1.0 + r * r)
        a = phi_sq - u * u + eps * eps
        det2 = a * a + 4.0 * eps * eps * u * u
        return r**3 * mu * w_hat(r) ** 2 * (-2.0 * eps * u) / det2

    scalar = profile.rho0 * (2.0 * np.pi) ** (-profile.d) * quad.integrate(integrand)
    return scalar * (P / p_abs)


def richardson_force(P, profile, eps0=1e-2, levels=3,
                     quad: RadialQuadrature | None = None) -> dict:
    """eps -> 0 extrapolation of coupling_force (quadratic in eps).

    Uses geometric eps levels eps0, eps0/2, ... (factor 2) and a
    least-squares polynomial of degree levels-1 evaluated at eps = 0.
    """
    P = np.asarray(P, dtype=float)
    p_abs = float(np.linalg.norm(P))
    eps_levels = eps0 * 0.5 ** np.arange(levels)
    values = []
    for eps in eps_levels:
        q = quad if quad is not None else _default_quad(profile, p_abs, eps)
        f = coupling_force(P, profile, eps, q)
        values.append(f @ (P / p_abs) if p_abs > 0 else 0.0)
    values = np.asarray(values)
    coeffs = np.polyfit(eps_levels, values, levels - 1)
    scalar = float(coeffs[-1])
    direction = P / p_abs if p_abs > 0 else np.zeros_like(P)
    return {
        "eps_levels": eps_levels,
        "values": values,
        "scalar": scalar,
        "force": scalar * direction,
    }


def friction_limit(P, profile: GaussianPotentialProfile,
                   quad=None) -> np.ndarray:
    """Closed-form eps -> 0 friction force (delta-shell quadrature).

    Exactly zero for subsonic |P| < 1; refuses the sonic threshold.
    The quad argument is unused (the radial integral is adaptive) and
    kept for interface symmetry with coupling_force.
    """
    if profile.d != 5:
        raise ConfigError("friction_limit implements the d = 5 reduction")
    P = np.asarray(P, dtype=float)
    p_abs = float(np.linalg.norm(P))
    if p_abs < 1.0:
        return np.zeros_like(P)
    if p_abs == 1.0:
        raise SingularModeError("sonic: |P| = 1 is the friction threshold")
    r_shell = np.sqrt(p_abs**2 - 1.0)
    w_hat = profile.w_hat

    def integrand(r):
        return r**5 * w_hat(r) ** 2 * (p_abs**2 - 1.0 - r * r)

    val, err = scipy_quad(
        integrand, 0.0, r_shell, limit=200, epsabs=1e-14, epsrel=1e-12
    )
    if err > 1e-6 * max(abs(val), 1e-300) and err > 1e-14:
        warnings.warn(
            f"shell integral error estimate {err:.2e} is large",
            ResolutionWarning,
        )
    scalar = -profile.rho0 / (16.0 * np.pi**2 * p_abs**4) * val
    return scalar * (P / p_abs)


def lambda_fit(profile: GaussianPotentialProfile, p_minus_one=None) -> dict:
    """Exponent fit of |F| vs (|P| - 1) and the tabulated prefactor.

    Lambda(|P|) := |F| / (rho0 (|P|-1)^{3+2n}) normalizes by the
    predicted power law; the fitted slope measures the actual exponent.
    """
    if p_minus_one is None:
        p_minus_one = np.geomspace(1e-2, 2e-1, 9)
    p_minus_one = np.asarray(p_minus_one, dtype=float)
    e1 = np.zeros(profile.d)
    e1[0] = 1.0
    mags, lams, samples = [], [], []
    for dp in p_minus_one:
        p = 1.0 + dp
        F = friction_limit(p * e1, profile)
        mag = float(np.linalg.norm(F))
        if mag <= 0.0:
            raise ResolutionError(
                f"non-positive force magnitude at |P|={p:.6g}: "
                "shell quadrature failure"
            )
        lam = mag / (profile.rho0 * dp ** (3.0 + 2.0 * profile.n))
        mags.append(mag)
        lams.append(lam)
        samples.append({"p": p, "force": mag, "lambda": lam})
    fit = loglog_fit(p_minus_one, np.asarray(mags))
    return {
        "slope": fit["slope"],
        "slope_ci": fit["slope_ci"],
        "lambda_min": float(np.min(lams)),
        "samples": samples,
        "predicted_exponent": 3.0 + 2.0 * profile.n,
    }


def _collinear_reduce(vectors, d):
    """Common axis of a collinear set; returns (axis, signed components)."""
    axis = None
    for v in vectors:
        nv = np.linalg.norm(v)
        if nv > 0:
            axis = v / nv
            break
    if axis is None:
        return np.zeros(d), [0.0 for _ in vectors]
    comps = []
    for v in vectors:
        c = float(v @ axis)
        if np.linalg.norm(v - c * axis) > 1e-10 * max(np.linalg.norm(v), 1.0):
            raise ConfigError(
                "remainder_term requires collinear X(t)-X(0), P(t), P(0)"
            )
        comps.append(c)
    return axis, comps


def _remainder_quad(profile, t, a_shift, p_abs, eps, quad):
    r_max = max(profile_rmax(profile), 2.0)
    rate_r = abs(t) * float(phi1_prime(r_max)) + abs(a_shift)
    phase_r = rate_r * r_max
    phase_mu = 2.0 * abs(a_shift) * r_max
    n_r = int(0.55 * phase_r) + 150
    n_mu = int(0.55 * phase_mu) + 100
    if p_abs > 1.0:
        # keep several mu nodes across the eps-wide resonance
        n_mu = max(n_mu, int(6.0 * p_abs * r_max / eps) + 100)
    if quad is None:
        return RadialQuadrature(d=profile.d, r_max=r_max, n_r=n_r, n_mu=n_mu)
    if quad.n_r < int(0.4 * phase_r) or quad.n_mu < int(0.4 * phase_mu):
        raise ResolutionError(
            f"unresolved oscillation: need about ({n_r}, {n_mu}) nodes, "
            f"quad has ({quad.n_r}, {quad.n_mu}); request a finer rule"
        )
    return quad


def remainder_term(kind, t, profile: GaussianPotentialProfile,
                   P_t, P_0=None, X_t=None, X_0=None,
                   beta0=None, eps=5e-2, quad=None) -> np.ndarray:
    """Evaluate one of the remainder integrals R1, R2, R4 at time t.

    P_t, P_0, X_t, X_0 are d = 5 vectors (defaults: ballistic motion
    X(t) = t P(t), constant momentum).  beta0 = (amplitude, width, phase)
    specifies the Gaussian initial pulse needed by R1 and R2.  eps > 0
    is the regularization carried by the denominators.
    """
    if kind not in ("R1", "R2", "R4"):
        raise ConfigError(f"unknown remainder kind {kind!r}")
    if eps <= 0:
        raise ConfigError("eps must be positive")
    if profile.d != 5:
        raise ConfigError("remainder_term implements the d = 5 reduction")
    d = profile.d
    P_t = np.asarray(P_t, dtype=float)
    P_0 = P_t.copy() if P_0 is None else np.asarray(P_0, dtype=float)
    X_0 = np.zeros(d) if X_0 is None else np.asarray(X_0, dtype=float)
    X_t = t * P_t + X_0 if X_t is None else np.asarray(X_t, dtype=float)
    dX = X_t - X_0
    axis, (a_shift, pt, p0) = _collinear_reduce([dX, P_t, P_0], d)
    if not np.any(axis):
        axis = np.zeros(d)
        axis[0] = 1.0
    p_abs = abs(pt)
    quad = _remainder_quad(profile, t, a_shift, p_abs, eps, quad)
    w_hat = profile.w_hat
    if kind in ("R1", "R2"):
        if beta0 is None:
            raise ConfigError(f"{kind} requires beta0 = (amplitude, width, phase)")
        amp, width, phase = beta0
        const = (2.0 * np.pi) ** (d / 2.0) * width**d
        bR = amp * np.cos(phase) * const
        bI = amp * np.sin(phase) * const
        bw2 = 0.5 * width**2

    def integrand(r, mu):
        phi = phi1(r)
        m = np.sqrt(1.0 + r * r)
        w = w_hat(r)
        u_t = pt * r * mu
        osc = np.exp(1j * a_shift * r * mu)
        e_plus = np.exp(1j * t * phi) * osc
        e_minus = np.exp(-1j * t * phi) * osc
        den_p = 1j * (phi + u_t) - eps
        den_m = 1j * (u_t - phi) - eps
        if kind == "R4":
            d1 = e_plus / den_p
            d2 = e_minus / den_m
            return -(r * mu) * w * w * (r / m) * (d1 - d2).real
        g = np.exp(-bw2 * r * r)
        b_plus = (bR - 1j * bI * r / m) * g
        b_minus = (bR + 1j * bI * r / m) * g
        if kind == "R1":
            u_0 = p0 * r * mu
            d1 = (1j * (phi + u_0)) * e_plus / den_p
            d2 = (1j * (u_0 - phi)) * e_minus / den_m
        else:  # R2
            inner = 1j * (pt - p0) * r * mu
            d1 = inner * e_plus / den_p
            d2 = inner * e_minus / den_m
        return (-1j * r * mu * w * (b_plus * d1 + b_minus * d2)).real

    integral = quad.integrate(integrand)
    if kind == "R4":
        scalar = profile.rho0 / (2.0 * (2.0 * np.pi) ** d) * integral
    else:
        scalar = np.sqrt(profile.rho0) / (2.0 * (2.0 * np.pi) ** d) * integral
    return scalar * axis
