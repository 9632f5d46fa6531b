"""Axisymmetric quadrature in dimension d >= 3.

Integrals over R^d of functions depending on xi only through
(r, mu) = (|xi|, cos angle(xi, axis)) reduce to

    int dxi f = A_d  int_0^rmax r^{d-1} dr  int_{-1}^{1} (1-mu^2)^{(d-3)/2} f dmu

with A_d = 2 pi^{(d-1)/2} / Gamma((d-1)/2) the area of S^{d-2}.  The mu
rule is Gauss-Jacobi with the (1-mu^2)^{(d-3)/2} weight absorbed into
the weights; the radial rule is Gauss-Legendre on (0, r_max].
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import gamma, roots_jacobi, roots_legendre

__all__ = ["RadialQuadrature", "sphere_surface_area"]


def sphere_surface_area(k: int) -> float:
    """Surface area of the unit sphere S^k in R^{k+1}."""
    return float(2.0 * np.pi ** ((k + 1) / 2.0) / gamma((k + 1) / 2.0))


@dataclass
class RadialQuadrature:
    d: int = 5
    r_max: float = 10.0
    n_r: int = 400
    n_mu: int = 200
    r_nodes: np.ndarray = field(init=False, repr=False)
    r_weights: np.ndarray = field(init=False, repr=False)
    mu_nodes: np.ndarray = field(init=False, repr=False)
    mu_weights: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.d < 3:
            raise ValueError("axisymmetric reduction needs d >= 3")
        xr, wr = roots_legendre(self.n_r)
        self.r_nodes = 0.5 * self.r_max * (xr + 1.0)
        self.r_weights = 0.5 * self.r_max * wr
        a = 0.5 * (self.d - 3)
        if a == 0.0:
            xm, wm = roots_legendre(self.n_mu)
        else:
            xm, wm = roots_jacobi(self.n_mu, a, a)
        self.mu_nodes = xm
        self.mu_weights = wm

    @property
    def angular_constant(self) -> float:
        return sphere_surface_area(self.d - 2)

    def mu_spacing_near(self, mu_star: float) -> float:
        """Local node spacing of the mu rule around mu_star."""
        idx = np.argsort(np.abs(self.mu_nodes - mu_star))[:3]
        pts = np.sort(self.mu_nodes[idx])
        return float(np.min(np.diff(pts))) if pts.size > 1 else 2.0

    def integrate(self, f, chunk=2**22) -> float:
        """Integrate f(r, mu) over R^d (axisymmetric).

        f receives broadcastable arrays r[:, None], mu[None, :].  The
        reduction is a fixed-order numpy sum, so results are independent
        of threading.
        """
        rows = max(1, chunk // max(self.n_mu, 1))
        total = 0.0
        wmu = self.mu_weights[None, :]
        for start in range(0, self.n_r, rows):
            sl = slice(start, min(start + rows, self.n_r))
            r = self.r_nodes[sl][:, None]
            vals = f(r, self.mu_nodes[None, :])
            wr = (self.r_weights[sl] * self.r_nodes[sl] ** (self.d - 1))[:, None]
            total += float(np.sum(wr * wmu * vals))
        return self.angular_constant * total
