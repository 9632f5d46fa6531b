"""Strang-split time integration of the coupled particle-field system.

In the moving frame the field obeys d/dt h = H(t) h - sqrt(rho0) (0, W)
with time-independent forcing, and the particle obeys Xdot = P,
Pdot = F(h).  One Strang step: half momentum kick, exact field step with
the momentum frozen at its midpoint value (position drift is bookkeeping
only -- the frame moves with the particle), half momentum kick.

The Hamiltonian
    H = |P|^2/2 + ||grad h||_2^2 + ||h1||_2^2 + 2 sqrt(rho0) <W, h1>
is conserved by the continuous flow when the force is
    F_j = 2 sqrt(rho0) <d_j W, h1>,
which is the gradient -dH/dX of the lab-frame interaction energy; the
factor 2 pairs with the coefficient of the cross term in H (checked by
the finite-difference gradient test).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import ConfigError, MonitorViolation
from .fields import FieldState, field_norms, gaussian_pulse, zero_field
from .grids import make_grid
from .kernels import field_step_grid, make_precomputed
from .potentials import GaussianPotentialProfile, Potential, build_potential

__all__ = [
    "SimConfig",
    "ParticleState",
    "TrajectoryRecord",
    "particle_force",
    "hamiltonian",
    "strang_step",
    "simulate",
    "ballistic_diagnostics",
    "energy_bounds",
]


@dataclass
class ParticleState:
    t: float
    X: np.ndarray
    P: np.ndarray
    F: np.ndarray

    def copy(self):
        return ParticleState(self.t, self.X.copy(), self.P.copy(), self.F.copy())


@dataclass
class SimConfig:
    d: int = 1
    n_per_dim: int = 64
    box_length: float = 40.0
    n: float = 1.0
    s: float = 1.0
    rho0: float = 0.01
    P0: tuple = (0.5,)
    beta0_amplitude: float = 0.0
    beta0_width: float = 1.0
    beta0_phase: float = 0.0
    dt: float = 1e-3
    T: float = 10.0
    sample_interval: float = 0.1
    monitor_tol: float = 1e-8
    track_soliton_gap: bool = True
    # drop the coupling entirely (free flow); used by decoupling checks
    zero_potential: bool = False

    def validate(self):
        if self.dt <= 0:
            raise ConfigError(f"dt={self.dt} must be positive")
        if self.T < 0:
            raise ConfigError(f"T={self.T} must be nonnegative")
        ratio = self.sample_interval / self.dt
        if abs(ratio - round(ratio)) > 1e-9 or round(ratio) < 1:
            raise ConfigError(
                "sample_interval must be a positive multiple of dt"
            )
        if len(self.P0) != self.d:
            raise ConfigError(
                f"P0 has {len(self.P0)} components but d={self.d}"
            )
        if not (0 < self.rho0 < 1):
            raise ConfigError("rho0 must lie in (0, 1) for the monitors")


@dataclass
class TrajectoryRecord:
    t: np.ndarray
    X: np.ndarray
    P: np.ndarray
    Pdot: np.ndarray
    H: np.ndarray
    re_beta_l2: np.ndarray
    grad_im_beta_l2: np.ndarray
    soliton_gap: np.ndarray
    config: dict = dc_field(default_factory=dict)

    def __len__(self):
        return self.t.size


def particle_force(state: FieldState, pot: Potential) -> np.ndarray:
    """F_j = 2 sqrt(rho0) <d_j W, h1> via Parseval.

    With real radial W the reduction is F_j = 2 sqrt(rho0) sum over modes
    of xi_j W_hat Im h1_hat times the lattice weight.
    """
    g = state.grid
    im_h1 = state.h1_hat.imag
    w = pot.W_hat.real
    F = np.empty(g.d)
    for a in range(g.d):
        F[a] = np.sum(g.xi_mesh(a) * w * im_h1)
    return 2.0 * pot.sqrt_rho0 * g.mode_weight * F


def hamiltonian(P, state: FieldState, pot: Potential) -> float:
    """Conserved energy of the coupled flow (see module docstring)."""
    g = state.grid
    P = np.asarray(P, dtype=float)
    r2 = g.xi_radius_sq()
    grad_sq = np.sum(r2 * (np.abs(state.h1_hat) ** 2 + np.abs(state.h2_hat) ** 2))
    h1_sq = np.sum(np.abs(state.h1_hat) ** 2)
    cross = np.sum(np.conj(pot.W_hat) * state.h1_hat).real
    return float(
        0.5 * P @ P
        + g.mode_weight * (grad_sq + h1_sq + 2.0 * pot.sqrt_rho0 * cross)
    )


def energy_bounds(H: float, pot: Potential) -> dict:
    """Right-hand sides of the a-priori bound monitors.

    sup |P| <= sqrt(2H + sqrt(rho0) ||W||_2^2),
    ||Re beta||_2 <= sqrt((H + sqrt(rho0) ||W||_2^2) / (1 - sqrt(rho0))),
    ||grad Im beta||_2 <= sqrt(H + sqrt(rho0) ||W||_2^2).
    """
    w2 = pot.w_l2() ** 2
    s = pot.sqrt_rho0
    base = max(H + s * w2, 0.0)
    return {
        "P": float(np.sqrt(max(2.0 * H + s * w2, 0.0))),
        "re_beta_l2": float(np.sqrt(base / (1.0 - s))) if s < 1 else np.inf,
        "grad_im_beta_l2": float(np.sqrt(base)),
    }


def strang_step(particle: ParticleState, state: FieldState, pot: Potential,
                dt: float, precomp=None, g2=None):
    """One Strang step; mutates and returns (particle, state)."""
    if precomp is None:
        precomp = make_precomputed(state.grid)
    if g2 is None:
        g2 = (-pot.sqrt_rho0 * pot.W_hat).astype(complex).ravel()
    F = particle_force(state, pot)
    P_half = particle.P + 0.5 * dt * F
    field_step_grid(state, precomp, P_half, g2, dt)
    particle.X = particle.X + dt * P_half
    F2 = particle_force(state, pot)
    particle.P = P_half + 0.5 * dt * F2
    particle.F = F2
    particle.t += dt
    return particle, state


def simulate(config: SimConfig) -> TrajectoryRecord:
    """Run the benchmark integrator with conservation/bound monitors."""
    config.validate()
    grid = make_grid(config.d, config.n_per_dim, config.box_length)
    profile = GaussianPotentialProfile(
        n=config.n, s=config.s, rho0=config.rho0, d=config.d
    )
    pot = build_potential(config.n, profile, config.rho0, grid)
    if config.zero_potential:
        pot.V_hat = np.zeros_like(pot.V_hat)
        pot.W_hat = np.zeros_like(pot.W_hat)
    if config.beta0_amplitude != 0.0:
        state = gaussian_pulse(
            grid, config.beta0_amplitude, config.beta0_width,
            config.beta0_phase,
        )
    else:
        state = zero_field(grid)
    particle = ParticleState(
        t=0.0,
        X=np.zeros(config.d),
        P=np.asarray(config.P0, dtype=float),
        F=particle_force(state, pot),
    )
    precomp = make_precomputed(grid)
    g2 = (-pot.sqrt_rho0 * pot.W_hat).astype(complex).ravel()
    n_steps = int(round(config.T / config.dt))
    stride = int(round(config.sample_interval / config.dt))

    rows = {k: [] for k in (
        "t", "X", "P", "Pdot", "H", "re", "gradim", "gap")}
    # a-priori bounds follow from the conserved initial energy, so later
    # samples are checked against H(0): a drifting integrator gets caught
    bounds = energy_bounds(hamiltonian(particle.P, state, pot), pot)

    def sample():
        H = hamiltonian(particle.P, state, pot)
        norms = field_norms(state)
        p_abs = float(np.linalg.norm(particle.P))
        tol = config.monitor_tol
        checks = [
            ("|P|", p_abs, bounds["P"]),
            ("||Re beta||_2", norms["re_l2"], bounds["re_beta_l2"]),
            ("||grad Im beta||_2", norms["grad_im_l2"],
             bounds["grad_im_beta_l2"]),
        ]
        for name, val, bound in checks:
            if not np.isfinite(val):
                raise MonitorViolation(
                    f"non-finite {name} at t={particle.t:.6g}"
                )
            if val > bound + tol:
                raise MonitorViolation(
                    f"{name} = {val:.12g} exceeds bound {bound:.12g} "
                    f"at t={particle.t:.6g} (discretization failure)"
                )
        if config.track_soliton_gap and p_abs < 1.0:
            from .soliton import scattering_gap, solve_profile

            S = solve_profile(particle.P, pot, grid)
            gap = scattering_gap(state, S)
        else:
            gap = np.nan
        rows["t"].append(particle.t)
        rows["X"].append(particle.X.copy())
        rows["P"].append(particle.P.copy())
        rows["Pdot"].append(particle.F.copy())
        rows["H"].append(H)
        rows["re"].append(norms["re_l2"])
        rows["gradim"].append(norms["grad_im_l2"])
        rows["gap"].append(gap)

    sample()
    for step in range(1, n_steps + 1):
        strang_step(particle, state, pot, config.dt, precomp, g2)
        if step % stride == 0:
            sample()
    return TrajectoryRecord(
        t=np.asarray(rows["t"]),
        X=np.asarray(rows["X"]),
        P=np.asarray(rows["P"]),
        Pdot=np.asarray(rows["Pdot"]),
        H=np.asarray(rows["H"]),
        re_beta_l2=np.asarray(rows["re"]),
        grad_im_beta_l2=np.asarray(rows["gradim"]),
        soliton_gap=np.asarray(rows["gap"]),
        config=vars(config).copy(),
    )


def ballistic_diagnostics(record: TrajectoryRecord) -> dict:
    """Ballistic deviation |X/t - P| and the decay-exponent fit of |Pdot|.

    Fits log|Pdot| vs log t by least squares over the second half of the
    record; degenerate (zero or constant) signals are flagged instead of
    fitted.
    """
    from .fitting import loglog_fit

    if len(record) < 20:
        raise ConfigError(
            f"need at least 20 samples for diagnostics, got {len(record)}"
        )
    t = record.t
    with np.errstate(divide="ignore", invalid="ignore"):
        dev = np.linalg.norm(
            record.X - t[:, None] * record.P, axis=1
        ) / np.maximum(t, np.finfo(float).tiny)
    dev[t == 0] = 0.0
    pdot_abs = np.linalg.norm(record.Pdot, axis=1)
    half = len(record) // 2
    tt, yy = t[half:], pdot_abs[half:]
    keep = (tt > 0) & (yy > 0)
    out = {"ballistic_deviation": dev, "pdot_abs": pdot_abs}
    if keep.sum() < 5 or np.ptp(np.log(yy[keep])) < 1e-12:
        out.update(degenerate=True, exponent=np.nan, exponent_ci=np.nan)
        return out
    fit = loglog_fit(tt[keep], yy[keep])
    out.update(
        degenerate=fit["degenerate"],
        exponent=fit["slope"],
        exponent_ci=fit["slope_ci"],
    )
    return out
