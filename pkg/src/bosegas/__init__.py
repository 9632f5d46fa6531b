"""Pseudo-spectral simulator and verification suite for a particle
coupled to a Bose gas in the Bogoliubov (linearized) limit.

Subpackages:
    grids       periodic tensor grids + Fourier conventions
    potentials  Gaussian potential family, Fermi normalization, seminorms
    fields      two-component field state in the moving frame
    spectral    per-mode 2x2 linear algebra (dispersion, diagonalization)
    kernels     vectorized per-mode propagation (compiled or numpy)
    dynamics    Strang-split time integration with conservation monitors
    soliton     asymptotic traveling-wave profile solve
    friction    Cherenkov friction evaluators (regularized + delta-shell)
    dispersion  radial Fourier toolkit and free-evolution decay fits
    cli         YAML-configured command line front end
"""

__version__ = "0.1.0"

from .errors import (
    BosegasError,
    ConfigError,
    FermiNormalizationError,
    MonitorViolation,
    ResolutionError,
    ResolutionWarning,
    SingularModeError,
)
from .grids import SpectralGrid, make_grid

__all__ = [
    "BosegasError",
    "ConfigError",
    "FermiNormalizationError",
    "MonitorViolation",
    "ResolutionError",
    "ResolutionWarning",
    "SingularModeError",
    "SpectralGrid",
    "make_grid",
    "__version__",
]
