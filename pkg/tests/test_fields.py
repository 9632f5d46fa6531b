import numpy as np
import pytest

from bosegas.errors import ConfigError
from bosegas.fields import (
    enforce_reality,
    field_norms,
    gaussian_pulse,
    reality_defect,
    zero_field,
)
from bosegas.grids import make_grid


def test_zero_field_norms():
    g = make_grid(2, 16, 20.0)
    norms = field_norms(zero_field(g))
    assert all(v == 0.0 for v in norms.values())


def test_single_mode_parseval():
    g = make_grid(1, 32, 20.0)
    st = zero_field(g)
    k = 3
    st.h1_hat[k] = 1.0
    st.h1_hat[-k] = 1.0  # conjugate partner
    norms = field_norms(st)
    # two unit modes: ||h1||_2^2 = 2 * (2 pi)^{-d} (2 pi / L)^d
    expected = np.sqrt(2.0 * g.mode_weight)
    assert abs(norms["re_l2"] - expected) <= 1e-13


def test_norm_homogeneity():
    g = make_grid(1, 64, 30.0)
    st = gaussian_pulse(g, 0.3, 1.5, 0.4)
    base = field_norms(st)
    st.h1_hat *= 2.0
    st.h2_hat *= 2.0
    doubled = field_norms(st)
    for key, val in base.items():
        assert abs(doubled[key] - 2.0 * val) <= 1e-12 * max(val, 1.0)


def test_gaussian_pulse_reality():
    g = make_grid(2, 32, 25.0)
    st = gaussian_pulse(g, 0.2, 1.2, 0.7)
    assert reality_defect(st) <= 1e-12 * max(np.max(np.abs(st.h1_hat)), 1.0)


def test_enforce_reality_projection():
    g = make_grid(1, 32, 15.0)
    rng = np.random.default_rng(2)
    f = rng.normal(size=g.shape) + 1j * rng.normal(size=g.shape)
    proj = enforce_reality(f, g)
    # projection is idempotent and output is conjugate-symmetric
    assert np.max(np.abs(enforce_reality(proj, g) - proj)) <= 1e-14
    assert np.max(np.abs(g.reflect(proj) - np.conj(proj))) <= 1e-13


def test_gaussian_pulse_bad_width():
    g = make_grid(1, 16, 10.0)
    with pytest.raises(ConfigError):
        gaussian_pulse(g, 0.1, 0.0)
