import numpy as np
import pytest

from bosegas import kernels
from bosegas._kernels_py import field_step as field_step_py
from bosegas.fields import gaussian_pulse
from bosegas.grids import make_grid
from bosegas.kernels import make_precomputed
from bosegas.spectral import propagate_mode


def _random_inputs(n=257, seed=0, with_zero_mode=True):
    rng = np.random.default_rng(seed)
    h1 = rng.normal(size=n) + 1j * rng.normal(size=n)
    h2 = rng.normal(size=n) + 1j * rng.normal(size=n)
    r = np.abs(rng.normal(size=n)) + 0.05
    if with_zero_mode:
        r[0] = 0.0
    m = np.sqrt(1.0 + r * r)
    phi1v = r * m
    pxi = rng.normal(size=n) * r
    pxi[r == 0] = 0.0
    g2 = rng.normal(size=n) + 1j * rng.normal(size=n)
    return h1, h2, pxi, r, m, phi1v, g2


def test_python_kernel_matches_per_mode_propagator():
    g = make_grid(2, 16, 20.0)
    st = gaussian_pulse(g, 0.3, 1.5, 0.6)
    pre = make_precomputed(g)
    P = np.array([0.4, -0.2])
    rng = np.random.default_rng(1)
    g2 = rng.normal(size=pre["r"].size) + 1j * rng.normal(size=pre["r"].size)
    dt = 0.07
    pxi = pre["xi_flat"] @ P
    out1, out2 = field_step_py(
        st.h1_hat.ravel(), st.h2_hat.ravel(), pxi,
        pre["r"], pre["m"], pre["phi1"], g2, dt,
    )
    h1f, h2f = st.h1_hat.ravel(), st.h2_hat.ravel()
    for idx in list(range(0, 40)) + [100, 200, 255]:
        xi = pre["xi_flat"][idx]
        ref = propagate_mode(
            np.array([h1f[idx], h2f[idx]]),
            np.array([0.0, g2[idx]]),
            xi, P, dt,
        )
        assert abs(out1[idx] - ref[0]) <= 1e-13 * max(abs(ref[0]), 1.0)
        assert abs(out2[idx] - ref[1]) <= 1e-13 * max(abs(ref[1]), 1.0)


@pytest.mark.skipif(
    not kernels.available()["cython"], reason="compiled kernel not built"
)
def test_cython_matches_python():
    from bosegas import _kernels_cy

    args = _random_inputs()
    dt = 0.013
    a1, a2 = field_step_py(*args, dt)
    b1, b2 = _kernels_cy.field_step(*args, dt)
    assert np.max(np.abs(a1 - b1)) <= 1e-13
    assert np.max(np.abs(a2 - b2)) <= 1e-13


def test_dispatch_consistency():
    args = _random_inputs(seed=5)
    a1, a2 = kernels.field_step(*args, 0.02)
    b1, b2 = field_step_py(*args, 0.02)
    assert np.max(np.abs(a1 - b1)) <= 1e-13
    assert np.max(np.abs(a2 - b2)) <= 1e-13


def test_free_flow_preserves_amplitudes():
    h1, h2, pxi, r, m, phi1v, _ = _random_inputs(seed=3, with_zero_mode=False)
    g2 = np.zeros_like(h1)
    ap0 = 0.5 * h1 / r - 0.5j * h2 / m
    out1, out2 = kernels.field_step(h1, h2, pxi, r, m, phi1v, g2, 0.11)
    ap1 = 0.5 * out1 / r - 0.5j * out2 / m
    assert np.max(np.abs(np.abs(ap1) - np.abs(ap0))) <= 1e-13
