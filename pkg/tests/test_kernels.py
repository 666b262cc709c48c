import os
import subprocess
import sys

import numpy as np
import pytest

from xyzdm import kernels
from xyzdm._accel import ENV_FLAG, HAVE_NUMBA
from xyzdm.entanglement import thermal_concurrence
from xyzdm.model import ModelParams

BACKENDS = ["numpy"] + (["numba"] if HAVE_NUMBA else [])


def _grid(n=2000, seed=3):
    rng = np.random.default_rng(seed)
    j, jz, dm, b_mean, b_inhom = rng.uniform(-5, 5, (5, n))
    gamma = rng.uniform(-1, 1, n)
    beta = 1 / rng.uniform(0.05, 10, n)
    theta = rng.uniform(0, np.pi, n)
    phi = rng.uniform(0, 2 * np.pi, n)
    return (j, gamma, jz, dm, b_mean, b_inhom), beta, theta, phi


CALLS = {
    "xstate": lambda p, b, t, f, m: kernels.xstate(*p, b, impl=m),
    "thermal_lambdas": lambda p, b, t, f, m: kernels.thermal_lambdas(*p, b, impl=m),
    "ground_concurrence": lambda p, b, t, f, m: kernels.ground_concurrence(*p, impl=m),
    "output_lambdas": lambda p, b, t, f, m: kernels.output_lambdas(*p, b, t, f, impl=m),
    "avg_fidelity": lambda p, b, t, f, m: kernels.avg_fidelity(*p, b, impl=m),
    "fidelity_parts": lambda p, b, t, f, m: kernels.fidelity_parts(*p, b, f, impl=m),
}


@pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")
@pytest.mark.parametrize("name", sorted(CALLS))
def test_backends_agree(name):
    args = _grid()
    ref = CALLS[name](*args, kernels.backend_module("numpy"))
    got = CALLS[name](*args, kernels.backend_module("numba"))
    assert ref.shape == got.shape
    assert np.abs(ref - got).max() <= 1e-13


@pytest.mark.parametrize("backend", BACKENDS)
def test_scalar_broadcast(backend):
    impl = kernels.backend_module(backend)
    out = kernels.thermal_lambdas(1.0, 0.3, 0.5, np.linspace(0, 7, 5), 4.0, 2.5, 10.0, impl=impl)
    assert out.shape == (5, 4)
    c = kernels.concurrence(out, impl=impl)
    for d, v in zip(np.linspace(0, 7, 5), c):
        p = ModelParams(j=1.0, gamma=0.3, jz=0.5, dm=d, b_mean=4.0, b_inhom=2.5, temperature=0.1)
        assert v == pytest.approx(thermal_concurrence(p), abs=1e-14)


@pytest.mark.parametrize("backend", BACKENDS)
def test_extreme_beta_is_finite(backend):
    impl = kernels.backend_module(backend)
    x = kernels.xstate(5.0, 1.0, -5.0, 5.0, 5.0, 5.0, 1e4, impl=impl)
    assert np.isfinite(x).all()
    assert x[0, :4].sum() == pytest.approx(1.0)


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.backend_module("fortran")


def test_env_flag_selects_numpy():
    env = dict(os.environ, **{ENV_FLAG: "1"})
    out = subprocess.run(
        [sys.executable, "-c", "from xyzdm import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "numpy"
