"""Compiled kernels agree with their uncompiled numpy source."""
import json
import os
import subprocess
import sys

import numpy as np
import pytest

from galikit import _kernels as K
from galikit._jit import JIT_ENABLED, pure
import oracles as orc


def tangent(rng, scale=1.0):
    return scale * rng.standard_normal(10)


CASES = {
    "skew": lambda rng: (rng.standard_normal(3),),
    "so3_exp": lambda rng: (rng.standard_normal(3),),
    "so3_left_jacobian": lambda rng: (rng.standard_normal(3),),
    "so3_left_jacobian_inv": lambda rng: (rng.standard_normal(3),),
    "so3_log": lambda rng: (orc.random_rotation(rng),),
    "so3_angle": lambda rng: (orc.random_rotation(rng),),
    "orthonormalize": lambda rng: (orc.random_rotation(rng) + 1e-9 * rng.standard_normal((3, 3)),),
    "gal_compose": lambda rng: (orc.random_element_matrix(rng), orc.random_element_matrix(rng)),
    "gal_inverse": lambda rng: (orc.random_element_matrix(rng),),
    "gal_wedge": lambda rng: (tangent(rng),),
    "gal_exp": lambda rng: (tangent(rng),),
    "gal_log": lambda rng: (orc.random_element_matrix(rng),),
    "gal_adjoint": lambda rng: (orc.random_element_matrix(rng),),
    "gal_ad": lambda rng: (tangent(rng),),
    "gal_right_jacobian": lambda rng: (np.r_[0.5 * rng.standard_normal(3), rng.standard_normal(7)],),
    "exp_batch": lambda rng: (rng.standard_normal((8, 10)),),
    "compose_chain": lambda rng: (np.stack([orc.random_element_matrix(rng) for _ in range(6)]),),
}


@pytest.mark.parametrize("name", sorted(CASES))
def test_kernel_parity(name, rng):
    fn = getattr(K, name)
    for _ in range(20):
        args = CASES[name](rng)
        fast, slow = fn(*args), pure(fn)(*args)
        assert np.allclose(fast, slow, rtol=0, atol=1e-13), name


def test_preintegrate_parity(rng):
    n = 50
    times = np.cumsum(np.r_[0.0, rng.uniform(0.005, 0.02, n - 1)])
    args = (times, rng.standard_normal((n, 3)), rng.standard_normal((n, 3)),
            0.1 * rng.standard_normal((n, 3)), rng.standard_normal((n, 3)))
    assert np.abs(K.preintegrate(*args) - pure(K.preintegrate)(*args)).max() <= 1e-12


def test_rotating_integrator_parity(rng):
    n = 200
    F0 = orc.element_matrix(orc.random_rotation(rng), rng.standard_normal(3), rng.standard_normal(3), 0.0)
    args = (F0, np.array([0, 0, 7.29e-5]), np.array([0, 0, -9.8]), 0.1 * rng.standard_normal((n, 3)),
            rng.standard_normal((n, 3)), 0.0, np.zeros(3), 1.0, 1e-3)
    assert np.abs(K.rk4_rotating(*args) - pure(K.rk4_rotating)(*args)).max() <= 1e-12


_SCRIPT = """
import json, numpy as np
from galikit import _jit, _kernels as K
xi = np.linspace(-1, 1, 10)
M = K.gal_exp(xi)
print(json.dumps({"jit": _jit.JIT_ENABLED, "exp": M.tolist(), "log": K.gal_log(M).tolist()}))
"""


def test_environment_flag_selects_numpy_path():
    env = dict(os.environ, GALIKIT_DISABLE_JIT="1")
    out = subprocess.run([sys.executable, "-c", _SCRIPT], env=env, capture_output=True, text=True,
                         check=True)
    res = json.loads(out.stdout)
    assert res["jit"] is False
    xi = np.linspace(-1, 1, 10)
    assert np.abs(np.array(res["exp"]) - K.gal_exp(xi)).max() <= 1e-13
    assert np.abs(np.array(res["log"]) - xi).max() <= 1e-12


@pytest.mark.skipif(not JIT_ENABLED, reason="numba disabled")
def test_kernels_are_compiled():
    assert hasattr(K.gal_exp, "py_func")
