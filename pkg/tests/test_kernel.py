import numpy as np
import pytest

from mdrc.experiments import PMDC_K, PMDC_L_BAR, pmdc_plant
from mdrc.plant import extend
from mdrc.sim import _kernel_py
from mdrc.sim.sampling import random_closed_loop

compiled = pytest.importorskip("mdrc.sim._kernel", reason="compiled kernel not built")

LAWS = [
    (0, 0.0, 0.0, 0.0, 0),
    (0, 95.0, -100.0, 0.0, 0),
    (0, 0.0, 0.0, -5.0, 1),
    (1, 0.0, 0.0, 9.0, 1),
]


def _args(p, K, L, law, d, x0, z0, n):
    return (p.A, p.b_u, p.b_d, np.asarray(K, float), p.C_m, np.asarray(L, float), extend(p).A_bar, law, d, x0, z0, n)


@pytest.mark.parametrize("law", LAWS)
def test_bit_identical_on_pmdc(law):
    p = pmdc_plant()
    rng = np.random.default_rng(1)
    n = 800
    args = _args(p, PMDC_K, PMDC_L_BAR, law, rng.uniform(-5, 5, n + 2), np.array([1.0, -2.0]), np.array([0.5, 0.0, 1.0]), n)
    for a, b in zip(compiled.run_closed_loop(*args), _kernel_py.run_closed_loop(*args)):
        np.testing.assert_array_equal(a, b)


def test_bit_identical_on_random_plants():
    rng = np.random.default_rng(2)
    for _ in range(20):
        p, K = random_closed_loop(rng)
        L = rng.uniform(-0.5, 0.5, (3, p.r))
        law = (int(rng.integers(0, 2)), *rng.uniform(-3, 3, 3), 1)
        n = 200
        args = _args(p, K, L, law, rng.normal(size=n + 2), rng.normal(size=2), rng.normal(size=3), n)
        for a, b in zip(compiled.run_closed_loop(*args), _kernel_py.run_closed_loop(*args)):
            np.testing.assert_array_equal(a, b)
