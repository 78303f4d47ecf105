"""Seeded random plants for property tests and benchmarks.

Entries are drawn uniformly from [-1, 1]; the input channel is rescaled and
``c_o`` is taken orthogonal to it so Assumption 1 holds by construction.
Draws whose controllability matrix is nearly singular (relative determinant
below ``margin``) are rejected.
"""

import numpy as np

from ..plant import PlantSpec
from ..synthesis import place_poles


def random_plant(rng, margin=1e-2, matched=False, r=2):
    while True:
        A = rng.uniform(-1.0, 1.0, (2, 2))
        b_u = rng.uniform(-1.0, 1.0, (2, 1))
        if matched:
            lam = rng.uniform(0.2, 2.0) * rng.choice([-1.0, 1.0])
            b_d = b_u / lam
        else:
            b_d = rng.uniform(-1.0, 1.0, (2, 1))
        ctrb = np.hstack([b_u, A @ b_u])
        scale = np.max(np.abs(ctrb)) ** 2
        if scale == 0 or abs(np.linalg.det(ctrb)) < margin * scale:
            continue
        if np.linalg.norm(b_u) < 0.1 or np.linalg.norm(b_d) < 0.1:
            continue
        c_o = np.array([[-b_u[1, 0], b_u[0, 0]]]) / np.linalg.norm(b_u)
        C_m = np.eye(2) if r == 2 else c_o.copy()
        return PlantSpec(A, b_u, b_d, C_m, c_o)


def random_stable_poles(rng, max_modulus=0.95):
    """A real pair or a conjugate pair inside the disc of radius ``max_modulus``."""
    if rng.random() < 0.5:
        radius = rng.uniform(0.0, max_modulus)
        angle = rng.uniform(0.0, np.pi)
        p = radius * np.exp(1j * angle)
        return p, p.conjugate()
    a, b = rng.uniform(-max_modulus, max_modulus, 2)
    return complex(a), complex(b)


def random_closed_loop(rng, max_modulus=0.95, **kwargs):
    """``(plant, K)`` with ``A + b_u K`` Schur."""
    p = random_plant(rng, **kwargs)
    K = place_poles(p.A, p.b_u, *random_stable_poles(rng, max_modulus))
    return p, K
