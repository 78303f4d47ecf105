"""Small dense linear algebra for matrices up to 4x4.

Everything here works on plain 2-D ``float64`` numpy arrays. Products and
sums use numpy directly; inversion, eigenvalues, rank and the matrix
exponential are written out for the sizes this package needs so that the
results are deterministic and easy to audit.
"""

import cmath
import math

import numpy as np

from .errors import NonFinite, SingularMatrix, UnsupportedShape

__all__ = [
    "as_mat",
    "det",
    "mat_inverse",
    "eigenvalues",
    "spectral_radius",
    "is_schur",
    "matrix_rank",
    "expm",
    "zoh_discretize",
    "euler_discretize",
]

MAX_DIM = 4
DEFAULT_SINGULAR_TOL = 1e-12


def as_mat(value, shape=None, name="matrix"):
    """Coerce ``value`` to a finite 2-D float array with 1..4 rows and columns.

    A 1-D input is read as a column vector. ``shape`` may pin the expected
    ``(rows, cols)``; ``None`` in either slot accepts any size.
    """
    m = np.array(value, dtype=float)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    elif m.ndim == 1:
        m = m.reshape(-1, 1)
    elif m.ndim != 2:
        raise UnsupportedShape(f"{name}: expected a 2-D matrix, got {m.ndim} dimensions")
    rows, cols = m.shape
    if not (1 <= rows <= MAX_DIM and 1 <= cols <= MAX_DIM):
        raise UnsupportedShape(f"{name}: shape {m.shape} outside 1..{MAX_DIM}")
    if shape is not None:
        want_r, want_c = shape
        if (want_r is not None and rows != want_r) or (want_c is not None and cols != want_c):
            raise UnsupportedShape(f"{name}: expected shape {shape}, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NonFinite(f"{name}: contains NaN or Inf")
    m.setflags(write=False)
    return m


def _square(m, sizes=(2, 3)):
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in sizes:
        raise UnsupportedShape(f"expected a square matrix of size {sizes}, got {m.shape}")
    return m


def det(m):
    m = _square(m, (1, 2, 3))
    n = m.shape[0]
    if n == 1:
        return float(m[0, 0])
    if n == 2:
        return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    return float(
        m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
        - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
        + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
    )


def mat_inverse(m, tol=DEFAULT_SINGULAR_TOL):
    """Inverse of a 2x2 or 3x3 matrix by the adjugate formula.

    The matrix is declared singular when ``|det(m)| <= tol * max|m_ij|**n``,
    which keeps the test independent of the units the entries carry. The
    check runs on ``m / max|m_ij|`` so it cannot underflow.
    """
    m = _square(m)
    n = m.shape[0]
    scale = float(np.max(np.abs(m)))
    if scale == 0.0 or not math.isfinite(scale):
        raise SingularMatrix("matrix is zero or not finite")
    u = m / scale
    d = det(u)
    if abs(d) <= tol:
        raise SingularMatrix(f"matrix is singular to tolerance (normalized det={d:.3e})")
    if n == 2:
        adj = np.array([[u[1, 1], -u[0, 1]], [-u[1, 0], u[0, 0]]])
    else:
        adj = np.empty((3, 3))
        for i in range(3):
            for j in range(3):
                rows = [r for r in range(3) if r != j]
                cols = [c for c in range(3) if c != i]
                minor = u[rows[0], cols[0]] * u[rows[1], cols[1]] - u[rows[0], cols[1]] * u[rows[1], cols[0]]
                adj[i, j] = (-1) ** (i + j) * minor
    return adj / d / scale


def _cbrt(z):
    # principal complex cube root; real branch for real input keeps Cardano exact on real cubics
    if z.imag == 0.0:
        return complex(math.copysign(abs(z.real) ** (1.0 / 3.0), z.real), 0.0)
    return z ** (1.0 / 3.0)


def _cubic_roots(a, b, c):
    """Roots of the real cubic t^3 + a t^2 + b t + c.

    Cardano (complex arithmetic) locates a real root, Newton polishes it, and
    the remaining pair comes from the deflated quadratic. Deflation keeps the
    root sum equal to ``-a`` and the pair exactly conjugate.
    """
    shift = a / 3.0
    p = b - a * a / 3.0
    q = 2.0 * a**3 / 27.0 - a * b / 3.0 + c
    disc = cmath.sqrt((q / 2.0) ** 2 + (p / 3.0) ** 3)
    s = -q / 2.0 + disc
    if abs(-q / 2.0 - disc) > abs(s):
        s = -q / 2.0 - disc
    w = complex(-0.5, math.sqrt(3.0) / 2.0)
    if abs(s) == 0.0:
        candidates = [0j]
    else:
        u = _cbrt(complex(s))
        candidates = [u * w**k - p / (3.0 * u * w**k) for k in range(3)]
    r = min(candidates, key=lambda z: abs(z.imag)).real - shift

    def poly(t):
        return ((t + a) * t + b) * t + c

    for _ in range(8):
        slope = (3.0 * r + 2.0 * a) * r + b
        if slope == 0.0:
            break
        step = poly(r) / slope
        if not math.isfinite(step) or abs(poly(r - step)) >= abs(poly(r)):
            break
        r -= step
    q1 = a + r
    q0 = b + r * q1
    half = -q1 / 2.0
    rest = cmath.sqrt(half * half - q0)
    return [complex(r), half + rest, half - rest]


def _clean(z, scale):
    # drop rounding-level imaginary parts so real spectra come back real
    if abs(z.imag) <= 1e-13 * max(scale, 1.0):
        return complex(z.real, 0.0)
    return z


def eigenvalues(m):
    """All eigenvalues of a 2x2 or 3x3 matrix, with multiplicity, as complex numbers.

    Complex pairs are listed with positive imaginary part first.
    """
    m = _square(m, (1, 2, 3))
    n = m.shape[0]
    scale = float(np.max(np.abs(m))) if m.size else 0.0
    if n == 1:
        return [complex(m[0, 0])]
    if n == 2:
        tr = m[0, 0] + m[1, 1]
        half = tr / 2.0
        disc = cmath.sqrt(half * half - det(m))
        roots = [half + disc, half - disc]
    else:
        tr = m[0, 0] + m[1, 1] + m[2, 2]
        minors = (
            m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
            + m[0, 0] * m[2, 2] - m[0, 2] * m[2, 0]
            + m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1]
        )
        roots = _cubic_roots(-tr, minors, -det(m))
    roots = [_clean(complex(r), scale) for r in roots]
    return sorted(roots, key=lambda z: (-z.real, -z.imag))


def spectral_radius(m):
    return max(abs(z) for z in eigenvalues(m))


def is_schur(m, margin=1e-9):
    """True when every eigenvalue lies strictly inside the unit circle (with ``margin``)."""
    return spectral_radius(m) < 1.0 - margin


def matrix_rank(m, rtol=1e-10):
    """Rank by Gaussian elimination with partial pivoting.

    A pivot counts when it exceeds ``rtol`` times the largest entry of ``m``.
    Works on any small rectangular matrix (observability stacks are 6x3).
    """
    work = np.array(m, dtype=float)
    rows, cols = work.shape
    threshold = rtol * float(np.max(np.abs(work))) if work.size else 0.0
    if threshold == 0.0:
        return 0
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        pivot = rank + int(np.argmax(np.abs(work[rank:, col])))
        if abs(work[pivot, col]) <= threshold:
            continue
        work[[rank, pivot]] = work[[pivot, rank]]
        for r in range(rank + 1, rows):
            work[r] -= work[r, col] / work[rank, col] * work[rank]
        rank += 1
    return rank


def _taylor(m, order):
    n = m.shape[0]
    out = np.eye(n)
    term = np.eye(n)
    for k in range(1, order + 1):
        term = term @ m / k
        out = out + term
    return out


def expm(m, tol=1e-12):
    """Matrix exponential by scaling and squaring around a truncated Taylor series.

    The series order doubles until a further doubling moves no entry of the
    scaled exponential by more than ``tol``.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or not 1 <= m.shape[0] <= MAX_DIM:
        raise UnsupportedShape(f"expm needs a square matrix up to {MAX_DIM}x{MAX_DIM}, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NonFinite("expm: input contains NaN or Inf")
    norm = float(np.max(np.sum(np.abs(m), axis=1)))
    squarings = max(0, math.ceil(math.log2(norm / 0.5))) if norm > 0.5 else 0
    scaled = m / 2.0**squarings
    order = 8
    current = _taylor(scaled, order)
    while True:
        refined = _taylor(scaled, 2 * order)
        if np.max(np.abs(refined - current)) <= tol:
            current = refined
            break
        order *= 2
        current = refined
        if order > 512:
            raise NonFinite("expm: Taylor series failed to converge")
    for _ in range(squarings):
        current = current @ current
    return current


def zoh_discretize(A_c, B_c, T):
    """Zero-order-hold discretization of ``dx/dt = A_c x + B_c u`` with period ``T``.

    Uses ``expm([[A_c, B_c], [0, 0]] * T) = [[A_d, B_d], [0, I]]``.
    """
    A_c = np.asarray(A_c, dtype=float)
    B_c = np.asarray(B_c, dtype=float)
    if B_c.ndim == 1:
        B_c = B_c.reshape(-1, 1)
    if not (np.all(np.isfinite(A_c)) and np.all(np.isfinite(B_c)) and math.isfinite(T)):
        raise NonFinite("zoh_discretize: inputs contain NaN or Inf")
    if T <= 0:
        raise ValueError("sample period must be positive")
    n, m = A_c.shape[0], B_c.shape[1]
    if A_c.shape != (n, n) or B_c.shape[0] != n:
        raise UnsupportedShape(f"incompatible shapes {A_c.shape} and {B_c.shape}")
    block = np.zeros((n + m, n + m))
    block[:n, :n] = A_c
    block[:n, n:] = B_c
    phi = expm(block * T)
    return phi[:n, :n].copy(), phi[:n, n:].copy()


def euler_discretize(A_c, B_c, T):
    """Forward-Euler discretization: ``A_d = I + A_c T``, ``B_d = B_c T``.

    Unlike ZOH this keeps the zero pattern of ``B_c``; a regulated output that
    is blind to the input in continuous time stays blind after sampling.
    """
    A_c = np.asarray(A_c, dtype=float)
    B_c = np.asarray(B_c, dtype=float)
    if B_c.ndim == 1:
        B_c = B_c.reshape(-1, 1)
    if not (np.all(np.isfinite(A_c)) and np.all(np.isfinite(B_c)) and math.isfinite(T)):
        raise NonFinite("euler_discretize: inputs contain NaN or Inf")
    if T <= 0:
        raise ValueError("sample period must be positive")
    return np.eye(A_c.shape[0]) + A_c * T, B_c * T
