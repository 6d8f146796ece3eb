"""Small dense complex linear algebra.

Matrices are plain ``numpy`` complex128 arrays of shape ``(d, d)``.  Every
function here is pure: inputs are never modified.

Tensor products use the convention that subsystem 1 is the *left* (slow)
factor, so ``tensor(a, b)[i * db + k, j * db + l] == a[i, j] * b[k, l]``.

The Hermitian eigensolver is a cyclic Jacobi method with complex Givens
rotations.  It is meant for the tiny operators used in this package
(dimension at most 16) and needs nothing beyond elementwise numpy.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import DimensionError, NotHermitianError

EPS_MAT = 1e-12
"""Entrywise tolerance for structural checks (equality, Hermiticity)."""

EPS_SPECTRAL = 1e-10
"""Tolerance for spectral checks (eigenvalues, reconstruction residuals)."""

JACOBI_TOL = 1e-14
_MAX_SWEEPS = 60


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a square complex128 array, validating finiteness."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise DimensionError(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def scalar(re: float, im: float = 0.0) -> complex:
    z = complex(re, im)
    if not cmath.isfinite(z):
        raise ValueError(f"non-finite complex scalar {z!r}")
    return z


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=np.complex128)


def _check_same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")


def mat_mul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    _check_same_dim(a, b)
    return a @ b


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T


def tensor(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def trace(a) -> complex:
    return complex(np.trace(as_matrix(a)))


def commutator(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    _check_same_dim(a, b)
    return a @ b - b @ a


def allclose(a, b, tol: float = EPS_MAT) -> bool:
    """Entrywise equality within ``tol`` (absolute)."""
    a, b = np.asarray(a), np.asarray(b)
    return a.shape == b.shape and bool(np.all(np.abs(a - b) <= tol))


def is_hermitian(a, tol: float = EPS_MAT) -> bool:
    a = as_matrix(a)
    return allclose(a, a.conj().T, tol)


def _off_norm(a: np.ndarray) -> float:
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pairings covering every (p, q) once per sweep, n/2 disjoint pairs per round."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[i], players[m - 1 - i]) for i in range(m // 2)]
        pairs = [(min(a, b), max(a, b)) for a, b in pairs if a < n and b < n]
        if pairs:
            ps, qs = zip(*pairs)
            rounds.append((np.array(ps), np.array(qs)))
        players = [players[0], players[-1], *players[1:-1]]
    return rounds


def hermitian_eigh(a) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi sweeps.

    Each sweep visits every off-diagonal pair once, grouped in round-robin
    order so that the rotations of one round act on disjoint index pairs and
    can be applied together as a single unitary.

    Returns ``(w, v)`` with ``w`` ascending and the columns of ``v`` the
    corresponding orthonormal eigenvectors.  Degenerate eigenvalues are
    repeated; their eigenvectors span the eigenspace but are otherwise
    arbitrary.

    Raises:
        NotHermitianError: if ``a`` differs from its adjoint by more than
            ``EPS_MAT`` in any entry.
    """
    a = as_matrix(a)
    if not is_hermitian(a):
        raise NotHermitianError("matrix is not Hermitian within tolerance")
    n = a.shape[0]
    # symmetrize so rounding noise in the input cannot stall convergence
    work = 0.5 * (a + a.conj().T)
    vecs = identity(n)
    # Convergence is judged relative to the matrix scale; an absolute
    # 1e-14 floor is unreachable for matrices with norm much above 1.
    threshold = JACOBI_TOL * max(1.0, float(np.linalg.norm(work)))
    rounds = _round_robin(n)

    for _ in range(_MAX_SWEEPS):
        if _off_norm(work) < threshold:
            break
        for ps, qs in rounds:
            apq = work[ps, qs]
            mag = np.abs(apq)
            live = mag > 0.0
            if not np.any(live):
                continue
            ps, qs, apq, mag = ps[live], qs[live], apq[live], mag[live]
            pc = np.conj(apq / mag)
            theta = (work[qs, qs].real - work[ps, ps].real) / (2.0 * mag)
            with np.errstate(over="ignore"):
                t = np.sign(theta) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
            t[theta == 0.0] = 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            # On each (p, q) block G = diag(1, pc) @ [[c, s], [-s, c]]: the
            # phase makes the (p, q) entry real and the rotation zeroes it.
            g = identity(n)
            g[ps, ps] = c
            g[ps, qs] = s
            g[qs, ps] = -s * pc
            g[qs, qs] = c * pc
            work = g.conj().T @ work @ g
            work[ps, qs] = 0.0
            work[qs, ps] = 0.0
            vecs = vecs @ g
        work = 0.5 * (work + work.conj().T)
    else:
        raise RuntimeError("Jacobi iteration did not converge")

    w = np.real(np.diag(work)).copy()
    order = np.argsort(w, kind="stable")
    return w[order], vecs[:, order]


def hermitian_eigenvalues(a) -> list[float]:
    """Ascending real eigenvalues of a Hermitian matrix."""
    w, _ = hermitian_eigh(a)
    return [float(x) for x in w]


def apply_spectral(a, fn) -> np.ndarray:
    """Return ``fn(a)`` for Hermitian ``a`` via its spectral decomposition."""
    w, v = hermitian_eigh(a)
    fw = np.array([fn(x) for x in w], dtype=np.complex128)
    return (v * fw) @ v.conj().T
