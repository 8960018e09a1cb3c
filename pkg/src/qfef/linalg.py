"""Dense complex-matrix kernel.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. The Hermitian
eigensolver is a cyclic complex Jacobi iteration; everything else is thin
glue over numpy's array primitives.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

ATOL = 1e-12
HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-9

JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


class LinalgError(ValueError):
    """Raised for malformed input to the matrix kernel."""


class ConvergenceError(RuntimeError):
    """Raised when the Jacobi iteration exhausts its sweep budget."""


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise LinalgError(f"expected a 2-d matrix, got shape {a.shape}")
    return a


def allclose(a, b, atol: float = ATOL) -> bool:
    """Entrywise comparison with an absolute tolerance only."""
    a = np.asarray(a)
    b = np.asarray(b)
    return a.shape == b.shape and bool(np.all(np.abs(a - b) <= atol))


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m).T


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    m = as_matrix(m)
    return m.shape[0] == m.shape[1] and bool(np.max(np.abs(m - dagger(m)), initial=0.0) <= tol)


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def partial_trace(mat, dims: tuple[int, int], keep: str) -> np.ndarray:
    """Reduced operator of a bipartite matrix.

    ``keep`` is ``"A"`` or ``"B"``; the other factor is traced out. Basis
    states are ordered row-major, ``|ij> -> i * dB + j``.
    """
    m = as_matrix(mat)
    dA, dB = dims
    if m.shape != (dA * dB, dA * dB):
        raise LinalgError(f"matrix of shape {m.shape} does not match dims {dims}")
    t = m.reshape(dA, dB, dA, dB)
    if keep == "A":
        return np.einsum("ijkj->ik", t)
    if keep == "B":
        return np.einsum("ijil->jl", t)
    raise LinalgError(f"keep must be 'A' or 'B', got {keep!r}")


@lru_cache(maxsize=None)
def _round_robin(n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    """Circle-method schedule: n - 1 rounds (n even) of disjoint index pairs."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for k in range(m // 2):
            a, b = players[k], players[m - 1 - k]
            if a < n and b < n:
                ps.append(min(a, b))
                qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=np.intp), np.array(qs, dtype=np.intp)))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return tuple(rounds)


def _off_norm(a: np.ndarray) -> float:
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


_NEGLIGIBLE = 1e-150


def jacobi_eigh(m, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Cyclic Jacobi diagonalisation of a Hermitian matrix.

    Each sweep visits every off-diagonal pair once, in round-robin order so
    that the n/2 disjoint rotations of a round are applied together. Returns
    ``(values, vectors)``: eigenvalues ascending, eigenvectors as the columns
    of a unitary. Stops once the off-diagonal Frobenius norm is at most
    ``tol`` times the full norm.
    """
    a = as_matrix(m).copy()
    n = a.shape[0]
    if a.shape != (n, n):
        raise LinalgError(f"matrix must be square, got {a.shape}")
    if not is_hermitian(a):
        raise LinalgError("matrix is not Hermitian within 1e-10")
    a = 0.5 * (a + dagger(a))
    v = np.eye(n, dtype=np.complex128)
    scale = float(np.linalg.norm(a))
    if n == 1 or scale == 0.0:
        return np.real(np.diag(a)).copy(), v

    thresh = tol * scale
    schedule = _round_robin(n)
    g = np.zeros((n, n), dtype=np.complex128)
    for _ in range(max_sweeps):
        if _off_norm(a) <= thresh:
            break
        for ps, qs in schedule:
            apq = a[ps, qs]
            r = np.abs(apq)
            # entries this small cannot move the spectrum, and rotating on
            # them overflows tau
            active = r > _NEGLIGIBLE * scale
            if not active.any():
                continue
            safe_r = np.where(active, r, 1.0)
            phase = np.where(active, apq / safe_r, 1.0)
            tau = (a[qs, qs].real - a[ps, ps].real) / (2.0 * safe_r)
            t = np.sign(tau) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
            t = np.where(tau == 0.0, 1.0, t)
            t = np.where(active, t, 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            ph = np.conj(phase)
            g[...] = 0.0
            np.fill_diagonal(g, 1.0)
            g[ps, ps] = c
            g[ps, qs] = s
            g[qs, ps] = -s * ph
            g[qs, qs] = c * ph
            a = dagger(g) @ a @ g
            a[ps, qs] = 0.0
            a[qs, ps] = 0.0
            v = v @ g
        np.fill_diagonal(a, np.real(np.diag(a)))
    else:
        off = _off_norm(a)
        if off > thresh:
            raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps (off={off:.3e})")

    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def hermitian_eig(m, vectors: bool = False):
    """Eigenvalues (ascending) of a Hermitian matrix, optionally with eigenvectors."""
    w, v = jacobi_eigh(m)
    return (w, v) if vectors else w


def singular_values(t) -> np.ndarray:
    """Singular values, descending, from the spectrum of ``t^dagger t``."""
    t = as_matrix(t)
    w = hermitian_eig(dagger(t) @ t)
    return np.sqrt(np.clip(w, 0.0, None))[::-1]


def trace_norm(t) -> float:
    return float(np.sum(singular_values(t)))


def unitary_exp(h) -> np.ndarray:
    """``exp(i h)`` for Hermitian ``h``."""
    h = as_matrix(h)
    if not is_hermitian(h):
        raise LinalgError("unitary_exp requires a Hermitian generator")
    w, v = hermitian_eig(h, vectors=True)
    return (v * np.exp(1j * w)) @ dagger(v)


def unitarity_residual(u) -> float:
    u = as_matrix(u)
    return float(np.max(np.abs(u @ dagger(u) - np.eye(u.shape[0]))))


@lru_cache(maxsize=None)
def _gell_mann_cached(d: int) -> tuple[np.ndarray, ...]:
    mats = []
    for j in range(d):
        for k in range(j + 1, d):
            g = np.zeros((d, d), dtype=np.complex128)
            g[j, k] = g[k, j] = 1.0
            mats.append(g)
    for j in range(d):
        for k in range(j + 1, d):
            g = np.zeros((d, d), dtype=np.complex128)
            g[j, k] = -1j
            g[k, j] = 1j
            mats.append(g)
    for l in range(1, d):
        diag = np.zeros(d)
        diag[:l] = 1.0
        diag[l] = -l
        mats.append(np.diag(math.sqrt(2.0 / (l * (l + 1))) * diag).astype(np.complex128))
    for g in mats:
        g.setflags(write=False)
    return tuple(mats)


def gell_mann_basis(d: int) -> list[np.ndarray]:
    """The d^2 - 1 generalized Gell-Mann matrices.

    Ordering: symmetric pairs, antisymmetric pairs, then diagonals, each in
    lexicographic (j, k) order. Normalised so that ``Tr[g_i g_j] = 2 delta_ij``;
    for ``d = 2`` this is (sigma_x, sigma_y, sigma_z).
    """
    if int(d) != d or d < 2:
        raise LinalgError(f"Gell-Mann basis needs integer d >= 2, got {d}")
    return [g.copy() for g in _gell_mann_cached(int(d))]


def weyl_operator(d: int, m: int, n: int) -> np.ndarray:
    """Weyl operator ``U_mn |i> = eta^{m(i-n)} |i-n mod d>``, ``eta = exp(2 pi i / d)``."""
    if d < 2:
        raise LinalgError(f"dimension must be >= 2, got {d}")
    if not (0 <= m < d and 0 <= n < d):
        raise LinalgError(f"Weyl indices must lie in [0, {d}), got ({m}, {n})")
    u = np.zeros((d, d), dtype=np.complex128)
    for i in range(d):
        u[(i - n) % d, i] = np.exp(2j * np.pi * m * ((i - n) % d) / d)
    return u


def pauli() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    return tuple(gell_mann_basis(2))
