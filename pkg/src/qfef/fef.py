"""Fully entangled fraction: closed forms, the two-qubit tensor formula, and a maximiser."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import linalg
from .linalg import dagger, gell_mann_basis
from .states import DensityMatrix, StateSpec, StateError, bloch_fano, make_state

METHODS = ("closed", "corr_tensor", "optimized")

DEFAULT_SEED = 42
DEFAULT_RESTARTS = 16
DEFAULT_MAX_ITERS = 200
DEFAULT_TOL = 1e-10
UNITARY_TOL = 1e-8

GRID_POINTS = 32
GOLDEN_XTOL = 1e-7
NEWTON_XTOL = 1e-12
NEWTON_MAX_STEPS = 20

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_GRID = np.linspace(-math.pi, math.pi, GRID_POINTS, endpoint=False)


class FefError(ValueError):
    pass


@dataclass(frozen=True)
class FefResult:
    value: float
    method: str
    restarts_used: int = 0
    converged: bool = True

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "method": self.method,
            "restarts_used": self.restarts_used,
            "converged": self.converged,
        }


def _local_dim(rho: DensityMatrix) -> int:
    if rho.dA != rho.dB:
        raise FefError(f"FEF needs equal local dimensions, got {rho.dims}")
    return rho.dA


# ---------------------------------------------------------------------------
# two qubits


def correlation_norm(rho: DensityMatrix) -> float:
    """Tr|T| for the correlation tensor of a two-qubit state."""
    return linalg.trace_norm(bloch_fano(rho).T)


def fef_corr_tensor(rho: DensityMatrix) -> FefResult:
    """Two-qubit FEF from the correlation tensor.

    With singular values s1 >= s2 >= s3 of T the maximum over local
    rotations is ``(1 + s1 + s2 - sign(det T) s3) / 4``. This is
    ``(1 + Tr|T|) / 4`` whenever det T <= 0 (every Werner state, and every
    Weyl state with an odd number of negative t_i); for det T > 0 the plain
    trace-norm expression overshoots the true maximum. Local Bloch vectors do
    not enter the overlap, so the formula holds for any two-qubit state.
    """
    if rho.dims != (2, 2):
        raise FefError(f"correlation-tensor formula needs a two-qubit state, got dims {rho.dims}")
    t = bloch_fano(rho).T
    return FefResult(tensor_fef(linalg.singular_values(t), float(np.linalg.det(t))), "corr_tensor")


def tensor_fef(svals, det: float) -> float:
    """Two-qubit FEF from the descending singular values and determinant of T."""
    s = sorted((abs(float(x)) for x in svals), reverse=True)
    sign = 1.0 if det > 0 else -1.0
    return (1.0 + s[0] + s[1] - sign * s[2]) / 4.0


def weyl2_fef(t) -> float:
    """FEF of the two-qubit Weyl state, whose correlation tensor is diag(t)."""
    t1, t2, t3 = (float(x) for x in t)
    return tensor_fef((t1, t2, t3), t1 * t2 * t3)


# ---------------------------------------------------------------------------
# closed forms


def isotropic_fef(d: int, F: float) -> float:
    """FEF of the isotropic state with singlet weight F.

    The weight F is the FEF when F >= 1/d^2. Below that, a traceless local
    unitary moves all of the overlap onto the noise component.
    """
    return max(F, (1.0 - F) / (d * d - 1))


def werner_d_fef(d: int, x: float) -> float:
    """Piecewise FEF of the d-dimensional Werner state in its x parameter."""
    if x >= 1.0 / d:
        return (1.0 + x) / (d * (d + 1))
    if d % 2 == 0:
        return (1.0 - x) / (d * (d - 1))
    return (d * d - d * d * x + d * x + d - 2) / (d * d * (d * d - 1))


def fef_closed(spec: StateSpec) -> FefResult:
    f = spec.family
    if f == "isotropic":
        value = isotropic_fef(spec.d, spec.params[0])
    elif f == "werner_d":
        value = werner_d_fef(spec.d, spec.params[0])
    elif f == "gen_bell":
        probs = np.asarray(spec.params, dtype=float)
        value = float(probs[int(np.argmax(probs))])
    elif f in ("werner2", "weyl2"):
        return FefResult(fef_corr_tensor(make_state(spec)).value, "closed")
    else:
        raise FefError(f"no closed-form FEF for family {f!r}")
    return FefResult(float(value), "closed")


# ---------------------------------------------------------------------------
# numerical maximisation


def fef_overlap(rho: DensityMatrix, u) -> float:
    """<psi+| (U x I) rho (U^dagger x I) |psi+> for one unitary U."""
    d = _local_dim(rho)
    u = linalg.as_matrix(u)
    if u.shape != (d, d):
        raise FefError(f"unitary must be {d}x{d}, got {u.shape}")
    if linalg.unitarity_residual(u) > UNITARY_TOL:
        raise FefError("u is not unitary within 1e-8")
    # (U^dagger x I)|psi+> is the row-major vectorisation of U^dagger over sqrt(d)
    phi = dagger(u).reshape(-1) / math.sqrt(d)
    return float(np.real(np.conj(phi) @ rho.mat @ phi))


@dataclass(frozen=True)
class _Generator:
    lam: np.ndarray
    vecs: np.ndarray
    # positive frequencies lambda_j - lambda_k and the 0/1 matrix grouping
    # flattened (j, k) entries by frequency; row 0 is the zero frequency
    freqs: np.ndarray
    groups: np.ndarray
    grid_cos: np.ndarray
    grid_sin: np.ndarray


@lru_cache(maxsize=None)
def _generators(d: int) -> tuple[_Generator, ...]:
    """Spectral data for each traceless generator.

    The identity generator only contributes a global phase to U and is skipped.
    """
    out = []
    for g in gell_mann_basis(d):
        lam, v = linalg.hermitian_eig(g, vectors=True)
        diff = (lam[:, None] - lam[None, :]).reshape(-1)
        freqs: list[float] = []
        labels = np.empty(diff.size, dtype=int)
        for i, w in enumerate(diff):
            if w < -1e-12:
                labels[i] = -1
                continue
            if abs(w) <= 1e-12:
                labels[i] = 0
                continue
            for k, f in enumerate(freqs):
                if abs(f - w) <= 1e-12:
                    labels[i] = k + 1
                    break
            else:
                freqs.append(float(w))
                labels[i] = len(freqs)
        groups = np.zeros((len(freqs) + 1, diff.size))
        for i, lab in enumerate(labels):
            if lab >= 0:
                groups[lab, i] = 1.0
        fr = np.array(freqs)
        out.append(
            _Generator(lam, v, fr, groups, np.cos(np.outer(fr, _GRID)), np.sin(np.outer(fr, _GRID)))
        )
    return tuple(out)


def _start_unitary(d: int, seed: int, restart: int) -> np.ndarray:
    """exp(iH) with H drawn from a counter-based stream keyed by the seed."""
    bitgen = np.random.Philox(key=seed).jumped(restart)
    coeffs = np.random.Generator(bitgen).uniform(-math.pi, math.pi, size=d * d)
    h = coeffs[0] * np.eye(d, dtype=np.complex128)
    for c, g in zip(coeffs[1:], gell_mann_basis(d)):
        h = h + c * g
    return linalg.unitary_exp(h)


def _golden_max(f, lo: float, hi: float, xtol: float = GOLDEN_XTOL) -> tuple[float, float]:
    a, b = lo, hi
    x1 = b - _INV_PHI * (b - a)
    x2 = a + _INV_PHI * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > xtol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INV_PHI * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INV_PHI * (b - a)
            f1 = f(x1)
    return (x1, f1) if f1 >= f2 else (x2, f2)


def _newton_max(terms, theta: float, lo: float, hi: float) -> float | None:
    """Newton on f' inside [lo, hi]; None when the curvature is not negative."""
    for _ in range(NEWTON_MAX_STEPS):
        g = h = 0.0
        for w, r, i in terms:
            c, sn = math.cos(theta * w), math.sin(theta * w)
            g -= w * (r * sn + i * c)
            h -= w * w * (r * c - i * sn)
        if h >= 0.0:
            return None
        nxt = min(max(theta - g / h, lo), hi)
        if abs(nxt - theta) < NEWTON_XTOL:
            return nxt
        theta = nxt
    return theta


def _line_max(f, terms, theta0: float, f0: float) -> tuple[float, float]:
    """Refine the best grid point of f to a local maximum within one grid step."""
    step = float(_GRID[1] - _GRID[0])
    lo, hi = theta0 - step, theta0 + step
    theta = _newton_max(terms, theta0, lo, hi)
    if theta is None:
        theta, best = _golden_max(f, lo, hi)
    else:
        best = f(theta)
    if f0 > best:
        return theta0, f0
    return theta, best


def _ascend(mat: np.ndarray, d: int, u: np.ndarray, max_iters: int, tol: float):
    """Cyclic coordinate ascent over left moves U -> exp(i theta g_k) U.

    Along one coordinate the overlap is Re(c^dagger M c) with
    c_j = exp(-i theta lambda_j), so each trial costs O(d^2).
    """
    gens = _generators(d)
    root_d = math.sqrt(d)
    phi = dagger(u).reshape(-1) / root_d
    value = float(np.real(np.conj(phi) @ mat @ phi))
    converged = False
    for _ in range(max_iters):
        start = value
        for gen in gens:
            lam, v = gen.lam, gen.vecs
            a = dagger(u) @ v
            w = (a[:, None, :] * dagger(v).T[None, :, :]).reshape(d * d, d) / root_d
            m = dagger(w) @ mat @ w
            # f(theta) = z0 + 2 sum_k Re(z_k exp(i theta w_k))
            z = gen.groups @ m.reshape(-1)
            z0 = float(z[0].real)
            zr = 2.0 * z[1:].real
            zi = 2.0 * z[1:].imag
            terms = list(zip(gen.freqs.tolist(), zr.tolist(), zi.tolist()))

            def f(theta, terms=terms, z0=z0):
                return z0 + sum(r * math.cos(theta * w) - i * math.sin(theta * w) for w, r, i in terms)

            vals = z0 + zr @ gen.grid_cos - zi @ gen.grid_sin
            k = int(np.argmax(vals))
            theta, best = _line_max(f, terms, float(_GRID[k]), float(vals[k]))
            if best > value:
                rot = (v * np.exp(1j * theta * lam)) @ dagger(v)
                u = rot @ u
                value = best
        if value - start < tol:
            converged = True
            break
    return u, value, converged


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("QFEF_THREADS", "1")))
    except ValueError:
        return 1


def fef_optimize(
    rho: DensityMatrix,
    restarts: int = DEFAULT_RESTARTS,
    max_iters: int = DEFAULT_MAX_ITERS,
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
) -> FefResult:
    """Best overlap over random restarts of a coordinate ascent on U(d).

    The value is attained by an explicit unitary, so it is a lower bound on
    the FEF. ``converged`` reports whether the winning restart's last cycle
    improved by less than ``tol``.
    """
    d = _local_dim(rho)
    if restarts < 1:
        raise FefError(f"restarts must be >= 1, got {restarts}")
    mat = rho.mat

    def run(r: int):
        u, _, conv = _ascend(mat, d, _start_unitary(d, seed, r), max_iters, tol)
        return fef_overlap(rho, u), conv

    workers = min(_threads(), restarts)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, range(restarts)))
    else:
        results = [run(r) for r in range(restarts)]
    # first maximum wins so the result does not depend on scheduling
    best = max(range(restarts), key=lambda r: (results[r][0], -r))
    value, conv = results[best]
    return FefResult(value, "optimized", restarts, conv)
