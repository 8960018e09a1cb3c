"""Bipartite state families and the two-qubit Bloch-Fano decomposition."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .linalg import PSD_TOL, dagger, gell_mann_basis, kron, partial_trace, weyl_operator

FAMILIES = (
    "werner2",
    "weyl2",
    "weyl_d",
    "isotropic",
    "werner_d",
    "rank_deficient",
    "gen_bell",
    "non_weyl",
    "noisy_schmidt",
)

# families living on two qubits regardless of the d field
QUBIT_FAMILIES = ("werner2", "weyl2", "non_weyl")

# families whose marginals are both I/d
WEYL_FAMILIES = ("werner2", "weyl2", "weyl_d", "isotropic", "werner_d", "gen_bell")

SCHMIDT_RENORM_TOL = 1e-9


class StateError(ValueError):
    """Invalid state parameters or an operator that is not a density matrix."""


@dataclass(frozen=True)
class DensityMatrix:
    mat: np.ndarray
    dA: int
    dB: int

    def __post_init__(self):
        m = linalg.as_matrix(self.mat)
        n = self.dA * self.dB
        if m.shape != (n, n):
            raise StateError(f"matrix shape {m.shape} does not match dims ({self.dA}, {self.dB})")
        if not linalg.is_hermitian(m, 1e-10):
            raise StateError("density matrix is not Hermitian within 1e-10")
        tr = np.trace(m).real
        if abs(tr - 1.0) > 1e-10:
            raise StateError(f"density matrix has trace {tr!r}")
        m = 0.5 * (m + dagger(m))
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)
        w = linalg.hermitian_eig(m)
        if w[0] < -PSD_TOL:
            raise StateError(f"density matrix has negative eigenvalue {w[0]:.6g}")
        object.__setattr__(self, "_spectrum", w)

    @property
    def dims(self) -> tuple[int, int]:
        return (self.dA, self.dB)

    def spectrum(self) -> np.ndarray:
        return self._spectrum.copy()

    def reduced(self, keep: str) -> np.ndarray:
        return partial_trace(self.mat, self.dims, keep)


@dataclass(frozen=True)
class StateSpec:
    """A state family plus its parameters; see ``param_names`` for the layout."""

    family: str
    params: tuple[float, ...]
    d: int = 2

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise StateError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        object.__setattr__(self, "params", tuple(float(x) for x in self.params))
        d = 2 if self.family in QUBIT_FAMILIES else int(self.d)
        if d < 2:
            raise StateError(f"dimension must be >= 2, got {self.d}")
        object.__setattr__(self, "d", d)

    def to_text(self) -> str:
        return f"{self.family}:d={self.d}:params={','.join(repr(x) for x in self.params)}"

    @classmethod
    def parse(cls, text: str) -> "StateSpec":
        """Parse ``family:d=<d>:params=<comma-list>``; the ``d`` field is optional."""
        parts = text.strip().split(":")
        family, d, params = parts[0], 2, None
        for part in parts[1:]:
            key, sep, value = part.partition("=")
            if not sep:
                raise StateError(f"malformed field {part!r} in state spec {text!r}")
            if key == "d":
                d = int(value)
            elif key == "params":
                params = parse_params(value)
            else:
                raise StateError(f"unknown field {key!r} in state spec {text!r}")
        if params is None:
            raise StateError(f"state spec {text!r} has no params field")
        return cls(family, params, d)


def parse_params(text: str) -> tuple[float, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError as exc:
        raise StateError(f"could not parse parameter list {text!r}") from exc


def param_names(family: str, d: int = 2) -> list[str]:
    """Names of the entries of ``StateSpec.params`` for a family."""
    names = {
        "werner2": ["p"],
        "weyl2": ["t1", "t2", "t3"],
        "isotropic": ["F"],
        "werner_d": ["x"],
        "rank_deficient": ["p"],
        "non_weyl": ["x", "p"],
    }
    if family in names:
        return names[family]
    if family == "weyl_d":
        return [f"w{i}" for i in range(1, d * d)]
    if family == "gen_bell":
        return [f"p{i}" for i in range(d * d)]
    if family == "noisy_schmidt":
        return [f"lambda{i}" for i in range(d)] + ["p"]
    raise StateError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# elementary vectors and projectors


def max_entangled(d: int) -> np.ndarray:
    """|psi_d^+> = sum_i |ii> / sqrt(d)."""
    psi = np.zeros(d * d, dtype=np.complex128)
    psi[:: d + 1] = 1.0 / math.sqrt(d)
    return psi


def projector(psi: np.ndarray) -> np.ndarray:
    return np.outer(psi, np.conj(psi))


def swap_operator(d: int) -> np.ndarray:
    v = np.zeros((d * d, d * d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            v[j * d + i, i * d + j] = 1.0
    return v


def bell_projectors(d: int) -> list[np.ndarray]:
    """P_i = (I x U_mn)|psi+><psi+|(I x U_mn^dagger) with i = m * d + n."""
    psi = max_entangled(d)
    eye = np.eye(d)
    out = []
    for m in range(d):
        for n in range(d):
            out.append(projector(kron(eye, weyl_operator(d, m, n)) @ psi))
    return out


# ---------------------------------------------------------------------------
# constructors


def _check_unit(name: str, value: float, lo: float = 0.0, hi: float = 1.0, open_lo: bool = False):
    bad = value < lo or value > hi or (open_lo and value <= lo) or not math.isfinite(value)
    if bad:
        interval = f"{'(' if open_lo else '['}{lo:g}, {hi:g}]"
        raise StateError(f"{name}={value!r} outside {interval}")


def _expect_len(spec: StateSpec, n: int):
    if len(spec.params) != n:
        raise StateError(f"{spec.family} expects {n} parameter(s), got {len(spec.params)}")


def werner2(p: float) -> np.ndarray:
    _check_unit("p", p)
    sx, sy, sz = linalg.pauli()
    corr = kron(sx, sx) + kron(sy, sy) + kron(sz, sz)
    return (np.eye(4) - p * corr) / 4.0


def weyl2_eigenvalues(t) -> dict[str, float]:
    """Closed-form spectrum of the two-qubit Weyl state, keyed by sign pattern."""
    t1, t2, t3 = t
    return {
        "(1-t1-t2-t3)/4": (1 - t1 - t2 - t3) / 4,
        "(1-t1+t2+t3)/4": (1 - t1 + t2 + t3) / 4,
        "(1+t1-t2+t3)/4": (1 + t1 - t2 + t3) / 4,
        "(1+t1+t2-t3)/4": (1 + t1 + t2 - t3) / 4,
    }


def weyl2(t) -> np.ndarray:
    t = tuple(float(x) for x in t)
    if len(t) != 3:
        raise StateError(f"weyl2 expects 3 coefficients, got {len(t)}")
    paulis = linalg.pauli()
    mat = np.eye(4, dtype=np.complex128)
    for ti, s in zip(t, paulis):
        mat = mat + ti * kron(s, s)
    mat = mat / 4.0
    w = linalg.hermitian_eig(mat)
    if w[0] < -PSD_TOL:
        label, value = min(weyl2_eigenvalues(t).items(), key=lambda kv: kv[1])
        raise StateError(f"weyl2{t} is not positive: eigenvalue {label} = {value:.6g} < 0")
    return mat


def weyl_d(d: int, w) -> np.ndarray:
    w = tuple(float(x) for x in w)
    if len(w) != d * d - 1:
        raise StateError(f"weyl_d with d={d} expects {d * d - 1} coefficients, got {len(w)}")
    mat = np.eye(d * d, dtype=np.complex128)
    for wi, g in zip(w, gell_mann_basis(d)):
        if wi:
            mat = mat + wi * kron(g, g)
    mat = mat / (d * d)
    ev = linalg.hermitian_eig(mat)
    if ev[0] < -PSD_TOL:
        raise StateError(f"weyl_d coefficients give a negative eigenvalue {ev[0]:.6g}")
    return mat


def isotropic(d: int, F: float) -> np.ndarray:
    _check_unit("F", F)
    p = projector(max_entangled(d))
    return F * p + (1.0 - F) * (np.eye(d * d) - p) / (d * d - 1)


def werner_d(d: int, x: float) -> np.ndarray:
    _check_unit("x", x, -1.0, 1.0)
    denom = d**3 - d
    return (d - x) / denom * np.eye(d * d, dtype=np.complex128) + (d * x - 1) / denom * swap_operator(d)


def rank_deficient(d: int, p: float) -> np.ndarray:
    _check_unit("p", p, open_lo=True)
    ket01 = np.zeros(d * d, dtype=np.complex128)
    ket01[1] = 1.0
    return p * projector(max_entangled(d)) + (1.0 - p) * projector(ket01)


def gen_bell(d: int, probs) -> np.ndarray:
    probs = np.asarray(probs, dtype=float)
    if probs.shape != (d * d,):
        raise StateError(f"gen_bell with d={d} expects {d * d} probabilities, got {probs.size}")
    if np.any(probs < 0) or abs(probs.sum() - 1.0) > 1e-10:
        raise StateError("gen_bell probabilities must be non-negative and sum to 1")
    mat = np.zeros((d * d, d * d), dtype=np.complex128)
    for p, proj in zip(probs, bell_projectors(d)):
        mat += p * proj
    return mat


def non_weyl(x: float, p: float) -> np.ndarray:
    if not (0.0 < x <= math.pi / 4):
        raise StateError(f"x={x!r} outside (0, pi/4]")
    _check_unit("p", p)
    psi = np.zeros(4, dtype=np.complex128)
    psi[0] = math.cos(x)
    psi[3] = math.sin(x)
    pure = projector(psi)
    rho_a = partial_trace(pure, (2, 2), "A")
    return p * pure + (1.0 - p) * kron(rho_a, np.eye(2) / 2.0)


def normalize_schmidt(lambdas) -> np.ndarray:
    lam = np.asarray(lambdas, dtype=float)
    if lam.ndim != 1 or lam.size < 2:
        raise StateError("need at least two Schmidt coefficients")
    if np.any(lam <= 0):
        raise StateError("Schmidt coefficients must be strictly positive")
    drift = abs(float(np.sum(lam**2)) - 1.0)
    if drift > SCHMIDT_RENORM_TOL:
        raise StateError(f"Schmidt coefficients are not normalised (|sum lambda^2 - 1| = {drift:.3g})")
    return lam / math.sqrt(float(np.sum(lam**2)))


def noisy_schmidt(lambdas, p: float) -> np.ndarray:
    lam = normalize_schmidt(lambdas)
    _check_unit("p", p)
    d = lam.size
    psi = np.zeros(d * d, dtype=np.complex128)
    psi[:: d + 1] = lam
    return p * projector(psi) + (1.0 - p) * np.eye(d * d) / (d * d)


def make_state(spec: StateSpec) -> DensityMatrix:
    f, d, ps = spec.family, spec.d, spec.params
    if f == "werner2":
        _expect_len(spec, 1)
        mat = werner2(ps[0])
    elif f == "weyl2":
        _expect_len(spec, 3)
        mat = weyl2(ps)
    elif f == "weyl_d":
        mat = weyl_d(d, ps)
    elif f == "isotropic":
        _expect_len(spec, 1)
        mat = isotropic(d, ps[0])
    elif f == "werner_d":
        _expect_len(spec, 1)
        mat = werner_d(d, ps[0])
    elif f == "rank_deficient":
        _expect_len(spec, 1)
        mat = rank_deficient(d, ps[0])
    elif f == "gen_bell":
        mat = gen_bell(d, ps)
    elif f == "non_weyl":
        _expect_len(spec, 2)
        mat = non_weyl(*ps)
    else:
        _expect_len(spec, d + 1)
        mat = noisy_schmidt(ps[:-1], ps[-1])
    return DensityMatrix(mat, d, d)


def rank_deficient_eigs(d: int, p: float) -> np.ndarray:
    """Non-zero eigenvalues of the rank-two state, ascending.

    |01> is orthogonal to the support of |psi_d^+>, so the spectrum is just
    {p, 1 - p}.
    """
    if d < 2:
        raise StateError(f"dimension must be >= 2, got {d}")
    _check_unit("p", p, open_lo=True)
    if p == 1.0:
        return np.array([1.0])
    return np.sort(np.array([1.0 - p, p]))


@dataclass(frozen=True)
class BlochFano:
    a: np.ndarray
    b: np.ndarray
    T: np.ndarray = field(repr=True)

    def reconstruct(self) -> np.ndarray:
        paulis = linalg.pauli()
        eye = np.eye(2)
        mat = np.eye(4, dtype=np.complex128)
        for i, s in enumerate(paulis):
            mat = mat + self.a[i] * kron(s, eye) + self.b[i] * kron(eye, s)
            for j, s2 in enumerate(paulis):
                mat = mat + self.T[i, j] * kron(s, s2)
        return mat / 4.0


def bloch_fano(rho) -> BlochFano:
    """Local Bloch vectors and correlation tensor of a two-qubit state."""
    if isinstance(rho, DensityMatrix):
        if rho.dims != (2, 2):
            raise StateError(f"Bloch-Fano decomposition needs a two-qubit state, got dims {rho.dims}")
        mat = rho.mat
    else:
        mat = linalg.as_matrix(rho)
        if mat.shape != (4, 4):
            raise StateError(f"Bloch-Fano decomposition needs a 4x4 matrix, got {mat.shape}")
    paulis = linalg.pauli()
    eye = np.eye(2)
    a = np.array([np.trace(mat @ kron(s, eye)).real for s in paulis])
    b = np.array([np.trace(mat @ kron(eye, s)).real for s in paulis])
    t = np.array([[np.trace(mat @ kron(si, sj)).real for sj in paulis] for si in paulis])
    return BlochFano(a, b, t)
