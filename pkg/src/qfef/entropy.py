"""Von Neumann, Renyi and Tsallis entropies and their B-conditioned variants."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .linalg import PSD_TOL
from .states import DensityMatrix, StateSpec, StateError, normalize_schmidt

KINDS = ("vonNeumann", "renyi", "tsallis")


class EntropyError(ValueError):
    pass


@dataclass(frozen=True)
class EntropyKind:
    kind: str = "vonNeumann"
    alpha: float = 1.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise EntropyError(f"unknown entropy kind {self.kind!r}")
        if self.kind != "vonNeumann":
            a = float(self.alpha)
            if not math.isfinite(a) or a <= 0 or a == 1.0:
                raise EntropyError(f"alpha must be > 0 and != 1, got {self.alpha!r}")

    @classmethod
    def von_neumann(cls) -> "EntropyKind":
        return cls("vonNeumann")

    @classmethod
    def renyi(cls, alpha: float) -> "EntropyKind":
        return cls("renyi", alpha)

    @classmethod
    def tsallis(cls, alpha: float) -> "EntropyKind":
        return cls("tsallis", alpha)


VN = EntropyKind.von_neumann()


def clamp_spectrum(w) -> np.ndarray:
    """Zero out round-off eigenvalues; anything below -PSD_TOL is an error.

    Values under the numerical-rank floor n * eps are round-off of exact zeros.
    They are dropped too, since w**alpha with alpha < 1 would amplify them.
    """
    w = np.asarray(w, dtype=float)
    if w.size and w.min() < -PSD_TOL:
        raise StateError(f"spectrum has negative eigenvalue {w.min():.6g}")
    floor = w.size * np.finfo(float).eps
    return np.where(w < floor, 0.0, w)


def xlog2x(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0
    out[pos] = x[pos] * np.log2(x[pos])
    return out


def power_trace(w, alpha: float) -> float:
    w = clamp_spectrum(w)
    w = w[w > 0]
    return float(np.sum(w**alpha))


def spectrum_entropy(w, kind: EntropyKind = VN) -> float:
    w = clamp_spectrum(w)
    if kind.kind == "vonNeumann":
        return float(-np.sum(xlog2x(w)))
    tr = power_trace(w, kind.alpha)
    if kind.kind == "renyi":
        return math.log2(tr) / (1.0 - kind.alpha)
    return (tr - 1.0) / (1.0 - kind.alpha)


def _matrix(rho) -> np.ndarray:
    return rho.mat if isinstance(rho, DensityMatrix) else linalg.as_matrix(rho)


def _spectrum(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        return rho.spectrum()
    return linalg.hermitian_eig(_matrix(rho))


def entropy(rho, kind: EntropyKind = VN) -> float:
    """Entropy in bits of a density matrix (``DensityMatrix`` or Hermitian array)."""
    return spectrum_entropy(_spectrum(rho), kind)


def cond_entropy(rho: DensityMatrix, kind: EntropyKind = VN) -> float:
    """Entropy of AB conditioned on B.

    The Tsallis variant uses the quotient form
    ``(Tr rho_B^a - Tr rho_AB^a) / ((a - 1) Tr rho_B^a)``.
    """
    w_ab = _spectrum(rho)
    w_b = linalg.hermitian_eig(rho.reduced("B"))
    return cond_entropy_from_spectra(w_ab, w_b, kind)


def cond_entropy_from_spectra(w_ab, w_b, kind: EntropyKind = VN) -> float:
    if kind.kind == "tsallis":
        a = kind.alpha
        tb = power_trace(w_b, a)
        tab = power_trace(w_ab, a)
        return (tb - tab) / ((a - 1.0) * tb)
    return spectrum_entropy(w_ab, kind) - spectrum_entropy(w_b, kind)


# ---------------------------------------------------------------------------
# closed forms


def _h2(p: float) -> float:
    return float(-xlog2x(p) - xlog2x(1.0 - p))


def _werner2_vn(p: float) -> float:
    a = (1.0 - p) / 4.0
    b = (1.0 + 3.0 * p) / 4.0
    return float(-3.0 * xlog2x(a) - xlog2x(b) - 1.0)


def _werner2_renyi(p: float, alpha: float) -> float:
    a = (1.0 - p) / 4.0
    b = (1.0 + 3.0 * p) / 4.0
    num = b**alpha + 3.0 * a**alpha
    return math.log2(num / (2.0 * 0.5**alpha)) / (1.0 - alpha)


def _weyl2_r2(t) -> float:
    return 1.0 - math.log2(1.0 + sum(x * x for x in t))


def _isotropic_vn(d: int, F: float) -> float:
    rest = (1.0 - F) / (d * d - 1)
    # (1-F) log((1-F)/(d^2-1)) written as (d^2-1) * rest * log(rest)
    return float(-xlog2x(F) - (d * d - 1) * xlog2x(rest) - math.log2(d))


def _isotropic_r2(d: int, F: float) -> float:
    return math.log2((d * d - 1) / (d * (d * d - 1) * F * F + d * (1.0 - F) ** 2))


def werner_d_eigs(d: int, x: float) -> tuple[float, float]:
    """Symmetric and antisymmetric eigenvalues; multiplicities (d^2+d)/2, (d^2-d)/2."""
    return (1.0 + x) / (d * d + d), (1.0 - x) / (d * d - d)


def _werner_d_vn(d: int, x: float) -> float:
    s, a = werner_d_eigs(d, x)
    # (1+x)/2 log s == (d^2+d)/2 * s log s
    return float(-(d * d + d) / 2 * xlog2x(s) - (d * d - d) / 2 * xlog2x(a) - math.log2(d))


def _werner_d_renyi(d: int, x: float, alpha: float) -> float:
    s, a = werner_d_eigs(d, x)
    inner = (d * d + d) / 2 * s**alpha + (d * d - d) / 2 * a**alpha
    return math.log2(d ** (alpha - 1.0) * inner) / (1.0 - alpha)


def _rank_deficient_vn(d: int, p: float) -> float:
    q = (d - d * p + p) / d
    return float((d - 1) * xlog2x(p / d) + xlog2x(q) + _h2(p))


def _rank_deficient_r2(d: int, p: float) -> float:
    num = (d - 1) * p * p + (d - d * p + p) ** 2
    return math.log2(num / (d * d * (p * p + (1.0 - p) ** 2)))


def _gen_bell_vn(d: int, probs) -> float:
    return float(-np.sum(xlog2x(probs)) - math.log2(d))


def _gen_bell_renyi(d: int, probs, alpha: float) -> float:
    probs = np.asarray(probs, dtype=float)
    s = float(np.sum(probs[probs > 0] ** alpha))
    return math.log2(d ** (alpha - 1.0) * s) / (1.0 - alpha)


CLOSED_FORMS = {
    ("werner2", "vonNeumann"),
    ("werner2", "renyi"),
    ("weyl2", "renyi2"),
    ("isotropic", "vonNeumann"),
    ("isotropic", "renyi2"),
    ("werner_d", "vonNeumann"),
    ("werner_d", "renyi"),
    ("rank_deficient", "vonNeumann"),
    ("rank_deficient", "renyi2"),
    ("gen_bell", "vonNeumann"),
    ("gen_bell", "renyi"),
}


def has_closed_form(family: str, kind: EntropyKind) -> bool:
    if kind.kind == "vonNeumann":
        return (family, "vonNeumann") in CLOSED_FORMS
    if kind.kind != "renyi":
        return False
    if (family, "renyi") in CLOSED_FORMS:
        return True
    return kind.alpha == 2.0 and (family, "renyi2") in CLOSED_FORMS


def cond_entropy_closed(spec: StateSpec, kind: EntropyKind = VN) -> float:
    """Closed-form conditional entropy for the (family, kind) pairs that have one.

    Supported: von Neumann for werner2, isotropic, werner_d, rank_deficient and
    gen_bell; Renyi for any alpha on werner2, werner_d and gen_bell; Renyi-2
    only on weyl2, isotropic and rank_deficient.
    """
    if not has_closed_form(spec.family, kind):
        label = kind.kind if kind.kind == "vonNeumann" else f"{kind.kind}(alpha={kind.alpha:g})"
        raise EntropyError(f"no closed form for family {spec.family!r} with {label}")
    f, d, ps = spec.family, spec.d, spec.params
    vn = kind.kind == "vonNeumann"
    if f == "werner2":
        return _werner2_vn(ps[0]) if vn else _werner2_renyi(ps[0], kind.alpha)
    if f == "weyl2":
        return _weyl2_r2(ps)
    if f == "isotropic":
        return _isotropic_vn(d, ps[0]) if vn else _isotropic_r2(d, ps[0])
    if f == "werner_d":
        return _werner_d_vn(d, ps[0]) if vn else _werner_d_renyi(d, ps[0], kind.alpha)
    if f == "rank_deficient":
        return _rank_deficient_vn(d, ps[0]) if vn else _rank_deficient_r2(d, ps[0])
    return _gen_bell_vn(d, ps) if vn else _gen_bell_renyi(d, ps, kind.alpha)


# ---------------------------------------------------------------------------
# analytic spectra used for threshold searches


def noisy_schmidt_spectra(lambdas, p: float) -> tuple[np.ndarray, np.ndarray]:
    """Spectra of the noisy pure state and of its B marginal, without diagonalising."""
    lam = normalize_schmidt(lambdas)
    d = lam.size
    noise = (1.0 - p) / (d * d)
    w_ab = np.full(d * d, noise)
    w_ab[0] += p
    w_b = p * lam**2 + (1.0 - p) / d
    return w_ab, w_b
