"""k-copy steerability and nonlocality thresholds and their entropy comparisons."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from . import entropy as ent
from .bounds import (
    BoundReport,
    check_weyl2,
    find_threshold,
    isotropic_cvne_threshold,
    thm7_threshold,
    weyl2_cr2e,
)
from .entropy import EntropyKind
from .fef import weyl2_fef
from .linalg import partial_trace
from .states import StateError, non_weyl, normalize_schmidt

HARMONIC_BUDGET = 10**7
KMAX_LIMIT = 20


class MulticopyError(ValueError):
    pass


@lru_cache(maxsize=64)
def harmonic(n: int) -> float:
    """H_n = sum_{j<=n} 1/j with compensated summation."""
    if n < 0:
        raise MulticopyError(f"harmonic number needs n >= 0, got {n}")
    if n > HARMONIC_BUDGET:
        raise MulticopyError(f"harmonic sum of {n} terms exceeds the budget of {HARMONIC_BUDGET}")
    if n == 0:
        return 0.0
    return math.fsum(1.0 / np.arange(1, n + 1, dtype=float))


def steer_rhs(d: int, k: int) -> float:
    """Right side of F^k > [(1 + d^k)(H_{d^k} - 1) - d^k] / d^{2k}."""
    if d < 2 or k < 1:
        raise MulticopyError(f"need d >= 2 and k >= 1, got d={d}, k={k}")
    n = d**k
    if n > HARMONIC_BUDGET:
        raise MulticopyError(f"d^k = {n} exceeds the harmonic-sum budget of {HARMONIC_BUDGET}")
    return ((1 + n) * (harmonic(n) - 1.0) - n) / float(n) ** 2


class SteerThreshold(NamedTuple):
    """``value`` is the k-th root of ``rhs`` when informative, else ``rhs`` itself."""

    value: float
    rhs: float
    informative: bool


def kcopy_steer_threshold(d: int, k: int) -> SteerThreshold:
    rhs = steer_rhs(d, k)
    if rhs <= 0.0:
        return SteerThreshold(rhs, rhs, False)
    return SteerThreshold(rhs ** (1.0 / k), rhs, True)


def min_k_steerable(d: int, F: float, kmax: int = 10) -> int | None:
    """Smallest k <= kmax whose positive steering bound F^k exceeds."""
    if not 0.0 <= F <= 1.0:
        raise MulticopyError(f"F={F!r} outside [0, 1]")
    if not 1 <= kmax <= KMAX_LIMIT:
        raise MulticopyError(f"kmax must lie in [1, {KMAX_LIMIT}], got {kmax}")
    for k in range(1, kmax + 1):
        if d**k > HARMONIC_BUDGET:
            break
        rhs = steer_rhs(d, k)
        if rhs > 0.0 and F**k > rhs:
            return k
    return None


@dataclass(frozen=True)
class KCopyVerdict:
    """Does negative conditional entropy of the isotropic state imply k-copy steering?

    ``implication_holds`` when the entropy threshold in F is at least the
    steering threshold, so every F with negative entropy is steerable.
    """

    d: int
    k: int
    threshold_F: float
    entropy_threshold_F: float
    implication_holds: bool
    informative: bool = True
    entropy: str = "cvne"

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "k": self.k,
            "threshold_F": self.threshold_F,
            "entropy_threshold_F": self.entropy_threshold_F,
            "implication_holds": self.implication_holds,
            "informative": self.informative,
            "entropy": self.entropy,
        }


def isotropic_kcopy_verdict(d: int, k: int, which: str = "cvne") -> KCopyVerdict:
    if which == "cvne":
        ent_thr = isotropic_cvne_threshold(d)
    elif which == "cr2e":
        ent_thr = thm7_threshold(d)
    else:
        raise MulticopyError(f"unknown entropy {which!r}; expected 'cvne' or 'cr2e'")
    st = kcopy_steer_threshold(d, k)
    holds = st.informative and ent_thr >= st.value
    return KCopyVerdict(d, k, st.value, ent_thr, holds, st.informative, which)


def weyl2_kcopy_nonlocal(t) -> BoundReport:
    """CR2E < 0 => FEF > 1/2, the step that makes a two-qubit Weyl state k-copy nonlocal."""
    t = check_weyl2(t)
    cr2e = weyl2_cr2e(t)
    fef = weyl2_fef(t)
    return BoundReport("obs_weyl2_kcopy", fef, 0.5, cr2e < 0, fef > 0.5, note=f"cr2e={cr2e!r}")


# ---------------------------------------------------------------------------
# non-Weyl two-qubit state


class NonWeylThresholds(NamedTuple):
    p_fef: float
    p_cr2e: float
    x_star: float


X_STAR = 0.5 * math.asin((math.sqrt(3.0) - 1.0) / 2.0)


def _check_angle(x: float):
    if not 0.0 < x <= math.pi / 4:
        raise MulticopyError(f"x={x!r} outside (0, pi/4]")


def nonweyl_thresholds(x: float) -> NonWeylThresholds:
    _check_angle(x)
    return NonWeylThresholds(1.0 / (1.0 + 2.0 * math.sin(2.0 * x)), 1.0 / math.sqrt(3.0), X_STAR)


def nonweyl_cr2e(x: float, p: float) -> float:
    """CR2E of the non-Weyl state from purities, Tr rho^2 = sum |rho_ij|^2."""
    rho = non_weyl(x, p)
    rho_b = partial_trace(rho, (2, 2), "B")
    return math.log2(float(np.sum(np.abs(rho_b) ** 2)) / float(np.sum(np.abs(rho) ** 2)))


def nonweyl_cr2e_closed(x: float, p: float) -> float:
    """Same quantity from closed-form purities.

    With u = cos^4 x + sin^4 x:
    Tr rho^2   = p^2 + p(1-p)u + (1-p)^2 u / 2,
    Tr rho_B^2 = p^2 u + p(1-p) + (1-p)^2 / 2,
    and their difference (1-u)(3p^2 - 1)/2 vanishes at p = 1/sqrt(3) for every x.
    """
    _check_angle(x)
    c2, s2 = math.cos(x) ** 2, math.sin(x) ** 2
    u = c2 * c2 + s2 * s2
    q = 1.0 - p
    tr_ab = p * p + p * q * u + q * q * u / 2.0
    tr_b = p * p * u + p * q + q * q / 2.0
    return math.log2(tr_b / tr_ab)


def nonweyl_implication(x: float, p: float) -> BoundReport:
    """For x above x_star: CR2E < 0 => p >= 1/(1 + 2 sin 2x)."""
    th = nonweyl_thresholds(x)
    cr2e = nonweyl_cr2e_closed(x, p)
    return BoundReport("nonweyl_kcopy", p, th.p_fef, x > th.x_star and cr2e < 0, p >= th.p_fef, note=f"cr2e={cr2e!r}")


# ---------------------------------------------------------------------------
# noisy pure state


class NoisyThresholds(NamedTuple):
    p_nonlocal: float
    p_cr2e: float
    p_cvne: float


def noisy_cond_entropy(lambdas, p: float, kind: EntropyKind = ent.VN) -> float:
    w_ab, w_b = ent.noisy_schmidt_spectra(lambdas, p)
    return ent.cond_entropy_from_spectra(w_ab, w_b, kind)


def noisy_p_nonlocal(lam: np.ndarray) -> float:
    d = lam.size
    return (d - 1) / (d * float(np.sum(lam)) ** 2 - 1)


def noisy_p_cr2e(lam: np.ndarray) -> float:
    d = lam.size
    return math.sqrt(d - 1) / math.sqrt(d - 1 + d * d * (1.0 - float(np.sum(lam**4))))


def noisy_thresholds(lambdas, tol: float = 1e-12) -> NoisyThresholds:
    try:
        lam = normalize_schmidt(lambdas)
    except StateError as exc:
        raise MulticopyError(str(exc)) from exc
    p_cvne = find_threshold(lambda p: noisy_cond_entropy(lam, p), 0.0, 1.0, tol)
    return NoisyThresholds(noisy_p_nonlocal(lam), noisy_p_cr2e(lam), p_cvne)


def _xlog2x(v: float) -> float:
    return v * math.log2(v) if v > 0.0 else 0.0


def noisy_cvne_cr2e(lam2, p: float) -> tuple[float, float]:
    """(CVNE, CR2E) of the noisy state from squared Schmidt coefficients, scalar arithmetic only."""
    d = len(lam2)
    n = (1.0 - p) / (d * d)
    top = p + n
    wb = [p * l + (1.0 - p) / d for l in lam2]
    s_ab = -(_xlog2x(top) + (d * d - 1) * _xlog2x(n))
    s_b = -sum(_xlog2x(v) for v in wb)
    pur_ab = top * top + (d * d - 1) * n * n
    pur_b = sum(v * v for v in wb)
    return s_ab - s_b, math.log2(pur_b / pur_ab)


def noisy_implications(lambdas, p: float) -> list[BoundReport]:
    """Negative CR2E or CVNE => p above the k-copy nonlocality bound."""
    lam = normalize_schmidt(lambdas)
    pn = noisy_p_nonlocal(lam)
    cvne, cr2e = noisy_cvne_cr2e((lam**2).tolist(), p)
    return [
        BoundReport("noisy_cr2e_kcopy", p, pn, cr2e < 0, p > pn, note=f"cr2e={cr2e!r}"),
        BoundReport("noisy_cvne_kcopy", p, pn, cvne < 0, p > pn, note=f"cvne={cvne!r}"),
    ]


# squared Schmidt coefficients of the three reference noisy states
REFERENCE_SCHMIDT_SQUARES = {
    3: (1 / 2, 1 / 3, 1 / 6),
    4: (1 / 3, 1 / 3, 1 / 6, 1 / 6),
    5: (1 / 3, 1 / 7, 2 / 21, 4 / 21, 5 / 21),
}


def schmidt_from_squares(squares) -> tuple[float, ...]:
    return tuple(math.sqrt(s) for s in squares)
