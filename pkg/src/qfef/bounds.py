"""Theorem-level inequalities and identities as explicit left/right-hand sides."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from . import entropy as ent
from .entropy import EntropyKind, StateError
from .fef import weyl2_fef, werner_d_fef
from .states import StateSpec, weyl2_eigenvalues

BISECT_TOL = 1e-9
BISECT_MAXITER = 200
IDENTITY_TOL = 1e-9


class BoundsError(ValueError):
    pass


def _json_num(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


@dataclass(frozen=True)
class BoundReport:
    """One evaluated implication ``hypothesis => lhs (rel) rhs``.

    ``vacuous`` is exactly ``not hypothesis``. ``conclusion`` is evaluated
    regardless, so a report with ``hypothesis and not conclusion`` is a
    counterexample. Identities carry their absolute ``residual``.
    """

    theorem: str
    lhs: float
    rhs: float
    hypothesis: bool
    conclusion: bool
    note: str = ""
    residual: float | None = None
    vacuous: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "hypothesis", bool(self.hypothesis))
        object.__setattr__(self, "conclusion", bool(self.conclusion))
        object.__setattr__(self, "vacuous", not self.hypothesis)

    @property
    def sound(self) -> bool:
        return self.vacuous or self.conclusion

    def to_json(self) -> dict:
        out = {
            "theorem": self.theorem,
            "lhs": _json_num(self.lhs),
            "rhs": _json_num(self.rhs),
            "hypothesis": self.hypothesis,
            "conclusion": self.conclusion,
            "vacuous": self.vacuous,
            "note": self.note,
        }
        if self.residual is not None:
            out["residual"] = _json_num(self.residual)
        return out


def _check_unit(name: str, value: float, lo: float = 0.0, hi: float = 1.0):
    if not (lo <= value <= hi):
        raise BoundsError(f"{name}={value!r} outside [{lo:g}, {hi:g}]")


def _check_alpha(alpha: float):
    if not alpha > 1.0:
        raise BoundsError(f"alpha must be > 1, got {alpha!r}")


def _check_dim(d: int):
    if int(d) != d or d < 2:
        raise BoundsError(f"dimension must be an integer >= 2, got {d!r}")


# ---------------------------------------------------------------------------
# root finding


def find_threshold(f, lo: float, hi: float, tol: float = BISECT_TOL, maxiter: int = BISECT_MAXITER) -> float:
    """Bisection root of ``f`` on ``[lo, hi]``; needs a sign change at the ends."""

    def checked(x):
        y = f(x)
        if not math.isfinite(y):
            raise BoundsError(f"non-finite function value {y!r} at {x!r}")
        return y

    flo, fhi = checked(lo), checked(hi)
    if flo == 0.0:
        return float(lo)
    if fhi == 0.0:
        return float(hi)
    if (flo > 0) == (fhi > 0):
        raise BoundsError(f"no sign change on [{lo!r}, {hi!r}]: f={flo!r}, {fhi!r}")
    try:
        return float(optimize.bisect(checked, lo, hi, xtol=tol, maxiter=maxiter))
    except RuntimeError as exc:
        raise BoundsError(str(exc)) from exc


# ---------------------------------------------------------------------------
# two-qubit Werner


def werner2_delta(p: float) -> float:
    """The smaller of the two distinct eigenvalues (1+3p)/4 and (1-p)/4."""
    return min((1.0 + 3.0 * p) / 4.0, (1.0 - p) / 4.0)


def werner2_fef(p: float) -> float:
    return (1.0 + 3.0 * p) / 4.0


def thm1_werner2(p: float) -> BoundReport:
    """FEF > 1/2  =>  CVNE < 3 delta log2(1 / 2 delta)."""
    _check_unit("p", p)
    delta = werner2_delta(p)
    rhs = 0.0 if delta == 0.0 else 3.0 * delta * math.log2(1.0 / (2.0 * delta))
    cvne = ent.cond_entropy_closed(StateSpec("werner2", (p,)))
    return BoundReport("thm1", cvne, rhs, werner2_fef(p) > 0.5, cvne < rhs)


def thm3_delta_bound(alpha: float) -> float:
    return ((2.0**alpha - 2.0 ** (alpha - 1.0)) / (3.0 * 2.0 ** (2.0 * alpha - 1.0))) ** (1.0 / alpha)


def _signed_root(x: float, alpha: float) -> float:
    # a negative bracket would make the bound complex; its real signed root
    # keeps the inequality meaningful and trivially satisfied
    return math.copysign(abs(x) ** (1.0 / alpha), x)


def thm2_thm3_werner2(p: float, alpha: float) -> list[BoundReport]:
    _check_unit("p", p)
    _check_alpha(alpha)
    delta = werner2_delta(p)
    crae = ent.cond_entropy_closed(StateSpec("werner2", (p,)), EntropyKind.renyi(alpha))
    fef = werner2_fef(p)
    bound = _signed_root(2.0 ** (1.0 - alpha) - 3.0 * delta**alpha, alpha)
    thm2 = BoundReport("thm2", fef, bound, crae < 0, fef > bound)
    dstar = thm3_delta_bound(alpha)
    thm3 = BoundReport(
        "thm3", fef, 0.5, crae < 0 and delta < dstar, fef > 0.5, note=f"delta={delta!r}, delta_max={dstar!r}"
    )
    return [thm2, thm3]


# ---------------------------------------------------------------------------
# two-qubit Weyl


def weyl2_cr2e(t) -> float:
    return 1.0 - math.log2(1.0 + sum(float(x) ** 2 for x in t))


def weyl2_R(t) -> float:
    a, b, c = (abs(float(x)) for x in t)
    return a * b + a * c + b * c


def check_weyl2(t) -> tuple[float, float, float]:
    t = tuple(float(x) for x in t)
    if len(t) != 3:
        raise BoundsError(f"expected three Weyl coefficients, got {len(t)}")
    label, value = min(weyl2_eigenvalues(t).items(), key=lambda kv: kv[1])
    if value < -1e-9:
        raise StateError(f"weyl2{t} is not positive: eigenvalue {label} = {value:.6g} < 0")
    return t


def thm4_thm5_weyl2(t) -> list[BoundReport]:
    t = check_weyl2(t)
    cr2e = weyl2_cr2e(t)
    fef = weyl2_fef(t)
    mags = [abs(x) for x in t]
    distinct = len(set(mags)) == 3 and min(mags) > 0
    note4 = "" if distinct else "|t_i| not pairwise distinct and non-zero"
    thm4 = BoundReport("thm4", fef, 0.5, cr2e < 0, fef > 0.5, note=note4)
    r = weyl2_R(t)
    if not 0.0 < r < 1.0:
        thm5 = BoundReport("thm5", cr2e, math.nan, False, False, note=f"out of premise: R={r!r} not in (0, 1)")
    else:
        rhs = math.log2(1.0 / (1.0 - r))
        thm5 = BoundReport("thm5", cr2e, rhs, fef > 0.5, cr2e < rhs, note=f"R={r!r}")
    return [thm4, thm5]


# ---------------------------------------------------------------------------
# isotropic


def thm6_bound(d: int) -> float:
    return math.log((d * d - 1) / d) / math.log(d * d - 1)


def thm7_threshold(d: int) -> float:
    return (1.0 + math.sqrt(1.0 + d * (d * d - d - 1))) / (d * d)


def thm6_thm7_isotropic(d: int, F: float) -> list[BoundReport]:
    _check_dim(d)
    _check_unit("F", F)
    spec = StateSpec("isotropic", (F,), d)
    cvne = ent.cond_entropy_closed(spec)
    cr2e = ent.cond_entropy_closed(spec, EntropyKind.renyi(2.0))
    b6 = thm6_bound(d)
    f7 = thm7_threshold(d)
    return [
        BoundReport("thm6", F, b6, cvne < 0, F > b6),
        BoundReport("cor6.1", F, 1.0 / d, cvne < 0, F > 1.0 / d),
        BoundReport("thm7", F, f7, cr2e < 0, F > f7),
        BoundReport("thm7_converse", cr2e, 0.0, F > f7, cr2e < 0),
    ]


def isotropic_cvne_threshold(d: int, tol: float = BISECT_TOL) -> float:
    return find_threshold(lambda F: ent.cond_entropy_closed(StateSpec("isotropic", (F,), d)), 1.0 / (d * d), 1.0, tol)


def isotropic_cr2e_threshold_bisect(d: int, tol: float = 1e-12) -> float:
    kind = EntropyKind.renyi(2.0)
    return find_threshold(lambda F: ent.cond_entropy_closed(StateSpec("isotropic", (F,), d), kind), 1.0 / (d * d), 1.0, tol)


def werner2_cvne_threshold(tol: float = BISECT_TOL) -> float:
    return find_threshold(lambda p: ent.cond_entropy_closed(StateSpec("werner2", (p,))), 0.5, 0.9, tol)


# ---------------------------------------------------------------------------
# d-dimensional Werner


def werner_d_branches(d: int, x: float) -> list[str]:
    """Identities whose hypotheses cover (d, x)."""
    out = []
    if 1.0 / d <= x < 1.0:
        out.append("thm8")
    if x == 1.0:
        out.append("note_x=1")
    if d % 2 == 0 and -1.0 < x < 1.0 / d:
        out.append("thm9")
    if d % 2 == 0 and x == -1.0:
        out.append("note_x=-1")
    if 1.0 / d <= x <= 1.0:
        out.append("thm12")
    if d % 2 == 0 and -1.0 <= x < 1.0 / d:
        out.append("thm13")
    return out


def _identity(theorem: str, lhs: float, rhs: float, note: str = "") -> BoundReport:
    res = abs(lhs - rhs)
    return BoundReport(theorem, lhs, rhs, True, res <= IDENTITY_TOL, note=note, residual=res)


def werner_d_identities(d: int, x: float, alpha: float = 2.0) -> list[BoundReport]:
    """Evaluate every F-versus-entropy identity applicable at (d, x).

    Case I (1/d <= x): F^(1+x) = 4^-S Gamma and F^alpha = Delta.
    Case II (even d, x < 1/d): the mirrored pair with (1 - x). The thm13
    Delta is evaluated on the Case II branch. Odd d below 1/d has no
    identity and is rejected.
    """
    _check_dim(d)
    _check_unit("x", x, -1.0, 1.0)
    _check_alpha(alpha)
    branches = werner_d_branches(d, x)
    if not branches:
        raise BoundsError(f"no identity applies to odd d={d} with x={x!r} < 1/d")
    spec = StateSpec("werner_d", (x,), d)
    F = werner_d_fef(d, x)
    S = ent.cond_entropy_closed(spec)
    Sa = ent.cond_entropy_closed(spec, EntropyKind.renyi(alpha))
    dp, dm = d * d + d, d * d - d
    lead = 2.0 * 2.0 ** ((1.0 - alpha) * Sa)
    out = []
    for b in branches:
        if b == "thm8":
            gamma = (dm / (1.0 - x)) ** (1.0 - x) / (d * d)
            out.append(_identity(b, F ** (1.0 + x), 4.0 ** (-S) * gamma))
        elif b == "thm9":
            gamma = (dp / (1.0 + x)) ** (1.0 + x) / (d * d)
            out.append(_identity(b, F ** (1.0 - x), 4.0 ** (-S) * gamma))
        elif b in ("note_x=1", "note_x=-1"):
            out.append(_identity(b, F, 2.0 ** (-S) / d))
        elif b == "thm12":
            delta = (lead - d ** (alpha - 1.0) * dm ** (1.0 - alpha) * (1.0 - x) ** alpha) / (d ** (alpha - 1.0) * dp)
            out.append(_identity(b, F**alpha, delta))
        else:
            delta = (lead - d ** (alpha - 1.0) * dp ** (1.0 - alpha) * (1.0 + x) ** alpha) / (d ** (alpha - 1.0) * dm)
            out.append(_identity(b, F**alpha, delta, note="Case II branch"))
    return out


# ---------------------------------------------------------------------------
# rank-deficient


@dataclass(frozen=True)
class RankDeficientThresholds:
    p_cvne: float
    p_cr2e: float
    p_tele: float


def rank_deficient_cvne_threshold(d: int, tol: float = 1e-13) -> float:
    """CVNE zero crossing, bisected in u = ln p so tiny roots keep their digits."""

    def g(u):
        return ent.cond_entropy_closed(StateSpec("rank_deficient", (math.exp(u),), d))

    return math.exp(find_threshold(g, -700.0, 0.0, tol))


def rank_deficient_thresholds(d: int) -> RankDeficientThresholds:
    _check_dim(d)
    if d > 12:
        raise BoundsError(f"rank-deficient thresholds are supported for d <= 12, got {d}")
    return RankDeficientThresholds(
        rank_deficient_cvne_threshold(d), 2.0 / (d + 1), 1.0 / d if d <= 3 else 0.0
    )


# ---------------------------------------------------------------------------
# generalised Bell-diagonal


def _split_max(probs: np.ndarray) -> tuple[float, np.ndarray]:
    k = int(np.argmax(probs))  # smallest index among ties
    return float(probs[k]), np.delete(probs, k)


def genbell_beta(probs) -> float:
    _, rest = _split_max(np.asarray(probs, dtype=float))
    return float(np.prod(rest**rest))


def genbell_bounds(d: int, probs, alpha: float = 2.0) -> list[BoundReport]:
    _check_dim(d)
    _check_alpha(alpha)
    probs = np.asarray(probs, dtype=float)
    if probs.shape != (d * d,) or np.any(probs < 0) or abs(probs.sum() - 1.0) > 1e-10:
        raise BoundsError(f"need {d * d} non-negative probabilities summing to 1")
    spec = StateSpec("gen_bell", tuple(probs), d)
    F, rest = _split_max(probs)
    S = ent.cond_entropy_closed(spec)
    Sa = ent.cond_entropy_closed(spec, EntropyKind.renyi(alpha))
    reports = []

    if np.all(rest > 0):
        beta = float(np.prod(rest**rest))
        lhs16 = F**F * d * beta
        reports.append(BoundReport("thm16", lhs16, 1.0, S < 0, lhs16 > 1.0, note=f"beta={beta!r}"))
        y = math.log2(d ** (F - 1.0) / beta)
        reports.append(BoundReport("gbdst1", S, y, F > 1.0 / d, S < y))
    else:
        note = "out of premise: a non-maximal p_i is zero"
        reports.append(BoundReport("thm16", math.nan, 1.0, False, False, note=note))
        reports.append(BoundReport("gbdst1", S, math.nan, False, False, note=note))

    x = float(np.sum(rest**alpha))
    rhs_crae = (1.0 - d ** (alpha - 1.0) * x) / d ** (alpha - 1.0)
    reports.append(BoundReport("genbell_crae", F**alpha, rhs_crae, Sa < 0, F**alpha > rhs_crae))

    arg = math.log2((1.0 + d**alpha * x) / d)
    rhs_final = arg / (1.0 - alpha)
    stated = arg / (alpha - 1.0)
    reports.append(
        BoundReport(
            "genbell_crae_final",
            Sa,
            rhs_final,
            F > 1.0 / d,
            Sa < rhs_final,
            note=f"prefactor 1/(1-alpha); with 1/(alpha-1) the bound is {stated!r}",
        )
    )
    return reports
