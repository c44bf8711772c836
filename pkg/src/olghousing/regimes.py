"""Regime thresholds, steady states, local stability, and welfare classification.

An economy is summarized by its old-to-young income ratio on the balanced
growth path. Two thresholds in that ratio partition the parameter space:
above the upper threshold only the no-bubble (fundamental) long run exists,
below the lower threshold every equilibrium carries a housing bubble, and in
between both long runs coexist. All of this applies to the curvature branch
``gamma < 1``; the log branch ``gamma == 1`` has a unique balanced growth
path computed here as well, while ``gamma > 1`` admits no steady state and
its dynamics are handled entirely by the solver.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

from scipy.optimize import brentq

from .errors import BranchError, DomainError, LoanError, RegimeError, SolverError
from .preferences import Aggregator, CesAggregator, HousingUtility

__all__ = [
    "EconomyParams",
    "Thresholds",
    "RegimeTag",
    "Regime",
    "Determinacy",
    "SteadyStateKind",
    "EisCondition",
    "Gamma1Condition",
    "SteadyStateReport",
    "LongRunKind",
    "WelfareClass",
    "CreditTransform",
    "thresholds",
    "threshold_root_solve",
    "classify",
    "bubbly_steady_state",
    "fundamental_steady_state",
    "gamma1_steady_state",
    "welfare_class",
    "credit_transform",
]

# |income ratio - threshold| at or below this is reported as a boundary case
BOUNDARY_TOL = 1e-9


@dataclass(frozen=True)
class EconomyParams:
    """Primitives of a balanced-growth economy.

    Parameters
    ----------
    agg : Aggregator
        Consumption aggregator c(y, z).
    housing : HousingUtility
        Curvature ``gamma`` and marginal housing utility ``m``.
    G : float
        Gross growth factor of endowments, > 1.
    e1, e2 : float
        Young and old endowment levels at date 0; the date-t endowments on
        the balanced path are ``e1 * G**t`` and ``e2 * G**t``.
    """

    agg: Aggregator
    housing: HousingUtility
    G: float
    e1: float
    e2: float

    def __post_init__(self):
        if not (self.G > 1.0 and math.isfinite(self.G)):
            raise DomainError(f"G must exceed 1 and be finite, got {self.G!r}")
        if not (self.e1 > 0.0 and math.isfinite(self.e1)):
            raise DomainError(f"e1 must be positive and finite, got {self.e1!r}")
        if not (self.e2 > 0.0 and math.isfinite(self.e2)):
            raise DomainError(f"e2 must be positive and finite, got {self.e2!r}")

    @property
    def income_ratio(self) -> float:
        """Old-to-young endowment ratio e2/e1, constant on the balanced path."""
        return self.e2 / self.e1


@dataclass(frozen=True)
class Thresholds:
    """Critical income ratios for the gamma < 1 branch.

    Below ``w_f_star`` no fundamental long run exists (every equilibrium is
    bubbly); below ``w_b_star`` a bubbly long run exists. The ordering
    ``0 < w_f_star < w_b_star`` always holds on this branch.
    """

    w_f_star: float
    w_b_star: float


class RegimeTag(str, Enum):
    FUNDAMENTAL = "Fundamental"
    BUBBLE_POSSIBILITY = "BubblePossibility"
    BUBBLE_NECESSITY = "BubbleNecessity"
    COBB_DOUGLAS_FUNDAMENTAL = "CobbDouglasFundamental"
    PATHOLOGICAL_GAMMA_ABOVE_1 = "PathologicalGammaAbove1"


@dataclass(frozen=True)
class Regime:
    """Classification verdict: regime tag plus boundary diagnostics.

    ``boundary`` names the threshold ("w_f_star" or "w_b_star") when the
    income ratio sits within ``BOUNDARY_TOL`` of it; such cases are flagged
    rather than silently classified, and the tag then names the regime on
    the higher-ratio side of the threshold.
    """

    tag: RegimeTag
    income_ratio: float
    thresholds: Thresholds | None = None
    boundary: str | None = None


class Determinacy(str, Enum):
    SADDLE = "Saddle"
    SINK = "Sink"
    NON_HYPERBOLIC = "NonHyperbolic"
    SINGULAR = "SingularLinearization"


class SteadyStateKind(str, Enum):
    FUNDAMENTAL_DETRENDED = "FundamentalDetrended"
    BUBBLY_DETRENDED = "BubblyDetrended"
    GAMMA1_BALANCED_GROWTH = "Gamma1BalancedGrowth"


@dataclass(frozen=True)
class EisCondition:
    """Elasticity-of-substitution determinacy condition at the bubbly state.

    The linearization is informative when ``value`` exceeds ``lower_bound``
    and differs from ``singular_value`` (where the implicit function theorem
    fails).
    """

    value: float
    lower_bound: float
    singular_value: float
    holds: bool


@dataclass(frozen=True)
class Gamma1Condition:
    """Sufficient determinacy condition for the log housing branch."""

    inverse_eis: float
    bound: float
    holds: bool


@dataclass(frozen=True)
class SteadyStateReport:
    """Steady state location, linearized eigenvalues, determinacy verdict.

    ``s_star`` is a detrended housing-expenditure level whose meaning
    depends on ``kind``: the expenditure share of young income at the
    bubbly state, the limit of ``S_t / (e1**gamma * G**(gamma*t))`` at the
    fundamental state, and the constant expenditure share on the gamma = 1
    balanced growth path (where the dynamics are one-dimensional and
    ``lambda2`` is None).
    """

    kind: SteadyStateKind
    s_star: float
    lambda1: float
    lambda2: float | None
    determinacy: Determinacy
    eis_condition: EisCondition | None = None
    determinacy_condition: Gamma1Condition | None = None
    warning: str | None = None


class LongRunKind(str, Enum):
    FUNDAMENTAL_LONG_RUN = "FundamentalLongRun"
    BUBBLY_LONG_RUN = "BubblyLongRun"


class WelfareClass(str, Enum):
    EFFICIENT = "Efficient"
    INEFFICIENT = "Inefficient"


@dataclass(frozen=True)
class CreditTransform:
    """Effective economy after collateralized intra-period lending.

    A loan of ``loan_ratio`` times young income, repaid next period at the
    growth rate, shifts funds from old to young: the effective economy has
    young funds ``e1 * (1 + loan_ratio)`` and old funds
    ``e1 * (income_ratio - loan_ratio)``. ``price_coefficient`` is the
    predicted asymptotic housing price per unit of ``G**t`` in the bubbly
    long run, which rises one-for-one with the loan while consumption is
    unchanged.
    """

    params: EconomyParams
    loan_ratio: float
    w_effective: float
    price_coefficient: float
    condition_holds: bool
    warning: str | None = None


def _require_gamma_below_one(params: EconomyParams, what: str) -> None:
    if params.housing.gamma >= 1.0:
        raise BranchError(
            f"{what} requires gamma < 1, got gamma={params.housing.gamma!r}; "
            "the gamma >= 1 branches have no bubble thresholds"
        )


def threshold_root_solve(agg: Aggregator, G: float, target: float) -> float:
    """Solve mrs(1, G*w) = target for w by bracketed bisection.

    Generic fallback for non-CES aggregators: the marginal rate of
    substitution is strictly increasing in its second argument, so the
    bracket can be grown by doubling until it straddles the root.
    """
    f = lambda w: agg.mrs(1.0, G * w) - target
    lo, hi = 0.5, 2.0
    for _ in range(200):
        if f(lo) < 0.0:
            break
        lo /= 2.0
    else:
        raise SolverError("threshold bracket expansion failed at the lower end")
    for _ in range(200):
        if f(hi) > 0.0:
            break
        hi *= 2.0
    else:
        raise SolverError("threshold bracket expansion failed at the upper end")
    return brentq(f, lo, hi, xtol=1e-12, rtol=8.9e-16, maxiter=200)


def thresholds(params: EconomyParams) -> Thresholds:
    """Critical income ratios bounding the bubble regimes (gamma < 1 only)."""
    _require_gamma_below_one(params, "thresholds")
    agg = params.agg
    G = params.G
    gamma = params.housing.gamma
    if isinstance(agg, CesAggregator):
        ratio = agg.beta / (1.0 - agg.beta)
        w_f = (ratio * G ** (gamma - agg.sigma)) ** (1.0 / agg.sigma)
        w_b = (ratio * G ** (1.0 - agg.sigma)) ** (1.0 / agg.sigma)
    else:
        w_f = threshold_root_solve(agg, G, G ** gamma)
        w_b = threshold_root_solve(agg, G, G)
    return Thresholds(w_f_star=w_f, w_b_star=w_b)


def classify(params: EconomyParams) -> Regime:
    """Regime tag from the curvature branch and the income ratio."""
    gamma = params.housing.gamma
    w = params.income_ratio
    if gamma > 1.0:
        return Regime(tag=RegimeTag.PATHOLOGICAL_GAMMA_ABOVE_1, income_ratio=w)
    if gamma == 1.0:
        return Regime(tag=RegimeTag.COBB_DOUGLAS_FUNDAMENTAL, income_ratio=w)
    thr = thresholds(params)
    if abs(w - thr.w_b_star) <= BOUNDARY_TOL:
        return Regime(tag=RegimeTag.FUNDAMENTAL, income_ratio=w,
                      thresholds=thr, boundary="w_b_star")
    if abs(w - thr.w_f_star) <= BOUNDARY_TOL:
        return Regime(tag=RegimeTag.BUBBLE_POSSIBILITY, income_ratio=w,
                      thresholds=thr, boundary="w_f_star")
    if w > thr.w_b_star:
        tag = RegimeTag.FUNDAMENTAL
    elif w > thr.w_f_star:
        tag = RegimeTag.BUBBLE_POSSIBILITY
    else:
        tag = RegimeTag.BUBBLE_NECESSITY
    return Regime(tag=tag, income_ratio=w, thresholds=thr)


def bubbly_steady_state(params: EconomyParams) -> SteadyStateReport:
    """Bubbly steady state of the detrended dynamics, with local stability.

    Exists iff gamma < 1 and the income ratio lies below ``w_b_star``. The
    state is the housing expenditure share s of young income; the two
    eigenvalues of the linearized two-dimensional map are the implicit
    share-map slope ``lambda1`` and the rent-forcing decay ``lambda2``.
    """
    _require_gamma_below_one(params, "bubbly_steady_state")
    thr = thresholds(params)
    w = params.income_ratio
    if w >= thr.w_b_star:
        raise RegimeError(
            f"no bubbly steady state: income ratio {w:.6g} is not below "
            f"w_b_star {thr.w_b_star:.6g}"
        )
    G = params.G
    gamma = params.housing.gamma
    s = (thr.w_b_star - w) / (thr.w_b_star + 1.0)
    y, z = 1.0 - s, G * (w + s)
    eps = params.agg.eis(y, z)
    n = 1.0 + (1.0 / eps) * s / (1.0 - s)
    d = 1.0 - (1.0 / eps) * s / (w + s)
    lower = (1.0 - thr.w_b_star) / 2.0 * (1.0 - w / thr.w_b_star) / (1.0 + w)
    singular = (1.0 - w / thr.w_b_star) / (1.0 + w)
    cond = EisCondition(
        value=eps,
        lower_bound=lower,
        singular_value=singular,
        holds=(eps > lower and eps != singular),
    )
    if d == 0.0:
        return SteadyStateReport(
            kind=SteadyStateKind.BUBBLY_DETRENDED,
            s_star=s,
            lambda1=math.inf,
            lambda2=G ** (gamma - 1.0),
            determinacy=Determinacy.SINGULAR,
            eis_condition=cond,
            warning="implicit function theorem inapplicable: linearization singular",
        )
    lam1 = n / d
    if abs(lam1) > 1.0:
        verdict = Determinacy.SADDLE
    elif abs(lam1) < 1.0:
        verdict = Determinacy.SINK
    else:
        verdict = Determinacy.NON_HYPERBOLIC
    return SteadyStateReport(
        kind=SteadyStateKind.BUBBLY_DETRENDED,
        s_star=s,
        lambda1=lam1,
        lambda2=G ** (gamma - 1.0),
        determinacy=verdict,
        eis_condition=cond,
    )


def fundamental_steady_state(params: EconomyParams) -> SteadyStateReport:
    """Fundamental steady state of the detrended dynamics (gamma < 1).

    The housing expenditure share of income vanishes along the fundamental
    path; the meaningful detrended level is ``S_t / (e1**gamma *
    G**(gamma*t))``, whose limit ``s_star`` is finite exactly when the
    income ratio exceeds ``w_f_star``.
    """
    _require_gamma_below_one(params, "fundamental_steady_state")
    thr = thresholds(params)
    w = params.income_ratio
    if w <= thr.w_f_star:
        raise RegimeError(
            f"no fundamental long run: income ratio {w:.6g} does not exceed "
            f"w_f_star {thr.w_f_star:.6g}"
        )
    G = params.G
    gamma = params.housing.gamma
    m = params.housing.m
    c = params.agg.value(1.0, G * w)
    cy, cz = params.agg.partials(1.0, G * w)
    denom = cy - G ** gamma * cz
    warning = None
    if denom < 1e-8 * cy:
        warning = (
            "income ratio is within the near-singular band above w_f_star; "
            "the detrended level is numerically unreliable"
        )
    s = m * c ** gamma / denom
    lam1 = cy / (G ** gamma * cz)
    return SteadyStateReport(
        kind=SteadyStateKind.FUNDAMENTAL_DETRENDED,
        s_star=s,
        lambda1=lam1,
        lambda2=G ** (gamma - 1.0),
        determinacy=Determinacy.SADDLE,
        warning=warning,
    )


def gamma1_steady_state(params: EconomyParams) -> SteadyStateReport:
    """Unique balanced growth path of the log housing branch (gamma = 1).

    The expenditure share solves a strictly concave one-dimensional
    first-order condition; the report carries the implicit map slope as
    ``lambda1`` (``lambda2`` is None) and the sufficient determinacy
    condition on the inverse elasticity of substitution.
    """
    if params.housing.gamma != 1.0:
        raise BranchError(
            f"gamma1_steady_state requires gamma == 1, got {params.housing.gamma!r}"
        )
    agg = params.agg
    G = params.G
    w = params.income_ratio
    m = params.housing.m

    def foc(s: float) -> float:
        y, z = 1.0 - s, G * (w + s)
        c = agg.value(y, z)
        cy, cz = agg.partials(y, z)
        return (G * cz - cy) / c + m / s

    lo, hi = 1e-12, 1.0 - 1e-12
    if foc(lo) <= 0.0 or foc(hi) >= 0.0:
        raise SolverError("gamma = 1 first-order condition failed to bracket")
    s = brentq(foc, lo, hi, xtol=1e-15, rtol=8.9e-16, maxiter=200)

    y, z = 1.0 - s, G * (w + s)
    c = agg.value(y, z)
    cy, cz = agg.partials(y, z)
    cyy, cyz, czz = agg.second_partials(y, z)
    n = (1.0 + m) * cy + G * s * cyz - s * cyy
    d = G * ((1.0 + m) * cz + G * s * czz - s * cyz)
    inverse_eis = c * cyz / (cy * cz)
    bound = (1.0 + w / s) / (1.0 + w) * (1.0 + G * w * cz / cy)
    cond = Gamma1Condition(inverse_eis=inverse_eis, bound=bound, holds=inverse_eis < bound)
    if d == 0.0:
        return SteadyStateReport(
            kind=SteadyStateKind.GAMMA1_BALANCED_GROWTH,
            s_star=s,
            lambda1=math.inf,
            lambda2=None,
            determinacy=Determinacy.SINGULAR,
            determinacy_condition=cond,
            warning="implicit function theorem inapplicable: linearization singular",
        )
    lam1 = n / d
    if abs(lam1) > 1.0:
        verdict = Determinacy.SADDLE
    elif abs(lam1) < 1.0:
        verdict = Determinacy.SINK
    else:
        verdict = Determinacy.NON_HYPERBOLIC
    return SteadyStateReport(
        kind=SteadyStateKind.GAMMA1_BALANCED_GROWTH,
        s_star=s,
        lambda1=lam1,
        lambda2=None,
        determinacy=verdict,
        determinacy_condition=cond,
    )


def welfare_class(params: EconomyParams, kind: LongRunKind) -> WelfareClass:
    """Pareto classification of a long-run equilibrium kind (gamma < 1).

    Any long run is efficient when the income ratio is at or above
    ``w_b_star``; below it, bubbly long runs are efficient and fundamental
    ones are not. Asking about a fundamental long run that cannot exist
    (income ratio at or below ``w_f_star``) is an error.
    """
    _require_gamma_below_one(params, "welfare_class")
    kind = LongRunKind(kind)
    thr = thresholds(params)
    w = params.income_ratio
    if kind is LongRunKind.FUNDAMENTAL_LONG_RUN and w <= thr.w_f_star:
        raise RegimeError(
            f"no fundamental long run exists at income ratio {w:.6g} <= "
            f"w_f_star {thr.w_f_star:.6g}"
        )
    if w >= thr.w_b_star:
        return WelfareClass.EFFICIENT
    if kind is LongRunKind.BUBBLY_LONG_RUN:
        return WelfareClass.EFFICIENT
    return WelfareClass.INEFFICIENT


def credit_transform(params: EconomyParams, loan_ratio: float) -> CreditTransform:
    """Effective economy when the young can borrow against future income.

    Raising the loan ratio within the feasibility window shifts the bubbly
    long-run housing price up one-for-one (the price coefficient gains
    ``loan_ratio * e1``) without changing consumption. Outside the window
    the bubbly long run may not exist and a warning is attached.
    """
    _require_gamma_below_one(params, "credit_transform")
    if not (loan_ratio >= 0.0 and math.isfinite(loan_ratio)):
        raise DomainError(f"loan_ratio must be nonnegative and finite, got {loan_ratio!r}")
    w = params.income_ratio
    if loan_ratio >= w:
        raise LoanError(
            f"loan_ratio {loan_ratio:.6g} is not repayable: it must stay below "
            f"the income ratio {w:.6g}"
        )
    thr = thresholds(params)
    lower = (w - thr.w_b_star) / (thr.w_b_star + 1.0)
    condition_holds = w > loan_ratio > lower
    warning = None
    if not condition_holds and loan_ratio > 0.0:
        warning = (
            f"loan_ratio {loan_ratio:.6g} is outside ({max(lower, 0.0):.6g}, {w:.6g}); "
            "the effective economy may not admit a bubbly long run"
        )
    s_star = (thr.w_b_star - w) / (thr.w_b_star + 1.0)
    # e1*(1+ratio) and e1*(w-ratio), written so a zero loan is an exact identity
    effective = replace(
        params,
        e1=params.e1 + loan_ratio * params.e1,
        e2=params.e2 - loan_ratio * params.e1,
    )
    return CreditTransform(
        params=effective,
        loan_ratio=loan_ratio,
        w_effective=(w - loan_ratio) / (1.0 + loan_ratio),
        price_coefficient=(s_star + loan_ratio) * params.e1,
        condition_holds=condition_holds,
        warning=warning,
    )
