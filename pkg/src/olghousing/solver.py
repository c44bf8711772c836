"""Equilibrium path computation by backward induction, plus belief scenarios.

The single equilibrium state is the housing expenditure of the young,
``S_t = P_t + r_t``. Given next period's expenditure, the current one is the
unique root of a strictly decreasing equation, so the whole path follows
from a terminal value by backward induction. Terminal values are the steady
states of the detrended dynamics; because the returned window must satisfy
the equilibrium identities everywhere (in particular positive prices), the
seed is planted ``pad`` periods beyond the requested horizon, where the
backward recursion is a contraction, and only dates ``0..T`` are reported.

Belief-revision scenarios solve one full path per announced belief and
stitch them: each date carries the values of the belief active there, the
realized interest rate across a revision uses the post-revision expenditure
(the one-time surprise revaluation), and present-value prices are chained
through realized rates.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import BranchError, DomainError, HorizonError, SolverError
from .preferences import Aggregator, HousingUtility
from .regimes import (
    EconomyParams,
    SteadyStateReport,
    bubbly_steady_state,
    fundamental_steady_state,
    gamma1_steady_state,
)

__all__ = [
    "Segment",
    "EndowmentPath",
    "TerminalKind",
    "EquilibriumPath",
    "BeliefSchedule",
    "backward_step",
    "solve_path",
    "solve_scenario",
]

log = logging.getLogger(__name__)

# interior margin for the share bracket, relative to young income
_EDGE = 1e-14
# minimum relative tolerance accepted by the bracketed root solve
_MIN_RTOL = 9e-16


@dataclass(frozen=True)
class Segment:
    """One balanced-growth piece of an endowment schedule.

    Endowment levels at date t >= start are ``e1 * G**t`` and ``e2 * G**t``
    (the exponent counts from date 0, so consecutive segments with equal
    levels join continuously).
    """

    start: int
    e1: float
    e2: float
    G: float

    def __post_init__(self):
        if not (isinstance(self.start, int) and self.start >= 0):
            raise DomainError(f"segment start must be a nonnegative integer, got {self.start!r}")
        if not (self.e1 > 0.0 and math.isfinite(self.e1)):
            raise DomainError(f"segment e1 must be positive and finite, got {self.e1!r}")
        if not (self.e2 > 0.0 and math.isfinite(self.e2)):
            raise DomainError(f"segment e2 must be positive and finite, got {self.e2!r}")
        if not (self.G > 0.0 and math.isfinite(self.G)):
            raise DomainError(f"segment G must be positive and finite, got {self.G!r}")


@dataclass(frozen=True)
class EndowmentPath:
    """Piecewise balanced-growth endowment schedule.

    Segments are dated by their first period; the last one extends forever
    and must have a growth factor above 1. ``T_max`` is the nominal horizon
    used as a default by consumers of the schedule; levels can be evaluated
    at any date.
    """

    segments: tuple[Segment, ...]
    T_max: int

    def __post_init__(self):
        if not self.segments:
            raise DomainError("endowment path needs at least one segment")
        segs = tuple(self.segments)
        object.__setattr__(self, "segments", segs)
        if segs[0].start != 0:
            raise DomainError(f"first segment must start at date 0, got {segs[0].start}")
        for a, b in zip(segs, segs[1:]):
            if b.start <= a.start:
                raise DomainError("segment start dates must be strictly increasing")
        if not self.T_max >= 0:
            raise DomainError(f"T_max must be nonnegative, got {self.T_max!r}")
        if not segs[-1].G > 1.0:
            raise DomainError(
                f"final segment must grow at a factor above 1, got G={segs[-1].G!r}"
            )

    @classmethod
    def from_params(cls, params: EconomyParams, T_max: int) -> "EndowmentPath":
        return cls(segments=(Segment(0, params.e1, params.e2, params.G),), T_max=T_max)

    def segment_at(self, t: int) -> Segment:
        chosen = self.segments[0]
        for seg in self.segments:
            if seg.start <= t:
                chosen = seg
            else:
                break
        return chosen

    def young(self, t: int) -> float:
        seg = self.segment_at(t)
        return seg.e1 * seg.G ** t

    def old(self, t: int) -> float:
        seg = self.segment_at(t)
        return seg.e2 * seg.G ** t

    @property
    def balanced_from(self) -> int:
        return self.segments[-1].start

    def final_params(self, params: EconomyParams) -> EconomyParams:
        """Economy primitives on the final balanced-growth segment."""
        seg = self.segments[-1]
        return EconomyParams(agg=params.agg, housing=params.housing,
                             G=seg.G, e1=seg.e1, e2=seg.e2)


class TerminalKind(str, Enum):
    FUNDAMENTAL = "Fundamental"
    BUBBLY = "Bubbly"
    GAMMA1 = "Gamma1"
    GAMMA_ABOVE_1 = "GammaAbove1"


@dataclass(frozen=True)
class BeliefSchedule:
    """Dated announcements of the endowment path agents believe in.

    The first announcement must be dated 0 (the initial belief); dates must
    be strictly increasing. Between two announcements, behavior follows the
    earlier belief; at each announcement the equilibrium re-coordinates on
    the new one.
    """

    announcements: tuple[tuple[int, EndowmentPath], ...]

    def __post_init__(self):
        ann = tuple((int(a), p) for a, p in self.announcements)
        object.__setattr__(self, "announcements", ann)
        if not ann:
            raise DomainError("belief schedule needs at least one announcement")
        if ann[0][0] != 0:
            raise DomainError(f"first announcement must be at date 0, got {ann[0][0]}")
        for (a, _), (b, _) in zip(ann, ann[1:]):
            if b <= a:
                raise DomainError("announcement dates must be strictly increasing")


@dataclass(frozen=True)
class EquilibriumPath:
    """A solved equilibrium on dates 0..T (all arrays have length T+1).

    ``S`` is housing expenditure, ``s`` its share of young income, ``P``
    the house price, ``r`` the rent, ``R`` the gross interest rate between
    t and t+1, ``q`` the date-0 present-value price, ``c_y``/``c_o``
    young and old consumption, and ``belief_index`` the index of the belief
    active at each date (all zeros for a plain solve). ``residuals`` holds
    the relative equilibrium-equation error at each date, computed under
    the belief active there. ``balanced_from`` is the first date of the
    final balanced-growth segment of the realized endowments.
    """

    e_y: np.ndarray
    e_o: np.ndarray
    S: np.ndarray
    s: np.ndarray
    P: np.ndarray
    r: np.ndarray
    R: np.ndarray
    q: np.ndarray
    c_y: np.ndarray
    c_o: np.ndarray
    belief_index: np.ndarray
    residuals: np.ndarray
    terminal_kind: TerminalKind
    endowments: EndowmentPath
    balanced_from: int
    revision_dates: tuple[int, ...] = field(default_factory=tuple)

    @property
    def T(self) -> int:
        return len(self.S) - 1


def _share_residual_terms(agg: Aggregator, housing: HousingUtility,
                          share: float, share_next_scaled: float,
                          z_hat: float, e_y_t: float) -> tuple[float, float, float]:
    """The three terms of the equilibrium equation in units of young income.

    ``share_next_scaled`` is S_{t+1}/e_y_t and ``z_hat`` is next-period old
    cash-in-hand (e_o_{t+1} + S_{t+1})/e_y_t; the equation balances
    ``share_next_scaled*c_z + rent_term`` against ``share*c_y``.
    """
    y = 1.0 - share
    c = agg.value(y, z_hat)
    cy, cz = agg.partials(y, z_hat)
    rent = housing.m * e_y_t ** (housing.gamma - 1.0) * c ** housing.gamma
    return share_next_scaled * cz, share * cy, rent


def _solve_share(agg: Aggregator, housing: HousingUtility,
                 share_next_scaled: float, z_hat: float, e_y_t: float,
                 rtol: float) -> float:
    """Root of the equilibrium equation for the current expenditure share."""

    def f(u: float) -> float:
        a, b, rent = _share_residual_terms(agg, housing, u, share_next_scaled, z_hat, e_y_t)
        return a - b + rent

    lo, hi = _EDGE, 1.0 - _EDGE
    # f is strictly decreasing with f(0+) > 0 and f(1-) = -inf; push the
    # brackets toward the boundaries until they straddle the root
    while f(lo) <= 0.0:
        lo /= 8.0
        if lo < 1e-300:
            raise SolverError("share root vanished below representable range")
    while f(hi) >= 0.0:
        gap = (1.0 - hi) / 8.0
        if gap < 1e-17:
            raise SolverError("share root pinned against full young income")
        hi = 1.0 - gap
    return brentq(f, lo, hi, xtol=1e-300, rtol=max(rtol, _MIN_RTOL), maxiter=300)


def backward_step(housing: HousingUtility, agg: Aggregator,
                  S_next: float, e_y_t: float, e_o_next: float,
                  tol: float | None = None) -> float:
    """One backward-induction step: today's expenditure from tomorrow's.

    Returns the unique S in (0, e_y_t) balancing the young's housing demand
    against the resale value and rent, given next-period expenditure
    ``S_next`` and old endowment ``e_o_next``.
    """
    if not (S_next >= 0.0 and math.isfinite(S_next)):
        raise DomainError(f"S_next must be nonnegative and finite, got {S_next!r}")
    if not (e_y_t > 0.0 and math.isfinite(e_y_t)):
        raise DomainError(f"e_y_t must be positive and finite, got {e_y_t!r}")
    if not (e_o_next > 0.0 and math.isfinite(e_o_next)):
        raise DomainError(f"e_o_next must be positive and finite, got {e_o_next!r}")
    rtol = _MIN_RTOL if tol is None else float(tol)
    share = _solve_share(
        agg, housing,
        S_next / e_y_t,
        (e_o_next + S_next) / e_y_t,
        e_y_t,
        rtol,
    )
    return share * e_y_t


def _terminal_seed(params: EconomyParams, endowments: EndowmentPath,
                   terminal: TerminalKind) -> tuple[float, SteadyStateReport | None, float | None]:
    """Terminal share seed and the steady-state report backing it."""
    branch = params.housing.branch
    terminal = TerminalKind(terminal)
    fin = endowments.final_params(params)
    if branch == "below_one":
        if terminal is TerminalKind.FUNDAMENTAL:
            rep = fundamental_steady_state(fin)
            return 0.0, rep, rep.lambda1
        if terminal is TerminalKind.BUBBLY:
            rep = bubbly_steady_state(fin)
            return rep.s_star, rep, rep.lambda1
        raise BranchError(
            f"terminal {terminal.value} is not admissible for gamma < 1; "
            "choose Fundamental or Bubbly"
        )
    if branch == "log":
        if terminal is not TerminalKind.GAMMA1:
            raise BranchError("gamma == 1 admits only the Gamma1 terminal")
        rep = gamma1_steady_state(fin)
        return rep.s_star, rep, rep.lambda1
    if terminal is not TerminalKind.GAMMA_ABOVE_1:
        raise BranchError("gamma > 1 admits only the GammaAbove1 terminal")
    return 1.0 - 1e-6, None, None


def _auto_pad(terminal: TerminalKind, lambda1: float | None) -> int:
    """Distance beyond the horizon at which the terminal seed is planted.

    The backward recursion contracts seed error by 1/|lambda1| per step, so
    around 28 e-foldings push it below machine precision. The seed is always
    at least one period beyond the horizon so every returned date has a
    successor.
    """
    if terminal is TerminalKind.GAMMA_ABOVE_1:
        return 150
    if terminal is TerminalKind.GAMMA1:
        return 1
    if lambda1 is None or abs(lambda1) <= 1.0 + 1e-12:
        return 1
    pad = math.ceil(28.0 / math.log(abs(lambda1)))
    return min(max(pad, 60), 5000)


def solve_path(params: EconomyParams,
               endowments: EndowmentPath | None,
               terminal: TerminalKind | str,
               T: int,
               tol: float | None = None,
               seed_pad: int | None = None,
               fundamental_seed: str = "zero") -> EquilibriumPath:
    """Equilibrium path on dates 0..T for one fixed belief.

    The terminal condition seeds the expenditure share at the steady state
    of the requested long run, ``pad`` periods beyond T (automatic unless
    ``seed_pad`` is given), then walks the equilibrium equation backwards.
    ``fundamental_seed="asymptote"`` seeds the fundamental terminal at its
    detrended asymptote instead of zero; with the default padding both
    options agree to solver precision on the returned window.

    Raises a regime error when the final segment does not admit the
    requested terminal, and a horizon error when the horizon precedes the
    final segment or some price on the returned window fails to be positive.
    """
    if T < 1:
        raise HorizonError(f"horizon must be at least 1, got {T}")
    if endowments is None:
        endowments = EndowmentPath.from_params(params, T)
    if T < endowments.balanced_from:
        raise HorizonError(
            f"horizon {T} ends before the final balanced-growth segment "
            f"starting at {endowments.balanced_from}"
        )
    terminal = TerminalKind(terminal)
    if fundamental_seed not in ("zero", "asymptote"):
        raise DomainError(f"fundamental_seed must be 'zero' or 'asymptote', got {fundamental_seed!r}")
    seed_share, rep, lambda1 = _terminal_seed(params, endowments, terminal)
    pad = _auto_pad(terminal, lambda1) if seed_pad is None else max(int(seed_pad), 1)
    t_seed = T + pad
    if terminal is TerminalKind.FUNDAMENTAL and fundamental_seed == "asymptote":
        fin = endowments.segments[-1]
        gamma = params.housing.gamma
        seed_share = rep.s_star * fin.e1 ** (gamma - 1.0) * fin.G ** ((gamma - 1.0) * t_seed)
    log.debug(
        "solve_path: terminal=%s T=%d pad=%d seed_share=%.6g lambda1=%s",
        terminal.value, T, pad, seed_share,
        "n/a" if lambda1 is None else f"{lambda1:.6g}",
    )

    agg, housing = params.agg, params.housing
    rtol = _MIN_RTOL if tol is None else float(tol)
    e_y_full = np.array([endowments.young(t) for t in range(t_seed + 1)])
    e_o_full = np.array([endowments.old(t) for t in range(t_seed + 1)])

    shares = np.empty(t_seed + 1)
    shares[t_seed] = seed_share
    for t in range(t_seed - 1, -1, -1):
        scale = e_y_full[t + 1] / e_y_full[t]
        shares[t] = _solve_share(
            agg, housing,
            shares[t + 1] * scale,
            (e_o_full[t + 1] + shares[t + 1] * e_y_full[t + 1]) / e_y_full[t],
            e_y_full[t],
            rtol,
        )

    return _assemble(params, endowments, terminal, T, shares, e_y_full, e_o_full)


def _assemble(params: EconomyParams, endowments: EndowmentPath,
              terminal: TerminalKind, T: int, shares: np.ndarray,
              e_y_full: np.ndarray, e_o_full: np.ndarray) -> EquilibriumPath:
    """Populate all per-date fields from the solved share sequence."""
    agg, housing = params.agg, params.housing
    n = T + 1
    e_y = e_y_full[:n].copy()
    e_o = e_o_full[:n].copy()
    s = shares[:n].copy()
    S = s * e_y
    P = np.empty(n)
    r = np.empty(n)
    R = np.empty(n)
    residuals = np.empty(n)
    for t in range(n):
        ok = 0.0 < shares[t] < 1.0
        if not ok:
            raise HorizonError(f"expenditure share left (0, 1) at date {t}: {shares[t]!r}")
        scale = e_y_full[t + 1] / e_y_full[t]
        share_next_scaled = shares[t + 1] * scale
        z_hat = (e_o_full[t + 1] + shares[t + 1] * e_y_full[t + 1]) / e_y_full[t]
        a, b, rent = _share_residual_terms(agg, housing, shares[t], share_next_scaled, z_hat, e_y_full[t])
        residuals[t] = abs(a - b + rent) / max(a, b, rent)
        # price and rent from their own first-order conditions; this avoids
        # the cancellation in S - r when the price is a sliver of S, and in
        # S - P when the rent is (the marginal utilities are scale free)
        cy_d, cz_d = agg.partials(1.0 - shares[t], z_hat)
        r[t] = (rent / cy_d) * e_y[t]
        P[t] = shares[t + 1] * e_y_full[t + 1] * cz_d / cy_d
        if not P[t] > 0.0:
            raise HorizonError(
                f"nonpositive house price at date {t}: P={P[t]!r}; "
                "the horizon or terminal padding is too short"
            )
        R[t] = shares[t + 1] * e_y_full[t + 1] / P[t]
    q = np.empty(n)
    q[0] = 1.0
    for t in range(n - 1):
        q[t + 1] = q[t] / R[t]
    c_y = e_y - S
    c_o = e_o + S
    return EquilibriumPath(
        e_y=e_y, e_o=e_o, S=S, s=s, P=P, r=r, R=R, q=q,
        c_y=c_y, c_o=c_o,
        belief_index=np.zeros(n, dtype=int),
        residuals=residuals,
        terminal_kind=terminal,
        endowments=endowments,
        balanced_from=endowments.balanced_from,
    )


def solve_scenario(params: EconomyParams,
                   schedule: BeliefSchedule,
                   realized: EndowmentPath,
                   terminals: Sequence[TerminalKind | str],
                   T: int,
                   tol: float | None = None,
                   seed_pad: int | None = None) -> EquilibriumPath:
    """Equilibrium under a sequence of belief revisions.

    Solves a full path per announced belief and reports, at each date, the
    values of the belief active there. Prices and rents are belief
    consistent; the interest rate and present-value prices are realized
    (across a revision date, R uses the post-revision expenditure, which is
    where the one-time surprise shows). ``terminals`` gives the long-run
    kind per announcement.
    """
    announcements = schedule.announcements
    if len(terminals) != len(announcements):
        raise DomainError(
            f"got {len(terminals)} terminal kinds for {len(announcements)} announcements"
        )
    if announcements[-1][0] > T:
        raise HorizonError("last announcement lies beyond the horizon")

    bounds = [a for a, _ in announcements] + [T + 1]
    for k, (a_k, believed) in enumerate(announcements):
        until = min(bounds[k + 1], T + 1)
        for t in range(0, until):
            by, ry = believed.young(t), realized.young(t)
            bo, ro = believed.old(t), realized.old(t)
            if not (math.isclose(by, ry, rel_tol=1e-12) and math.isclose(bo, ro, rel_tol=1e-12)):
                raise DomainError(
                    f"belief announced at {a_k} disagrees with realized endowments "
                    f"at date {t} (believed ({by:.6g}, {bo:.6g}), realized ({ry:.6g}, {ro:.6g}))"
                )

    paths = [
        solve_path(params, believed, terminals[k], T, tol=tol, seed_pad=seed_pad)
        for k, (_, believed) in enumerate(announcements)
    ]
    log.debug("solve_scenario: %d beliefs over horizon %d", len(paths), T)

    n = T + 1
    active = np.zeros(n, dtype=int)
    for k, (a_k, _) in enumerate(announcements):
        active[a_k:] = k

    def pick(attr: str) -> np.ndarray:
        out = np.empty(n)
        for t in range(n):
            out[t] = getattr(paths[active[t]], attr)[t]
        return out

    e_y = pick("e_y")
    e_o = pick("e_o")
    S = pick("S")
    s = pick("s")
    P = pick("P")
    r = pick("r")
    c_y = pick("c_y")
    c_o = pick("c_o")
    residuals = pick("residuals")
    R = np.empty(n)
    for t in range(n - 1):
        R[t] = S[t + 1] / P[t]
    R[T] = paths[active[T]].R[T]
    q = np.empty(n)
    q[0] = 1.0
    for t in range(n - 1):
        q[t + 1] = q[t] / R[t]
    return EquilibriumPath(
        e_y=e_y, e_o=e_o, S=S, s=s, P=P, r=r, R=R, q=q,
        c_y=c_y, c_o=c_o,
        belief_index=active,
        residuals=residuals,
        terminal_kind=TerminalKind(terminals[-1]),
        endowments=realized,
        balanced_from=realized.balanced_from,
        revision_dates=tuple(a for a, _ in announcements[1:]),
    )
