"""Numerical laboratory for housing-price equilibria in a two-period OLG economy.

Computes regime thresholds, steady states and their local stability,
backward-induction equilibrium paths under fundamental and bubbly terminal
conditions, belief-revision scenarios, bubble detection, and Pareto
efficiency diagnostics, with a configuration-driven command line on top.
"""
from .analytics import (
    BubbleVerdict,
    EfficiencyBranch,
    EfficiencyVerdict,
    Verdict,
    detect_bubble,
    efficiency_test,
    tail_growth,
)
from .cli import AnnouncementSpec, RunConfig, main
from .errors import (
    ApplicabilityError,
    BranchError,
    ConfigError,
    DomainError,
    HorizonError,
    LoanError,
    ModelError,
    RegimeError,
    SolverError,
)
from .preferences import Aggregator, CesAggregator, HousingUtility
from .regimes import (
    CreditTransform,
    Determinacy,
    EconomyParams,
    LongRunKind,
    Regime,
    RegimeTag,
    SteadyStateKind,
    SteadyStateReport,
    Thresholds,
    WelfareClass,
    bubbly_steady_state,
    classify,
    credit_transform,
    fundamental_steady_state,
    gamma1_steady_state,
    thresholds,
    welfare_class,
)
from .solver import (
    BeliefSchedule,
    EndowmentPath,
    EquilibriumPath,
    Segment,
    TerminalKind,
    backward_step,
    solve_path,
    solve_scenario,
)

__version__ = "0.1.0"

__all__ = [
    "Aggregator",
    "CesAggregator",
    "HousingUtility",
    "EconomyParams",
    "Thresholds",
    "Regime",
    "RegimeTag",
    "SteadyStateKind",
    "SteadyStateReport",
    "Determinacy",
    "LongRunKind",
    "WelfareClass",
    "CreditTransform",
    "thresholds",
    "classify",
    "fundamental_steady_state",
    "bubbly_steady_state",
    "gamma1_steady_state",
    "welfare_class",
    "credit_transform",
    "Segment",
    "EndowmentPath",
    "BeliefSchedule",
    "TerminalKind",
    "EquilibriumPath",
    "backward_step",
    "solve_path",
    "solve_scenario",
    "Verdict",
    "EfficiencyBranch",
    "BubbleVerdict",
    "EfficiencyVerdict",
    "detect_bubble",
    "efficiency_test",
    "tail_growth",
    "AnnouncementSpec",
    "RunConfig",
    "main",
    "ModelError",
    "DomainError",
    "BranchError",
    "RegimeError",
    "LoanError",
    "SolverError",
    "HorizonError",
    "ApplicabilityError",
    "ConfigError",
    "__version__",
]
