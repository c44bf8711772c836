"""Configuration-driven command-line front end.

Subcommands: ``regimes`` (static classification as JSON), ``solve`` /
``scenario`` / ``credit`` (equilibrium paths as CSV plus a JSON summary
embedding the bubble and efficiency verdicts), and ``sweep`` (a regime
grid over inverse elasticity and inverse income ratio). Configs are flat
JSON files; runs are fully deterministic. With ``--out`` the CSV goes to
the file and the summary to standard output; without it, ``--format``
selects which payload is printed. Errors are reported as a single JSON
object on standard error with exit status 2.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
from dataclasses import dataclass, fields
from typing import Any, Sequence

import numpy as np

from .analytics import detect_bubble, efficiency_test, tail_growth
from .errors import ConfigError, ModelError
from .preferences import CesAggregator, HousingUtility
from .regimes import (
    EconomyParams,
    LongRunKind,
    RegimeTag,
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
    solve_path,
    solve_scenario,
)

__all__ = ["AnnouncementSpec", "RunConfig", "main"]

log = logging.getLogger(__name__)

PATH_HEADER = ["t", "e_y", "e_o", "S", "s", "P", "r", "R", "q", "c_y", "c_o",
               "belief_index"]
SWEEP_HEADER = ["gamma_inv", "w_inv", "regime", "w_f_star", "w_b_star",
                "s_star", "lambda1", "efficient_fundamental"]


# ------------------------------------------------------------------ config

@dataclass(frozen=True)
class AnnouncementSpec:
    """One belief revision: from ``effective_date`` on, detrended endowments
    are believed to be (e1, e2), announced at ``announce_date``."""

    announce_date: int
    effective_date: int
    e1: float
    e2: float


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _get_float(data: dict, key: str, *, required: bool = False,
               default: float | None = None, minimum: float | None = None,
               exclusive: bool = True, maximum: float | None = None) -> float | None:
    if key not in data:
        if required:
            raise ConfigError(key, "missing required key")
        return default
    value = data[key]
    if value is None and not required:
        return default
    if not _is_number(value) or not math.isfinite(value):
        raise ConfigError(key, f"expected a finite number, got {value!r}")
    value = float(value)
    if minimum is not None and (value <= minimum if exclusive else value < minimum):
        bound = "above" if exclusive else "at least"
        raise ConfigError(key, f"must be {bound} {minimum}, got {value}")
    if maximum is not None and value >= maximum:
        raise ConfigError(key, f"must be below {maximum}, got {value}")
    return value


def _get_int(data: dict, key: str, *, required: bool = False,
             default: int | None = None, minimum: int | None = None) -> int | None:
    if key not in data:
        if required:
            raise ConfigError(key, "missing required key")
        return default
    value = data[key]
    if value is None and not required:
        return default
    if not isinstance(value, int) or isinstance(value, bool):
        raise ConfigError(key, f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ConfigError(key, f"must be at least {minimum}, got {value}")
    return value


_TERMINAL_NAMES = tuple(k.value for k in TerminalKind)

_KNOWN_KEYS = {
    "beta", "sigma", "gamma", "m", "G", "e1", "e2",
    "T", "tail_window", "tol", "seed_pad", "delta",
    "terminal", "fundamental_seed", "announcements", "terminals",
    "lambda",
    "gamma_inv_min", "gamma_inv_max", "w_inv_min", "w_inv_max", "resolution",
}


@dataclass(frozen=True)
class RunConfig:
    """Validated flat configuration for one run."""

    beta: float | None = None
    sigma: float | None = None
    gamma: float | None = None
    m: float | None = None
    G: float | None = None
    e1: float | None = None
    e2: float | None = None
    T: int = 200
    tail_window: int = 20
    tol: float | None = None
    seed_pad: int | None = None
    delta: float = 1e-3
    terminal: str | None = None
    fundamental_seed: str = "zero"
    announcements: tuple[AnnouncementSpec, ...] | None = None
    terminals: tuple[str | None, ...] | None = None
    loan_ratio: float | None = None
    gamma_inv_min: float | None = None
    gamma_inv_max: float | None = None
    w_inv_min: float | None = None
    w_inv_max: float | None = None
    resolution: int | None = None

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigError("config", f"expected a JSON object, got {type(data).__name__}")
        unknown = sorted(set(data) - _KNOWN_KEYS)
        if unknown:
            raise ConfigError(unknown[0], "unknown configuration key")

        terminal = data.get("terminal")
        if terminal is not None and terminal not in _TERMINAL_NAMES:
            raise ConfigError("terminal", f"must be one of {_TERMINAL_NAMES}, got {terminal!r}")
        seed = data.get("fundamental_seed", "zero")
        if seed not in ("zero", "asymptote"):
            raise ConfigError("fundamental_seed",
                              f"must be 'zero' or 'asymptote', got {seed!r}")

        announcements = None
        if data.get("announcements") is not None:
            announcements = _parse_announcements(data["announcements"])
        terminals = None
        if data.get("terminals") is not None:
            raw = data["terminals"]
            if not isinstance(raw, list):
                raise ConfigError("terminals", "expected a list")
            parsed = []
            for i, entry in enumerate(raw):
                if entry is not None and entry not in _TERMINAL_NAMES:
                    raise ConfigError(f"terminals[{i}]",
                                      f"must be one of {_TERMINAL_NAMES} or null, got {entry!r}")
                parsed.append(entry)
            terminals = tuple(parsed)

        return cls(
            beta=_get_float(data, "beta", minimum=0.0, maximum=1.0),
            sigma=_get_float(data, "sigma", minimum=0.0),
            gamma=_get_float(data, "gamma", minimum=0.0),
            m=_get_float(data, "m", minimum=0.0),
            G=_get_float(data, "G", minimum=1.0),
            e1=_get_float(data, "e1", minimum=0.0),
            e2=_get_float(data, "e2", minimum=0.0),
            T=_get_int(data, "T", default=200, minimum=1),
            tail_window=_get_int(data, "tail_window", default=20, minimum=2),
            tol=_get_float(data, "tol", minimum=0.0),
            seed_pad=_get_int(data, "seed_pad", minimum=1),
            delta=_get_float(data, "delta", default=1e-3, minimum=0.0),
            terminal=terminal,
            fundamental_seed=seed,
            announcements=announcements,
            terminals=terminals,
            loan_ratio=_get_float(data, "lambda", minimum=0.0, exclusive=False),
            gamma_inv_min=_get_float(data, "gamma_inv_min", minimum=0.0),
            gamma_inv_max=_get_float(data, "gamma_inv_max", minimum=0.0),
            w_inv_min=_get_float(data, "w_inv_min", minimum=0.0),
            w_inv_max=_get_float(data, "w_inv_max", minimum=0.0),
            resolution=_get_int(data, "resolution", minimum=2),
        )

    def to_dict(self) -> dict:
        out: dict[str, Any] = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if value is None:
                continue
            key = "lambda" if f.name == "loan_ratio" else f.name
            if f.name == "announcements":
                out[key] = [
                    {"announce_date": a.announce_date, "effective_date": a.effective_date,
                     "e1": a.e1, "e2": a.e2}
                    for a in value
                ]
            elif f.name == "terminals":
                out[key] = list(value)
            else:
                out[key] = value
        return out

    def economy(self) -> EconomyParams:
        for key in ("beta", "sigma", "gamma", "m", "G", "e1", "e2"):
            if getattr(self, key) is None:
                raise ConfigError(key, "missing required key")
        try:
            return EconomyParams(
                agg=CesAggregator(beta=self.beta, sigma=self.sigma),
                housing=HousingUtility(gamma=self.gamma, m=self.m),
                G=self.G, e1=self.e1, e2=self.e2,
            )
        except ModelError as exc:
            raise ConfigError("economy", str(exc)) from exc


def _parse_announcements(raw: Any) -> tuple[AnnouncementSpec, ...]:
    if not isinstance(raw, list) or not raw:
        raise ConfigError("announcements", "expected a non-empty list")
    entries = []
    for i, item in enumerate(raw):
        where = f"announcements[{i}]"
        if not isinstance(item, dict):
            raise ConfigError(where, "expected an object")
        extra = sorted(set(item) - {"announce_date", "effective_date", "e1", "e2"})
        if extra:
            raise ConfigError(f"{where}.{extra[0]}", "unknown announcement key")
        try:
            announce = _get_int(item, "announce_date", required=True, minimum=0)
            effective = _get_int(item, "effective_date", required=True, minimum=0)
            e1 = _get_float(item, "e1", required=True, minimum=0.0)
            e2 = _get_float(item, "e2", required=True, minimum=0.0)
        except ConfigError as exc:
            raise ConfigError(f"{where}.{exc.field}", exc.message) from exc
        if effective < announce:
            raise ConfigError(f"{where}.effective_date",
                              "cannot precede its announcement date")
        entries.append(AnnouncementSpec(announce, effective, e1, e2))
    if entries[0].announce_date != 0 or entries[0].effective_date != 0:
        raise ConfigError("announcements[0]",
                          "the first announcement must be dated 0 and effective at 0")
    for i in range(1, len(entries)):
        if entries[i].announce_date <= entries[i - 1].announce_date:
            raise ConfigError(f"announcements[{i}].announce_date",
                              "announcement dates must be strictly increasing")
        if entries[i].effective_date <= entries[i - 1].effective_date:
            raise ConfigError(f"announcements[{i}].effective_date",
                              "effective dates must be strictly increasing")
    return tuple(entries)


# ------------------------------------------------------------------ helpers

def _infer_terminal(params: EconomyParams, explicit: str | None,
                    field: str = "terminal") -> TerminalKind:
    """Pick the terminal kind the regime admits, or demand an explicit one."""
    if explicit is not None:
        return TerminalKind(explicit)
    regime = classify(params)
    if regime.boundary is not None:
        raise ConfigError(field,
                          f"income ratio sits on the {regime.boundary} boundary; "
                          "specify the terminal explicitly")
    mapping = {
        RegimeTag.FUNDAMENTAL: TerminalKind.FUNDAMENTAL,
        RegimeTag.BUBBLE_NECESSITY: TerminalKind.BUBBLY,
        RegimeTag.COBB_DOUGLAS_FUNDAMENTAL: TerminalKind.GAMMA1,
        RegimeTag.PATHOLOGICAL_GAMMA_ABOVE_1: TerminalKind.GAMMA_ABOVE_1,
    }
    if regime.tag in mapping:
        return mapping[regime.tag]
    raise ConfigError(field,
                      "both fundamental and bubbly long runs exist in the "
                      "BubblePossibility regime; specify the terminal explicitly")


def _float_cell(value: float) -> str:
    return f"{value:.12g}"


def _write_path_csv(stream, path: EquilibriumPath) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(PATH_HEADER)
    for t in range(path.T + 1):
        writer.writerow([
            t,
            _float_cell(path.e_y[t]), _float_cell(path.e_o[t]),
            _float_cell(path.S[t]), _float_cell(path.s[t]),
            _float_cell(path.P[t]), _float_cell(path.r[t]),
            _float_cell(path.R[t]), _float_cell(path.q[t]),
            _float_cell(path.c_y[t]), _float_cell(path.c_o[t]),
            int(path.belief_index[t]),
        ])


def _path_rows_json(path: EquilibriumPath) -> list[dict]:
    rows = []
    for t in range(path.T + 1):
        rows.append({
            "t": t,
            "e_y": path.e_y[t], "e_o": path.e_o[t],
            "S": path.S[t], "s": path.s[t],
            "P": path.P[t], "r": path.r[t],
            "R": path.R[t], "q": path.q[t],
            "c_y": path.c_y[t], "c_o": path.c_o[t],
            "belief_index": int(path.belief_index[t]),
        })
    return rows


def _summarize_path(command: str, cfg: RunConfig, path: EquilibriumPath) -> dict:
    bubble = detect_bubble(path, delta=cfg.delta, window=cfg.tail_window)
    efficiency = efficiency_test(path, delta=cfg.delta, window=cfg.tail_window)
    summary = {
        "command": command,
        "T": path.T,
        "terminal": path.terminal_kind.value,
        "revision_dates": list(path.revision_dates),
        "max_residual": float(path.residuals.max()),
        "tail": {
            "price_growth": tail_growth(path.P, cfg.tail_window),
            "rent_growth": tail_growth(path.r, cfg.tail_window),
            "price_rent_ratio": float(path.P[-1] / path.r[-1]),
            "interest_rate": float(path.R[-1]),
        },
        "bubble": {
            "is_bubble": bubble.is_bubble,
            "ratio_estimate": bubble.ratio_estimate,
            "fundamental_value_0": bubble.fundamental_value_0,
            "bubble_component_0": bubble.bubble_component_0,
            "tvc_tail_last": float(bubble.tvc_tail[-1]),
        },
        "efficiency": {
            "is_efficient": efficiency.is_efficient.value,
            "rate_estimate": efficiency.rate_estimate,
            "applicability": efficiency.applicability.value,
        },
    }
    return summary


def _steady_state_json(rep) -> dict:
    doc = {
        "kind": rep.kind.value,
        "s_star": rep.s_star,
        "lambda1": rep.lambda1,
        "lambda2": rep.lambda2,
        "determinacy": rep.determinacy.value,
    }
    if rep.eis_condition is not None:
        c = rep.eis_condition
        doc["eis_condition"] = {
            "value": c.value, "lower_bound": c.lower_bound,
            "singular_value": c.singular_value, "holds": c.holds,
        }
    if rep.determinacy_condition is not None:
        c = rep.determinacy_condition
        doc["determinacy_condition"] = {
            "inverse_eis": c.inverse_eis, "bound": c.bound, "holds": c.holds,
        }
    if rep.warning is not None:
        doc["warning"] = rep.warning
    return doc


# ------------------------------------------------------------------ commands

def cmd_regimes(cfg: RunConfig) -> dict:
    params = cfg.economy()
    regime = classify(params)
    doc: dict[str, Any] = {
        "command": "regimes",
        "regime": regime.tag.value,
        "boundary": regime.boundary,
        "income_ratio": params.income_ratio,
        "w_f_star": None,
        "w_b_star": None,
        "steady_states": {},
        "welfare": {},
    }
    gamma = params.housing.gamma
    if gamma < 1.0:
        thr = thresholds(params)
        doc["w_f_star"] = thr.w_f_star
        doc["w_b_star"] = thr.w_b_star
        w = params.income_ratio
        if w > thr.w_f_star:
            doc["steady_states"]["fundamental"] = _steady_state_json(
                fundamental_steady_state(params))
        if w < thr.w_b_star:
            doc["steady_states"]["bubbly"] = _steady_state_json(
                bubbly_steady_state(params))
        for name, kind in (("fundamental", LongRunKind.FUNDAMENTAL_LONG_RUN),
                           ("bubbly", LongRunKind.BUBBLY_LONG_RUN)):
            try:
                doc["welfare"][name] = welfare_class(params, kind).value
            except ModelError:
                doc["welfare"][name] = None
    elif gamma == 1.0:
        doc["steady_states"]["gamma1"] = _steady_state_json(gamma1_steady_state(params))
    return doc


def cmd_solve(cfg: RunConfig) -> tuple[EquilibriumPath, dict]:
    params = cfg.economy()
    terminal = _infer_terminal(params, cfg.terminal)
    path = solve_path(params, None, terminal, cfg.T, tol=cfg.tol,
                      seed_pad=cfg.seed_pad, fundamental_seed=cfg.fundamental_seed)
    return path, _summarize_path("solve", cfg, path)


def _belief_paths(cfg: RunConfig) -> tuple[BeliefSchedule, EndowmentPath, list[TerminalKind]]:
    params = cfg.economy()
    announcements = cfg.announcements
    if announcements is None:
        raise ConfigError("announcements", "missing required key")
    if cfg.terminals is not None and len(cfg.terminals) != len(announcements):
        raise ConfigError("terminals",
                          f"got {len(cfg.terminals)} entries for "
                          f"{len(announcements)} announcements")
    G = params.G
    segments: list[Segment] = []
    beliefs: list[tuple[int, EndowmentPath]] = []
    kinds: list[TerminalKind] = []
    for k, ann in enumerate(announcements):
        segments = [s for s in segments if s.start < ann.effective_date]
        segments.append(Segment(ann.effective_date, ann.e1, ann.e2, G))
        believed = EndowmentPath(tuple(segments), cfg.T)
        beliefs.append((ann.announce_date, believed))
        explicit = cfg.terminals[k] if cfg.terminals is not None else None
        final = believed.final_params(params)
        kinds.append(_infer_terminal(final, explicit, field=f"terminals[{k}]"))
    schedule = BeliefSchedule(tuple(beliefs))
    realized = beliefs[-1][1]
    return schedule, realized, kinds


def cmd_scenario(cfg: RunConfig) -> tuple[EquilibriumPath, dict]:
    params = cfg.economy()
    schedule, realized, kinds = _belief_paths(cfg)
    path = solve_scenario(params, schedule, realized, kinds, cfg.T,
                          tol=cfg.tol, seed_pad=cfg.seed_pad)
    summary = _summarize_path("scenario", cfg, path)
    summary["beliefs"] = [
        {"announce_date": a, "balanced_from": p.balanced_from,
         "terminal": k.value}
        for (a, p), k in zip(schedule.announcements, kinds)
    ]
    return path, summary


def cmd_credit(cfg: RunConfig) -> tuple[EquilibriumPath, dict]:
    params = cfg.economy()
    if cfg.loan_ratio is None:
        raise ConfigError("lambda", "missing required key")
    transform = credit_transform(params, cfg.loan_ratio)
    terminal = _infer_terminal(transform.params, cfg.terminal)
    path = solve_path(transform.params, None, terminal, cfg.T, tol=cfg.tol,
                      seed_pad=cfg.seed_pad, fundamental_seed=cfg.fundamental_seed)
    summary = _summarize_path("credit", cfg, path)
    summary["credit"] = {
        "lambda": cfg.loan_ratio,
        "w_effective": transform.w_effective,
        "price_coefficient": transform.price_coefficient,
        "condition_holds": transform.condition_holds,
        "warning": transform.warning,
    }
    return path, summary


def _sweep_rows(cfg: RunConfig) -> list[list[str]]:
    for key in ("beta", "sigma", "m", "G", "gamma_inv_min", "gamma_inv_max",
                "w_inv_min", "w_inv_max", "resolution"):
        if getattr(cfg, key) is None:
            raise ConfigError(key, "missing required key")
    if not cfg.gamma_inv_max > cfg.gamma_inv_min:
        raise ConfigError("gamma_inv_max", "must exceed gamma_inv_min")
    if not cfg.w_inv_max > cfg.w_inv_min:
        raise ConfigError("w_inv_max", "must exceed w_inv_min")
    gamma_axis = np.linspace(cfg.gamma_inv_min, cfg.gamma_inv_max, cfg.resolution)
    w_axis = np.linspace(cfg.w_inv_min, cfg.w_inv_max, cfg.resolution)
    rows = []
    for gamma_inv in gamma_axis:
        gamma = 1.0 / float(gamma_inv)
        for w_inv in w_axis:
            w = 1.0 / float(w_inv)
            params = EconomyParams(
                agg=CesAggregator(beta=cfg.beta, sigma=cfg.sigma),
                housing=HousingUtility(gamma=gamma, m=cfg.m),
                G=cfg.G, e1=1.0, e2=w,
            )
            rows.append(_sweep_cell(params, float(gamma_inv), float(w_inv)))
    return rows


def _sweep_cell(params: EconomyParams, gamma_inv: float, w_inv: float) -> list[str]:
    regime = classify(params)
    gamma = params.housing.gamma
    w = params.income_ratio
    w_f = w_b = s_star = lambda1 = efficient = ""
    if gamma < 1.0:
        thr = regime.thresholds
        w_f = _float_cell(thr.w_f_star)
        w_b = _float_cell(thr.w_b_star)
        if regime.boundary != "w_b_star":
            rep = (bubbly_steady_state(params) if w < thr.w_b_star
                   else fundamental_steady_state(params))
            s_star = _float_cell(rep.s_star)
            lambda1 = _float_cell(rep.lambda1)
        try:
            verdict = welfare_class(params, LongRunKind.FUNDAMENTAL_LONG_RUN)
            efficient = "true" if verdict is WelfareClass.EFFICIENT else "false"
        except ModelError:
            efficient = ""
    elif gamma == 1.0:
        rep = gamma1_steady_state(params)
        s_star = _float_cell(rep.s_star)
        lambda1 = _float_cell(rep.lambda1)
        efficient = "true"
    else:
        efficient = "true"
    return [_float_cell(gamma_inv), _float_cell(w_inv), regime.tag.value,
            w_f, w_b, s_star, lambda1, efficient]


def cmd_sweep(cfg: RunConfig) -> list[list[str]]:
    return _sweep_rows(cfg)


# ------------------------------------------------------------------ entry

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="olghousing",
        description="Equilibrium laboratory for a two-period OLG housing economy",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("regimes", "classify the economy and report steady states"),
        ("solve", "solve one equilibrium path"),
        ("scenario", "solve a belief-revision scenario"),
        ("credit", "solve the credit-transformed economy"),
        ("sweep", "tabulate regimes over a parameter grid"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", required=True, help="path to a JSON config file")
        cmd.add_argument("--out", default=None, help="write the CSV payload to this file")
        cmd.add_argument("--format", choices=("csv", "json"), default="csv",
                         help="payload format when --out is not given")
    return parser


def _setup_logging() -> None:
    level_name = os.environ.get("OLG_LOG", "").lower()
    if level_name not in ("debug", "info"):
        return
    level = logging.DEBUG if level_name == "debug" else logging.INFO
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    root = logging.getLogger("olghousing")
    root.setLevel(level)
    root.addHandler(handler)


def _load_config(path: str) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"invalid JSON in {path}: {exc}") from exc
    return RunConfig.from_dict(data)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    _setup_logging()
    try:
        cfg = _load_config(args.config)
        log.info("running %s with config %s", args.command, args.config)
        if args.command == "regimes":
            _emit(json.dumps(cmd_regimes(cfg), indent=2), args.out)
        elif args.command in ("solve", "scenario", "credit"):
            runner = {"solve": cmd_solve, "scenario": cmd_scenario,
                      "credit": cmd_credit}[args.command]
            path, summary = runner(cfg)
            buffer = io.StringIO()
            _write_path_csv(buffer, path)
            if args.out is not None:
                _emit(buffer.getvalue(), args.out)
                sys.stdout.write(json.dumps(summary, indent=2) + "\n")
            elif args.format == "csv":
                sys.stdout.write(buffer.getvalue())
            else:
                summary["rows"] = _path_rows_json(path)
                sys.stdout.write(json.dumps(summary, indent=2) + "\n")
        else:
            rows = cmd_sweep(cfg)
            if args.format == "json" and args.out is None:
                docs = [dict(zip(SWEEP_HEADER, row)) for row in rows]
                sys.stdout.write(json.dumps(docs, indent=2) + "\n")
            else:
                _emit(_csv_text(SWEEP_HEADER, rows), args.out)
    except ModelError as exc:
        doc = {
            "error": type(exc).__name__,
            "field": getattr(exc, "field", None),
            "message": str(exc),
        }
        sys.stderr.write(json.dumps(doc) + "\n")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
