"""JSON run reports."""

from __future__ import annotations

import json
from typing import Any

from .explore import VerdictReport, Witness

FIELDS = ("model", "mode", "n", "result", "abs_states", "r_max", "d_max", "image_calls_total",
          "image_calls_final_plateau", "closure_checks", "time_ms", "witness")


def plain(x: Any) -> Any:
    """Turn tuples, sets and named tuples into JSON-friendly lists."""
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted((plain(v) for v in x), key=repr)
    if isinstance(x, dict):
        return {str(k): plain(v) for k, v in x.items()}
    return x


def witness_steps(w: Witness | None) -> list[dict] | None:
    """The witness as ``{thread, state}`` entries; the first entry is the initial state."""
    if w is None:
        return None
    steps = [{"thread": None, "state": plain(w.states[0])}]
    for t, s in zip(w.schedule, w.states[1:]):
        steps.append({"thread": t, "state": plain(s)})
    return steps


def verdict_report(model: str, mode: str, n: int, rep: VerdictReport, **extra) -> dict:
    out = {
        "model": model,
        "mode": mode,
        "n": n,
        "result": rep.verdict,
        "abs_states": len(rep.abs_states),
        "r_max": rep.r_max,
        "d_max": rep.d_max,
        "image_calls_total": rep.image_calls_total,
        "image_calls_final_plateau": rep.image_calls_final_plateau,
        "closure_checks": rep.closure_checks,
        "time_ms": round(rep.elapsed * 1000, 3),
        "witness": witness_steps(rep.witness),
        "reason": rep.reason,
        "image_calls_pre_plateau": rep.image_calls_pre_plateau,
        "abstract_state_set": plain(rep.abs_states),
        "counterexample": plain(rep.counterexample),
    }
    out.update(extra)
    return out


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False)


def without_timing(report: dict) -> dict:
    """Copy of ``report`` with every ``time_ms`` field dropped, for determinism checks."""
    if isinstance(report, dict):
        return {k: without_timing(v) for k, v in report.items() if k != "time_ms"}
    if isinstance(report, list):
        return [without_timing(v) for v in report]
    return report
