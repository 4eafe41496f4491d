"""Command line: ``rrverify <mode> <model> [options]``.

Exit status: 0 safe, 1 violation, 2 unknown, 3 usage or configuration error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import report as rp
from .abstraction import Property, identity_abstraction
from .asyncmodel import async_abstraction, error_property, parse_async
from .baselines import ai_style_verify, delay_bounded_test, free_bfs, naive_replay
from .cpds import load_cpds
from .errors import ConfigError
from .explore import SAFE, UNKNOWN, VIOLATION, Limits, druba
from .models import BUILTINS, ModelBundle, builtin_family, load_builtin
from .unbounded import verify_unbounded

EXIT = {SAFE: 0, VIOLATION: 1, UNKNOWN: 2}
USAGE_ERROR = 3
MODES = ("verify", "test", "verify-unbounded", "compare", "oracle")


@dataclass
class RunConfig:
    mode: str
    model: str
    n: int | None = None
    abstraction: str | None = None
    error: int | None = None
    max_r: int | None = None
    max_d: int | None = None
    max_n: int = 6
    min_n: int = 2
    max_states: int | None = None
    timeout_ms: int | None = None
    out: str | None = None

    def limits(self) -> Limits:
        timeout = self.timeout_ms / 1000 if self.timeout_ms is not None else None
        return Limits(self.max_r, self.max_d, self.max_states, timeout)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _nonneg(x: str) -> int:
    v = int(x)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _error_arg(x: str) -> int:
    key, sep, val = x.partition("=")
    if key != "shared" or not sep:
        raise argparse.ArgumentTypeError("expected shared=<g>")
    return int(val)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="rrverify", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="mode", required=True)
    for mode in MODES:
        sp = sub.add_parser(mode)
        sp.add_argument("model", help=f"model file or built-in name ({', '.join(BUILTINS)})")
        sp.add_argument("--n", type=int, help="thread count for built-in models")
        sp.add_argument("--abstraction")
        sp.add_argument("--error", type=_error_arg, help="property shared != g, as shared=<g>")
        sp.add_argument("--max-r", type=_nonneg)
        sp.add_argument("--max-d", type=_nonneg)
        sp.add_argument("--max-n", type=_nonneg, default=6)
        sp.add_argument("--min-n", type=_nonneg, default=2)
        sp.add_argument("--max-states", type=_nonneg)
        sp.add_argument("--timeout-ms", type=_nonneg)
        sp.add_argument("--out", help="also write the JSON report here")
    return ap


def _file_bundle(path: Path, abstraction: str | None, error: int | None) -> ModelBundle:
    text = path.read_text()
    first = next((ln.split("#", 1)[0].split() for ln in text.splitlines()
                  if ln.split("#", 1)[0].strip()), [""])[0]
    if first == "async":
        m = parse_async(text)
        kind = abstraction or "identity"
        err = error if error is not None else m.error
        return ModelBundle(m.program, async_abstraction(m.program, kind), error_property(err, kind))
    if first == "cpds":
        m = load_cpds(text)
        kind = abstraction or "top-of-stack"
        if kind == "top-of-stack":
            abs_ = m.abstraction
            prop = Property("true", lambda a: True) if error is None else \
                Property(f"shared!={error}", lambda a: a[0] != error)
        elif kind == "identity":
            abs_ = identity_abstraction(m.program)
            prop = error_property(error, "identity")
        else:
            raise ConfigError(f"unknown abstraction {kind!r} for cpds models")
        return ModelBundle(m.program, abs_, prop)
    raise ConfigError(f"{path}: first line must be `async` or `cpds`")


def load_model(cfg: RunConfig) -> ModelBundle:
    if cfg.model in BUILTINS:
        if cfg.error is not None and cfg.model not in ("example2", "example3"):
            raise ConfigError(f"{cfg.model} has a fixed property; --error is not supported")
        try:
            return load_builtin(cfg.model, cfg.n, cfg.abstraction, cfg.error)
        except KeyError as e:
            raise ConfigError(f"unknown abstraction {e} for {cfg.model}") from None
        except ValueError as e:
            raise ConfigError(str(e)) from None
    path = Path(cfg.model)
    if not path.exists():
        raise ConfigError(f"no such model file or built-in: {cfg.model}")
    if cfg.n is not None:
        raise ConfigError("--n applies to built-in models only; use `copies` in the file")
    return _file_bundle(path, cfg.abstraction, cfg.error)


def _test_report(cfg, b, res):
    return {
        "model": cfg.model, "mode": "test", "n": b.program.n,
        "result": VIOLATION if res.found else UNKNOWN,
        "abs_states": None, "r_max": res.cell[0] if res.found else cfg.max_r,
        "d_max": res.cell[1] if res.found else cfg.max_d,
        "image_calls_total": res.image_calls, "image_calls_final_plateau": None,
        "closure_checks": 0, "time_ms": round(res.elapsed * 1000, 3),
        "witness": rp.witness_steps(res.witness),
        "reason": None if res.found else "no-bug-within-bounds",
        "cells_tried": len(res.cells_tried),
    }


def run(cfg: RunConfig) -> tuple[int, dict]:
    """Execute one configuration; return the exit status and the report."""
    if cfg.mode == "verify-unbounded":
        if cfg.model not in BUILTINS:
            raise ConfigError("verify-unbounded needs a built-in model family")
        if cfg.min_n > cfg.max_n:
            raise ConfigError("--min-n exceeds --max-n")
        load_model(RunConfig("verify", cfg.model, cfg.min_n, cfg.abstraction, cfg.error))
        family = builtin_family(cfg.model, cfg.abstraction, cfg.error)
        v = verify_unbounded(family, cfg.min_n, cfg.max_n, cfg.limits())
        last = v.per_n[max(v.per_n)]
        rep = rp.verdict_report(cfg.model, cfg.mode, max(v.per_n), last,
                                n_plateau_at=v.n_plateau_at, reason=v.reason,
                                counterexample=rp.plain(v.counterexample),
                                per_n={n: {"result": r.verdict, "abs_states": len(r.abs_states),
                                           "r_max": r.r_max, "d_max": r.d_max,
                                           "image_calls_total": r.image_calls_total}
                                       for n, r in v.per_n.items()})
        rep["result"] = v.verdict
        rep["abs_states"] = len(v.abs_states)
        rep["abstract_state_set"] = rp.plain(v.abs_states)
        rep["closure_checks"] = v.closure_checks + sum(r.closure_checks for r in v.per_n.values())
        rep["time_ms"] = round(v.elapsed * 1000, 3)
        return EXIT[v.verdict], rep

    b = load_model(cfg)
    p = b.program
    if cfg.mode == "verify":
        r = druba(p, b.abstraction, b.prop, cfg.limits())
        return EXIT[r.verdict], rp.verdict_report(cfg.model, cfg.mode, p.n, r,
                                                  abstraction=b.abstraction.name)
    if cfg.mode == "test":
        cfg.max_r = 8 if cfg.max_r is None else cfg.max_r
        cfg.max_d = 8 if cfg.max_d is None else cfg.max_d
        res = delay_bounded_test(p, b.prop, b.abstraction, cfg.max_r, cfg.max_d)
        return (1 if res.found else 2), _test_report(cfg, b, res)
    if cfg.mode == "oracle":
        cap = cfg.max_states if cfg.max_states is not None else 200_000
        res = free_bfs(p, b.prop, b.abstraction, cap)
        verdict = res.verdict
        witness = None
        if res.violation is not None:
            witness = [{"thread": None, "state": rp.plain(s)} for s in res.violation]
        rep = {"model": cfg.model, "mode": "oracle", "n": p.n, "result": verdict,
               "abs_states": len({b.abstraction.alpha(s) for s in res.states}),
               "r_max": None, "d_max": None, "image_calls_total": None,
               "image_calls_final_plateau": None, "closure_checks": 0, "time_ms": None,
               "witness": witness, "concrete_states": len(res.states),
               "reason": "max-states" if res.capped else None}
        return EXIT[verdict], rep
    if cfg.mode == "compare":
        fr = druba(p, b.abstraction, b.prop, cfg.limits(), trace=False)
        ai = ai_style_verify(p, b.abstraction, b.prop, cfg.limits())
        naive_calls = naive_replay(p, b.abstraction, [(c.r, c.d) for c in fr.checkpoints])
        rep = rp.verdict_report(cfg.model, cfg.mode, p.n, fr, abstraction=b.abstraction.name)
        rep["engines"] = {
            "frontier": {"result": fr.verdict, "image_calls": fr.image_calls_total,
                         "closure_checks": fr.closure_checks},
            "naive": {"result": None, "image_calls": naive_calls, "closure_checks": 0},
            "eager-closure": {"result": ai.verdict, "image_calls": ai.image_calls_total,
                              "closure_checks": ai.closure_checks},
        }
        return EXIT[fr.verdict], rep
    raise ConfigError(f"unknown mode {cfg.mode!r}")


def _table(rep: dict) -> str:
    rows = [("engine", "result", "image calls", "closure checks")]
    for name, e in rep["engines"].items():
        rows.append((name, str(e["result"] or "-"), str(e["image_calls"]), str(e["closure_checks"])))
    widths = [max(len(r[i]) for r in rows) for i in range(4)]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in rows)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(args.mode, args.model, args.n, args.abstraction, args.error, args.max_r,
                    args.max_d, args.max_n, args.min_n, args.max_states, args.timeout_ms,
                    args.out)
    try:
        status, rep = run(cfg)
    except (ConfigError, OSError) as e:
        print(f"rrverify: {e}", file=sys.stderr)
        return USAGE_ERROR
    text = rp.dumps(rep)
    if cfg.mode == "compare":
        print(_table(rep), file=sys.stderr)
    print(text)
    if cfg.out:
        Path(cfg.out).write_text(text + "\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
