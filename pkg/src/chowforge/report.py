"""Case records, the verification report, and the per-case runner."""

from __future__ import annotations

import importlib
import json
import sys
import time
import traceback
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List

from .groebner import Budget, BudgetExceeded, budget_scope

SCHEMA_VERSION = 1
VERDICTS = ("pass", "fail", "timeout", "open")


@dataclass
class Outcome:
    """What a check function returns: a verdict and a JSON-able witness."""
    verdict: str
    witness: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"bad verdict {self.verdict}")


def outcome(ok: bool, **witness) -> Outcome:
    return Outcome("pass" if ok else "fail", witness)


@dataclass
class CaseSpec:
    suite: str
    case_id: str
    target: str  # "module:function"
    params: Dict[str, Any] = field(default_factory=dict)


@dataclass
class CaseRecord:
    suite: str
    case_id: str
    params: Dict[str, Any]
    verdict: str
    wall_ms: int
    gb_stats: Dict[str, int]
    witness: Dict[str, Any]
    seed: int


def resolve(target: str) -> Callable[..., Outcome]:
    mod, fn = target.split(":")
    return getattr(importlib.import_module(mod), fn)


def clear_caches() -> None:
    """Drop memoized results so a case's gb_stats do not depend on run order."""
    for name, mod in list(sys.modules.items()):
        if not name.startswith("chowforge.") or mod is None:
            continue
        for obj in vars(mod).values():
            if callable(getattr(obj, "cache_clear", None)):
                obj.cache_clear()


def run_case(spec: CaseSpec, budget: Budget, seed: int) -> CaseRecord:
    """Run one case under its own budget; never raises."""
    fn = resolve(spec.target)
    clear_caches()
    t0 = time.perf_counter()
    with budget_scope(budget) as meter:
        try:
            out = fn(**spec.params)
            if isinstance(out, bool):
                out = outcome(out)
        except BudgetExceeded as e:
            out = Outcome("timeout", {"reason": e.reason})
        except Exception as e:  # an unexpected error is a failed case, with the trace as witness
            out = Outcome("fail", {"error": f"{type(e).__name__}: {e}",
                                   "trace": traceback.format_exc(limit=4).splitlines()[-3:]})
        stats = meter.stats()
    wall = int((time.perf_counter() - t0) * 1000)
    return CaseRecord(spec.suite, spec.case_id, dict(spec.params), out.verdict, wall,
                      stats, _jsonable(out.witness), seed)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


@dataclass
class VerificationReport:
    config: Dict[str, Any]
    records: List[CaseRecord] = field(default_factory=list)
    schema: int = SCHEMA_VERSION

    def counts(self) -> Dict[str, int]:
        c = {v: 0 for v in VERDICTS}
        for r in self.records:
            c[r.verdict] += 1
        return c

    def ok(self, soft_timeouts: bool = False) -> bool:
        bad = {"fail"} if soft_timeouts else {"fail", "timeout"}
        return not any(r.verdict in bad for r in self.records)

    def to_dict(self, timing: bool = True) -> Dict[str, Any]:
        recs = []
        for r in self.records:
            d = asdict(r)
            if not timing:
                d.pop("wall_ms")
            recs.append(d)
        return {"schema": self.schema, "config": self.config, "summary": self.counts(), "cases": recs}

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = []
        for r in self.records:
            note = ""
            if r.verdict != "pass" and r.witness:
                note = "  " + json.dumps(r.witness, sort_keys=True)[:200]
            lines.append(f"{r.verdict.upper():8s} {r.suite:13s} {r.case_id:48s} {r.wall_ms:7d} ms{note}")
        c = self.counts()
        lines.append(" ".join(f"{k}={v}" for k, v in c.items()))
        return "\n".join(lines)
