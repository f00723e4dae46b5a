"""Command-line harness: case selection, budgets, seeds and reports.

    verify <suite>... [--n-max N] [--r-max R] [--l-max L] [--budget-steps S]
           [--budget-secs T] [--seed K] [--json PATH] [--workers W] [--force]
    verify export <case-id> <path>

Every option can also be set through CHOWFORGE_<OPTION> (e.g.
CHOWFORGE_N_MAX=2); command-line flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

from .groebner import Budget, Ideal, format_ideal, ideals_equal, parse_ideal
from .report import CaseSpec, VerificationReport, run_case

SUITES = ("intersection", "coherent", "special", "codim", "whitney", "jacobians",
          "simplicial", "lulu", "steinberg", "gamma", "sk1", "engine")
ENV_PREFIX = "CHOWFORGE_"
# feasibility envelope; larger values need --force
LIMITS = {"n_max": 3, "r_max": 2, "l_max": 4}

CC = "chowforge.cherncycles"
KV = "chowforge.kvsteinberg"
SC = "chowforge.simplicialcat"
EN = "chowforge.selfcheck"


class ConfigError(ValueError):
    pass


@dataclass
class SuiteConfig:
    suites: List[str] = field(default_factory=lambda: ["all"])
    n_max: int = 3
    r_max: int = 2
    l_max: int = 4
    budget_steps: int = 10 ** 7
    budget_secs: float = 300.0
    seed: int = 0
    output: str = "text"
    json_path: Optional[str] = None
    workers: int = 1
    force: bool = False
    soft_timeouts: bool = False

    def validate(self) -> "SuiteConfig":
        for s in self.suites:
            if s != "all" and s not in SUITES:
                raise ConfigError(f"unknown suite {s!r}; choose from {', '.join(SUITES)} or all")
        if self.n_max < 2 or self.r_max < 1 or self.l_max < 0:
            raise ConfigError("need n_max >= 2, r_max >= 1, l_max >= 0")
        if not self.force:
            for k, lim in LIMITS.items():
                if getattr(self, k) > lim:
                    raise ConfigError(f"{k}={getattr(self, k)} is outside the default envelope "
                                      f"({lim}); pass --force")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if self.workers < 1 or self.budget_steps < 1 or self.budget_secs <= 0:
            raise ConfigError("workers and budgets must be positive")
        if self.output not in ("text", "json"):
            raise ConfigError("output must be text or json")
        return self

    @property
    def selected(self) -> List[str]:
        if "all" in self.suites:
            return list(SUITES)
        return [s for s in SUITES if s in self.suites]

    def report_config(self) -> Dict:
        d = asdict(self)
        for k in ("json_path", "workers", "output"):
            d.pop(k)
        return d


# ---------------------------------------------------------------------------
# case lists

def _c(suite: str, cid: str, target: str, **params) -> CaseSpec:
    return CaseSpec(suite, cid, target, params)


def cases_intersection(cfg: SuiteConfig) -> List[CaseSpec]:
    return [_c("intersection", f"intersect/n{n}/p{p}", f"{CC}:check_intersection", n=n, p=p)
            for n in range(2, cfg.n_max + 1) for p in range(1, n)]


def cases_coherent(cfg: SuiteConfig) -> List[CaseSpec]:
    out = []
    for n in range(2, cfg.n_max + 1):
        for p in range(1, n + 1):
            if p < n:  # these need a nonempty I0
                out.append(_c("coherent", f"tricky/n{n}/p{p}", f"{CC}:check_tricky", n=n, p=p))
                out.append(_c("coherent", f"saturation/n{n}/p{p}", f"{CC}:check_saturations", n=n, p=p))
                out.append(_c("coherent", f"bottom-row/n{n}/p{p}", f"{CC}:check_bottom_row_expansion",
                              n=n, p=p))
            out.append(_c("coherent", f"codim/n{n}/p{p}", f"{CC}:check_codim", n=n, p=p))
            out.append(_c("coherent", f"avoid-identity/n{n}/p{p}", f"{CC}:check_identity_avoidance", n=n, p=p))
            out.append(_c("coherent", f"stabilization/n{n}/p{p}", f"{CC}:check_stabilization", n=n, p=p))
            out.append(_c("coherent", f"gl-invariance/n{n}/p{p}", f"{CC}:check_gl_invariance", n=n, p=p))
    # det M_{p,I} = 0 is cheap one size beyond the envelope
    for n in range(2, cfg.n_max + 2):
        out.append(_c("coherent", f"detM/n{n}", f"{CC}:check_detM", n=n))
    out.append(_c("coherent", "negative-control/n2/p1", f"{CC}:check_negative_control", n=2, p=1))
    return out


def cases_special(cfg: SuiteConfig) -> List[CaseSpec]:
    out = []
    # the L relations are pure matrix identities; one level above r_max
    for r in range(1, cfg.r_max + 2):
        for j in range(r + 1):
            out.append(_c("special", f"rels1/n2/r{r}/j{j}", f"{CC}:check_rels1", n=2, r=r, j=j))
        for j in range(r if r >= 2 else 0):
            out.append(_c("special", f"rels2/n2/r{r}/j{j}", f"{CC}:check_rels2", n=2, r=r, j=j))
        out.append(_c("special", f"stabL/n2/r{r}", f"{CC}:check_stabL", n=2, r=r))
    for kind in ("C", "theta"):
        for r in range(1, cfg.r_max + 1):
            for j in range(r + 1):
                out.append(_c("special", f"special/{kind}/n2/r{r}/j{j}", f"{CC}:check_special",
                              kind=kind, n=2, r=r, j=j))
    return out


def cases_codim(cfg: SuiteConfig) -> List[CaseSpec]:
    out = []
    for r in range(1, cfg.r_max + 1):
        for p in (1, 2):
            out.append(_c("codim", f"codim-dominance/n2/r{r}/p{p}", f"{CC}:check_codim_dominance",
                          n=2, r=r, p=p, seed=cfg.seed))
            out.append(_c("codim", f"unit-avoidance/n2/r{r}/p{p}", f"{CC}:check_unit_avoidance",
                          n=2, r=r, p=p))
    return out


def cases_whitney(cfg: SuiteConfig) -> List[CaseSpec]:
    return [_c("whitney", f"whitney/n2/q{q}/r1", f"{CC}:check_whitney", n=2, q=q, r=1) for q in (0, 1, 2)]


def cases_jacobians(cfg: SuiteConfig) -> List[CaseSpec]:
    return [_c("jacobians", "gl/n2/r2", f"{CC}:check_gl_jacobian", n=2, r=2, l0=1),
            _c("jacobians", "sl/n2/r1", f"{CC}:check_sl_jacobian", n=2, r=1, l0=1)]


def cases_simplicial(cfg: SuiteConfig) -> List[CaseSpec]:
    out = []
    for l in range(0, cfg.l_max + 1):
        for a in range(l + 1):
            if l >= 1:
                out.append(_c("simplicial", f"ez1/l{l}/a{a}", f"{SC}:check_ez1", a=a, b=l - a))
            out.append(_c("simplicial", f"aw/l{l}/a{a}", f"{SC}:check_aw", a=a, b=l - a))
        if l >= 1:
            out.append(_c("simplicial", f"diag-cx/l{l}", f"{SC}:check_diag_cx", l=l))
        out.append(_c("simplicial", f"psi-counts/l{l}", f"{SC}:check_psi_counts", l=l))
        out.append(_c("simplicial", f"htpy/l{l}", f"{SC}:check_htpy", l=l))
    return out


def cases_lulu(cfg: SuiteConfig) -> List[CaseSpec]:
    out = [
        _c("lulu", "mu-det/n2/m1", f"{KV}:check_mu_det", n=2, m=1),
        _c("lulu", "mu-det/n2/m3", f"{KV}:check_mu_det", n=2, m=3),
        _c("lulu", "h-at-zero/n2", f"{KV}:check_h_at_zero", n=2),
        _c("lulu", "h-identity-quads/n2", f"{KV}:check_h_identity_quads", n=2),
        _c("lulu", "h-det/n2", f"{KV}:check_h_det", n=2),
        _c("lulu", "h-stabilization/n2", f"{KV}:check_h_stabilization", n=2),
        _c("lulu", "mu-fibers/n2/m3", f"{KV}:check_mu_fibers", n=2, m=3, seed=cfg.seed, samples=3),
        _c("lulu", "mu-surjective/n2/m1", f"{KV}:check_mu_fibers", n=2, m=1, seed=cfg.seed, samples=5),
        _c("lulu", "h-fibers/n2/t1", f"{KV}:check_h_fibers", n=2, t_value=1, seed=cfg.seed),
        _c("lulu", "h-fibers/n2/t2", f"{KV}:check_h_fibers", n=2, t_value=2, seed=cfg.seed),
        _c("lulu", "lambda-restr/n2/r2", f"{KV}:check_lambda_restr", n=2, r=2),
        _c("lulu", "lambda-identity/n2/r2", f"{KV}:check_lambda_identity_boundary", n=2, r=2),
        _c("lulu", "lambda-hand/n2/r2", f"{KV}:check_lambda_hand", n=2, r=2),
        _c("lulu", "lambda-flatness/n2/r2", f"{KV}:check_lambda_flatness", n=2, r=2, seed=cfg.seed),
    ]
    if cfg.n_max >= 3:
        out += [_c("lulu", "mu-det/n3/m1", f"{KV}:check_mu_det", n=3, m=1),
                _c("lulu", "mu-det/n3/m2", f"{KV}:check_mu_det", n=3, m=2),
                _c("lulu", "h-at-zero/n3", f"{KV}:check_h_at_zero", n=3)]
    for r in range(1, cfg.r_max + 1):
        for mode in ("formal", "expanded"):
            for inputs in ("generic", "honest"):
                tag = f"n2/r{r}/{mode}/{inputs}"
                out.append(_c("lulu", f"lambda-htpy-ii/{tag}", f"{KV}:b2_item_ii", n=2, r=r, mode=mode, inputs=inputs))
                out.append(_c("lulu", f"lambda-htpy-iii/{tag}", f"{KV}:b2_item_iii", n=2, r=r, mode=mode, inputs=inputs))
                if r >= 2:
                    out.append(_c("lulu", f"lambda-htpy-iv/{tag}", f"{KV}:b2_item_iv", n=2, r=r, mode=mode, inputs=inputs))
    return out


def cases_sk1(cfg: SuiteConfig) -> List[CaseSpec]:
    return [_c("sk1", f"{name}/n2/{mode}", f"{KV}:sk1_{name}", n=2, mode=mode)
            for name in ("g", "F") for mode in ("formal", "expanded")]


def cases_steinberg(cfg: SuiteConfig) -> List[CaseSpec]:
    out = [_c("steinberg", f"comm/{s}", f"{KV}:check_comm", spec=s) for s in ("generic", "one", "inverse")]
    out.append(_c("steinberg", "palpha/det", f"{KV}:check_palpha_det"))
    out.append(_c("steinberg", "palpha/unit", f"{KV}:check_palpha_unit"))
    return out


def cases_gamma(cfg: SuiteConfig) -> List[CaseSpec]:
    return [_c("gamma", f"item{k}", f"{KV}:gamma_item{k}") for k in range(1, 8)]


def cases_engine(cfg: SuiteConfig) -> List[CaseSpec]:
    return [
        _c("engine", "gb-idempotence", f"{EN}:check_gb_idempotence", seed=cfg.seed),
        _c("engine", "membership-oracle", f"{EN}:check_membership_oracle", seed=cfg.seed),
        _c("engine", "monomial-dim", f"{EN}:check_monomial_dim", seed=cfg.seed),
        _c("engine", "det-agreement", f"{EN}:check_det_agreement", max_size=5, seed=cfg.seed),
    ]


CASE_BUILDERS: Dict[str, Callable[[SuiteConfig], List[CaseSpec]]] = {
    "intersection": cases_intersection, "coherent": cases_coherent, "special": cases_special,
    "codim": cases_codim, "whitney": cases_whitney, "jacobians": cases_jacobians,
    "simplicial": cases_simplicial, "lulu": cases_lulu, "steinberg": cases_steinberg,
    "gamma": cases_gamma, "sk1": cases_sk1, "engine": cases_engine,
}


def build_cases(cfg: SuiteConfig) -> List[CaseSpec]:
    out = []
    for s in cfg.selected:
        out += CASE_BUILDERS[s](cfg)
    return out


# ---------------------------------------------------------------------------
# running

def _run_one(args):
    spec, budget, seed = args
    return run_case(spec, budget, seed)


def run(cfg: SuiteConfig, progress: Optional[Callable[[object], None]] = None) -> VerificationReport:
    cfg.validate()
    cases = build_cases(cfg)
    budget = Budget(cfg.budget_steps, cfg.budget_secs)
    jobs = [(c, budget, cfg.seed) for c in cases]
    report = VerificationReport(cfg.report_config())
    if cfg.workers == 1:
        for job in jobs:
            rec = _run_one(job)
            report.records.append(rec)
            if progress:
                progress(rec)
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            # map keeps submission order, so the report does not depend on scheduling
            for rec in pool.map(_run_one, jobs):
                report.records.append(rec)
                if progress:
                    progress(rec)
    return report


# ---------------------------------------------------------------------------
# ideal export

def export_ideal(case_id: str) -> Ideal:
    """Ideals by id: a|b|Afrak|Sigma:n:p, C:n:r:p, theta:n:r:q (GL localization)."""
    from . import cherncycles as cc
    parts = case_id.split(":")
    try:
        kind, nums = parts[0], [int(x) for x in parts[1:]]
    except ValueError:
        raise KeyError(f"unknown case id {case_id!r}") from None
    makers = {"a": (cc.ideal_a, 2), "b": (cc.ideal_b, 2), "Afrak": (cc.ideal_Afrak, 2),
              "Sigma": (cc.ideal_Sigma, 2), "C": (cc.chern_cycle_ideal, 3),
              "theta": (cc.theta_cycle_ideal, 3)}
    if kind not in makers or len(nums) != makers[kind][1]:
        raise KeyError(f"unknown case id {case_id!r}")
    try:
        return makers[kind][0](*nums)
    except ValueError as e:
        raise KeyError(f"bad parameters in {case_id!r}: {e}") from None


def write_ideal(case_id: str, path: str) -> Ideal:
    I = export_ideal(case_id)
    text = format_ideal(I)
    with open(path, "w") as fh:
        fh.write(text)
    back = parse_ideal(text)
    if back.ring != I.ring or not ideals_equal(back, I):
        raise RuntimeError("exported ideal does not parse back")
    return I


# ---------------------------------------------------------------------------
# argument handling

def _env_default(name: str, cast, default):
    raw = os.environ.get(ENV_PREFIX + name.upper())
    if raw is None:
        return default
    if cast is bool:
        return raw.strip().lower() in ("1", "true", "yes", "on")
    return cast(raw)


def parse_config(argv: Sequence[str]) -> SuiteConfig:
    d = SuiteConfig()
    p = argparse.ArgumentParser(prog="verify", description="Run exact verification suites.")
    p.add_argument("suites", nargs="*", help=f"suites: {', '.join(SUITES)}, all")
    p.add_argument("--n-max", type=int, default=_env_default("n_max", int, d.n_max))
    p.add_argument("--r-max", type=int, default=_env_default("r_max", int, d.r_max))
    p.add_argument("--l-max", type=int, default=_env_default("l_max", int, d.l_max))
    p.add_argument("--budget-steps", type=int, default=_env_default("budget_steps", int, d.budget_steps))
    p.add_argument("--budget-secs", type=float, default=_env_default("budget_secs", float, d.budget_secs))
    p.add_argument("--seed", type=int, default=_env_default("seed", int, d.seed))
    p.add_argument("--json", dest="json_path", default=_env_default("json", str, None),
                   help="write the JSON report here ('-' for stdout)")
    p.add_argument("--workers", type=int, default=_env_default("workers", int, d.workers))
    p.add_argument("--force", action="store_true", default=_env_default("force", bool, False))
    p.add_argument("--soft-timeouts", action="store_true",
                   default=_env_default("soft_timeouts", bool, False),
                   help="timeouts do not make the exit code nonzero")
    a = p.parse_args(list(argv))
    suites = a.suites or [s for s in _env_default("suites", str, "all").split(",") if s]
    cfg = SuiteConfig(suites=suites, n_max=a.n_max, r_max=a.r_max, l_max=a.l_max,
                      budget_steps=a.budget_steps, budget_secs=a.budget_secs, seed=a.seed,
                      output="json" if a.json_path == "-" else "text", json_path=a.json_path,
                      workers=a.workers, force=a.force, soft_timeouts=a.soft_timeouts)
    try:
        cfg.validate()
    except ConfigError as e:
        p.error(str(e))
    return cfg


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] == "export":
        if len(argv) != 3:
            print("usage: verify export <case-id> <path>", file=sys.stderr)
            return 2
        try:
            I = write_ideal(argv[1], argv[2])
        except KeyError as e:
            print(f"error: {e.args[0]}", file=sys.stderr)
            return 2
        except OSError as e:
            print(f"error: cannot write {argv[2]}: {e}", file=sys.stderr)
            return 2
        print(f"wrote {argv[1]}: {len(I.ring.free_vars)} variables, {len(I.generators)} generators")
        return 0
    cfg = parse_config(argv)
    if cfg.json_path and cfg.json_path != "-":
        try:
            open(cfg.json_path, "a").close()
        except OSError as e:
            print(f"error: cannot write {cfg.json_path}: {e}", file=sys.stderr)
            return 2
    live = cfg.output == "text"
    report = run(cfg, progress=(lambda rec: print(_line(rec), flush=True)) if live else None)
    if cfg.output == "json":
        print(report.to_json())
    else:
        c = report.counts()
        print(" ".join(f"{k}={v}" for k, v in c.items()))
        if cfg.json_path:
            with open(cfg.json_path, "w") as fh:
                fh.write(report.to_json())
    return 0 if report.ok(cfg.soft_timeouts) else 1


def _line(rec) -> str:
    note = ""
    if rec.verdict != "pass" and rec.witness:
        note = "  " + json.dumps(rec.witness, sort_keys=True)[:200]
    return f"{rec.verdict.upper():8s} {rec.suite:13s} {rec.case_id:44s} {rec.wall_ms:7d} ms{note}"


if __name__ == "__main__":
    sys.exit(main())
