"""Compare every closed form against the DP and Monte Carlo oracles.

Each comparison becomes a :class:`CheckRecord`. Records carry their own
tolerances: DP comparisons widen ``tol_abs`` by the DP's certified bound,
Monte Carlo comparisons use four standard errors. Juxtapositions of printed
formulas against derived ones are ``informational`` and never fail a run.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

from .. import multi_level as ml
from .. import two_level as tl
from ..params import WalkParams
from .dp import ModelTag, dp_expected_visits, steps_for_moment
from .mc import mc_simulate

MATCH = "match"
MISMATCH = "mismatch"
INFORMATIONAL = "informational"

MC_SIGMAS = 4.0
DP_MOMENT_TOL = 1e-10


@dataclass
class CheckRecord:
    name: str
    analytic_value: float
    oracle_value: float
    abs_err: float
    rel_err: float
    tol_abs: float
    tol_rel: float
    status: str
    note: str = ""

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class VerifyReport:
    params: WalkParams
    records: list[CheckRecord] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    @property
    def checks(self) -> list[CheckRecord]:
        return [r for r in self.records if r.status != INFORMATIONAL]

    @property
    def informational(self) -> list[CheckRecord]:
        return [r for r in self.records if r.status == INFORMATIONAL]

    @property
    def overall_pass(self) -> bool:
        return all(r.status == MATCH for r in self.checks)

    def failures(self) -> list[CheckRecord]:
        return [r for r in self.checks if r.status == MISMATCH]


def _errors(analytic: float, oracle: float) -> tuple[float, float]:
    abs_err = abs(analytic - oracle)
    scale = max(abs(analytic), abs(oracle))
    rel_err = abs_err / scale if scale > 0.0 else 0.0
    return abs_err, rel_err


def compare(name, analytic, oracle, tol_abs, tol_rel, note="") -> CheckRecord:
    abs_err, rel_err = _errors(analytic, oracle)
    ok = abs_err <= tol_abs or rel_err <= tol_rel
    return CheckRecord(name, float(analytic), float(oracle), abs_err, rel_err, tol_abs, tol_rel,
                       MATCH if ok else MISMATCH, note)


def inform(name, analytic, oracle, note="") -> CheckRecord:
    abs_err, rel_err = _errors(analytic, oracle)
    return CheckRecord(name, float(analytic), float(oracle), abs_err, rel_err, 0.0, 0.0, INFORMATIONAL, note)


def _worst(name, pairs, tol_abs, tol_rel, note="") -> CheckRecord:
    """Record the site with the largest absolute deviation."""
    label, a, o = max(pairs, key=lambda t: abs(t[1] - t[2]))
    return compare(f"{name} [worst at {label}]", a, o, tol_abs, tol_rel, note)


def _series(coeff, n_range, u) -> float:
    return math.fsum(coeff(n) * u**n for n in n_range)


WALD_LAYERS = 60


def wald_tail(params: WalkParams, m_max: int = WALD_LAYERS) -> float:
    """``|s * sum_{m > m_max} v_m|`` for the derivative values, in closed form."""
    r, s = params.r, params.s
    x = r / (r + s)
    # sum_{m>M} (m+1) x**m = x**(M+1) * ((M+2)(1-x) + x) / (1-x)**2
    tail = x ** (m_max + 1) * ((m_max + 2) * (1 - x) + x) / (1 - x) ** 2
    return s * abs(params.drift) / (r + s) ** 2 * tail


def verify(
    params: WalkParams,
    tol_abs: float = 1e-8,
    tol_rel: float = 1e-6,
    trials: int = 1_000_000,
    seed: int = 42,
    workers: int = 1,
) -> VerifyReport:
    report = VerifyReport(params)
    add = report.records.append
    p, q, r, s = params.p, params.q, params.r, params.s
    drift = params.drift

    steps = steps_for_moment(s, DP_MOMENT_TOL)
    dp2 = dp_expected_visits(ModelTag.TWO_LEVEL, params, steps)
    dpm = dp_expected_visits(ModelTag.MULTI_LEVEL, params, steps)
    mc2 = mc_simulate(ModelTag.TWO_LEVEL, params, trials, seed, workers=workers)
    mcm = mc_simulate(ModelTag.MULTI_LEVEL, params, trials, seed, workers=workers)
    report.meta = {
        "dp_steps": steps,
        "residual_bound": dp2.residual_bound,
        "moment_bound": dp2.moment_bound,
        "trials": trials,
        "seed": seed,
    }
    dp_tol = tol_abs + dp2.residual_bound
    moment_tol = tol_abs + dp2.moment_bound

    # --- two levels ---------------------------------------------------------
    for u in (0.8, 0.9, 1.0, 1.1):
        lo, hi = tl.two_level_spectrum(params).annulus
        if not lo < u < hi:
            continue
        sites = range(-200, 201)
        add(compare(f"two-level F(u) series vs closed form, u={u}",
                    tl.gf_F(params, u), _series(lambda n: tl.visit_count(params, 0, n), sites, u), tol_abs, tol_rel))
        add(compare(f"two-level G(u) series vs closed form, u={u}",
                    tl.gf_G(params, u), _series(lambda n: tl.visit_count(params, 1, n), sites, u), tol_abs, tol_rel))
    add(compare("two-level F(1)+G(1) = 1/s", tl.gf_F(params, 1.0) + tl.gf_G(params, 1.0), 1.0 / s, tol_abs, tol_rel))
    add(compare("two-level DP mass conservation", 0.0, dp2.max_mass_defect, 1e-12, 0.0))

    split = tl.layer_absorption(params)
    add(compare("two-level pi0 vs DP s*sum f", split.pi0, s * dp2.layer_sum(0), dp_tol, tol_rel))
    add(compare("two-level pi1 vs DP s*sum g", split.pi1, s * dp2.layer_sum(1), dp_tol, tol_rel))
    se0 = math.sqrt(split.pi0 * split.pi1 / trials)
    add(compare("two-level pi0 vs Monte Carlo", split.pi0, mc2.layer_fraction(0), MC_SIGMAS * se0, 0.0,
                "tolerance is 4 binomial standard errors"))

    gf = tl.layer_value_gf(params)
    paper = tl.layer_value_paper(params)
    for layer, v_gf, v_paper in ((0, gf.v0, paper.v0), (1, gf.v1, paper.v1)):
        moment = dp2.layer_moment(layer)
        add(compare(f"two-level v{layer} gf-derivative vs DP sum n*visits", v_gf, moment, moment_tol, tol_rel))
        add(inform(f"two-level v{layer} paper vs DP sum n*visits", v_paper, moment))
        add(inform(f"two-level v{layer} paper vs DP s*sum n*visits", v_paper, s * moment))
        add(inform(f"two-level v{layer} paper vs gf-derivative", v_paper, v_gf))
    add(compare("two-level v0+v1 gf-derivative = (p-q)/s^2", gf.v0 + gf.v1, drift / s**2, tol_abs, tol_rel))

    add(inform("two-level printed unit payoff vs pi0*v0+pi1*v1 (paper values)",
               tl.payoff_printed(params), tl.payoff_paper(params)))
    add(inform("two-level printed unit payoff vs pi0*v0+pi1*v1 (gf values)",
               tl.payoff_printed(params), tl.payoff_gf(params)))
    add(inform("two-level printed unit payoff vs Monte Carlo mean final position",
               tl.payoff_printed(params), mc2.mean_position))

    for layer in (0, 1):
        pairs = [(f"n={n}", tl.visit_count(params, layer, n), dp2.get(n, layer)) for n in range(-30, 31)]
        add(_worst(f"two-level visit counts layer {layer} vs DP, |n|<=30", pairs, dp_tol, 0.0))

    add(compare("two-level Wald: Monte Carlo mean final position vs (p-q)/s", drift / s, mc2.mean_position,
                MC_SIGMAS * mc2.mean_position_stderr(), 0.0, "tolerance is 4 standard errors"))

    # --- unbounded ladder --------------------------------------------------
    roots = ml.single_spectrum(params)
    for m in range(6):
        for u in (0.9, 1.0, 1.05):
            if not roots.xi2 < u < roots.xi1:
                continue
            series = _series(lambda n: ml.visit_count_multi(params, n, m), range(-300, 301), u)
            add(compare(f"multi-level G_m(u) series vs closed form, m={m}, u={u}",
                        ml.gf_Gm(params, u, m), series, tol_abs, tol_rel))
    add(compare("multi-level F(1,1) = 1/s", ml.gf_F2(params, 1.0, 1.0), 1.0 / s, tol_abs, tol_rel))
    alpha_series = math.fsum(dpm.layer_sum(m) * 0.5**m for m in range(dpm.window.m_max + 1))
    add(compare("multi-level F(1,0.5) vs DP sum alpha_m 0.5^m", ml.gf_F2(params, 1.0, 0.5), alpha_series,
                dp_tol, tol_rel))
    add(compare("multi-level DP mass conservation", 0.0, dpm.max_mass_defect, 1e-12, 0.0))

    for m in range(11):
        add(compare(f"multi-level pi_m vs DP s*alpha_m, m={m}", ml.pi_m(params, m), s * dpm.layer_sum(m),
                    dp_tol, tol_rel))
    for m in range(7):
        pi = ml.pi_m(params, m)
        se = math.sqrt(pi * (1.0 - pi) / trials)
        add(compare(f"multi-level pi_m vs Monte Carlo, m={m}", pi, mcm.layer_fraction(m), MC_SIGMAS * se, 0.0,
                    "tolerance is 4 binomial standard errors"))

    for m in range(6):
        moment = dpm.layer_moment(m)
        add(compare(f"multi-level v_m gf-derivative vs DP sum n*visits, m={m}",
                    ml.v_m_gf(params, m).value, moment, moment_tol, tol_rel))
        add(inform(f"multi-level v_m paper vs DP sum n*visits, m={m}", ml.v_m_paper(params, m).value, moment))

    add(inform("multi-level printed unit payoff vs sum pi_m v_m (paper values)",
               ml.payoff_paper_multi(params), ml.payoff_sum(params, tl.PAPER, WALD_LAYERS)))
    add(inform("multi-level printed unit payoff vs sum pi_m v_m (gf values)",
               ml.payoff_paper_multi(params), ml.payoff_sum(params, tl.GF_DERIVATIVE, WALD_LAYERS)))
    add(inform("multi-level printed unit payoff vs Monte Carlo mean final position",
               ml.payoff_paper_multi(params), mcm.mean_position))

    for m in range(6):
        pairs = [(f"n={n}", ml.visit_count_multi(params, n, m), dpm.get(n, m)) for n in range(-20, 21)]
        add(_worst(f"multi-level visit counts vs DP, m={m}, |n|<=20", pairs, dp_tol, 0.0))

    swapped = params.swapped()
    pairs = [(f"n={n},m={m}", ml.visit_count_multi(params, n, m), ml.visit_count_multi(swapped, -n, m))
             for m in range(6) for n in range(-20, 21)]
    add(_worst("multi-level duality f(n,m;p,q) = f(-n,m;q,p)", pairs, 0.0, 1e-12))
    pairs = [(f"n={n},m={m}", ml.visit_count_multi(params, n, m), ml.visit_count_multi_alternating(params, n, m))
             for m in range(6) for n in range(-20, 1)]
    add(_worst("multi-level alternating large-root sum vs reflected evaluation", pairs, 0.0, 1e-9))
    pairs = []
    for m in range(6):
        poly = ml.layer_polynomial(params, m)
        pref = r**m * roots.zeta ** (m + 1)
        for n in range(-20, 21):
            if n >= 0:
                value = pref * roots.xi2**n * poly(n)
            else:
                value = pref * roots.xi1**n * poly(-n)
            pairs.append((f"n={n},m={m}", ml.visit_count_multi(params, n, m), value))
    add(_worst("multi-level polynomial form vs binomial sum", pairs, 0.0, 1e-10))

    s_sum_v = s * math.fsum(ml.v_m_gf(params, m).value for m in range(WALD_LAYERS + 1))
    add(compare(f"multi-level Wald: s*sum_(m<={WALD_LAYERS}) v_m gf = (p-q)/s", s_sum_v, drift / s,
                1e-9 + wald_tail(params), tol_rel, "tolerance widened by the closed-form tail beyond the last level"))
    add(compare("multi-level Wald: Monte Carlo mean final position vs (p-q)/s", drift / s, mcm.mean_position,
                MC_SIGMAS * mcm.mean_position_stderr(), 0.0, "tolerance is 4 standard errors"))
    return report
