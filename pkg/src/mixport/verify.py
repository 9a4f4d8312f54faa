"""
Verification harness behind `mixport verify`.

Each suite returns a SuiteResult. Asserted suites decide the exit status;
claims under test (the converse of P1, the block-determinant inequalities and
the printed crossing formula) are reported with their findings only.
"""
import math
import warnings
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Sequence, Tuple

import numpy as np

from . import blockprops, channels, entanglement, metrics, teleport
from .channels import ChannelSpec
from .config import Config
from .density import DensityMatrix, QubitState
from .exceptions import ChannelRangeWarning

ORACLE_TOL = 1e-12
MEPS_TOL = 1e-24
CONCURRENCE_TOL = 1e-12
CROSSING_TOL = 1e-10
ENTROPY_TOL = 1e-12
AVERAGE_TOL = 1e-9
PH_TOL = 1e-10

CROSSING_P1 = (0.1, 0.2, 0.3, 0.4, 0.45)
ORDERING_P1 = (0.55, 0.6, 0.7, 0.8, 0.9)
ENTROPY_P1 = (0.05, 0.15, 0.25, 0.35, 0.4, 0.45, 0.55, 0.6, 0.7, 0.8, 0.9, 0.95)
WERNER_R = (0.0, 0.25, 0.5, 0.75, 1.0)

# Parameter grids inside each family's ordered range.
_ORACLE_PARAMS: Dict[str, Tuple[float, ...]] = {
    "mems2": (0.5, 0.6, 0.75, 0.9, 1.0),
    "mems3": (1 / 3, 0.375, 0.4, 0.45, 0.5),
    "mems4": (0.25, 0.4, 0.55, 0.7, 1.0),
    "werner": (0.0, 0.2, 1 / 3, 0.6, 1.0),
}
_ORACLE_X = (0.1, 0.3, 0.5, 0.7, 0.9)
_ORACLE_Y_FRACTION = (0.0, 0.25, 0.5, 0.75, 1.0)
_ORACLE_PHASES = (0.0, math.pi / 3, math.pi, 5 * math.pi / 4)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    asserted: bool
    passed: bool
    detail: Dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class VerifyReport:
    seed: int
    samples: int
    suites: Tuple[SuiteResult, ...]
    properties: Tuple[blockprops.PropertyReport, ...]

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites if s.asserted)

    @property
    def failed(self) -> List[str]:
        return [s.name for s in self.suites if s.asserted and not s.passed]

    def as_dict(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "samples": self.samples,
            "suites": list(self.suites),
            "properties": list(self.properties),
            "passed": self.passed,
        }


def _random_qubit(rng: np.random.Generator) -> QubitState:
    x = rng.uniform(0.0, 1.0)
    abs_y = math.sqrt(x * (1 - x)) * rng.uniform(0.0, 1.0)
    return QubitState.from_polar(x, abs_y, rng.uniform(0.0, 2 * math.pi))


def check_meps_exactness(rng: np.random.Generator, states: int = 200) -> SuiteResult:
    """Every branch of the MEPS channel returns the input exactly."""
    worst = 0.0
    for _ in range(states):
        state = _random_qubit(rng)
        run = teleport.run(state, ChannelSpec.meps())
        rho1 = state.matrix()
        for o in run.outcomes:
            worst = max(worst, math.inf if o.degenerate else metrics.hs_distance_sq(rho1, o.bob_corrected))
    return SuiteResult("meps_exactness", True, worst < MEPS_TOL, {"states": states, "max_hs_distance_sq": worst})


def _x_entries(spec: ChannelSpec) -> Tuple[float, float, complex, float, complex]:
    m = channels.channel_matrix(spec)
    return m[0, 0].real, m[1, 1].real, m[1, 2], m[2, 2].real, m[0, 3]


def _oracle_points() -> List[Tuple[ChannelSpec, QubitState]]:
    points = [(ChannelSpec.meps(), QubitState.from_polar(x, f * math.sqrt(x * (1 - x)), ph))
              for x in _ORACLE_X for f in _ORACLE_Y_FRACTION for ph in _ORACLE_PHASES]
    for family, params in _ORACLE_PARAMS.items():
        for param in params:
            spec = ChannelSpec(family, (param,))
            for x in _ORACLE_X:
                for f in _ORACLE_Y_FRACTION:
                    for ph in _ORACLE_PHASES:
                        points.append((spec, QubitState.from_polar(x, f * math.sqrt(x * (1 - x)), ph)))
    return points


def check_oracle_equivalence() -> SuiteResult:
    """
    The pipeline against the closed forms on a (family, param, x, |y|, arg y)
    grid: outcome probabilities, Bob's raw and corrected states and the
    distortion of every branch.
    """
    errors = {"probability": 0.0, "bob_raw": 0.0, "bob_corrected": 0.0, "distortion": 0.0}
    failures: Dict[str, int] = {}
    points = _oracle_points()

    for spec, state in points:
        a, b, c, d, e = _x_entries(spec)
        run = teleport.run(state, spec)
        param = spec.params[0] if spec.params else None
        rho1 = state.matrix()
        for o in run.outcomes:
            if o.degenerate:
                continue
            got = {
                "probability": abs(o.probability - teleport.outcome_probability_closed_form(state.x, a, b, o.outcome)),
                "bob_raw": float(np.max(np.abs(
                    o.bob_raw.mat - teleport.conditional_state_closed_form(state.x, state.y, a, b, c, d, e, o.outcome)))),
                "distortion": abs(metrics.hs_distance_sq(rho1, o.bob_corrected)
                                  - metrics.closed_form(spec.family, o.outcome.branch, state.x, state.y, param)),
            }
            if spec.family != "meps":
                expected = metrics.corrected_state_closed_form(spec.family, o.outcome.branch, state.x, state.y, param)
                got["bob_corrected"] = float(np.max(np.abs(o.bob_corrected.mat - expected)))
            for name, err in got.items():
                errors[name] = max(errors[name], err)
                if err > ORACLE_TOL:
                    key = f"{spec.family}:{name}"
                    failures[key] = failures.get(key, 0) + 1

    return SuiteResult(
        "oracle_equivalence", True, not failures,
        {"points": len(points), "max_abs_err": errors, "failures": failures},
    )


def _concurrence_cases() -> List[Tuple[str, ChannelSpec, float]]:
    cases = [("meps", ChannelSpec.meps(), 1.0)]
    cases += [("mems2", ChannelSpec.mems_rank2(p), p) for p in np.linspace(0.5, 1.0, 50)]
    cases += [("mems3", ChannelSpec.mems_rank3(p), max(0.0, 3 * p - 1)) for p in np.linspace(1 / 3, 0.5, 50)]
    cases += [("mems4", ChannelSpec.mems_rank4(p), max(0.0, 2 * p - 1)) for p in np.linspace(0.25, 1.0, 50)]
    cases += [("werner", ChannelSpec.werner(r), max(0.0, (3 * r - 1) / 2)) for r in np.linspace(0.0, 1.0, 50)]
    return cases


def check_concurrence_identities() -> SuiteResult:
    """C = p1 (rank 2), 3p1 - 1 (rank 3), 2p1 - 1 (rank 4), 1 (MEPS), clamped at 0."""
    worst: Dict[str, float] = {}
    for family, spec, expected in _concurrence_cases():
        err = abs(entanglement.concurrence(channels.build(spec)) - expected)
        worst[family] = max(worst.get(family, 0.0), err)
    return SuiteResult(
        "concurrence_identities", True, all(v <= CONCURRENCE_TOL for v in worst.values()),
        {"max_abs_err": worst},
    )


def check_crossing() -> SuiteResult:
    """Bisected root of D12 - D34 against the closed-form root, with the ordering on both sides."""
    max_err = 0.0
    ordered = True
    for p1 in CROSSING_P1:
        root = metrics.crossing_y2(p1)
        max_err = max(max_err, abs(metrics.bisect_crossing_y2(p1) - root))
        below, above = math.sqrt(root / 2), math.sqrt((root + 0.25) / 2)
        ordered &= metrics.d34(p1, below) <= metrics.d12(p1, below)
        ordered &= metrics.d12(p1, above) < metrics.d34(p1, above)
    return SuiteResult(
        "crossing_point", True, max_err <= CROSSING_TOL and ordered,
        {"p1": list(CROSSING_P1), "max_abs_err": max_err, "ordering_holds": ordered},
    )


def check_printed_crossing() -> SuiteResult:
    """The printed crossing formula, compared with the bisected root; reported only."""
    gaps = {p1: metrics.printed_crossing_y2(p1) - metrics.bisect_crossing_y2(p1) for p1 in CROSSING_P1}
    max_gap = max(abs(g) for g in gaps.values())
    return SuiteResult(
        "printed_crossing_formula", False, max_gap <= CROSSING_TOL,
        {"printed_minus_root": {f"{p:g}": g for p, g in gaps.items()}, "max_abs_gap": max_gap},
    )


def _monotone(values: Sequence[float]) -> bool:
    return all(b - a >= -Config.property_slack for a, b in zip(values, values[1:]))


def check_orderings() -> SuiteResult:
    """Monotonicity in |y|, the D56 < D12 < D34 ordering above p1 = 1/2, the |y| = 0 trends and the entropy orderings."""
    ys = [0.5 * i / (Config.figure_points - 1) for i in range(Config.figure_points)]
    checks: Dict[str, bool] = {}

    checks["monotone_in_abs_y"] = all(
        _monotone([f(p1, y) for y in ys])
        for f in (metrics.d12, metrics.d34, metrics.d56)
        for p1 in (0.2, 0.4, 0.6, 0.8)
    )
    checks["d56<d12<d34"] = all(
        metrics.d56(p1, y) < metrics.d12(p1, y) < metrics.d34(p1, y)
        for p1 in ORDERING_P1 for y in ys if y > 0
    )

    p1s = [i / 20 for i in range(21)]
    d12_0 = [metrics.d12(p, 0.0) for p in p1s]
    d34_0 = [metrics.d34(p, 0.0) for p in p1s]
    checks["d12_intercept"] = all(abs(v - (1 - p) ** 2 / 2) <= 1e-15 for v, p in zip(d12_0, p1s))
    checks["d34_intercept"] = all(abs(v - p ** 2 / 2) <= 1e-15 for v, p in zip(d34_0, p1s))
    checks["d12_intercept_decreasing"] = all(b < a for a, b in zip(d12_0, d12_0[1:]))
    checks["d34_intercept_increasing"] = all(b > a for a, b in zip(d34_0, d34_0[1:]))
    checks["d56_intercept_zero"] = all(metrics.d56(p, 0.0) == 0.0 for p in p1s)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ChannelRangeWarning)
        entropy = {p: [metrics.channel_linear_entropy(f, p) for f in ("mems2", "mems3", "mems4")] for p in ENTROPY_P1}
        r = [metrics.channel_linear_entropy(f, 0.5) for f in ("mems2", "mems3")]
    checks["entropy_below_half"] = all(s2 < s3 < s4 for p, (s2, s3, s4) in entropy.items() if p < 0.5)
    checks["entropy_above_half"] = all(s3 < s2 < s4 for p, (s2, s3, s4) in entropy.items() if p > 0.5)
    checks["entropy_closed_forms"] = all(
        abs(v - metrics.linear_entropy_closed_form(f, p)) <= ENTROPY_TOL
        for p, vals in entropy.items() for f, v in zip(("mems2", "mems3", "mems4"), vals)
    )
    checks["intersection_R"] = all(abs(v - 2 / 3) <= ENTROPY_TOL for v in r)

    return SuiteResult("orderings", True, all(checks.values()), {"checks": checks, "R": r})


def check_werner_average() -> SuiteResult:
    errs = {f"{r:g}": abs(metrics.werner_average_distortion(r) - metrics.werner_average_closed_form(r)) for r in WERNER_R}
    consistent = all(
        abs(metrics.d56(channels.werner_to_mems_p1(r), y) - metrics.d56_werner(r, y)) <= ORACLE_TOL
        for r in WERNER_R for y in (0.0, 0.1, 0.25, 0.5)
    )
    return SuiteResult(
        "werner_average", True, max(errs.values()) <= AVERAGE_TOL and consistent,
        {"abs_err": errs, "maximum_at_r0": metrics.werner_average_distortion(0.0), "werner_consistency": consistent},
    )


def check_peres_horodecki(rng: np.random.Generator, random_states: int = 1000) -> SuiteResult:
    """Concurrence > 0 exactly when the partial transpose has a negative eigenvalue."""
    states = [channels.build(spec) for spec in channels.catalog()]
    states += [DensityMatrix(blockprops.random_psd(rng, 4), (2, 2)) for _ in range(random_states)]
    disagreements = []
    for i, rho in enumerate(states):
        c = entanglement.concurrence(rho)
        lam = entanglement.min_pt_eigenvalue(rho)
        if (c > PH_TOL) != (lam < -PH_TOL):
            disagreements.append({"index": i, "concurrence": c, "min_pt_eigenvalue": lam})
    return SuiteResult(
        "peres_horodecki", True, not disagreements,
        {"states": len(states), "disagreements": disagreements},
    )


def check_p1_converse_witness() -> SuiteResult:
    """The fixed counterexample to the converse of P1 has a negative full-matrix eigenvalue."""
    mat, dims = blockprops.p1_converse_witness()
    report = blockprops.check_p1(mat, "converse", dims)
    return SuiteResult(
        "p1_converse_witness", True, report.violations == 1 and report.worst_margin < 0,
        {"witness": mat, "dims": dims, "min_eigenvalue": report.worst_margin},
    )


def property_reports(samples: int, seed: int, workers: int = 1) -> List[blockprops.PropertyReport]:
    """Every block property on seeded 2x2 and 2x3 block samples."""
    reports = []
    seeds = np.random.SeedSequence(seed).generate_state(len(blockprops.PROPERTY_IDS))
    for pid, child in zip(blockprops.PROPERTY_IDS, seeds):
        parts = [blockprops.run_suite(pid, samples, int(child) + k, dims, workers)
                 for k, dims in enumerate(((2, 2), (2, 3)))]
        reports.append(blockprops.merge(parts))
    return reports


def _property_suite(report: blockprops.PropertyReport) -> SuiteResult:
    return SuiteResult(
        report.property_id, report.asserted, report.holds,
        {"samples": report.samples, "violations": report.violations, "worst_margin": report.worst_margin},
    )


def run_all(seed: int = None, samples: int = None, workers: int = 1,
            progress: Callable[[str], None] = None) -> VerifyReport:
    """
    Runs every suite with a fixed seed.

    Args:
        seed: Root seed; defaults to Config.default_seed.
        samples: Random matrices per block property and dims.
        workers: Threads for the block-property suites.
        progress: Optional callback receiving each suite name before it runs.
    """
    seed = Config.default_seed if seed is None else seed
    samples = Config.default_samples if samples is None else samples
    meps_seq, ph_seq, prop_seq = np.random.SeedSequence(seed).spawn(3)
    notify = progress or (lambda name: None)

    suites = []
    for name, fn in (
        ("meps_exactness", lambda: check_meps_exactness(np.random.default_rng(meps_seq))),
        ("oracle_equivalence", check_oracle_equivalence),
        ("concurrence_identities", check_concurrence_identities),
        ("crossing_point", check_crossing),
        ("printed_crossing_formula", check_printed_crossing),
        ("orderings", check_orderings),
        ("werner_average", check_werner_average),
        ("peres_horodecki", lambda: check_peres_horodecki(np.random.default_rng(ph_seq))),
        ("p1_converse_witness", check_p1_converse_witness),
    ):
        notify(name)
        suites.append(fn())

    notify("block_properties")
    reports = property_reports(samples, int(prop_seq.generate_state(1)[0]), workers)
    suites += [_property_suite(r) for r in reports]
    return VerifyReport(seed, samples, tuple(suites), tuple(reports))
