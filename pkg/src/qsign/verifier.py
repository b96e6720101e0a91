"""Orchestration of the full verification pipeline: brute-force sign
verdicts, bound sweeps over the Kloosterman grids, the modular validation
suite, and oracle comparison of the exact formula, with JSON/CSV artifacts.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path

from mpmath import mp, mpf

from . import arithmetic, exactformula, modularcheck
from .numerics import ErrReal, bessel_bound_checks, working_precision
from .qseries import Verdict, ZERO_EXCEPTIONS, q10_series, sign_pattern_verdict

__all__ = [
    "SignReport",
    "SweepReport",
    "ExactOracleReport",
    "PipelineConfig",
    "PipelineResult",
    "verify_conjecture",
    "run_bound_sweeps",
    "run_exact_oracle",
    "full_pipeline",
]

_VERDICT_CODE = {
    Verdict.MATCH_POSITIVE: "P",
    Verdict.MATCH_NEGATIVE: "N",
    Verdict.ZERO_EXCEPTION: "Z",
    Verdict.MISMATCH: "X",
}


@dataclass
class SignReport:
    delta: int
    n_lo: int
    n_hi: int
    verdicts: list[str]
    zero_set_found: list[int]
    mismatches: list[int]
    unexpected_zeros: list[int]
    thresholds: dict | None
    timing: dict
    passed: bool

    def to_dict(self) -> dict:
        return {
            "delta": self.delta,
            "range": [self.n_lo, self.n_hi],
            "verdicts": "".join(self.verdicts),
            "zero_set_found": self.zero_set_found,
            "mismatches": self.mismatches,
            "unexpected_zeros": self.unexpected_zeros,
            "thresholds": self.thresholds,
            "timing": self.timing,
            "pass": self.passed,
        }


def verify_conjecture(delta: int, n_max: int, threads: int = 1) -> SignReport:
    """Expand the series once, classify every index, and (when the range
    reaches the closed-form threshold) evaluate the threshold inequality."""
    if n_max < 50:
        raise ValueError("n_max must be at least 50")
    if threads < 1:
        raise ValueError("threads must be >= 1")
    timing: dict[str, float] = {}
    t0 = time.perf_counter()
    series = q10_series(delta, n_max)
    timing["series"] = round(time.perf_counter() - t0, 6)

    t0 = time.perf_counter()
    coeffs = series.coeffs

    def classify(chunk: range) -> list[Verdict]:
        return [sign_pattern_verdict(delta, n, coeffs[n]) for n in chunk]

    if threads == 1:
        verdicts = classify(range(n_max + 1))
    else:
        step = (n_max + threads) // threads
        chunks = [range(i, min(i + step, n_max + 1)) for i in range(0, n_max + 1, step)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(classify, chunks))
        verdicts = [v for part in parts for v in part]
    zero_set = [n for n, c in enumerate(coeffs) if c == 0]
    mismatches = [n for n, v in enumerate(verdicts) if v is Verdict.MISMATCH]
    unexpected = [n for n in zero_set if n not in ZERO_EXCEPTIONS[delta]]
    timing["verdicts"] = round(time.perf_counter() - t0, 6)

    thresholds = None
    paper_threshold = exactformula.PAPER_THRESHOLD[delta]
    if n_max >= paper_threshold:
        t0 = time.perf_counter()
        lhs = exactformula.threshold_lhs(delta, paper_threshold)
        thresholds = {
            "paper_threshold": paper_threshold,
            "lhs_at_threshold": mp.nstr(lhs.value, 15),
            "lhs_below_one": bool(lhs.hi < 1),
        }
        timing["threshold"] = round(time.perf_counter() - t0, 6)

    passed = not mismatches and not unexpected
    if thresholds is not None:
        passed = passed and thresholds["lhs_below_one"]
    return SignReport(
        delta=delta,
        n_lo=0,
        n_hi=n_max,
        verdicts=[_VERDICT_CODE[v] for v in verdicts],
        zero_set_found=zero_set,
        mismatches=mismatches,
        unexpected_zeros=unexpected,
        thresholds=thresholds,
        timing=timing,
        passed=passed,
    )


@dataclass
class SweepReport:
    identity_k_max: int
    bound_k_max: int
    n_samples: int
    identity_checks: int
    identity_failures: list
    weil_checks: int
    weil_failures: list
    bound_checks: int
    bound_failures: list
    bessel_checks: int
    bessel_failures: list
    negative_control_detected: bool
    rows: list = field(default_factory=list)
    timing: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (
            not self.identity_failures
            and not self.weil_failures
            and not self.bound_failures
            and not self.bessel_failures
            and self.negative_control_detected
        )

    def to_dict(self) -> dict:
        return {
            "identity_k_max": self.identity_k_max,
            "bound_k_max": self.bound_k_max,
            "n_samples": self.n_samples,
            "identity_checks": self.identity_checks,
            "identity_failures": self.identity_failures,
            "weil_checks": self.weil_checks,
            "weil_failures": self.weil_failures,
            "bound_checks": self.bound_checks,
            "bound_failures": self.bound_failures,
            "bessel_checks": self.bessel_checks,
            "bessel_failures": self.bessel_failures,
            "negative_control_detected": self.negative_control_detected,
            "timing": self.timing,
            "pass": self.passed,
        }

    def csv_rows(self) -> list[tuple]:
        return [("k", "j", "n", "abs_akj", "bound", "ok")] + self.rows


def _valid_j(d: int) -> tuple[int, ...]:
    return (1, 2, 3, 4) if d == 5 else (1, 3, 7, 9)


def _grid_k(k_max: int) -> list[int]:
    return [k for k in range(5, k_max + 1, 5)]


def run_bound_sweeps(
    k_max: int = 500,
    n_samples: int = 20,
    identity_k_max: int = 200,
    prec: int = 128,
    identity_tol: float = 1e-20,
) -> SweepReport:
    """The Kloosterman identity and bound grids.

    Identities (rewrite + reduced forms vs direct summation) run for
    k <= identity_k_max; the Weil bound and the per-j / aggregated /
    conjugated bounds run for k <= k_max; the Bessel inequality grids run
    over their stated ranges. A deliberately corrupted reduction (alpha
    off by one class) must fail, as a negative control.
    """
    timing: dict[str, float] = {}
    tol = mpf(identity_tol)

    identity_checks = 0
    identity_failures: list = []
    t0 = time.perf_counter()
    for k in _grid_k(identity_k_max):
        d = gcd(k, 10)
        for j in _valid_j(d):
            for n in range(n_samples):
                direct = arithmetic.a_kj(k, j, n, prec)
                rewrite = arithmetic.a_kj_rewrite(k, j, n, prec)
                with working_precision(prec):
                    rw_diff = (direct - rewrite).abs()
                    if d == 5:
                        reduced = arithmetic.a_kj_reduced_d5(k, j, n, prec)
                        red_diff = (direct - reduced).abs()
                    else:
                        reduced_abs = arithmetic.a_kj_reduced_d10_abs(k, j, n, prec)
                        red_diff = ErrReal(abs(direct.abs().value - reduced_abs.value), direct.abs().err + reduced_abs.err)
                identity_checks += 2
                if not rw_diff.value <= tol:
                    identity_failures.append({"kind": "rewrite", "k": k, "j": j, "n": n, "diff": float(rw_diff.value)})
                if not red_diff.value <= tol:
                    identity_failures.append({"kind": "reduced", "k": k, "j": j, "n": n, "diff": float(red_diff.value)})
    timing["identities"] = round(time.perf_counter() - t0, 3)

    weil_checks = 0
    weil_failures: list = []
    t0 = time.perf_counter()
    for k in _grid_k(k_max):
        for n in range(0, n_samples, 2):
            for m in (0, 1, 3, 10):
                weil_checks += 1
                if not arithmetic.weil_bound_check(k, n, m, prec):
                    weil_failures.append({"k": k, "n": n, "m": m})
    timing["weil"] = round(time.perf_counter() - t0, 3)

    bound_checks = 0
    bound_failures: list = []
    rows: list = []
    t0 = time.perf_counter()
    for k in _grid_k(k_max):
        d = gcd(k, 10)
        for j in _valid_j(d):
            for n in range(n_samples):
                ok = (
                    arithmetic.bound_check_d5(k, j, n, prec)
                    if d == 5
                    else arithmetic.bound_check_d10(k, j, n, prec)
                )
                bound_checks += 1
                if not ok:
                    bound_failures.append({"kind": f"d{d}", "k": k, "j": j, "n": n})
                if n < 3:
                    val = arithmetic.a_kj(k, j, n, prec)
                    with working_precision(prec):
                        absval = val.abs().value
                        bound = (
                            2 * arithmetic.divisor_count(k) * (mpf(k) / 5) ** mpf("0.5")
                            if d == 5
                            else arithmetic.divisor_count(10 * k) * (mpf(3 * k) / 5) ** mpf("0.5")
                        )
                    rows.append((k, j, n, float(absval), float(bound), ok))
        for n in range(0, n_samples, 4):
            for twisted in (False, True):
                bound_checks += 1
                if not arithmetic.aggregated_bound_check(k, n, prec, twisted=twisted):
                    bound_failures.append({"kind": "aggregated" + ("-twisted" if twisted else ""), "k": k, "n": n})
    timing["bounds"] = round(time.perf_counter() - t0, 3)

    bessel_checks = 0
    bessel_failures: list = []
    t0 = time.perf_counter()
    with working_precision(192):
        grids = (
            [mpf(i) / 100 for i in range(1, 100)],
            [1 + mpf(i) / 2 for i in range(0, 99)],
            [3 + mpf(i) / 2 for i in range(0, 115)],
        )
        for grid in grids:
            for x in grid:
                checks = bessel_bound_checks(ErrReal(x))
                bessel_checks += 1
                if not checks.all_ok():
                    bessel_failures.append({"x": float(x)})
    timing["bessel"] = round(time.perf_counter() - t0, 3)

    # negative control: corrupting alpha must break the reduction identity
    with working_precision(prec):
        direct = arithmetic.a_kj(15, 2, 1, prec)
        corrupted = arithmetic.a_kj_reduced_d5(15, 2, 1, prec, alpha_shift=1)
        control_d5 = (direct - corrupted).abs().value > mpf("1e-6")
        direct10 = arithmetic.a_kj(20, 3, 1, prec).abs()
        corrupted10 = arithmetic.a_kj_reduced_d10_abs(20, 3, 1, prec, alpha_shift=2)
        control_d10 = abs(direct10.value - corrupted10.value) > mpf("1e-6")

    return SweepReport(
        identity_k_max=identity_k_max,
        bound_k_max=k_max,
        n_samples=n_samples,
        identity_checks=identity_checks,
        identity_failures=identity_failures,
        weil_checks=weil_checks,
        weil_failures=weil_failures,
        bound_checks=bound_checks,
        bound_failures=bound_failures,
        bessel_checks=bessel_checks,
        bessel_failures=bessel_failures,
        negative_control_detected=bool(control_d5 and control_d10),
        rows=rows,
        timing=timing,
    )


@dataclass
class ExactOracleReport:
    n_lo: int
    n_hi: int
    deltas: tuple
    total: int
    rounding_matches: int
    definitive_count: int
    mismatches: list
    max_gap_plus_err: float
    timing: dict

    @property
    def oracle_passed(self) -> bool:
        return not self.mismatches and self.max_gap_plus_err < 0.5

    @property
    def all_definitive(self) -> bool:
        return self.definitive_count == self.total

    def to_dict(self) -> dict:
        return {
            "range": [self.n_lo, self.n_hi],
            "deltas": list(self.deltas),
            "total": self.total,
            "rounding_matches": self.rounding_matches,
            "definitive_count": self.definitive_count,
            "mismatches": self.mismatches,
            "max_gap_plus_err": self.max_gap_plus_err,
            "timing": self.timing,
            "pass": self.oracle_passed,
        }


def run_exact_oracle(
    n_lo: int = 10,
    n_hi: int = 300,
    deltas: tuple = (1, -1),
    prec: int = 128,
) -> ExactOracleReport:
    """Evaluate the exact formula across a range and compare the rounded
    values against the brute-force integers."""
    t0 = time.perf_counter()
    mismatches: list = []
    total = 0
    matches = 0
    definitive = 0
    worst = 0.0
    for delta in deltas:
        series = q10_series(delta, n_hi)
        for n in range(n_lo, n_hi + 1):
            ev = exactformula.c_exact(delta, n, prec=prec)
            true = series.coefficient(n)
            total += 1
            if ev.rounded == true:
                matches += 1
            else:
                mismatches.append({"delta": delta, "n": n, "rounded": ev.rounded, "true": true})
            definitive += bool(ev.definitive)
            worst = max(worst, float(ev.gap + ev.err))
    return ExactOracleReport(
        n_lo=n_lo,
        n_hi=n_hi,
        deltas=tuple(deltas),
        total=total,
        rounding_matches=matches,
        definitive_count=definitive,
        mismatches=mismatches,
        max_gap_plus_err=worst,
        timing={"total": round(time.perf_counter() - t0, 3)},
    )


@dataclass
class PipelineConfig:
    deltas: tuple = (1, -1)
    n_max: dict | None = None  # per-delta; defaults below
    sweep_k_max: int = 500
    identity_k_max: int = 200
    sweep_n_samples: int = 20
    exact_range: tuple = (10, 300)
    modular_prec: int = 256
    precision_bits: int = 128
    threads: int = 1
    output_dir: str | Path = "qsign_artifacts"

    def resolved_n_max(self, delta: int) -> int:
        defaults = {1: 2928, -1: 2233}
        if self.n_max is None:
            return defaults[delta]
        value = self.n_max.get(delta, defaults[delta]) if isinstance(self.n_max, dict) else int(self.n_max)
        return value

    def validate(self) -> None:
        if self.precision_bits < 64:
            raise ValueError("precision_bits must be >= 64")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        for delta in self.deltas:
            if delta not in (1, -1):
                raise ValueError("deltas must be +1 / -1")
            if self.resolved_n_max(delta) < 50:
                raise ValueError("n_max must be at least 50")
        lo, hi = self.exact_range
        if not (1 <= lo <= hi):
            raise ValueError("invalid exact-formula range")


@dataclass
class PipelineResult:
    exit_status: int
    phases: dict
    artifacts: list

    @property
    def passed(self) -> bool:
        return self.exit_status == 0


def _write_json(path: Path, payload) -> None:
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def full_pipeline(config: PipelineConfig) -> PipelineResult:
    """Run every phase, write the artifacts, and report per-phase success.

    Exit status 0 iff all phases pass; 3 otherwise. The exact-formula
    phase passes on oracle equality (rounded == brute force with
    gap + numeric error < 1/2); the fraction of certified-definitive
    roundings is reported separately since the Weil-type tail certificate
    sits far above 1/2 at desk-scale cutoffs.
    """
    config.validate()
    outdir = Path(config.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    phases: dict = {}
    artifacts: list = []

    for delta in config.deltas:
        report = verify_conjecture(delta, config.resolved_n_max(delta), config.threads)
        name = f"sign_delta_{delta}.json"
        _write_json(outdir / name, report.to_dict())
        artifacts.append(name)
        phases[f"verify_delta_{delta}"] = report.passed

    sweeps = run_bound_sweeps(
        k_max=config.sweep_k_max,
        n_samples=config.sweep_n_samples,
        identity_k_max=config.identity_k_max,
        prec=config.precision_bits,
    )
    _write_json(outdir / "sweeps.json", sweeps.to_dict())
    with (outdir / "sweeps.csv").open("w", encoding="utf-8") as fh:
        for row in sweeps.csv_rows():
            fh.write(",".join(str(x) for x in row) + "\n")
    artifacts += ["sweeps.json", "sweeps.csv"]
    phases["bound_sweeps"] = sweeps.passed

    modular = modularcheck.validation_suite(prec=config.modular_prec)
    _write_json(outdir / "modular.json", [r.to_dict() for r in modular])
    artifacts.append("modular.json")
    phases["modular"] = all(r.passed for r in modular)

    lo, hi = config.exact_range
    oracle = run_exact_oracle(lo, hi, config.deltas, config.precision_bits)
    _write_json(outdir / "exact_oracle.json", oracle.to_dict())
    artifacts.append("exact_oracle.json")
    phases["exact_oracle"] = oracle.oracle_passed

    failed = sorted(name for name, ok in phases.items() if not ok)
    summary = {
        "phases": phases,
        "failed_phases": failed,
        "artifacts": sorted(artifacts),
        "exact_definitive_fraction": (
            oracle.definitive_count / oracle.total if oracle.total else None
        ),
    }
    _write_json(outdir / "summary.json", summary)
    artifacts.append("summary.json")

    return PipelineResult(exit_status=0 if not failed else 3, phases=phases, artifacts=artifacts)
