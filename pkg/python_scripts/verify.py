"""
Verification drivers. Each check returns a VerificationReport whose dict form
is deterministic given its parameters and seeds.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence

import pandas as pd

from blowup_factor import YkRequest, yk_euler, yk_gottsche, yk_hol, yk_main
from characters import Character, l_block, limit_y_exponent, sum_characters, tangent_blowup, tangent_p2
from coefficients import SYMBOLIC, RationalField, Specialization, YMode, retry_on_degenerate
from config import (
    CONVENTIONS,
    DEFAULT_RANK1_ORDER,
    DEFAULT_RANK1_SEEDS,
    DEFAULT_SEEDS,
    DEFAULT_SUITE,
    SCHEMA_VERSION,
)
from errors import CharacterRankError, TrivialWeightError
from fixed_point_cache import FixedPointCache, blowup_points, p2_points
from genera import (
    Mode,
    SeriesRequest,
    SeriesResult,
    compute_z,
    compute_zhat,
    euler_count_mismatches,
    z_series_limit_closed,
)
from partitions import enumerate_lattice_vectors
from qseries import QSeries
from rank1 import verify_nekrasov_okounkov


@dataclass
class VerificationReport:
    check: str
    parameters: dict
    passed: bool
    details: dict = field(default_factory=dict)
    failures: List[dict] = field(default_factory=list)
    discrepancies: List[dict] = field(default_factory=list)
    timing: Optional[float] = None

    @property
    def outcome(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self, include_timing: bool = False) -> dict:
        report = {
            "schema_version": SCHEMA_VERSION,
            "check": self.check,
            "parameters": self.parameters,
            "outcome": self.outcome,
            "details": self.details,
            "failures": self.failures,
            "discrepancies": self.discrepancies,
            "conventions": CONVENTIONS,
        }
        if include_timing and self.timing is not None:
            report["elapsed_seconds"] = round(self.timing, 3)
        return report


class SeedRun(NamedTuple):
    spec: Specialization
    zhat: SeriesResult
    z: SeriesResult


def check_range(r: int, k: int, order: int) -> None:
    if r < 1:
        raise ValueError(f"Rank must be at least 1, got {r}")
    if not 0 <= k < r:
        raise ValueError(f"k must satisfy 0 <= k < r, got k={k}, r={r}")
    if order < 0:
        raise ValueError(f"Order must be non-negative, got {order}")


def check_seeds(seeds: Sequence[int]) -> None:
    if len(seeds) == 0:
        raise ValueError("At least one seed is needed")


def cutoffs(r: int, k: int, order: int):
    """Smallest diagram-weight cutoffs for Z and Zhat that cover every exponent <= order."""
    z_max_n = order // (2 * r)
    zhat_max_n = max(0, (order - k * (r - k)) // (2 * r))
    return z_max_n, zhat_max_n


def _run_seed(r, k, order, seed, y_mode, mode, cache, threads, mutation=None) -> SeedRun:
    z_max_n, zhat_max_n = cutoffs(r, k, order)

    def compute(spec: Specialization):
        zhat = compute_zhat(SeriesRequest(r, zhat_max_n, spec, mode, k), cache, threads, mutation)
        z = compute_z(SeriesRequest(r, z_max_n, spec, mode), cache, threads)
        return zhat, z

    (zhat, z), spec = retry_on_degenerate(compute, r, seed, y_mode)
    return SeedRun(spec, zhat, z)


def _parameters(r, k, order, seeds, y_mode: YMode, mode: Mode) -> dict:
    return {
        "rank": r,
        "k": k,
        "order": order,
        "seeds": list(seeds),
        "y_mode": y_mode.label,
        "mode": mode.value,
    }


def _product_failures(run: SeedRun, expected: QSeries, order: int) -> List[dict]:
    field_ = expected.field
    zhat = run.zhat.series
    product = expected * run.z.series
    return [
        {
            "seed": run.spec.seed,
            "exponent": e,
            "expected": field_.format(product.coefficient(e)),
            "computed": field_.format(zhat.coefficient(e)),
        }
        for e in zhat.mismatches(product, order + 1)
    ]


def _base_case_failures(run: SeedRun, r: int, k: int, order: int, exact_start: bool) -> List[dict]:
    """Z starts at 1; Zhat has nothing below q^(k(r-k)).

    With exact_start, Zhat must also be nonzero at q^(k(r-k)). A numeric y can
    make that coefficient vanish (y = -1 kills every lattice pair), so the
    numeric modes only check that nothing sits below it.
    """
    failures = []
    z = run.z.series
    if z.coefficient(0) != z.field.one:
        failures.append({"seed": run.spec.seed, "exponent": 0, "reason": "Z does not start at 1"})
    balanced = k * (r - k)
    lowest = run.zhat.series.truncate(order + 1).lowest_exponent()
    if lowest is not None and lowest < balanced:
        failures.append(
            {
                "seed": run.spec.seed,
                "exponent": lowest,
                "reason": f"Zhat has a term at q^{lowest}, below q^{balanced}",
            }
        )
    elif exact_start and balanced <= order and lowest != balanced:
        failures.append(
            {
                "seed": run.spec.seed,
                "exponent": balanced,
                "reason": f"Zhat starts at q^{lowest}, expected q^{balanced}",
            }
        )
    return failures


def verify_main_theorem(
    r: int,
    k: int,
    order: int,
    seeds: Sequence[int] = DEFAULT_SEEDS,
    y_mode: YMode = SYMBOLIC,
    mode: Mode = Mode.EQUIVARIANT,
    cache: Optional[FixedPointCache] = None,
    threads: int = 1,
    mutation: Optional[Callable[[Character], Character]] = None,
) -> VerificationReport:
    """Check Zhat = Y_k * Z for every exponent <= order at each seed.

    The product direction decides the outcome; Zhat * Z^-1 is compared with
    Y_k as a second check and against both y-sign conventions.
    """
    check_range(r, k, order)
    check_seeds(seeds)
    start = time.perf_counter()
    field_ = y_mode.field()
    yk_req = YkRequest(r, k, order)
    yk = yk_main(yk_req, field_)
    yk_reversed = yk_main(yk_req, field_, y_sign=-1)

    failures: List[dict] = []
    sign_matches = {"+1": True, "-1": True}
    inversion_ok = True
    specializations = []
    quotient = None
    for seed in seeds:
        run = _run_seed(r, k, order, seed, y_mode, mode, cache, threads, mutation)
        specializations.append(run.spec.to_dict())
        failures.extend(_product_failures(run, yk, order))
        failures.extend(_base_case_failures(run, r, k, order, exact_start=y_mode.symbolic))

        seed_quotient = (run.zhat.series / run.z.series).truncate(order + 1)
        if quotient is None:
            quotient = seed_quotient
        matches_plus = seed_quotient.equals_to(yk)
        sign_matches["+1"] &= matches_plus
        sign_matches["-1"] &= seed_quotient.equals_to(yk_reversed)
        inversion_ok &= matches_plus

    passed = not failures and inversion_ok
    elapsed = time.perf_counter() - start
    logging.info(
        f"Main theorem r={r}, k={k}, order={order}, mode={mode.value}: "
        f"{'pass' if passed else 'fail'} in {elapsed:.2f}s"
    )
    return VerificationReport(
        check="main_theorem",
        parameters=_parameters(r, k, order, seeds, y_mode, mode),
        passed=passed,
        details={
            "yk": yk.format_terms(),
            "quotient": quotient.format_terms() if quotient is not None else {},
            "inversion_check": inversion_ok,
            "y_sign_matches": sign_matches,
            "specializations": specializations,
        },
        failures=failures,
        timing=elapsed,
    )


def verify_corollary(
    r: int,
    k: int,
    order: int,
    seeds: Sequence[int] = DEFAULT_SEEDS,
    cache: Optional[FixedPointCache] = None,
    threads: int = 1,
) -> VerificationReport:
    """Euler (y=1) and holomorphic (y=0) specializations of the main identity."""
    check_range(r, k, order)
    check_seeds(seeds)
    start = time.perf_counter()
    yk_req = YkRequest(r, k, order)
    euler = yk_euler(yk_req)
    euler_field = euler.field
    failures: List[dict] = []

    main_at_one = yk_main(yk_req).evaluate_y(RationalField(1), 1)
    if not main_at_one.equals_to(euler):
        failures.append({"branch": "euler", "reason": "Y_k at y=1 differs from the Euler form"})

    hol = yk_hol(yk_req)
    discrepancies = []
    if not hol.agrees:
        discrepancies.append(
            {
                "branch": "chi_vir",
                "stated": hol.stated,
                "computed": hol.computed.format_terms(),
            }
        )

    count_failures = []
    for seed in seeds:
        run = _run_seed(r, k, order, seed, YMode.numeric(1), Mode.EQUIVARIANT, cache, threads)
        failures.extend(dict(f, branch="euler") for f in _product_failures(run, euler, order))
        for result in (run.z, run.zhat):
            count_failures.extend(euler_count_mismatches(result))

        run_hol = _run_seed(r, k, order, seed, YMode.numeric(0), Mode.EQUIVARIANT, cache, threads)
        failures.extend(dict(f, branch="chi_vir") for f in _product_failures(run_hol, hol.computed, order))

    if count_failures:
        failures.append(
            {"branch": "euler", "reason": f"fixed-point counts differ at q^{sorted(set(count_failures))}"}
        )

    passed = not failures
    elapsed = time.perf_counter() - start
    logging.info(f"Corollary r={r}, k={k}, order={order}: {'pass' if passed else 'fail'} in {elapsed:.2f}s")
    return VerificationReport(
        check="corollary",
        parameters=_parameters(r, k, order, seeds, YMode.numeric(1), Mode.EQUIVARIANT),
        passed=passed,
        details={
            "yk_euler": euler.format_terms(),
            "yk_at_y0": hol.computed.format_terms(),
            "chi_vir_stated": hol.stated,
            "fixed_point_counts_match": not count_failures,
            "euler_field": euler_field.name,
        },
        failures=failures,
        discrepancies=discrepancies,
        timing=elapsed,
    )


def verify_limit_consistency(
    r: int,
    k: int,
    order: int,
    seeds: Sequence[int] = DEFAULT_SEEDS,
    cache: Optional[FixedPointCache] = None,
    threads: int = 1,
) -> VerificationReport:
    """Equivariant and limit quotients Zhat/Z agree; limit Z matches W(y^(r-1) q^(2r))^r."""
    check_range(r, k, order)
    check_seeds(seeds)
    start = time.perf_counter()
    failures: List[dict] = []
    for seed in seeds:
        equivariant = _run_seed(r, k, order, seed, SYMBOLIC, Mode.EQUIVARIANT, cache, threads)
        limit = _run_seed(r, k, order, equivariant.spec.seed, SYMBOLIC, Mode.LIMIT, cache, threads)
        q_eq = equivariant.zhat.series / equivariant.z.series
        q_lim = limit.zhat.series / limit.z.series
        for e in q_eq.mismatches(q_lim, order + 1):
            failures.append(
                {
                    "seed": limit.spec.seed,
                    "exponent": e,
                    "equivariant": q_eq.field.format(q_eq.coefficient(e)),
                    "limit": q_lim.field.format(q_lim.coefficient(e)),
                }
            )

        z_max_n, _ = cutoffs(r, k, order)
        closed = z_series_limit_closed(SeriesRequest(r, z_max_n, limit.spec, Mode.LIMIT))
        for e in closed.mismatches(limit.z.series):
            failures.append({"seed": limit.spec.seed, "exponent": e, "reason": "limit Z differs from closed form"})

    passed = not failures
    elapsed = time.perf_counter() - start
    logging.info(f"Limit consistency r={r}, k={k}, order={order}: {'pass' if passed else 'fail'} in {elapsed:.2f}s")
    return VerificationReport(
        check="limit_consistency",
        parameters=_parameters(r, k, order, seeds, SYMBOLIC, Mode.LIMIT),
        passed=passed,
        failures=failures,
        timing=elapsed,
    )


def verify_gottsche(r: int, k: int, order: int) -> VerificationReport:
    check_range(r, k, order)
    start = time.perf_counter()
    req = YkRequest(r, k, order)
    main = yk_main(req)
    gottsche = yk_gottsche(req)
    failures = [
        {
            "exponent": e,
            "main": main.field.format(main.coefficient(e)),
            "gottsche": gottsche.field.format(gottsche.coefficient(e)),
        }
        for e in main.mismatches(gottsche)
    ]
    return VerificationReport(
        check="gottsche_form",
        parameters={"rank": r, "k": k, "order": order},
        passed=not failures,
        details={"yk": main.format_terms()},
        failures=failures,
        timing=time.perf_counter() - start,
    )


def verify_rank1(
    order: int,
    seeds: Sequence[int] = DEFAULT_SEEDS[:DEFAULT_RANK1_SEEDS],
    lhs_hook: Optional[Callable[[QSeries], QSeries]] = None,
) -> VerificationReport:
    """The rank one product identity at each seed, plus seed independence of the quotient."""
    if order < 0:
        raise ValueError(f"Order must be non-negative, got {order}")
    check_seeds(seeds)
    start = time.perf_counter()
    failures: List[dict] = []
    quotients = []
    specializations = []
    for seed in seeds:
        result, spec = retry_on_degenerate(
            lambda s: verify_nekrasov_okounkov(s, order, lhs_hook), 1, seed, SYMBOLIC
        )
        specializations.append(spec.to_dict())
        quotients.append(result["lhs"])
        lhs, rhs = result["lhs"], result["rhs"]
        for e in result["mismatches"]:
            failures.append(
                {
                    "seed": spec.seed,
                    "exponent": e,
                    "lhs": lhs.field.format(lhs.coefficient(e)),
                    "rhs": rhs.field.format(rhs.coefficient(e)),
                }
            )

    independent = None
    if len(quotients) >= 2:
        independent = quotients[0].equals_to(quotients[1], order + 1)
        if not independent:
            failures.append({"reason": "rank one quotient depends on the specialization"})

    passed = not failures
    elapsed = time.perf_counter() - start
    logging.info(f"Rank one identity to q^{order}: {'pass' if passed else 'fail'} in {elapsed:.2f}s")
    return VerificationReport(
        check="rank1_product",
        parameters={"rank": 1, "order": order, "seeds": list(seeds), "y_mode": SYMBOLIC.label},
        passed=passed,
        details={
            "first_failure": min((f["exponent"] for f in failures if "exponent" in f), default=None),
            "seed_independent": independent,
            "specializations": specializations,
            "quotient": quotients[0].format_terms() if quotients else {},
        },
        failures=failures,
        timing=elapsed,
    )


def l_block_y_convention(r: int, k: int, bound: int) -> VerificationReport:
    """Which displayed y-power the limit of the lattice blocks actually produces.

    For each lattice vector the y-exponent left by sum_{a,b} L_{a,b} after the
    ordered e-limit is compared with sum_{a>b} and sum_{a<b} of
    ((k_a-k_b)^2 + (k_a-k_b))/2.
    """
    check_range(r, k, bound)
    matches = {"sum_a_gt_b": True, "sum_a_lt_b": True}
    vectors = enumerate_lattice_vectors(r, k, bound)
    for kvec in vectors:
        blocks = sum_characters(
            l_block(kvec, a, b) for a in range(1, r + 1) for b in range(1, r + 1)
        )
        got = limit_y_exponent(blocks)
        gt = sum(
            ((kvec[a] - kvec[b]) ** 2 + (kvec[a] - kvec[b])) // 2
            for a in range(r)
            for b in range(r)
            if a > b
        )
        lt = sum(
            ((kvec[a] - kvec[b]) ** 2 + (kvec[a] - kvec[b])) // 2
            for a in range(r)
            for b in range(r)
            if a < b
        )
        matches["sum_a_gt_b"] &= got == gt
        matches["sum_a_lt_b"] &= got == lt

    # sum_{a>b} corresponds to y^(-sum_{i<j}(k_i-k_j)/2) in the lattice sum
    equivalent_sign = -1 if matches["sum_a_gt_b"] else (1 if matches["sum_a_lt_b"] else None)
    return VerificationReport(
        check="l_block_y_convention",
        parameters={"rank": r, "k": k, "bound": bound},
        passed=any(matches.values()),
        details={
            "vectors": len(vectors),
            "matches": matches,
            "equivalent_y_sign": equivalent_sign,
        },
    )


def verify_tangent_characters(
    max_rank: int, max_n: int, cache: Optional[FixedPointCache] = None
) -> VerificationReport:
    """Rank and isolation checks of every tangent character for r <= max_rank, n <= max_n."""
    start = time.perf_counter()
    failures: List[dict] = []
    checked: Dict[str, int] = {"p2": 0, "blowup": 0}

    def check(kind, point, build):
        try:
            build(point)
        except (CharacterRankError, TrivialWeightError) as e:
            failures.append({"kind": kind, "fixed_point": str(point), "reason": str(e)})
        checked[kind] += 1

    for r in range(1, max_rank + 1):
        for n in range(max_n + 1):
            for point in p2_points(r, n, cache):
                check("p2", point, tangent_p2)
            for k in range(r):
                for point in blowup_points(r, k, n, cache):
                    check("blowup", point, tangent_blowup)

    return VerificationReport(
        check="tangent_characters",
        parameters={"max_rank": max_rank, "max_n": max_n},
        passed=not failures,
        details={"fixed_points_checked": checked},
        failures=failures,
        timing=time.perf_counter() - start,
    )


def verify_all(
    suite=DEFAULT_SUITE,
    seeds: Sequence[int] = DEFAULT_SEEDS,
    cache: Optional[FixedPointCache] = None,
    threads: int = 1,
    rank1_order: int = DEFAULT_RANK1_ORDER,
    property_max_n: int = 4,
) -> List[VerificationReport]:
    reports = [verify_rank1(rank1_order, seeds[:DEFAULT_RANK1_SEEDS])]
    max_rank = max(r for r, _, _ in suite)
    reports.append(verify_tangent_characters(max_rank, property_max_n, cache))
    for r, k, order in suite:
        logging.info(f"Running suite entry r={r}, k={k}, order={order}")
        reports.append(verify_main_theorem(r, k, order, seeds, cache=cache, threads=threads))
        reports.append(verify_gottsche(r, k, 8 * r))
        reports.append(verify_corollary(r, k, order, seeds, cache, threads))
        reports.append(verify_limit_consistency(r, k, order, seeds[:2], cache, threads))
        reports.append(l_block_y_convention(r, k, order))
    return reports


def summary_frame(reports: Sequence[VerificationReport]) -> pd.DataFrame:
    rows = []
    for report in reports:
        params = report.parameters
        rows.append(
            {
                "check": report.check,
                "rank": params.get("rank", params.get("max_rank")),
                "k": params.get("k"),
                "order": params.get("order", params.get("bound", params.get("max_n"))),
                "seeds": len(params.get("seeds", [])),
                "outcome": report.outcome,
                "failures": len(report.failures),
                "discrepancies": len(report.discrepancies),
            }
        )
    df = pd.DataFrame(
        rows, columns=["check", "rank", "k", "order", "seeds", "outcome", "failures", "discrepancies"]
    )
    return df.astype({"rank": "Int64", "k": "Int64", "order": "Int64"})


def log_summary(reports: Sequence[VerificationReport]) -> None:
    df = summary_frame(reports)
    logging.info("Verification summary:\n" + df.to_string(index=False))
