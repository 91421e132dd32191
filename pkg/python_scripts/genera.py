"""
Localization generating series of the framed moduli on P^2 and on its blow-up.

    Z(q, y)    = sum_n q^(2rn) sum_{Y, |Y|=n} Theta(T_Y)
    Zhat(q, y) = sum_{(Y, Z, k)} q^(2r sum(|Y|+|Z|) + sum_{i<j}(k_i-k_j)^2) Theta(T_(Y,Z,k))

In equivariant mode every tangent weight gets its theta factor at the chosen
specialization; in limit mode the e-variables are sent to zero in order first.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, NamedTuple, Optional

from characters import IDENTITY, Character, tangent_blowup, tangent_p2, theta_eval, theta_limit_factor
from coefficients import Specialization
from config import CONVENTIONS, SCHEMA_VERSION
from fixed_point_cache import FixedPointCache, blowup_points, p2_points
from qseries import QSeries
from rank1 import WRequest, w_series


class Mode(str, Enum):
    EQUIVARIANT = "equivariant"
    LIMIT = "limit"


@dataclass(frozen=True)
class SeriesRequest:
    rank: int
    max_n: int
    spec: Specialization
    mode: Mode = Mode.EQUIVARIANT
    k: int = 0

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"Rank must be at least 1, got {self.rank}")
        if not 0 <= self.k < self.rank:
            raise ValueError(f"k must satisfy 0 <= k < r, got k={self.k}, r={self.rank}")
        if self.max_n < 0:
            raise ValueError(f"max_n must be non-negative, got {self.max_n}")
        if self.spec.rank != self.rank:
            raise ValueError(
                f"Specialization has {self.spec.rank} framing parameters, rank is {self.rank}"
            )

    @property
    def z_order(self) -> int:
        """Exclusive q-order up to which Z is complete."""
        return 2 * self.rank * (self.max_n + 1)

    @property
    def zhat_offset(self) -> int:
        return self.k * (self.rank - self.k)

    @property
    def zhat_order(self) -> int:
        return self.z_order + self.zhat_offset


class SeriesResult(NamedTuple):
    series: QSeries
    counts: Dict[int, int]  # q-exponent -> number of fixed points
    elapsed: float


def _evaluator(mode: Mode):
    return theta_limit_factor if mode == Mode.LIMIT else theta_eval


def _localize(points_by_exponent, tangent, spec, mode, order, offset, threads, mutation=None):
    evaluate = _evaluator(mode)
    field = spec.field

    def contribution(point):
        character = tangent(point)
        if mutation is not None:
            character = mutation(character)
        return evaluate(character, spec)

    start = time.perf_counter()
    terms = {}
    counts = {}
    executor = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for exponent, points in points_by_exponent:
            values = executor.map(contribution, points) if executor else map(contribution, points)
            total = field.zero
            for value in values:
                total = total + value
            terms[exponent] = total
            counts[exponent] = len(points)
    finally:
        if executor:
            executor.shutdown()
    elapsed = time.perf_counter() - start
    return QSeries.from_terms(field, terms, order, offset=offset), counts, elapsed


def compute_z(req: SeriesRequest, cache: Optional[FixedPointCache] = None, threads: int = 1) -> SeriesResult:
    r = req.rank
    points_by_exponent = [(2 * r * n, p2_points(r, n, cache)) for n in range(req.max_n + 1)]
    series, counts, elapsed = _localize(
        points_by_exponent, tangent_p2, req.spec, req.mode, req.z_order, 0, threads
    )
    logging.info(
        f"Z computed: r={r}, max_n={req.max_n}, mode={req.mode.value}, "
        f"seed={req.spec.seed}, {sum(counts.values())} fixed points in {elapsed:.2f}s"
    )
    return SeriesResult(series, counts, elapsed)


def compute_zhat(
    req: SeriesRequest,
    cache: Optional[FixedPointCache] = None,
    threads: int = 1,
    mutation: Optional[Callable[[Character], Character]] = None,
) -> SeriesResult:
    """Zhat with every blow-up tangent character passed through `mutation` if given."""
    r, k = req.rank, req.k
    points_by_exponent = [
        (2 * r * n + req.zhat_offset, blowup_points(r, k, n, cache)) for n in range(req.max_n + 1)
    ]
    series, counts, elapsed = _localize(
        points_by_exponent,
        tangent_blowup,
        req.spec,
        req.mode,
        req.zhat_order,
        req.zhat_offset,
        threads,
        mutation,
    )
    logging.info(
        f"Zhat computed: r={r}, k={k}, max_n={req.max_n}, mode={req.mode.value}, "
        f"seed={req.spec.seed}, {sum(counts.values())} fixed points in {elapsed:.2f}s"
    )
    return SeriesResult(series, counts, elapsed)


def z_series(req: SeriesRequest, cache=None, threads: int = 1) -> QSeries:
    return compute_z(req, cache, threads).series


def zhat_series(req: SeriesRequest, cache=None, threads: int = 1, mutation=None) -> QSeries:
    return compute_zhat(req, cache, threads, mutation).series


def z_series_limit_closed(req: SeriesRequest) -> QSeries:
    """Limit-mode Z as W(t1, t2, y, y^(r-1) q^(2r))^r."""
    if req.mode != Mode.LIMIT:
        raise ValueError("The closed form only describes the limit-mode series")
    r = req.rank
    w = w_series(WRequest(req.spec, IDENTITY, req.max_n))
    return w.dilate(2 * r, y_step=r - 1) ** r


def series_report(kind: str, req: SeriesRequest, result: SeriesResult, include_timing: bool = False) -> dict:
    report = {
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "parameters": {
            "rank": req.rank,
            "k": req.k,
            "max_n": req.max_n,
            "mode": req.mode.value,
        },
        "specialization": req.spec.to_dict(),
        "series": result.series.to_json(),
        "terms": result.series.format_terms(),
        "fixed_point_counts": {f"q^{e}": c for e, c in sorted(result.counts.items())},
        "conventions": CONVENTIONS,
    }
    if include_timing:
        report["elapsed_seconds"] = round(result.elapsed, 3)
    return report


def euler_count_mismatches(result: SeriesResult) -> List[int]:
    """Exponents where a y=1 series differs from its fixed-point count."""
    series = result.series
    return [
        e for e, count in result.counts.items() if series.coefficient(e) != series.field.from_int(count)
    ]


