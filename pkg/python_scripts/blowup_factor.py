"""
The universal blow-up factor Y_k(q, y) with Zhat = Y_k * Z.

Three presentations are built independently:

  main      prod_{n>0}(1-(q^2 y)^(rn))^-r * sum_{k_1+..+k_r=k} (q^2 y)^(s2/2) y^(s1/2)
            with s2 = sum_{i<j}(k_i-k_j)^2 and s1 = sum_{i<j}(k_i-k_j)
  gottsche  x^(r/24)/eta(x)^r * sum_{v in Z^(r-1) + (k/r)I} x^(v^t A v) y^(v^t A I),
            x = q^(2r) y^r and A upper triangular with ones on and above the diagonal
  euler     the main form at y = 1

Half-integral exponents never appear as monomials: each lattice term's q- and
y-exponents are combined into integers first and checked.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, NamedTuple

from coefficients import SYMBOLIC_FIELD, CoefficientField, RationalField
from errors import IntegralityViolation
from partitions import enumerate_lattice_vectors
from qseries import QSeries, euler_product


@dataclass(frozen=True)
class YkRequest:
    rank: int
    k: int
    order: int  # largest q-exponent included

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"Rank must be at least 1, got {self.rank}")
        if not 0 <= self.k < self.rank:
            raise ValueError(f"k must satisfy 0 <= k < r, got k={self.k}, r={self.rank}")
        if self.order < 0:
            raise ValueError(f"Order must be non-negative, got {self.order}")


def _as_exponent(value: Fraction, what: str) -> int:
    if value.denominator != 1 or value < 0:
        raise IntegralityViolation(f"{what} exponent {value} is not a non-negative integer")
    return int(value)


def lattice_theta_main(req: YkRequest, field: CoefficientField, y_sign: int = 1) -> QSeries:
    r, k, N = req.rank, req.k, req.order
    terms: Dict[int, object] = {}
    for kvec in enumerate_lattice_vectors(r, k, N):
        s2 = kvec.pair_form
        if (s2 - k * (r - k)) % (2 * r):
            raise IntegralityViolation(
                f"Lattice vector {kvec} has form {s2}, not congruent to {k * (r - k)} mod {2 * r}"
            )
        y_exp = _as_exponent(Fraction(s2 + y_sign * kvec.pair_sum, 2), f"y ({kvec})")
        terms[s2] = terms.get(s2, field.zero) + field.y_power(y_exp)
    return QSeries.from_terms(field, terms, N + 1, offset=0)


def yk_main(req: YkRequest, field: CoefficientField = SYMBOLIC_FIELD, y_sign: int = 1) -> QSeries:
    """Y_k from the lattice sum over k_1 + ... + k_r = k.

    y_sign = -1 uses y^(-s1/2) instead; reversing the lattice vector shows it
    gives the same series.
    """
    if y_sign not in (1, -1):
        raise ValueError(f"y_sign must be +1 or -1, got {y_sign}")
    r, N = req.rank, req.order
    prefactor = euler_product(2 * r, r, -r, N + 1, field)
    return prefactor * lattice_theta_main(req, field, y_sign)


def gottsche_vectors(r: int, k: int, bound: Fraction):
    """Shifted vectors v = u + (k/r)(1, ..., 1) in Q^(r-1) with v^t A v <= bound.

    v^t A v = ((sum v)^2 + sum v_i^2)/2 >= sum v_i^2 / 2, so |v_i| <= sqrt(2 bound).
    """
    shift = Fraction(k, r)
    radius = math.isqrt(math.floor(2 * bound)) + 1
    low = math.floor(-radius - shift)
    high = math.ceil(radius - shift)
    for u in itertools.product(range(low, high + 1), repeat=r - 1):
        v = tuple(x + shift for x in u)
        if quadratic_form(v) <= bound:
            yield v


def quadratic_form(v) -> Fraction:
    """v^t A v = sum_{i<=j} v_i v_j."""
    return sum((v[i] * v[j] for i in range(len(v)) for j in range(i, len(v))), Fraction(0))


def linear_form(v, r: int) -> Fraction:
    """v^t A I = sum_i v_i (r - i) for 1-based i."""
    return sum((x * (r - i) for i, x in enumerate(v, start=1)), Fraction(0))


def yk_gottsche(req: YkRequest, field: CoefficientField = SYMBOLIC_FIELD) -> QSeries:
    r, k, N = req.rank, req.k, req.order
    bound = Fraction(N, 2 * r)
    terms: Dict[int, object] = {}
    for v in gottsche_vectors(r, k, bound):
        form = quadratic_form(v)
        q_exp = _as_exponent(2 * r * form, f"q (v={v})")
        y_exp = _as_exponent(r * form + linear_form(v, r), f"y (v={v})")
        terms[q_exp] = terms.get(q_exp, field.zero) + field.y_power(y_exp)
    theta = QSeries.from_terms(field, terms, N + 1, offset=0)
    return euler_product(2 * r, r, -r, N + 1, field) * theta


def yk_euler(req: YkRequest) -> QSeries:
    """prod (1 - q^(2rn))^-r * sum q^(sum_{i<j}(k_i-k_j)^2), over the rationals."""
    field = RationalField(1)
    r, k, N = req.rank, req.k, req.order
    terms: Dict[int, object] = {}
    for kvec in enumerate_lattice_vectors(r, k, N):
        terms[kvec.pair_form] = terms.get(kvec.pair_form, field.zero) + 1
    theta = QSeries.from_terms(field, terms, N + 1, offset=0)
    return euler_product(2 * r, 0, -r, N + 1, field) * theta


class HolomorphicComparison(NamedTuple):
    stated: int
    computed: QSeries

    @property
    def agrees(self) -> bool:
        stated = QSeries.from_terms(
            self.computed.field, {0: Fraction(self.stated)}, self.computed.order, offset=0
        )
        return self.computed.equals_to(stated)


def yk_hol(req: YkRequest) -> HolomorphicComparison:
    """The holomorphic Euler characteristic branch: 1 for k = 0, else 0.

    The main form evaluated at y = 0 is returned next to the stated value; for
    0 < k < r it is q^(k(r-k)) rather than 0.
    """
    stated = 1 if req.k == 0 else 0
    computed = yk_main(req, RationalField(0))
    logging.info(
        f"Holomorphic branch r={req.rank}, k={req.k}: stated {stated}, "
        f"computed {computed.format_terms()}"
    )
    return HolomorphicComparison(stated, computed)
