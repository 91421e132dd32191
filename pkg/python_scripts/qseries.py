"""
Truncated Laurent series in q over a coefficient field.

A series stores a dense coefficient list starting at q^offset and an exclusive
truncation order: every coefficient below `order` is known exactly, nothing at
or above it is. Arithmetic propagates the tightest order the inputs allow.
"""

from typing import Dict, Iterable, List, Optional

from coefficients import CoefficientField
from errors import InvertNonUnit, TruncationError


class QSeries:
    def __init__(self, field: CoefficientField, coeffs: Iterable, offset: int = 0, order: Optional[int] = None):
        coeffs = list(coeffs)
        if order is None:
            order = offset + len(coeffs)
        if order < offset:
            raise ValueError(f"Truncation order {order} is below the offset {offset}")
        length = order - offset
        coeffs = coeffs[:length] + [field.zero] * (length - len(coeffs))
        self.field = field
        self.offset = offset
        self.order = order
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_terms(cls, field, terms: Dict[int, object], order: int, offset: Optional[int] = None) -> "QSeries":
        """Build from {exponent: coefficient}; exponents at or past order are dropped."""
        kept = {e: c for e, c in terms.items() if e < order}
        if offset is None:
            offset = min(kept, default=0)
            offset = min(offset, order)
        coeffs = [field.zero] * (order - offset)
        for e, c in kept.items():
            if e < offset:
                raise ValueError(f"Exponent {e} is below the offset {offset}")
            coeffs[e - offset] = coeffs[e - offset] + c
        return cls(field, coeffs, offset, order)

    @classmethod
    def one(cls, field, order: int) -> "QSeries":
        return cls.monomial(field, field.one, 0, order)

    @classmethod
    def monomial(cls, field, coefficient, exponent: int, order: int) -> "QSeries":
        return cls.from_terms(field, {exponent: coefficient}, order, offset=min(exponent, order))

    def coefficient(self, exponent: int):
        if exponent >= self.order:
            raise TruncationError(
                f"Coefficient of q^{exponent} requested, series is only known below q^{self.order}"
            )
        if exponent < self.offset:
            return self.field.zero
        return self.coeffs[exponent - self.offset]

    def __getitem__(self, exponent: int):
        return self.coefficient(exponent)

    def terms(self) -> Dict[int, object]:
        return {
            self.offset + i: c for i, c in enumerate(self.coeffs) if not self.field.is_zero(c)
        }

    def lowest_exponent(self) -> Optional[int]:
        return min(self.terms(), default=None)

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise TruncationError(f"Cannot extend a series known below q^{self.order} to q^{order}")
        return QSeries(self.field, self.coeffs, min(self.offset, order), order)

    def _aligned(self, other: "QSeries"):
        offset = min(self.offset, other.offset)
        order = min(self.order, other.order)
        return offset, order

    def __add__(self, other: "QSeries") -> "QSeries":
        offset, order = self._aligned(other)
        return QSeries(
            self.field,
            [self.coefficient(e) + other.coefficient(e) for e in range(offset, order)],
            offset,
            order,
        )

    def __neg__(self) -> "QSeries":
        return QSeries(self.field, [-c for c in self.coeffs], self.offset, self.order)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def scale(self, scalar) -> "QSeries":
        return QSeries(self.field, [scalar * c for c in self.coeffs], self.offset, self.order)

    def __mul__(self, other: "QSeries") -> "QSeries":
        offset = self.offset + other.offset
        order = min(self.offset + other.order, other.offset + self.order)
        zero = self.field.zero
        coeffs = [zero] * max(order - offset, 0)
        for i, a in enumerate(self.coeffs):
            if self.field.is_zero(a):
                continue
            for j in range(min(len(other.coeffs), len(coeffs) - i)):
                b = other.coeffs[j]
                if not self.field.is_zero(b):
                    coeffs[i + j] = coeffs[i + j] + a * b
        return QSeries(self.field, coeffs, offset, max(order, offset))

    def invert(self) -> "QSeries":
        if not self.coeffs or self.field.is_zero(self.coeffs[0]):
            raise InvertNonUnit(
                f"Series has no invertible coefficient at its offset q^{self.offset}"
            )
        c0_inv = self.field.inverse(self.coeffs[0], context=f"lowest coefficient of a series at q^{self.offset}")
        length = len(self.coeffs)
        inv: List = [c0_inv]
        for m in range(1, length):
            acc = self.field.zero
            for j in range(1, m + 1):
                acc = acc + self.coeffs[j] * inv[m - j]
            inv.append(-c0_inv * acc)
        return QSeries(self.field, inv, -self.offset, self.order - 2 * self.offset)

    def __truediv__(self, other: "QSeries") -> "QSeries":
        return self * other.invert()

    def __pow__(self, n: int) -> "QSeries":
        if n < 0:
            return self.invert() ** (-n)
        result = QSeries.one(self.field, self.order - min(self.offset, 0))
        for _ in range(n):
            result = result * self
        return result

    def dilate(self, step: int, y_step: int = 0) -> "QSeries":
        """Substitute q -> y^y_step * q^step."""
        if step < 1:
            raise ValueError(f"Dilation step must be positive, got {step}")
        terms = {
            step * e: c * self.field.y_power(y_step * e) for e, c in self.terms().items()
        }
        return QSeries.from_terms(self.field, terms, step * self.order, offset=step * self.offset)

    def map_coefficients(self, fn, field: CoefficientField) -> "QSeries":
        return QSeries(field, [fn(c) for c in self.coeffs], self.offset, self.order)

    def evaluate_y(self, field: CoefficientField, y0) -> "QSeries":
        """The same series with y set to y0, over the numeric field `field`."""
        return self.map_coefficients(lambda c: self.field.evaluate(c, y0), field)

    def mismatches(self, other: "QSeries", up_to: Optional[int] = None) -> List[int]:
        """Exponents below up_to (default: common order) where the coefficients differ."""
        known = min(self.order, other.order)
        if up_to is None:
            up_to = known
        if up_to > known:
            raise TruncationError(
                f"Comparison up to q^{up_to} requested, series are only known below q^{known}"
            )
        start = min(self.offset, other.offset)
        return [e for e in range(start, up_to) if self.coefficient(e) != other.coefficient(e)]

    def equals_to(self, other: "QSeries", up_to: Optional[int] = None) -> bool:
        return not self.mismatches(other, up_to)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order == other.order and self.terms() == other.terms()

    def format_terms(self) -> Dict[str, str]:
        return {f"q^{e}": self.field.format(c) for e, c in sorted(self.terms().items())}

    def to_json(self) -> dict:
        return {
            "offset": self.offset,
            "order": self.order,
            "coeffs": [self.field.format(c) for c in self.coeffs],
        }

    def __repr__(self) -> str:
        body = " + ".join(f"({v})*{k}" for k, v in self.format_terms().items()) or "0"
        return f"QSeries({body} + O(q^{self.order}))"


def euler_product(q_step: int, y_step: int, power: int, order: int, field: CoefficientField) -> QSeries:
    """prod_{n>0} (1 - q^(q_step*n) y^(y_step*n))^power, known below q^order."""
    if q_step < 1:
        raise ValueError(f"Euler product needs a positive q step, got {q_step}")
    series = [field.zero] * order
    if order > 0:
        series[0] = field.one
    n = 1
    while q_step * n < order:
        m = q_step * n
        c = field.y_power(y_step * n)
        for _ in range(abs(power)):
            if power < 0:
                # multiply by 1/(1 - c q^m)
                for e in range(m, order):
                    series[e] = series[e] + c * series[e - m]
            else:
                for e in range(order - 1, m - 1, -1):
                    series[e] = series[e] - c * series[e - m]
        n += 1
    return QSeries(field, series, 0, order)
