"""
Exact coefficient fields and random specializations of the equivariant parameters.

Two fields are used for series coefficients:

  RationalField          Fraction values, y replaced by a fixed rational y0
  RationalFunctionField  sympy's QQ(y); elements are reduced fractions of
                         polynomials and compare structurally

Both expose the same small interface so the series code never branches on
the mode.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, Optional, Tuple

import numpy as np
from sympy import QQ
from sympy.polys.fields import field as frac_field

from config import MAX_RESEED_ATTEMPTS, PRNG_NAME, SAMPLE_HIGH, SAMPLE_LOW
from errors import DegenerateSpecialization


def format_fraction(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def format_ypoly(coeffs: Dict[int, Fraction]) -> str:
    """Write sum c_n y^n as 'c0 + c1*y + c2*y^2', skipping zero terms."""
    terms = []
    for degree in sorted(coeffs):
        c = coeffs[degree]
        if c == 0:
            continue
        if degree == 0:
            terms.append(str(c))
        else:
            power = "y" if degree == 1 else f"y^{degree}"
            if c == 1:
                terms.append(power)
            elif c == -1:
                terms.append(f"-{power}")
            else:
                terms.append(f"{c}*{power}")
    return " + ".join(terms) if terms else "0"


class CoefficientField(ABC):
    name = "abstract"

    @property
    @abstractmethod
    def zero(self): ...

    @property
    @abstractmethod
    def one(self): ...

    @property
    @abstractmethod
    def y(self): ...

    @abstractmethod
    def from_fraction(self, value: Fraction): ...

    @abstractmethod
    def theta_product(self, values: Iterable[Tuple[Fraction, int]]):
        """prod theta(x)^m over (x, m) with theta(x) = (x - y)/(x - 1)."""

    @abstractmethod
    def evaluate(self, element, y0: Fraction) -> Fraction: ...

    @abstractmethod
    def format(self, element) -> str: ...

    def from_int(self, value: int):
        return self.from_fraction(Fraction(value))

    def y_power(self, n: int):
        return self.y ** n

    def is_zero(self, element) -> bool:
        return element == self.zero

    def inverse(self, element, context: str = ""):
        if self.is_zero(element):
            raise ZeroDivisionError(f"Division by zero in {self.name} field: {context}")
        return self.one / element


class RationalField(CoefficientField):
    """Rationals with y specialized to a fixed value."""

    name = "numeric"

    def __init__(self, y0):
        self.y0 = Fraction(y0)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    @property
    def y(self):
        return self.y0

    def from_fraction(self, value):
        return Fraction(value)

    def theta_product(self, values):
        result = Fraction(1)
        for x, mult in values:
            if x == 1:
                raise ZeroDivisionError(f"theta({x}) has a pole")
            result *= ((x - self.y0) / (x - 1)) ** mult
        return result

    def evaluate(self, element, y0):
        if Fraction(y0) != self.y0:
            raise ValueError(f"Element of the y={self.y0} field cannot be evaluated at y={y0}")
        return Fraction(element)

    def format(self, element):
        """Reduced "p/q", written "p" when q = 1, matching the YPoly coefficients."""
        return str(Fraction(element))


class RationalFunctionField(CoefficientField):
    """QQ(y) through sympy's sparse rational function field."""

    name = "symbolic"

    def __init__(self):
        self.K, self._y = frac_field("y", QQ)
        self.R = self.K.ring
        self._y_poly = self.R.gens[0]

    @property
    def zero(self):
        return self.K.zero

    @property
    def one(self):
        return self.K.one

    @property
    def y(self):
        return self._y

    def from_fraction(self, value):
        value = Fraction(value)
        return self.K.new(self.R(value.numerator), self.R(value.denominator))

    def theta_product(self, values):
        # theta(p/q) = (p - q*y) / (p - q); collect both sides before one reduction
        numer = self.R.one
        denom = self.R.one
        for x, mult in values:
            p, q = x.numerator, x.denominator
            if p == q:
                raise ZeroDivisionError(f"theta({x}) has a pole")
            top = p - q * self._y_poly
            bottom = self.R(p - q)
            if mult >= 0:
                numer *= top ** mult
                denom *= bottom ** mult
            else:
                numer *= bottom ** (-mult)
                denom *= top ** (-mult)
        return self.K.new(numer, denom)

    @staticmethod
    def poly_coeffs(poly) -> Dict[int, Fraction]:
        coeffs = {}
        for monom, c in poly.terms():
            coeffs[monom[0]] = Fraction(int(c.numerator), int(c.denominator))
        return coeffs

    def is_polynomial(self, element) -> bool:
        return element.denom.is_ground

    def ypoly_coeffs(self, element) -> Dict[int, Fraction]:
        """Coefficients of an element whose denominator is a constant."""
        if not self.is_polynomial(element):
            raise ValueError(f"Not a polynomial in y: {self.format(element)}")
        scale = self.poly_coeffs(element.denom).get(0, Fraction(1))
        return {d: c / scale for d, c in self.poly_coeffs(element.numer).items()}

    def evaluate(self, element, y0):
        y0 = Fraction(y0)
        numer = sum((c * y0 ** d for d, c in self.poly_coeffs(element.numer).items()), Fraction(0))
        denom = sum((c * y0 ** d for d, c in self.poly_coeffs(element.denom).items()), Fraction(0))
        if denom == 0:
            raise ZeroDivisionError(f"{self.format(element)} has a pole at y={y0}")
        return numer / denom

    def format(self, element):
        if self.is_polynomial(element):
            return format_ypoly(self.ypoly_coeffs(element))
        numer = self.poly_coeffs(element.numer)
        denom = self.poly_coeffs(element.denom)
        lead = denom[max(denom)]
        numer = {d: c / lead for d, c in numer.items()}
        denom = {d: c / lead for d, c in denom.items()}
        return f"({format_ypoly(numer)}) / ({format_ypoly(denom)})"


SYMBOLIC_FIELD = RationalFunctionField()


@dataclass(frozen=True)
class YMode:
    symbolic: bool = True
    value: Optional[Fraction] = None

    @classmethod
    def numeric(cls, y0) -> "YMode":
        return cls(False, Fraction(y0))

    @property
    def label(self) -> str:
        return "symbolic" if self.symbolic else f"numeric(y={self.value})"

    def field(self) -> CoefficientField:
        return SYMBOLIC_FIELD if self.symbolic else RationalField(self.value)


SYMBOLIC = YMode(True, None)


@dataclass(frozen=True)
class Specialization:
    t1: Fraction
    t2: Fraction
    e: Tuple[Fraction, ...]
    y_mode: YMode = SYMBOLIC
    seed: Optional[int] = None

    @property
    def rank(self) -> int:
        return len(self.e)

    @property
    def field(self) -> CoefficientField:
        return self.y_mode.field()

    def value(self, i1: int, i2: int, num: Optional[int] = None, den: Optional[int] = None) -> Fraction:
        """t1^i1 t2^i2 e_num / e_den with 1-based e indices."""
        x = self.t1 ** i1 * self.t2 ** i2
        if num is not None:
            x *= self.e[num - 1] / self.e[den - 1]
        return x

    def with_y_mode(self, y_mode: YMode) -> "Specialization":
        return Specialization(self.t1, self.t2, self.e, y_mode, self.seed)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "prng": PRNG_NAME,
            "t1": format_fraction(self.t1),
            "t2": format_fraction(self.t2),
            "e": [format_fraction(x) for x in self.e],
            "y_mode": self.y_mode.label,
        }


def sample_specialization(r: int, seed: int, y_mode: YMode = SYMBOLIC) -> Specialization:
    """Draw t1, t2, e_1..e_r as p/q with p, q uniform in [2, 97].

    Values equal to 1 or to an earlier value are redrawn, so the result is a
    deterministic function of (r, seed).
    """
    if r < 1:
        raise ValueError(f"Rank must be at least 1, got {r}")
    rng = np.random.Generator(np.random.PCG64(seed))

    def draw() -> Fraction:
        p, q = rng.integers(SAMPLE_LOW, SAMPLE_HIGH + 1, size=2)
        return Fraction(int(p), int(q))

    values = []
    for _ in range(r + 2):
        x = draw()
        while x == 1 or x in values:
            x = draw()
        values.append(x)
    return Specialization(values[0], values[1], tuple(values[2:]), y_mode, seed)


def retry_on_degenerate(
    compute: Callable[[Specialization], object],
    r: int,
    seed: int,
    y_mode: YMode = SYMBOLIC,
    attempts: int = MAX_RESEED_ATTEMPTS,
):
    """Run compute(spec), moving to seed+1 whenever a theta factor degenerates.

    Returns (result, specialization actually used).
    """
    current = seed
    for _ in range(attempts):
        spec = sample_specialization(r, current, y_mode)
        try:
            return compute(spec), spec
        except DegenerateSpecialization as e:
            logging.warning(f"Seed {current} degenerate ({e}); resampling with seed {current + 1}")
            current += 1
    raise DegenerateSpecialization(None, None, seed=current)
