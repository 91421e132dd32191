"""
Torus characters of tangent spaces at fixed points and their theta evaluation.

A weight is the monomial e_b/e_a * t1^i1 * t2^i2; a character is a finite sum
of weights with integer multiplicities. The tangent space at a fixed point is
built from the arm/leg blocks N_{a,b} and, on the blow-up, the lattice blocks
L_{a,b}.
"""

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from coefficients import Specialization
from errors import CharacterRankError, DegenerateSpecialization, TrivialWeightError
from partitions import BlowupFixedPoint, LatticeVector, Partition, PartitionTuple, arm_leg


@dataclass(frozen=True)
class Weight:
    i1: int
    i2: int
    num: Optional[int] = None
    den: Optional[int] = None

    def __post_init__(self):
        if (self.num is None) != (self.den is None):
            raise ValueError(f"e-part needs both indices, got num={self.num}, den={self.den}")
        # e_a/e_a cancels
        if self.num is not None and self.num == self.den:
            object.__setattr__(self, "num", None)
            object.__setattr__(self, "den", None)

    @property
    def is_trivial(self) -> bool:
        return self.i1 == 0 and self.i2 == 0 and self.num is None

    @property
    def has_e_part(self) -> bool:
        return self.num is not None

    def sort_key(self) -> Tuple[int, int, int, int]:
        return (self.num or 0, self.den or 0, self.i1, self.i2)

    def evaluate(self, spec: Specialization):
        return spec.value(self.i1, self.i2, self.num, self.den)

    def __str__(self) -> str:
        e_part = f"e_{self.num}/e_{self.den} * " if self.has_e_part else ""
        return f"{e_part}t1^{self.i1} * t2^{self.i2}"


class Character:
    """Immutable map Weight -> nonzero integer multiplicity."""

    def __init__(self, terms: Iterable[Tuple[Weight, int]] = ()):
        accumulated: Dict[Weight, int] = defaultdict(int)
        for weight, mult in terms:
            accumulated[weight] += mult
        self._terms = {w: m for w, m in accumulated.items() if m != 0}

    @property
    def rank(self) -> int:
        return sum(self._terms.values())

    def items(self) -> List[Tuple[Weight, int]]:
        return sorted(self._terms.items(), key=lambda item: item[0].sort_key())

    def weights(self) -> List[Weight]:
        return [w for w, _ in self.items()]

    def multiplicity(self, weight: Weight) -> int:
        return self._terms.get(weight, 0)

    def contains_trivial(self) -> bool:
        return any(w.is_trivial for w in self._terms)

    def __add__(self, other: "Character") -> "Character":
        return Character(itertools.chain(self._terms.items(), other._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Weight]:
        return iter(self.weights())

    def __eq__(self, other) -> bool:
        return isinstance(other, Character) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def format(self) -> List[str]:
        return [f"{m} * {w}" for w, m in self.items()]

    def __repr__(self) -> str:
        return f"Character({' + '.join(self.format()) or '0'})"


def sum_characters(characters: Iterable[Character]) -> Character:
    return Character(itertools.chain.from_iterable(c.items() for c in characters))


@dataclass(frozen=True)
class ExponentMap:
    """Integer-linear substitution (i1, i2) -> (a11*i1 + a12*i2 + s1, a21*i1 + a22*i2 + s2).

    The shift (s1, s2) multiplies every weight by t1^s1 t2^s2.
    """

    label: str
    a11: int = 1
    a12: int = 0
    a21: int = 0
    a22: int = 1
    s1: int = 0
    s2: int = 0

    def apply(self, i1: int, i2: int) -> Tuple[int, int]:
        return (
            self.a11 * i1 + self.a12 * i2 + self.s1,
            self.a21 * i1 + self.a22 * i2 + self.s2,
        )

    def twist(self, m1: int = 0, m2: int = 0) -> "ExponentMap":
        label = self.label if (m1, m2) == (0, 0) else f"{self.label}*t1^{m1}*t2^{m2}"
        return ExponentMap(
            label, self.a11, self.a12, self.a21, self.a22, self.s1 + m1, self.s2 + m2
        )


# t1^i1 t2^i2 under t2 -> t2/t1 becomes t1^(i1-i2) t2^i2
IDENTITY = ExponentMap("identity")
T2_OVER_T1 = ExponentMap("t2/t1", a11=1, a12=-1, a21=0, a22=1)
T1_OVER_T2 = ExponentMap("t1/t2", a11=1, a12=0, a21=-1, a22=1)

SUBSTITUTIONS = {m.label: m for m in (IDENTITY, T2_OVER_T1, T1_OVER_T2)}


def n_block(y_a: Partition, y_b: Partition, a: int, b: int) -> Character:
    """N_{a,b} = e_b/e_a (sum_{s in Y_a} t1^-l_{Y_b}(s) t2^(a_{Y_a}(s)+1)
    + sum_{t in Y_b} t1^(l_{Y_a}(t)+1) t2^-a_{Y_b}(t))."""
    terms = []
    for s in y_a.boxes():
        arm_a, _ = arm_leg(y_a, s)
        _, leg_b = arm_leg(y_b, s)
        terms.append((Weight(-leg_b, arm_a + 1, b, a), 1))
    for t in y_b.boxes():
        _, leg_a = arm_leg(y_a, t)
        arm_b, _ = arm_leg(y_b, t)
        terms.append((Weight(leg_a + 1, -arm_b, b, a), 1))
    return Character(terms)


def l_block(kvec: LatticeVector, a: int, b: int) -> Character:
    """The lattice block L_{a,b} of the blow-up tangent space, indices 1-based."""
    k_a, k_b = kvec[a - 1], kvec[b - 1]
    terms = []
    if k_a > k_b:
        top = k_a - k_b - 1
        for i in range(top + 1):
            for j in range(top - i + 1):
                terms.append((Weight(-i, -j, b, a), 1))
    elif k_a + 1 < k_b:
        top = k_b - k_a - 2
        for i in range(top + 1):
            for j in range(top - i + 1):
                terms.append((Weight(i + 1, j + 1, b, a), 1))
    return Character(terms)


def substitute(character: Character, exponent_map: ExponentMap) -> Character:
    return Character(
        (Weight(*exponent_map.apply(w.i1, w.i2), w.num, w.den), m)
        for w, m in character.items()
    )


def _check_isolated(character: Character, where) -> None:
    if character.contains_trivial():
        raise TrivialWeightError(f"Trivial weight in tangent character at {where}")


def tangent_p2(fp: PartitionTuple) -> Character:
    r = fp.rank
    tangent = sum_characters(
        n_block(fp[a - 1], fp[b - 1], a, b)
        for a in range(1, r + 1)
        for b in range(1, r + 1)
    )
    expected = 2 * r * fp.size
    if tangent.rank != expected:
        raise CharacterRankError(
            f"Tangent character at {fp} has rank {tangent.rank}, expected {expected}"
        )
    _check_isolated(tangent, fp)
    return tangent


def tangent_blowup(fp: BlowupFixedPoint) -> Character:
    r = fp.rank
    blocks = []
    for a in range(1, r + 1):
        for b in range(1, r + 1):
            shift = fp.kvec[b - 1] - fp.kvec[a - 1]
            blocks.append(l_block(fp.kvec, a, b))
            blocks.append(
                substitute(
                    n_block(fp.y_tuple[a - 1], fp.y_tuple[b - 1], a, b),
                    T2_OVER_T1.twist(shift, 0),
                )
            )
            blocks.append(
                substitute(
                    n_block(fp.z_tuple[a - 1], fp.z_tuple[b - 1], a, b),
                    T1_OVER_T2.twist(0, shift),
                )
            )
    tangent = sum_characters(blocks)

    # 2r * sum(|Y|+|Z|) + sum_{i<j}(k_i-k_j)^2 = 2rn + k(r-k)
    expected = fp.q_exponent
    if tangent.rank != expected:
        raise CharacterRankError(
            f"Tangent character at {fp} has rank {tangent.rank}, expected {expected}"
        )
    _check_isolated(tangent, fp)
    return tangent


def _theta_arguments(character: Character, spec: Specialization, weights=None):
    values = []
    for w, m in character.items() if weights is None else weights:
        if w.is_trivial:
            raise TrivialWeightError(f"Cannot evaluate theta on the trivial weight ({m} * {w})")
        x = w.evaluate(spec)
        if x == 1:
            raise DegenerateSpecialization(w, x, spec.seed)
        values.append((x, m))
    return values


def theta_eval(character: Character, spec: Specialization):
    """prod_w theta(w)^mult with theta(x) = (x - y)/(x - 1), in spec's field."""
    return spec.field.theta_product(_theta_arguments(character, spec))


def limit_y_exponent(character: Character) -> int:
    """Power of y left by e-weights e_b/e_a with a > b after the ordered limit."""
    return sum(m for w, m in character.items() if w.has_e_part and w.den > w.num)


def theta_limit_factor(character: Character, spec: Specialization):
    """Theta product after sending e_1 -> 0, then e_2 -> 0, ..., then e_r -> 0.

    e_b/e_a * t-monomial tends to 1 for a < b and to y for a > b; pure
    t-monomials keep their theta factor.
    """
    field = spec.field
    surviving = []
    for w, m in character.items():
        if w.is_trivial:
            raise TrivialWeightError(f"Cannot evaluate theta on the trivial weight ({m} * {w})")
        if not w.has_e_part:
            surviving.append((w, m))
    values = _theta_arguments(character, spec, surviving)
    return field.y_power(limit_y_exponent(character)) * field.theta_product(values)
