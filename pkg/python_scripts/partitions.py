"""
Young diagrams and the index sets of torus fixed points.

Fixed points on the framed moduli of P^2 are r-tuples of partitions; on the
blow-up they are triples (Y, Z, k) of two r-tuples and a lattice vector.
Boxes use the matrix convention: box (i, j) is in the diagram iff j <= lambda_i.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, List, NamedTuple, Tuple


class Box(NamedTuple):
    row: int
    col: int


@dataclass(frozen=True)
class Partition:
    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        for i, p in enumerate(parts):
            if p < 1:
                raise ValueError(f"Partition parts must be positive, got {parts}")
            if i > 0 and parts[i - 1] < p:
                raise ValueError(f"Partition parts must be weakly decreasing, got {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @cached_property
    def transpose(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(
            tuple(sum(1 for p in self.parts if p >= j) for j in range(1, self.parts[0] + 1))
        )

    def row_length(self, i: int) -> int:
        """lambda_i with 1-based i, zero past the last row."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def col_length(self, j: int) -> int:
        """lambda^t_j with 1-based j, zero past the last column."""
        return self.transpose.row_length(j)

    def boxes(self) -> Iterator[Box]:
        for i, p in enumerate(self.parts, start=1):
            for j in range(1, p + 1):
                yield Box(i, j)

    def __str__(self) -> str:
        return "[" + ",".join(str(p) for p in self.parts) + "]"


@dataclass(frozen=True)
class PartitionTuple:
    entries: Tuple[Partition, ...]

    @property
    def rank(self) -> int:
        return len(self.entries)

    @property
    def size(self) -> int:
        return sum(p.size for p in self.entries)

    def __getitem__(self, a: int) -> Partition:
        return self.entries[a]

    def __iter__(self):
        return iter(self.entries)

    def __str__(self) -> str:
        return " ".join(str(p) for p in self.entries)


@dataclass(frozen=True)
class LatticeVector:
    entries: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.entries)

    @property
    def total(self) -> int:
        return sum(self.entries)

    @property
    def pair_form(self) -> int:
        """sum_{i<j} (k_i - k_j)^2"""
        return sum((a - b) ** 2 for a, b in itertools.combinations(self.entries, 2))

    @property
    def pair_sum(self) -> int:
        """sum_{i<j} (k_i - k_j)"""
        return sum(a - b for a, b in itertools.combinations(self.entries, 2))

    def reversed(self) -> "LatticeVector":
        return LatticeVector(tuple(reversed(self.entries)))

    def __getitem__(self, a: int) -> int:
        return self.entries[a]

    def __str__(self) -> str:
        return ",".join(str(k) for k in self.entries)


@dataclass(frozen=True)
class BlowupFixedPoint:
    y_tuple: PartitionTuple
    z_tuple: PartitionTuple
    kvec: LatticeVector

    def __post_init__(self):
        if not (self.y_tuple.rank == self.z_tuple.rank == self.kvec.rank):
            raise ValueError(
                f"Fixed point parts have mismatched ranks: "
                f"{self.y_tuple.rank}, {self.z_tuple.rank}, {self.kvec.rank}"
            )

    @property
    def rank(self) -> int:
        return self.kvec.rank

    @property
    def k(self) -> int:
        return self.kvec.total

    @property
    def diagram_weight(self) -> int:
        return self.y_tuple.size + self.z_tuple.size

    @property
    def q_exponent(self) -> int:
        return 2 * self.rank * self.diagram_weight + self.kvec.pair_form

    def instanton_number(self) -> int:
        """Recover n from 2r*weight + pair_form = 2rn + k(r-k)."""
        r, k = self.rank, self.k
        n, rest = divmod(self.q_exponent - k * (r - k), 2 * r)
        if rest:
            raise ValueError(f"Fixed point {self} has no integral instanton number")
        return n

    def __str__(self) -> str:
        return f"Y={self.y_tuple} | Z={self.z_tuple} | k={self.kvec}"


def arm_leg(p: Partition, b) -> Tuple[int, int]:
    """Signed arm and leg of box b measured in p; negative outside p."""
    i, j = b
    if i < 1 or j < 1:
        raise ValueError(f"Boxes are 1-based, got {(i, j)}")
    return p.row_length(i) - j, p.col_length(j) - i


def _partitions_bounded(n: int, largest: int) -> Iterator[Tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_bounded(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _partitions_cached(n: int) -> Tuple[Partition, ...]:
    return tuple(Partition(parts) for parts in _partitions_bounded(n, n))


def enumerate_partitions(n: int) -> List[Partition]:
    """All partitions of n in descending lexicographic order."""
    if n < 0:
        raise ValueError(f"Cannot enumerate partitions of a negative number: {n}")
    return list(_partitions_cached(n))


@lru_cache(maxsize=None)
def _tuples_cached(r: int, n: int) -> Tuple[PartitionTuple, ...]:
    if r == 1:
        return tuple(PartitionTuple((p,)) for p in _partitions_cached(n))
    result = []
    for first in range(n, -1, -1):
        for head in _partitions_cached(first):
            for tail in _tuples_cached(r - 1, n - first):
                result.append(PartitionTuple((head,) + tail.entries))
    return tuple(result)


def enumerate_tuples(r: int, n: int) -> List[PartitionTuple]:
    """All r-tuples of partitions with total size n."""
    if r < 1:
        raise ValueError(f"Rank must be at least 1, got {r}")
    if n < 0:
        raise ValueError(f"Total size must be non-negative, got {n}")
    return list(_tuples_cached(r, n))


def enumerate_lattice_vectors(r: int, k: int, qform_bound: int) -> List[LatticeVector]:
    """Integer vectors with sum k and pair form at most qform_bound.

    The pair form equals r * sum (k_i - k/r)^2, so every entry lies within
    sqrt(qform_bound) of k/r; the box below is a little wider and filtered.
    """
    if r < 1:
        raise ValueError(f"Rank must be at least 1, got {r}")
    if qform_bound < 0:
        raise ValueError(f"Quadratic form bound must be non-negative, got {qform_bound}")

    radius = math.isqrt(qform_bound) + 1
    low = k // r - radius
    high = -((-k) // r) + radius

    found = []
    for head in itertools.product(range(low, high + 1), repeat=r - 1):
        vector = LatticeVector(tuple(head) + (k - sum(head),))
        if vector.pair_form <= qform_bound:
            found.append(vector)

    # Sort by form value, then descending entries
    found.sort(key=lambda v: (v.pair_form, tuple(-x for x in v.entries)))
    return found


def enumerate_blowup_fixed_points(r: int, k: int, n: int) -> List[BlowupFixedPoint]:
    """Triples (Y, Z, k) with 2r*sum(|Y|+|Z|) + pair_form = 2rn + k(r-k)."""
    if not 0 <= k < r:
        raise ValueError(f"k must satisfy 0 <= k < r, got k={k}, r={r}")
    target = 2 * r * n + k * (r - k)
    if target < 0:
        raise ValueError(f"No fixed points for n={n}: 2rn + k(r-k) = {target} < 0")

    points = []
    for kvec in enumerate_lattice_vectors(r, k, target):
        weight, rest = divmod(target - kvec.pair_form, 2 * r)
        if weight < 0 or rest:
            continue
        for both in _tuples_cached(2 * r, weight):
            points.append(
                BlowupFixedPoint(
                    PartitionTuple(both.entries[:r]),
                    PartitionTuple(both.entries[r:]),
                    kvec,
                )
            )
    logging.debug(f"Enumerated {len(points)} blow-up fixed points for r={r}, k={k}, n={n}")
    return points
