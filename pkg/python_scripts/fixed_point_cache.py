"""
On-disk cache of fixed-point enumerations.

One text file per (family, r, k, n). The first line is a header, every other
line is one fixed point:

    # family=blowup r=2 k=1 n=1 count=...
    Y=[1] [] | Z=[] [] | k=1,0

A partition is its comma-separated parts in brackets, "[]" for the empty one.
The cache only saves time: loading must give exactly what enumeration gives.
"""

import logging
from pathlib import Path
from typing import List, Optional

from errors import CacheFormatError
from partitions import (
    BlowupFixedPoint,
    LatticeVector,
    Partition,
    PartitionTuple,
    enumerate_blowup_fixed_points,
    enumerate_tuples,
)


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise CacheFormatError(f"Malformed partition: {text!r}")
    body = text[1:-1].strip()
    if not body:
        return Partition(())
    try:
        return Partition(tuple(int(part) for part in body.split(",")))
    except ValueError as e:
        raise CacheFormatError(f"Malformed partition: {text!r}") from e


def parse_partition_tuple(text: str) -> PartitionTuple:
    return PartitionTuple(tuple(parse_partition(chunk) for chunk in text.split()))


def format_blowup_point(point: BlowupFixedPoint) -> str:
    return str(point)


def parse_blowup_point(line: str) -> BlowupFixedPoint:
    fields = [field.strip() for field in line.split("|")]
    if len(fields) != 3 or not (
        fields[0].startswith("Y=") and fields[1].startswith("Z=") and fields[2].startswith("k=")
    ):
        raise CacheFormatError(f"Malformed blow-up fixed point line: {line!r}")
    try:
        kvec = LatticeVector(tuple(int(x) for x in fields[2][2:].split(",")))
    except ValueError as e:
        raise CacheFormatError(f"Malformed lattice vector in line: {line!r}") from e
    return BlowupFixedPoint(
        parse_partition_tuple(fields[0][2:]), parse_partition_tuple(fields[1][2:]), kvec
    )


class FixedPointCache:
    """Directory-backed cache for enumerate_tuples and enumerate_blowup_fixed_points."""

    def __init__(self, directory):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def path_for(self, family: str, r: int, k: int, n: int) -> Path:
        return self.directory / f"{family}_r{r}_k{k}_n{n}.txt"

    def _read(self, family: str, r: int, k: int, n: int) -> Optional[List[str]]:
        path = self.path_for(family, r, k, n)
        if not path.exists():
            return None
        lines = path.read_text(encoding="utf-8").splitlines()
        expected = f"# family={family} r={r} k={k} n={n} count="
        if not lines or not lines[0].startswith(expected):
            raise CacheFormatError(f"Bad header in cache file {path}")
        try:
            count = int(lines[0][len(expected):])
        except ValueError as e:
            raise CacheFormatError(f"Bad record count in cache file {path}: {lines[0]!r}") from e
        body = lines[1:]
        if len(body) != count:
            raise CacheFormatError(f"Cache file {path} holds {len(body)} records, header says {count}")
        logging.debug(f"Loaded {count} fixed points from {path}")
        return body

    def _write(self, family: str, r: int, k: int, n: int, records: List[str]) -> None:
        path = self.path_for(family, r, k, n)
        header = f"# family={family} r={r} k={k} n={n} count={len(records)}"
        path.write_text("\n".join([header] + records) + "\n", encoding="utf-8")
        logging.debug(f"Cached {len(records)} fixed points in {path}")

    def tuples(self, r: int, n: int) -> List[PartitionTuple]:
        lines = self._read("p2", r, 0, n)
        if lines is not None:
            return [parse_partition_tuple(line) for line in lines]
        result = enumerate_tuples(r, n)
        self._write("p2", r, 0, n, [str(t) for t in result])
        return result

    def blowup_points(self, r: int, k: int, n: int) -> List[BlowupFixedPoint]:
        lines = self._read("blowup", r, k, n)
        if lines is not None:
            return [parse_blowup_point(line) for line in lines]
        result = enumerate_blowup_fixed_points(r, k, n)
        self._write("blowup", r, k, n, [format_blowup_point(p) for p in result])
        return result


def p2_points(r: int, n: int, cache: Optional[FixedPointCache] = None) -> List[PartitionTuple]:
    return cache.tuples(r, n) if cache is not None else enumerate_tuples(r, n)


def blowup_points(r: int, k: int, n: int, cache: Optional[FixedPointCache] = None) -> List[BlowupFixedPoint]:
    return cache.blowup_points(r, k, n) if cache is not None else enumerate_blowup_fixed_points(r, k, n)
