"""Bit-packed 0/1 matrices, the three random-matrix families, and two permanent kernels.

A matrix belongs to one of three families that differ only in which entries
are pinned to 1 ("fixed") and which are drawn at random ("variable"):

* family A: every entry is variable;
* family B: the diagonal is pinned to 1 except the entry at (0, 0), which is
  variable along with every off-diagonal entry;
* family C: the whole diagonal is pinned to 1, only off-diagonal entries are
  variable.

The permanent is computed by two independent algorithms so each can serve as
an oracle for the other: a factorial-time sum over all permutations, and an
inclusion-exclusion scheme over column subsets with Gray-code updates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Sequence

from .guards import check_guard

NAIVE_MAX_N = 10
RYSER_MAX_N = 30
MAX_DIMENSION = 64


class Family(Enum):
    """The three families of random 0/1 matrices."""

    A = "A"
    B = "B"
    C = "C"

    @property
    def target_permanent(self) -> int:
        """Permanent value whose probability this family is studied at."""
        return 1 if self is Family.C else 0

    def is_variable(self, i: int, j: int) -> bool:
        """True when entry (i, j) is drawn at random rather than pinned to 1."""
        if i != j:
            return True
        return self is Family.A or (self is Family.B and i == 0)

    def variable_count(self, n: int) -> int:
        """Number K of variable entries of an n x n matrix of this family."""
        if self is Family.A:
            return n * n
        if self is Family.B:
            return n * n - n + 1
        return n * n - n

    def fixed_diagonal(self, n: int) -> range:
        """Row indices i whose diagonal entry (i, i) is pinned to 1."""
        if self is Family.A:
            return range(0)
        if self is Family.B:
            return range(1, n)
        return range(n)


@lru_cache(maxsize=None)
def variable_positions(family: Family, n: int) -> tuple[tuple[int, int], ...]:
    """Variable (row, col) pairs in row-major order.

    The ordering is the contract that makes assignment indices reproducible:
    bit k of an assignment always refers to the k-th pair returned here.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    return tuple(
        (i, j) for i in range(n) for j in range(n) if family.is_variable(i, j)
    )


@dataclass(frozen=True)
class BinaryMatrix:
    """Square 0/1 matrix with each row packed into an integer bitmask.

    Bit j of ``rows[i]`` is the entry at row i, column j.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_DIMENSION:
            raise ValueError(f"dimension must be in [1, {MAX_DIMENSION}], got {self.n}")
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for r in self.rows:
            if not isinstance(r, int) or not 0 <= r <= full:
                raise ValueError(f"row value {r!r} out of range for n={self.n}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "BinaryMatrix":
        """Build from nested 0/1 sequences."""
        n = len(rows)
        packed = []
        for row in rows:
            if len(row) != n:
                raise ValueError("matrix must be square")
            bits = 0
            for j, v in enumerate(row):
                if v not in (0, 1):
                    raise ValueError(f"entries must be 0 or 1, got {v!r}")
                bits |= v << j
            packed.append(bits)
        return cls(n, tuple(packed))

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def ones(cls, n: int) -> "BinaryMatrix":
        full = (1 << n) - 1
        return cls(n, (full,) * n)

    def entry(self, i: int, j: int) -> int:
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError(f"entry ({i}, {j}) out of bounds for n={self.n}")
        return (self.rows[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.n)] for r in self.rows]

    def transpose(self) -> "BinaryMatrix":
        cols = []
        for j in range(self.n):
            bits = 0
            for i in range(self.n):
                bits |= ((self.rows[i] >> j) & 1) << i
            cols.append(bits)
        return BinaryMatrix(self.n, tuple(cols))


def build_family_matrix(
    family: Family, n: int, assignment: Sequence[int]
) -> BinaryMatrix:
    """Matrix with fixed positions at 1 and ``assignment`` bits on the variable mask.

    ``assignment[k]`` lands on the k-th pair of :func:`variable_positions`.
    """
    positions = variable_positions(family, n)
    if len(assignment) != len(positions):
        raise ValueError(
            f"assignment length {len(assignment)} does not match the "
            f"{len(positions)} variable positions of family {family.value} at n={n}"
        )
    rows = [0] * n
    for i in family.fixed_diagonal(n):
        rows[i] |= 1 << i
    for (i, j), bit in zip(positions, assignment):
        if bit not in (0, 1):
            raise ValueError(f"assignment bits must be 0 or 1, got {bit!r}")
        rows[i] |= bit << j
    return BinaryMatrix(n, tuple(rows))


def permanent_naive(matrix: BinaryMatrix, force: bool = False) -> int:
    """Permanent as the sum over all n! permutation terms (the oracle kernel)."""
    n = matrix.n
    check_guard(n, NAIVE_MAX_N, "dimension for the factorial-time permanent", force)
    rows = matrix.rows
    total = 0
    for sigma in itertools.permutations(range(n)):
        term = 1
        for j, i in enumerate(sigma):
            if not rows[i] >> j & 1:
                term = 0
                break
        total += term
    return total


def permanent_ryser(matrix: BinaryMatrix, force: bool = False) -> int:
    """Permanent by inclusion-exclusion over column subsets, O(2^n * n).

    Column subsets are visited in Gray-code order so each step adjusts the
    per-row sums by a single column.
    """
    n = matrix.n
    check_guard(n, RYSER_MAX_N, "dimension for the subset-sum permanent", force)
    rows = matrix.rows
    sums = [0] * n
    subset = 0
    parity = 1  # sign (-1)**|subset|
    total = 0
    for k in range(1, 1 << n):
        b = (k & -k).bit_length() - 1
        bit = 1 << b
        if subset & bit:
            for i in range(n):
                sums[i] -= rows[i] >> b & 1
        else:
            for i in range(n):
                sums[i] += rows[i] >> b & 1
        subset ^= bit
        parity = -parity
        prod = 1
        for s in sums:
            if s == 0:
                prod = 0
                break
            prod *= s
        total += parity * prod
    return total if n % 2 == 0 else -total
