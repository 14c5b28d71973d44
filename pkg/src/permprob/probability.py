"""Product-form approximate probability and exhaustive exact probability.

``q_eval`` multiplies, over every permanent-expansion term, the probability
that the term vanishes, treating terms as independent: one factor
(1 - r**m) per term with m variable entries.  ``exact_counts`` drops the
independence assumption entirely: it enumerates all 2**K assignments of the
K variable entries, counts how many with i ones land the permanent on the
family's target value, and ``p_eval`` turns those counts into the exact
probability sum_i N_i * r**i * (1-r)**(K-i).
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .guards import check_guard
from .matrices import Family, build_family_matrix, permanent_ryser, variable_positions
from .termdist import TermDistribution, e_table

EXACT_MAX_VARIABLES = 26
EXPAND_MAX_N = 12

# Below this K the per-matrix route is cheap enough to be the default.
_DIRECT_MAX_VARIABLES = 14


@dataclass(frozen=True)
class ApproxModel:
    """Term distribution packaged for evaluating the independence product."""

    family: Family
    n: int
    dist: TermDistribution


def approx_model(family: Family, n: int) -> ApproxModel:
    return ApproxModel(family, n, e_table(family, n))


def q_eval(model: ApproxModel, r: float) -> float:
    """Approximate probability that the permanent equals the family target.

    Evaluated in log space because the term counts can exceed the float
    integer range; log(1 - r**m) is computed as log(-expm1(m*log r)) so it
    stays accurate near r = 1.
    """
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"r must be in [0, 1], got {r}")
    counts = model.dist.counts
    if r == 0.0:
        return 1.0
    if r == 1.0:
        return 0.0 if any(counts[1:]) else 1.0
    log_r = math.log(r)
    log_q = 0.0
    for m in range(1, model.n + 1):
        e = counts[m]
        if e:
            log_q += float(e) * math.log(-math.expm1(m * log_r))
    return math.exp(log_q)


def q_expand(model: ApproxModel, force: bool = False) -> list[int]:
    """Exact integer coefficients of the expanded product, constant term first.

    The coefficient count is 1 + sum of m times the term count at m, so the
    expansion is only practical for small n; the guard reflects that.
    """
    check_guard(model.n, EXPAND_MAX_N, "dimension for product expansion", force)
    poly = [1]
    for m in range(1, model.n + 1):
        e = model.dist.counts[m]
        if e == 0:
            continue
        new = [0] * (len(poly) + m * e)
        for k in range(e + 1):
            c = math.comb(e, k)
            if k % 2:
                c = -c
            off = m * k
            for idx, pc in enumerate(poly):
                if pc:
                    new[off + idx] += c * pc
        poly = new
    return poly


def evaluate_polynomial(coeffs, x):
    """Horner evaluation; works for float, Fraction, or int arguments."""
    acc = 0 * x
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class ExactCounts:
    """Assignment counts behind the exact probability.

    ``counts[i]`` is the number of assignments with i ones among the
    ``variable_count`` variable entries whose matrix hits the target permanent.
    """

    family: Family
    n: int
    variable_count: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.counts) != self.variable_count + 1:
            raise ValueError("counts must have length variable_count + 1")


def _split_ranges(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    step, extra = divmod(total, parts)
    bounds = []
    start = 0
    for p in range(parts):
        stop = start + step + (1 if p < extra else 0)
        bounds.append((start, stop))
        start = stop
    return bounds


def _count_assignment_range(
    family: Family, n: int, start: int, stop: int
) -> list[int]:
    """Count target hits by popcount over assignment indices in [start, stop)."""
    k_total = family.variable_count(n)
    target = family.target_permanent
    counts = [0] * (k_total + 1)
    for x in range(start, stop):
        bits = [(x >> k) & 1 for k in range(k_total)]
        if permanent_ryser(build_family_matrix(family, n, bits)) == target:
            counts[x.bit_count()] += 1
    return counts


def _exact_counts_direct(family: Family, n: int, workers: int) -> list[int]:
    total = 1 << family.variable_count(n)
    ranges = _split_ranges(total, workers)
    if len(ranges) == 1:
        return _count_assignment_range(family, n, 0, total)
    with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
        chunks = list(
            pool.map(lambda b: _count_assignment_range(family, n, *b), ranges)
        )
    merged = chunks[0]
    for chunk in chunks[1:]:
        merged = [a + b for a, b in zip(merged, chunk)]
    return merged


def _permanent_table(family: Family, n: int) -> np.ndarray:
    """Permanent of the assignment-x matrix for every x in [0, 2**K), vectorized.

    A permutation term survives assignment x exactly when x contains the
    term's variable-position mask, so the permanent of every matrix in the
    family is the number of term masks contained in x.  Seeding a histogram
    with one hit per term mask and running a subset-sum transform over the
    bit lattice yields all 2**K permanents at once.
    """
    positions = variable_positions(family, n)
    k_total = len(positions)
    index = {pos: k for k, pos in enumerate(positions)}
    n_fact = math.factorial(n)
    if n_fact < 2**15:
        dtype = np.int16
    elif n_fact < 2**31:
        dtype = np.int32
    else:
        dtype = np.int64
    table = np.zeros(1 << k_total, dtype=dtype)
    for sigma in itertools.permutations(range(n)):
        mask = 0
        for j, i in enumerate(sigma):
            k = index.get((i, j))
            if k is not None:
                mask |= 1 << k
        table[mask] += 1
    for b in range(k_total):
        view = table.reshape(-1, 2, 1 << b)
        view[:, 1, :] += view[:, 0, :]
    return table


def _popcounts(k_total: int) -> np.ndarray:
    pc = np.zeros(1, dtype=np.uint8)
    for _ in range(k_total):
        pc = np.concatenate([pc, pc + 1])
    return pc


def _exact_counts_vectorized(family: Family, n: int) -> list[int]:
    k_total = family.variable_count(n)
    table = _permanent_table(family, n)
    hits = table == family.target_permanent
    counts = np.bincount(_popcounts(k_total)[hits], minlength=k_total + 1)
    return [int(c) for c in counts]


def exact_counts(
    family: Family,
    n: int,
    method: str = "auto",
    workers: int = 1,
    force: bool = False,
) -> ExactCounts:
    """Enumerate all assignments of the variable entries and count target hits.

    ``method="direct"`` builds every matrix and calls the permanent kernel on
    it; ``method="vectorized"`` computes all permanents at once through the
    subset-sum transform.  Both return identical counts; ``auto`` picks by
    size.  Results are deterministic for any method and worker count.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    k_total = family.variable_count(n)
    check_guard(k_total, EXACT_MAX_VARIABLES, "variable-entry count", force)
    if method == "auto":
        method = "direct" if k_total <= _DIRECT_MAX_VARIABLES else "vectorized"
    if method == "direct":
        counts = _exact_counts_direct(family, n, workers)
    elif method == "vectorized":
        counts = _exact_counts_vectorized(family, n)
    else:
        raise ValueError(f"unknown method {method!r}")
    return ExactCounts(family, n, k_total, tuple(counts))


def p_eval(counts: ExactCounts, r: float) -> float:
    """Exact probability that the permanent equals the family target.

    Kept in the Bernstein-style basis r**i * (1-r)**(K-i) to avoid the
    cancellation a monomial expansion would suffer; summed with fsum.
    """
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"r must be in [0, 1], got {r}")
    k_total = counts.variable_count
    s = 1.0 - r
    total = math.fsum(
        float(c) * r**i * s ** (k_total - i)
        for i, c in enumerate(counts.counts)
        if c
    )
    return min(1.0, max(0.0, total))


def compare_grid(
    family: Family,
    n: int,
    grid_points: int = 101,
    method: str = "auto",
    workers: int = 1,
    force: bool = False,
) -> list[tuple[float, float, float, float]]:
    """Rows (r, approximate, exact, difference) on a uniform grid over [0, 1]."""
    if grid_points < 2:
        raise ValueError(f"grid_points must be >= 2, got {grid_points}")
    model = approx_model(family, n)
    counts = exact_counts(family, n, method=method, workers=workers, force=force)
    rows = []
    for i in range(grid_points):
        r = i / (grid_points - 1)
        q = q_eval(model, r)
        p = p_eval(counts, r)
        rows.append((r, q, p, q - p))
    return rows


def bernstein_string(counts: ExactCounts) -> str:
    """Render the exact probability as a sum of r**i * (1-r)**(K-i) terms."""
    k_total = counts.variable_count
    parts = []
    for i, c in enumerate(counts.counts):
        if c == 0:
            continue
        factors = []
        if c != 1 or i == k_total == 0:
            factors.append(str(c))
        if i == 1:
            factors.append("r")
        elif i > 1:
            factors.append(f"r^{i}")
        rest = k_total - i
        if rest == 1:
            factors.append("(1-r)")
        elif rest > 1:
            factors.append(f"(1-r)^{rest}")
        if not factors:
            factors.append("1")
        parts.append("".join(factors))
    return "+".join(parts) if parts else "0"
