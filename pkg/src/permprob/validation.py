"""One-shot offline validation of every cross-route identity the library claims.

Each check pits at least two independent computations against each other
(closed form vs recurrence vs cycle sum vs enumeration, product form vs
exhaustive counts, generated slices vs vendored reference terms), so a
regression in any single route surfaces as a named failure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .matrices import BinaryMatrix, Family, permanent_ryser
from .output import CsvDoc, make_dist_doc, make_exact_doc
from .probability import approx_model, compare_grid, exact_counts, p_eval, q_eval
from .sequences import builtin_checks
from .termdist import (
    e_table,
    e_table_bruteforce,
    v_closed_form,
    v_via_w,
    w_closed_form,
    w_recurrence_table,
    w_via_cycles,
)

# Vendored reference triangles for the two non-trivial families (rows n=1..).
REFERENCE_W_TRIANGLE: dict[int, tuple[int, ...]] = {
    1: (1, 0),
    2: (1, 0, 1),
    3: (1, 0, 3, 2),
    4: (1, 0, 6, 8, 9),
    5: (1, 0, 10, 20, 45, 44),
    6: (1, 0, 15, 40, 135, 264, 265),
}
REFERENCE_V_TRIANGLE: dict[int, tuple[int, ...]] = {
    1: (0, 1),
    2: (0, 1, 1),
    3: (0, 1, 2, 3),
    4: (0, 1, 3, 9, 11),
    5: (0, 1, 4, 18, 44, 53),
    6: (0, 1, 5, 30, 110, 265, 309),
    7: (0, 1, 6, 45, 220, 795, 1854, 2119),
    8: (0, 1, 7, 63, 385, 1855, 6489, 14833, 16687),
}
# Vendored exact assignment counts at n=3 for all three families.
REFERENCE_EXACT_COUNTS_N3: dict[Family, tuple[int, ...]] = {
    Family.A: (1, 9, 36, 78, 90, 45, 6, 0, 0, 0),
    Family.B: (1, 6, 13, 10, 2, 0, 0, 0),
    Family.C: (1, 6, 12, 6, 0, 0, 0),
}


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _ones_minus_identity(n: int) -> BinaryMatrix:
    return BinaryMatrix.from_rows(
        [[0 if i == j else 1 for j in range(n)] for i in range(n)]
    )


def _ones_minus_identity_except_corner(n: int) -> BinaryMatrix:
    return BinaryMatrix.from_rows(
        [
            [1 if (i != j or (i == 0 and j == 0)) else 0 for j in range(n)]
            for i in range(n)
        ]
    )


def run_offline_checks(
    bruteforce_n: int = 8,
    table_n: int = 12,
    force: bool = False,
) -> list[CheckResult]:
    """Run every offline cross-route check; failures come back as results."""
    results = []

    def add(name: str, passed: bool, detail: str = "") -> None:
        results.append(CheckResult(name, passed, detail))

    # reference triangles
    bad = [
        (n, list(e_table(Family.C, n).counts))
        for n, row in REFERENCE_W_TRIANGLE.items()
        if e_table(Family.C, n).counts != row
    ]
    add("w-triangle-reference", not bad, f"mismatch at {bad[:1]}" if bad else "n=1..6")
    bad = [
        (n, list(e_table(Family.B, n).counts))
        for n, row in REFERENCE_V_TRIANGLE.items()
        if e_table(Family.B, n).counts != row
    ]
    add("v-triangle-reference", not bad, f"mismatch at {bad[:1]}" if bad else "n=1..8")

    # four-route agreement
    table = w_recurrence_table(table_n)
    bad = [
        (n, m)
        for n in range(1, table_n + 1)
        for m in range(n + 1)
        if not (
            w_closed_form(n, m) == table[n][m] == w_via_cycles(n, m)
        )
    ]
    add(
        "w-closed-vs-recurrence-vs-cycles",
        not bad,
        f"first mismatch at {bad[:1]}" if bad else f"n<={table_n}",
    )
    bad = [
        (n, m)
        for n in range(1, table_n + 1)
        for m in range(1, n + 1)
        if v_closed_form(n, m) != v_via_w(n, m)
    ]
    add(
        "v-closed-vs-identity",
        not bad,
        f"first mismatch at {bad[:1]}" if bad else f"n<={table_n}",
    )

    # enumeration of the symmetric group
    bad = []
    for family in Family:
        for n in range(1, bruteforce_n + 1):
            if e_table(family, n) != e_table_bruteforce(family, n, force=force):
                bad.append((family.value, n))
    add(
        "e-table-vs-bruteforce",
        not bad,
        f"first mismatch at {bad[:1]}" if bad else f"all families, n<={bruteforce_n}",
    )

    # total term count
    bad = [
        (family.value, n)
        for family in Family
        for n in range(1, table_n + 1)
        if e_table(family, n).total() != math.factorial(n)
    ]
    add("term-count-totals", not bad, f"mismatch at {bad[:1]}" if bad else f"n<={table_n}")

    # diagonal values equal permanents of the matching fully-pinned matrices
    bad = [
        n
        for n in range(1, table_n + 1)
        if permanent_ryser(_ones_minus_identity(n)) != w_closed_form(n, n)
    ]
    add("w-diagonal-vs-permanent", not bad, f"mismatch at n={bad[:1]}" if bad else f"n<={table_n}")
    bad = [
        n
        for n in range(1, table_n + 1)
        if permanent_ryser(_ones_minus_identity_except_corner(n)) != v_closed_form(n, n)
    ]
    add("v-diagonal-vs-permanent", not bad, f"mismatch at n={bad[:1]}" if bad else f"n<={table_n}")

    # exhaustive counts at n=3, both enumeration methods
    bad_entries = []
    for family, expected in REFERENCE_EXACT_COUNTS_N3.items():
        for method in ("direct", "vectorized"):
            got = exact_counts(family, 3, method=method).counts
            if got != expected:
                bad_entries.append((family.value, method, list(got)))
    add(
        "exact-counts-n3-reference",
        not bad_entries,
        f"mismatch: {bad_entries[:1]}" if bad_entries else "A/B/C, both methods",
    )

    # independence assumption is exact at n=2
    worst = 0.0
    for family in Family:
        for _, _, _, diff in compare_grid(family, 2):
            worst = max(worst, abs(diff))
    add("n2-exactness", worst <= 1e-12, f"max |Q-P| = {worst:.3g}")

    # endpoint behaviour at n=3
    ok = True
    detail = ""
    for family in Family:
        model = approx_model(family, 3)
        counts = exact_counts(family, 3)
        if abs(q_eval(model, 0.0) - 1.0) > 1e-12 or abs(p_eval(counts, 0.0) - 1.0) > 1e-12:
            ok, detail = False, f"{family.value}: r=0 endpoint"
        if family in (Family.A, Family.B):
            if q_eval(model, 1.0) > 1e-12 or p_eval(counts, 1.0) > 1e-12:
                ok, detail = False, f"{family.value}: r=1 endpoint"
    add("probability-endpoints-n3", ok, detail)

    # vendored sequence slices
    seq_checks = builtin_checks()
    bad = [c.ref.oeis_id for c in seq_checks if not c.passed]
    add(
        "sequence-references",
        not bad,
        f"failed: {bad}" if bad else f"{len(seq_checks)} slices",
    )

    return results


def verify_artifact(path: str, force: bool = False) -> CheckResult:
    """Re-generate a previously emitted CSV artifact and compare byte-for-byte."""
    name = f"artifact:{path}"
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        return CheckResult(name, False, f"cannot read: {exc}")
    try:
        doc = CsvDoc.parse(text)
        meta = doc.metadata()
        kind = meta.get("kind")
        if kind == "dist":
            expected = make_dist_doc(Family(meta["family"]), int(meta["n"])).render()
        elif kind == "exact":
            counts = exact_counts(Family(meta["family"]), int(meta["n"]), force=force)
            expected = make_exact_doc(counts).render()
        elif kind == "compare":
            from .output import make_compare_doc

            families = [Family(v) for v in meta["families"].split(",")]
            n = int(meta["n"])
            grid = int(meta["grid"])
            grids = {
                fam: compare_grid(fam, n, grid_points=grid, force=force)
                for fam in families
            }
            expected = make_compare_doc(n, grid, families, grids).render()
        else:
            return CheckResult(name, False, "no recognizable artifact metadata")
    except (KeyError, ValueError) as exc:
        return CheckResult(name, False, f"malformed artifact: {exc}")
    if text == expected:
        return CheckResult(name, True, f"{kind} artifact matches regenerated values")
    for lineno, (got, want) in enumerate(
        zip(text.splitlines(), expected.splitlines()), start=1
    ):
        if got != want:
            return CheckResult(name, False, f"line {lineno} differs from regenerated value")
    return CheckResult(name, False, "length differs from regenerated artifact")
