"""Run counts, seamless joins, order predicates and suboptimality bounds.

The central quantity is the total number of maximal runs of identical
values summed over all columns.  On any table with at least one row it
satisfies ``total_runs = c + hamming_sum``: every adjacent row pair
starts exactly one new run per differing component.

Seamless joins are defined operationally on any row sequence (a boundary
where the preceding columns change but this column's value does not);
their analytic meaning -- merged runs across prefix blocks -- only holds
for recursively sorted tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .table import ColumnProfile, EncodedTable


@dataclass(frozen=True)
class RunStats:
    """Per-column run and join counts plus the adjacent-row Hamming total."""

    runs_per_column: tuple[int, ...]
    joins_per_column: tuple[int, ...]
    hamming_sum: int

    @property
    def total_runs(self) -> int:
        return sum(self.runs_per_column)

    @property
    def total_joins(self) -> int:
        return sum(self.joins_per_column)

    def as_json(self) -> dict:
        return {
            "runs": list(self.runs_per_column),
            "joins": list(self.joins_per_column),
            "hamming_sum": self.hamming_sum,
            "total_runs": self.total_runs,
        }


@dataclass(frozen=True)
class BoundReport:
    """Suboptimality bounds for recursive sorting, kept as exact rationals.

    ``lower_bound`` is the fewest runs any row order can reach
    (``distinct_rows + c - 1``); ``upper_bound`` caps any recursively
    sorted table (``sum_j min(n, N_1..j)``); ``mu = upper/lower``.
    ``mu_gc`` tightens the column bound to ``1 + (N_j - 1) * N_1..j-1``
    for Gray-code orders.
    """

    mu: Fraction
    mu_gc: Fraction
    lower_bound_runs: int
    upper_bound_runs: int

    def as_json(self) -> dict:
        return {
            "mu": float(round(self.mu, 4)),
            "mu_gc": float(round(self.mu_gc, 4)),
            "mu_exact": f"{self.upper_bound_runs}/{self.lower_bound_runs}",
            "mu_gc_exact": f"{self.mu_gc.numerator}/{self.mu_gc.denominator}",
            "lower_bound": self.lower_bound_runs,
            "upper_bound": self.upper_bound_runs,
        }


def run_count(t: EncodedTable) -> RunStats:
    """Count runs, seamless joins and adjacent-row Hamming distance.

    A one-row table has one run per column; an empty table has zero.
    """
    c = t.n_cols
    n = t.n_rows
    if n == 0:
        return RunStats((0,) * c, (0,) * c, 0)
    if n == 1:
        return RunStats((1,) * c, (0,) * c, 0)
    codes = np.asarray(t.codes)
    diffs = codes[1:] != codes[:-1]
    runs = tuple(int(x) for x in 1 + diffs.sum(axis=0))
    hamming = int(diffs.sum())
    joins = [0] * c
    prefix_changed = np.zeros(n - 1, dtype=bool)
    for j in range(1, c):
        prefix_changed |= diffs[:, j - 1]
        joins[j] = int((prefix_changed & ~diffs[:, j]).sum())
    return RunStats(runs, tuple(joins), hamming)


def seamless_joins(t: EncodedTable) -> tuple[int, ...]:
    """Per-column seamless-join counts (always 0 for the first column)."""
    return run_count(t).joins_per_column


def is_discriminating(values: Iterable) -> bool:
    """True iff every group of equal items appears consecutively."""
    seen = set()
    last = _SENTINEL
    for v in values:
        if v != last:
            if v in seen:
                return False
            seen.add(v)
            last = v
    return True


_SENTINEL = object()


def is_recursive_ordering(t: EncodedTable | Sequence[Sequence[int]]) -> bool:
    """True iff every prefix projection of the row sequence is discriminating."""
    rows = t.codes if isinstance(t, EncodedTable) else [tuple(r) for r in t]
    if not rows:
        return True
    c = len(rows[0])
    for k in range(1, c + 1):
        if not is_discriminating(row[:k] for row in rows):
            return False
    return True


def mu_bounds(p: ColumnProfile) -> BoundReport:
    """Exact bounds for the profile's current column order."""
    n = p.distinct_rows
    if n < 1:
        raise ValueError("mu bounds need at least one distinct row")
    c = len(p.cardinalities)
    lower = n + c - 1
    upper = sum(min(n, prod) for prod in p.prefix_products)
    upper_gc = 0
    prev = 1
    for card, prod in zip(p.cardinalities, p.prefix_products):
        upper_gc += min(n, 1 + (card - 1) * prev)
        prev = prod
    return BoundReport(
        mu=Fraction(upper, lower),
        mu_gc=Fraction(upper_gc, lower),
        lower_bound_runs=lower,
        upper_bound_runs=upper,
    )


def adversarial_table(n: int, c: int) -> EncodedTable:
    """Construction on which the as-given order is a factor ~c from optimal.

    First column: ``n`` distinct values already sorted.  Every other
    column alternates 0/1 with row parity, so the as-built table has
    ``n * c`` runs, while moving any other column in front lets any
    recursive sort reach ``n + 2(c - 1)``.
    """
    if n < 2 or c < 2:
        raise ValueError("need n >= 2 rows and c >= 2 columns")
    rows = [(i,) + (i % 2,) * (c - 1) for i in range(n)]
    return EncodedTable.from_codes(rows, (n,) + (2,) * (c - 1))
