"""Closed-form run/join expectations for uniformly distributed tables.

A uniformly distributed table over cardinalities ``N_1..N_c`` includes
each of the ``prod(N_i)`` possible tuples independently with probability
``p``.  For a recursive sort, column ``j`` behaves like the second
column of a two-column table with ``N1 <- N_1*...*N_{j-1}``,
``N2 <- N_j`` and ``p <- rho(N_{j+1}*...*N_c, p)``, where ``rho(N, p) =
1 - (1-p)^N`` is the probability that a block of ``N`` tuple slots is
non-empty.  Expected runs in the column are then the expected number of
present prefix groups minus the expected seamless joins between them.

Join probabilities between two non-empty blocks:

* ``p_dd`` -- both blocks counting upward (lexicographic adjacency),
  ``N2 * p^2 * (1-p)^(N2-1) / rho^2``.
* ``p_ud`` -- blocks with opposite sweep directions (reflected Gray
  adjacency), ``p^2 * (1 - (1-p)^(2*N2)) / (rho^2 * (1 - (1-p)^2))``.

The expected join count uses the exact finite-block sum for the
lexicographic order and the infinite-column approximation
``lambda * rho * N1`` (absolute error at most one) for the reflected
order.  Endpoint values at p in {0, 1} are defined by limits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

LEMMA_FAMILIES = ("lexicographic", "reflected_gray")


@dataclass(frozen=True)
class UniformModel:
    """Column cardinalities plus the tuple presence probability."""

    cardinalities: tuple[int, ...]
    p: float

    def __post_init__(self):
        if not 0 < self.p <= 1:
            raise ValueError(f"presence probability must be in (0, 1], got {self.p}")
        if not self.cardinalities or any(n < 1 for n in self.cardinalities):
            raise ValueError("every cardinality must be >= 1")

    @property
    def tuple_space(self) -> int:
        out = 1
        for n in self.cardinalities:
            out *= n
        return out


@dataclass(frozen=True)
class ExpectationReport:
    """Per-column expected runs and joins under a family's recursive sort.

    ``column_error_bound`` is the documented absolute error of each
    column's value: 0 for the exact lexicographic join formula, 1 for
    the reflected approximation.
    """

    family: str
    expected_runs: tuple[float, ...]
    expected_joins: tuple[float, ...]
    expected_distinct_rows: float
    column_error_bound: float

    @property
    def expected_total_runs(self) -> float:
        return sum(self.expected_runs)

    def as_json(self) -> dict:
        return {
            "family": self.family,
            "expected_runs": list(self.expected_runs),
            "expected_joins": list(self.expected_joins),
            "expected_total_runs": self.expected_total_runs,
            "expected_distinct_rows": self.expected_distinct_rows,
            "column_error_bound": self.column_error_bound,
        }


def rho(n_block: int, p: float) -> float:
    """Probability that a block of ``n_block`` tuple slots is non-empty."""
    if n_block < 1:
        raise ValueError("block size must be >= 1")
    if p <= 0:
        return 0.0
    if p >= 1:
        return 1.0
    # 1 - (1-p)^N in log space to survive tiny p and large N
    return -math.expm1(n_block * math.log1p(-p))


def p_dd(n2: int, p: float) -> float:
    """Join probability between two non-empty same-direction blocks."""
    if n2 < 1:
        raise ValueError("block size must be >= 1")
    if n2 == 1:
        return 1.0
    if p <= 0:
        return 1.0 / n2  # limit as p -> 0
    if p >= 1:
        return 0.0
    log_q = math.log1p(-p)
    r = -math.expm1(n2 * log_q)
    return n2 * math.exp(2 * math.log(p) + (n2 - 1) * log_q - 2 * math.log(r))


def p_ud(n2: int, p: float) -> float:
    """Join probability between two non-empty opposite-direction blocks."""
    if n2 < 1:
        raise ValueError("block size must be >= 1")
    if n2 == 1:
        return 1.0
    if p <= 0:
        return 1.0 / n2
    if p >= 1:
        return 1.0
    log_q = math.log1p(-p)
    r = -math.expm1(n2 * log_q)
    num = -math.expm1(2 * n2 * log_q)
    den = -math.expm1(2 * log_q)
    return (p * p * num) / (r * r * den)


def lambda_reflected(n2: int, p: float) -> float:
    """Per-boundary join probability for an infinitely long reflected sort."""
    if n2 == 1:
        return 1.0
    if p >= 1:
        return 1.0
    r = rho(n2, p)
    return (p_ud(n2, p) + (1.0 - r) * p_dd(n2, p)) / (2.0 - r)


def expected_joins_lexico(n1: int, n2: int, p: float) -> float:
    """Exact expected seamless joins in the second column, ``n1`` blocks of ``n2``."""
    if n1 < 1:
        raise ValueError("block count must be >= 1")
    r = rho(n2, p)
    if r == 0.0:
        return 0.0
    return p_dd(n2, p) * (r * n1 + (1.0 - r) ** n1 - 1.0)


def expected_joins_reflected(n1: int, n2: int, p: float) -> float:
    """Reflected-sort expected joins; absolute error at most one."""
    if n1 < 1:
        raise ValueError("block count must be >= 1")
    return lambda_reflected(n2, p) * rho(n2, p) * n1


_JOINS = {
    "lexicographic": expected_joins_lexico,
    "reflected_gray": expected_joins_reflected,
}


def expected_runs(model: UniformModel, family: str) -> ExpectationReport:
    """Per-column expected runs for a recursive sort of a uniform table."""
    if family not in _JOINS:
        raise ValueError(f"no analytic model for family {family!r}")
    joins_fn = _JOINS[family]
    cards = model.cardinalities
    c = len(cards)
    suffix = [1] * (c + 1)
    for j in range(c - 1, -1, -1):
        suffix[j] = suffix[j + 1] * cards[j]
    runs: list[float] = []
    joins: list[float] = []
    prefix = 1
    for j in range(c):
        p_eff = rho(suffix[j + 1], model.p)
        present = prefix * cards[j] * p_eff
        s = 0.0 if j == 0 else joins_fn(prefix, cards[j], p_eff)
        runs.append(present - s)
        joins.append(s)
        prefix *= cards[j]
    return ExpectationReport(
        family=family,
        expected_runs=tuple(runs),
        expected_joins=tuple(joins),
        expected_distinct_rows=model.p * model.tuple_space,
        column_error_bound=0.0 if family == "lexicographic" else 1.0,
    )


def complete_runs(cards: Sequence[int], family: str) -> tuple[tuple[int, ...], int]:
    """Exact per-column and total runs of a sorted complete table.

    ``family`` is ``"lexicographic"`` or ``"gray"`` (either Gray code:
    both agree on complete tables).
    """
    per_column: list[int] = []
    prefix = 1
    for n in cards:
        if n < 1:
            raise ValueError("cardinalities must be >= 1")
        if family == "lexicographic":
            per_column.append(prefix * n)
        elif family == "gray":
            per_column.append(1 + (n - 1) * prefix)
        else:
            raise ValueError(f"unknown complete-table family {family!r}")
        prefix *= n
    return tuple(per_column), sum(per_column)


def gray_benefit(n_value: int, c: int) -> Fraction:
    """Relative run saving of Gray over lexicographic on a complete N^c table."""
    if n_value < 2 or c < 1:
        raise ValueError("need N >= 2 and c >= 1")
    lex = Fraction(n_value ** (c + 1) - 1, n_value - 1) - 1
    gray = n_value**c + c - 1
    return (lex - gray) / lex


@dataclass(frozen=True)
class InequalityReport:
    """Outcome of sampling one block-swap inequality over a p grid."""

    family: str
    n2: int
    n3: int
    holds: bool
    margin: float
    points: int

    def as_json(self) -> dict:
        return {
            "family": self.family,
            "n2": self.n2,
            "n3": self.n3,
            "holds": self.holds,
            "margin": self.margin,
            "points": self.points,
        }


def _mp_rho(n: int, p):
    return 1 - (1 - p) ** n


def _mp_pdd(n: int, p):
    r = _mp_rho(n, p)
    return n * p**2 * (1 - p) ** (n - 1) / r**2


def _mp_pud(n: int, p):
    r = _mp_rho(n, p)
    return p**2 * (1 - (1 - p) ** (2 * n)) / (r**2 * (1 - (1 - p) ** 2))


def _mp_lambda(n: int, p):
    r = _mp_rho(n, p)
    return (_mp_pud(n, p) + (1 - r) * _mp_pdd(n, p)) / (2 - r)


def inequality_sides(n2: int, n3: int, family: str, p) -> tuple:
    """LHS and RHS of the column-swap inequality at one mpmath point.

    The inequality states that with block sizes ``n2 < n3``, putting the
    smaller-cardinality column first loses fewer runs to the swap:
    LHS < RHS for all p in (0, 1).
    """
    if family == "lexicographic":
        join = _mp_pdd
    elif family == "reflected_gray":
        join = _mp_lambda
    else:
        raise ValueError(f"no swap inequality for family {family!r}")
    rho2 = _mp_rho(n2, p)
    rho3 = _mp_rho(n3, p)
    rho23 = _mp_rho(n2 * n3, p)
    lhs = (1 - join(n3, p)) * rho3 * n2 - join(n2, rho3) * rho23
    rhs = (1 - join(n2, p)) * rho2 * n3 - join(n3, rho2) * rho23
    return lhs, rhs


def check_order_inequality(
    n2: int,
    n3: int,
    family: str,
    grid_points: int = 999,
    dps: int = 50,
) -> InequalityReport:
    """Sample the swap inequality on a uniform p grid at high precision.

    Requires ``2 <= n2 < n3``.  ``holds`` is true when every grid point
    keeps the strict LHS < RHS sign; ``margin`` is the smallest observed
    RHS - LHS gap.
    """
    if not 2 <= n2 < n3:
        raise ValueError(f"need 2 <= N2 < N3, got N2={n2}, N3={n3}")
    if grid_points < 1:
        raise ValueError("grid must contain at least one point")
    margin = math.inf
    with mpmath.workdps(dps):
        denom = grid_points + 1
        for k in range(1, denom):
            p = mpmath.mpf(k) / denom
            lhs, rhs = inequality_sides(n2, n3, family, p)
            gap = float(rhs - lhs)
            if gap < margin:
                margin = gap
    return InequalityReport(family, n2, n3, margin > 0.0, margin, grid_points)


def inequality_sweep(
    n2: int,
    n3: int,
    family: str,
    grid_points: int = 999,
    dps: int = 50,
):
    """Rows ``(p, n2, n3, lhs, rhs, gap)`` for plotting or TSV export."""
    if not 2 <= n2 < n3:
        raise ValueError(f"need 2 <= N2 < N3, got N2={n2}, N3={n3}")
    rows = []
    with mpmath.workdps(dps):
        denom = grid_points + 1
        for k in range(1, denom):
            p = mpmath.mpf(k) / denom
            lhs, rhs = inequality_sides(n2, n3, family, p)
            rows.append((float(p), n2, n3, float(lhs), float(rhs), float(rhs - lhs)))
    return rows
