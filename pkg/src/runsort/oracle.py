"""Exact ground truth at desk scale plus the synthetic table generator.

The minimum-RunCount row order is found exactly through the identity
``total_runs = c + sum of adjacent-row Hamming distances``: minimizing
runs is a minimum Hamiltonian path over the distinct rows with Hamming
weights, solved by subset dynamic programming.  Duplicate rows can be
glued to their representative beforehand because Hamming distance obeys
the triangle inequality and d(x, x) = 0, so some optimal path always
visits equal rows consecutively.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .metrics import mu_bounds, run_count
from .models import UniformModel
from .orders import OrderSpec, sort_table
from .table import ColumnProfile, EncodedTable, Permutation


class BudgetError(Exception):
    """An exact computation was refused because it exceeds its size budget."""


@dataclass(frozen=True)
class OracleResult:
    optimal_runs: int
    witness_order: tuple[int, ...]
    explored: int

    def as_json(self) -> dict:
        return {
            "optimal_runs": self.optimal_runs,
            "witness_order": list(self.witness_order),
            "explored": self.explored,
        }


@dataclass(frozen=True)
class ColumnSearchResult:
    best_perm: Permutation
    best_runs: int
    per_perm: dict[tuple[int, ...], int]

    def as_json(self) -> dict:
        return {
            "best_perm": list(self.best_perm.mapping),
            "best_runs": self.best_runs,
            "per_perm": {",".join(map(str, k)): v for k, v in self.per_perm.items()},
        }


def _distinct_rows(t: EncodedTable) -> tuple[list[tuple[int, ...]], list[list[int]]]:
    groups: dict[tuple[int, ...], list[int]] = {}
    for i, row in enumerate(t.codes):
        groups.setdefault(row, []).append(i)
    rows = list(groups)
    return rows, [groups[r] for r in rows]


def _hamming_matrix(rows: list[tuple[int, ...]]) -> list[list[int]]:
    d = len(rows)
    dist = [[0] * d for _ in range(d)]
    for a in range(d):
        ra = rows[a]
        for b in range(a + 1, d):
            rb = rows[b]
            h = sum(x != y for x, y in zip(ra, rb))
            dist[a][b] = h
            dist[b][a] = h
    return dist


def _held_karp_path(dist: list[list[int]]) -> tuple[int, list[int], int]:
    """Minimum open Hamiltonian path cost, one optimal node order, states used."""
    d = len(dist)
    if d == 1:
        return 0, [0], 1
    full = 1 << d
    INF = math.inf
    dp = [[INF] * d for _ in range(full)]
    parent = [[-1] * d for _ in range(full)]
    for v in range(d):
        dp[1 << v][v] = 0
    explored = d
    for mask in range(1, full):
        row = dp[mask]
        for last in range(d):
            cost = row[last]
            if cost == INF:
                continue
            dlast = dist[last]
            rest = ~mask
            for nxt in range(d):
                if (rest >> nxt) & 1:
                    cand = cost + dlast[nxt]
                    nm = mask | (1 << nxt)
                    if cand < dp[nm][nxt]:
                        if dp[nm][nxt] == INF:
                            explored += 1
                        dp[nm][nxt] = cand
                        parent[nm][nxt] = last
    final = dp[full - 1]
    best_end = min(range(d), key=final.__getitem__)
    order = [best_end]
    mask = full - 1
    node = best_end
    while parent[mask][node] != -1:
        prev = parent[mask][node]
        mask ^= 1 << node
        node = prev
        order.append(node)
    order.reverse()
    return int(final[best_end]), order, explored


def brute_force_min_runs(t: EncodedTable, limit: int = 15) -> OracleResult:
    """Exact minimum RunCount over all row orders (subset DP on distinct rows)."""
    if t.n_rows == 0:
        raise ValueError("cannot optimize an empty table")
    rows, groups = _distinct_rows(t)
    d = len(rows)
    if d > limit:
        raise BudgetError(f"{d} distinct rows exceed the DP limit of {limit}")
    cost, order, explored = _held_karp_path(_hamming_matrix(rows))
    witness: list[int] = []
    for node in order:
        witness.extend(groups[node])
    return OracleResult(t.n_cols + cost, tuple(witness), explored)


def exhaustive_min_runs(t: EncodedTable, limit: int = 8) -> OracleResult:
    """Independent oracle: try every permutation of the distinct rows."""
    if t.n_rows == 0:
        raise ValueError("cannot optimize an empty table")
    rows, groups = _distinct_rows(t)
    d = len(rows)
    if d > limit:
        raise BudgetError(f"{d} distinct rows exceed the exhaustive limit of {limit}")
    dist = _hamming_matrix(rows)
    best = math.inf
    best_order: tuple[int, ...] = tuple(range(d))
    explored = 0
    for perm in itertools.permutations(range(d)):
        explored += 1
        cost = 0
        for a, b in zip(perm, perm[1:]):
            cost += dist[a][b]
            if cost >= best:
                break
        if cost < best:
            best = cost
            best_order = perm
    witness: list[int] = []
    for node in best_order:
        witness.extend(groups[node])
    return OracleResult(t.n_cols + int(best), tuple(witness), explored)


def best_column_order(
    t: EncodedTable, family: str, budget: int = 8
) -> ColumnSearchResult:
    """Sort under every column permutation and return the argmin.

    Ties are broken toward the permutation whose cardinality sequence is
    lexicographically smallest (so increasing-cardinality order wins),
    then by the permutation itself.
    """
    c = t.n_cols
    if c > budget:
        raise BudgetError(f"{c} columns exceed the exhaustive budget of {budget}")
    cards = t.cardinalities
    per_perm: dict[tuple[int, ...], int] = {}
    best_key = None
    best_perm: tuple[int, ...] | None = None
    best_runs = -1
    for mapping in itertools.permutations(range(c)):
        perm = Permutation(mapping)
        runs = run_count(sort_table(t, OrderSpec(family, perm))).total_runs
        per_perm[mapping] = runs
        key = (runs, tuple(cards[j] for j in mapping), mapping)
        if best_key is None or key < best_key:
            best_key = key
            best_perm = mapping
            best_runs = runs
    assert best_perm is not None
    return ColumnSearchResult(Permutation(best_perm), best_runs, per_perm)


def _decode_mixed_radix(indexes: np.ndarray, cards: Sequence[int]) -> np.ndarray:
    """Map tuple-space indexes to code rows; the last column varies fastest."""
    c = len(cards)
    out = np.empty((len(indexes), c), dtype=np.int64)
    rem = indexes.astype(np.int64, copy=True)
    for j in range(c - 1, -1, -1):
        out[:, j] = rem % cards[j]
        rem //= cards[j]
    return out


def generate_uniform(
    model: UniformModel,
    seed: int,
    enumeration_budget: int = 2**24,
    sparse: bool = False,
) -> EncodedTable:
    """Sample a uniformly distributed table: each tuple present w.p. ``p``.

    The default path enumerates the whole tuple space, so it refuses
    when the space exceeds ``enumeration_budget`` and suggests
    ``sparse=True``, which draws a Binomial tuple count and then samples
    that many distinct tuples without enumeration (intended for tiny
    ``p * tuple_space``).  Rows come out in a seeded shuffled order.
    """
    space = model.tuple_space
    rng = np.random.default_rng(seed)
    if sparse:
        expected = model.p * space
        if expected > enumeration_budget:
            raise BudgetError(
                f"expected row count {expected:.3g} exceeds budget {enumeration_budget}"
            )
        count = int(rng.binomial(space, model.p)) if model.p < 1 else space
        chosen: set[int] = set()
        while len(chosen) < count:
            need = count - len(chosen)
            draw = rng.integers(0, space, size=max(need * 2, 16))
            for v in draw.tolist():
                if len(chosen) >= count:
                    break
                chosen.add(v)
        indexes = np.fromiter(chosen, dtype=np.int64, count=count)
        rng.shuffle(indexes)
    else:
        if space > enumeration_budget:
            raise BudgetError(
                f"tuple space {space} exceeds enumeration budget "
                f"{enumeration_budget}; use sparse=True for small p * space"
            )
        if model.p >= 1.0:
            indexes = np.arange(space, dtype=np.int64)
        else:
            indexes = np.flatnonzero(rng.random(space) < model.p).astype(np.int64)
        rng.shuffle(indexes)
    codes = _decode_mixed_radix(indexes, model.cardinalities)
    rows = tuple(map(tuple, codes.tolist()))
    return EncodedTable.from_codes(rows, model.cardinalities) if rows else EncodedTable(
        (), tuple(tuple(str(v) for v in range(n)) for n in model.cardinalities)
    )


def _projection_mu(codes: np.ndarray, columns: Sequence[int]) -> Fraction:
    sub = codes[:, list(columns)]
    cards = []
    weights = np.ones(len(columns), dtype=np.int64)
    for j in range(len(columns)):
        cards.append(int(sub[:, j].max()) + 1 if len(sub) else 1)
    # distinct count via mixed-radix packing when it fits 63 bits
    packed_ok = math.prod(cards) < 2**62
    if packed_ok:
        key = np.zeros(len(sub), dtype=np.int64)
        for j, n in enumerate(cards):
            key = key * n + sub[:, j]
        distinct = len(np.unique(key))
    else:
        distinct = len({tuple(r) for r in sub.tolist()})
    # recount cardinalities exactly (a column may not hit its max code)
    exact_cards = [len(np.unique(sub[:, j])) for j in range(len(columns))]
    products = []
    acc = 1
    for n in exact_cards:
        acc *= n
        products.append(acc)
    prof = ColumnProfile(tuple(exact_cards), tuple(products), distinct)
    return mu_bounds(prof).mu


def mu_sweep(
    t: EncodedTable,
    ks: Sequence[int] | None = None,
    trials_per_k: int = 1000,
    seed: int = 0,
) -> list[tuple[int, float, int]]:
    """Mean suboptimality bound over random k-column projections.

    For each dimensionality ``k``, samples up to ``trials_per_k``
    projections (all of them when there are fewer combinations),
    computes the exact bound of each projected table and reports the
    mean.  Projections keep the original relative column order.
    """
    c = t.n_cols
    if ks is None:
        ks = range(1, c + 1)
    codes = np.asarray(t.codes, dtype=np.int64)
    rng = np.random.default_rng(seed)
    out: list[tuple[int, float, int]] = []
    for k in ks:
        if not 1 <= k <= c:
            raise ValueError(f"projection width {k} out of range 1..{c}")
        n_combos = math.comb(c, k)
        if n_combos <= trials_per_k:
            combos = list(itertools.combinations(range(c), k))
        else:
            combos = [tuple(sorted(rng.choice(c, size=k, replace=False).tolist()))
                      for _ in range(trials_per_k)]
        values = [_projection_mu(codes, combo) for combo in combos]
        mean = float(sum(values) / len(values))
        out.append((k, mean, len(combos)))
    return out
