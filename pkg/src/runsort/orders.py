"""The four row orders: lexicographic, two mixed-radix Gray codes, Hilbert.

Every family is a total order on code tuples, exposed both as a
three-way comparator and as an integer rank (the rank of a tuple in the
family's enumeration of the complete tuple space).  Sorting by rank and
sorting by comparator agree; the sort driver uses ranks because they
vectorize.

The reflected Gray order sweeps each component up and down alternately:
the comparison direction at a component flips once for every odd value
passed on the way to it.  The modular Gray order advances each component
by +1 modulo its cardinality; each block of the enumeration restarts the
next component's cycle wherever the previous block left it, which the
rank function tracks with one accumulated shift per remaining column.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .hilbert import bit_widths, compact_hilbert_index
from .table import EncodedTable, Permutation, permute_columns

FAMILIES = ("lexicographic", "reflected_gray", "modular_gray", "hilbert")

RECURSIVE_FAMILIES = ("lexicographic", "reflected_gray", "modular_gray")


class OrderError(ValueError):
    """Tuple/cardinality mismatch handed to a comparator or key."""


@dataclass(frozen=True)
class OrderSpec:
    """An order family plus the column permutation to apply before sorting."""

    family: str
    column_permutation: Permutation | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise OrderError(f"unknown family {self.family!r}; expected one of {FAMILIES}")


def _check_pair(u: Sequence[int], v: Sequence[int], cards: Sequence[int] | None = None):
    if len(u) != len(v):
        raise OrderError(f"tuple lengths differ: {len(u)} vs {len(v)}")
    if cards is not None:
        if len(cards) != len(u):
            raise OrderError(f"cardinality list length {len(cards)} != tuple length {len(u)}")
        for t in (u, v):
            for x, n in zip(t, cards):
                if not 0 <= x < n:
                    raise OrderError(f"code {x} out of range for cardinality {n}")


def cmp_lexicographic(u: Sequence[int], v: Sequence[int]) -> int:
    """Dictionary comparison: the first differing component decides."""
    _check_pair(u, v)
    for a, b in zip(u, v):
        if a != b:
            return -1 if a < b else 1
    return 0


def cmp_reflected_gray(u: Sequence[int], v: Sequence[int], cards: Sequence[int]) -> int:
    """Reflected mixed-radix Gray-code comparison."""
    _check_pair(u, v, cards)
    sign = 1  # +1 while the current component sweeps upward
    for a, b in zip(u, v):
        if a != b:
            return -sign if a < b else sign
        if a & 1:
            sign = -sign
    return 0


def reflected_gray_rank(u: Sequence[int], cards: Sequence[int]) -> int:
    """Position of ``u`` in the reflected Gray enumeration of the full space."""
    _check_pair(u, u, cards)
    rank = 0
    ascending = True
    for a, n in zip(u, cards):
        rank = rank * n + (a if ascending else n - 1 - a)
        if a & 1:
            ascending = not ascending
    return rank


def cmp_modular_gray(u: Sequence[int], v: Sequence[int], cards: Sequence[int]) -> int:
    """Modular mixed-radix Gray-code comparison.

    Components are compared after adding the shift accumulated from the
    common prefix: within the enumeration, the block selected by a
    prefix starts each deeper cycle where the previous block ended.
    """
    _check_pair(u, v, cards)
    c = len(cards)
    shift = [0] * c
    for j, n in enumerate(cards):
        a = (u[j] + shift[j]) % n
        b = (v[j] + shift[j]) % n
        if a != b:
            return -1 if a < b else 1
        q = 1
        for k in range(j + 1, c):
            shift[k] = (shift[k] + a * q) % cards[k]
            q *= cards[k]
    return 0


def modular_gray_rank(u: Sequence[int], cards: Sequence[int]) -> int:
    """Position of ``u`` in the modular Gray enumeration of the full space."""
    _check_pair(u, u, cards)
    c = len(cards)
    shift = [0] * c
    rank = 0
    for j, n in enumerate(cards):
        b = (u[j] + shift[j]) % n
        rank = rank * n + b
        q = 1
        for k in range(j + 1, c):
            shift[k] = (shift[k] + b * q) % cards[k]
            q *= cards[k]
    return rank


def hilbert_key(u: Sequence[int], cards: Sequence[int]) -> int:
    """Compact Hilbert index of ``u`` with widths ``ceil(log2(N_j))``."""
    _check_pair(u, u, cards)
    return compact_hilbert_index(u, bit_widths(cards))


def lexicographic_rank(u: Sequence[int], cards: Sequence[int]) -> int:
    _check_pair(u, u, cards)
    rank = 0
    for a, n in zip(u, cards):
        rank = rank * n + a
    return rank


_RANKS: dict[str, Callable[[Sequence[int], Sequence[int]], int]] = {
    "lexicographic": lexicographic_rank,
    "reflected_gray": reflected_gray_rank,
    "modular_gray": modular_gray_rank,
    "hilbert": hilbert_key,
}


def rank_function(family: str) -> Callable[[Sequence[int], Sequence[int]], int]:
    if family not in _RANKS:
        raise OrderError(f"unknown family {family!r}")
    return _RANKS[family]


def compare(family: str, u: Sequence[int], v: Sequence[int], cards: Sequence[int]) -> int:
    """Three-way comparison under any family."""
    if family == "lexicographic":
        return cmp_lexicographic(u, v)
    if family == "reflected_gray":
        return cmp_reflected_gray(u, v, cards)
    if family == "modular_gray":
        return cmp_modular_gray(u, v, cards)
    if family == "hilbert":
        a, b = hilbert_key(u, cards), hilbert_key(v, cards)
        return (a > b) - (a < b)
    raise OrderError(f"unknown family {family!r}")


def _reflected_ranks_array(codes: np.ndarray, cards: Sequence[int]) -> np.ndarray:
    n_rows = codes.shape[0]
    rank = np.zeros(n_rows, dtype=np.int64)
    ascending = np.ones(n_rows, dtype=bool)
    for j, n in enumerate(cards):
        col = codes[:, j]
        digit = np.where(ascending, col, n - 1 - col)
        rank = rank * n + digit
        ascending ^= (col & 1).astype(bool)
    return rank


def _modular_ranks_array(codes: np.ndarray, cards: Sequence[int]) -> np.ndarray:
    n_rows, c = codes.shape
    shift = np.zeros((n_rows, c), dtype=np.int64)
    rank = np.zeros(n_rows, dtype=np.int64)
    for j, n in enumerate(cards):
        b = (codes[:, j] + shift[:, j]) % n
        rank = rank * n + b
        q = 1
        for k in range(j + 1, c):
            shift[:, k] = (shift[:, k] + b * q) % cards[k]
            q *= cards[k]
    return rank


def sort_order(t: EncodedTable, family: str) -> list[int]:
    """Row indexes of ``t`` in the family's order (stable for duplicates)."""
    cards = t.cardinalities
    n_rows = t.n_rows
    if n_rows <= 1:
        return list(range(n_rows))
    space = 1
    for n in cards:
        space *= n
    if family in ("lexicographic", "reflected_gray", "modular_gray") and space < 2**62:
        codes = np.asarray(t.codes, dtype=np.int64)
        if family == "lexicographic":
            keys = tuple(codes[:, j] for j in range(t.n_cols - 1, -1, -1))
            return list(np.lexsort(keys))
        if family == "reflected_gray":
            ranks = _reflected_ranks_array(codes, cards)
        else:
            ranks = _modular_ranks_array(codes, cards)
        return list(np.argsort(ranks, kind="stable"))
    rank = rank_function(family)
    keyed = [rank(row, cards) for row in t.codes]
    return sorted(range(n_rows), key=keyed.__getitem__)


def sort_table(t: EncodedTable, spec: OrderSpec) -> EncodedTable:
    """Permute columns per ``spec``, then order rows by its family.

    The output's column order is the permuted order.  Duplicate rows
    compare equal and stay adjacent.
    """
    if spec.column_permutation is not None:
        t = permute_columns(t, spec.column_permutation)
    order = sort_order(t, spec.family)
    codes = tuple(t.codes[i] for i in order)
    return EncodedTable(codes, t.dictionaries, t.column_names)
