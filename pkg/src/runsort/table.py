"""Dictionary-encoded tables and the primitives everything else builds on.

A delimited text file is loaded into a :class:`RawTable`, then
:func:`encode` maps every column to dense integer codes ``0..N_i-1``
(``N_i`` = number of distinct values in column ``i``).  All ordering and
metric logic downstream operates on codes only, so changing the value
order within a column is a pure re-encoding step.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence


class TableError(Exception):
    """Base class for table construction and ingestion errors."""


class RaggedRowError(TableError):
    """A row whose field count differs from the first row's."""

    def __init__(self, line_number: int, expected: int, got: int):
        self.line_number = line_number
        self.expected = expected
        self.got = got
        super().__init__(
            f"ragged row at line {line_number}: expected {expected} fields, got {got}"
        )


class EmptyInputError(TableError):
    """Input stream contained no data rows."""


class ValueOrderError(TableError):
    """An explicit value order does not cover the data."""


class PermutationError(TableError):
    """A column permutation is malformed or has the wrong length."""


@dataclass(frozen=True)
class RawTable:
    """Rows of text values, all of the same width."""

    rows: tuple[tuple[str, ...], ...]
    width: int
    header: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.width < 1:
            raise TableError("table width must be at least 1")
        for i, row in enumerate(self.rows):
            if len(row) != self.width:
                raise RaggedRowError(i + 1, self.width, len(row))

    @property
    def n_rows(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class Permutation:
    """A bijection on ``{0, ..., k-1}``, used for column and value orders."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        k = len(self.mapping)
        if sorted(self.mapping) != list(range(k)):
            raise PermutationError(f"not a bijection on 0..{k - 1}: {self.mapping}")

    @classmethod
    def identity(cls, k: int) -> "Permutation":
        return cls(tuple(range(k)))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.mapping)
        for i, j in enumerate(self.mapping):
            inv[j] = i
        return Permutation(tuple(inv))

    def __len__(self) -> int:
        return len(self.mapping)

    def __iter__(self):
        return iter(self.mapping)


@dataclass(frozen=True)
class EncodedTable:
    """Row-major matrix of integer codes plus per-column dictionaries.

    Immutable after construction; every operation on it is a pure
    function, so instances are safe to share across threads.
    """

    codes: tuple[tuple[int, ...], ...]
    dictionaries: tuple[tuple[str, ...], ...]
    column_names: tuple[str, ...] | None = None

    def __post_init__(self):
        cards = self.cardinalities
        for row in self.codes:
            if len(row) != len(self.dictionaries):
                raise TableError("row width does not match dictionary count")
            for code, n in zip(row, cards):
                if not 0 <= code < n:
                    raise TableError(f"code {code} out of range for cardinality {n}")
        for d in self.dictionaries:
            if len(set(d)) != len(d):
                raise TableError("dictionary contains duplicate values")

    @property
    def cardinalities(self) -> tuple[int, ...]:
        return tuple(len(d) for d in self.dictionaries)

    @property
    def n_rows(self) -> int:
        return len(self.codes)

    @property
    def n_cols(self) -> int:
        return len(self.dictionaries)

    def decoded_rows(self) -> list[tuple[str, ...]]:
        """Map codes back through the dictionaries to the original values."""
        dicts = self.dictionaries
        return [tuple(dicts[j][code] for j, code in enumerate(row)) for row in self.codes]

    @classmethod
    def from_codes(
        cls,
        rows: Iterable[Sequence[int]],
        cardinalities: Sequence[int] | None = None,
        column_names: Sequence[str] | None = None,
    ) -> "EncodedTable":
        """Build a synthetic table directly from code rows.

        Dictionaries are stringified code values.  When ``cardinalities``
        is omitted, each column's cardinality is one more than its
        largest code.
        """
        code_rows = tuple(tuple(int(v) for v in row) for row in rows)
        if cardinalities is None:
            if not code_rows:
                raise TableError("cardinalities required for an empty table")
            width = len(code_rows[0])
            cardinalities = [max(row[j] for row in code_rows) + 1 for j in range(width)]
        dictionaries = tuple(tuple(str(v) for v in range(n)) for n in cardinalities)
        names = tuple(column_names) if column_names is not None else None
        return cls(code_rows, dictionaries, names)


@dataclass(frozen=True)
class ColumnProfile:
    """Cardinalities, their prefix products and the exact distinct-row count.

    Prefix products can exceed 64 bits for wide tables; they are kept as
    arbitrary-precision integers.
    """

    cardinalities: tuple[int, ...]
    prefix_products: tuple[int, ...]
    distinct_rows: int


def load_delimited(source, delimiter: str = ",", has_header: bool = False) -> RawTable:
    """Parse delimited UTF-8 text into a :class:`RawTable`.

    ``source`` may be a path, a text stream or a binary stream.  One row
    per line; the delimiter must be a single character.  Embedded
    delimiters and quoting are not supported.  A row with a deviating
    field count raises :class:`RaggedRowError` naming the offending file
    line; empty input raises :class:`EmptyInputError`.
    """
    if len(delimiter) != 1:
        raise TableError(f"delimiter must be a single character, got {delimiter!r}")
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8", newline="") as fh:
            text = fh.read()
    elif isinstance(source, bytes):
        text = source.decode("utf-8")
    else:
        data = source.read()
        text = data.decode("utf-8") if isinstance(data, bytes) else data

    lines = text.splitlines()
    header: tuple[str, ...] | None = None
    rows: list[tuple[str, ...]] = []
    width: int | None = None
    for lineno, line in enumerate(lines, start=1):
        if line == "" and lineno == len(lines):
            break  # trailing newline, not a row
        fields = tuple(line.split(delimiter))
        if width is None:
            width = len(fields)
        elif len(fields) != width:
            raise RaggedRowError(lineno, width, len(fields))
        if has_header and header is None:
            header = fields
            continue
        rows.append(fields)
    if not rows:
        raise EmptyInputError("no data rows in input")
    assert width is not None
    return RawTable(tuple(rows), width, header)


def _column_order(values: list[str], policy, col: int) -> list[str]:
    distinct = set(values)
    if policy == "alphabetical":
        # Numeric-looking text is still compared as text, like Unix sort.
        return sorted(distinct)
    if policy == "frequency_desc":
        counts = Counter(values)
        # Equal frequencies fall back to alphabetical order.
        return sorted(distinct, key=lambda v: (-counts[v], v))
    raise ValueOrderError(f"unknown value-order policy: {policy!r}")


def encode(raw: RawTable, value_order="alphabetical") -> EncodedTable:
    """Dictionary-encode a raw table under a per-column value order.

    ``value_order`` is ``"alphabetical"``, ``"frequency_desc"`` (ties
    broken alphabetically) or a sequence of explicit per-column value
    lists.  Code 0 is the first value under the chosen order.  An
    explicit list that misses a value present in the data is an error.
    """
    explicit: Sequence[Sequence[str]] | None = None
    if not isinstance(value_order, str):
        explicit = list(value_order)
        if len(explicit) != raw.width:
            raise ValueOrderError(
                f"expected {raw.width} explicit value lists, got {len(explicit)}"
            )

    dictionaries: list[tuple[str, ...]] = []
    code_maps: list[dict[str, int]] = []
    for j in range(raw.width):
        values = [row[j] for row in raw.rows]
        if explicit is not None:
            present = set(values)
            missing = present.difference(explicit[j])
            if missing:
                raise ValueOrderError(
                    f"column {j}: value {sorted(missing)[0]!r} not in explicit order"
                )
            ordered = [v for v in explicit[j] if v in present]
        else:
            ordered = _column_order(values, value_order, j)
        dictionaries.append(tuple(ordered))
        code_maps.append({v: k for k, v in enumerate(ordered)})

    codes = tuple(
        tuple(code_maps[j][row[j]] for j in range(raw.width)) for row in raw.rows
    )
    return EncodedTable(codes, tuple(dictionaries), raw.header)


def permute_columns(t: EncodedTable, p: Permutation) -> EncodedTable:
    """Reorder columns: column ``j`` of the result is column ``p(j)`` of ``t``."""
    if len(p) != t.n_cols:
        raise PermutationError(
            f"permutation length {len(p)} != table width {t.n_cols}"
        )
    mapping = p.mapping
    codes = tuple(tuple(row[j] for j in mapping) for row in t.codes)
    dictionaries = tuple(t.dictionaries[j] for j in mapping)
    names = tuple(t.column_names[j] for j in mapping) if t.column_names else None
    return EncodedTable(codes, dictionaries, names)


def shuffle_rows(t: EncodedTable, seed: int) -> EncodedTable:
    """Apply a uniformly random row permutation fully determined by ``seed``."""
    order = list(range(t.n_rows))
    random.Random(seed).shuffle(order)
    codes = tuple(t.codes[i] for i in order)
    return EncodedTable(codes, t.dictionaries, t.column_names)


def profile(t: EncodedTable) -> ColumnProfile:
    """Exact cardinalities, prefix products and distinct-row count."""
    cards = t.cardinalities
    products = []
    acc = 1
    for n in cards:
        acc *= n
        products.append(acc)
    distinct = len(set(t.codes))
    return ColumnProfile(cards, tuple(products), distinct)
