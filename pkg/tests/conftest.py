import itertools

import pytest

from runsort.table import EncodedTable

# Two-column example table, in its lexicographically sorted row order
# (16 total runs) and in the best row order (14 total runs).
FIG1_LEX_ROWS = [
    (1, 1), (3, 4), (4, 2), (4, 4), (5, 7),
    (6, 5), (6, 6), (6, 8), (8, 4), (9, 4),
]
FIG1_BEST_ROWS = [
    (1, 1), (3, 4), (8, 4), (9, 4), (4, 4),
    (4, 2), (5, 7), (6, 5), (6, 6), (6, 8),
]

# Complete 3x2x2 space in reflected Gray order; 14 runs, joins (0, 2, 5).
FIG3_SEQUENCE = [
    (0, 0, 0), (0, 0, 1), (0, 1, 1), (0, 1, 0),
    (1, 1, 0), (1, 1, 1), (1, 0, 1), (1, 0, 0),
    (2, 0, 0), (2, 0, 1), (2, 1, 1), (2, 1, 0),
]

# Two-column table whose optimal row order (as listed: every adjacent
# pair at Hamming distance one) beats every recursive order.
FIG4_ROWS = [
    ("K", "Y"), ("A", "Y"), ("A", "D"), ("Z", "D"), ("Z", "B"),
    ("A", "B"), ("A", "C"), ("W", "C"), ("W", "E"), ("F", "E"),
    ("F", "C"), ("H", "C"), ("H", "J"),
]

# Four consecutive tuples of a Hilbert walk whose first-component
# projection 1,2,2,1 is not discriminating.
HILBERT_WITNESS = [(1, 1), (2, 1), (2, 2), (1, 2)]


def encode_rows(rows):
    """Encode literal value rows with per-column sorted dictionaries."""
    columns = list(zip(*rows))
    dicts = [sorted(set(col)) for col in columns]
    coded = [tuple(dicts[j].index(v) for j, v in enumerate(row)) for row in rows]
    return EncodedTable.from_codes(coded, tuple(len(d) for d in dicts))


@pytest.fixture
def fig1_table():
    return encode_rows(FIG1_LEX_ROWS)


@pytest.fixture
def fig1_best_table():
    return encode_rows(FIG1_BEST_ROWS)


@pytest.fixture
def fig3_table():
    return EncodedTable.from_codes(FIG3_SEQUENCE, (3, 2, 2))


@pytest.fixture
def fig4_table():
    return encode_rows(FIG4_ROWS)


@pytest.fixture
def fig1_csv(tmp_path):
    path = tmp_path / "fig1.csv"
    path.write_text("\n".join(f"{a},{b}" for a, b in FIG1_LEX_ROWS) + "\n")
    return path


def complete_table(cards):
    rows = itertools.product(*[range(n) for n in cards])
    return EncodedTable.from_codes(rows, tuple(cards))
