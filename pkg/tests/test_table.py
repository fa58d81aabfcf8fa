import io

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from runsort.table import (
    EmptyInputError,
    EncodedTable,
    Permutation,
    PermutationError,
    RaggedRowError,
    RawTable,
    TableError,
    ValueOrderError,
    encode,
    load_delimited,
    permute_columns,
    profile,
    shuffle_rows,
)


def test_load_two_line_file():
    t = load_delimited(io.StringIO("1,1\n3,4"), ",")
    assert t.n_rows == 2 and t.width == 2
    assert t.rows == (("1", "1"), ("3", "4"))


def test_load_fig1(fig1_csv):
    t = load_delimited(fig1_csv)
    assert t.n_rows == 10 and t.width == 2


def test_load_ragged_row_names_line():
    with pytest.raises(RaggedRowError) as exc:
        load_delimited(io.StringIO("a,b,c\na,b\n"))
    assert exc.value.line_number == 2
    assert "line 2" in str(exc.value)


def test_load_empty_input():
    with pytest.raises(EmptyInputError):
        load_delimited(io.StringIO(""))
    with pytest.raises(EmptyInputError):
        load_delimited(io.StringIO("h1,h2\n"), has_header=True)


def test_load_header_and_bytes():
    t = load_delimited(b"name;x\na;1\nb;2\n", delimiter=";", has_header=True)
    assert t.header == ("name", "x")
    assert t.rows == (("a", "1"), ("b", "2"))


def test_load_rejects_multichar_delimiter():
    with pytest.raises(TableError):
        load_delimited(io.StringIO("a,b"), delimiter=",,")


def test_encode_alphabetical():
    raw = RawTable((("B",), ("A",), ("B",)), 1)
    t = encode(raw)
    assert [row[0] for row in t.codes] == [1, 0, 1]
    assert t.cardinalities == (2,)


def test_encode_frequency_desc():
    raw = RawTable((("B",), ("A",), ("B",)), 1)
    t = encode(raw, "frequency_desc")
    assert [row[0] for row in t.codes] == [0, 1, 0]


def test_encode_frequency_tie_alphabetical():
    raw = RawTable((("B",), ("A",)), 1)
    t = encode(raw, "frequency_desc")
    assert t.dictionaries[0] == ("A", "B")


def test_encode_fig1_first_column_dictionary(fig1_csv):
    # distinct first-column values of the example data, as text
    t = encode(load_delimited(fig1_csv))
    assert t.dictionaries[0] == ("1", "3", "4", "5", "6", "8", "9")
    assert t.cardinalities[0] == 7


def test_encode_explicit_lists():
    raw = RawTable((("B", "x"), ("A", "y")), 2)
    t = encode(raw, [["B", "A"], ["x", "y", "z"]])
    assert t.codes == ((0, 0), (1, 1))
    # unused explicit values do not inflate the dictionary
    assert t.dictionaries[1] == ("x", "y")


def test_encode_explicit_missing_value():
    raw = RawTable((("B",), ("A",)), 1)
    with pytest.raises(ValueOrderError) as exc:
        encode(raw, [["B"]])
    assert "column 0" in str(exc.value) and "'A'" in str(exc.value)


def test_encode_decode_round_trip(fig1_csv):
    raw = load_delimited(fig1_csv)
    for policy in ("alphabetical", "frequency_desc"):
        t = encode(raw, policy)
        assert tuple(t.decoded_rows()) == raw.rows


def test_permutation_validation():
    with pytest.raises(PermutationError):
        Permutation((0, 0, 1))
    assert Permutation.identity(3).mapping == (0, 1, 2)
    assert Permutation((2, 0, 1)).inverse().mapping == (1, 2, 0)


def test_permute_identity(fig1_table):
    out = permute_columns(fig1_table, Permutation.identity(2))
    assert out == fig1_table


def test_permute_swap_involution(fig1_table):
    swap = Permutation((1, 0))
    once = permute_columns(fig1_table, swap)
    assert once.cardinalities == (7, 7)
    assert once.codes[0] == fig1_table.codes[0][::-1]
    assert permute_columns(once, swap) == fig1_table


def test_permute_length_mismatch(fig1_table):
    with pytest.raises(PermutationError):
        permute_columns(fig1_table, Permutation((0, 2, 1)))


@given(st.permutations(list(range(4))))
def test_permute_then_inverse_is_identity(mapping):
    rows = [(i % 3, (i * 2) % 5, i % 2, i % 4) for i in range(12)]
    t = EncodedTable.from_codes(rows, (3, 5, 2, 4))
    p = Permutation(tuple(mapping))
    assert permute_columns(permute_columns(t, p), p.inverse()) == t


def test_shuffle_single_row():
    t = EncodedTable.from_codes([(0, 1)], (1, 2))
    assert shuffle_rows(t, 99) == t


def test_shuffle_deterministic_and_multiset(fig1_table):
    a = shuffle_rows(fig1_table, 7)
    b = shuffle_rows(fig1_table, 7)
    assert a == b
    assert sorted(a.codes) == sorted(fig1_table.codes)
    c = shuffle_rows(fig1_table, 8)
    assert sorted(c.codes) == sorted(fig1_table.codes)


def test_profile_prefix_products():
    rows = [(m, d, y) for m in range(12) for d in range(31) for y in range(100)]
    t = EncodedTable.from_codes(rows, (12, 31, 100))
    prof = profile(t)
    assert prof.prefix_products == (12, 372, 37200)
    assert prof.distinct_rows == 37200


def test_profile_fig1_distinct(fig1_table):
    assert profile(fig1_table).distinct_rows == 10


def test_profile_duplicate_rows():
    t = EncodedTable.from_codes([(0, 0), (0, 0)], (1, 1))
    assert profile(t).distinct_rows == 1


@settings(max_examples=50)
@given(st.lists(st.integers(min_value=1, max_value=9), min_size=1, max_size=6))
def test_profile_prefix_product_recurrence(cards):
    t = EncodedTable.from_codes([tuple(0 for _ in cards)], tuple(cards))
    prof = profile(t)
    acc = 1
    for n, prod in zip(prof.cardinalities, prof.prefix_products):
        acc *= n
        assert prod == acc


def test_encoded_table_invariants():
    with pytest.raises(TableError):
        EncodedTable(((0, 2),), (("a",), ("x", "y")))
    with pytest.raises(TableError):
        EncodedTable(((0,),), (("a", "a"),))
