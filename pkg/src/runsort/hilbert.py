"""Compact Hilbert index over per-dimension bit widths.

Each column is assigned a bit width ``m_j = ceil(log2(N_j))``; tuples
live in the sub-box ``[0, 2^m_1) x ... x [0, 2^m_c)`` of the padded
hypercube.  The compact index ranks points along the Hilbert curve of
the padded cube while skipping the dead bits of exhausted dimensions, so
it occupies ``sum(m_j)`` bits and is a bijection between the box and
``[0, 2^(sum m_j))``.

When every dimension has the same width, consecutive compact indexes are
points at Lee distance one (the curve is an ordinary Hilbert walk).  For
unequal widths only injectivity and order are guaranteed; the curve
orientation itself is one fixed convention among the many possible.
"""

from __future__ import annotations

from typing import Sequence


def _gray(i: int) -> int:
    return i ^ (i >> 1)


def _gray_inverse(g: int) -> int:
    i = g
    while g:
        g >>= 1
        i ^= g
    return i


def _trailing_ones(i: int) -> int:
    count = 0
    while i & 1:
        count += 1
        i >>= 1
    return count


def _rotate_right(x: int, r: int, width: int) -> int:
    r %= width
    if r == 0:
        return x
    mask = (1 << width) - 1
    return ((x >> r) | (x << (width - r))) & mask


def _rotate_left(x: int, r: int, width: int) -> int:
    return _rotate_right(x, width - (r % width), width) if r % width else x


def _entry(w: int) -> int:
    # Entry vertex of the w-th subcell in Gray-code traversal order.
    return 0 if w == 0 else _gray(2 * ((w - 1) // 2))


def _direction(w: int, n: int) -> int:
    # Axis along which the w-th subcell's traversal leaves it.
    if w == 0:
        return 0
    if w % 2 == 0:
        return _trailing_ones(w - 1) % n
    return _trailing_ones(w) % n


def _extract_bits(value: int, mask: int) -> int:
    """Compact the bits of ``value`` selected by ``mask`` (LSB first)."""
    out = 0
    shift = 0
    bit = 0
    while mask >> bit:
        if (mask >> bit) & 1:
            out |= ((value >> bit) & 1) << shift
            shift += 1
        bit += 1
    return out


def bit_widths(cardinalities: Sequence[int]) -> tuple[int, ...]:
    """Per-column widths ``ceil(log2(N))``; a one-value column needs 0 bits."""
    return tuple((n - 1).bit_length() for n in cardinalities)


def hilbert_index(point: Sequence[int], order: int) -> int:
    """Index of ``point`` on the Hilbert curve of the cube ``[0, 2^order)^n``."""
    n = len(point)
    h = 0
    e = 0
    d = 0
    for i in range(order - 1, -1, -1):
        level = 0
        for j in range(n):
            level |= ((point[j] >> i) & 1) << j
        l = _rotate_right(level ^ e, d + 1, n)
        w = _gray_inverse(l)
        h = (h << n) | w
        e ^= _rotate_left(_entry(w), d + 1, n)
        d = (d + _direction(w, n) + 1) % n
    return h


def compact_hilbert_index(point: Sequence[int], widths: Sequence[int]) -> int:
    """Compact Hilbert index of ``point`` for the given per-dimension widths.

    Requires ``0 <= point[j] < 2**widths[j]``.  At the levels where a
    dimension has run out of bits, its coordinate bit is forced by the
    curve's entry pattern; only the free dimensions contribute index
    bits, via the Gray-code rank of the subcell number restricted to the
    free axes.
    """
    n = len(widths)
    for j, (x, m) in enumerate(zip(point, widths)):
        if not 0 <= x < (1 << m) and not (m == 0 and x == 0):
            raise ValueError(f"coordinate {x} out of range for {m}-bit dimension {j}")
    order = max(widths, default=0)
    h = 0
    e = 0
    d = 0
    for i in range(order - 1, -1, -1):
        free = 0
        level = 0
        for j in range(n):
            if widths[j] > i:
                free |= 1 << j
            level |= ((point[j] >> i) & 1) << j
        l = _rotate_right(level ^ e, d + 1, n)
        w = _gray_inverse(l)
        free_rotated = _rotate_right(free, d + 1, n)
        h = (h << free_rotated.bit_count()) | _extract_bits(w, free_rotated)
        e ^= _rotate_left(_entry(w), d + 1, n)
        d = (d + _direction(w, n) + 1) % n
    return h
