"""Closed-form and recursive counting oracles.

These are deliberately independent of the enumerators in ``partition`` and
``mappings``: counts come from Bell/Catalan/double-factorial formulas and
small recursions, so that ``verify.check_counts`` is a genuine cross-check.
"""

from functools import lru_cache
from math import comb


@lru_cache(maxsize=None)
def bell(n):
    # Peirce triangle recurrence.
    if n == 0:
        return 1
    row = [1]
    for _ in range(n - 1):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[-1]


def catalan(n):
    return comb(2 * n, n) // (n + 1)


def double_factorial(n):
    """n!! for odd n >= -1 (with (-1)!! = 1)."""
    result = 1
    while n > 1:
        result *= n
        n -= 2
    return result


@lru_cache(maxsize=None)
def weakly_increasing_count(m, n):
    """Number of weakly increasing maps [m] -> [n], by recursion on m."""
    if m == 0:
        return 1
    if n == 0:
        return 0
    return sum(weakly_increasing_count(m - 1, v) for v in range(1, n + 1))


@lru_cache(maxsize=None)
def strictly_increasing_partial_count(m, n):
    """|OI_{m,n}|: either m is undefined, or m maps to some b with the rest below."""
    if m == 0:
        return 1
    return strictly_increasing_partial_count(m - 1, n) + sum(
        strictly_increasing_partial_count(m - 1, b - 1) for b in range(1, n + 1)
    )


def isotone_partial_count(m, n):
    """|PO_{m,n}|: choose the domain, then a weakly increasing assignment."""
    return sum(comb(m, k) * weakly_increasing_count(k, n) for k in range(m + 1))


def count_diagrams(kind_value, m, n):
    """Oracle for |hom(m,n)| in P / PlanarP / B / TL."""
    s = m + n
    if kind_value == "P":
        return bell(s)
    if kind_value == "PlanarP":
        return catalan(s)
    if kind_value == "B":
        return double_factorial(s - 1) if s % 2 == 0 else 0
    if kind_value == "TL":
        return catalan(s // 2) if s % 2 == 0 else 0
    raise ValueError(f"unknown diagram kind {kind_value!r}")


def count_maps(kind_value, m, n):
    """Oracle for |hom(m,n)| in PT / T / I / PO / O / OI."""
    if kind_value == "PT":
        return (n + 1) ** m
    if kind_value == "T":
        return n**m
    if kind_value == "I":
        return sum(comb(m, k) * comb(n, k) * _factorial(k) for k in range(min(m, n) + 1))
    if kind_value == "PO":
        return isotone_partial_count(m, n)
    if kind_value == "O":
        return weakly_increasing_count(m, n)
    if kind_value == "OI":
        return strictly_increasing_partial_count(m, n)
    raise ValueError(f"unknown map kind {kind_value!r}")


def _factorial(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out
