"""Partial transformations and the categories PT, T, I, PO, O, OI.

A morphism m -> n is a partial function [m] -> [n], stored densely as a
tuple of length m with 0 marking an undefined point.  These are also the
shadow semantics for the braid/vine generator symbols: every such symbol is
sent to the partial map determined by the initial and terminal points of
its strings.
"""

from __future__ import annotations

import enum
import itertools
import re

from .errors import (
    BudgetExceededError,
    ShapeMismatchError,
    UnknownSpecError,
)


class MapKind(enum.Enum):
    PT = "PT"
    T = "T"
    I = "I"  # noqa: E741 - the paper's name for the symmetric inverse category
    PO = "PO"
    O = "O"  # noqa: E741
    OI = "OI"

    def admits(self, f):
        if self is MapKind.PT:
            return True
        if self is MapKind.T:
            return f.is_total()
        if self is MapKind.I:
            return f.is_injective()
        if self is MapKind.PO:
            return f.is_isotone()
        if self is MapKind.O:
            return f.is_total() and f.is_isotone()
        return f.is_injective() and f.is_isotone()


class PartialMap:
    """An immutable partial function [m] -> [n]."""

    __slots__ = ("m", "n", "vals", "_hash")

    def __init__(self, m, n, vals):
        vals = tuple(vals)
        if len(vals) != m:
            raise ValueError(f"expected {m} values, got {len(vals)}")
        for v in vals:
            if not (0 <= v <= n):
                raise ValueError(f"value {v} out of range [0,{n}]")
        self.m = m
        self.n = n
        self.vals = vals
        self._hash = hash((m, n, vals))

    @staticmethod
    def from_pairs(m, n, pairs):
        vals = [0] * m
        for x, y in dict(pairs).items():
            if not (1 <= x <= m):
                raise ValueError(f"domain point {x} out of range")
            vals[x - 1] = y
        return PartialMap(m, n, vals)

    def graph(self):
        return {x + 1: v for x, v in enumerate(self.vals) if v}

    def __eq__(self, other):
        if not isinstance(other, PartialMap):
            return NotImplemented
        return self.m == other.m and self.n == other.n and self.vals == other.vals

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return (self.m, self.n, self.vals) < (other.m, other.n, other.vals)

    def __repr__(self):
        return f"PartialMap.from_text({self.to_text()!r})"

    def __str__(self):
        return self.to_text()

    def __call__(self, x):
        """Image of x, or None when undefined."""
        v = self.vals[x - 1]
        return v if v else None

    # -- category structure ----------------------------------------------

    def compose(self, other):
        """Relational composition, x |-> other(self(x)) where both defined."""
        if self.n != other.m:
            raise ShapeMismatchError(self.n, other.m)
        return PartialMap(
            self.m,
            other.n,
            tuple(other.vals[v - 1] if v else 0 for v in self.vals),
        )

    def tensor(self, other):
        """Disjoint union with other shifted by (m, n)."""
        shifted = tuple(v + self.n if v else 0 for v in other.vals)
        return PartialMap(self.m + other.m, self.n + other.n, self.vals + shifted)

    # -- predicates --------------------------------------------------------

    def is_total(self):
        return all(self.vals)

    def is_injective(self):
        seen = set()
        for v in self.vals:
            if v:
                if v in seen:
                    return False
                seen.add(v)
        return True

    def is_isotone(self):
        defined = [v for v in self.vals if v]
        return all(a <= b for a, b in zip(defined, defined[1:]))

    # -- text format ---------------------------------------------------------

    def to_text(self):
        inner = " ".join(f"{x}:{v}" for x, v in sorted(self.graph().items()))
        return f"F[{self.m},{self.n}]{{{inner}}}"

    @staticmethod
    def from_text(text):
        mobj = re.fullmatch(r"\s*F\[(\d+),(\d+)\]\{([^{}]*)\}\s*", text)
        if not mobj:
            raise ValueError(f"not a map literal: {text!r}")
        m, n = int(mobj.group(1)), int(mobj.group(2))
        pairs = []
        for item in mobj.group(3).split():
            x, _, y = item.partition(":")
            pairs.append((int(x), int(y)))
        return PartialMap.from_pairs(m, n, pairs)


def identity(n):
    return PartialMap(n, n, range(1, n + 1))


def compose(f, g):
    return f.compose(g)


def tensor(f, g):
    return f.tensor(g)


def map_generator(spec):
    """The shadow image of a generator symbol, per the figures read through psi.

    rho_chop is the partial-vine rho (string n+1 deleted: n+1 undefined);
    rho_fold is the vine rho (n+1 folded onto n).  tau and D have no string
    picture and hence no map image.
    """
    fam, i, n = spec.family, spec.i, spec.n
    if fam in ("sigma", "sigma_inv"):
        _need(i is not None and n is not None and 1 <= i < n, spec)
        vals = list(range(1, n + 1))
        vals[i - 1], vals[i] = i + 1, i
        return PartialMap(n, n, vals)
    if fam == "eps":
        _need(i is not None and n is not None and 1 <= i <= n, spec)
        vals = list(range(1, n + 1))
        vals[i - 1] = 0
        return PartialMap(n, n, vals)
    if fam == "mu":
        _need(i is not None and n is not None and 1 <= i < n, spec)
        vals = list(range(1, n + 1))
        vals[i] = i
        return PartialMap(n, n, vals)
    if fam == "eta":
        _need(i is not None and n is not None and 1 <= i < n, spec)
        vals = list(range(1, n + 1))
        vals[i - 1] = i + 1
        return PartialMap(n, n, vals)
    if fam == "lam":
        _need(n is not None and n >= 0, spec)
        return PartialMap(n, n + 1, range(1, n + 1))
    if fam == "rho_chop":
        _need(n is not None and n >= 0, spec)
        return PartialMap(n + 1, n, list(range(1, n + 1)) + [0])
    if fam == "rho_fold":
        _need(n is not None and n >= 1, spec)
        return PartialMap(n + 1, n, list(range(1, n + 1)) + [n])
    if fam in ("X", "Xinv"):
        return PartialMap(2, 2, (2, 1))
    if fam == "V":
        return PartialMap(2, 1, (1, 1))
    if fam == "U":
        return PartialMap(1, 0, (0,))
    if fam == "Ubar":
        return PartialMap(0, 1, ())
    raise UnknownSpecError(f"{fam} has no map image")


def _need(ok, spec):
    if not ok:
        raise UnknownSpecError(f"bad indices for generator {spec}")


_DEFAULT_BUDGET = 2_000_000


def enumerate_homset(kind, m, n, budget=None):
    """Yield each map of the given kind exactly once, in value-tuple order."""
    limit = budget if budget is not None else _DEFAULT_BUDGET
    if (n + 1) ** m > limit:
        raise BudgetExceededError(
            f"hom-set ({m},{n}) of {kind.value} exceeds budget {limit}"
        )
    return _enumerate(kind, m, n)


def _enumerate(kind, m, n):
    for vals in itertools.product(range(n + 1), repeat=m):
        f = PartialMap(m, n, vals)
        if kind.admits(f):
            yield f
