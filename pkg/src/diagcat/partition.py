"""Set-partition diagrams and the partition/Brauer/Temperley-Lieb categories.

A morphism m -> n is a set partition of the m upper vertices and n lower
vertices of a rectangle.  Labels are signed integers: +i (1 <= i <= m) is
upper vertex i, -j (1 <= j <= n) is lower vertex j'.  Composition stacks two
diagrams and takes connectivity through the middle row; the number of
components trapped entirely in the middle row (the "floating" count) is
always reported alongside the product, so the plain category and the
delta-linear category share one kernel.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .errors import (
    BudgetExceededError,
    DuplicateLabelError,
    IncompleteCoverError,
    NoDiagramImageError,
    OutOfRangeError,
    ShapeMismatchError,
    UnknownSpecError,
)


class DiagramKind(enum.Enum):
    P = "P"
    PLANAR_P = "PlanarP"
    B = "B"
    TL = "TL"


class Partition:
    """An immutable set-partition diagram with domain m and codomain n.

    Blocks are stored canonically: within a block labels are sorted by the
    boundary key (+i) = i, (-j) = m + j; blocks are sorted by their minimum
    key.  Two diagrams are equal iff their canonical forms are identical.
    """

    __slots__ = ("m", "n", "blocks", "_hash")

    def __init__(self, m, n, blocks, _trusted=False):
        if _trusted:
            self.m = m
            self.n = n
            self.blocks = blocks
        else:
            self.m = m
            self.n = n
            self.blocks = _canonicalize(m, n, blocks)
        self._hash = hash((self.m, self.n, self.blocks))

    # -- basic protocol ------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return (
            self.m == other.m and self.n == other.n and self.blocks == other.blocks
        )

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return (self.m, self.n, tuple(tuple(_key(self.m, x) for x in b) for b in self.blocks))

    def __repr__(self):
        return f"Partition.from_text({self.to_text()!r})"

    def __str__(self):
        return self.to_text()

    # -- category structure ---------------------------------------------

    def compose(self, other):
        """Return (product, floating) where floating counts middle-row components."""
        return compose(self, other)

    def tensor(self, other):
        return tensor(self, other)

    def involute(self):
        return involute(self)

    # -- classification --------------------------------------------------

    def is_brauer(self):
        return all(len(b) == 2 for b in self.blocks)

    def is_planar(self):
        return _is_noncrossing(self.m, self.n, self.blocks)

    def is_tl(self):
        return self.is_brauer() and self.is_planar()

    def classify(self):
        """Return {'planar': bool, 'brauer': bool, 'tl': bool}."""
        planar = self.is_planar()
        brauer = self.is_brauer()
        return {"planar": planar, "brauer": brauer, "tl": planar and brauer}

    def in_kind(self, kind):
        if kind is DiagramKind.P:
            return True
        if kind is DiagramKind.PLANAR_P:
            return self.is_planar()
        if kind is DiagramKind.B:
            return self.is_brauer()
        return self.is_tl()

    # -- text format -------------------------------------------------------

    def to_text(self):
        """Bit-exact text form, e.g. ``P[2,2]{ {1,-1} {2,-2} }``."""
        if not self.blocks:
            inner = ""
        else:
            inner = " ".join(
                "{" + ",".join(str(x) for x in b) + "}" for b in self.blocks
            )
        return f"P[{self.m},{self.n}]{{ {inner} }}".replace("{  }", "{ }")

    @staticmethod
    def from_text(text):
        mobj = re.fullmatch(r"\s*P\[(\d+),(\d+)\]\{(.*)\}\s*", text, re.S)
        if not mobj:
            raise ValueError(f"not a diagram literal: {text!r}")
        m, n = int(mobj.group(1)), int(mobj.group(2))
        body = mobj.group(3)
        blocks = []
        for part in re.findall(r"\{([^{}]*)\}", body):
            items = [s for s in part.replace(",", " ").split() if s]
            blocks.append([int(s) for s in items])
        leftover = re.sub(r"\{[^{}]*\}", "", body).strip()
        if leftover:
            raise ValueError(f"stray text in diagram literal: {leftover!r}")
        return make_partition(m, n, blocks)


def _key(m, label):
    return label - 1 if label > 0 else m - label - 1


def _canonicalize(m, n, blocks):
    seen = {}
    out = []
    for block in blocks:
        if not block:
            continue
        items = []
        for label in block:
            if not isinstance(label, int) or label == 0:
                raise OutOfRangeError(label, m, n)
            if label > 0 and label > m:
                raise OutOfRangeError(label, m, n)
            if label < 0 and -label > n:
                raise OutOfRangeError(label, m, n)
            if label in seen:
                raise DuplicateLabelError(label)
            seen[label] = True
            items.append(label)
        items.sort(key=lambda x: _key(m, x))
        out.append(tuple(items))
    for i in range(1, m + 1):
        if i not in seen:
            raise IncompleteCoverError(i)
    for j in range(1, n + 1):
        if -j not in seen:
            raise IncompleteCoverError(-j)
    out.sort(key=lambda b: _key(m, b[0]))
    return tuple(out)


def make_partition(m, n, blocks):
    """Validating constructor; raises OutOfRange/DuplicateLabel/IncompleteCover."""
    return Partition(m, n, blocks)


def identity(n):
    blocks = tuple((i, -i) for i in range(1, n + 1))
    return Partition(n, n, blocks, _trusted=True)


def compose(a, b):
    """Product-graph composition.

    Returns ``(ab, floating)`` with ``ab`` the connectivity quotient
    restricted to the outer rows and ``floating`` the number of components
    contained entirely in the middle row.
    """
    if a.n != b.m:
        raise ShapeMismatchError(a.n, b.m)
    m, n, q = a.m, a.n, b.n
    total = m + n + q
    parent = list(range(total))

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    # a's vertices: +i -> i-1, -j -> m+j-1 (middle); b's: +i -> m+i-1, -j -> m+n+j-1
    for block in a.blocks:
        first = None
        for label in block:
            v = label - 1 if label > 0 else m - label - 1
            if first is None:
                first = v
            else:
                union(first, v)
    for block in b.blocks:
        first = None
        for label in block:
            v = m + label - 1 if label > 0 else m + n - label - 1
            if first is None:
                first = v
            else:
                union(first, v)

    comp = {}
    middle_roots = set()
    for v in range(total):
        r = find(v)
        if v < m or v >= m + n:
            label = v + 1 if v < m else -(v - m - n + 1)
            comp.setdefault(r, []).append(label)
        else:
            middle_roots.add(r)
    floating = sum(1 for r in middle_roots if r not in comp)
    blocks = tuple(
        tuple(sorted(labels, key=lambda x: _key(m, x))) for labels in comp.values()
    )
    blocks = tuple(sorted(blocks, key=lambda b: _key(m, b[0])))
    return Partition(m, q, blocks, _trusted=True), floating


def tensor(a, b):
    """Place a copy of b to the right of a."""
    m, n = a.m, a.n
    shifted = tuple(
        tuple(x + m if x > 0 else x - n for x in block) for block in b.blocks
    )
    mm = m + b.m
    # Lower-label keys depend on the combined m, so block order must be redone.
    blocks = tuple(sorted(a.blocks + shifted, key=lambda blk: _key(mm, blk[0])))
    return Partition(mm, n + b.n, blocks, _trusted=True)


def involute(a):
    """Swap the roles of the upper and lower rows (the * involution)."""
    blocks = [[-x for x in block] for block in a.blocks]
    return Partition(a.n, a.m, blocks)


def _boundary_positions(m, n, blocks):
    # Boundary cycle order +1,...,+m,-n,...,-1; cut the cycle before +1.
    out = []
    for block in blocks:
        pos = sorted(p - 1 if p > 0 else m + n + p for p in block)
        out.append(pos)
    return out


def _is_noncrossing(m, n, blocks):
    pos = _boundary_positions(m, n, blocks)
    k = len(pos)
    for i in range(k):
        for j in range(i + 1, k):
            if _crossing(pos[i], pos[j]):
                return False
    return True


def _crossing(a, b):
    # Merge the two sorted position lists and count membership switches;
    # three or more switches means the blocks interleave.
    switches = 0
    last = None
    ia = ib = 0
    while ia < len(a) or ib < len(b):
        if ib >= len(b) or (ia < len(a) and a[ia] < b[ib]):
            cur = 0
            ia += 1
        else:
            cur = 1
            ib += 1
        if cur != last:
            if last is not None:
                switches += 1
                if switches >= 3:
                    return True
            last = cur
    return False


# -- generators ----------------------------------------------------------------


@dataclass(frozen=True)
class GenSpec:
    """A generator symbol: family tag plus the indices it needs.

    Families with a diagram image: sigma, eps, tau, lam, rho_chop, rho_fold,
    X, D, U, Ubar.  Families sigma_inv, mu, eta, Xinv, V only exist in the
    transformation semantics.
    """

    family: str
    i: int | None = None
    n: int | None = None


_MAP_ONLY = {"sigma_inv", "mu", "eta", "Xinv", "V"}


def generator(spec, kind=DiagramKind.P):
    """Build the diagram for a generator symbol, per the category's figures.

    ``kind`` selects the shape where the families diverge: tau is the single
    four-element block in P but the two-arc hook in B/TL, and lam/rho_chop
    grow by d=1 (singleton) in P but by d=2 (arc) in B/TL.
    """
    fam, i, n = spec.family, spec.i, spec.n
    if fam in _MAP_ONLY:
        raise NoDiagramImageError(f"{fam} has no diagram image")
    if fam == "sigma":
        _need(i is not None and n is not None and 1 <= i < n, spec)
        blocks = [(j, -j) for j in range(1, n + 1) if j not in (i, i + 1)]
        blocks += [(i, -(i + 1)), (i + 1, -i)]
        return Partition(n, n, blocks)
    if fam == "eps":
        _need(i is not None and n is not None and 1 <= i <= n, spec)
        blocks = [(j, -j) for j in range(1, n + 1) if j != i]
        blocks += [(i,), (-i,)]
        return Partition(n, n, blocks)
    if fam == "tau":
        _need(i is not None and n is not None and 1 <= i < n, spec)
        blocks = [(j, -j) for j in range(1, n + 1) if j not in (i, i + 1)]
        if kind is DiagramKind.P or kind is DiagramKind.PLANAR_P:
            blocks += [(i, i + 1, -i, -(i + 1))]
        else:
            blocks += [(i, i + 1), (-i, -(i + 1))]
        return Partition(n, n, blocks)
    if fam == "lam":
        _need(n is not None and n >= 0, spec)
        blocks = [(j, -j) for j in range(1, n + 1)]
        if kind is DiagramKind.P or kind is DiagramKind.PLANAR_P:
            blocks += [(-(n + 1),)]
            return Partition(n, n + 1, blocks)
        blocks += [(-(n + 1), -(n + 2))]
        return Partition(n, n + 2, blocks)
    if fam == "rho_chop":
        _need(n is not None and n >= 0, spec)
        blocks = [(j, -j) for j in range(1, n + 1)]
        if kind is DiagramKind.P or kind is DiagramKind.PLANAR_P:
            blocks += [(n + 1,)]
            return Partition(n + 1, n, blocks)
        blocks += [(n + 1, n + 2)]
        return Partition(n + 2, n, blocks)
    if fam == "rho_fold":
        _need(n is not None and n >= 1, spec)
        blocks = [(j, -j) for j in range(1, n)]
        blocks += [(n, n + 1, -n)]
        return Partition(n + 1, n, blocks)
    if fam == "X":
        return Partition(2, 2, [(1, -2), (2, -1)])
    if fam == "D":
        return Partition(2, 2, [(1, 2, -1, -2)])
    if fam == "U":
        if kind is DiagramKind.P or kind is DiagramKind.PLANAR_P:
            return Partition(1, 0, [(1,)])
        return Partition(2, 0, [(1, 2)])
    if fam == "Ubar":
        if kind is DiagramKind.P or kind is DiagramKind.PLANAR_P:
            return Partition(0, 1, [(-1,)])
        return Partition(0, 2, [(-1, -2)])
    raise UnknownSpecError(f"unknown generator family {fam!r}")


def _need(ok, spec):
    if not ok:
        raise UnknownSpecError(f"bad indices for generator {spec}")


# -- enumeration ----------------------------------------------------------------

_DEFAULT_BUDGET = {
    DiagramKind.P: 12,
    DiagramKind.PLANAR_P: 14,
    DiagramKind.B: 16,
    DiagramKind.TL: 24,
}


def enumerate_homset(kind, m, n, budget=None):
    """Yield each diagram of the hom-set exactly once, in canonical order.

    For B/TL the stream is empty when m and n have different parities.  The
    generator is independently restartable: each call builds a fresh stream.
    """
    limit = budget if budget is not None else _DEFAULT_BUDGET[kind]
    if m + n > limit:
        raise BudgetExceededError(
            f"hom-set ({m},{n}) of {kind.value} exceeds budget {limit}"
        )
    return _enumerate(kind, m, n)


def _enumerate(kind, m, n):
    size = m + n
    labels = [i + 1 for i in range(m)] + [-(j + 1) for j in range(n)]
    if kind in (DiagramKind.B, DiagramKind.TL):
        if size % 2 == 1:
            return
        # boundary order for TL so that non-crossing generation is direct
        boundary = [p + 1 if p < m else -(n - (p - m)) for p in range(size)]
        if kind is DiagramKind.TL:
            for pairing in _noncrossing_matchings(list(range(size))):
                blocks = [(boundary[a], boundary[b]) for a, b in pairing]
                yield Partition(m, n, blocks)
        else:
            for pairing in _matchings(list(range(size))):
                blocks = [(labels[a], labels[b]) for a, b in pairing]
                yield Partition(m, n, blocks)
        return
    for part in _set_partitions(size):
        blocks = [[labels[v] for v in blk] for blk in part]
        diag = Partition(m, n, blocks)
        if kind is DiagramKind.PLANAR_P and not diag.is_planar():
            continue
        yield diag


def _set_partitions(k):
    """All set partitions of range(k), in restricted-growth-string order."""
    if k == 0:
        yield []
        return
    rgs = [0] * k
    maxes = [0] * k
    while True:
        groups = {}
        for v, g in enumerate(rgs):
            groups.setdefault(g, []).append(v)
        yield [groups[g] for g in sorted(groups)]
        # next RGS
        i = k - 1
        while i > 0:
            if rgs[i] <= maxes[i - 1]:
                break
            i -= 1
        if i == 0:
            return
        rgs[i] += 1
        maxes[i] = max(maxes[i - 1], rgs[i])
        for j in range(i + 1, k):
            rgs[j] = 0
            maxes[j] = maxes[i]


def _matchings(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for idx, other in enumerate(rest):
        for sub in _matchings(rest[:idx] + rest[idx + 1 :]):
            yield [(first, other)] + sub


def _noncrossing_matchings(items):
    if not items:
        yield []
        return
    first = items[0]
    for idx in range(1, len(items), 2):
        inside, outside = items[1:idx], items[idx + 1 :]
        for left in _noncrossing_matchings(inside):
            for right in _noncrossing_matchings(outside):
                yield [(first, items[idx])] + left + right
