"""Every presentation catalog as data, plus the normal-form scaffolding.

Each catalog is a list of relation schemas whose sides are term-grammar
templates, instantiated lazily at concrete indices.  A presentation couples
a catalog with a graded digraph and a semantics (diagrams, partial maps, or
delta-linear combinations); soundness checking lives in ``verify``.

The scaffolds package the one-sided units lambda_n / rho_n, the words w_n
with rho_n lambda_n = w_n, and the shift maps x -> x_plus / x -> x_sup that
push letters through the units.  ``normalize_one_sided`` runs the
constructive induction that rewrites any graded word into lambda_{m,n} * core
or core * rho_{m,n}, using a semantic descend hook backed by breadth-first
word tables for the endomorphism monoids.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linear, mappings, partition
from .errors import (
    BadGradingError,
    BudgetExceededError,
    DescendFailureError,
    UnknownSpecError,
)
from .linear import DELTA, ONE, DeltaPoly, LinComb
from .mappings import MapKind, PartialMap, map_generator
from .partition import DiagramKind, GenSpec
from .terms import (
    Digraph,
    EdgeSchema,
    Interpretation,
    Word,
    evaluate,
    evaluate_word,
    parse_term,
    parse_word,
)

# -- digraphs ------------------------------------------------------------------


def _endo(name, irange):
    if irange == "i<n":
        return EdgeSchema(name, 2, lambda n: n, lambda n: n, lambda i, n: 1 <= i < n)
    return EdgeSchema(name, 2, lambda n: n, lambda n: n, lambda i, n: 1 <= i <= n)


def _unit_schemas(d, min_object=0):
    return [
        EdgeSchema("l", 1, lambda n: n, lambda n: n + d, lambda i, n: n >= min_object),
        EdgeSchema("r", 1, lambda n: n + d, lambda n: n, lambda i, n: n >= min_object),
    ]


def _const(name, dom, cod):
    return EdgeSchema(name, 0, dom, cod)


GAMMA_P = Digraph("P-cat", [_endo("s", "i<n"), _endo("e", "i<=n"), _endo("t", "i<n")] + _unit_schemas(1))
GAMMA_B = Digraph("B-cat", [_endo("s", "i<n"), _endo("t", "i<n")] + _unit_schemas(2))
GAMMA_TL = Digraph("TL-cat", [_endo("t", "i<n")] + _unit_schemas(2))
GAMMA_PV = Digraph(
    "PV-cat",
    [_endo("s", "i<n"), _endo("si", "i<n"), _endo("e", "i<=n"), _endo("m", "i<n"), _endo("h", "i<n")]
    + _unit_schemas(1),
)
GAMMA_IB = Digraph(
    "IB-cat", [_endo("s", "i<n"), _endo("si", "i<n"), _endo("e", "i<=n")] + _unit_schemas(1)
)
GAMMA_V = Digraph(
    "V-cat",
    [_endo("s", "i<n"), _endo("si", "i<n"), _endo("m", "i<n"), _endo("h", "i<n")]
    + _unit_schemas(1, min_object=1),
    min_object=1,
)

DELTA_P = Digraph("P-tensor", [_const("X", 2, 2), _const("D", 2, 2), _const("U", 1, 0), _const("Uu", 0, 1)])
DELTA_B = Digraph("B-tensor", [_const("X", 2, 2), _const("U", 2, 0), _const("Uu", 0, 2)])
DELTA_TL = Digraph("TL-tensor", [_const("U", 2, 0), _const("Uu", 0, 2)])
DELTA_PV = Digraph(
    "PV-tensor",
    [_const("X", 2, 2), _const("Xi", 2, 2), _const("V", 2, 1), _const("U", 1, 0), _const("Uu", 0, 1)],
)
DELTA_IB = Digraph("IB-tensor", [_const("X", 2, 2), _const("Xi", 2, 2), _const("U", 1, 0), _const("Uu", 0, 1)])
DELTA_V = Digraph("V-tensor", [_const("X", 2, 2), _const("Xi", 2, 2), _const("V", 2, 1), _const("Uu", 0, 1)])
DELTA_PT = Digraph("PT-tensor", [_const("X", 2, 2), _const("V", 2, 1), _const("U", 1, 0), _const("Uu", 0, 1)])
DELTA_I = Digraph("I-tensor", [_const("X", 2, 2), _const("U", 1, 0), _const("Uu", 0, 1)])
DELTA_T = Digraph("T-tensor", [_const("X", 2, 2), _const("V", 2, 1), _const("Uu", 0, 1)])
DELTA_PO = Digraph("PO-tensor", [_const("V", 2, 1), _const("U", 1, 0), _const("Uu", 0, 1)])
DELTA_O = Digraph("O-tensor", [_const("V", 2, 1), _const("Uu", 0, 1)])
DELTA_OI = Digraph("OI-tensor", [_const("U", 1, 0), _const("Uu", 0, 1)])


# -- interpretations ------------------------------------------------------------

_EDGE_FAMILY = {
    "s": "sigma",
    "si": "sigma_inv",
    "e": "eps",
    "t": "tau",
    "m": "mu",
    "h": "eta",
    "l": "lam",
    "X": "X",
    "Xi": "Xinv",
    "D": "D",
    "U": "U",
    "Uu": "Ubar",
    "V": "V",
}


def _genspec(edge, rho_family):
    family = rho_family if edge.name == "r" else _EDGE_FAMILY[edge.name]
    return GenSpec(family, edge.i, edge.n)


def diagram_interp(kind, rho_family="rho_chop"):
    def assign(edge):
        return partition.generator(_genspec(edge, rho_family), kind)

    return Interpretation(
        f"diagram-{kind.value}",
        partition.identity,
        lambda a, b: partition.compose(a, b)[0],
        partition.tensor,
        assign,
    )


def linear_interp(kind, rho_family="rho_chop"):
    def assign(edge):
        return LinComb.of(partition.generator(_genspec(edge, rho_family), kind))

    return Interpretation(
        f"linear-{kind.value}",
        LinComb.identity,
        lambda a, b: a.star_compose(b),
        lambda a, b: a.star_tensor(b),
        assign,
    )


def map_interp(rho_family="rho_chop"):
    def assign(edge):
        return map_generator(_genspec(edge, rho_family))

    return Interpretation(
        f"map-{rho_family}",
        mappings.identity,
        lambda a, b: a.compose(b),
        lambda a, b: a.tensor(b),
        assign,
    )


# -- relation schemas -------------------------------------------------------------


@dataclass(frozen=True)
class RelSchema:
    rid: str
    lhs: str
    rhs: str
    indices: str | None = None  # None = single closed instance
    min_n: int = 0
    uses_units: bool = False  # involves l/r, so objects reach n + d
    lhs_coeff: DeltaPoly = ONE
    rhs_coeff: DeltaPoly = ONE

    def index_tuples(self, n):
        spec = self.indices
        if spec is None or spec == "n":
            yield {}
            return
        if spec == "i<n":
            for i in range(1, n):
                yield {"i": i}
        elif spec == "i<=n":
            for i in range(1, n + 1):
                yield {"i": i}
        elif spec == "i<n-1":
            for i in range(1, n - 1):
                yield {"i": i}
        elif spec == "i<j<n":
            for i in range(1, n):
                for j in range(i + 1, n):
                    yield {"i": i, "j": j}
        elif spec == "i<j<=n":
            for i in range(1, n + 1):
                for j in range(i + 1, n + 1):
                    yield {"i": i, "j": j}
        elif spec == "|i-j|>1":
            for i in range(1, n):
                for j in range(1, n):
                    if abs(i - j) > 1:
                        yield {"i": i, "j": j}
        elif spec == "|i-j|=1":
            for i in range(1, n):
                for j in range(1, n):
                    if abs(i - j) == 1:
                        yield {"i": i, "j": j}
        elif spec == "j!=i,i+1;j<=n":
            for i in range(1, n):
                for j in range(1, n + 1):
                    if j != i and j != i + 1:
                        yield {"i": i, "j": j}
        elif spec == "j!=i,i+1;j<n":
            for i in range(1, n):
                for j in range(1, n):
                    if j != i and j != i + 1:
                        yield {"i": i, "j": j}
        elif spec == "j=i,i+1":
            for i in range(1, n):
                for j in (i, i + 1):
                    yield {"i": i, "j": j}
        else:
            raise ValueError(f"unknown index spec {spec!r}")


@dataclass(frozen=True)
class RelInstance:
    rid: str
    n: int | None
    i: int | None
    j: int | None
    lhs: object  # Term
    rhs: object
    lhs_coeff: DeltaPoly = ONE
    rhs_coeff: DeltaPoly = ONE

    def line(self):
        fmt = lambda v: "-" if v is None else str(v)
        from .terms import print_term

        return (
            f"{self.rid} {fmt(self.n)} {fmt(self.i)} {fmt(self.j)} : "
            f"{print_term(self.lhs)} == {print_term(self.rhs)}"
        )


def _r(rid, lhs, rhs, indices=None, min_n=0, uses_units=False):
    return RelSchema(rid, lhs, rhs, indices, min_n, uses_units)


# -- catalogs ---------------------------------------------------------------------

P_MONOID = [
    _r("P1a", "s[{i},{n}] ; s[{i},{n}]", "id[{n}]", "i<n"),
    _r("P1b", "e[{i},{n}] ; e[{i},{n}]", "e[{i},{n}]", "i<=n"),
    _r("P1c", "t[{i},{n}] ; t[{i},{n}]", "t[{i},{n}]", "i<n"),
    _r("P1d", "t[{i},{n}]", "t[{i},{n}] ; s[{i},{n}]", "i<n"),
    _r("P1e", "t[{i},{n}]", "s[{i},{n}] ; t[{i},{n}]", "i<n"),
    _r("P2a", "s[{i},{n}] ; e[{i},{n}]", "e[{i1},{n}] ; s[{i},{n}]", "i<n"),
    _r("P2b", "e[{i},{n}] ; e[{i1},{n}] ; s[{i},{n}]", "e[{i},{n}] ; e[{i1},{n}]", "i<n"),
    _r("P3a", "e[{i},{n}] ; e[{j},{n}]", "e[{j},{n}] ; e[{i},{n}]", "i<j<=n"),
    _r("P3b", "t[{i},{n}] ; t[{j},{n}]", "t[{j},{n}] ; t[{i},{n}]", "i<j<n"),
    _r("P4a", "s[{i},{n}] ; s[{j},{n}]", "s[{j},{n}] ; s[{i},{n}]", "|i-j|>1"),
    _r("P4b", "s[{i},{n}] ; t[{j},{n}]", "t[{j},{n}] ; s[{i},{n}]", "|i-j|>1"),
    _r("P5a", "s[{i},{n}] ; s[{j},{n}] ; s[{i},{n}]", "s[{j},{n}] ; s[{i},{n}] ; s[{j},{n}]", "|i-j|=1"),
    _r("P5b", "s[{i},{n}] ; t[{j},{n}] ; s[{i},{n}]", "s[{j},{n}] ; t[{i},{n}] ; s[{j},{n}]", "|i-j|=1"),
    _r("P6a", "s[{i},{n}] ; e[{j},{n}]", "e[{j},{n}] ; s[{i},{n}]", "j!=i,i+1;j<=n"),
    _r("P6b", "t[{i},{n}] ; e[{j},{n}]", "e[{j},{n}] ; t[{i},{n}]", "j!=i,i+1;j<=n"),
    _r("P7a", "t[{i},{n}] ; e[{j},{n}] ; t[{i},{n}]", "t[{i},{n}]", "j=i,i+1"),
    _r("P7b", "e[{j},{n}] ; t[{i},{n}] ; e[{j},{n}]", "e[{j},{n}]", "j=i,i+1"),
]

P_CAT_EXTRA = [
    _r("P8a", "l[{n}] ; r[{n}]", "id[{n}]", "n", uses_units=True),
    _r("P8b", "r[{n}] ; l[{n}]", "e[{n1},{n1}]", "n", uses_units=True),
    _r("P9a-s", "s[{i},{n}] ; l[{n}]", "l[{n}] ; s[{i},{n1}]", "i<n", uses_units=True),
    _r("P9a-e", "e[{i},{n}] ; l[{n}]", "l[{n}] ; e[{i},{n1}]", "i<=n", uses_units=True),
    _r("P9a-t", "t[{i},{n}] ; l[{n}]", "l[{n}] ; t[{i},{n1}]", "i<n", uses_units=True),
    _r("P9b-s", "r[{n}] ; s[{i},{n}]", "s[{i},{n1}] ; r[{n}]", "i<n", uses_units=True),
    _r("P9b-e", "r[{n}] ; e[{i},{n}]", "e[{i},{n1}] ; r[{n}]", "i<=n", uses_units=True),
    _r("P9b-t", "r[{n}] ; t[{i},{n}]", "t[{i},{n1}] ; r[{n}]", "i<n", uses_units=True),
]

B_MONOID = [
    _r("B1a", "s[{i},{n}] ; s[{i},{n}]", "id[{n}]", "i<n"),
    _r("B1b", "t[{i},{n}] ; t[{i},{n}]", "t[{i},{n}]", "i<n"),
    _r("B1c", "t[{i},{n}]", "t[{i},{n}] ; s[{i},{n}]", "i<n"),
    _r("B1d", "t[{i},{n}]", "s[{i},{n}] ; t[{i},{n}]", "i<n"),
    _r("B2a", "s[{i},{n}] ; s[{j},{n}]", "s[{j},{n}] ; s[{i},{n}]", "|i-j|>1"),
    _r("B2b", "t[{i},{n}] ; t[{j},{n}]", "t[{j},{n}] ; t[{i},{n}]", "|i-j|>1"),
    _r("B2c", "s[{i},{n}] ; t[{j},{n}]", "t[{j},{n}] ; s[{i},{n}]", "|i-j|>1"),
    _r("B3a", "s[{i},{n}] ; s[{j},{n}] ; s[{i},{n}]", "s[{j},{n}] ; s[{i},{n}] ; s[{j},{n}]", "|i-j|=1"),
    _r("B3b", "s[{i},{n}] ; t[{j},{n}] ; s[{i},{n}]", "s[{j},{n}] ; t[{i},{n}] ; s[{j},{n}]", "|i-j|=1"),
    _r("B3c", "t[{i},{n}] ; s[{j},{n}] ; t[{i},{n}]", "t[{i},{n}]", "|i-j|=1"),
]

B_CAT_EXTRA = [
    _r("B4a", "l[{n}] ; r[{n}]", "id[{n}]", "n", uses_units=True),
    _r("B4b", "r[{n}] ; l[{n}]", "t[{n1},{n2}]", "n", uses_units=True),
    _r("B5a-s", "s[{i},{n}] ; l[{n}]", "l[{n}] ; s[{i},{n2}]", "i<n", uses_units=True),
    _r("B5a-t", "t[{i},{n}] ; l[{n}]", "l[{n}] ; t[{i},{n2}]", "i<n", uses_units=True),
    _r("B5b-s", "r[{n}] ; s[{i},{n}]", "s[{i},{n2}] ; r[{n}]", "i<n", uses_units=True),
    _r("B5b-t", "r[{n}] ; t[{i},{n}]", "t[{i},{n2}] ; r[{n}]", "i<n", uses_units=True),
]

TL_MONOID = [
    _r("TL1a", "t[{i},{n}] ; t[{i},{n}]", "t[{i},{n}]", "i<n"),
    _r("TL1b", "t[{i},{n}] ; t[{j},{n}]", "t[{j},{n}] ; t[{i},{n}]", "|i-j|>1"),
    _r("TL1c", "t[{i},{n}] ; t[{j},{n}] ; t[{i},{n}]", "t[{i},{n}]", "|i-j|=1"),
]

TL_CAT_EXTRA = [
    _r("TL2a", "l[{n}] ; r[{n}]", "id[{n}]", "n", uses_units=True),
    _r("TL2b", "r[{n}] ; l[{n}]", "t[{n1},{n2}]", "n", uses_units=True),
    _r("TL2c", "t[{i},{n}] ; l[{n}]", "l[{n}] ; t[{i},{n2}]", "i<n", uses_units=True),
    _r("TL2d", "r[{n}] ; t[{i},{n}]", "t[{i},{n2}] ; r[{n}]", "i<n", uses_units=True),
]

PV_MONOID = [
    _r("PV1a", "s[{i},{n}] ; si[{i},{n}]", "id[{n}]", "i<n"),
    _r("PV1b", "si[{i},{n}] ; s[{i},{n}]", "id[{n}]", "i<n"),
    _r("PV1c", "e[{i},{n}] ; e[{i},{n}]", "e[{i},{n}]", "i<=n"),
    _r("PV1d", "e[{i},{n}] ; e[{j},{n}]", "e[{j},{n}] ; e[{i},{n}]", "i<j<=n"),
    _r("PV2a", "m[{i},{n}]", "m[{i},{n}] ; m[{i},{n}]", "i<n"),
    _r("PV2b", "m[{i},{n}]", "h[{i},{n}] ; m[{i},{n}]", "i<n"),
    _r("PV2c", "m[{i},{n}]", "s[{i},{n}] ; m[{i},{n}]", "i<n"),
    _r("PV2d", "m[{i},{n}]", "h[{i},{n}] ; s[{i},{n}]", "i<n"),
    _r("PV2e", "h[{i},{n}]", "h[{i},{n}] ; h[{i},{n}]", "i<n"),
    _r("PV2f", "h[{i},{n}]", "m[{i},{n}] ; h[{i},{n}]", "i<n"),
    _r("PV2g", "h[{i},{n}]", "s[{i},{n}] ; h[{i},{n}]", "i<n"),
    _r("PV2h", "h[{i},{n}]", "m[{i},{n}] ; s[{i},{n}]", "i<n"),
    _r("PV3a", "m[{i},{n}] ; m[{i1},{n}]", "m[{i},{n}] ; s[{i1},{n}]", "i<n-1"),
    _r("PV3b", "m[{i},{n}] ; h[{i1},{n}]", "m[{i},{n}]", "i<n-1"),
    _r("PV3c", "h[{i1},{n}] ; h[{i},{n}]", "h[{i1},{n}] ; s[{i},{n}]", "i<n-1"),
    _r("PV3d", "h[{i1},{n}] ; m[{i},{n}]", "h[{i1},{n}]", "i<n-1"),
    _r("PV4a", "m[{i1},{n}] ; m[{i},{n}]", "m[{i},{n}] ; m[{i1},{n}] ; m[{i},{n}]", "i<n-1"),
    _r("PV4b", "m[{i1},{n}] ; m[{i},{n}]", "m[{i1},{n}] ; m[{i},{n}] ; m[{i1},{n}]", "i<n-1"),
    _r("PV4c", "h[{i},{n}] ; h[{i1},{n}]", "h[{i},{n}] ; h[{i1},{n}] ; h[{i},{n}]", "i<n-1"),
    _r("PV4d", "h[{i},{n}] ; h[{i1},{n}]", "h[{i1},{n}] ; h[{i},{n}] ; h[{i1},{n}]", "i<n-1"),
    _r("PV5a", "m[{i},{n}] ; e[{i1},{n}]", "m[{i},{n}]", "i<n"),
    _r("PV5b", "e[{i1},{n}] ; m[{i},{n}]", "e[{i1},{n}]", "i<n"),
    _r("PV5c", "h[{i},{n}] ; e[{i},{n}]", "h[{i},{n}]", "i<n"),
    _r("PV5d", "e[{i},{n}] ; h[{i},{n}]", "e[{i},{n}]", "i<n"),
    _r("PV6a", "m[{i1},{n}] ; s[{i},{n}]", "s[{i},{n}] ; s[{i1},{n}] ; m[{i},{n}] ; m[{i1},{n}]", "i<n-1"),
    _r("PV6b", "h[{i},{n}] ; s[{i1},{n}]", "s[{i1},{n}] ; s[{i},{n}] ; h[{i1},{n}] ; h[{i},{n}]", "i<n-1"),
    _r("PV7a", "s[{i},{n}] ; e[{i},{n}]", "e[{i1},{n}] ; s[{i},{n}]", "i<n"),
    _r("PV7b", "s[{i},{n}] ; e[{i1},{n}]", "e[{i},{n}] ; s[{i},{n}]", "i<n"),
    _r("PV7c", "s[{i},{n}] ; s[{i},{n}] ; e[{i},{n}]", "e[{i},{n}]", "i<n"),
    _r("PV8a", "s[{i},{n}] ; e[{i},{n}] ; e[{i1},{n}]", "e[{i},{n}] ; e[{i1},{n}]", "i<n"),
    _r("PV8b", "e[{i},{n}] ; e[{i1},{n}]", "m[{i},{n}] ; e[{i},{n}]", "i<n"),
    _r("PV8c", "e[{i},{n}] ; e[{i1},{n}]", "h[{i},{n}] ; e[{i1},{n}]", "i<n"),
    _r("PV9a", "s[{i},{n}] ; s[{j},{n}]", "s[{j},{n}] ; s[{i},{n}]", "|i-j|>1"),
    _r("PV9b", "m[{i},{n}] ; m[{j},{n}]", "m[{j},{n}] ; m[{i},{n}]", "|i-j|>1"),
    _r("PV9c", "h[{i},{n}] ; h[{j},{n}]", "h[{j},{n}] ; h[{i},{n}]", "|i-j|>1"),
    _r("PV10a", "s[{i},{n}] ; m[{j},{n}]", "m[{j},{n}] ; s[{i},{n}]", "|i-j|>1"),
    _r("PV10b", "s[{i},{n}] ; h[{j},{n}]", "h[{j},{n}] ; s[{i},{n}]", "|i-j|>1"),
    _r("PV11", "s[{i},{n}] ; s[{j},{n}] ; s[{i},{n}]", "s[{j},{n}] ; s[{i},{n}] ; s[{j},{n}]", "|i-j|=1"),
    _r("PV12a", "m[{i},{n}] ; h[{j},{n}]", "h[{j},{n}] ; m[{i},{n}]", "j!=i,i+1;j<n"),
    _r("PV12b", "s[{i},{n}] ; e[{j},{n}]", "e[{j},{n}] ; s[{i},{n}]", "j!=i,i+1;j<=n"),
    _r("PV13a", "m[{i},{n}] ; e[{j},{n}]", "e[{j},{n}] ; m[{i},{n}]", "j!=i,i+1;j<=n"),
    _r("PV13b", "h[{i},{n}] ; e[{j},{n}]", "e[{j},{n}] ; h[{i},{n}]", "j!=i,i+1;j<=n"),
]

PV_CAT_EXTRA = [
    _r("PV14a", "l[{n}] ; r[{n}]", "id[{n}]", "n", uses_units=True),
    _r("PV14b", "r[{n}] ; l[{n}]", "e[{n1},{n1}]", "n", uses_units=True),
] + [
    _r(f"PV15a-{th}", f"{th}[{{i}},{{n}}] ; l[{{n}}]", f"l[{{n}}] ; {th}[{{i}},{{n1}}]", rng, uses_units=True)
    for th, rng in (("s", "i<n"), ("si", "i<n"), ("e", "i<=n"), ("m", "i<n"), ("h", "i<n"))
] + [
    _r(f"PV15b-{th}", f"r[{{n}}] ; {th}[{{i}},{{n}}]", f"{th}[{{i}},{{n1}}] ; r[{{n}}]", rng, uses_units=True)
    for th, rng in (("s", "i<n"), ("si", "i<n"), ("e", "i<=n"), ("m", "i<n"), ("h", "i<n"))
]

IB_MONOID = [
    _r("IB1a", "s[{i},{n}] ; si[{i},{n}]", "id[{n}]", "i<n"),
    _r("IB1b", "si[{i},{n}] ; s[{i},{n}]", "id[{n}]", "i<n"),
    _r("IB1c", "e[{i},{n}] ; e[{i},{n}]", "e[{i},{n}]", "i<=n"),
    _r("IB1d", "e[{i},{n}] ; e[{j},{n}]", "e[{j},{n}] ; e[{i},{n}]", "i<j<=n"),
    _r("IB1e", "s[{i},{n}] ; e[{j},{n}]", "e[{j},{n}] ; s[{i},{n}]", "j!=i,i+1;j<=n"),
    _r("IB2a", "s[{i},{n}] ; e[{i},{n}]", "e[{i1},{n}] ; s[{i},{n}]", "i<n"),
    _r("IB2b", "s[{i},{n}] ; e[{i1},{n}]", "e[{i},{n}] ; s[{i},{n}]", "i<n"),
    _r("IB2c", "s[{i},{n}] ; s[{i},{n}] ; e[{i},{n}]", "e[{i},{n}]", "i<n"),
    _r("IB2d", "s[{i},{n}] ; e[{i},{n}] ; e[{i1},{n}]", "e[{i},{n}] ; e[{i1},{n}]", "i<n"),
    _r("IB3a", "s[{i},{n}] ; s[{j},{n}]", "s[{j},{n}] ; s[{i},{n}]", "|i-j|>1"),
    _r("IB3b", "s[{i},{n}] ; s[{j},{n}] ; s[{i},{n}]", "s[{j},{n}] ; s[{i},{n}] ; s[{j},{n}]", "|i-j|=1"),
]

IB_CAT_EXTRA = [
    _r("IB4a", "l[{n}] ; r[{n}]", "id[{n}]", "n", uses_units=True),
    _r("IB4b", "r[{n}] ; l[{n}]", "e[{n1},{n1}]", "n", uses_units=True),
] + [
    _r(f"IB5a-{th}", f"{th}[{{i}},{{n}}] ; l[{{n}}]", f"l[{{n}}] ; {th}[{{i}},{{n1}}]", rng, uses_units=True)
    for th, rng in (("s", "i<n"), ("si", "i<n"), ("e", "i<=n"))
] + [
    _r(f"IB5b-{th}", f"r[{{n}}] ; {th}[{{i}},{{n}}]", f"{th}[{{i}},{{n1}}] ; r[{{n}}]", rng, uses_units=True)
    for th, rng in (("s", "i<n"), ("si", "i<n"), ("e", "i<=n"))
]

V_MONOID = [
    _r("V1a", "s[{i},{n}] ; si[{i},{n}]", "id[{n}]", "i<n", min_n=1),
    _r("V1b", "si[{i},{n}] ; s[{i},{n}]", "id[{n}]", "i<n", min_n=1),
    _r("V2a", "m[{i},{n}]", "m[{i},{n}] ; m[{i},{n}]", "i<n", min_n=1),
    _r("V2b", "m[{i},{n}]", "h[{i},{n}] ; m[{i},{n}]", "i<n", min_n=1),
    _r("V2c", "m[{i},{n}]", "s[{i},{n}] ; m[{i},{n}]", "i<n", min_n=1),
    _r("V2d", "m[{i},{n}]", "h[{i},{n}] ; s[{i},{n}]", "i<n", min_n=1),
    _r("V2e", "h[{i},{n}]", "h[{i},{n}] ; h[{i},{n}]", "i<n", min_n=1),
    _r("V2f", "h[{i},{n}]", "m[{i},{n}] ; h[{i},{n}]", "i<n", min_n=1),
    _r("V2g", "h[{i},{n}]", "s[{i},{n}] ; h[{i},{n}]", "i<n", min_n=1),
    _r("V2h", "h[{i},{n}]", "m[{i},{n}] ; s[{i},{n}]", "i<n", min_n=1),
    _r("V3a", "m[{i},{n}] ; m[{i1},{n}]", "m[{i},{n}] ; s[{i1},{n}]", "i<n-1", min_n=1),
    _r("V3b", "h[{i1},{n}] ; h[{i},{n}]", "h[{i1},{n}] ; s[{i},{n}]", "i<n-1", min_n=1),
    _r("V3c", "m[{i},{n}] ; h[{i1},{n}]", "m[{i},{n}]", "i<n-1", min_n=1),
    _r("V3d", "h[{i1},{n}] ; m[{i},{n}]", "h[{i1},{n}]", "i<n-1", min_n=1),
    _r("V4a", "m[{i1},{n}] ; m[{i},{n}]", "m[{i},{n}] ; m[{i1},{n}] ; m[{i},{n}]", "i<n-1", min_n=1),
    _r("V4b", "m[{i1},{n}] ; m[{i},{n}]", "m[{i1},{n}] ; m[{i},{n}] ; m[{i1},{n}]", "i<n-1", min_n=1),
    _r("V4c", "h[{i},{n}] ; h[{i1},{n}]", "h[{i},{n}] ; h[{i1},{n}] ; h[{i},{n}]", "i<n-1", min_n=1),
    _r("V4d", "h[{i},{n}] ; h[{i1},{n}]", "h[{i1},{n}] ; h[{i},{n}] ; h[{i1},{n}]", "i<n-1", min_n=1),
    _r("V5a", "m[{i1},{n}] ; s[{i},{n}]", "s[{i},{n}] ; s[{i1},{n}] ; m[{i},{n}] ; m[{i1},{n}]", "i<n-1", min_n=1),
    _r("V5b", "h[{i},{n}] ; s[{i1},{n}]", "s[{i1},{n}] ; s[{i},{n}] ; h[{i1},{n}] ; h[{i},{n}]", "i<n-1", min_n=1),
    _r("V6a", "s[{i},{n}] ; s[{j},{n}]", "s[{j},{n}] ; s[{i},{n}]", "|i-j|>1", min_n=1),
    _r("V6b", "m[{i},{n}] ; m[{j},{n}]", "m[{j},{n}] ; m[{i},{n}]", "|i-j|>1", min_n=1),
    _r("V6c", "h[{i},{n}] ; h[{j},{n}]", "h[{j},{n}] ; h[{i},{n}]", "|i-j|>1", min_n=1),
    _r("V7a", "s[{i},{n}] ; m[{j},{n}]", "m[{j},{n}] ; s[{i},{n}]", "|i-j|>1", min_n=1),
    _r("V7b", "s[{i},{n}] ; h[{j},{n}]", "h[{j},{n}] ; s[{i},{n}]", "|i-j|>1", min_n=1),
    _r("V8", "s[{i},{n}] ; s[{j},{n}] ; s[{i},{n}]", "s[{j},{n}] ; s[{i},{n}] ; s[{j},{n}]", "|i-j|=1", min_n=1),
    _r("V9", "m[{i},{n}] ; h[{j},{n}]", "h[{j},{n}] ; m[{i},{n}]", "j!=i,i+1;j<n", min_n=1),
]

V_CAT_EXTRA = [
    _r("V10a", "l[{n}] ; r[{n}]", "id[{n}]", "n", min_n=1, uses_units=True),
    _r("V10b", "r[{n}] ; l[{n}]", "m[{n},{n1}]", "n", min_n=1, uses_units=True),
] + [
    _r(f"V11-{th}", f"{th}[{{i}},{{n}}] ; l[{{n}}]", f"l[{{n}}] ; {th}[{{i}},{{n1}}]", "i<n", min_n=1, uses_units=True)
    for th in ("s", "si", "m", "h")
] + [
    _r(f"V12-{th}", f"r[{{n}}] ; {th}[{{i}},{{n}}]", f"{th}[{{i}},{{n1}}] ; r[{{n}}]", "i<n-1", min_n=1, uses_units=True)
    for th in ("s", "si", "m", "h")
] + [
    _r(
        f"V13-{th}",
        f"r[{{n}}] ; {th}[{{nm1}},{{n}}]",
        f"m[{{n}},{{n1}}] ; {th}[{{nm1}},{{n1}}] ; r[{{n}}]",
        "n",
        min_n=2,
        uses_units=True,
    )
    for th in ("s", "si", "m", "h")
]

_BRAID = "(X # id[1]) ; (id[1] # X) ; (X # id[1])", "(id[1] # X) ; (X # id[1]) ; (id[1] # X)"

P_TENSOR = [
    _r("P1'a", "X ; X", "id[2]"),
    _r("P1'b", "Uu ; U", "id[0]"),
    _r("P2'a", "D ; D", "D"),
    _r("P2'b", "D ; X", "D"),
    _r("P2'c", "X ; D", "D"),
    _r("P2'd", "(D # id[1]) ; (id[1] # D)", "(id[1] # D) ; (D # id[1])"),
    _r("P3'", *_BRAID),
    _r("P4'", "(X # id[1]) ; (id[1] # D) ; (X # id[1])", "(id[1] # X) ; (D # id[1]) ; (id[1] # X)"),
    _r("P5'a", "X ; (id[1] # U)", "U # id[1]"),
    _r("P5'b", "(id[1] # Uu) ; X", "Uu # id[1]"),
    _r("P6'a", "(id[1] # Uu) ; D ; (id[1] # U)", "id[1]"),
    _r("P6'b", "D ; (id[1] # U # Uu) ; D", "D"),
]

B_TENSOR = [
    _r("B1'a", "X ; X", "id[2]"),
    _r("B1'b", "Uu ; U", "id[0]"),
    _r("B1'c", "X ; U", "U"),
    _r("B1'd", "Uu ; X", "Uu"),
    _r("B2'", *_BRAID),
    _r("B3'a", "(id[1] # Uu) ; (U # id[1])", "id[1]"),
    _r("B3'b", "(Uu # id[1]) ; (id[1] # U)", "id[1]"),
    _r("B4'a", "(X # id[1]) ; (id[1] # U)", "(id[1] # X) ; (U # id[1])"),
    _r("B4'b", "(Uu # id[1]) ; (id[1] # X)", "(id[1] # Uu) ; (X # id[1])"),
]

TL_TENSOR = [
    _r("TLt1", "Uu ; U", "id[0]"),
    _r("TLt2a", "(id[1] # Uu) ; (U # id[1])", "id[1]"),
    _r("TLt2b", "(Uu # id[1]) ; (id[1] # U)", "id[1]"),
]

PV_TENSOR = [
    _r("PV1'a", "X ; Xi", "id[2]"),
    _r("PV1'b", "Xi ; X", "id[2]"),
    _r("PV1'c", "Uu ; U", "id[0]"),
    _r("PV2'a", "X ; V", "V"),
    _r("PV2'b", "V ; U", "U # U"),
    _r("PV2'c", "(V # id[1]) ; V", "(id[1] # V) ; V"),
    _r("PV2'd", "(id[1] # Uu) ; V", "id[1]"),
    _r("PV3'", *_BRAID),
    _r("PV4'a", "X ; (U # id[1])", "id[1] # U"),
    _r("PV4'b", "X ; (id[1] # U)", "U # id[1]"),
    _r("PV5'a", "(Uu # id[1]) ; X", "id[1] # Uu"),
    _r("PV5'b", "(id[1] # Uu) ; X", "Uu # id[1]"),
    _r("PV6'a", "(id[1] # V) ; X", "(X # id[1]) ; (id[1] # X) ; (V # id[1])"),
    _r("PV6'b", "(V # id[1]) ; X", "(id[1] # X) ; (X # id[1]) ; (id[1] # V)"),
]

IB_TENSOR = [
    _r("IB1'a", "X ; Xi", "id[2]"),
    _r("IB1'b", "Xi ; X", "id[2]"),
    _r("IB1'c", "Uu ; U", "id[0]"),
    _r("IB2'", *_BRAID),
    _r("IB3'a", "X ; (U # id[1])", "id[1] # U"),
    _r("IB3'b", "X ; (id[1] # U)", "U # id[1]"),
    _r("IB3'c", "(Uu # id[1]) ; X", "id[1] # Uu"),
    _r("IB3'd", "(id[1] # Uu) ; X", "Uu # id[1]"),
]

V_TENSOR = [
    _r("V1'a", "X ; Xi", "id[2]"),
    _r("V1'b", "Xi ; X", "id[2]"),
    _r("V1'c", "X ; V", "V"),
    _r("V2'a", "(V # id[1]) ; V", "(id[1] # V) ; V"),
    _r("V2'b", "(id[1] # Uu) ; V", "id[1]"),
    _r("V3'", *_BRAID),
    _r("V4'a", "(Uu # id[1]) ; X", "id[1] # Uu"),
    _r("V4'b", "(id[1] # Uu) ; X", "Uu # id[1]"),
    _r("V5'a", "(id[1] # V) ; X", "(X # id[1]) ; (id[1] # X) ; (V # id[1])"),
    _r("V5'b", "(V # id[1]) ; X", "(id[1] # X) ; (X # id[1]) ; (id[1] # V)"),
]

PT_TENSOR = [
    _r("PTt1", "X ; X", "id[2]"),
    _r("PTt2", *_BRAID),
    _r("PTt3", "Uu ; U", "id[0]"),
    _r("PTt4", "X ; V", "V"),
    _r("PTt5", "V ; U", "U # U"),
    _r("PTt6", "(V # id[1]) ; V", "(id[1] # V) ; V"),
    _r("PTt7", "(id[1] # Uu) ; V", "id[1]"),
    _r("PTt8", "X ; (U # id[1])", "id[1] # U"),
    _r("PTt9", "(Uu # id[1]) ; X", "id[1] # Uu"),
    _r("PTt10", "(id[1] # V) ; X", "(X # id[1]) ; (id[1] # X) ; (V # id[1])"),
]

I_TENSOR = [
    _r("It1", "X ; X", "id[2]"),
    _r("It2", *_BRAID),
    _r("It3", "Uu ; U", "id[0]"),
    _r("It4", "X ; (U # id[1])", "id[1] # U"),
    _r("It5", "(Uu # id[1]) ; X", "id[1] # Uu"),
]

T_TENSOR = [
    _r("Tt1", "X ; X", "id[2]"),
    _r("Tt2", *_BRAID),
    _r("Tt3", "X ; V", "V"),
    _r("Tt4", "(V # id[1]) ; V", "(id[1] # V) ; V"),
    _r("Tt5", "(id[1] # Uu) ; V", "id[1]"),
    _r("Tt6", "(Uu # id[1]) ; X", "id[1] # Uu"),
    _r("Tt7", "(id[1] # V) ; X", "(X # id[1]) ; (id[1] # X) ; (V # id[1])"),
]

PO_TENSOR = [
    _r("POt1", "Uu ; U", "id[0]"),
    _r("POt2", "V ; U", "U # U"),
    _r("POt3", "(V # id[1]) ; V", "(id[1] # V) ; V"),
    _r("POt4", "(id[1] # Uu) ; V", "id[1]"),
    _r("POt5", "(Uu # id[1]) ; V", "id[1]"),
]

O_TENSOR = [
    _r("Ot1", "(V # id[1]) ; V", "(id[1] # V) ; V"),
    _r("Ot2", "(id[1] # Uu) ; V", "id[1]"),
    _r("Ot3", "(Uu # id[1]) ; V", "id[1]"),
]

OI_TENSOR = [_r("OIt1", "Uu ; U", "id[0]")]

# The kernel of the shadow surmorphism is generated by squaring the braid
# generator; adjoining it must keep every shadow catalog sound.
SQ_CAT = [_r("SQ", "s[{i},{n}] ; s[{i},{n}]", "id[{n}]", "i<n")]
SQ_TENSOR = [_r("SQ'", "X ; X", "id[2]")]


# -- presentations -----------------------------------------------------------------


@dataclass
class Presentation:
    pid: str
    level: str  # "category" | "tensor"
    semantics: str  # P, B, TL, PT, T, I, PO, O, OI
    digraph: Digraph
    relations: list
    d: int = 1
    min_object: int = 0
    linear: bool = False
    rho_family: str = "rho_chop"
    shadow_of: str | None = None  # catalog family evaluated through psi
    _interp: Interpretation | None = field(default=None, repr=False)

    def interpretation(self):
        if self._interp is None:
            if self.semantics in ("P", "B", "TL"):
                kind = DiagramKind(self.semantics)
                self._interp = (
                    linear_interp(kind, self.rho_family)
                    if self.linear
                    else diagram_interp(kind, self.rho_family)
                )
            else:
                self._interp = map_interp(self.rho_family)
        return self._interp

    def kind(self):
        """The hom-set membership predicate for this semantics."""
        if self.semantics in ("P", "B", "TL"):
            return DiagramKind(self.semantics)
        return MapKind(self.semantics)

    def instances(self, n_max, extra=()):
        out = []
        for schema in list(self.relations) + list(extra):
            if schema.indices is None:
                out.append(self._mk(schema, None, {}))
                continue
            top = n_max - (self.d if schema.uses_units else 0)
            for n in range(max(schema.min_n, self.min_object), top + 1):
                for idx in schema.index_tuples(n):
                    out.append(self._mk(schema, n, idx))
        return out

    def _mk(self, schema, n, idx):
        env = dict(idx)
        if n is not None:
            env.update(n=n, n1=n + 1, n2=n + 2, nm1=n - 1)
        if "i" in idx:
            env["i1"] = idx["i"] + 1
        if "j" in idx:
            env["j1"] = idx["j"] + 1
        lhs = parse_term(schema.lhs.format(**env), self.digraph)
        rhs = parse_term(schema.rhs.format(**env), self.digraph)
        if lhs.dom != rhs.dom or lhs.cod != rhs.cod:
            raise BadGradingError(f"{schema.rid} at {env}: sides have different boundaries")
        return RelInstance(
            schema.rid, n, idx.get("i"), idx.get("j"), lhs, rhs, schema.lhs_coeff, schema.rhs_coeff
        )

    def dump_lines(self, n_max):
        return [ri.line() for ri in self.instances(n_max)]


def _linearized(pres, new_pid, delta_rids):
    """Copy a diagram presentation, attaching the delta coefficient to the
    right-hand side of the named relations (the section-3.5 substitution)."""
    rels = []
    for s in pres.relations:
        coeff = DELTA if s.rid in delta_rids else ONE
        rels.append(
            RelSchema(s.rid, s.lhs, s.rhs, s.indices, s.min_n, s.uses_units, ONE, coeff)
        )
    return Presentation(
        new_pid,
        pres.level,
        pres.semantics,
        pres.digraph,
        rels,
        pres.d,
        pres.min_object,
        linear=True,
        rho_family=pres.rho_family,
    )


def _build_presentations():
    P = {}

    def add(p):
        P[p.pid] = p

    add(Presentation("P-cat", "category", "P", GAMMA_P, P_MONOID + P_CAT_EXTRA, d=1))
    add(Presentation("B-cat", "category", "B", GAMMA_B, B_MONOID + B_CAT_EXTRA, d=2))
    add(Presentation("TL-cat", "category", "TL", GAMMA_TL, TL_MONOID + TL_CAT_EXTRA, d=2))
    add(Presentation("P-tensor", "tensor", "P", DELTA_P, P_TENSOR))
    add(Presentation("B-tensor", "tensor", "B", DELTA_B, B_TENSOR, d=2))
    add(Presentation("TL-tensor", "tensor", "TL", DELTA_TL, TL_TENSOR, d=2))

    add(
        Presentation(
            "PV-cat", "category", "PT", GAMMA_PV, PV_MONOID + PV_CAT_EXTRA, shadow_of="PV"
        )
    )
    add(Presentation("IB-cat", "category", "I", GAMMA_IB, IB_MONOID + IB_CAT_EXTRA, shadow_of="IB"))
    add(
        Presentation(
            "V-cat",
            "category",
            "T",
            GAMMA_V,
            V_MONOID + V_CAT_EXTRA,
            min_object=1,
            rho_family="rho_fold",
            shadow_of="V",
        )
    )
    add(Presentation("PV-tensor", "tensor", "PT", DELTA_PV, PV_TENSOR, shadow_of="PV"))
    add(Presentation("IB-tensor", "tensor", "I", DELTA_IB, IB_TENSOR, shadow_of="IB"))
    add(Presentation("V-tensor", "tensor", "T", DELTA_V, V_TENSOR, shadow_of="V"))

    # category-level PT/I/T: shadow catalog plus the squared braid generator
    add(
        Presentation(
            "PT-cat", "category", "PT", GAMMA_PV, PV_MONOID + PV_CAT_EXTRA + SQ_CAT
        )
    )
    add(Presentation("I-cat", "category", "I", GAMMA_IB, IB_MONOID + IB_CAT_EXTRA + SQ_CAT))
    add(
        Presentation(
            "T-cat",
            "category",
            "T",
            GAMMA_V,
            V_MONOID + V_CAT_EXTRA + SQ_CAT,
            min_object=1,
            rho_family="rho_fold",
        )
    )

    add(Presentation("PT-tensor", "tensor", "PT", DELTA_PT, PT_TENSOR))
    add(Presentation("I-tensor", "tensor", "I", DELTA_I, I_TENSOR))
    add(Presentation("T-tensor", "tensor", "T", DELTA_T, T_TENSOR))
    add(Presentation("PO-tensor", "tensor", "PO", DELTA_PO, PO_TENSOR))
    add(Presentation("O-tensor", "tensor", "O", DELTA_O, O_TENSOR))
    add(Presentation("OI-tensor", "tensor", "OI", DELTA_OI, OI_TENSOR))

    add(_linearized(P["P-cat"], "P-cat-linear", {"P1b", "P8a"}))
    add(_linearized(P["B-cat"], "B-cat-linear", {"B1b", "B4a"}))
    add(_linearized(P["TL-cat"], "TL-cat-linear", {"TL1a", "TL2a"}))
    add(_linearized(P["P-tensor"], "P-tensor-linear", {"P1'b"}))
    add(_linearized(P["B-tensor"], "B-tensor-linear", {"B1'b"}))
    add(_linearized(P["TL-tensor"], "TL-tensor-linear", {"TLt1"}))
    return P


PRESENTATIONS = _build_presentations()


def get_presentation(pid):
    try:
        return PRESENTATIONS[pid]
    except KeyError:
        raise UnknownSpecError(f"unknown presentation {pid!r}") from None


# -- hat maps -----------------------------------------------------------------------

_HAT_TABLES = {
    "P": (
        DELTA_P,
        {
            "s": "id[{im1}] # X # id[{nmi1}]",
            "t": "id[{im1}] # D # id[{nmi1}]",
            "e": "id[{im1}] # U # Uu # id[{nmi}]",
            "l": "id[{n}] # Uu",
            "r": "id[{n}] # U",
        },
    ),
    "B": (
        DELTA_B,
        {
            "s": "id[{im1}] # X # id[{nmi1}]",
            "t": "id[{im1}] # U # Uu # id[{nmi1}]",
            "l": "id[{n}] # Uu",
            "r": "id[{n}] # U",
        },
    ),
    "TL": (
        DELTA_TL,
        {
            "t": "id[{im1}] # U # Uu # id[{nmi1}]",
            "l": "id[{n}] # Uu",
            "r": "id[{n}] # U",
        },
    ),
    "PV": (
        DELTA_PV,
        {
            "s": "id[{im1}] # X # id[{nmi1}]",
            "si": "id[{im1}] # Xi # id[{nmi1}]",
            "e": "id[{im1}] # U # Uu # id[{nmi}]",
            "m": "id[{im1}] # V # Uu # id[{nmi1}]",
            "h": "id[{im1}] # Uu # V # id[{nmi1}]",
            "l": "id[{n}] # Uu",
            "r": "id[{n}] # U",
        },
    ),
    "IB": (
        DELTA_IB,
        {
            "s": "id[{im1}] # X # id[{nmi1}]",
            "si": "id[{im1}] # Xi # id[{nmi1}]",
            "e": "id[{im1}] # U # Uu # id[{nmi}]",
            "l": "id[{n}] # Uu",
            "r": "id[{n}] # U",
        },
    ),
    "V": (
        DELTA_V,
        {
            "s": "id[{im1}] # X # id[{nmi1}]",
            "si": "id[{im1}] # Xi # id[{nmi1}]",
            "m": "id[{im1}] # V # Uu # id[{nmi1}]",
            "h": "id[{im1}] # Uu # V # id[{nmi1}]",
            "l": "id[{n}] # Uu",
            "r": "id[{nm1}] # V",
        },
    ),
    "PT": (
        DELTA_PT,
        {
            "s": "id[{im1}] # X # id[{nmi1}]",
            "si": "id[{im1}] # X # id[{nmi1}]",
            "e": "id[{im1}] # U # Uu # id[{nmi}]",
            "m": "id[{im1}] # V # Uu # id[{nmi1}]",
            "h": "id[{im1}] # Uu # V # id[{nmi1}]",
            "l": "id[{n}] # Uu",
            "r": "id[{n}] # U",
        },
    ),
    "I": (
        DELTA_I,
        {
            "s": "id[{im1}] # X # id[{nmi1}]",
            "si": "id[{im1}] # X # id[{nmi1}]",
            "e": "id[{im1}] # U # Uu # id[{nmi}]",
            "l": "id[{n}] # Uu",
            "r": "id[{n}] # U",
        },
    ),
    "T": (
        DELTA_T,
        {
            "s": "id[{im1}] # X # id[{nmi1}]",
            "si": "id[{im1}] # X # id[{nmi1}]",
            "m": "id[{im1}] # V # Uu # id[{nmi1}]",
            "h": "id[{im1}] # Uu # V # id[{nmi1}]",
            "l": "id[{n}] # Uu",
            "r": "id[{nm1}] # V",
        },
    ),
}


def hat_map(cat, edge):
    """The tensor term standing for a category-level edge, per the hat tables."""
    try:
        delta, table = _HAT_TABLES[cat]
        template = table[edge.name]
    except KeyError:
        raise UnknownSpecError(f"no hat image for {edge.text()} in {cat}") from None
    i, n = edge.i, edge.n
    env = {"n": n, "nm1": (n - 1) if n is not None else None}
    if i is not None:
        env.update(im1=i - 1, nmi=n - i, nmi1=n - i - 1)
    return parse_term(template.format(**env), delta)


def hat_word(cat, word):
    """Apply the hat map edge-wise to a path (empty path at n stays id[n])."""
    from .terms import TId, TSeq

    if not word.edges:
        return TId(word.dom)
    parts = [hat_map(cat, e) for e in word.edges]
    return parts[0] if len(parts) == 1 else TSeq(parts)


# -- scaffolds ---------------------------------------------------------------------


@dataclass
class Scaffold:
    sid: str
    pres_id: str
    d: int
    grading: str  # "all" | "parity" | "pointed"
    word_budget_n: int  # largest endo level with a full word table

    @property
    def presentation(self):
        return get_presentation(self.pres_id)

    @property
    def digraph(self):
        return self.presentation.digraph

    def interpretation(self):
        return self.presentation.interpretation()

    @property
    def min_object(self):
        return self.presentation.min_object

    def monoid_edges(self, n):
        return self.digraph.monoid_edges_at(n)

    def w_word(self, n):
        """The word with rho_n lambda_n = w_n, over the level n+d alphabet."""
        g = self.digraph
        if self.sid in ("P", "PT", "I"):
            return Word(n + 1, (g.edge("e", n + 1, n + 1),))
        if self.sid in ("B", "TL"):
            return Word(n + 2, (g.edge("t", n + 1, n + 2),))
        if self.sid == "T":
            return Word(n + 1, (g.edge("m", n, n + 1),))
        raise UnknownSpecError(self.sid)

    def x_plus(self, edge):
        """x -> x_plus with x lambda_n = lambda_n x_plus."""
        return [self.digraph.edge(edge.name, edge.i, edge.n + self.d)]

    def x_sup(self, edge):
        """x -> x_sup with rho_n x = x_sup rho_n; index-dependent for T."""
        n = edge.n
        if self.sid == "T" and edge.i == n - 1:
            return [
                self.digraph.edge("m", n, n + 1),
                self.digraph.edge(edge.name, n - 1, n + 1),
            ]
        return [self.digraph.edge(edge.name, edge.i, n + self.d)]


SCAFFOLDS = {
    "P": Scaffold("P", "P-cat", 1, "all", 4),
    "B": Scaffold("B", "B-cat", 2, "parity", 6),
    "TL": Scaffold("TL", "TL-cat", 2, "parity", 8),
    "PT": Scaffold("PT", "PT-cat", 1, "all", 4),
    "I": Scaffold("I", "I-cat", 1, "all", 4),
    "T": Scaffold("T", "T-cat", 1, "pointed", 4),
}


def get_scaffold(sid):
    try:
        return SCAFFOLDS[sid]
    except KeyError:
        raise UnknownSpecError(f"unknown scaffold {sid!r}") from None


def lambda_word(scaffold, m, n):
    """lambda_{m,n} = lambda_m lambda_{m+d} ... lambda_{n-d} (empty when m=n)."""
    d = scaffold.d
    if m > n or (n - m) % d != 0 or m < scaffold.min_object:
        raise BadGradingError(f"no lambda word {m}->{n} with step {d}")
    return Word(m, tuple(scaffold.digraph.edge("l", n=k) for k in range(m, n, d)))


def rho_word(scaffold, n, m):
    """rho_{n,m} = rho_{n-d} ... rho_{m+d} rho_m (empty when m=n)."""
    d = scaffold.d
    if m > n or (n - m) % d != 0 or m < scaffold.min_object:
        raise BadGradingError(f"no rho word {n}->{m} with step {d}")
    return Word(n, tuple(scaffold.digraph.edge("r", n=k) for k in range(n - d, m - d, -d)))


def to_endo_right(a, scaffold):
    """R_{m,n}(a) = rho_{n,m} composed with a, an endomorphism at n."""
    m, n = a.m, a.n
    rho = evaluate_word(rho_word(scaffold, n, m), scaffold.interpretation())
    return scaffold.interpretation().compose(rho, a)


def to_endo_left(a, scaffold):
    """L_{n,m}(a) = a composed with lambda_{m,n}, an endomorphism at n."""
    n, m = a.m, a.n
    lam = evaluate_word(lambda_word(scaffold, m, n), scaffold.interpretation())
    return scaffold.interpretation().compose(a, lam)


# -- breadth-first word tables ---------------------------------------------------

_WORD_TABLES = {}


def monoid_word_table(scaffold, n):
    key = (scaffold.sid, n)
    table = _WORD_TABLES.get(key)
    if table is not None:
        return table
    if n > scaffold.word_budget_n:
        raise BudgetExceededError(
            f"word table for {scaffold.sid} endomorphisms at {n} exceeds budget "
            f"{scaffold.word_budget_n}"
        )
    interp = scaffold.interpretation()
    gens = [(e, interp.assign(e)) for e in scaffold.monoid_edges(n)]
    start = interp.identity(n)
    table = {start: ()}
    frontier = [start]
    while frontier:
        nxt = []
        for elt in frontier:
            base = table[elt]
            for edge, image in gens:
                new = interp.compose(elt, image)
                if new not in table:
                    table[new] = base + (edge,)
                    nxt.append(new)
        frontier = nxt
    # install fully built; readers never observe partial tables
    _WORD_TABLES[key] = table
    return table


def monoid_word_for(element, scaffold, n, budget=None):
    """A word over the level-n alphabet evaluating to the given endomorphism."""
    if budget is not None and n > budget:
        raise BudgetExceededError(f"requested level {n} above budget {budget}")
    table = monoid_word_table(scaffold, n)
    try:
        return Word(n, table[element])
    except KeyError:
        raise DescendFailureError(
            f"element not generated by the {scaffold.sid} alphabet at level {n}"
        ) from None


# -- one-sided normal forms ---------------------------------------------------------


@dataclass
class NormalForm:
    side: str  # "left-lambda" | "right-rho"
    m: int  # domain object
    n: int  # codomain object
    d: int
    core: Word  # over the endo alphabet at max(m, n)
    trace: list

    def reconstruct(self, scaffold):
        interp = scaffold.interpretation()
        core_val = evaluate_word(self.core, interp)
        if self.side == "left-lambda":
            lam = evaluate_word(lambda_word(scaffold, self.m, self.n), interp)
            return interp.compose(lam, core_val)
        rho = evaluate_word(rho_word(scaffold, self.m, self.n), interp)
        return interp.compose(core_val, rho)

    def text(self):
        if self.side == "left-lambda":
            lam = " ; ".join(f"l[{k}]" for k in range(self.m, self.n, self.d))
            parts = [p for p in (lam, self.core.text() if self.core.edges else "") if p]
            return " ; ".join(parts) if parts else f"id[{self.m}]"
        rho = " ; ".join(f"r[{k}]" for k in range(self.m - self.d, self.n - self.d, -self.d))
        parts = [self.core.text() if self.core.edges else "", rho]
        parts = [p for p in parts if p]
        return " ; ".join(parts) if parts else f"id[{self.m}]"


def _lift(scaffold, letters, from_n, to_n, mapper):
    out = list(letters)
    level = from_n
    while level < to_n:
        new = []
        for e in out:
            new.extend(mapper(scaffold, e))
        out = new
        level += scaffold.d
    return out


def _plus_map(scaffold, edge):
    return scaffold.x_plus(edge)


def _sup_map(scaffold, edge):
    return scaffold.x_sup(edge)


def descend_hook(scaffold, level, core_edges):
    """Assumption-4(5) hook: a level-(n) word for lambda_n * core * rho_n.

    The hook is semantic: the composite is evaluated in the category and a
    word is recovered from the breadth-first table.
    """
    interp = scaffold.interpretation()
    lam = interp.assign(scaffold.digraph.edge("l", n=level))
    rho = interp.assign(scaffold.digraph.edge("r", n=level))
    val = lam
    for e in core_edges:
        val = interp.compose(val, interp.assign(e))
    val = interp.compose(val, rho)
    try:
        return list(monoid_word_for(val, scaffold, level).edges)
    except BudgetExceededError as exc:
        raise DescendFailureError(str(exc)) from exc


def normalize_one_sided(word, scaffold):
    """Rewrite a graded word into lambda_{m,n} * core or core * rho_{m,n}.

    Follows the three-case induction over the last letter; every step is
    either a catalog rewrite (shift maps, unit collapses) or a semantic
    descend, and the steps are logged in the trace.
    """
    d = scaffold.d
    m = word.dom
    form = "L"  # w ~ lambda_{m,q} * core  (core at level q); "R": core * rho_{m,q}
    q = m
    core = []
    trace = []
    for edge in word.edges:
        schema = scaffold.digraph.schemas[edge.name]
        if schema.arity == 2:
            if form == "L":
                core.append(edge)
            else:
                lifted = _lift(scaffold, [edge], q, m, _sup_map)
                core.extend(lifted)
                trace.append(("lift-sup", edge.text(), q, m))
        elif edge.name == "l":
            if form == "L":
                core = _lift(scaffold, core, q, q + d, _plus_map)
                trace.append(("shift-plus", q, q + d))
                q += d
            else:
                w_n = list(scaffold.w_word(q).edges)
                lifted = _lift(scaffold, w_n, q + d, m, _sup_map)
                core.extend(lifted)
                trace.append(("unit-collapse", q, q + d))
                q += d
                if q == m:
                    form = "L"
        elif edge.name == "r":
            if form == "R":
                q -= d
                trace.append(("rho-extend", q))
            elif q == m:
                form = "R"
                q -= d
                trace.append(("turn-right", q))
            else:
                core = descend_hook(scaffold, q - d, core)
                trace.append(("descend", q - d))
                q -= d
        else:
            raise UnknownSpecError(f"unexpected edge {edge.text()} in graded word")
    if form == "L":
        return NormalForm("left-lambda", m, q, d, Word(q, core), trace)
    return NormalForm("right-rho", m, q, d, Word(m, core), trace)


def dump_catalog(pid, n_max):
    """Deterministic one-line-per-relation dump of a presentation."""
    return get_presentation(pid).dump_lines(n_max)
