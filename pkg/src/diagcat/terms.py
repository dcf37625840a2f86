"""Free categories over graded digraphs and free tensor categories of terms.

Terms are trees built from empty paths, generator edges, sequential
composition ``;`` and tensor ``#``.  Every term has a layered form: a
composite of layers ``id[p] # x # id[q]`` with a single generator each.
Two layered forms that differ only by sliding layers with disjoint column
support past each other denote the same element of the free tensor
category, so states are kept in a canonical (lexicographically least)
layer order.  Rewriting matches a relation side as a framed window inside
that canonical order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    NoMatchError,
    ShapeMismatchError,
    TermSyntaxError,
    TermTypeError,
    UnassignedEdgeError,
    UnknownSpecError,
)


# -- graded digraphs -----------------------------------------------------------


@dataclass(frozen=True)
class Edge:
    """An instantiated generator edge with concrete source and target."""

    name: str
    i: int | None
    n: int | None
    dom: int
    cod: int

    def text(self):
        if self.i is not None:
            return f"{self.name}[{self.i},{self.n}]"
        if self.n is not None:
            return f"{self.name}[{self.n}]"
        return self.name

    def __repr__(self):
        return f"<edge {self.text()}:{self.dom}->{self.cod}>"

    def sort_key(self):
        return (self.name, self.i if self.i is not None else -1, self.n if self.n is not None else -1)


class EdgeSchema:
    """A family of edges: ``arity`` is 2 for x[i,n], 1 for x[n], 0 for constants."""

    def __init__(self, name, arity, dom, cod, valid=None):
        self.name = name
        self.arity = arity
        self._dom = dom
        self._cod = cod
        self._valid = valid

    def instantiate(self, i=None, n=None):
        if self.arity == 0:
            if i is not None or n is not None:
                raise UnknownSpecError(f"{self.name} takes no indices")
            return Edge(self.name, None, None, self._dom, self._cod)
        if self.arity == 1:
            if i is not None or n is None:
                raise UnknownSpecError(f"{self.name} takes one index")
            if self._valid and not self._valid(None, n):
                raise UnknownSpecError(f"index out of range for {self.name}[{n}]")
            return Edge(self.name, None, n, self._dom(n), self._cod(n))
        if i is None or n is None:
            raise UnknownSpecError(f"{self.name} takes two indices")
        if self._valid and not self._valid(i, n):
            raise UnknownSpecError(f"index out of range for {self.name}[{i},{n}]")
        return Edge(self.name, i, n, self._dom(n), self._cod(n))


class Digraph:
    """A graded digraph: named edge schemas over object set N (or P if min_object=1)."""

    def __init__(self, name, schemas, min_object=0):
        self.name = name
        self.schemas = {s.name: s for s in schemas}
        self.min_object = min_object
        self._cache = {}

    def edge(self, name, i=None, n=None):
        key = (name, i, n)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        schema = self.schemas.get(name)
        if schema is None:
            raise UnknownSpecError(f"unknown generator {name!r} in digraph {self.name}")
        e = schema.instantiate(i, n)
        self._cache[key] = e
        return e

    def nullary_edges(self):
        return [self.edge(s.name) for s in self.schemas.values() if s.arity == 0]

    def monoid_edges_at(self, n):
        """All arity-2 (endomorphism-alphabet) edges at level n, in schema order."""
        out = []
        for s in self.schemas.values():
            if s.arity != 2:
                continue
            for i in range(1, n + 1):
                try:
                    out.append(self.edge(s.name, i, n))
                except UnknownSpecError:
                    continue
        return out

    def edges_from(self, q, level_cap=None):
        """All edges with source q, optionally with both endpoints <= level_cap."""
        out = []
        for s in self.schemas.values():
            if s.arity == 2:
                for i in range(1, q + 1):
                    try:
                        e = self.edge(s.name, i, q)
                    except UnknownSpecError:
                        continue
                    if e.dom == q:
                        out.append(e)
            elif s.arity == 1:
                for n in range(self.min_object, q + 3):
                    try:
                        e = self.edge(s.name, n=n)
                    except UnknownSpecError:
                        continue
                    if e.dom == q and (level_cap is None or e.cod <= level_cap):
                        out.append(e)
            else:
                e = self.edge(s.name)
                if e.dom == q and (level_cap is None or e.cod <= level_cap):
                    out.append(e)
        return out


# -- words (free category paths) --------------------------------------------------


class Word:
    """A path in a graded digraph; ``edges`` may be empty (the empty path at dom)."""

    __slots__ = ("dom", "edges")

    def __init__(self, dom, edges=()):
        edges = tuple(edges)
        at = dom
        for e in edges:
            if e.dom != at:
                raise TermTypeError(
                    f"edge {e.text()} expects source {e.dom}, path is at {at}",
                    cod=at,
                    dom=e.dom,
                )
            at = e.cod
        self.dom = dom
        self.edges = edges

    @property
    def cod(self):
        return self.edges[-1].cod if self.edges else self.dom

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.dom == other.dom and self.edges == other.edges

    def __hash__(self):
        return hash((self.dom, self.edges))

    def __len__(self):
        return len(self.edges)

    def __mul__(self, other):
        if self.cod != other.dom:
            raise TermTypeError("word endpoints do not chain", cod=self.cod, dom=other.dom)
        return Word(self.dom, self.edges + other.edges)

    def text(self):
        if not self.edges:
            return f"id[{self.dom}]"
        return " ; ".join(e.text() for e in self.edges)

    def __repr__(self):
        return f"<word {self.text()}>"

    def to_term(self):
        if not self.edges:
            return TId(self.dom)
        if len(self.edges) == 1:
            return TGen(self.edges[0])
        return TSeq(tuple(TGen(e) for e in self.edges))


# -- terms -----------------------------------------------------------------------


class Term:
    __slots__ = ()

    def __eq__(self, other):
        if not isinstance(other, Term):
            return NotImplemented
        return _shape(normalize_term(self)) == _shape(normalize_term(other))

    def __hash__(self):
        return hash(_shape(normalize_term(self)))

    def __repr__(self):
        return f"<term {print_term(self)} : {self.dom}->{self.cod}>"

    def size(self):
        """Number of generator occurrences."""
        return len(layers_of(self)[1])

    def normal(self):
        return normalize_term(self)

    def key(self):
        """Exchange-reduced layer form: equal keys imply equal morphisms.

        This is a sound but not complete identity for the free tensor
        category (see canonical_layers).
        """
        dom, ls = layers_of(self)
        return (dom, canonical_layers(ls))


class TId(Term):
    __slots__ = ("n",)

    def __init__(self, n):
        self.n = n

    @property
    def dom(self):
        return self.n

    @property
    def cod(self):
        return self.n


class TGen(Term):
    __slots__ = ("edge",)

    def __init__(self, edge):
        self.edge = edge

    @property
    def dom(self):
        return self.edge.dom

    @property
    def cod(self):
        return self.edge.cod


class TSeq(Term):
    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(parts)
        if not parts:
            raise TermTypeError("empty sequential composite")
        for a, b in zip(parts, parts[1:]):
            if a.cod != b.dom:
                raise TermTypeError(
                    f"cannot compose: {a.cod} != {b.dom}", cod=a.cod, dom=b.dom
                )
        self.parts = parts

    @property
    def dom(self):
        return self.parts[0].dom

    @property
    def cod(self):
        return self.parts[-1].cod


class TTen(Term):
    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(parts)
        if not parts:
            raise TermTypeError("empty tensor composite")
        self.parts = parts

    @property
    def dom(self):
        return sum(p.dom for p in self.parts)

    @property
    def cod(self):
        return sum(p.cod for p in self.parts)


def seq(*parts):
    return TSeq(parts) if len(parts) != 1 else parts[0]


def ten(*parts):
    return TTen(parts) if len(parts) != 1 else parts[0]


def normalize_term(t):
    """Flatten both compositions, drop identity units, merge adjacent empties."""
    if isinstance(t, (TId, TGen)):
        return t
    if isinstance(t, TSeq):
        parts = []
        for p in t.parts:
            p = normalize_term(p)
            if isinstance(p, TSeq):
                parts.extend(p.parts)
            elif not isinstance(p, TId):
                parts.append(p)
        if not parts:
            return TId(t.dom)
        return parts[0] if len(parts) == 1 else TSeq(parts)
    parts = []
    for p in t.parts:
        p = normalize_term(p)
        inner = p.parts if isinstance(p, TTen) else (p,)
        for q in inner:
            if isinstance(q, TId):
                if q.n == 0:
                    continue
                if parts and isinstance(parts[-1], TId):
                    parts[-1] = TId(parts[-1].n + q.n)
                    continue
            parts.append(q)
    if not parts:
        return TId(0)
    return parts[0] if len(parts) == 1 else TTen(parts)


def _shape(t):
    if isinstance(t, TId):
        return ("id", t.n)
    if isinstance(t, TGen):
        return ("gen", t.edge.name, t.edge.i, t.edge.n)
    tag = "seq" if isinstance(t, TSeq) else "ten"
    return (tag,) + tuple(_shape(p) for p in t.parts)


# -- layered forms -----------------------------------------------------------------

# A layer is a triple (p, edge, q) denoting id[p] # edge # id[q].


def layers_of(t):
    """Return (dom, [(p, edge, q), ...]), reading generators left to right."""
    if isinstance(t, TId):
        return t.n, []
    if isinstance(t, TGen):
        return t.edge.dom, [(0, t.edge, 0)]
    if isinstance(t, TSeq):
        dom = t.parts[0].dom
        out = []
        for p in t.parts:
            out.extend(layers_of(p)[1])
        return dom, out
    dom = 0
    out = []
    left_cod = 0
    rest_dom = sum(p.dom for p in t.parts)
    for p in t.parts:
        rest_dom -= p.dom
        sub = layers_of(p)[1]
        out.extend((pp + left_cod, x, qq + rest_dom) for (pp, x, qq) in sub)
        dom += p.dom
        left_cod += p.cod
    return dom, out


def term_from_layers(dom, layer_seq):
    parts = []
    for (p, x, q) in layer_seq:
        atoms = []
        if p:
            atoms.append(TId(p))
        atoms.append(TGen(x))
        if q:
            atoms.append(TId(q))
        parts.append(atoms[0] if len(atoms) == 1 else TTen(atoms))
    if not parts:
        return TId(dom)
    return normalize_term(parts[0] if len(parts) == 1 else TSeq(parts))


def _try_swap(a, b):
    """Swap consecutive layers (a then b) when b's support misses a's; else None."""
    pa, xa, qa = a
    pb, xb, qb = b
    da_ = xa.cod - xa.dom
    db_ = xb.cod - xb.dom
    if pb + xb.dom <= pa:
        return (pb, xb, qb - da_), (pa + db_, xa, qa)
    if pb >= pa + xa.cod:
        return (pb - da_, xb, qb), (pa, xa, qa + db_)
    return None


def _layer_key(layer):
    p, x, q = layer
    return (p, x.sort_key())


def exchange_neighbors(layer_seq):
    """All single adjacent exchanges of disjoint layers (each a free equality)."""
    out = []
    for k in range(len(layer_seq) - 1):
        sw = _try_swap(layer_seq[k], layer_seq[k + 1])
        if sw is not None:
            out.append(layer_seq[:k] + sw + layer_seq[k + 2 :])
    return out


def canonical_layers(layer_seq):
    """An exchange-reduced representative: bubble adjacent disjoint layers
    into lexicographically decreasing order until no swap decreases.

    Every swap is a genuine free-category equality, so equal outputs imply
    equal morphisms.  The converse can fail: exchange-equivalent sequences
    may keep distinct reduced forms (zero-width layers make swap
    reachability order-sensitive), which is why searches also follow
    ``exchange_neighbors`` as zero-cost moves.
    """
    s = list(layer_seq)
    changed = True
    while changed:
        changed = False
        for k in range(len(s) - 1):
            sw = _try_swap(s[k], s[k + 1])
            if sw is not None and (
                (_layer_key(sw[0]), _layer_key(sw[1]))
                < (_layer_key(s[k]), _layer_key(s[k + 1]))
            ):
                s[k], s[k + 1] = sw
                changed = True
    return tuple(s)


# -- interpretations and evaluation ------------------------------------------------


class Interpretation:
    """A target tensor category: identity/compose/tensor plus an edge assignment.

    Morphisms must expose ``.m`` and ``.n``; equality on them is ``==``.
    """

    def __init__(self, name, identity, compose, tensor, assign):
        self.name = name
        self.identity = identity
        self.compose = compose
        self.tensor = tensor
        self._assign = assign

    def assign(self, edge):
        mor = self._assign(edge)
        if mor is None:
            raise UnassignedEdgeError(f"no image for edge {edge.text()} in {self.name}")
        if (mor.m, mor.n) != (edge.dom, edge.cod):
            raise ShapeMismatchError((mor.m, mor.n), (edge.dom, edge.cod))
        return mor


def evaluate(t, interp):
    if isinstance(t, TId):
        return interp.identity(t.n)
    if isinstance(t, TGen):
        return interp.assign(t.edge)
    if isinstance(t, TSeq):
        acc = None
        for p in t.parts:
            val = evaluate(p, interp)
            if acc is None:
                acc = val
            else:
                if acc.n != val.m:
                    raise ShapeMismatchError(acc.n, val.m)
                acc = interp.compose(acc, val)
        return acc
    acc = None
    for p in t.parts:
        val = evaluate(p, interp)
        acc = val if acc is None else interp.tensor(acc, val)
    return acc


def evaluate_word(w, interp):
    acc = interp.identity(w.dom)
    for e in w.edges:
        acc = interp.compose(acc, interp.assign(e))
    return acc


# -- parser / printer ---------------------------------------------------------------


def _tokenize(text):
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c.isspace():
            col += 1
            i += 1
            continue
        if c.isalpha():
            j = i
            while j < len(text) and text[j].isalpha():
                j += 1
            tokens.append(("name", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if c.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("nat", int(text[i:j]), line, col))
            col += j - i
            i = j
            continue
        if c in ";#()[],":
            tokens.append((c, c, line, col))
            col += 1
            i += 1
            continue
        raise TermSyntaxError(f"unexpected character {c!r}", line, col)
    tokens.append(("end", None, line, col))
    return tokens


class _Parser:
    def __init__(self, tokens, digraph):
        self.tokens = tokens
        self.pos = 0
        self.digraph = digraph

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind):
        tok = self.tokens[self.pos]
        if tok[0] != kind:
            raise TermSyntaxError(f"expected {kind!r}, found {tok[1]!r}", tok[2], tok[3])
        self.pos += 1
        return tok

    def parse_term(self):
        parts = [self.parse_ten()]
        while self.peek()[0] == ";":
            self.take(";")
            parts.append(self.parse_ten())
        if len(parts) == 1:
            return parts[0]
        try:
            return TSeq(parts)
        except TermTypeError:
            raise

    def parse_ten(self):
        parts = [self.parse_atom()]
        while self.peek()[0] == "#":
            self.take("#")
            parts.append(self.parse_atom())
        return parts[0] if len(parts) == 1 else TTen(parts)

    def parse_atom(self):
        tok = self.peek()
        if tok[0] == "(":
            self.take("(")
            t = self.parse_term()
            self.take(")")
            return t
        if tok[0] == "name":
            self.take("name")
            name = tok[1]
            nums = []
            if self.peek()[0] == "[":
                self.take("[")
                nums.append(self.take("nat")[1])
                if self.peek()[0] == ",":
                    self.take(",")
                    nums.append(self.take("nat")[1])
                self.take("]")
            if name == "id":
                if len(nums) != 1:
                    raise TermSyntaxError("id takes exactly one index", tok[2], tok[3])
                return TId(nums[0])
            try:
                if len(nums) == 0:
                    edge = self.digraph.edge(name)
                elif len(nums) == 1:
                    edge = self.digraph.edge(name, n=nums[0])
                else:
                    edge = self.digraph.edge(name, i=nums[0], n=nums[1])
            except UnknownSpecError as exc:
                raise TermSyntaxError(str(exc), tok[2], tok[3]) from None
            return TGen(edge)
        raise TermSyntaxError(f"unexpected token {tok[1]!r}", tok[2], tok[3])


def parse_term(text, digraph):
    """Parse the term grammar; raises TermSyntaxError / TermTypeError."""
    parser = _Parser(_tokenize(text), digraph)
    t = parser.parse_term()
    parser.take("end")
    return t


def parse_word(text, digraph):
    """Parse a pure path: a ';'-composite of generator edges (or a single id[n])."""
    t = parse_term(text, digraph)
    t = normalize_term(t)
    if isinstance(t, TId):
        return Word(t.n)
    if isinstance(t, TGen):
        return Word(t.edge.dom, (t.edge,))
    if isinstance(t, TSeq) and all(isinstance(p, TGen) for p in t.parts):
        return Word(t.parts[0].edge.dom, tuple(p.edge for p in t.parts))
    raise TermTypeError("not a word: contains tensor structure")


def print_term(t, _parent=None):
    if isinstance(t, TId):
        return f"id[{t.n}]"
    if isinstance(t, TGen):
        return t.edge.text()
    if isinstance(t, TSeq):
        body = " ; ".join(print_term(p, "seq") for p in t.parts)
        return f"({body})" if _parent in ("seq", "ten") else body
    body = " # ".join(print_term(p, "ten") for p in t.parts)
    return f"({body})" if _parent == "ten" else body


# -- rewriting ---------------------------------------------------------------------


class LayerRule:
    """One orientation of a tensor relation, precompiled to layer sequences."""

    __slots__ = ("rel_id", "direction", "dom", "cod", "u", "v", "u_objs", "u_maxw")

    def __init__(self, rel_id, direction, lhs_term, rhs_term):
        self.rel_id = rel_id
        self.direction = direction
        dom_u, u = layers_of(lhs_term)
        dom_v, v = layers_of(rhs_term)
        if dom_u != dom_v or lhs_term.cod != rhs_term.cod:
            raise TermTypeError("relation sides have different boundaries")
        self.dom = dom_u
        self.cod = lhs_term.cod
        self.u = canonical_layers(u)
        self.v = canonical_layers(v)
        objs = [dom_u]
        for (p, x, q) in self.u:
            objs.append(objs[-1] + x.cod - x.dom)
        self.u_objs = objs
        self.u_maxw = max(objs)


def compile_rules(rel_id, lhs_term, rhs_term):
    """Both orientations of a relation as LayerRules."""
    return [
        LayerRule(rel_id, "fw", lhs_term, rhs_term),
        LayerRule(rel_id, "bw", rhs_term, lhs_term),
    ]


def _objects_along(dom, layer_seq):
    objs = [dom]
    for (p, x, q) in layer_seq:
        objs.append(objs[-1] + x.cod - x.dom)
    return objs


def _match_from(layers, s, rule):
    """Match rule.u as a framed, commutation-scattered window anchored at s."""
    u = rule.u
    p0, x0, q0 = layers[s]
    a0, y0, b0 = u[0]
    if x0 != y0:
        return None
    P = p0 - a0
    Q = q0 - b0
    if P < 0 or Q < 0:
        return None
    matched = [s]
    skipped = []  # (index, side, offset, edge)
    left_d = 0
    right_d = 0
    jm = 1
    k = s + 1
    while jm < len(u):
        if k >= len(layers):
            return None
        p, x, q = layers[k]
        aj, yj, bj = u[jm]
        if x == yj and p == P + left_d + aj and q == Q + right_d + bj:
            matched.append(k)
            jm += 1
        elif p + x.dom <= P + left_d:
            skipped.append((k, "L", p, x))
            left_d += x.cod - x.dom
        elif p >= P + left_d + rule.u_maxw:
            skipped.append((k, "R", q, x))
            right_d += x.cod - x.dom
        else:
            return None
        k += 1
    return P, Q, matched, skipped


def _apply_match(layers, rule, P, Q, matched, skipped):
    s = matched[0]
    k_last = matched[-1]
    out = list(layers[:s])
    out.extend((P + a, y, b + Q) for (a, y, b) in rule.v)
    c = P + rule.cod + Q
    for (_idx, side, off, x) in skipped:
        if side == "L":
            p2, q2 = off, c - off - x.dom
        else:
            p2, q2 = c - off - x.dom, off
        assert p2 >= 0 and q2 >= 0
        out.append((p2, x, q2))
        c += x.cod - x.dom
    out.extend(layers[k_last + 1 :])
    return tuple(out)


def layer_matches(state_dom, layers, rule):
    """Yield (anchor, new_layers) for every framed occurrence of rule.u."""
    if not rule.u:
        objs = _objects_along(state_dom, layers)
        for s in range(len(layers) + 1):
            o = objs[s]
            if o < rule.dom:
                continue
            for P in range(o - rule.dom + 1):
                Q = o - rule.dom - P
                new = (
                    layers[:s]
                    + tuple((P + a, y, b + Q) for (a, y, b) in rule.v)
                    + layers[s:]
                )
                yield s, new
        return
    for s in range(len(layers)):
        got = _match_from(layers, s, rule)
        if got is None:
            continue
        P, Q, matched, skipped = got
        yield s, _apply_match(layers, rule, P, Q, matched, skipped)


def rewrite_neighbors(state, rules):
    """All one-step rewrites of a canonical state (dom, layers) under the rules.

    Yields (rule, anchor, new_state) with new_state canonicalized.
    """
    dom, layers = state
    for rule in rules:
        for anchor, new in layer_matches(dom, layers, rule):
            yield rule, anchor, (dom, canonical_layers(new))


def apply_relation_term(t, lhs_term, rhs_term, position=0, direction="fw", rel_id="?"):
    """Apply one relation step at the given anchor position of the canonical form."""
    rule = LayerRule(rel_id, direction, *((lhs_term, rhs_term) if direction == "fw" else (rhs_term, lhs_term)))
    dom, ls = layers_of(t)
    ls = canonical_layers(ls)
    for anchor, new in layer_matches(dom, ls, rule):
        if anchor == position:
            return term_from_layers(dom, canonical_layers(new))
    raise NoMatchError(f"relation does not match at position {position}")


def apply_relation_word(w, lhs_word, rhs_word, position=0, direction="fw"):
    """Replace one occurrence of a relation side in a plain word."""
    src, dst = (lhs_word, rhs_word) if direction == "fw" else (rhs_word, lhs_word)
    k = len(src.edges)
    if position < 0 or position + k > len(w.edges):
        raise NoMatchError(f"relation side does not occur at position {position}")
    if w.edges[position : position + k] != src.edges:
        raise NoMatchError(f"relation side does not occur at position {position}")
    at = w.dom if position == 0 else w.edges[position - 1].cod
    if src.dom != at:
        raise NoMatchError("relation side has the wrong grading here")
    return Word(w.dom, w.edges[:position] + dst.edges + w.edges[position + k :])


def word_occurrences(w, side):
    """All positions where a relation side occurs as a graded subword."""
    k = len(side.edges)
    out = []
    for pos in range(len(w.edges) - k + 1):
        if w.edges[pos : pos + k] == side.edges:
            out.append(pos)
    return out
