"""Formal linear combinations of diagrams with exact delta-polynomial scalars.

Composition of basis diagrams picks up one factor of the formal symbol
``d`` (rendered for delta) per floating middle-row component, and extends
bilinearly.  Coefficients are polynomials in ``d`` over exact rationals, so
the modified relation sets can be verified as identities rather than at
sampled values.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ShapeMismatchError
from . import partition


class DeltaPoly:
    """A polynomial in the formal symbol d with Fraction coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def const(c):
        return DeltaPoly((Fraction(c),))

    @staticmethod
    def delta(power=1):
        return DeltaPoly((0,) * power + (1,))

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = DeltaPoly.const(other)
        if not isinstance(other, DeltaPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = DeltaPoly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return DeltaPoly(out)

    def __neg__(self):
        return DeltaPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = DeltaPoly.const(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = DeltaPoly.const(other)
        if not isinstance(other, DeltaPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return DeltaPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return DeltaPoly(out)

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by d**k."""
        if not self.coeffs:
            return self
        return DeltaPoly((Fraction(0),) * k + self.coeffs)

    def subs(self, value):
        """Evaluate at a rational value of d."""
        value = Fraction(value)
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * value + c
        return total

    def __repr__(self):
        return f"DeltaPoly({self.to_text()!r})"

    def to_text(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                var = "d" if k == 1 else f"d^{k}"
                parts.append(var if c == 1 else f"{c}*{var}")
        return "+".join(parts)

    def is_monomial(self):
        return sum(1 for c in self.coeffs if c != 0) <= 1


ONE = DeltaPoly.const(1)
DELTA = DeltaPoly.delta()


class LinComb:
    """A finite formal sum of (m,n)-diagrams with DeltaPoly coefficients."""

    __slots__ = ("m", "n", "terms", "_hash")

    def __init__(self, m, n, terms=()):
        self.m = m
        self.n = n
        clean = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for diag, coeff in items:
            if diag.m != m or diag.n != n:
                raise ShapeMismatchError((diag.m, diag.n), (m, n))
            if not isinstance(coeff, DeltaPoly):
                coeff = DeltaPoly.const(coeff)
            if diag in clean:
                coeff = clean[diag] + coeff
            if coeff:
                clean[diag] = coeff
            elif diag in clean:
                del clean[diag]
        self.terms = dict(sorted(clean.items(), key=lambda kv: kv[0].sort_key()))
        self._hash = hash((m, n, tuple(self.terms.items())))

    @staticmethod
    def of(diag, coeff=1):
        return LinComb(diag.m, diag.n, [(diag, coeff)])

    @staticmethod
    def zero(m, n):
        return LinComb(m, n)

    @staticmethod
    def identity(n):
        return LinComb.of(partition.identity(n))

    def __eq__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        return self.m == other.m and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return self._hash

    def __add__(self, other):
        if self.m != other.m or self.n != other.n:
            raise ShapeMismatchError((other.m, other.n), (self.m, self.n))
        return LinComb(self.m, self.n, list(self.terms.items()) + list(other.terms.items()))

    def scale(self, coeff):
        if not isinstance(coeff, DeltaPoly):
            coeff = DeltaPoly.const(coeff)
        return LinComb(self.m, self.n, [(d, c * coeff) for d, c in self.terms.items()])

    def __rmul__(self, coeff):
        return self.scale(coeff)

    def star_compose(self, other):
        """Bilinear extension of the delta-scaled basis product."""
        if self.n != other.m:
            raise ShapeMismatchError(self.n, other.m)
        acc = []
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                prod, floating = partition.compose(a, b)
                acc.append((prod, (ca * cb).shift(floating)))
        return LinComb(self.m, other.n, acc)

    def star_tensor(self, other):
        acc = []
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                acc.append((partition.tensor(a, b), ca * cb))
        return LinComb(self.m + other.m, self.n + other.n, acc)

    def star_involute(self):
        return LinComb(
            self.n, self.m, [(partition.involute(a), c) for a, c in self.terms.items()]
        )

    def substitute(self, value):
        """Specialize d to a rational value, keeping the formal sum exact."""
        return LinComb(
            self.m, self.n, [(a, DeltaPoly.const(c.subs(value))) for a, c in self.terms.items()]
        )

    def __repr__(self):
        return f"<LinComb {self.to_text()}>"

    def __str__(self):
        return self.to_text()

    def to_text(self):
        """Terms in canonical diagram order, e.g. ``(2+d)*P[1,1]{ {1} {-1} } + ...``."""
        if not self.terms:
            return f"0*P[{self.m},{self.n}]"
        parts = []
        for diag, coeff in self.terms.items():
            ctext = coeff.to_text()
            if not coeff.is_monomial() or "*" in ctext:
                ctext = f"({ctext})"
            parts.append(f"{ctext}*{diag.to_text()}")
        return " + ".join(parts)
