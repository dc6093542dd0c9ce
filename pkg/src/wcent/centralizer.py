"""Centralizer Lie algebra of a nilpotent matrix with a given Jordan type.

A nilpotent element of gl_N whose Jordan blocks have sizes
lam_1 <= ... <= lam_n has a centralizer spanned by elements E[i,j,r]
(block row i, block column j, shift r) subject to the validity window

    lam_j - min(lam_i, lam_j) <= r < lam_j.

This module enumerates the basis in a fixed canonical order, implements the
commutator together with its truncation rule (E[i,j,r] = 0 once r >= lam_j),
the two invariant symmetric bilinear forms used downstream (the trace form
and the critical-level form), and the triangular decomposition by the sign
of j - i.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import NamedTuple, Union

Rat = Union[int, Fraction]


class BasisElt(NamedTuple):
    """Basis element E[i,j,r] (1-based block indices)."""

    i: int
    j: int
    r: int

    def text(self) -> str:
        return "E[%d,%d,%d]" % (self.i, self.j, self.r)


_BASIS_RE = re.compile(r"E\[(\d+),(\d+),(\d+)\]")


def parse_basis_elt(text: str) -> BasisElt:
    m = _BASIS_RE.fullmatch(text.strip())
    if m is None:
        raise ValueError("cannot parse basis element %r (expected E[i,j,r])" % (text,))
    return BasisElt(int(m.group(1)), int(m.group(2)), int(m.group(3)))


@dataclass(frozen=True)
class Partition:
    """Jordan type: a nondecreasing tuple of positive block sizes."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.parts, tuple):
            object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise ValueError("partition must have at least one part")
        if any(not isinstance(x, int) or x < 1 for x in self.parts):
            raise ValueError("partition parts must be positive integers: %r" % (self.parts,))
        if any(a > b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError("partition parts must be nondecreasing: %r" % (self.parts,))

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        toks = [t.strip() for t in text.split(",")]
        if not all(tok.isdigit() and tok for tok in toks):
            raise ValueError("cannot parse partition %r (expected e.g. '1,2,2')" % (text,))
        return cls(tuple(int(t) for t in toks))

    @property
    def n(self) -> int:
        """Number of blocks."""
        return len(self.parts)

    @property
    def N(self) -> int:
        """Size of the ambient matrix."""
        return sum(self.parts)

    def part(self, i: int) -> int:
        """Block size lam_i, 1-based."""
        return self.parts[i - 1]

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.parts)

    def r_window(self, i: int, j: int) -> range:
        """Valid shifts r for E[i,j,r]."""
        lj = self.part(j)
        return range(lj - min(self.part(i), lj), lj)

    def is_valid(self, e: BasisElt) -> bool:
        return (1 <= e.i <= self.n and 1 <= e.j <= self.n
                and e.r in self.r_window(e.i, e.j))

    def check_valid(self, e: BasisElt) -> None:
        if not self.is_valid(e):
            raise ValueError("%s is not a basis element for partition %s" % (e.text(), self))


class TriangularPart(Enum):
    LOWER = "lower"
    CARTAN = "cartan"
    UPPER = "upper"


def triangular_part(e: BasisElt) -> TriangularPart:
    """Triangular sector of a basis element, by the sign of j - i."""
    if e.i > e.j:
        return TriangularPart.LOWER
    if e.i == e.j:
        return TriangularPart.CARTAN
    return TriangularPart.UPPER


def centralizer_basis(p: Partition) -> list[BasisElt]:
    """All valid E[i,j,r], ordered by (i, j, r)."""
    return [BasisElt(i, j, r)
            for i in range(1, p.n + 1)
            for j in range(1, p.n + 1)
            for r in p.r_window(i, j)]


def centralizer_dim(p: Partition) -> int:
    return sum(min(a, b) for a in p.parts for b in p.parts)


def upper_basis(p: Partition) -> list[BasisElt]:
    return [e for e in centralizer_basis(p) if e.i < e.j]


def lower_basis(p: Partition) -> list[BasisElt]:
    return [e for e in centralizer_basis(p) if e.i > e.j]


def cartan_basis(p: Partition) -> list[BasisElt]:
    return [e for e in centralizer_basis(p) if e.i == e.j]


def parabolic_basis(p: Partition) -> list[BasisElt]:
    """Lower plus Cartan sectors."""
    return [e for e in centralizer_basis(p) if e.i >= e.j]


class LieElement:
    """Finite rational linear combination of basis elements, in canonical form."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        acc: dict[BasisElt, Rat] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for e, c in items:
                c0 = acc.get(e, 0) + c
                if c0:
                    acc[e] = c0
                elif e in acc:
                    del acc[e]
        self.terms = acc

    @classmethod
    def zero(cls) -> "LieElement":
        return cls()

    @classmethod
    def of(cls, e: BasisElt, c: Rat = 1) -> "LieElement":
        return cls({e: c} if c else {})

    def items(self) -> list[tuple[BasisElt, Rat]]:
        return sorted(self.terms.items())

    def scale(self, q: Rat) -> "LieElement":
        if not q:
            return LieElement()
        out = LieElement()
        out.terms = {e: c * q for e, c in self.terms.items()}
        return out

    def __add__(self, other: "LieElement") -> "LieElement":
        return LieElement(list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + other.scale(-1)

    def __neg__(self) -> "LieElement":
        return self.scale(-1)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, LieElement):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join("%s*%s" % (c, e.text()) for e, c in self.items())


def bracket(p: Partition, a: BasisElt, b: BasisElt) -> LieElement:
    """Commutator [E[i,j,r], E[k,l,s]] with truncation at the column size."""
    t = a.r + b.r
    acc: dict[BasisElt, Rat] = {}
    if b.i == a.j and t < p.part(b.j):
        e = BasisElt(a.i, b.j, t)
        acc[e] = acc.get(e, 0) + 1
    if a.i == b.j and t < p.part(a.j):
        e = BasisElt(b.i, a.j, t)
        acc[e] = acc.get(e, 0) - 1
    out = LieElement()
    out.terms = {e: c for e, c in acc.items() if c}
    return out


def lie_bracket(p: Partition, x: LieElement, y: LieElement) -> LieElement:
    """Bilinear extension of the commutator."""
    acc: list[tuple[BasisElt, Rat]] = []
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            for e, c in bracket(p, a, b).terms.items():
                acc.append((e, ca * cb * c))
    return LieElement(acc)


def trace_form(p: Partition, a: BasisElt, b: BasisElt) -> Rat:
    """Trace form: (E[i,j,0] | E[j,i,0]) = lam_i, zero elsewhere.

    The off-diagonal case only pairs blocks of equal size; that is guarded
    explicitly rather than inferred from element validity.
    """
    if a.r or b.r:
        return 0
    if a.j != b.i or a.i != b.j:
        return 0
    if a.i != a.j and p.part(a.i) != p.part(a.j):
        return 0
    return p.part(a.i)


def _row_weight(p: Partition, i: int) -> int:
    # lam_1 + ... + lam_{i-1} + (n - i + 1) * lam_i
    return sum(p.parts[:i - 1]) + (p.n - i + 1) * p.part(i)


def critical_form(p: Partition, a: BasisElt, b: BasisElt) -> Rat:
    """Critical-level invariant form; nonzero only on shift-0 pairs.

    <E[i,i,0], E[j,j,0]> = min(lam_i, lam_j) - delta_ij * w_i and
    <E[i,j,0], E[j,i,0]> = -w_i for i != j with lam_i = lam_j, where
    w_i = lam_1 + ... + lam_{i-1} + (n - i + 1) lam_i.
    """
    if a.r or b.r:
        return 0
    if a.i == a.j and b.i == b.j:
        val = min(p.part(a.i), p.part(b.i))
        if a.i == b.i:
            val -= _row_weight(p, a.i)
        return val
    if a.j == b.i and a.i == b.j and p.part(a.i) == p.part(a.j):
        return -_row_weight(p, a.i)
    return 0


def form_on_elements(p: Partition, form, x: LieElement, y: LieElement) -> Rat:
    """Bilinear extension of a form given on basis pairs."""
    total: Rat = 0
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            f = form(p, a, b)
            if f:
                total += ca * cb * f
    return total


def all_partitions(max_sum: int, max_parts: int | None = None) -> list[Partition]:
    """All Jordan types with 1 <= N <= max_sum, ordered by (N, parts)."""
    out: list[Partition] = []

    def extend(prefix: list[int], remaining: int, minpart: int) -> None:
        if remaining == 0:
            out.append(Partition(tuple(prefix)))
            return
        if max_parts is not None and len(prefix) >= max_parts:
            return
        for x in range(minpart, remaining + 1):
            prefix.append(x)
            extend(prefix, remaining - x, x)
            prefix.pop()

    for total in range(1, max_sum + 1):
        extend([], total, 1)
    return out
