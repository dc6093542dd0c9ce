"""Sparse differential polynomials in the centralizer variables E[i,j,r][s].

Commutative polynomials with exact rational coefficients in variables
E[i,j,r][s], where s counts applications of the derivation d, which sends
E[i,j,r][s] to E[i,j,r][s+1].  Each polynomial carries a domain marker
recording which triangular sectors its variables may come from (Cartan:
diagonal block indices only; parabolic: lower-or-diagonal; full: anything);
arithmetic on mixed domains takes the join.  Terms are kept in a canonical
sorted form, so equal polynomials have identical representations.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Callable, NamedTuple, Optional

from .centralizer import BasisElt, LieElement, Rat


class Domain(Enum):
    CARTAN = 1
    PARABOLIC = 2
    FULL = 3

    def join(self, other: "Domain") -> "Domain":
        return self if self.value >= other.value else other


class DiffVar(NamedTuple):
    """Variable E[i,j,r][s].

    The field order (s, i, j, r) is exactly the canonical variable order, so
    tuple comparison gives the ordering used in monomials.
    """

    s: int
    i: int
    j: int
    r: int

    @classmethod
    def of(cls, base: BasisElt, s: int = 0) -> "DiffVar":
        return cls(s, base.i, base.j, base.r)

    @property
    def base(self) -> BasisElt:
        return BasisElt(self.i, self.j, self.r)

    def shifted(self, k: int = 1) -> "DiffVar":
        return DiffVar(self.s + k, self.i, self.j, self.r)

    def text(self) -> str:
        return "E[%d,%d,%d][%d]" % (self.i, self.j, self.r, self.s)


def var_domain(v: DiffVar) -> Domain:
    if v.i == v.j:
        return Domain.CARTAN
    if v.i > v.j:
        return Domain.PARABOLIC
    return Domain.FULL


class Grading(Enum):
    """Monomial gradings: deg E[i,j,r][s] is s+1 (shifted) or s (derivation)."""

    SHIFTED = "shifted"
    DERIVATION = "derivation"


# A monomial key is a tuple of (DiffVar, exponent) pairs sorted by variable.
Mono = tuple


def mono_degree(mono: Mono, grading: Grading) -> int:
    if grading is Grading.SHIFTED:
        return sum((v.s + 1) * e for v, e in mono)
    return sum(v.s * e for v, e in mono)


class Monomial(NamedTuple):
    """Read-only view of one term."""

    coeff: Rat
    vars: Mono


def _normalize_mono(mono) -> Mono:
    if isinstance(mono, dict):
        items = mono.items()
    else:
        items = mono
    acc: dict[DiffVar, int] = {}
    for v, e in items:
        if not isinstance(v, DiffVar):
            v = DiffVar(*v)
        if e < 0 or v.s < 0:
            raise ValueError("bad monomial factor %s^%d" % (v.text(), e))
        if e:
            acc[v] = acc.get(v, 0) + e
    return tuple(sorted(acc.items()))


def _merge_mono(m1: Mono, m2: Mono) -> Mono:
    """Product of two canonical monomials (linear merge of sorted factor lists)."""
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 and j < n2:
        v1, e1 = m1[i]
        v2, e2 = m2[j]
        if v1 == v2:
            out.append((v1, e1 + e2))
            i += 1
            j += 1
        elif v1 < v2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


class DiffPoly:
    """Differential polynomial in canonical sparse form.

    Equality compares terms only; the domain marker is a typing discipline,
    not part of the mathematical identity.
    """

    __slots__ = ("domain", "_terms")

    def __init__(self, terms=None, domain: Optional[Domain] = None):
        acc: dict[Mono, Rat] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for mono, c in items:
                mono = _normalize_mono(mono)
                c0 = acc.get(mono, 0) + c
                if c0:
                    acc[mono] = c0
                elif mono in acc:
                    del acc[mono]
        inferred = Domain.CARTAN
        for mono in acc:
            for v, _ in mono:
                inferred = inferred.join(var_domain(v))
        if domain is None:
            domain = inferred
        elif inferred.value > domain.value:
            raise ValueError("variables exceed declared domain %s" % domain.name)
        self.domain = domain
        self._terms = acc

    @classmethod
    def _raw(cls, domain: Domain, terms: dict) -> "DiffPoly":
        self = object.__new__(cls)
        self.domain = domain
        self._terms = terms
        return self

    @classmethod
    def zero(cls, domain: Domain = Domain.CARTAN) -> "DiffPoly":
        return cls._raw(domain, {})

    @classmethod
    def const(cls, c: Rat, domain: Domain = Domain.CARTAN) -> "DiffPoly":
        return cls._raw(domain, {(): c} if c else {})

    @classmethod
    def var(cls, v: DiffVar, domain: Optional[Domain] = None) -> "DiffPoly":
        d = var_domain(v)
        if domain is not None:
            if d.value > domain.value:
                raise ValueError("%s exceeds domain %s" % (v.text(), domain.name))
            d = domain
        return cls._raw(d, {((v, 1),): 1})

    @classmethod
    def from_lie(cls, elt: LieElement) -> "DiffPoly":
        """Embed a Lie algebra element at derivative order 0."""
        dom = Domain.CARTAN
        terms = {}
        for e, c in elt.terms.items():
            v = DiffVar.of(e)
            dom = dom.join(var_domain(v))
            terms[((v, 1),)] = c
        return cls._raw(dom, terms)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = DiffPoly.const(other)
        if not isinstance(other, DiffPoly):
            return NotImplemented
        dom = self.domain.join(other.domain)
        if not other._terms:
            return DiffPoly._raw(dom, dict(self._terms))
        if not self._terms:
            return DiffPoly._raw(dom, dict(other._terms))
        acc = dict(self._terms)
        for mono, c in other._terms.items():
            c0 = acc.get(mono, 0) + c
            if c0:
                acc[mono] = c0
            elif mono in acc:
                del acc[mono]
        return DiffPoly._raw(dom, acc)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = DiffPoly.const(other)
        if not isinstance(other, DiffPoly):
            return NotImplemented
        return self + other.scale(-1)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, q: Rat) -> "DiffPoly":
        if not q:
            return DiffPoly._raw(self.domain, {})
        return DiffPoly._raw(self.domain, {m: c * q for m, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, DiffPoly):
            return NotImplemented
        dom = self.domain.join(other.domain)
        if not self._terms or not other._terms:
            return DiffPoly._raw(dom, {})
        acc: dict[Mono, Rat] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = _merge_mono(m1, m2)
                c0 = acc.get(mono, 0) + c1 * c2
                if c0:
                    acc[mono] = c0
                elif mono in acc:
                    del acc[mono]
        return DiffPoly._raw(dom, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "DiffPoly":
        if k < 0:
            raise ValueError("negative power")
        out = DiffPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    # -- structure -------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, DiffPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self._terms
            return self._terms == {(): other}
        return NotImplemented

    def __len__(self) -> int:
        return len(self._terms)

    def monomials(self) -> list[Monomial]:
        return [Monomial(c, m) for m, c in sorted(self._terms.items())]

    def variables(self) -> set[DiffVar]:
        out: set[DiffVar] = set()
        for mono in self._terms:
            for v, _ in mono:
                out.add(v)
        return out

    def constant_term(self) -> Rat:
        return self._terms.get((), 0)

    # -- calculus --------------------------------------------------------

    def derive(self, k: int = 1) -> "DiffPoly":
        """Apply the derivation k times (Leibniz over each monomial)."""
        terms = self._terms
        for _ in range(k):
            acc: dict[Mono, Rat] = {}
            for mono, c in terms.items():
                for idx in range(len(mono)):
                    v, e = mono[idx]
                    rest = mono[:idx] + ((v, e - 1),) + mono[idx + 1:] if e > 1 \
                        else mono[:idx] + mono[idx + 1:]
                    nm = _merge_mono(rest, ((v.shifted(), 1),))
                    c0 = acc.get(nm, 0) + c * e
                    if c0:
                        acc[nm] = c0
                    elif nm in acc:
                        del acc[nm]
            terms = acc
        return DiffPoly._raw(self.domain, terms)

    def partial(self, v: DiffVar) -> "DiffPoly":
        """Partial derivative with respect to one variable."""
        acc: dict[Mono, Rat] = {}
        for mono, c in self._terms.items():
            for idx, (w, e) in enumerate(mono):
                if w == v:
                    nm = mono[:idx] + ((w, e - 1),) + mono[idx + 1:] if e > 1 \
                        else mono[:idx] + mono[idx + 1:]
                    acc[nm] = acc.get(nm, 0) + c * e
                    break
        return DiffPoly._raw(self.domain, acc)

    def partials(self) -> dict[DiffVar, "DiffPoly"]:
        """All nonzero partial derivatives in one pass."""
        out: dict[DiffVar, dict] = {}
        for mono, c in self._terms.items():
            for idx, (w, e) in enumerate(mono):
                nm = mono[:idx] + ((w, e - 1),) + mono[idx + 1:] if e > 1 \
                    else mono[:idx] + mono[idx + 1:]
                d = out.setdefault(w, {})
                d[nm] = d.get(nm, 0) + c * e
        return {v: DiffPoly._raw(self.domain, t) for v, t in out.items()}

    def min_degree(self, grading: Grading) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no minimal degree")
        return min(mono_degree(m, grading) for m in self._terms)

    def min_component(self, grading: Grading) -> "DiffPoly":
        """Homogeneous component of minimal degree in the given grading."""
        d = self.min_degree(grading)
        return DiffPoly._raw(
            self.domain,
            {m: c for m, c in self._terms.items() if mono_degree(m, grading) == d})

    def is_homogeneous(self, grading: Grading) -> bool:
        degs = {mono_degree(m, grading) for m in self._terms}
        return len(degs) <= 1

    def eval_at(self, point: dict[DiffVar, Rat]) -> Rat:
        total: Rat = 0
        for mono, c in self._terms.items():
            val = c
            for v, e in mono:
                if v not in point:
                    raise ValueError("no assignment for variable %s" % v.text())
                val = val * point[v] ** e
            total += val
        return total

    def substitute_consts(self, image: Callable[[DiffVar], Optional[Rat]],
                          domain: Domain) -> "DiffPoly":
        """Algebra map fixing variables where image(v) is None and replacing
        the rest by the returned constant (0 kills the monomial)."""
        acc: dict[Mono, Rat] = {}
        for mono, c in self._terms.items():
            coeff = c
            kept = []
            for v, e in mono:
                val = image(v)
                if val is None:
                    kept.append((v, e))
                elif val:
                    coeff = coeff * val ** e
                else:
                    coeff = 0
                    break
            if not coeff:
                continue
            key = tuple(kept)
            c0 = acc.get(key, 0) + coeff
            if c0:
                acc[key] = c0
            elif key in acc:
                del acc[key]
        return DiffPoly._raw(domain, acc)

    # -- display ---------------------------------------------------------

    def text(self) -> str:
        if not self._terms:
            return "0"
        bits = []
        for mono, c in sorted(self._terms.items()):
            factors = []
            if c != 1 or not mono:
                factors.append(str(c))
            for v, e in mono:
                factors.append(v.text() if e == 1 else "%s^%d" % (v.text(), e))
            bits.append("*".join(factors))
        return " + ".join(bits)

    def __repr__(self) -> str:
        return "DiffPoly(%s)" % self.text()
