"""Column determinants of operator matrices and the W-algebra generators.

Operators here are normal-ordered polynomials in a central variable x and a
derivation symbol D, with coefficients that are polynomials in a spectral
variable u over some coefficient ring.  The engine is ring-agnostic: the
classical side instantiates it with differential polynomials (where D acts as
the derivation d), the vertex-algebra side reuses the same classes with the
PBW-ordered loop algebra (where D acts as the translation operator).

The column determinant multiplies entries in column order, left factor from
column one:  cdet M = sum over permutations of sgn * M[s(1)][1] ... M[s(n)][n].
It is evaluated by a left-to-right sweep over columns that shares common
prefixes between permutations, pruning zero entries, so a banded matrix costs
far fewer products than n!.

Also here: the generator matrix whose column determinant (applied to 1, i.e.
dropping positive powers of D) yields the W-algebra generators, the Miura
map onto the diagonal sector, and the Jacobian certificate of algebraic
independence of the leading terms of the Miura images.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Optional

from .centralizer import BasisElt, Partition, Rat
from .diffpoly import DiffPoly, DiffVar, Domain, Grading


class UPoly:
    """Polynomial in the spectral variable with ring-element coefficients.

    Coefficients may be any objects supporting +, *, scale(q), derive(k) and
    truth testing; multiplication preserves the left/right order of the
    coefficients, so noncommutative coefficient rings are fine.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        acc = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else coeffs
            for k, c in items:
                if k < 0:
                    raise ValueError("negative spectral power")
                if not c:
                    continue
                if k in acc:
                    s = acc[k] + c
                    if s:
                        acc[k] = s
                    else:
                        del acc[k]
                else:
                    acc[k] = c
        self.coeffs = acc

    @classmethod
    def zero(cls) -> "UPoly":
        return cls()

    @classmethod
    def single(cls, power: int, coeff) -> "UPoly":
        return cls({power: coeff} if coeff else {})

    def coeff(self, power: int):
        """Coefficient at a power, or None when absent."""
        return self.coeffs.get(power)

    def items(self) -> list:
        return sorted(self.coeffs.items())

    def __add__(self, other: "UPoly") -> "UPoly":
        acc = dict(self.coeffs)
        for k, c in other.coeffs.items():
            if k in acc:
                s = acc[k] + c
                if s:
                    acc[k] = s
                else:
                    del acc[k]
            else:
                acc[k] = c
        out = UPoly()
        out.coeffs = acc
        return out

    def __mul__(self, other: "UPoly") -> "UPoly":
        acc = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 + k2
                prod = c1 * c2
                if not prod:
                    continue
                if k in acc:
                    s = acc[k] + prod
                    if s:
                        acc[k] = s
                    else:
                        del acc[k]
                else:
                    acc[k] = prod
        out = UPoly()
        out.coeffs = acc
        return out

    def scale(self, q: Rat) -> "UPoly":
        out = UPoly()
        if q:
            out.coeffs = {k: c.scale(q) for k, c in self.coeffs.items()}
        return out

    def derive(self, k: int = 1) -> "UPoly":
        """Coefficient-wise derivation; the spectral variable is constant."""
        out = UPoly()
        acc = {}
        for pw, c in self.coeffs.items():
            d = c.derive(k)
            if d:
                acc[pw] = d
        out.coeffs = acc
        return out

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __repr__(self) -> str:
        return "UPoly(%r)" % (self.coeffs,)


class DiffOp:
    """Normal-ordered operator sum_{a,b} F_{a,b} x^a D^b with UPoly coefficients.

    x is central; D obeys D f = f D + (df), i.e. moving D right past a
    coefficient costs its derivative.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        acc = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for key, up in items:
                a, b = key
                if a < 0 or b < 0:
                    raise ValueError("negative operator exponent")
                if not up:
                    continue
                if key in acc:
                    s = acc[key] + up
                    if s:
                        acc[key] = s
                    else:
                        del acc[key]
                else:
                    acc[key] = up
        self.terms = acc

    @classmethod
    def zero(cls) -> "DiffOp":
        return cls()

    def __add__(self, other: "DiffOp") -> "DiffOp":
        acc = dict(self.terms)
        for key, up in other.terms.items():
            if key in acc:
                s = acc[key] + up
                if s:
                    acc[key] = s
                else:
                    del acc[key]
            else:
                acc[key] = up
        out = DiffOp()
        out.terms = acc
        return out

    def __mul__(self, other: "DiffOp") -> "DiffOp":
        acc = {}
        for (a1, b1), f1 in self.terms.items():
            for (a2, b2), f2 in other.terms.items():
                # F1 x^a1 D^b1 F2 x^a2 D^b2
                #   = sum_m C(b1, m) F1 (d^m F2) x^(a1+a2) D^(b1-m+b2)
                for m in range(b1 + 1):
                    f2m = f2.derive(m) if m else f2
                    if not f2m:
                        continue
                    prod = f1 * f2m
                    cm = comb(b1, m)
                    if cm != 1:
                        prod = prod.scale(cm)
                    if not prod:
                        continue
                    key = (a1 + a2, b1 - m + b2)
                    if key in acc:
                        s = acc[key] + prod
                        if s:
                            acc[key] = s
                        else:
                            del acc[key]
                    else:
                        acc[key] = prod
        out = DiffOp()
        out.terms = acc
        return out

    def scale(self, q: Rat) -> "DiffOp":
        out = DiffOp()
        if q:
            out.terms = {key: up.scale(q) for key, up in self.terms.items()}
        return out

    def constant_part(self) -> dict[int, UPoly]:
        """Coefficients of pure x-powers (the operator applied to 1)."""
        return {a: up for (a, b), up in self.terms.items() if b == 0}

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, DiffOp):
            return self.terms == other.terms
        return NotImplemented

    def __repr__(self) -> str:
        return "DiffOp(%r)" % (self.terms,)


def column_determinant(rows: list[list[DiffOp]]) -> DiffOp:
    """Column-ordered determinant of a square operator matrix.

    Sweeps columns left to right keeping, for each set of used rows, the
    signed sum of all partial products; zero entries are pruned, so for the
    generator matrix (zero above the superdiagonal) the work stays small.
    """
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("matrix must be square")
    states: dict[frozenset, DiffOp] = {frozenset(): None}  # type: ignore[dict-item]
    for col in range(n):
        new: dict[frozenset, DiffOp] = {}
        for used, acc in states.items():
            for row in range(n):
                if row in used:
                    continue
                entry = rows[row][col]
                if not entry:
                    continue
                term = entry if acc is None else acc * entry
                inv = sum(1 for u in used if u > row)
                if inv % 2:
                    term = term.scale(-1)
                key = used | {row}
                if key in new:
                    new[key] = new[key] + term
                else:
                    new[key] = term
        states = new
        if not states:
            return DiffOp.zero()
    (result,) = states.values()
    return result


# -- the generator matrix and tables -----------------------------------------


def _lift_var(e: BasisElt) -> DiffPoly:
    return DiffPoly.var(DiffVar.of(e))


def basis_u_series(p: Partition, i: int, j: int,
                   lift: Callable[[BasisElt], object] = _lift_var) -> UPoly:
    """E_ij(u): the valid-window generating series sum_r lift(E[i,j,r]) u^r."""
    return UPoly({r: lift(BasisElt(i, j, r)) for r in p.r_window(i, j)})


def w_generator_matrix(p: Partition) -> list[list[DiffOp]]:
    """Matrix whose column determinant produces the W-algebra generators.

    Diagonal x + lam_i D + E_ii(u); superdiagonal u^(lam_{i+1}-1); lower
    entries E_ij(u); zero above the superdiagonal.
    """
    n = p.n
    one = DiffPoly.const(1)
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            if j == i:
                row.append(DiffOp({
                    (1, 0): UPoly({0: one}),
                    (0, 1): UPoly({0: DiffPoly.const(p.part(i))}),
                    (0, 0): basis_u_series(p, i, i),
                }))
            elif j == i + 1:
                row.append(DiffOp({(0, 0): UPoly({p.part(j) - 1: one})}))
            elif j < i:
                row.append(DiffOp({(0, 0): basis_u_series(p, i, j)}))
            else:
                row.append(DiffOp.zero())
        rows.append(row)
    return rows


def tail_sum(p: Partition, k: int) -> int:
    """Sum of the k largest block sizes."""
    if k <= 0:
        return 0
    return sum(p.parts[p.n - k:])


def generator_window(p: Partition) -> list[tuple[int, int]]:
    """Admissible index pairs (k, r): tail_sum(k-1) < r + k <= tail_sum(k)."""
    out = []
    for k in range(1, p.n + 1):
        for r in range(tail_sum(p, k - 1) - k + 1, tail_sum(p, k) - k + 1):
            out.append((k, r))
    return out


def in_window(p: Partition, k: int, r: int) -> bool:
    return tail_sum(p, k - 1) < r + k <= tail_sum(p, k)


@dataclass
class GeneratorTable:
    """W-algebra generators indexed by (k, r) over the admissible window.

    Coefficients outside the window are computed too but kept apart; they are
    not members of the W-algebra in general.
    """

    partition: Partition
    entries: dict[tuple[int, int], DiffPoly]
    out_of_window: dict[tuple[int, int], DiffPoly]

    def __len__(self) -> int:
        return len(self.entries)

    def poly(self, k: int, r: int) -> DiffPoly:
        return self.entries[(k, r)]

    def ordered(self) -> list[tuple[tuple[int, int], DiffPoly]]:
        return sorted(self.entries.items())


def extract_window_tables(p: Partition, op: DiffOp, one_coeff):
    """Split constant_part(op) into x-degree layers and window-filter them.

    Returns (entries, out_of_window); requires the x^n coefficient to be
    exactly 1.
    """
    cp = op.constant_part()
    n = p.n
    top = cp.get(n)
    if top is None or top != UPoly({0: one_coeff}):
        raise ArithmeticError("leading x-coefficient is not 1")
    entries: dict[tuple[int, int], object] = {}
    rejects: dict[tuple[int, int], object] = {}
    for k in range(1, n + 1):
        up = cp.get(n - k)
        if up is None:
            continue
        for r, val in up.items():
            (entries if in_window(p, k, r) else rejects)[(k, r)] = val
    return entries, rejects


def w_generators(p: Partition) -> GeneratorTable:
    """Generators of the W-algebra from the column determinant.

    The x^(n-k) coefficient of cdet applied to 1 is a u-polynomial; its
    admissible u-coefficients form the table (exactly N of them).
    """
    op = column_determinant(w_generator_matrix(p))
    entries, rejects = extract_window_tables(p, op, DiffPoly.const(1))
    return GeneratorTable(p, entries, rejects)


# -- Miura map ----------------------------------------------------------------


def miura_image(poly: DiffPoly) -> DiffPoly:
    """Projection onto the diagonal sector: lower variables go to zero."""
    if poly.domain is Domain.FULL:
        raise ValueError("Miura map is defined on the parabolic sector")

    def image(v: DiffVar) -> Optional[Rat]:
        return 0 if v.i > v.j else None

    return poly.substitute_consts(image, Domain.CARTAN)


def miura_generators(p: Partition) -> GeneratorTable:
    """Images of the generators under the Miura map, computed directly from
    the product of the diagonal operator factors."""
    one = DiffPoly.const(1)
    prod: Optional[DiffOp] = None
    for i in range(1, p.n + 1):
        factor = DiffOp({
            (1, 0): UPoly({0: one}),
            (0, 1): UPoly({0: DiffPoly.const(p.part(i))}),
            (0, 0): basis_u_series(p, i, i),
        })
        prod = factor if prod is None else prod * factor
    entries, rejects = extract_window_tables(p, prod, one)
    return GeneratorTable(p, entries, rejects)


# -- Jacobian certificate ------------------------------------------------------


def jacobian_variable_order(p: Partition) -> list[DiffVar]:
    """Diagonal variables E[i,i,lam_i - d][0], d = 1..lam_n, i = n..1,
    skipping negative shifts; exactly N variables."""
    out = []
    for d in range(1, p.part(p.n) + 1):
        for i in range(p.n, 0, -1):
            r = p.part(i) - d
            if r >= 0:
                out.append(DiffVar.of(BasisElt(i, i, r)))
    return out


def jacobian_poly_order(p: Partition) -> list[tuple[int, int]]:
    """Index pairs (k, tail_sum(k) - k - d + 1), d = 1..lam_n, k = 1..n,
    keeping admissible pairs only; exactly N of them."""
    out = []
    for d in range(1, p.part(p.n) + 1):
        for k in range(1, p.n + 1):
            r = tail_sum(p, k) - k - d + 1
            if in_window(p, k, r):
                out.append((k, r))
    return out


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113)


def jacobian_point(p: Partition, seed: int = 0) -> dict[DiffVar, Rat]:
    """Deterministic evaluation point: distinct small primes at seed 0,
    otherwise seeded random small rationals."""
    variables = jacobian_variable_order(p)
    if seed == 0:
        if len(variables) > len(_SMALL_PRIMES):
            raise ValueError("partition too large for the prime point")
        return {v: q for v, q in zip(variables, _SMALL_PRIMES)}
    import random
    rng = random.Random("%d:%s" % (seed, p))
    return {v: Fraction(rng.randint(1, 40), rng.randint(1, 8)) for v in variables}


def fraction_det(rows: list[list[Rat]]) -> Rat:
    """Exact determinant by fraction Gaussian elimination."""
    n = len(rows)
    m = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                factor = m[r][col] * inv
                for cc in range(col, n):
                    m[r][cc] -= factor * m[col][cc]
    return det


def poly_det(rows: list[list[DiffPoly]]) -> DiffPoly:
    """Symbolic determinant by cofactor expansion (small matrices only)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = DiffPoly.zero()
    for j in range(n):
        entry = rows[0][j]
        if not entry:
            continue
        minor = [[row[c] for c in range(n) if c != j] for row in rows[1:]]
        term = entry * poly_det(minor)
        total = total + (term if j % 2 == 0 else term.scale(-1))
    return total


@dataclass
class JacobianCertificate:
    partition: Partition
    nonzero: bool
    det: Rat
    seed: int
    attempts: int
    point: dict[DiffVar, Rat]
    poly_order: list[tuple[int, int]]
    var_order: list[DiffVar]
    leading_polys: dict[tuple[int, int], DiffPoly]
    symbolic_det: Optional[DiffPoly] = None

    @property
    def symbolic_nonzero(self) -> Optional[bool]:
        return None if self.symbolic_det is None else bool(self.symbolic_det)


def jacobian_independence(p: Partition, seed: int = 0,
                          max_attempts: int = 5,
                          symbolic_limit: int = 4) -> JacobianCertificate:
    """Certificate that the minimal components of the Miura images are
    algebraically independent.

    Evaluates the Jacobian of the minimal-degree components (derivation
    grading) at a deterministic seeded point; a zero determinant is treated
    as a degenerate point and retried with the next seed, not as a failure of
    independence.  For N up to symbolic_limit the symbolic determinant is
    computed as a cross-check.
    """
    mt = miura_generators(p)
    leading = {key: poly.min_component(Grading.DERIVATION)
               for key, poly in mt.entries.items()}
    poly_order = jacobian_poly_order(p)
    var_order = jacobian_variable_order(p)
    if len(poly_order) != p.N or len(var_order) != p.N:
        raise AssertionError("Jacobian index bookkeeping is off")
    jac = [[leading[key].partial(v) for v in var_order] for key in poly_order]

    symbolic = poly_det(jac) if p.N <= symbolic_limit else None

    attempts = 0
    use_seed = seed
    det: Rat = 0
    point: dict[DiffVar, Rat] = {}
    while attempts < max_attempts:
        attempts += 1
        point = jacobian_point(p, use_seed)
        det = fraction_det([[entry.eval_at(point) for entry in row] for row in jac])
        if det:
            break
        use_seed += 1
    return JacobianCertificate(p, bool(det), det, seed, attempts, point,
                               poly_order, var_order, leading, symbolic)
