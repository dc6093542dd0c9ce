"""Poisson vertex algebra structure on differential polynomials.

The generators carry the affine lambda-bracket {x_lam y} = [x, y] + (x|y) lam
built from the centralizer commutator and the trace form; it extends to all
differential polynomials through the standard master formula.  On top of that
this module provides the parabolic projection (substituting constants for the
top superdiagonal generators and zero for the rest of the upper sector), the
W-algebra membership predicate, the induced bracket on members, and a seeded
random checker for the PVA axioms.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import comb
from typing import Optional

from .centralizer import (BasisElt, Partition, Rat, bracket, centralizer_basis,
                          trace_form, upper_basis)
from .diffpoly import DiffPoly, DiffVar, Domain

LCoeffs = dict  # lambda-power -> DiffPoly


def _acc_add(acc: LCoeffs, k: int, poly: DiffPoly) -> None:
    if not poly:
        return
    cur = acc.get(k)
    if cur is None:
        acc[k] = poly
    else:
        s = cur + poly
        if s:
            acc[k] = s
        else:
            del acc[k]


def _shift_once(coeffs: LCoeffs) -> LCoeffs:
    """(lam + d) applied to sum_k C_k lam^k, with d acting on coefficients."""
    acc: LCoeffs = {}
    for k, poly in coeffs.items():
        _acc_add(acc, k + 1, poly)
        _acc_add(acc, k, poly.derive())
    return acc


class LambdaPoly:
    """Polynomial in the formal symbol lam with DiffPoly coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        acc: LCoeffs = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else coeffs
            for k, poly in items:
                if k < 0:
                    raise ValueError("negative lambda power")
                _acc_add(acc, k, poly)
        self.coeffs = acc

    @classmethod
    def zero(cls) -> "LambdaPoly":
        return cls()

    @classmethod
    def of_poly(cls, poly: DiffPoly, power: int = 0) -> "LambdaPoly":
        return cls({power: poly})

    def coefficient(self, k: int) -> DiffPoly:
        return self.coeffs.get(k, DiffPoly.zero())

    def max_power(self) -> int:
        return max(self.coeffs) if self.coeffs else 0

    def items(self) -> list[tuple[int, DiffPoly]]:
        return sorted(self.coeffs.items())

    def __add__(self, other: "LambdaPoly") -> "LambdaPoly":
        acc = dict(self.coeffs)
        for k, poly in other.coeffs.items():
            _acc_add(acc, k, poly)
        out = LambdaPoly()
        out.coeffs = acc
        return out

    def __sub__(self, other: "LambdaPoly") -> "LambdaPoly":
        return self + other.scale(-1)

    def __neg__(self) -> "LambdaPoly":
        return self.scale(-1)

    def scale(self, q: Rat) -> "LambdaPoly":
        out = LambdaPoly()
        if q:
            out.coeffs = {k: poly.scale(q) for k, poly in self.coeffs.items()}
        return out

    def mul_poly(self, poly: DiffPoly) -> "LambdaPoly":
        out = LambdaPoly()
        if poly:
            acc: LCoeffs = {}
            for k, c in self.coeffs.items():
                _acc_add(acc, k, c * poly)
            out.coeffs = acc
        return out

    def shift(self, times: int = 1) -> "LambdaPoly":
        """Apply (lam + d) the given number of times."""
        cur = self.coeffs
        for _ in range(times):
            cur = _shift_once(cur)
        out = LambdaPoly()
        out.coeffs = dict(cur)
        return out

    def map_coeffs(self, fn) -> "LambdaPoly":
        acc: LCoeffs = {}
        for k, poly in self.coeffs.items():
            _acc_add(acc, k, fn(poly))
        out = LambdaPoly()
        out.coeffs = acc
        return out

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, LambdaPoly):
            return self.coeffs == other.coeffs
        if other == 0:
            return not self.coeffs
        return NotImplemented

    def text(self, symbol: str = "L") -> str:
        if not self.coeffs:
            return "0"
        bits = []
        for k, poly in self.items():
            body = poly.text()
            if k == 0:
                bits.append(body)
            else:
                head = symbol if k == 1 else "%s^%d" % (symbol, k)
                bits.append("(%s)*%s" % (body, head))
        return " + ".join(bits)

    def __repr__(self) -> str:
        return "LambdaPoly(%s)" % self.text()


def neg_lambda_substitute(lp: LambdaPoly) -> LambdaPoly:
    """sum_k (-lam-d)^k C_k for lp = sum_k C_k lam^k (skewsymmetry substitution)."""
    acc: LCoeffs = {}
    for pwr, poly in lp.coeffs.items():
        cur: LCoeffs = {0: poly}
        for _ in range(pwr):
            cur = _shift_once(cur)
        sign = -1 if pwr % 2 else 1
        for k, q in cur.items():
            _acc_add(acc, k, q.scale(sign))
    out = LambdaPoly()
    out.coeffs = acc
    return out


def generator_bracket(p: Partition, x: BasisElt, y: BasisElt) -> LambdaPoly:
    """{x_lam y} = [x, y] + (x|y) lam on generators."""
    acc: LCoeffs = {}
    br = bracket(p, x, y)
    if br:
        acc[0] = DiffPoly.from_lie(br)
    f = trace_form(p, x, y)
    if f:
        acc[1] = DiffPoly.const(f)
    out = LambdaPoly()
    out.coeffs = acc
    return out


def lambda_bracket_gen(p: Partition, x: BasisElt, poly: DiffPoly) -> LambdaPoly:
    """{x_lam poly} for a single generator x.

    Expansion by the right Leibniz rule and sesquilinearity:
    {x_lam P} = sum over variables v[s] of (dP/dv[s]) (lam+d)^s {x_lam v}.
    """
    acc: LCoeffs = {}
    for v, pv in poly.partials().items():
        cur: LCoeffs = {}
        br = bracket(p, x, v.base)
        if br:
            cur[0] = DiffPoly.from_lie(br)
        f = trace_form(p, x, v.base)
        if f:
            cur[1] = DiffPoly.const(f)
        if not cur:
            continue
        for _ in range(v.s):
            cur = _shift_once(cur)
        for k, q in cur.items():
            _acc_add(acc, k, pv * q)
    out = LambdaPoly()
    out.coeffs = acc
    return out


def lambda_bracket(p: Partition, a: DiffPoly, b: DiffPoly) -> LambdaPoly:
    """Bilinear lambda-bracket via the master formula.

    {a_lam b} = sum (db/dv[n]) (lam+d)^n {u _{lam+d} v}-> (-lam-d)^m (da/du[m]),
    where each shift operator acts on everything to its right.
    """
    pa = a.partials()
    pb = b.partials()
    acc: LCoeffs = {}
    for u, fa in pa.items():
        left: LCoeffs = {0: fa}
        for _ in range(u.s):
            left = _shift_once(left)
        if u.s % 2:
            left = {k: q.scale(-1) for k, q in left.items()}
        for v, gb in pb.items():
            br = bracket(p, u.base, v.base)
            f = trace_form(p, u.base, v.base)
            if not br and not f:
                continue
            mid: LCoeffs = {}
            if br:
                c0 = DiffPoly.from_lie(br)
                for k, q in left.items():
                    _acc_add(mid, k, c0 * q)
            if f:
                for k, q in _shift_once(left).items():
                    _acc_add(mid, k, q.scale(f))
            for _ in range(v.s):
                mid = _shift_once(mid)
            for k, q in mid.items():
                _acc_add(acc, k, gb * q)
    out = LambdaPoly()
    out.coeffs = acc
    return out


# -- parabolic projection --------------------------------------------------


@dataclass
class ProjectionConfig:
    """Constants substituted for the superdiagonal generators.

    coeffs maps (i, r) to the constant replacing E[i,i+1,r]; for each
    superdiagonal position the top coefficient (r = lam_{i+1} - 1) must be
    nonzero.  Unlisted pairs default to zero.  The standard choice puts 1 at
    the top shift and 0 elsewhere.
    """

    partition: Partition
    coeffs: dict[tuple[int, int], Rat] = field(default_factory=dict)

    def __post_init__(self):
        p = self.partition
        for (i, r), c in self.coeffs.items():
            if not 1 <= i < p.n:
                raise ValueError("superdiagonal index %d out of range" % i)
            if r not in p.r_window(i, i + 1):
                raise ValueError("shift %d invalid for position (%d,%d)" % (r, i, i + 1))
            if not isinstance(c, (int, Fraction)):
                raise ValueError("projection constants must be rational")
        for i in range(1, p.n):
            if not self.coeffs.get((i, p.part(i + 1) - 1), 0):
                raise ValueError("top projection constant at position %d must be nonzero" % i)

    @classmethod
    def default(cls, p: Partition) -> "ProjectionConfig":
        return cls(p, {(i, p.part(i + 1) - 1): 1 for i in range(1, p.n)})

    def coeff(self, i: int, r: int) -> Rat:
        return self.coeffs.get((i, r), 0)


def parabolic_project(p: Partition, poly: DiffPoly,
                      cfg: Optional[ProjectionConfig] = None) -> DiffPoly:
    """Differential-algebra projection onto the parabolic sector.

    Fixes lower and diagonal variables; sends E[i,i+1,r][0] to the configured
    constant and every other upper variable (or any derivative of an upper
    variable) to zero.
    """
    if cfg is None:
        cfg = ProjectionConfig.default(p)

    def image(v: DiffVar) -> Optional[Rat]:
        if v.i >= v.j:
            return None
        if v.s or v.j != v.i + 1:
            return 0
        return cfg.coeff(v.i, v.r)

    dom = Domain.PARABOLIC if poly.domain is Domain.FULL else poly.domain
    return poly.substitute_consts(image, dom)


def project_lambda(p: Partition, lp: LambdaPoly,
                   cfg: Optional[ProjectionConfig] = None) -> LambdaPoly:
    return lp.map_coeffs(lambda q: parabolic_project(p, q, cfg))


# -- membership and induced bracket -----------------------------------------


class MembershipMode(Enum):
    GENERATORS = "generators"
    FULL_BASIS = "full"


@dataclass
class MembershipResult:
    ok: bool
    witness_x: Optional[BasisElt] = None
    witness_bracket: Optional[LambdaPoly] = None


def membership_test_set(p: Partition, mode: MembershipMode) -> list[BasisElt]:
    if mode is MembershipMode.FULL_BASIS:
        return upper_basis(p)
    return [BasisElt(i, i + 1, t)
            for i in range(1, p.n)
            for t in p.r_window(i, i + 1)]


def w_membership(p: Partition, poly: DiffPoly,
                 mode: MembershipMode = MembershipMode.FULL_BASIS,
                 cfg: Optional[ProjectionConfig] = None) -> MembershipResult:
    """Test whether the projected bracket with the upper sector vanishes.

    Scans the test set in canonical order and reports the first violation as
    (x, projected bracket).
    """
    if poly.domain is Domain.FULL:
        raise ValueError("membership test expects a polynomial over the parabolic sector")
    for x in membership_test_set(p, mode):
        img = project_lambda(p, lambda_bracket_gen(p, x, poly), cfg)
        if img:
            return MembershipResult(False, x, img)
    return MembershipResult(True)


def w_bracket(p: Partition, a: DiffPoly, b: DiffPoly,
              cfg: Optional[ProjectionConfig] = None,
              check: Optional[bool] = None) -> LambdaPoly:
    """Induced bracket on members: the projected lambda-bracket."""
    if check is None:
        check = __debug__
    if check:
        for name, poly in (("first", a), ("second", b)):
            res = w_membership(p, poly, cfg=cfg)
            if not res.ok:
                raise ValueError("%s argument fails membership (witness %s)"
                                 % (name, res.witness_x.text()))
    return project_lambda(p, lambda_bracket(p, a, b), cfg)


# -- two-symbol Jacobi harness ----------------------------------------------

BiLambda = dict  # (lam-power, mu-power) -> DiffPoly


def _bi_add(acc: BiLambda, key: tuple[int, int], poly: DiffPoly) -> None:
    if not poly:
        return
    cur = acc.get(key)
    if cur is None:
        acc[key] = poly
    else:
        s = cur + poly
        if s:
            acc[key] = s
        else:
            del acc[key]


def jacobi_defect(p: Partition, a: DiffPoly, b: DiffPoly, c: DiffPoly) -> BiLambda:
    """{a_lam {b_mu c}} - {b_mu {a_lam c}} - {{a_lam b}_{lam+mu} c}.

    Returned as a two-symbol polynomial keyed by (lam-power, mu-power); the
    Jacobi identity holds exactly when the result is empty.
    """
    acc: BiLambda = {}
    for q, f in lambda_bracket(p, b, c).coeffs.items():
        for k, g in lambda_bracket(p, a, f).coeffs.items():
            _bi_add(acc, (k, q), g)
    for k, f in lambda_bracket(p, a, c).coeffs.items():
        for q, g in lambda_bracket(p, b, f).coeffs.items():
            _bi_add(acc, (k, q), g.scale(-1))
    for nn, cn in lambda_bracket(p, a, b).coeffs.items():
        for mm, d in lambda_bracket(p, cn, c).coeffs.items():
            # substitute the bracket symbol by lam + mu and tack on lam^nn
            for alpha in range(mm + 1):
                _bi_add(acc, (nn + alpha, mm - alpha), d.scale(-comb(mm, alpha)))
    return acc


# -- seeded axiom suite ------------------------------------------------------


def random_diffpoly(p: Partition, rng: random.Random, max_terms: int = 2,
                    max_vars: int = 3, max_degree: int = 3, max_s: int = 2) -> DiffPoly:
    """Small random polynomial in valid variables of the given partition."""
    pool = [DiffVar.of(e, s) for e in centralizer_basis(p) for s in range(max_s + 1)]
    chosen = rng.sample(pool, min(max_vars, len(pool)))
    out = DiffPoly.zero()
    for _ in range(rng.randint(1, max_terms)):
        deg = rng.randint(1, max_degree)
        mono: dict[DiffVar, int] = {}
        for _ in range(deg):
            v = rng.choice(chosen)
            mono[v] = mono.get(v, 0) + 1
        coeff = rng.choice([-3, -2, -1, 1, 2, 3])
        out = out + DiffPoly([(tuple(sorted(mono.items())), coeff)])
    return out


@dataclass
class AxiomSuiteReport:
    partition: Partition
    seed: int
    samples: int
    checked: dict[str, int] = field(default_factory=dict)
    failures: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())


def pva_axiom_suite(p: Partition, seed: int = 0, samples: int = 100) -> AxiomSuiteReport:
    """Seeded random verification of sesquilinearity, skewsymmetry, the
    Leibniz rules, and the Jacobi identity, all at exact arithmetic."""
    rng = random.Random("%d:%s" % (seed, p))
    report = AxiomSuiteReport(p, seed, samples)

    def record(name: str, ok: bool) -> None:
        report.checked[name] = report.checked.get(name, 0) + 1
        if not ok:
            report.failures[name] = report.failures.get(name, 0) + 1

    for _ in range(samples):
        a = random_diffpoly(p, rng)
        b = random_diffpoly(p, rng)
        ab = lambda_bracket(p, a, b)

        # {da_lam b} = -lam {a_lam b}
        lhs = lambda_bracket(p, a.derive(), b)
        rhs = LambdaPoly({k + 1: poly.scale(-1) for k, poly in ab.coeffs.items()})
        record("sesquilinearity-left", lhs == rhs)

        # {a_lam db} = (lam + d) {a_lam b}
        record("sesquilinearity-right", lambda_bracket(p, a, b.derive()) == ab.shift())

        # {a_lam b} = -{b_{-lam-d} a}
        record("skewsymmetry", ab == neg_lambda_substitute(lambda_bracket(p, b, a)).scale(-1))

        # {a_lam bc} = {a_lam b} c + {a_lam c} b
        c = random_diffpoly(p, rng)
        lhs = lambda_bracket(p, a, b * c)
        rhs = ab.mul_poly(c) + lambda_bracket(p, a, c).mul_poly(b)
        record("leibniz", lhs == rhs)

    jac_samples = samples
    for _ in range(jac_samples):
        a = random_diffpoly(p, rng, max_terms=1, max_vars=2, max_degree=2)
        b = random_diffpoly(p, rng, max_terms=1, max_vars=2, max_degree=2)
        c = random_diffpoly(p, rng, max_terms=1, max_vars=2, max_degree=2)
        record("jacobi", not jacobi_defect(p, a, b, c))

    return report
