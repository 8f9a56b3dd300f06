"""The stabilized algebra: the generator action on families [_pB], p >> 0.

Coefficients live in Q(v)[u] with u standing for v^-p.  The key fact that
makes this work is that in the multiplication formulas the p-dependence of
every exponent cancels, and only a diagonal entry inside a binomial factor
ever sees p; there it turns into a factor u^2.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .coeffring import (
    ONE,
    RONE,
    RZERO,
    ZERO,
    LaurentPoly,
    RationalFunc,
    UPoly,
    quantum_factorial,
    stable_binomial_factor,
    u_limit,
    u_specialize,
    v,
    vinv_integer,
)
from .periodic import PeriodicMatrix, dot, idem_matrix, residue, row_sums, shift_p, unit_root
from .schur import AlgebraElem, Gen, e_terms, f_terms
from .udot import UdotElem, Weight


class StableElem:
    """Family sum_B G_B(v, v^-p) [_pB], valid for every p >= p0."""

    __slots__ = ("n", "terms", "p0")

    def __init__(self, n: int, terms: Mapping[PeriodicMatrix, UPoly] | None = None, p0: int = 0):
        self.n = n
        self.terms: Dict[PeriodicMatrix, UPoly] = {B: g for B, g in (terms or {}).items() if g}
        self.p0 = p0

    @classmethod
    def idempotent(cls, a0: Sequence[int]) -> "StableElem":
        a0 = tuple(a0)
        return cls(len(a0), {idem_matrix(a0): UPoly.const(RONE)}, max(0, -min(a0)))

    def base_level(self) -> Optional[int]:
        """k such that the family lives at D = k + p n."""
        for B in self.terms:
            return sum(row_sums(B))
        return None

    def coeff(self, B: PeriodicMatrix) -> UPoly:
        return self.terms.get(B, UPoly())

    def __bool__(self) -> bool:
        return bool(self.terms)

    def specialize(self, p: int) -> AlgebraElem:
        """The member of the family at level D = k + p n."""
        if p < self.p0:
            raise ValueError(f"p={p} below the validity threshold p0={self.p0}")
        k = self.base_level() or 0
        out = {}
        for B, g in self.terms.items():
            out[shift_p(B, p)] = u_specialize(g, p).to_laurent()
        return AlgebraElem(self.n, k + p * self.n, out)

    def scale(self, c) -> "StableElem":
        return StableElem(self.n, {B: g * c for B, g in self.terms.items()}, self.p0)


def _min_diag(B: PeriodicMatrix) -> int:
    return min(B.diag)


def _stable_apply(kind: str, i: int, x: StableElem) -> StableElem:
    n = x.n
    out: Dict[PeriodicMatrix, UPoly] = {}
    p0 = x.p0
    for B, g in x.terms.items():
        # The diagonal entry that must be >= 1 for the generator to act fully.
        need_row = i + 1 if kind == "E" else i
        p0 = max(p0, 1 - B.entry(need_row, need_row))
        # Evaluate with the formal diagonal large; exponents do not depend on it.
        big = 10 ** 6
        Bp = shift_p(B, big)
        terms = e_terms(i, Bp) if kind == "E" else f_terms(i, Bp)
        for Cp, exp, c in terms:
            if abs(exp) > big // 2:
                raise ArithmeticError("p survived in an exponent; the formula transcription is wrong")
            C = shift_p(Cp, -big)
            s_diag = c > big // 2
            if s_diag:
                factor = stable_binomial_factor(c - big)
            else:
                factor = UPoly.const(vinv_integer(c))
            term = g * factor * v(exp)
            out[C] = out[C] + term if C in out else term
            p0 = max(p0, -_min_diag(C))
    return StableElem(n, out, p0)


def smult_e(i: int, x: StableElem) -> StableElem:
    return _stable_apply("E", residue(i, x.n), x)


def smult_f(i: int, x: StableElem) -> StableElem:
    return _stable_apply("F", residue(i, x.n), x)


def smult_k(a: Sequence[int], x: StableElem) -> StableElem:
    if sum(a) != 0:
        raise ValueError("stable K_a needs sum(a) == 0 so that p drops out")
    return StableElem(x.n, {B: g * v(dot(a, row_sums(B))) for B, g in x.terms.items()}, x.p0)


def _sdivide(x: StableElem, m: int) -> StableElem:
    if m == 1:
        return x
    inv = RONE / quantum_factorial(m)
    return x.scale(inv)


def smult_e_div(i: int, m: int, x: StableElem) -> StableElem:
    for _ in range(m):
        x = smult_e(i, x)
    return _sdivide(x, m)


def smult_f_div(i: int, m: int, x: StableElem) -> StableElem:
    for _ in range(m):
        x = smult_f(i, x)
    return _sdivide(x, m)


def sapply_gen(g: Gen, x: StableElem) -> StableElem:
    if g.kind == "E":
        return smult_e_div(g.i, g.m, x)
    if g.kind == "F":
        return smult_f_div(g.i, g.m, x)
    return smult_k(g.a, x)


def sapply_word(w: Sequence[Gen], lam: Union[Weight, Sequence[int]]) -> StableElem:
    """Family w[𝐢_{a0 + p b0}] where a0 is the base representative of λ."""
    lam = lam if isinstance(lam, Weight) else Weight(lam)
    x = StableElem.idempotent(lam.base_rep())
    for g in reversed(w):
        if not x:
            break
        x = sapply_gen(g, x)
    return x


def srho_apply(g: Gen, y: StableElem) -> StableElem:
    if g.kind == "K":
        return smult_k(g.a, y)
    root = unit_root(g.i, y.n)
    if g.kind == "E":
        z = smult_f_div(g.i, g.m, y)
        z = smult_k(tuple(g.m * r for r in root), z)
    else:
        z = smult_e_div(g.i, g.m, y)
        z = smult_k(tuple(-g.m * r for r in root), z)
    return z.scale(v(g.m * g.m))


@dataclass(frozen=True)
class StableValue:
    """G in Q(v)[u] with G(v, v^-p) equal to the level-(k + pn) value for p >= p0."""

    value: UPoly
    p0: int
    k: int = 0


def stable_inner(w1: Sequence[Gen], lam1, w2: Sequence[Gen], lam2) -> StableValue:
    """<w1 1_λ1, w2 1_λ2>_D as an element of Q(v)[u], by peeling w1 onto w2 1_λ2."""
    lam1 = lam1 if isinstance(lam1, Weight) else Weight(lam1)
    lam2 = lam2 if isinstance(lam2, Weight) else Weight(lam2)
    if lam1.residue != lam2.residue:
        return StableValue(UPoly(), 0, lam1.residue)
    y = sapply_word(w2, lam2)
    a1 = lam1.base_rep()
    p0 = max(y.p0, -min(a1))
    for g in w1:
        if not y:
            break
        y = srho_apply(g, y)
        p0 = max(p0, y.p0)
    return StableValue(y.coeff(idem_matrix(a1)), p0, lam1.residue)


def inner_limit(x: UdotElem, y: UdotElem) -> RationalFunc:
    """<x, y> = bilinear extension of the u^0 part of the stable inner product."""
    total = RZERO
    for (w1, l1), c1 in x.terms.items():
        for (w2, l2), c2 in y.terms.items():
            val = u_limit(stable_inner(w1, l1, w2, l2).value)
            if val:
                total = total + c1 * c2 * val
    return total


def inner_limit_words(w1, lam1, w2, lam2) -> RationalFunc:
    return u_limit(stable_inner(w1, lam1, w2, lam2).value)


# ------------------------------------------------- the limit via expansions

LimitExpansion = Dict[PeriodicMatrix, RationalFunc]


# Denominators of limit coefficients are products of factors 1 - v^-2k. They
# are kept factored, as {k: exponent}, so that sums and pairings stay in
# Z[v, v^-1] and the v^-1 series comes out of a running sum per factor.
Factored = Dict[int, int]


@lru_cache(maxsize=None)
def _theta_power(k: int, e: int) -> LaurentPoly:
    return (ONE - v(-2 * k)) ** e


def factored_poly(den: Factored) -> LaurentPoly:
    out = ONE
    for k, e in sorted(den.items()):
        out = out * _theta_power(k, e)
    return out


def _raise_to(f: LaurentPoly, have: Factored, want: Factored) -> LaurentPoly:
    for k, e in want.items():
        if e > have.get(k, 0):
            f = f * _theta_power(k, e - have.get(k, 0))
    return f


def _lcm(dens: Iterable[Factored]) -> Factored:
    out: Factored = {}
    for den in dens:
        for k, e in den.items():
            out[k] = max(out.get(k, 0), e)
    return out


def _limit_word(w: Sequence[Gen], lam: Weight) -> Tuple[Dict[PeriodicMatrix, LaurentPoly], Factored]:
    """The family w 1_lam with u set to 0, as numerators over a factored denominator.

    Setting u = 0 commutes with the stable action. Each letter contributes
    1 / (1 - v^-2) from the diagonal factor, and [m]! is
    v^(m(m-1)/2) (1 - v^-2)^(1-m) prod_{j=2..m} (1 - v^-2j).
    """
    n = lam.n
    terms: Dict[PeriodicMatrix, LaurentPoly] = {idem_matrix(lam.base_rep()): ONE}
    den: Factored = {}
    shift = 0
    theta = _theta_power(1, 1)
    big = 10 ** 6
    for g in reversed(w):
        if not terms:
            break
        if g.kind == "K":
            if sum(g.a) != 0:
                raise ValueError("stable K_a needs sum(a) == 0 so that p drops out")
            terms = {B: f.shift(dot(g.a, row_sums(B))) for B, f in terms.items()}
            continue
        i = residue(g.i, n)
        for _ in range(g.m):
            out: Dict[PeriodicMatrix, LaurentPoly] = {}
            for B, f in terms.items():
                Bp = shift_p(B, big)
                for Cp, exp, c in (e_terms(i, Bp) if g.kind == "E" else f_terms(i, Bp)):
                    # (1 - u^2 v^-2c) / (1 - v^-2) tends to 1 / (1 - v^-2)
                    fac = ONE if c > big // 2 else vinv_integer(c) * theta
                    C = shift_p(Cp, -big)
                    term = (f * fac).shift(exp)
                    out[C] = out[C] + term if C in out else term
            terms = {B: f for B, f in out.items() if f}
        den[1] = den.get(1, 0) + 1
        for j in range(2, g.m + 1):
            den[j] = den.get(j, 0) + 1
        shift += g.m * (g.m - 1) // 2
    return {B: f.shift(-shift) for B, f in terms.items()}, den


@dataclass(frozen=True)
class LimitExpansion:
    """u -> 0 coefficients of a family on the [_pB]: terms[B] / factored_poly(den)."""

    terms: Dict[PeriodicMatrix, LaurentPoly]
    den: Factored

    def coeff(self, B: PeriodicMatrix) -> RationalFunc:
        f = self.terms.get(B)
        return RationalFunc(f, factored_poly(self.den)) if f else RZERO

    def as_dict(self) -> Dict[PeriodicMatrix, RationalFunc]:
        return {B: self.coeff(B) for B in self.terms}


def limit_expansion(x: UdotElem) -> LimitExpansion:
    """u -> 0 parts of the coefficients of the family represented by x.

    Keys are base matrices. The coefficients of x must be Laurent polynomials.
    """
    parts = []
    for (w, lam), c in x.terms.items():
        if not c.is_laurent():
            raise ValueError("limit_expansion needs Laurent coefficients")
        terms, den = _limit_word(w, lam)
        parts.append((c.to_laurent(), terms, den))
    common = _lcm(den for _, _, den in parts)
    out: Dict[PeriodicMatrix, LaurentPoly] = {}
    for c, terms, den in parts:
        for B, f in terms.items():
            val = _raise_to(f * c, den, common)
            out[B] = out[B] + val if B in out else val
    return LimitExpansion({B: f for B, f in out.items() if f}, common)


@lru_cache(maxsize=None)
def _norm_den(B: PeriodicMatrix) -> Tuple[Tuple[int, int], ...]:
    den: Factored = {}
    for _, b in B.offdiag_items():
        for j in range(1, b + 1):
            den[j] = den.get(j, 0) + 1
    return tuple(sorted(den.items()))


def limit_norm(B: PeriodicMatrix) -> RationalFunc:
    """lim_p ([_pB], [_pB]): the diagonal and column-sum factors tend to 1."""
    return RationalFunc(ONE, factored_poly(dict(_norm_den(B))))


@dataclass(frozen=True)
class LimitValue:
    """A value of the limit form, num / factored_poly(den), not reduced."""

    num: LaurentPoly
    den: Factored

    def __bool__(self) -> bool:
        return bool(self.num)

    def value(self) -> RationalFunc:
        return RationalFunc(self.num, factored_poly(self.den))

    def expand(self, order: int) -> Tuple[List[int], Dict[int, int]]:
        """Coefficients of v^0, ..., v^-order and the positive-degree terms.

        Each factor 1 / (1 - v^-2k) is a running sum with stride 2k, so this
        is exact once the numerator is cut below v^-order.
        """
        top = max(self.num.degree(), 0) if self.num else 0
        size = top + order + 1
        s = [0] * size  # s[i] is the coefficient of v^(top - i)
        for e, c in self.num.items():
            if e >= -order:
                s[top - e] = c
        for k, mult in self.den.items():
            for _ in range(mult):
                for i in range(2 * k, size):
                    s[i] += s[i - 2 * k]
        series = s[top:]
        positive = {top - i: s[i] for i in range(top) if s[i]}
        return series, positive


def inner_limit_expanded(x: LimitExpansion, y: LimitExpansion) -> LimitValue:
    """<x, y> from limit expansions, using that the [_pB] are orthogonal."""
    small, large = (x, y) if len(x.terms) <= len(y.terms) else (y, x)
    common = [B for B in small.terms if B in large.terms]
    norms = {B: dict(_norm_den(B)) for B in common}
    den = _lcm(norms.values())
    num = ZERO
    for B in common:
        num = num + _raise_to(small.terms[B] * large.terms[B], norms[B], den)
    for k, e in list(x.den.items()) + list(y.den.items()):
        den[k] = den.get(k, 0) + e
    return LimitValue(num, den)
