"""Weights, monomials of the modified quantum group, the maps phi_D, and the form on f.

A monomial is a generator word together with the weight of the idempotent it
is applied to on the right: ``(word, λ)`` stands for ``word · 1_λ``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from .coeffring import ONE, RONE, RZERO, LaurentPoly, RationalFunc, quantum_factorial, v
from .periodic import PeriodicVec, dot, residue, unit_root
from .schur import AlgebraElem, Gen, GenWord, apply_word, format_word, word_from_json, word_to_json


@dataclass(frozen=True)
class Weight:
    """A class in Z^n / Z(1,...,1), stored by its representative with minimum 0."""

    rep: Tuple[int, ...]

    def __init__(self, entries: Sequence[int]):
        entries = tuple(int(x) for x in entries)
        if not entries:
            raise ValueError("empty weight")
        lo = min(entries)
        object.__setattr__(self, "rep", tuple(x - lo for x in entries))

    @property
    def n(self) -> int:
        return len(self.rep)

    @property
    def residue(self) -> int:
        return sum(self.rep) % self.n

    def base_rep(self) -> PeriodicVec:
        """The representative with entry sum equal to the residue k in [0, n)."""
        n, s = self.n, sum(self.rep)
        t = (s - s % n) // n
        return tuple(x - t for x in self.rep)

    def shifted(self, delta: Sequence[int]) -> "Weight":
        return Weight(tuple(x + d for x, d in zip(self.rep, delta)))

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.rep) + ")"


def weight_rep(lam: Union[Weight, Sequence[int]], D: int) -> Optional[PeriodicVec]:
    """The unique 𝐚 ≡ λ with nonnegative entries summing to D, or None."""
    lam = lam if isinstance(lam, Weight) else Weight(lam)
    n, s = lam.n, sum(lam.rep)
    if (D - s) % n:
        return None
    t = (D - s) // n
    a = tuple(x + t for x in lam.rep)
    return a if min(a) >= 0 else None


Monomial = Tuple[GenWord, Weight]


class UdotElem:
    """Finite combination of monomials word·1_λ with coefficients in Q(v)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        out: Dict[Monomial, RationalFunc] = {}
        for (w, lam), c in (terms or {}).items():
            lam = lam if isinstance(lam, Weight) else Weight(lam)
            c = RationalFunc.of(c)
            key = (tuple(w), lam)
            out[key] = out[key] + c if key in out else c
        self.terms = {k: c for k, c in out.items() if c}

    @classmethod
    def monomial(cls, word: Sequence[Gen], lam, coeff=RONE) -> "UdotElem":
        return cls({(tuple(word), lam if isinstance(lam, Weight) else Weight(lam)): coeff})

    def __add__(self, other: "UdotElem") -> "UdotElem":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return UdotElem(out)

    def __neg__(self) -> "UdotElem":
        return UdotElem({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "UdotElem") -> "UdotElem":
        return self + (-other)

    def scale(self, c) -> "UdotElem":
        return UdotElem({k: a * c for k, a in self.terms.items()})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c}) {format_word(w)} 1_{lam}" for (w, lam), c in self.terms.items())


def monomial_to_json(word: Sequence[Gen], lam) -> dict:
    lam = lam if isinstance(lam, Weight) else Weight(lam)
    return {"word": word_to_json(word), "weight": list(lam.rep)}


def monomial_from_json(obj) -> Tuple[GenWord, Weight]:
    if isinstance(obj, str):
        obj = json.loads(obj)
    return word_from_json(obj["word"]), Weight(obj["weight"])


def phi_D(x: UdotElem, D: int, n: Optional[int] = None) -> AlgebraElem:
    """Image of x in the q-Schur algebra at level D; monomials without a representative vanish."""
    if n is None:
        if not x.terms:
            raise ValueError("need n for the zero element")
        n = next(iter(x.terms))[1].n
    out = AlgebraElem.zero(n, D)
    for (w, lam), c in x.terms.items():
        a = weight_rep(lam, D)
        if a is None:
            continue
        out = out + apply_word(w, a, D).scale(c.to_laurent())
    return out


def equal_to_horizon(x: UdotElem, y: UdotElem, Dmax: int, n: Optional[int] = None) -> bool:
    """phi_D(x) == phi_D(y) for every 0 <= D <= Dmax.  Only a horizon-limited check."""
    if n is None:
        keys = list(x.terms) + list(y.terms)
        if not keys:
            return True
        n = keys[0][1].n
    return all(phi_D(x, D, n) == phi_D(y, D, n) for D in range(Dmax + 1))


# ------------------------------------------------------------- algebra f

FWord = Tuple[Tuple[int, int], ...]
FlatWord = Tuple[int, ...]


def cartan(i: int, j: int, n: int) -> int:
    """𝐢·𝐣 for the simple roots of the cyclic quiver with n vertices."""
    return dot(unit_root(i, n), unit_root(j, n))


def fword_grading(x: Iterable[Tuple[int, int]], n: int) -> Tuple[int, ...]:
    nu = [0] * n
    for i, m in x:
        nu[residue(i, n) - 1] += m
    return tuple(nu)


def _flatten(x: FWord, n: int) -> Tuple[FlatWord, LaurentPoly]:
    flat = []
    den = ONE
    for i, m in x:
        flat.extend([residue(i, n)] * m)
        den = den * quantum_factorial(m)
    return tuple(flat), den


def _root_sum(letters: Iterable[int], n: int) -> Tuple[int, ...]:
    tot = [0] * n
    for j in letters:
        for k, r in enumerate(unit_root(j, n)):
            tot[k] += r
    return tuple(tot)


def ir_flat(i: int, x: FlatWord, n: int) -> Dict[FlatWord, LaurentPoly]:
    """_ir on a flat word: drop one letter i, weighted by v^{𝐢·(roots to its left)}."""
    out: Dict[FlatWord, LaurentPoly] = {}
    root = unit_root(i, n)
    for p, j in enumerate(x):
        if j != i:
            continue
        e = dot(root, _root_sum(x[:p], n))
        key = x[:p] + x[p + 1:]
        out[key] = out.get(key, LaurentPoly()) + v(e)
    return {k: c for k, c in out.items() if c}


def ri_flat(i: int, x: FlatWord, n: int) -> Dict[FlatWord, LaurentPoly]:
    """r_i on a flat word: drop one letter i, weighted by v^{𝐢·(roots to its right)}."""
    out: Dict[FlatWord, LaurentPoly] = {}
    root = unit_root(i, n)
    for p, j in enumerate(x):
        if j != i:
            continue
        e = dot(root, _root_sum(x[p + 1:], n))
        key = x[:p] + x[p + 1:]
        out[key] = out.get(key, LaurentPoly()) + v(e)
    return {k: c for k, c in out.items() if c}


FComb = Mapping[FWord, object]


def _expand_comb(x: Union[FWord, FComb], n: int) -> Dict[FlatWord, RationalFunc]:
    if isinstance(x, tuple):
        x = {x: RONE}
    out: Dict[FlatWord, RationalFunc] = {}
    for w, c in x.items():
        flat, den = _flatten(tuple(w), n)
        val = RationalFunc.of(c) / den
        out[flat] = out[flat] + val if flat in out else val
    return out


def ir_derivation(i: int, x: Union[FWord, FComb], n: int) -> Dict[FlatWord, RationalFunc]:
    out: Dict[FlatWord, RationalFunc] = {}
    for w, c in _expand_comb(x, n).items():
        for k, e in ir_flat(residue(i, n), w, n).items():
            out[k] = out[k] + c * e if k in out else c * e
    return {k: c for k, c in out.items() if c}


def ri_derivation(i: int, x: Union[FWord, FComb], n: int) -> Dict[FlatWord, RationalFunc]:
    out: Dict[FlatWord, RationalFunc] = {}
    for w, c in _expand_comb(x, n).items():
        for k, e in ri_flat(residue(i, n), w, n).items():
            out[k] = out[k] + c * e if k in out else c * e
    return {k: c for k, c in out.items() if c}


THETA_NORM = RationalFunc(ONE, ONE - v(-2))


@lru_cache(maxsize=None)
def _f_inner_flat(x: FlatWord, y: FlatWord, n: int) -> RationalFunc:
    if len(x) != len(y):
        return RZERO
    if not y:
        return RONE
    if sorted(x) != sorted(y):
        return RZERO
    i, z = y[0], y[1:]
    total = RZERO
    for xx, c in ir_flat(i, x, n).items():
        total = total + _f_inner_flat(xx, z, n) * c
    return total * THETA_NORM


def f_inner(x: Union[FWord, FComb], y: Union[FWord, FComb], n: int) -> RationalFunc:
    """The standard form on f via (x, θ_i z) = (θ_i, θ_i)(_ir(x), z)."""
    xs, ys = _expand_comb(x, n), _expand_comb(y, n)
    total = RZERO
    for a, ca in xs.items():
        for b, cb in ys.items():
            val = _f_inner_flat(a, b, n)
            if val:
                total = total + ca * cb * val
    return total


def fword_to_minus(x: FWord) -> GenWord:
    """x ↦ x⁻: θ_i^(m) becomes F_i^(m)."""
    return tuple(Gen("F", i, m) for i, m in x)


def fword_to_plus(x: FWord) -> GenWord:
    return tuple(Gen("E", i, m) for i, m in x)
