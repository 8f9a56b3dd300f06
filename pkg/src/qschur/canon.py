"""Canonical basis elements {A} by Gram-Schmidt on verified monomials.

The starting point for a target A is a standard monomial b_A, a word in
divided powers applied to an idempotent whose image is [A] plus terms that
are strictly smaller for ≼.  Subtracting bar-invariant multiples of the
(recursively computed) {B} for aperiodic B ≺ A until every pairing (x, {B})
lands in v^-1 Z[v^-1] produces {A}.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .coeffring import ONE, ZERO, LaurentPoly, RationalFunc, v
from .periodic import (
    PeriodicMatrix,
    PeriodicVec,
    col_sums,
    enumerate_interval,
    is_aperiodic,
    preceq,
    residue,
    row_sums,
    shift_p,
    split_pm,
    transpose,
)
from .schur import (
    AlgebraElem,
    Gen,
    GenWord,
    apply_word,
    evaluate_presentation,
    format_word,
    inner_basis,
    word_from_json,
    word_to_json,
)
from .stab import LimitExpansion, LimitValue, inner_limit_expanded, limit_expansion
from .udot import UdotElem, Weight

log = logging.getLogger(__name__)


class MonomialNotFound(RuntimeError):
    """No verified monomial for the given triangular matrix within the search budget."""


class NonUnitriangular(RuntimeError):
    pass


class NonIntegerLeading(ArithmeticError):
    pass


class StabilityNotReached(RuntimeError):
    pass


Presentation = Dict[Tuple[GenWord, PeriodicVec], LaurentPoly]


# ------------------------------------------------------------- monomials

def _strictly_below(B: PeriodicMatrix, A: PeriodicMatrix) -> bool:
    return B != A and preceq(B, A)


def is_unitriangular(x: AlgebraElem, A: PeriodicMatrix) -> bool:
    if x.coeff(A) != ONE:
        return False
    return all(B == A or _strictly_below(B, A) for B in x.terms)


def _heuristic_moves(A: PeriodicMatrix) -> Optional[List[Tuple[int, int]]]:
    """Reverse peeling of an upper-triangular A down to its column-sum idempotent.

    Returns the list of (row i, multiplicity m); each one undoes a forward
    step E_i^(m).  The forward word is the list read left to right.
    """
    n = A.n
    cur = {(i, t): val for (i, t), val in A.offdiag_items()}
    moves: List[Tuple[int, int]] = []
    for t in range(A.band(), 0, -1):
        start = next((k for k in range(1, n + 1) if not cur.get((k, t), 0)), None)
        if start is None:
            return None
        for step in range(1, n):
            i = residue(start - step, n)
            m = cur.pop((i, t), 0)
            if not m:
                continue
            if t > 1:
                j = residue(i + 1, n)
                cur[(j, t - 1)] = cur.get((j, t - 1), 0) + m
            moves.append((i, m))
    return moves


def _verify_upper(word: GenWord, A: PeriodicMatrix) -> bool:
    try:
        x = apply_word(word, col_sums(A))
    except ValueError:
        return False
    return is_unitriangular(x, A)


def _take_rightmost(cur: Dict[Tuple[int, int], int], i: int, m: int, n: int) -> Dict[Tuple[int, int], int]:
    """Undo E_i^(m): the m units of row i sitting furthest right drop to row i+1."""
    nxt = dict(cur)
    j = residue(i + 1, n)
    left = m
    for t in sorted((tt for (ii, tt) in cur if ii == i), reverse=True):
        take = min(left, nxt[(i, t)])
        nxt[(i, t)] -= take
        if not nxt[(i, t)]:
            del nxt[(i, t)]
        if t > 1:
            nxt[(j, t - 1)] = nxt.get((j, t - 1), 0) + take
        left -= take
        if not left:
            break
    return nxt


def _search_moves(A: PeriodicMatrix, budget: int) -> Optional[GenWord]:
    """Bounded depth-first search over reverse moves.

    A reverse move picks a row i and a multiplicity m and lets the m
    rightmost units of row i drop one row; that is what the top term of
    E_i^(m) undoes.  Rows holding the outermost entries are tried first,
    and every complete candidate is verified by evaluation.
    """
    n = A.n
    tried = 0

    def rec(cur: Dict[Tuple[int, int], int], acc: List[Gen]):
        nonlocal tried
        if not cur:
            tried += 1
            word = tuple(acc)
            return word if _verify_upper(word, A) else None
        if tried >= budget:
            return None
        reach = {}
        for (i, t), val in cur.items():
            reach.setdefault(i, [0, 0])
            reach[i][0] = max(reach[i][0], t)
            reach[i][1] += val
        for i in sorted(reach, key=lambda r: (-reach[r][0], r)):
            for m in range(reach[i][1], 0, -1):
                found = rec(_take_rightmost(cur, i, m, n), acc + [Gen("E", i, m)])
                if found is not None or tried >= budget:
                    return found
        return None

    return rec({k: val for k, val in A.offdiag_items()}, [])


def monomial_for(Ahalf: PeriodicMatrix, side: str = "upper", budget: int = 2000) -> GenWord:
    """A verified word whose image on the matching idempotent is [Ahalf] + (≺-smaller terms).

    Upper matrices get a word in the E's, applied to 𝐢_{c(Ahalf)}; lower ones
    a word in the F's, obtained from the transpose through Ψ.
    """
    if side == "lower":
        up = monomial_for(transpose(Ahalf), "upper", budget)
        return tuple(Gen("F", g.i, g.m) for g in reversed(up))
    if side != "upper":
        raise ValueError("side must be 'upper' or 'lower'")
    if any(t < 0 for _, t in Ahalf.offdiag()):
        raise ValueError("matrix is not upper triangular")
    if not is_aperiodic(Ahalf):
        raise MonomialNotFound(f"{Ahalf} is not aperiodic")
    moves = _heuristic_moves(Ahalf)
    if moves is not None:
        word = tuple(Gen("E", i, m) for i, m in moves)
        if _verify_upper(word, Ahalf):
            return word
    word = _search_moves(Ahalf, budget)
    if word is None:
        raise MonomialNotFound(f"no verified monomial for {Ahalf}")
    return word


def standard_element(A: PeriodicMatrix) -> Tuple[GenWord, PeriodicVec]:
    """b_A as (word, weight): the E-word of A's upper part, then the F-word of its lower part."""
    up, lo = split_pm(A)
    word = monomial_for(up, "upper") + monomial_for(lo, "lower")
    return word, col_sums(A)


def in_UD(A: PeriodicMatrix, D: Optional[int] = None) -> bool:
    return is_aperiodic(A)


# ----------------------------------------------------------- Gram-Schmidt

@dataclass
class CanonicalElem:
    n: int
    D: int
    target: PeriodicMatrix
    expansion: AlgebraElem
    presentation: Presentation
    gs_steps: int = 0

    def checks(self) -> Dict[str, bool]:
        A = self.target
        others = [(B, c) for B, c in self.expansion.terms.items() if B != A]
        return {
            "top_coefficient_one": self.expansion.coeff(A) == ONE,
            "support_below_target": all(_strictly_below(B, A) for B, _ in others),
            "lower_terms_in_vinv_Z": all(c.in_vinv_Z() for _, c in others),
            "lower_terms_nonnegative": all(a >= 0 for _, c in others for _, a in c.items()),
            "presentation_bar_invariant": all(c.is_bar_invariant() for c in self.presentation.values()),
        }

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "D": self.D,
            "target": self.target.to_json(),
            "expansion": self.expansion.to_json(),
            "presentation": [
                {"word": word_to_json(w), "weight": list(a), "coeff": str(c)}
                for (w, a), c in sorted(self.presentation.items(), key=lambda kv: (format_word(kv[0][0]), kv[0][1]))
            ],
            "gs_steps": self.gs_steps,
        }

    @classmethod
    def from_json(cls, obj) -> "CanonicalElem":
        pres = {
            (word_from_json(t["word"]), tuple(t["weight"])): LaurentPoly.parse(t["coeff"])
            for t in obj["presentation"]
        }
        return cls(obj["n"], obj["D"], PeriodicMatrix.from_json(obj["target"]),
                   AlgebraElem.from_json(obj["expansion"]), pres, obj.get("gs_steps", 0))


def _leading(f: LaurentPoly) -> Tuple[int, Fraction]:
    d = f.degree()
    return d, f.coeff(d)


class CanonicalBasis:
    """Memoizing driver for the Gram-Schmidt recursion, with optional on-disk cache."""

    def __init__(self, cache_dir: Optional[str] = None):
        self._memo: Dict[PeriodicMatrix, CanonicalElem] = {}
        self.cache_dir = Path(cache_dir) if cache_dir else None
        if self.cache_dir:
            self.cache_dir.mkdir(parents=True, exist_ok=True)

    def _cache_path(self, A: PeriodicMatrix) -> Path:
        digest = hashlib.sha256(f"{A.n}|{A}".encode()).hexdigest()[:32]
        return self.cache_dir / f"{digest}.json"

    def _load(self, A: PeriodicMatrix) -> Optional[CanonicalElem]:
        if not self.cache_dir:
            return None
        path = self._cache_path(A)
        if not path.exists():
            return None
        try:
            elem = CanonicalElem.from_json(json.loads(path.read_text()))
        except (ValueError, KeyError) as exc:
            log.warning("ignoring unreadable cache entry %s: %s", path, exc)
            return None
        if elem.target != A or not is_unitriangular(elem.expansion, A):
            log.warning("cache entry %s failed re-verification; recomputing", path)
            return None
        if evaluate_presentation(elem.presentation, A.n, elem.D) != elem.expansion:
            log.warning("cache entry %s: presentation does not match expansion; recomputing", path)
            return None
        return elem

    def _store(self, elem: CanonicalElem) -> None:
        if not self.cache_dir:
            return
        path = self._cache_path(elem.target)
        tmp = path.with_suffix(f".{os.getpid()}.tmp")
        tmp.write_text(json.dumps(elem.to_json(), sort_keys=True))
        os.replace(tmp, path)

    def get(self, A: PeriodicMatrix) -> CanonicalElem:
        if A in self._memo:
            return self._memo[A]
        elem = self._load(A)
        if elem is None:
            elem = self._compute(A)
            self._store(elem)
        self._memo[A] = elem
        return elem

    def _compute(self, A: PeriodicMatrix) -> CanonicalElem:
        if not A.is_nonnegative():
            raise ValueError(f"{A} has negative entries")
        if not is_aperiodic(A):
            raise ValueError(f"{A} is not aperiodic; only aperiodic targets are supported")
        n, D = A.n, A.level()
        word, a = standard_element(A)
        pres: Presentation = {(word, a): ONE}
        x = apply_word(word, a, D)
        if not is_unitriangular(x, A):
            raise NonUnitriangular(f"standard element of {A} is not unitriangular")
        preds = [B for B in enumerate_interval(A) if B != A and is_aperiodic(B)]
        below = {B: self.get(B) for B in preds}
        steps = 0
        while True:
            # the expansion of x is kept in step with its presentation
            pairings = {B: inner_basis(x, cb.expansion) for B, cb in below.items()}
            nonzero = {B: f for B, f in pairings.items() if f}
            if not nonzero:
                break
            N = max(f.degree() for f in nonzero.values())
            if N < 0:
                break
            for B, f in sorted(nonzero.items(), key=lambda kv: kv[0].sort_key()):
                if f.degree() != N:
                    continue
                c = f.coeff(N)
                if not isinstance(c, int):
                    raise NonIntegerLeading(f"leading coefficient {c} of (x, {{{B}}}) is not an integer")
                e = LaurentPoly({N: c, -N: c}) if N > 0 else LaurentPoly({0: c})
                for key, cc in below[B].presentation.items():
                    pres[key] = pres.get(key, ZERO) - e * cc
                    if not pres[key]:
                        del pres[key]
                x = x - below[B].expansion.scale(e)
                steps += 1
        expansion = evaluate_presentation(pres, n, D)
        if expansion != x:
            raise NonUnitriangular(f"presentation of {{{A}}} does not evaluate to its expansion")
        if expansion.coeff(A) != ONE:
            raise NonUnitriangular(f"[A]-coefficient of {{A}} is {expansion.coeff(A)}")
        return CanonicalElem(n, D, A, expansion, pres, steps)


_DEFAULT = CanonicalBasis()


def gs_canonical(A: PeriodicMatrix, D: Optional[int] = None, basis: Optional[CanonicalBasis] = None) -> CanonicalElem:
    if D is not None and D != A.level():
        raise ValueError(f"{A} lives at level {A.level()}, not {D}")
    return (basis or _DEFAULT).get(A)


# ----------------------------------------------------------- stability

StablePresentation = Dict[Tuple[GenWord, Weight], LaurentPoly]


def stable_presentation(elem: CanonicalElem) -> StablePresentation:
    out: StablePresentation = {}
    for (w, a), c in elem.presentation.items():
        key = (w, Weight(a))
        out[key] = out.get(key, ZERO) + c
    return {k: c for k, c in out.items() if c}


@dataclass
class CanonicalFamily:
    """{_pA} for p >= p_stable, given by a presentation that no longer depends on p."""

    base: PeriodicMatrix
    presentation: StablePresentation
    levels: Tuple[int, int]
    members: Tuple[CanonicalElem, CanonicalElem] = field(repr=False, default=None)
    _limit: Optional[LimitExpansion] = field(repr=False, default=None, compare=False)

    def as_udot(self) -> UdotElem:
        return UdotElem({k: RationalFunc.of(c) for k, c in self.presentation.items()})

    @property
    def limit(self) -> LimitExpansion:
        """The u -> 0 expansion of the family, computed once."""
        if self._limit is None:
            self._limit = limit_expansion(self.as_udot())
        return self._limit


def gs_stable(A: PeriodicMatrix, max_retries: int = 3, basis: Optional[CanonicalBasis] = None) -> CanonicalFamily:
    """Run the recursion at D and D + n and require identical presentations.

    If they differ, move up by n and try again, at most ``max_retries`` times.
    """
    basis = basis or _DEFAULT
    cur = basis.get(A)
    for k in range(max_retries + 1):
        nxt = basis.get(shift_p(cur.target, 1))
        if stable_presentation(cur) == stable_presentation(nxt):
            return CanonicalFamily(cur.target, stable_presentation(cur), (cur.D, nxt.D), (cur, nxt))
        log.info("presentation of %s changes between D=%d and D=%d", cur.target, cur.D, nxt.D)
        cur = nxt
    raise StabilityNotReached(f"no stable presentation for {A} after {max_retries} retries")


def d_stable(A: PeriodicMatrix, basis: Optional[CanonicalBasis] = None) -> bool:
    """True when gs_canonical at D and D + n give the same presentation (no retries)."""
    basis = basis or _DEFAULT
    return stable_presentation(basis.get(A)) == stable_presentation(basis.get(shift_p(A, 1)))


# ----------------------------------------------------------- positivity

@dataclass
class PositivityReport:
    pairing: LimitValue = field(repr=False)
    series: List[int]
    positive_part: Dict[int, int]
    verdict: bool

    @property
    def value(self) -> RationalFunc:
        """<b1, b2> as a reduced rational function; reduced only on demand."""
        return self.pairing.value()


def positivity_report(b1: CanonicalFamily, b2: CanonicalFamily, order: int = 20) -> PositivityReport:
    val = inner_limit_expanded(b1.limit, b2.limit)
    series, pos = val.expand(order)
    ok = not pos and all(c >= 0 for c in series)
    return PositivityReport(val, series, pos, ok)
