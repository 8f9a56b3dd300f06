"""The affine q-Schur algebra on the basis [A]: generator action and inner product.

Only left multiplication by E_i, F_i, K_a (and divided powers) is provided.
That is enough to evaluate any monomial on an idempotent, and through the
adjoint map ``rho`` it is enough to evaluate the bilinear form whenever the
left argument is given as such a monomial.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .coeffring import (
    ONE,
    ZERO,
    LaurentPoly,
    NonIntegralDivision,
    bracket_factorial,
    quantum_factorial,
    v,
    vinv_integer,
)
from .periodic import (
    PeriodicMatrix,
    PeriodicVec,
    dot,
    idem_matrix,
    in_S_Dn,
    residue,
    row_sums,
    transpose,
    unit_root,
)


class AlgebraElem:
    """Finite sum of basis elements [A] with Laurent coefficients, at fixed (n, D)."""

    __slots__ = ("n", "D", "terms")

    def __init__(self, n: int, D: int, terms: Mapping[PeriodicMatrix, LaurentPoly] | None = None):
        self.n = n
        self.D = D
        self.terms: Dict[PeriodicMatrix, LaurentPoly] = {A: c for A, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls, n: int, D: int) -> "AlgebraElem":
        return cls(n, D)

    @classmethod
    def basis(cls, A: PeriodicMatrix, coeff: LaurentPoly = ONE) -> "AlgebraElem":
        return cls(A.n, A.level(), {A: coeff})

    def coeff(self, A: PeriodicMatrix) -> LaurentPoly:
        return self.terms.get(A, ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def _check(self, other: "AlgebraElem") -> None:
        if (self.n, self.D) != (other.n, other.D):
            raise ValueError(f"level mismatch: (n, D) = {(self.n, self.D)} vs {(other.n, other.D)}")

    def __add__(self, other: "AlgebraElem") -> "AlgebraElem":
        self._check(other)
        out = dict(self.terms)
        for A, c in other.terms.items():
            out[A] = out[A] + c if A in out else c
        return AlgebraElem(self.n, self.D, out)

    def __neg__(self) -> "AlgebraElem":
        return AlgebraElem(self.n, self.D, {A: -c for A, c in self.terms.items()})

    def __sub__(self, other: "AlgebraElem") -> "AlgebraElem":
        return self + (-other)

    def scale(self, c) -> "AlgebraElem":
        return AlgebraElem(self.n, self.D, {A: a * c for A, a in self.terms.items()})

    __rmul__ = scale

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElem):
            return NotImplemented
        return (self.n, self.D, self.terms) == (other.n, other.D, other.terms)

    def __hash__(self):
        return hash((self.n, self.D, frozenset(self.terms.items())))

    def sorted_terms(self) -> List[Tuple[PeriodicMatrix, LaurentPoly]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return "\n".join(f"({c}) [{A}]" for A, c in self.sorted_terms())

    def __repr__(self) -> str:
        return f"AlgebraElem(n={self.n}, D={self.D}, {len(self.terms)} terms)"

    def to_json(self) -> dict:
        return {"n": self.n, "D": self.D,
                "terms": [{"matrix": A.to_json(), "coeff": str(c)} for A, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, obj) -> "AlgebraElem":
        if isinstance(obj, str):
            obj = json.loads(obj)
        terms: Dict[PeriodicMatrix, LaurentPoly] = {}
        for t in obj["terms"]:
            A = PeriodicMatrix.from_json(t["matrix"])
            terms[A] = terms.get(A, ZERO) + LaurentPoly.parse(t["coeff"])
        return cls(int(obj["n"]), int(obj["D"]), terms)


# ---------------------------------------------------------------- words

@dataclass(frozen=True)
class Gen:
    """One generator symbol: E_i^(m), F_i^(m) or K_a."""

    kind: str
    i: int = 0
    m: int = 1
    a: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ("E", "F", "K"):
            raise ValueError(f"unknown generator {self.kind!r}")
        if self.kind != "K" and self.m < 1:
            raise ValueError("divided power exponent must be >= 1")

    def __str__(self) -> str:
        if self.kind == "K":
            return "K(" + ",".join(str(x) for x in self.a) + ")"
        return f"{self.kind}{self.i}" + (f"^({self.m})" if self.m != 1 else "")

    def reduced(self, n: int) -> "Gen":
        if self.kind == "K":
            if len(self.a) != n:
                raise ValueError(f"K needs {n} entries, got {len(self.a)}")
            return self
        return Gen(self.kind, residue(self.i, n), self.m)

    def weight_shift(self, n: int) -> PeriodicVec:
        """Change in the row-sum vector caused by applying this generator."""
        if self.kind == "K":
            return (0,) * n
        root = unit_root(self.i, n)
        sign = self.m if self.kind == "E" else -self.m
        return tuple(sign * x for x in root)


GenWord = Tuple[Gen, ...]


def E(i: int, m: int = 1) -> Gen:
    return Gen("E", i, m)


def F(i: int, m: int = 1) -> Gen:
    return Gen("F", i, m)


def K(*a: int) -> Gen:
    return Gen("K", 0, 1, tuple(a))


_GEN_RE = re.compile(r"([EF])(\d+)(?:\^\((\d+)\))?|K\((-?\d+(?:,\s*-?\d+)*)\)")


class WordSyntaxError(ValueError):
    def __init__(self, text: str, col: int, msg: str = "unexpected symbol"):
        super().__init__(f"{msg} at column {col + 1}: {text!r}")
        self.col = col


def parse_word(text: str) -> GenWord:
    """Parse ``E1^(2) F2 K(1,0,-1)``; the rightmost symbol acts first."""
    out: List[Gen] = []
    pos = 0
    text_s = text.rstrip()
    while pos < len(text_s):
        if text_s[pos].isspace():
            pos += 1
            continue
        m = _GEN_RE.match(text_s, pos)
        if not m:
            raise WordSyntaxError(text, pos)
        if m.group(4) is not None:
            out.append(K(*(int(x) for x in m.group(4).split(","))))
        else:
            mult = int(m.group(3)) if m.group(3) else 1
            if mult < 1:
                raise WordSyntaxError(text, pos, "divided power must be >= 1")
            out.append(Gen(m.group(1), int(m.group(2)), mult))
        pos = m.end()
    return tuple(out)


def format_word(w: Sequence[Gen]) -> str:
    return " ".join(str(g) for g in w)


def word_to_json(w: Sequence[Gen]) -> list:
    return [["K", list(g.a)] if g.kind == "K" else [g.kind, g.i, g.m] for g in w]


def word_from_json(obj) -> GenWord:
    out = []
    for sym in obj:
        if sym[0] == "K":
            out.append(K(*sym[1]))
        else:
            out.append(Gen(sym[0], int(sym[1]), int(sym[2]) if len(sym) > 2 else 1))
    return tuple(out)


def word_weight_shift(w: Sequence[Gen], n: int) -> PeriodicVec:
    tot = [0] * n
    for g in w:
        for k, x in enumerate(g.weight_shift(n)):
            tot[k] += x
    return tuple(tot)


# ------------------------------------------------------- generator action

def idempotent(a: Sequence[int], D: int) -> AlgebraElem:
    a = tuple(a)
    if not in_S_Dn(a, D):
        raise ValueError(f"{a} is not in S_(D={D}, n={len(a)})")
    return AlgebraElem(len(a), D, {idem_matrix(a): ONE})


def _row_tail(A: PeriodicMatrix, i: int, s: int, w: int, strict: bool) -> int:
    """sum_{j >= s} a_{i,j} (or j > s when strict)."""
    start = s + 1 if strict else s
    return sum(A.entry(i, j) for j in range(start, i + w + 1))


def _row_head(A: PeriodicMatrix, i: int, s: int, w: int, strict: bool) -> int:
    """sum_{j <= s} a_{i,j} (or j < s when strict)."""
    stop = s - 1 if strict else s
    return sum(A.entry(i, j) for j in range(i - w, stop + 1))


def e_terms(i: int, A: PeriodicMatrix) -> List[Tuple[PeriodicMatrix, int, int]]:
    """E_i [A] as a list of (matrix, v-exponent, c) meaning v^exp * (1-v^{-2c})/(1-v^{-2})."""
    w = A.band() + 1
    out = []
    for s in range(i + 1 - w, i + 2 + w):
        if A.entry(i + 1, s) < 1:
            continue
        exp = _row_tail(A, i, s, w, False) - _row_tail(A, i + 1, s, w, True)
        B = A.add_entries({(i, s): 1, (i + 1, s): -1})
        out.append((B, exp, A.entry(i, s) + 1))
    return out


def f_terms(i: int, A: PeriodicMatrix) -> List[Tuple[PeriodicMatrix, int, int]]:
    """F_i [A] in the same encoding as ``e_terms``."""
    w = A.band() + 1
    out = []
    for s in range(i - w, i + 1 + w):
        if A.entry(i, s) < 1:
            continue
        exp = _row_head(A, i + 1, s, w, False) - _row_head(A, i, s, w, True)
        B = A.add_entries({(i, s): -1, (i + 1, s): 1})
        out.append((B, exp, A.entry(i + 1, s) + 1))
    return out


def _apply_terms(fn, i: int, x: AlgebraElem) -> AlgebraElem:
    out: Dict[PeriodicMatrix, LaurentPoly] = {}
    for A, c in x.terms.items():
        for B, exp, cc in fn(i, A):
            term = (c * vinv_integer(cc)).shift(exp)
            out[B] = out[B] + term if B in out else term
    return AlgebraElem(x.n, x.D, out)


def mult_e(i: int, x: AlgebraElem) -> AlgebraElem:
    return _apply_terms(e_terms, residue(i, x.n), x)


def mult_f(i: int, x: AlgebraElem) -> AlgebraElem:
    return _apply_terms(f_terms, residue(i, x.n), x)


def mult_k(a: Sequence[int], x: AlgebraElem) -> AlgebraElem:
    if len(a) != x.n:
        raise ValueError("K weight has wrong length")
    return AlgebraElem(x.n, x.D, {A: c.shift(dot(a, row_sums(A))) for A, c in x.terms.items()})


def _divide(x: AlgebraElem, m: int) -> AlgebraElem:
    if m == 1:
        return x
    fact = quantum_factorial(m)
    out = {}
    for A, c in x.terms.items():
        try:
            out[A] = c.exact_div(fact)
        except NonIntegralDivision as exc:
            raise NonIntegralDivision(f"coefficient of [{A}] not divisible by [{m}]!") from exc
    return AlgebraElem(x.n, x.D, out)


def mult_e_div(i: int, m: int, x: AlgebraElem) -> AlgebraElem:
    for _ in range(m):
        x = mult_e(i, x)
    return _divide(x, m)


def mult_f_div(i: int, m: int, x: AlgebraElem) -> AlgebraElem:
    for _ in range(m):
        x = mult_f(i, x)
    return _divide(x, m)


def apply_gen(g: Gen, x: AlgebraElem) -> AlgebraElem:
    if g.kind == "E":
        return mult_e_div(g.i, g.m, x)
    if g.kind == "F":
        return mult_f_div(g.i, g.m, x)
    return mult_k(g.a, x)


def apply_word_to(w: Sequence[Gen], x: AlgebraElem) -> AlgebraElem:
    for g in reversed(w):
        if not x:
            break
        x = apply_gen(g, x)
    return x


def apply_word(w: Sequence[Gen], a: Sequence[int], D: Optional[int] = None) -> AlgebraElem:
    """The element g_1 g_2 ... g_k [𝐢_a]; g_k acts first."""
    a = tuple(a)
    D = sum(a) if D is None else D
    return apply_word_to(w, idempotent(a, D))


def psi_transpose(x: AlgebraElem) -> AlgebraElem:
    """Ψ([A]) = [A^t], extended linearly."""
    return AlgebraElem(x.n, x.D, {transpose(A): c for A, c in x.terms.items()})


# ---------------------------------------------------------- inner product

def rho_apply(g: Gen, y: AlgebraElem) -> AlgebraElem:
    """Apply the adjoint of g: rho(E^(m)) = v^{m^2} K_{m𝐢} F^(m), and symmetrically."""
    n = y.n
    if g.kind == "K":
        return mult_k(g.a, y)
    root = unit_root(g.i, n)
    if g.kind == "E":
        z = mult_f_div(g.i, g.m, y)
        z = mult_k(tuple(g.m * r for r in root), z)
    else:
        z = mult_e_div(g.i, g.m, y)
        z = mult_k(tuple(-g.m * r for r in root), z)
    return z.scale(v(g.m * g.m))


def inner_fixed(w: Sequence[Gen], a: Sequence[int], y: AlgebraElem) -> LaurentPoly:
    """(g_1 ... g_k [𝐢_a], y)_D computed as the [𝐢_a]-coefficient of rho(g_k)...rho(g_1) y."""
    a = tuple(a)
    if sum(a) != y.D or len(a) != y.n:
        raise ValueError(f"level mismatch: weight {a} against (n, D) = {(y.n, y.D)}")
    for g in w:
        if not y:
            return ZERO
        y = rho_apply(g, y)
    return y.coeff(idem_matrix(a))


def inner_words(w1: Sequence[Gen], a1: Sequence[int], w2: Sequence[Gen], a2: Sequence[int]) -> LaurentPoly:
    """(w1[𝐢_a1], w2[𝐢_a2])_D with both sides given as words."""
    return inner_fixed(w1, a1, apply_word(w2, a2))


@lru_cache(maxsize=None)
def basis_norm(A: PeriodicMatrix) -> LaurentPoly:
    """([A], [A])_D in closed form.

    The fiber over a chain of type c(A) is counted column by column, which
    gives one v^-2 multinomial per column: prod_j [[c_j]]! / prod_i [[a_ij]]!.
    The power of q in the count cancels against the normalization of [A].
    """
    cols: Dict[int, List[int]] = {j: [A.diag[j - 1]] for j in range(1, A.n + 1)}
    for (i, t), val in A.offdiag_items():
        cols[residue(i + t, A.n)].append(val)
    out = ONE
    for entries in cols.values():
        out = out * bracket_factorial([sum(entries)]).exact_div(bracket_factorial(entries))
    return out


def inner_basis(x: AlgebraElem, y: AlgebraElem) -> LaurentPoly:
    """(x, y)_D from the two expansions, using that the [A] are orthogonal."""
    x._check(y)
    if len(x.terms) > len(y.terms):
        x, y = y, x
    total = ZERO
    for A, c in x.terms.items():
        d = y.terms.get(A)
        if d is not None:
            total = total + c * d * basis_norm(A)
    return total


Presentation = Mapping[Tuple[GenWord, PeriodicVec], LaurentPoly]


def inner_presented(x: Presentation, y: AlgebraElem) -> LaurentPoly:
    """Bilinear extension of ``inner_fixed`` to a combination of (word, weight) pairs."""
    total = ZERO
    for (w, a), c in x.items():
        val = inner_fixed(w, a, y)
        if val:
            total = total + c * val
    return total


def evaluate_presentation(x: Presentation, n: int, D: int) -> AlgebraElem:
    out = AlgebraElem.zero(n, D)
    for (w, a), c in x.items():
        out = out + apply_word(w, a, D).scale(c)
    return out
