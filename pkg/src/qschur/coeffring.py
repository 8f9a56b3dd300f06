"""Exact coefficient rings: Z[v, v^-1] (over Q), Q(v) and Q(v)[u].

Everything here is immutable.  ``LaurentPoly`` is the workhorse; the
rational-function type only shows up once the stable (formal ``p``) algebra
gets involved, where ``u`` stands for ``v^-p``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Tuple, Union

Number = Union[int, Fraction]


class NonIntegralDivision(ArithmeticError):
    """An exact division in Q[v, v^-1] left a remainder."""


def _norm(c: Number) -> Number:
    # an exact type test: isinstance goes through the numbers ABCs and is slow
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class LaurentPoly:
    """Laurent polynomial in ``v`` with rational coefficients.

    >>> str(LaurentPoly({2: 1, 0: 3}).bar())
    '3*v^0 + 1*v^-2'
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, Number] | None = None):
        c: Dict[int, Number] = {}
        if coeffs:
            for k, a in coeffs.items():
                if a:
                    c[int(k)] = _norm(a)
        self._c = c
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, a: Number) -> "LaurentPoly":
        return cls({0: a})

    @classmethod
    def monomial(cls, k: int, a: Number = 1) -> "LaurentPoly":
        return cls({k: a})

    @classmethod
    def _raw(cls, c: Dict[int, Number]) -> "LaurentPoly":
        out = cls.__new__(cls)
        out._c = c
        out._hash = None
        return out

    # inspection ---------------------------------------------------------
    def items(self) -> Iterable[Tuple[int, Number]]:
        return self._c.items()

    def coeff(self, k: int) -> Number:
        return self._c.get(k, 0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def degree(self) -> int:
        """Highest exponent; raises on zero."""
        if not self._c:
            raise ValueError("degree of zero polynomial")
        return max(self._c)

    def low_degree(self) -> int:
        if not self._c:
            raise ValueError("degree of zero polynomial")
        return min(self._c)

    def leading_coeff(self) -> Number:
        return self._c[self.degree()]

    def is_integral(self) -> bool:
        return all(isinstance(a, int) for a in self._c.values())

    def in_vinv_Z(self) -> bool:
        """True iff the polynomial lies in v^-1 Z[v^-1]."""
        return self.is_integral() and all(k < 0 for k in self._c)

    def is_bar_invariant(self) -> bool:
        return self == self.bar()

    # arithmetic ---------------------------------------------------------
    def __add__(self, other) -> "LaurentPoly":
        other = _as_laurent(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for k, a in other._c.items():
            s = c.get(k, 0) + a
            if s:
                c[k] = _norm(s)
            else:
                c.pop(k, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({k: -a for k, a in self._c.items()})

    def __sub__(self, other) -> "LaurentPoly":
        other = _as_laurent(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return LaurentPoly._raw({k: _norm(a * other) for k, a in self._c.items()})
        other = _as_laurent(other)
        if other is NotImplemented:
            return other
        if len(other._c) == 1:
            (j, b), = other._c.items()
            return LaurentPoly._raw({k + j: _norm(a * b) for k, a in self._c.items()})
        c: Dict[int, Number] = {}
        for k, a in self._c.items():
            for j, b in other._c.items():
                c[k + j] = c.get(k + j, 0) + a * b
        return LaurentPoly._raw({k: _norm(a) for k, a in c.items() if a})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "LaurentPoly":
        if e < 0:
            raise ValueError("negative power")
        out = ONE
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by v^k."""
        if not k:
            return self
        return LaurentPoly._raw({e + k: a for e, a in self._c.items()})

    def bar(self) -> "LaurentPoly":
        return LaurentPoly._raw({-k: a for k, a in self._c.items()})

    def divmod(self, other: "LaurentPoly") -> Tuple["LaurentPoly", "LaurentPoly"]:
        """Division as polynomials after clearing the lowest powers of v.

        Powers of v are units, so ``self`` is divisible by ``other`` in
        Q[v, v^-1] exactly when the remainder returned here is zero.
        """
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.is_zero():
            return ZERO, ZERO
        if other.leading_coeff() in (1, -1) and self.is_integral() and other.is_integral():
            return self._int_divmod(other)
        alo, ap = _to_dense(self)
        blo, bp = _to_dense(other)
        q, r = _poly_divmod(ap, bp)
        return _from_dense(alo - blo, q), _from_dense(alo, r)

    def _int_divmod(self, other: "LaurentPoly") -> Tuple["LaurentPoly", "LaurentPoly"]:
        # monic (up to sign) integral divisor: long division never leaves Z
        alo, blo = self.low_degree(), other.low_degree()
        a = [0] * (self.degree() - alo + 1)
        for k, c in self._c.items():
            a[k - alo] = c
        b = [0] * (other.degree() - blo + 1)
        for k, c in other._c.items():
            b[k - blo] = c
        db, lb = len(b) - 1, b[-1]
        q = [0] * max(len(a) - db, 0)
        while len(a) - 1 >= db:
            c = a[-1] * lb
            if c:
                k = len(a) - 1 - db
                q[k] = c
                for i, bi in enumerate(b):
                    if bi:
                        a[i + k] -= c * bi
            a.pop()
        quo = LaurentPoly._raw({alo - blo + i: c for i, c in enumerate(q) if c})
        rem = LaurentPoly._raw({alo + i: c for i, c in enumerate(a) if c})
        return quo, rem

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        q, r = self.divmod(other)
        if r:
            raise NonIntegralDivision(f"({self}) / ({other}) is not a Laurent polynomial")
        return q

    # comparison ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # evaluation ---------------------------------------------------------
    def at_sqrt(self, q: int) -> Tuple[Fraction, Fraction]:
        """Value at v = sqrt(q) as ``(a, b)`` meaning ``a + b*sqrt(q)``."""
        a = Fraction(0)
        b = Fraction(0)
        for k, c in self._c.items():
            half, odd = divmod(k, 2)
            term = Fraction(c) * Fraction(q) ** half
            if odd:
                b += term
            else:
                a += term
        return a, b

    def __call__(self, x):
        return sum((c * x ** k for k, c in self._c.items()), 0 * x)

    # text ---------------------------------------------------------------
    def __str__(self) -> str:
        if not self._c:
            return "0"
        return " + ".join(f"{a}*v^{k}" for k, a in sorted(self._c.items(), reverse=True))

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        text = text.strip()
        if text == "0":
            return ZERO
        c: Dict[int, Number] = {}
        for term in text.split(" + "):
            m = _TERM_RE.fullmatch(term.strip())
            if not m:
                raise ValueError(f"bad Laurent term {term!r}")
            a = Fraction(m.group(1))
            k = int(m.group(2))
            c[k] = c.get(k, 0) + a
        return cls(c)


_TERM_RE = re.compile(r"(-?\d+(?:/\d+)?)\*v\^(-?\d+)")


def _as_laurent(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly({0: x}) if x else ZERO
    return NotImplemented


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
V = LaurentPoly({1: 1})


def v(k: int = 1) -> LaurentPoly:
    """The monomial v^k."""
    return LaurentPoly._raw({k: 1})


def bar(f: LaurentPoly) -> LaurentPoly:
    return f.bar()


# quantum numbers ---------------------------------------------------------

@lru_cache(maxsize=None)
def quantum_integer(m: int) -> LaurentPoly:
    """Balanced quantum integer [m] = (v^m - v^-m)/(v - v^-1)."""
    if m < 0:
        raise ValueError("quantum_integer needs m >= 0")
    return LaurentPoly({m - 1 - 2 * k: 1 for k in range(m)})


def signed_quantum_integer(m: int) -> LaurentPoly:
    """[m] for any integer m, using [-m] = -[m]."""
    return quantum_integer(m) if m >= 0 else -quantum_integer(-m)


@lru_cache(maxsize=None)
def quantum_factorial(m: int) -> LaurentPoly:
    if m < 0:
        raise ValueError("quantum_factorial needs m >= 0")
    out = ONE
    for j in range(1, m + 1):
        out = out * quantum_integer(j)
    return out


@lru_cache(maxsize=None)
def gauss_binomial(m: int, k: int) -> LaurentPoly:
    if m < 0 or not 0 <= k <= m:
        raise ValueError("gauss_binomial needs 0 <= k <= m")
    return quantum_factorial(m).exact_div(quantum_factorial(k) * quantum_factorial(m - k))


@lru_cache(maxsize=None)
def vinv_integer(c: int) -> LaurentPoly:
    """(1 - v^{-2c}) / (1 - v^{-2}) = 1 + v^-2 + ... + v^{-2(c-1)} = v^{1-c}[c]."""
    if c < 0:
        raise ValueError("vinv_integer needs c >= 0")
    return LaurentPoly({-2 * k: 1 for k in range(c)})


def balanced_from_vinv(c: int) -> LaurentPoly:
    """Conversion helper: [c] = v^{c-1} (1 - v^{-2c})/(1 - v^{-2})."""
    return vinv_integer(c).shift(c - 1)


def bracket_factorial(a: Iterable[int]) -> LaurentPoly:
    """[[a]]! = prod_i prod_{j=1}^{a_i} (1 - v^{-2j})."""
    out = ONE
    for ai in a:
        for j in range(1, ai + 1):
            out = out * (ONE - v(-2 * j))
    return out


# dense polynomial helpers for Q(v) --------------------------------------

def _poly_trim(p: List[Fraction]) -> List[Fraction]:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a: List[Fraction], b: List[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    db = len(b) - 1
    while len(_poly_trim(a)) - 1 >= db and a:
        k = len(a) - 1 - db
        c = a[-1] / lb
        q[k] = c
        for i, bi in enumerate(b):
            a[i + k] -= c * bi
        a.pop()
    return _poly_trim(q), _poly_trim(a)


def _poly_gcd(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if not a:
        return [Fraction(1)]
    lc = a[-1]
    return [c / lc for c in a]


def _to_dense(f: LaurentPoly) -> Tuple[int, List[Fraction]]:
    lo = f.low_degree()
    p = [Fraction(0)] * (f.degree() - lo + 1)
    for k, a in f.items():
        p[k - lo] = Fraction(a)
    return lo, p


def _from_dense(lo: int, p: List[Fraction]) -> LaurentPoly:
    return LaurentPoly({lo + i: c for i, c in enumerate(p) if c})


class RationalFunc:
    """Element of Q(v), stored as num/den in lowest terms.

    The denominator is a polynomial in v with nonzero constant term and
    leading coefficient 1, which makes equality structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, *, _normalized: bool = False):
        num = _as_laurent(num)
        den = ONE if den is None else _as_laurent(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RationalFunc needs Laurent polynomial parts")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self._hash = None
        if _normalized:
            self.num, self.den = num, den
            return
        if num.is_zero():
            self.num, self.den = ZERO, ONE
            return
        if len(den._c) == 1:
            (k, c), = den._c.items()
            self.num = num.shift(-k) * (Fraction(1) / Fraction(c))
            self.den = ONE
            return
        nlo, np_ = _to_dense(num)
        dlo, dp = _to_dense(den)
        g = _poly_gcd(np_, dp)
        if len(g) > 1:
            np_, _ = _poly_divmod(np_, g)
            dp, _ = _poly_divmod(dp, g)
        lc = dp[-1]
        np_ = [c / lc for c in np_]
        dp = [c / lc for c in dp]
        self.num = _from_dense(nlo - dlo, np_)
        self.den = _from_dense(0, dp)

    @classmethod
    def of(cls, x) -> "RationalFunc":
        if isinstance(x, RationalFunc):
            return x
        return cls(x, ONE, _normalized=True) if isinstance(x, LaurentPoly) else cls(_as_laurent(x))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den == ONE

    def to_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise NonIntegralDivision(f"{self} is not a Laurent polynomial")
        return self.num

    def __add__(self, other) -> "RationalFunc":
        other = _as_rational(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            if self.den == ONE:
                return RationalFunc(self.num + other.num, ONE, _normalized=True)
            return RationalFunc(self.num + other.num, self.den)
        return RationalFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunc":
        return RationalFunc(-self.num, self.den, _normalized=True)

    def __sub__(self, other) -> "RationalFunc":
        other = _as_rational(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "RationalFunc":
        return (-self) + other

    def __mul__(self, other) -> "RationalFunc":
        other = _as_rational(other)
        if other is NotImplemented:
            return other
        if self.den == ONE and other.den == ONE:
            return RationalFunc(self.num * other.num, ONE, _normalized=True)
        return RationalFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunc":
        other = _as_rational(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RationalFunc":
        return _as_rational(other) / self

    def bar(self) -> "RationalFunc":
        return RationalFunc(self.num.bar(), self.den.bar())

    def shift(self, k: int) -> "RationalFunc":
        return RationalFunc(self.num.shift(k), self.den, _normalized=True)

    def __eq__(self, other) -> bool:
        other = _as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def at_sqrt(self, q: int) -> Tuple[Fraction, Fraction]:
        a, b = self.num.at_sqrt(q)
        c, d = self.den.at_sqrt(q)
        # (a + b s)/(c + d s) with s^2 = q
        norm = c * c - d * d * q
        if not norm:
            raise ZeroDivisionError("denominator vanishes at sqrt(q)")
        return (a * c - b * d * q) / norm, (b * c - a * d) / norm

    def __str__(self) -> str:
        if self.den == ONE:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self) -> str:
        return f"RationalFunc({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "RationalFunc":
        text = text.strip()
        if " / " in text:
            a, b = text.split(" / ")
            return cls(LaurentPoly.parse(_unwrap(a)), LaurentPoly.parse(_unwrap(b)))
        return cls.of(LaurentPoly.parse(_unwrap(text)))


def _unwrap(text: str) -> str:
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        return text[1:-1]
    return text


def _as_rational(x):
    if isinstance(x, RationalFunc):
        return x
    if isinstance(x, LaurentPoly):
        return RationalFunc(x, ONE, _normalized=True)
    if isinstance(x, (int, Fraction)):
        return RationalFunc(_as_laurent(x), ONE, _normalized=True)
    return NotImplemented


RZERO = RationalFunc(ZERO, ONE, _normalized=True)
RONE = RationalFunc(ONE, ONE, _normalized=True)


def series_expand(f, order: int) -> List[Fraction]:
    """Coefficients of v^0, v^-1, ..., v^-order in the Q((v^-1)) expansion.

    Terms of positive degree are left out here; ``principal_part`` has them.
    """
    f = _as_rational(f)
    if f is NotImplemented:
        raise TypeError("series_expand needs a rational function")
    if not f:
        return [Fraction(0)] * (order + 1)
    return [c for e, c in _expand(f, order) if e <= 0]


def _expand(f: RationalFunc, order: int) -> List[Tuple[int, Fraction]]:
    num, den = f.num, f.den
    dt = den.degree()
    lc = Fraction(den.leading_coeff())
    top = max(num.degree() - dt, 0)
    # g = num / (lc v^dt), h = den / (lc v^dt) = 1 + h_1 v^-1 + ...
    h = {dt - k: Fraction(c) / lc for k, c in den.items()}  # h[j] is coeff of v^-j
    out: Dict[int, Fraction] = {}
    for e in range(top, -order - 1, -1):
        # coefficient of v^e in num/den: s_e = g_e - sum_{j>=1} h_j s_{e+j}
        s = Fraction(num.coeff(e + dt)) / lc
        for j, hj in h.items():
            if j >= 1 and (e + j) in out:
                s -= hj * out[e + j]
        out[e] = s
    return [(e, out[e]) for e in range(top, -order - 1, -1)]


def principal_part(f) -> Dict[int, Fraction]:
    """Positive-degree terms of the Q((v^-1)) expansion."""
    f = _as_rational(f)
    if not f:
        return {}
    return {e: c for e, c in _expand(f, 0) if e > 0 and c}


class UPoly:
    """Polynomial in u over Q(v); u is the formal symbol v^-p."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        c: Dict[int, RationalFunc] = {}
        if coeffs:
            for k, a in coeffs.items():
                if k < 0:
                    raise ValueError("UPoly degrees are nonnegative")
                a = _as_rational(a)
                if a:
                    c[k] = a
        self._c = c
        self._hash = None

    @classmethod
    def const(cls, a) -> "UPoly":
        return cls({0: a})

    def items(self):
        return self._c.items()

    def coeff(self, k: int) -> RationalFunc:
        return self._c.get(k, RZERO)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def degree(self) -> int:
        return max(self._c) if self._c else -1

    def __add__(self, other) -> "UPoly":
        other = _as_upoly(other)
        c = dict(self._c)
        for k, a in other._c.items():
            s = c[k] + a if k in c else a
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        return UPoly(c)

    __radd__ = __add__

    def __neg__(self) -> "UPoly":
        return UPoly({k: -a for k, a in self._c.items()})

    def __sub__(self, other) -> "UPoly":
        return self + (-_as_upoly(other))

    def __mul__(self, other) -> "UPoly":
        if isinstance(other, (int, Fraction, LaurentPoly, RationalFunc)):
            other = _as_rational(other)
            return UPoly({k: a * other for k, a in self._c.items()})
        other = _as_upoly(other)
        c: Dict[int, RationalFunc] = {}
        for k, a in self._c.items():
            for j, b in other._c.items():
                c[k + j] = c[k + j] + a * b if k + j in c else a * b
        return UPoly(c)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, UPoly):
            return self._c == other._c
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for k in sorted(self._c):
            g = f"[{self._c[k]}]"
            parts.append(g if k == 0 else f"{g}*u" if k == 1 else f"{g}*u^{k}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"UPoly({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "UPoly":
        text = text.strip()
        if text == "0":
            return cls()
        c = {}
        for m in re.finditer(r"\[([^\]]*)\](\*u(?:\^(\d+))?)?", text):
            k = 0 if not m.group(2) else int(m.group(3) or 1)
            c[k] = RationalFunc.parse(m.group(1))
        return cls(c)


def _as_upoly(x) -> UPoly:
    if isinstance(x, UPoly):
        return x
    return UPoly({0: _as_rational(x)})


def u_specialize(g: UPoly, p: int) -> RationalFunc:
    """Substitute u := v^-p."""
    out = RZERO
    for k, a in g.items():
        out = out + a.shift(-p * k)
    return out


def u_limit(g: UPoly) -> RationalFunc:
    """The p -> infinity limit in Q((v^-1)): the u^0 coefficient."""
    return g.coeff(0)


def stable_binomial_factor(c: int) -> UPoly:
    """(1 - u^2 v^{-2c}) / (1 - v^-2)."""
    den = ONE - v(-2)
    return UPoly({0: RationalFunc(ONE, den), 2: RationalFunc(-v(-2 * c), den)})
