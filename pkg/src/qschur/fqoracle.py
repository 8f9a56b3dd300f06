"""Brute-force point counting over F_q for periodic lattice chains.

Lattices are modelled inside the window W = ε^-m L0 / ε^m L0, where L0 is
the standard lattice k[[ε]]^D.  W has basis ε^k e_d with -m <= k < m and
1 <= d <= D, and every lattice between ε^m L0 and ε^-m L0 is an ε-stable
subspace of W.  Counts are therefore exact as long as every lattice that
matters fits in the window; ``WindowTooSmall`` is raised when one does not.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .coeffring import LaurentPoly
from .periodic import PeriodicMatrix, col_sums, d_stat, residue, row_sums, transpose

DEFAULT_BUDGET = 10 ** 6


class WindowTooSmall(RuntimeError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class RepresentativeMismatch(AssertionError):
    pass


class InconsistentCounts(ValueError):
    pass


# ------------------------------------------------------------------ fields

class GF:
    """Finite field with q in {2, 3, 4, 5, 7}; elements are 0..q-1."""

    _cache: Dict[int, "GF"] = {}

    def __new__(cls, q: int):
        if q in cls._cache:
            return cls._cache[q]
        self = super().__new__(cls)
        if q in (2, 3, 5, 7):
            self.add = [[(a + b) % q for b in range(q)] for a in range(q)]
            self.mul = [[(a * b) % q for b in range(q)] for a in range(q)]
        elif q == 4:
            # GF(2)[x]/(x^2 + x + 1); element b1*x + b0 is the integer 2*b1 + b0
            self.add = [[a ^ b for b in range(4)] for a in range(4)]

            def m(a, b):
                r = 0
                for k in range(2):
                    if b >> k & 1:
                        r ^= a << k
                if r & 4:
                    r ^= 0b111
                return r

            self.mul = [[m(a, b) for b in range(4)] for a in range(4)]
        else:
            raise ValueError(f"unsupported field size {q}")
        self.q = q
        self.neg = [next(b for b in range(q) if self.add[a][b] == 0) for a in range(q)]
        self.inv = [0] + [next(b for b in range(q) if self.mul[a][b] == 1) for a in range(1, q)]
        cls._cache[q] = self
        return self

    def axpy(self, a: int, x: Sequence[int], y: Sequence[int]) -> List[int]:
        """y + a*x."""
        ma, ad = self.mul[a], self.add
        return [ad[yi][ma[xi]] for xi, yi in zip(x, y)]


def rref(F: GF, rows: Sequence[Sequence[int]]) -> Tuple[Tuple[int, ...], ...]:
    """Reduced row echelon form (pivots left to right), zero rows dropped."""
    mat = [list(r) for r in rows]
    out: List[List[int]] = []
    if not mat:
        return ()
    ncol = len(mat[0])
    r = 0
    for c in range(ncol):
        piv = next((k for k in range(r, len(mat)) if mat[k][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = F.inv[mat[r][c]]
        mat[r] = [F.mul[inv][x] for x in mat[r]]
        for k in range(len(mat)):
            if k != r and mat[k][c]:
                mat[k] = F.axpy(F.neg[mat[k][c]], mat[r], mat[k])
        r += 1
        if r == len(mat):
            break
    out = [tuple(row) for row in mat[:r]]
    return tuple(out)


def rank(F: GF, rows: Sequence[Sequence[int]]) -> int:
    return len(rref(F, rows))


# ------------------------------------------------------------------ window

@dataclass(frozen=True)
class Window:
    q: int
    D: int
    m: int

    @property
    def dim(self) -> int:
        return 2 * self.m * self.D

    def idx(self, k: int, d: int) -> int:
        return (k + self.m) * self.D + (d - 1)

    def kd(self, idx: int) -> Tuple[int, int]:
        k, d = divmod(idx, self.D)
        return k - self.m, d + 1

    @property
    def field(self) -> GF:
        return GF(self.q)

    def eps(self, U: Tuple[Tuple[int, ...], ...]) -> Tuple[Tuple[int, ...], ...]:
        """ε·U; needs U ⊇ ε^(m-1) L0 so that the result still contains ε^m L0."""
        D = self.D
        tail = self.dim - D
        for d in range(1, D + 1):
            if not _contains(self.field, U, _unit(self.dim, self.idx(self.m - 1, d))):
                raise WindowTooSmall("ε-shift leaves the window at the bottom")
        rows = [(0,) * D + r[:tail] for r in U]
        return rref(self.field, rows)

    def eps_inv(self, U: Tuple[Tuple[int, ...], ...]) -> Tuple[Tuple[int, ...], ...]:
        """ε^-1·U; needs U ⊆ ε^(1-m) L0."""
        D = self.D
        for r in U:
            if any(r[:D]):
                raise WindowTooSmall("ε^-1-shift leaves the window at the top")
        rows = [r[D:] + (0,) * D for r in U]
        rows += [_unit(self.dim, self.idx(self.m - 1, d)) for d in range(1, D + 1)]
        return rref(self.field, rows)


def _unit(N: int, i: int) -> Tuple[int, ...]:
    return tuple(1 if k == i else 0 for k in range(N))


def _reduce(F: GF, U: Sequence[Sequence[int]], x: Sequence[int]) -> List[int]:
    """x minus its projection along the RREF rows of U (zero iff x lies in U)."""
    x = list(x)
    for r in U:
        c = next(k for k, val in enumerate(r) if val)
        if x[c]:
            x = F.axpy(F.neg[x[c]], r, x)
    return x


def _contains(F: GF, U, x) -> bool:
    return not any(_reduce(F, U, x))


def block_of(a: Sequence[int]) -> List[int]:
    """l(d) = min{l : a_1 + ... + a_l >= d}, for d = 1..D."""
    out = []
    for l, ai in enumerate(a, start=1):
        out.extend([l] * ai)
    return out


def pos(a: Sequence[int], k: int, d: int) -> int:
    """Smallest i with ε^k e_d in the standard chain member L0_i of type a."""
    n = len(a)
    return block_of(a)[d - 1] - (k + 1) * n


@lru_cache(maxsize=4096)
def _standard_member(W: "Window", a: Tuple[int, ...], i: int) -> Tuple[Tuple[int, ...], ...]:
    rows = [_unit(W.dim, W.idx(k, d)) for k in range(-W.m, W.m) for d in range(1, W.D + 1)
            if pos(a, k, d) <= i]
    return rref(W.field, rows)


class LatticeChainRep:
    """An n-step periodic chain L_1 ⊆ ... ⊆ L_n inside a window, with L_{i-n} = ε L_i."""

    def __init__(self, window: Window, n: int, members: Sequence[Tuple[Tuple[int, ...], ...]],
                 standard_type: Optional[Tuple[int, ...]] = None):
        self.window = window
        self.n = n
        self.members = tuple(members)
        self.standard_type = standard_type
        self._cache: Dict[int, Tuple[Tuple[int, ...], ...]] = {}
        self._pivots: Dict[int, Dict[int, Sequence[int]]] = {}
        dims = [len(U) for U in self.members]
        lower = len(window.eps(self.members[-1])) if standard_type is None else dims[-1] - window.D
        self.type = tuple(dims[0] - lower if i == 0 else dims[i] - dims[i - 1] for i in range(n))

    @classmethod
    def standard(cls, window: Window, a: Sequence[int]) -> "LatticeChainRep":
        a = tuple(a)
        if sum(a) != window.D:
            raise ValueError("type does not sum to D")
        n = len(a)
        members = []
        for i in range(1, n + 1):
            rows = [_unit(window.dim, window.idx(k, d))
                    for k in range(-window.m, window.m) for d in range(1, window.D + 1)
                    if pos(a, k, d) <= i]
            members.append(rref(window.field, rows))
        return cls(window, n, members, a)

    def member(self, i: int) -> Tuple[Tuple[int, ...], ...]:
        if i in self._cache:
            return self._cache[i]
        W = self.window
        if self.standard_type is not None:
            lo = -W.m * self.n
            if not lo <= i <= W.m * self.n:
                raise WindowTooSmall(f"L_{i} of the standard chain is outside the window")
            U = _standard_member(W, self.standard_type, i)
        else:
            r = residue(i, self.n)
            shift = (i - r) // self.n
            U = self.members[r - 1]
            for _ in range(max(shift, 0)):
                U = W.eps_inv(U)
            for _ in range(max(-shift, 0)):
                U = W.eps(U)
        self._cache[i] = U
        return U

    def pivots(self, i: int) -> Dict[int, Sequence[int]]:
        if i not in self._pivots:
            self._pivots[i] = _pivot_table(self.member(i))
        return self._pivots[i]

    def key(self):
        return self.members

    def __eq__(self, other) -> bool:
        return isinstance(other, LatticeChainRep) and self.members == other.members

    def __hash__(self) -> int:
        return hash(self.members)


def _pivot_table(U) -> Dict[int, Sequence[int]]:
    """Pivot column -> row, for U in reduced echelon form."""
    return {next(k for k, x in enumerate(r) if x): r for r in U}


def _extension_rank(F: GF, pivots: Dict[int, Sequence[int]], V) -> int:
    """dim(U + V) - dim U, with U given by its pivot table."""
    pivots = dict(pivots)
    extra = 0
    for r in V:
        r = list(r)
        for c in range(len(r)):
            x = r[c]
            if not x:
                continue
            if c in pivots:
                r = F.axpy(F.neg[x], pivots[c], r)
                continue
            inv = F.inv[x]
            pivots[c] = [F.mul[inv][y] for y in r]
            extra += 1
            break
    return extra


def _meet_dim(F: GF, U, V) -> int:
    return len(V) - _extension_rank(F, _pivot_table(U), V)


def relative_position(L: LatticeChainRep, Lp: LatticeChainRep) -> PeriodicMatrix:
    """The matrix A with a_ij = dim(L_i ∩ L'_j) quotiented by the two smaller intersections."""
    W = L.window
    if W != Lp.window or L.n != Lp.n:
        raise ValueError("chains live in different windows")
    n, F = L.n, W.field
    span = W.m * n
    levels = range(-span, span + 1)
    tables: Dict[int, Optional[Dict[int, Sequence[int]]]] = {}
    for i in levels:
        try:
            tables[i] = L.pivots(i)
        except WindowTooSmall:
            tables[i] = None
    # meets[jj][i] = dim(L_i ∩ L'_jj); once L_i contains L'_jj it stays that way
    meets: List[Dict[int, int]] = []
    for jj in range(n + 1):
        V = Lp.member(jj)
        row: Dict[int, int] = {}
        full = False
        for i in levels:
            if tables[i] is None:
                continue
            row[i] = len(V) if full else len(V) - _extension_rank(F, tables[i], V)
            full = row[i] == len(V)
        meets.append(row)
    entries: Dict[Tuple[int, int], int] = {}
    for j in range(1, n + 1):
        cur, prev = meets[j], meets[j - 1]
        for i in levels:
            if i not in cur or i - 1 not in cur:
                continue
            a = cur[i] - cur[i - 1] - prev[i] + prev[i - 1]
            if a:
                entries[(i, j)] = a
    A = PeriodicMatrix.from_entries(n, entries)
    if row_sums(A) != L.type or col_sums(A) != Lp.type:
        raise WindowTooSmall("relative position not resolved inside the window")
    return A


# ------------------------------------------------------------ enumeration

def window_for(*mats: PeriodicMatrix) -> int:
    """Window radius m large enough for lattices at band distance from the standard chain."""
    n = mats[0].n
    w = max(M.band() for M in mats)
    return -(-(n + w) // n) + 1


class Budget:
    """Counter of enumerated candidates with a hard cap."""

    def __init__(self, cap: int):
        self.cap = cap
        self.used = 0

    def tick(self, k: int = 1) -> None:
        self.used += k
        if self.used > self.cap:
            raise BudgetExceeded(f"enumeration budget of {self.cap} candidates exceeded")


def _corner_below(A: PeriodicMatrix, i: int, j: int) -> int:
    """sum over i' <= i, j' > j of a_{i'j'} (finite thanks to the band)."""
    w = A.band()
    tot = 0
    for ip in range(j - w + 1, i + 1):
        for jp in range(max(j + 1, ip - w), ip + w + 1):
            tot += A.entry(ip, jp)
    return tot


def _solve_affine(F: GF, cols: List[List[int]], rhs: List[int]) -> Optional[Tuple[List[int], List[List[int]]]]:
    """Solve sum_f x_f cols[f] = rhs. Returns (particular, nullspace basis) or None."""
    nv = len(cols)
    neq = len(rhs)
    aug = [[cols[f][e] for f in range(nv)] + [rhs[e]] for e in range(neq)]
    R = rref(F, aug)
    pivots = []
    for row in R:
        c = next(k for k, val in enumerate(row) if val)
        if c == nv:
            return None
        pivots.append(c)
    part = [0] * nv
    for row, c in zip(R, pivots):
        part[c] = row[nv]
    free = [f for f in range(nv) if f not in pivots]
    null = []
    for f in free:
        vec = [0] * nv
        vec[f] = 1
        for row, c in zip(R, pivots):
            vec[c] = F.neg[row[f]]
        null.append(vec)
    return part, null


def _affine_points(F: GF, part, null) -> Iterator[List[int]]:
    for coeffs in itertools.product(range(F.q), repeat=len(null)):
        x = list(part)
        for c, vec in zip(coeffs, null):
            if c:
                x = F.axpy(c, vec, x)
        yield x


def _lattices_in_cell(W: Window, a: Sequence[int], counts: Dict[int, int], budget: Budget) -> Iterator[tuple]:
    """ε-stable subspaces of W whose pivot counts per pos-level of type a are ``counts``."""
    F = W.field
    N = W.dim
    n = len(a)
    levels: Dict[int, List[int]] = {}
    for k in range(-W.m, W.m):
        for d in range(1, W.D + 1):
            levels.setdefault(pos(a, k, d), []).append(W.idx(k, d))
    order = sorted(levels)  # ascending pos: fill lowest level first
    # descending-pos column ordering: position in ordering -> later means "to the right"
    rank_of = {}
    for r, lvl in enumerate(sorted(levels, reverse=True)):
        for c in sorted(levels[lvl]):
            rank_of[c] = (r, c)

    def eps_col(c: int) -> Optional[int]:
        k, d = W.kd(c)
        return W.idx(k + 1, d) if k + 1 < W.m else None

    def reduce(rows, pivs, x):
        x = list(x)
        for r, c in zip(rows, pivs):
            if x[c]:
                x = F.axpy(F.neg[x[c]], r, x)
        return x

    def rec(li: int, rows: List[Tuple[int, ...]], pivs: List[int]):
        if li == len(order):
            yield tuple(rows)
            return
        lvl = order[li]
        need = counts.get(lvl, 0)
        below = set(pivs)
        for chosen in itertools.combinations(sorted(levels[lvl]), need):
            # ε maps pivots of this level onto pivots one period lower
            if any(eps_col(c) is not None and eps_col(c) not in below for c in chosen):
                continue
            yield from fill(li, list(chosen)[::-1], rows, pivs, below | set(chosen))

    def fill(li: int, todo: List[int], rows, pivs, pivset: set):
        if not todo:
            yield from rec(li + 1, rows, pivs)
            return
        c = todo[0]
        free = [f for f in range(N) if f not in pivset and rank_of[f] > rank_of[c]]
        # ε(row) must lie in the span of the rows already present
        base = reduce(rows, pivs, _shift_vec(W, _unit(N, c)))
        colvecs = [reduce(rows, pivs, _shift_vec(W, _unit(N, f))) for f in free]
        sol = _solve_affine(F, colvecs, [F.neg[x] for x in base])
        if sol is None:
            return
        part, null = sol
        for x in _affine_points(F, part, null):
            budget.tick()
            row = [0] * N
            row[c] = 1
            for f, val in zip(free, x):
                row[f] = val
            yield from fill(li, todo[1:], rows + [tuple(row)], pivs + [c], pivset)

    yield from rec(0, [], [])


def _shift_vec(W: Window, x: Sequence[int]) -> Tuple[int, ...]:
    D = W.D
    return (0,) * D + tuple(x[: W.dim - D])


@lru_cache(maxsize=None)
def _subspaces(q: int, dim: int, k: int) -> Tuple[Tuple[Tuple[int, ...], ...], ...]:
    """All k-dimensional subspaces of F_q^dim, as RREF row tuples."""
    F = GF(q)
    out = []
    for pivots in itertools.combinations(range(dim), k):
        free_slots = [(r, c) for r, p in enumerate(pivots) for c in range(p + 1, dim) if c not in pivots]
        for vals in itertools.product(range(q), repeat=len(free_slots)):
            rows = [[0] * dim for _ in range(k)]
            for r, p in enumerate(pivots):
                rows[r][p] = 1
            for (r, c), val in zip(free_slots, vals):
                rows[r][c] = val
            out.append(tuple(tuple(r) for r in rows))
    return tuple(out)


def _in_span(F: GF, U, x) -> bool:
    return _contains(F, rref(F, U), x)


def enumerate_fiber(A: PeriodicMatrix, L: LatticeChainRep, budget: int = DEFAULT_BUDGET,
                    tracker: Optional[Budget] = None) -> List[LatticeChainRep]:
    """All chains L' in the window with relative_position(L, L') == A."""
    if L.standard_type is None:
        raise ValueError("enumerate_fiber needs a standard chain as base point")
    if row_sums(A) != L.type:
        raise ValueError(f"r(A) = {row_sums(A)} does not match the chain type {L.type}")
    W, n, F = L.window, L.n, L.window.field
    bud = tracker or Budget(budget)
    a = L.standard_type
    ctype = col_sums(A)
    span = W.m * n
    upper = max((t for _, t in A.offdiag() if t > 0), default=0)
    lower = max((-t for _, t in A.offdiag() if t < 0), default=0)
    if upper > span or lower > span - n:
        raise WindowTooSmall(f"window m={W.m} too small for the band of {A}")

    def ind(i: int) -> int:
        return len(L.member(i))

    # pivot counts of L'_n per pos-level of the standard chain
    counts: Dict[int, int] = {}
    prev = 0
    for lvl in range(-span + 1, span + 1):
        target = ind(lvl) - _corner_below(A, lvl, n)
        counts[lvl] = target - prev
        prev = target
        if counts[lvl] < 0:
            raise WindowTooSmall("inconsistent pivot counts")
    out = []
    dims = [sum(ctype[:j]) for j in range(1, n)]
    for Un in _lattices_in_cell(W, a, counts, bud):
        Un = rref(F, Un)
        eU = W.eps(Un)
        comp = []
        acc = list(eU)
        for r in Un:
            if not _in_span(F, acc, r):
                comp.append(r)
                acc.append(r)
        if len(comp) != W.D:
            raise WindowTooSmall("quotient L'_n / ε L'_n has the wrong dimension")
        for flag in _flags(W.q, W.D, dims):
            bud.tick()
            members = []
            for V in flag:
                rows = list(eU) + _combo(F, V, comp)
                members.append(rref(F, rows))
            members.append(Un)
            Lp = LatticeChainRep(W, n, members)
            if Lp.type != ctype:
                continue
            if relative_position(L, Lp) == A:
                out.append(Lp)
    return out


def _combo(F: GF, V, comp) -> List[Tuple[int, ...]]:
    rows = []
    for coeffs in V:
        vec = [0] * len(comp[0])
        for c, b in zip(coeffs, comp):
            if c:
                vec = F.axpy(c, b, vec)
        rows.append(tuple(vec))
    return rows


def _flags(q: int, D: int, dims: Sequence[int]) -> Iterator[List[tuple]]:
    """Chains of subspaces V_1 ⊆ ... ⊆ V_k of F_q^D with the given dimensions."""
    F = GF(q)

    def rec(k: int, prev):
        if k == len(dims):
            yield []
            return
        for V in _subspaces(q, D, dims[k]):
            if prev is not None and not all(_contains(F, V, r) for r in prev):
                continue
            for rest in rec(k + 1, V):
                yield [V] + rest

    yield from rec(0, None)


def count_fiber(A: PeriodicMatrix, L: Optional[LatticeChainRep] = None, q: int = 2,
                m: Optional[int] = None, budget: int = DEFAULT_BUDGET,
                tracker: Optional[Budget] = None, confirm_window: bool = False) -> int:
    """|X_A^L| for the standard chain L of type r(A) (or the given standard L).

    With ``confirm_window`` the count is repeated with the window radius one
    larger, and a disagreement raises :class:`WindowTooSmall`.
    """
    if L is None:
        L = LatticeChainRep.standard(Window(q, A.level(), m or window_for(A)), row_sums(A))
    cnt = len(enumerate_fiber(A, L, budget, tracker))
    if confirm_window:
        W = L.window
        bigger = LatticeChainRep.standard(Window(W.q, W.D, W.m + 1), L.standard_type)
        again = len(enumerate_fiber(A, bigger, budget, tracker))
        if again != cnt:
            raise WindowTooSmall(f"count changes from {cnt} to {again} when the window grows to m={W.m + 1}")
    return cnt


def structure_const(A: PeriodicMatrix, B: PeriodicMatrix, C: PeriodicMatrix, q: int,
                    m: Optional[int] = None, budget: int = DEFAULT_BUDGET, representatives: int = 2,
                    tracker: Optional[Budget] = None) -> int:
    """η^C_{A,B}(q): #{L' : (L, L') in O_A, (L', L'') in O_B} for a fixed (L, L'') in O_C."""
    if col_sums(A) != row_sums(B) or row_sums(A) != row_sums(C) or col_sums(B) != col_sums(C):
        raise ValueError("incompatible row/column sums")
    D = A.level()
    m = m or window_for(A, B, C)
    W = Window(q, D, m)
    L = LatticeChainRep.standard(W, row_sums(C))
    bud = tracker or Budget(budget)
    fiber_C = enumerate_fiber(C, L, tracker=bud)
    if not fiber_C:
        raise ValueError("empty orbit in the window")
    fiber_A = enumerate_fiber(A, L, tracker=bud)
    picks = [fiber_C[0], fiber_C[-1], fiber_C[len(fiber_C) // 2]][:max(1, representatives)]
    counts = []
    for Lpp in picks:
        cnt = 0
        for Lp in fiber_A:
            bud.tick()
            if relative_position(Lp, Lpp) == B:
                cnt += 1
        counts.append(cnt)
    if len(set(counts)) != 1:
        raise RepresentativeMismatch(f"counts differ between representatives: {counts}")
    return counts[0]


def interp_q_poly(counts: Sequence[Tuple[int, int]], degree_bound: int) -> List[Fraction]:
    """Coefficients c_0..c_d of the unique polynomial of degree <= bound through the points."""
    pts = sorted(set((int(q), Fraction(val)) for q, val in counts))
    if len({q for q, _ in pts}) != len(pts):
        raise InconsistentCounts("two different values for the same q")
    if len(pts) < degree_bound + 1:
        raise ValueError(f"need {degree_bound + 1} points, got {len(pts)}")
    use = pts[: degree_bound + 1]
    # Newton divided differences, then expand into the monomial basis
    xs = [Fraction(q) for q, _ in use]
    coef = [val for _, val in use]
    for j in range(1, len(xs)):
        for i in range(len(xs) - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)]
    for i in range(len(xs) - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        new = [Fraction(0)] * (len(poly) + 1)
        for k, c in enumerate(poly):
            new[k + 1] += c
            new[k] -= c * xs[i]
        new[0] += coef[i]
        poly = new
    while len(poly) > 1 and not poly[-1]:
        poly.pop()
    for q, val in pts[degree_bound + 1:]:
        if sum(c * Fraction(q) ** k for k, c in enumerate(poly)) != val:
            raise InconsistentCounts(f"value at q={q} does not fit a polynomial of degree <= {degree_bound}")
    return poly


def inner_direct(A: PeriodicMatrix, Ap: PeriodicMatrix, q: int, m: Optional[int] = None,
                 budget: int = DEFAULT_BUDGET) -> Tuple[Fraction, Fraction]:
    """([A], [A'])_D at v = sqrt(q), as (a, b) meaning a + b*sqrt(q)."""
    if A != Ap:
        return Fraction(0), Fraction(0)
    At = transpose(A)
    cnt = count_fiber(At, q=q, m=m, budget=budget)
    return Fraction(cnt) / Fraction(q) ** d_stat(At), Fraction(0)


def inner_direct_transposed(A: PeriodicMatrix, Ap: PeriodicMatrix, q: int, m: Optional[int] = None,
                            budget: int = DEFAULT_BUDGET) -> Tuple[Fraction, Fraction]:
    """([A], [A'])^t_D at v = sqrt(q): orbit representatives in the first factor, all chains in the second.

    This is the form obtained by transposing functions, f^t(L, L') = f(L', L),
    so the weight v^(sum |L|^2 - sum |L'|^2) is transposed along with the pair.
    """
    if A != Ap:
        return Fraction(0), Fraction(0)
    cnt = count_fiber(A, q=q, m=m, budget=budget)
    a, b = row_sums(A), col_sums(A)
    k = sum(x * x for x in b) - sum(x * x for x in a) - 2 * d_stat(A)
    scale = v_power(k, q)
    return scale[0] * cnt, scale[1] * cnt


# ------------------------------------------------------- value helpers

def sqrt_q_mul(x: Tuple[Fraction, Fraction], y: Tuple[Fraction, Fraction], q: int) -> Tuple[Fraction, Fraction]:
    return x[0] * y[0] + x[1] * y[1] * q, x[0] * y[1] + x[1] * y[0]


def v_power(k: int, q: int) -> Tuple[Fraction, Fraction]:
    """v^k at v = sqrt(q)."""
    return LaurentPoly({k: 1}).at_sqrt(q)
