"""Combinatorics of n-periodic vectors and matrices.

A periodic matrix satisfies a[i][j] == a[i+n][j+n].  We store it by row
residue ``i`` in ``1..n`` and offset ``t = j - i``, so periodicity is never
something that has to be checked.
"""
from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

PeriodicVec = Tuple[int, ...]


def residue(i: int, n: int) -> int:
    """Representative of ``i`` mod ``n`` in ``1..n``."""
    return (i - 1) % n + 1


def unit_root(i: int, n: int) -> PeriodicVec:
    """The vector 𝐢: +1 in position i, -1 in position i+1 (both mod n)."""
    out = [0] * n
    out[residue(i, n) - 1] += 1
    out[residue(i + 1, n) - 1] -= 1
    return tuple(out)


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def in_S_Dn(a: Sequence[int], D: int) -> bool:
    return all(x >= 0 for x in a) and sum(a) == D


class PeriodicMatrix:
    """Immutable n-periodic integer matrix with finitely many nonzero bands."""

    __slots__ = ("n", "diag", "_off", "_key", "_hash")

    def __init__(self, n: int, diag: Sequence[int], offdiag: Mapping[Tuple[int, int], int] | None = None):
        if n < 1:
            raise ValueError("period must be positive")
        if len(diag) != n:
            raise ValueError(f"expected {n} diagonal entries, got {len(diag)}")
        off: Dict[Tuple[int, int], int] = {}
        for (i, t), val in (offdiag or {}).items():
            if t == 0:
                raise ValueError("offset 0 belongs to the diagonal")
            if val:
                key = (residue(i, n), t)
                off[key] = off.get(key, 0) + val
                if not off[key]:
                    del off[key]
        self.n = n
        self.diag = tuple(int(d) for d in diag)
        self._off = off
        self._key = (n, self.diag, tuple(sorted(off.items())))
        self._hash = hash(self._key)

    # construction -----------------------------------------------------
    @classmethod
    def diagonal(cls, a: Sequence[int]) -> "PeriodicMatrix":
        return cls(len(a), a)

    @classmethod
    def from_entries(cls, n: int, entries: Mapping[Tuple[int, int], int]) -> "PeriodicMatrix":
        """Build from absolute positions (i, j); repeated residues add up."""
        diag = [0] * n
        off: Dict[Tuple[int, int], int] = {}
        for (i, j), val in entries.items():
            if i == j:
                diag[residue(i, n) - 1] += val
            else:
                key = (residue(i, n), j - i)
                off[key] = off.get(key, 0) + val
        return cls(n, diag, off)

    # access -----------------------------------------------------------
    def entry(self, i: int, j: int) -> int:
        r = residue(i, self.n)
        t = j - i
        if t == 0:
            return self.diag[r - 1]
        return self._off.get((r, t), 0)

    __getitem__ = lambda self, ij: self.entry(*ij)

    def offdiag(self) -> Dict[Tuple[int, int], int]:
        return dict(self._off)

    def offdiag_items(self) -> Iterable[Tuple[Tuple[int, int], int]]:
        return self._key[2]

    def band(self) -> int:
        """Largest |offset| carrying a nonzero entry (0 for diagonal matrices)."""
        return max((abs(t) for _, t in self._off), default=0)

    def is_diagonal(self) -> bool:
        return not self._off

    def offdiag_mass(self) -> int:
        return sum(self._off.values())

    def is_nonnegative(self) -> bool:
        return all(d >= 0 for d in self.diag) and all(x >= 0 for x in self._off.values())

    def in_S_nn(self) -> bool:
        """Membership in 𝔖^{n,n}: off-diagonal entries nonnegative."""
        return all(x >= 0 for x in self._off.values())

    def level(self) -> int:
        """D = sum of a row-sum window, i.e. sum of r(A)."""
        return sum(row_sums(self))

    def in_S_Dnn(self, D: int) -> bool:
        return self.is_nonnegative() and self.level() == D

    # updates ----------------------------------------------------------
    def add_entries(self, changes: Mapping[Tuple[int, int], int]) -> "PeriodicMatrix":
        """Return A + sum(val * E^{i,j}) for absolute positions (i, j)."""
        diag = list(self.diag)
        off = dict(self._off)
        for (i, j), val in changes.items():
            r = residue(i, self.n)
            t = j - i
            if t == 0:
                diag[r - 1] += val
            else:
                off[(r, t)] = off.get((r, t), 0) + val
        return PeriodicMatrix(self.n, diag, off)

    # comparison -------------------------------------------------------
    def __eq__(self, other) -> bool:
        return isinstance(other, PeriodicMatrix) and self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    def sort_key(self):
        return self._key

    def __lt__(self, other: "PeriodicMatrix") -> bool:
        return self._key < other._key

    # text -------------------------------------------------------------
    def __str__(self) -> str:
        s = "diag(" + ",".join(str(d) for d in self.diag) + ")"
        for (i, t), val in self._key[2]:
            s += f" + {val}*E^{{{i},{i + t}}}"
        return s

    def __repr__(self) -> str:
        return f"PeriodicMatrix({str(self)!r})"

    def to_json(self) -> dict:
        return {"n": self.n, "diag": list(self.diag),
                "offdiag": [[i, t, val] for (i, t), val in self._key[2]]}

    @classmethod
    def from_json(cls, obj) -> "PeriodicMatrix":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(int(obj["n"]), obj["diag"], {(int(i), int(t)): int(val) for i, t, val in obj.get("offdiag", [])})

    @classmethod
    def parse(cls, text: str) -> "PeriodicMatrix":
        """Inverse of ``str``: ``diag(1,0) + 1*E^{1,3}``."""
        parts = [p.strip() for p in text.split(" + ")]
        m = re.fullmatch(r"diag\(([-\d,\s]*)\)", parts[0])
        if not m:
            raise ValueError(f"bad matrix text {text!r}")
        diag = [int(x) for x in m.group(1).split(",")]
        n = len(diag)
        off: Dict[Tuple[int, int], int] = {}
        for p in parts[1:]:
            m = re.fullmatch(r"(-?\d+)\*E\^\{(-?\d+),(-?\d+)\}", p)
            if not m:
                raise ValueError(f"bad matrix term {p!r}")
            val, i, j = (int(g) for g in m.groups())
            off[(i, j - i)] = off.get((i, j - i), 0) + val
        return cls(n, diag, off)


def idem_matrix(a: Sequence[int]) -> PeriodicMatrix:
    """𝐢_𝐚, the diagonal matrix with entries a."""
    return PeriodicMatrix.diagonal(tuple(a))


def row_sums(A: PeriodicMatrix) -> PeriodicVec:
    out = list(A.diag)
    for (i, _), val in A.offdiag_items():
        out[i - 1] += val
    return tuple(out)


def col_sums(A: PeriodicMatrix) -> PeriodicVec:
    out = list(A.diag)
    for (i, t), val in A.offdiag_items():
        out[residue(i + t, A.n) - 1] += val
    return tuple(out)


def transpose(A: PeriodicMatrix) -> PeriodicMatrix:
    # a^t_{j, i} = a_{i, j}: entry at (i, i+t) moves to (i+t, i)
    return PeriodicMatrix(A.n, A.diag, {(i + t, -t): val for (i, t), val in A.offdiag_items()})


def shift_p(A: PeriodicMatrix, p: int) -> PeriodicMatrix:
    """_pA: add p to every diagonal entry."""
    return PeriodicMatrix(A.n, [d + p for d in A.diag], A.offdiag())


def d_stat(A: PeriodicMatrix) -> int:
    """d_A = sum over 1 <= i <= n, all j, of a_ij * sum_{k <= i, l > j} a_kl."""
    n, w = A.n, A.band()
    total = 0
    for i in range(1, n + 1):
        for j in range(i - w, i + w + 1):
            a = A.entry(i, j)
            if not a:
                continue
            corner = 0
            for k in range(j + 1 - w, i + 1):
                for l in range(max(j + 1, k - w), k + w + 1):
                    corner += A.entry(k, l)
            total += a * corner
    return total


def d_stat_bruteforce(A: PeriodicMatrix, radius: Optional[int] = None) -> int:
    """Truncated double sum, used as an independent oracle in tests."""
    n = A.n
    radius = radius if radius is not None else A.band() + n + 1
    total = 0
    for i in range(1, n + 1):
        for j in range(i - radius, i + radius + 1):
            a = A.entry(i, j)
            if not a:
                continue
            for k in range(i - 2 * radius - n, i + 1):
                for l in range(j + 1, j + 2 * radius + n + 1):
                    total += a * A.entry(k, l)
    return total


# ---------------------------------------------------------------- order

def corner_sum_upper(A: PeriodicMatrix, i: int, j: int) -> int:
    """sum_{r <= i, s >= j} a_{r,s}, for j > i (only strictly upper entries count)."""
    if j <= i:
        raise ValueError("upper corner needs j > i")
    total = 0
    for (r0, t), val in A.offdiag_items():
        if t <= 0:
            continue
        # rows r = r0 + kn with j - t <= r <= i
        lo, hi = j - t, i
        total += val * _count_residue(r0, A.n, lo, hi)
    return total


def corner_sum_lower(A: PeriodicMatrix, i: int, j: int) -> int:
    """sum_{r >= i, s <= j} a_{r,s}, for i > j."""
    if i <= j:
        raise ValueError("lower corner needs i > j")
    total = 0
    for (r0, t), val in A.offdiag_items():
        if t >= 0:
            continue
        lo, hi = i, j - t
        total += val * _count_residue(r0, A.n, lo, hi)
    return total


def _count_residue(r0: int, n: int, lo: int, hi: int) -> int:
    """Number of r in [lo, hi] with r = r0 mod n."""
    if hi < lo:
        return 0
    return (hi - r0) // n - (lo - 1 - r0) // n


def preceq(A: PeriodicMatrix, B: PeriodicMatrix) -> bool:
    """A ≼ B: every off-diagonal corner sum of A is at most that of B."""
    if A.n != B.n:
        raise ValueError("period mismatch")
    w = max(A.band(), B.band())
    for i in range(1, A.n + 1):
        for j in range(i + 1, i + w + 1):
            if corner_sum_upper(A, i, j) > corner_sum_upper(B, i, j):
                return False
        for j in range(i - w, i):
            if corner_sum_lower(A, i, j) > corner_sum_lower(B, i, j):
                return False
    return True


def enumerate_interval(A: PeriodicMatrix) -> List[PeriodicMatrix]:
    """All B in 𝔖_{D,n,n} with B ≼ A, r(B) = r(A) and c(B) = c(A).

    Off-diagonal entries are assigned depth first, each bounded by the
    matching corner sum of A; the diagonal is then forced by the row sums.
    Returned sorted, A included.
    """
    n, w = A.n, A.band()
    r, c = row_sums(A), col_sums(A)
    slots = [(i, t) for i in range(1, n + 1) for t in range(-w, w + 1) if t]
    bounds = []
    for i, t in slots:
        bounds.append(corner_sum_upper(A, i, i + t) if t > 0 else corner_sum_lower(A, i, i + t))
    out: List[PeriodicMatrix] = []
    cur: Dict[Tuple[int, int], int] = {}
    rowload = [0] * n

    def rec(k: int) -> None:
        if k == len(slots):
            diag = [r[i] - rowload[i] for i in range(n)]
            B = PeriodicMatrix(n, diag, cur)
            if col_sums(B) == c and preceq(B, A):
                out.append(B)
            return
        i, t = slots[k]
        cap = min(bounds[k], r[i - 1] - rowload[i - 1])
        for val in range(cap, -1, -1):
            if val:
                cur[(i, t)] = val
            rowload[i - 1] += val
            rec(k + 1)
            rowload[i - 1] -= val
            cur.pop((i, t), None)

    rec(0)
    return sorted(out)


def is_aperiodic(A: PeriodicMatrix) -> bool:
    """For each nonzero offset t, some row k has a_{k,k+t} = 0."""
    offsets = {t for _, t in A.offdiag()}
    for t in offsets:
        if all(A.entry(k, k + t) for k in range(1, A.n + 1)):
            return False
    return True


def split_pm(A: PeriodicMatrix) -> Tuple[PeriodicMatrix, PeriodicMatrix]:
    """(A_upper, A_lower), so that A_upper * A_lower has leading term A.

    A_upper keeps i < j with a_ii = sum_{j <= i} a_ij; A_lower keeps i > j
    with a_ii = sum_{k <= i} a_ki.
    """
    n = A.n
    up_off = {k: v for k, v in A.offdiag_items() if k[1] > 0}
    lo_off = {k: v for k, v in A.offdiag_items() if k[1] < 0}
    up_diag = list(A.diag)
    lo_diag = list(A.diag)
    for (i, t), val in A.offdiag_items():
        if t < 0:
            up_diag[i - 1] += val
        else:
            lo_diag[residue(i + t, n) - 1] += val
    return PeriodicMatrix(n, up_diag, up_off), PeriodicMatrix(n, lo_diag, lo_off)


# -------------------------------------------------------------- tableaux

@dataclass(frozen=True)
class Tableau:
    """Multiplicities mu[(t, p)] of the indecomposables V_{t,p}, t a residue."""

    n: int
    mult: Tuple[Tuple[Tuple[int, int], int], ...] = ()

    @classmethod
    def from_dict(cls, n: int, d: Mapping[Tuple[int, int], int]) -> "Tableau":
        clean: Dict[Tuple[int, int], int] = {}
        for (t, p), m in d.items():
            if p < 1 or m < 0:
                raise ValueError("tableau needs p >= 1 and nonnegative multiplicities")
            if m:
                key = (residue(t, n), p)
                clean[key] = clean.get(key, 0) + m
        return cls(n, tuple(sorted(clean.items())))

    def as_dict(self) -> Dict[Tuple[int, int], int]:
        return dict(self.mult)

    def dimension_vector(self) -> PeriodicVec:
        nu = [0] * self.n
        for (t, p), m in self.mult:
            for j in range(t, t + p):
                nu[residue(j, self.n) - 1] += m
        return tuple(nu)


def matrix_from_triple(mu: Tableau, rho: Tableau, lam: Sequence[int]) -> PeriodicMatrix:
    """A(b1, b2, λ): a_ij = mu_{i,j-i} above, rho_{j,i-j} below, λ-corrected diagonal."""
    n = len(lam)
    diag = list(lam)
    off: Dict[Tuple[int, int], int] = {}
    for (i, p), m in mu.mult:
        off[(i, p)] = m
        diag[i - 1] -= m
    for (j, p), m in rho.mult:
        # a_{j+p, j} = rho_{j,p}, stored in row residue of j+p with offset -p
        off[(residue(j + p, n), -p)] = m
        diag[residue(j, n) - 1] -= m
    return PeriodicMatrix(n, diag, off)


def tableau_of_upper(A: PeriodicMatrix) -> Tableau:
    return Tableau.from_dict(A.n, {(i, t): v for (i, t), v in A.offdiag_items() if t > 0})


def tableau_of_lower(A: PeriodicMatrix) -> Tableau:
    return Tableau.from_dict(A.n, {(i + t, -t): v for (i, t), v in A.offdiag_items() if t < 0})


def matrices_with_mass(n: int, mass: int, max_offset: int) -> Iterator[Dict[Tuple[int, int], int]]:
    """All off-diagonal patterns (row residue, offset) -> value with total ``mass``."""
    slots = [(i, t) for i in range(1, n + 1) for t in range(-max_offset, max_offset + 1) if t]
    for combo in itertools.combinations_with_replacement(range(len(slots)), mass):
        pat: Dict[Tuple[int, int], int] = {}
        for k in combo:
            pat[slots[k]] = pat.get(slots[k], 0) + 1
        yield pat
