"""Acceptance suites A1-A10.

Every suite returns a :class:`SuiteResult`; nothing here asserts.  The test
module and the ``verify`` subcommand both drive these functions, so the
numbers printed by either are the same numbers.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .canon import (
    CanonicalBasis,
    CanonicalFamily,
    NonUnitriangular,
    StabilityNotReached,
    d_stable,
    gs_stable,
    positivity_report,
    stable_presentation,
)
from .coeffring import (
    ONE,
    LaurentPoly,
    RationalFunc,
    bracket_factorial,
    series_expand,
    signed_quantum_integer,
    u_specialize,
    v,
    vinv_integer,
)
from .config import DEFAULT_SEED
from .fqoracle import (
    count_fiber,
    inner_direct,
    inner_direct_transposed,
    interp_q_poly,
    sqrt_q_mul,
    structure_const,
    v_power,
)
from .periodic import (
    PeriodicMatrix,
    col_sums,
    d_stat,
    idem_matrix,
    is_aperiodic,
    matrices_with_mass,
    residue,
    row_sums,
    shift_p,
    transpose,
    unit_root,
)
from .schur import (
    AlgebraElem,
    E,
    F,
    Gen,
    K,
    apply_word,
    basis_norm,
    e_terms,
    inner_basis,
    f_terms,
    inner_fixed,
    inner_presented,
    mult_e,
    mult_e_div,
    mult_f,
    mult_f_div,
    mult_k,
)
from .stab import inner_limit, stable_inner
from .udot import UdotElem, Weight, f_inner, fword_grading, fword_to_minus, phi_D

MAX_FAILURES_KEPT = 10


@dataclass
class SuiteResult:
    name: str
    title: str
    checked: int = 0
    failures: List[str] = field(default_factory=list)
    nfail: int = 0
    details: Dict[str, object] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.nfail == 0 and self.checked > 0

    def record(self, ok: bool, what: Callable[[], str]) -> None:
        self.checked += 1
        if not ok:
            self.nfail += 1
            if len(self.failures) < MAX_FAILURES_KEPT:
                self.failures.append(what())

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"{self.name} {verdict}: {self.title} ({self.checked} checks, {self.nfail} failed, {self.elapsed:.1f}s)"

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "title": self.title,
            "passed": self.passed,
            "checked": self.checked,
            "failed": self.nfail,
            "failures": self.failures,
            "details": {k: str(v) if not isinstance(v, (int, float, bool, list, dict)) else v
                        for k, v in self.details.items()},
            "elapsed": round(self.elapsed, 3),
        }


def _timed(fn):
    def run(*args, **kw) -> SuiteResult:
        t0 = time.perf_counter()
        res = fn(*args, **kw)
        res.elapsed = time.perf_counter() - t0
        return res

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


# --------------------------------------------------------------- helpers

def random_matrix(rng: random.Random, n: int, D: int, max_offset: int = 2) -> PeriodicMatrix:
    """Drop D units at random (row residue, offset) slots; the level is exactly D."""
    diag = [0] * n
    off: Dict[Tuple[int, int], int] = {}
    for _ in range(D):
        i = rng.randint(1, n)
        t = rng.randint(-max_offset, max_offset)
        if t == 0:
            diag[i - 1] += 1
        else:
            off[(i, t)] = off.get((i, t), 0) + 1
    return PeriodicMatrix(n, diag, off)


def generator_matrix(kind: str, i: int, a: Sequence[int]) -> Optional[PeriodicMatrix]:
    """The matrix G with c(G) = a whose basis element is E_i (or F_i) times 1_a."""
    n = len(a)
    if kind == "E":
        moved, entry = residue(i + 1, n), (i, i + 1)
    else:
        moved, entry = residue(i, n), (i + 1, i)
    diag = list(a)
    diag[moved - 1] -= 1
    if min(diag) < 0:
        return None
    return PeriodicMatrix.from_entries(n, {**{(k + 1, k + 1): diag[k] for k in range(n)}, entry: 1})


def a6_matrices(n: int = 2, max_mass: int = 3, max_D: int = 6, max_offset: int = 3) -> List[PeriodicMatrix]:
    """Aperiodic A with off-diagonal mass <= max_mass, |offset| <= max_offset, level <= max_D."""
    out = set()
    for mass in range(max_mass + 1):
        for pat in matrices_with_mass(n, mass, max_offset):
            for rest in range(0, max_D - mass + 1):
                for diag in _compositions(rest, n):
                    A = PeriodicMatrix(n, diag, pat)
                    if A.level() <= max_D and is_aperiodic(A):
                        out.add(A)
    return sorted(out)


def _compositions(total: int, parts: int) -> Iterable[Tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for k in range(total + 1):
        for rest in _compositions(total - k, parts - 1):
            yield (k,) + rest


def _sq_eq(x: Tuple[Fraction, Fraction], y: Tuple[Fraction, Fraction]) -> bool:
    return Fraction(x[0]) == Fraction(y[0]) and Fraction(x[1]) == Fraction(y[1])


def _laurent_at(f: LaurentPoly, q: int) -> Tuple[Fraction, Fraction]:
    return f.at_sqrt(q)


# --------------------------------------------------------------- A1

def _kbracket(i: int, x: AlgebraElem) -> AlgebraElem:
    """(K_i - K_-i)/(v - v^-1) acting on x."""
    root = unit_root(i, x.n)
    return AlgebraElem(x.n, x.D, {A: c * signed_quantum_integer(sum(r * s for r, s in zip(root, row_sums(A))))
                                  for A, c in x.terms.items()})


@_timed
def suite_a1(seed: int = DEFAULT_SEED, samples: int = 200, max_D: int = 6) -> SuiteResult:
    res = SuiteResult("A1", "quantum relations on random basis elements")
    rng = random.Random(seed)
    for n in (2, 3, 4):
        count = samples if n in (2, 3) else samples // 4
        for _ in range(count):
            D = rng.randint(1, max_D)
            A = random_matrix(rng, n, D)
            x = AlgebraElem.basis(A)
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    dot_ij = sum(a * b for a, b in zip(unit_root(i, n), unit_root(j, n)))
                    if n in (2, 3):
                        lhs = mult_e(i, mult_f(j, x)) - mult_f(j, mult_e(i, x))
                        rhs = _kbracket(i, x) if i == j else AlgebraElem.zero(n, D)
                        res.record(lhs == rhs, lambda: f"[E{i},F{j}] on [{A}]")
                        a = tuple(rng.randint(-2, 2) for _ in range(n))
                        lhs = mult_k(a, mult_e(j, mult_k(tuple(-t for t in a), x)))
                        rhs = mult_e(j, x).scale(v(sum(s * t for s, t in zip(a, unit_root(j, n)))))
                        res.record(lhs == rhs, lambda: f"K{a} E{j} K{a}^-1 on [{A}]")
                    if i != j and dot_ij == 0:
                        res.record(mult_e(i, mult_e(j, x)) == mult_e(j, mult_e(i, x)),
                                   lambda: f"E{i}E{j}=E{j}E{i} on [{A}]")
                        res.record(mult_f(i, mult_f(j, x)) == mult_f(j, mult_f(i, x)),
                                   lambda: f"F{i}F{j}=F{j}F{i} on [{A}]")
                        res.record(mult_e(i, mult_f(j, x)) == mult_f(j, mult_e(i, x)),
                                   lambda: f"E{i}F{j}=F{j}E{i} on [{A}]")
                    if n == 3 and i != j:
                        for mult, mult_div, name in ((mult_e, mult_e_div, "E"), (mult_f, mult_f_div, "F")):
                            lhs = (mult_div(i, 2, mult(j, x)) - mult(i, mult(j, mult(i, x)))
                                   + mult(j, mult_div(i, 2, x)))
                            res.record(lhs.is_zero(), lambda: f"Serre {name}{i},{name}{j} on [{A}]")
    return res


# --------------------------------------------------------------- A2

@_timed
def suite_a2(primes: Sequence[int] = (2, 3), max_D: int = 3, max_mass: int = 2) -> SuiteResult:
    """Counted generator structure constants against the multiplication formulas."""
    res = SuiteResult("A2", "oracle structure constants vs multiplication formulas")
    n = 2
    fibers: Dict[Tuple[PeriodicMatrix, int], int] = {}

    def fiber(M: PeriodicMatrix, q: int) -> int:
        if (M, q) not in fibers:
            fibers[(M, q)] = count_fiber(M, q=q)
        return fibers[(M, q)]

    mats = sorted({PeriodicMatrix(n, diag, pat)
                   for mass in range(max_mass + 1) for pat in matrices_with_mass(n, mass, 1)
                   for D in range(1, max_D + 1) for diag in _compositions(D - mass, n) if D >= mass})
    for A in mats:
        for kind in "EF":
            for i in (1, 2):
                G = generator_matrix(kind, i, row_sums(A))
                if G is None:
                    continue
                terms = (e_terms if kind == "E" else f_terms)(i, A)
                for q in primes:
                    total = 0
                    for C, exp, c in terms:
                        expected = (vinv_integer(c) * v(exp + d_stat(G) + d_stat(A) - d_stat(C))).at_sqrt(q)
                        eta = structure_const(G, A, C, q)
                        res.record(_sq_eq(expected, (Fraction(eta), Fraction(0))),
                                   lambda: f"{kind}{i}*[{A}] -> [{C}] at q={q}: formula {expected}, count {eta}")
                        total += eta * fiber(C, q)
                    lhs = fiber(G, q) * fiber(A, q)
                    res.record(lhs == total,
                               lambda: f"completeness {kind}{i}*[{A}] at q={q}: {lhs} != {total}")
    res.details["matrices"] = len(mats)
    return res


# --------------------------------------------------------------- A3

@_timed
def suite_a3(primes: Sequence[int] = (2, 3, 4), interp_primes: Sequence[int] = (2, 3, 4, 5)) -> SuiteResult:
    res = SuiteResult("A3", "inner product adjunction, oracle values, fiber polynomials")
    cases = []
    for n, Dmax in ((2, 3), (3, 2)):
        for D in range(1, Dmax + 1):
            for a in _compositions(D, n):
                for i in range(1, n + 1):
                    cases.append((n, a, i))
    for n, a, i in cases:
        w = (F(i),)
        y = apply_word(w, a)
        val = inner_fixed(w, a, y)
        expect = vinv_integer(a[i - 1])
        res.record(val == expect, lambda: f"(F{i}[i_{a}], F{i}[i_{a}]) = {val}, expected {expect}")
        if not y:
            continue
        (A, c), = y.terms.items()
        for q in primes:
            direct = inner_direct(A, A, q)
            cq = c.at_sqrt(q)
            oracle = sqrt_q_mul(sqrt_q_mul(cq, cq, q), direct, q)
            res.record(_sq_eq(val.at_sqrt(q), oracle),
                       lambda: f"oracle value for F{i}[i_{a}] at q={q}: {oracle} vs {val.at_sqrt(q)}")
    # fiber-count polynomials: degree d_A and leading coefficient 1
    poly_cases = [generator_matrix("F", 1, (2, 1)), generator_matrix("E", 1, (1, 2)),
                  generator_matrix("F", 2, (1, 1)), PeriodicMatrix(2, [0, 0], {(1, 2): 1}),
                  PeriodicMatrix(2, [1, 0], {(1, 1): 2}), PeriodicMatrix(2, [0, 1], {(1, 1): 1, (2, -1): 1}),
                  PeriodicMatrix(3, [1, 0, 0], {(1, 1): 1}), PeriodicMatrix(2, [1, 1], {(2, -1): 1})]
    degrees = {}
    for A in poly_cases:
        counts = [(q, count_fiber(A, q=q)) for q in interp_primes]
        d = d_stat(A)
        try:
            poly = interp_q_poly(counts, min(d + 1, len(counts) - 1))
        except ValueError as exc:
            res.record(False, lambda: f"interpolation for [{A}] failed: {exc}")
            continue
        degrees[str(A)] = [str(c) for c in poly]
        res.record(len(poly) - 1 == d and poly[-1] == 1,
                   lambda: f"|X_A| polynomial for [{A}] is {poly}, expected degree {d} monic")
    res.details["polynomials"] = degrees
    # the closed-form norm used by Gram-Schmidt, against direct counts
    small = [A for A in a6_matrices(max_D=3, max_offset=2) if A.offdiag_mass() <= 2]
    for A in small:
        for q in primes[:2]:
            direct = inner_direct(A, A, q)
            res.record(_sq_eq(basis_norm(A).at_sqrt(q), direct),
                       lambda: f"([{A}], [{A}]) at q={q}: closed form {basis_norm(A)} vs count {direct}")
    res.details["norm_checks"] = len(small)
    return res


# --------------------------------------------------------------- A4

def _random_word(rng: random.Random, n: int, length: int) -> Tuple[Gen, ...]:
    out = []
    for _ in range(length):
        r = rng.random()
        i = rng.randint(1, n)
        if r < 0.4:
            out.append(E(i, rng.choice((1, 1, 2))))
        elif r < 0.8:
            out.append(F(i, rng.choice((1, 1, 2))))
        else:
            a = [rng.randint(-1, 1) for _ in range(n - 1)]
            out.append(K(*a, -sum(a)))
    return tuple(out)


def _word_shift(w, n) -> Tuple[int, ...]:
    tot = [0] * n
    for g in w:
        for k, x in enumerate(g.weight_shift(n)):
            tot[k] += x
    return tuple(tot)


@_timed
def suite_a4(seed: int = DEFAULT_SEED, pairs: int = 50, extra_p: int = 3) -> SuiteResult:
    res = SuiteResult("A4", "stable inner product specializes to the fixed-D inner product")
    rng = random.Random(seed + 4)
    nonzero = 0
    for _ in range(pairs):
        n = rng.choice((2, 3))
        w1 = _random_word(rng, n, rng.randint(0, 4))
        w2 = _random_word(rng, n, rng.randint(0, 4))
        lam2 = Weight(tuple(rng.randint(0, 2) for _ in range(n)))
        lam1 = lam2.shifted(tuple(a - b for a, b in zip(_word_shift(w2, n), _word_shift(w1, n))))
        sv = stable_inner(w1, lam1, w2, lam2)
        a1, a2 = lam1.base_rep(), lam2.base_rep()
        for p in range(sv.p0, sv.p0 + extra_p):
            b1 = tuple(x + p for x in a1)
            b2 = tuple(x + p for x in a2)
            if min(b1) < 0 or min(b2) < 0:
                res.record(False, lambda: f"p0={sv.p0} too small for {lam1}, {lam2}")
                continue
            fixed = inner_fixed(w1, b1, apply_word(w2, b2))
            spec = u_specialize(sv.value, p)
            nonzero += bool(fixed)
            res.record(spec.is_laurent() and spec.to_laurent() == fixed,
                       lambda: f"<{w1} 1_{lam1}, {w2} 1_{lam2}> at p={p}: stable {spec}, fixed {fixed}")
    res.details["nonzero_values"] = nonzero
    return res


# --------------------------------------------------------------- A5

def fwords(n: int, max_total: int) -> List[Tuple[Tuple[int, int], ...]]:
    """All words in divided powers θ_i^(m) with total degree <= max_total."""
    out = [()]
    frontier = [((), 0)]
    while frontier:
        nxt = []
        for w, tot in frontier:
            for i in range(1, n + 1):
                for m in range(1, max_total - tot + 1):
                    if w and w[-1][0] == i:
                        continue  # θ_i^(a) θ_i^(b) is a multiple of θ_i^(a+b)
                    ww = w + ((i, m),)
                    out.append(ww)
                    nxt.append((ww, tot + m))
        frontier = nxt
    return out


A5_WEIGHTS = {2: [(0, 0), (1, 0), (0, 3)], 3: [(0, 0, 0), (2, 0, 1), (0, 1, 3)]}


@_timed
def suite_a5(max_total: int = 3) -> SuiteResult:
    res = SuiteResult("A5", "limit inner product on f-words equals the form on f")
    for n in (2, 3):
        words = fwords(n, max_total)
        by_grade: Dict[Tuple[int, ...], list] = {}
        for w in words:
            by_grade.setdefault(fword_grading(w, n), []).append(w)
        for grade, ws in by_grade.items():
            for x, y in itertools.combinations_with_replacement(ws, 2):
                expect = f_inner(x, y, n)
                seen = []
                for lam in A5_WEIGHTS[n]:
                    got = inner_limit(UdotElem.monomial(fword_to_minus(x), lam),
                                      UdotElem.monomial(fword_to_minus(y), lam))
                    seen.append(got)
                    res.record(got == expect, lambda: f"n={n} {x} vs {y} at λ={lam}: {got} != {expect}")
                res.record(all(s == seen[0] for s in seen), lambda: f"n={n} {x} vs {y}: λ-dependence {seen}")
    return res


# --------------------------------------------------------------- A6 - A9

# pairs per suite whose fast pairing is recomputed by adjoint peeling
CROSSCHECK_PAIRS = 60

A6_WITNESS = (PeriodicMatrix(2, [0, 1], {(1, 2): 1}), PeriodicMatrix(2, [0, 0], {(1, 1): 1, (2, 1): 1}))


@_timed
def suite_a6(basis: Optional[CanonicalBasis] = None, max_D: int = 6) -> SuiteResult:
    res = SuiteResult("A6", "canonical expansions: top coefficient 1, lower terms in v^-1 N[v^-1]")
    basis = basis or CanonicalBasis()
    mats = a6_matrices(max_D=max_D)
    for A in mats:
        try:
            elem = basis.get(A)
        except Exception as exc:  # reported, not raised: one failure must not hide the others
            res.record(False, lambda: f"{{{A}}}: {type(exc).__name__}: {exc}")
            continue
        checks = elem.checks()
        res.record(all(checks.values()),
                   lambda: f"{{{A}}}: {[k for k, ok in checks.items() if not ok]}")
    Bp, Aper = A6_WITNESS
    expect = AlgebraElem(2, Bp.level(), {Bp: ONE, Aper: v(-1)})
    got = basis.get(Bp).expansion
    res.record(got == expect, lambda: f"witness {{{Bp}}} = {got}")
    res.details["elements"] = len(mats)
    return res


@_timed
def suite_a7(basis: Optional[CanonicalBasis] = None, max_D: int = 6) -> SuiteResult:
    res = SuiteResult("A7", "monomial presentations agree at D and D+n")
    basis = basis or CanonicalBasis()
    unstable = []
    for A in a6_matrices(max_D=max_D):
        try:
            ok = d_stable(A, basis)
        except Exception as exc:
            res.record(False, lambda: f"{{{A}}}: {type(exc).__name__}: {exc}")
            continue
        if not ok:
            unstable.append(A)
        res.record(ok, lambda: f"{{{A}}} at D={A.level()} vs D+{A.n}: presentations differ")
    # how far up the recursion has to go before the presentation settles, and
    # whether the settled presentation already gives {A} at A's own level
    settle = {}
    reproduces = 0
    for A in unstable:
        try:
            fam = gs_stable(A, basis=basis)
            settle[str(A)] = fam.levels[0]
        except StabilityNotReached:
            settle[str(A)] = None
        upper = stable_presentation(basis.get(shift_p(A, 1)))
        x = UdotElem({k: RationalFunc.of(c) for k, c in upper.items()})
        if phi_D(x, A.level(), A.n) == basis.get(A).expansion:
            reproduces += 1
    res.details["unstable"] = len(unstable)
    res.details["unstable_but_D_plus_n_presentation_gives_A_at_D"] = reproduces
    res.details["settles_at"] = settle
    return res


@_timed
def suite_a8(basis: Optional[CanonicalBasis] = None, max_D: int = 6) -> SuiteResult:
    res = SuiteResult("A8", "almost orthonormality of canonical elements")
    basis = basis or CanonicalBasis()
    groups: Dict[tuple, List[PeriodicMatrix]] = {}
    for A in a6_matrices(max_D=max_D):
        groups.setdefault((row_sums(A), col_sums(A)), []).append(A)
    crosschecked = 0
    for mats in groups.values():
        elems = {A: basis.get(A) for A in mats}
        for A in mats:
            for B in mats:
                val = inner_basis(elems[A].expansion, elems[B].expansion)
                rest = val - ONE if A == B else val
                res.record(rest.in_vinv_Z(), lambda: f"({{{A}}}, {{{B}}}) = {val}")
                # the closed-form pairing against the adjoint-peeling one, on a sample
                if crosschecked < CROSSCHECK_PAIRS and len(mats) > 1:
                    crosschecked += 1
                    peeled = inner_presented(elems[A].presentation, elems[B].expansion)
                    res.record(peeled == val, lambda: f"({{{A}}}, {{{B}}}): {peeled} by peeling vs {val}")
    res.details["peeling_crosschecks"] = crosschecked
    return res


def _families(basis: CanonicalBasis, max_D: int) -> Dict[PeriodicMatrix, CanonicalFamily]:
    fams: Dict[PeriodicMatrix, CanonicalFamily] = {}
    for A in a6_matrices(max_D=max_D):
        base = shift_p(A, -min(A.diag))
        if base not in fams:
            fams[base] = gs_stable(base, basis=basis)
    return fams


@_timed
def suite_a9(basis: Optional[CanonicalBasis] = None, order: int = 20, max_D: int = 6) -> SuiteResult:
    res = SuiteResult("A9", "positivity of the limit inner product on canonical families")
    basis = basis or CanonicalBasis()
    try:
        fams = _families(basis, max_D)
    except StabilityNotReached as exc:
        res.record(False, lambda: f"family construction: {exc}")
        return res
    groups: Dict[tuple, List[CanonicalFamily]] = {}
    for base, fam in fams.items():
        key = (Weight(row_sums(base)), Weight(col_sums(base)))
        groups.setdefault(key, []).append(fam)
    table = []
    crosschecked = 0
    for fs in groups.values():
        for b1, b2 in itertools.combinations_with_replacement(fs, 2):
            rep = positivity_report(b1, b2, order)
            res.record(rep.verdict, lambda: f"<{{{b1.base}}}, {{{b2.base}}}> = {rep.value}: {rep.series}")
            if crosschecked < CROSSCHECK_PAIRS:
                crosschecked += 1
                peeled = inner_limit(b1.as_udot(), b2.as_udot())
                res.record(peeled == rep.value,
                           lambda: f"<{{{b1.base}}}, {{{b2.base}}}>: {peeled} by peeling vs {rep.value}")
            if len(table) < 12:
                table.append({"b1": str(b1.base), "b2": str(b2.base), "series": [str(c) for c in rep.series]})
    # the F_i family pairs to 1/(1 - v^-2) = 1 + v^-2 + v^-4 + ...
    f_fam = gs_stable(generator_matrix("F", 1, (1, 1)), basis=basis)
    rep = positivity_report(f_fam, f_fam, order)
    expect = [Fraction(1 - k % 2) for k in range(order + 1)]
    res.record(rep.series == expect, lambda: f"<F_1, F_1> series {rep.series}")
    res.details["families"] = len(fams)
    res.details["peeling_crosschecks"] = crosschecked
    res.details["table"] = table
    return res


# --------------------------------------------------------------- A10

def _sq_pow(k: int, q: int) -> Tuple[Fraction, Fraction]:
    return v_power(k, q)


def a10_triples(limit: int = 20, q: int = 2, zero_share: int = 4
                ) -> List[Tuple[PeriodicMatrix, PeriodicMatrix, PeriodicMatrix, int]]:
    """Small (A, B, C, η) at n = 2, D = 2 with compatible sums.

    Triples are scanned in a fixed order; ones with a nonzero count are kept
    preferentially so that the check is not dominated by 0 = 0.
    """
    n, D = 2, 2
    mats = sorted({PeriodicMatrix(n, diag, pat) for mass in range(D + 1) for pat in matrices_with_mass(n, mass, 1)
                   for diag in _compositions(D - mass, n)})
    wide = sorted({PeriodicMatrix(n, diag, pat) for mass in range(D + 1) for pat in matrices_with_mass(n, mass, 2)
                   for diag in _compositions(D - mass, n)})
    nonzero, zero = [], []
    for A in mats:
        if A.is_diagonal():
            continue
        for B in mats:
            if B.is_diagonal() or col_sums(A) != row_sums(B):
                continue
            for C in wide:
                if row_sums(C) != row_sums(A) or col_sums(C) != col_sums(B):
                    continue
                if len(nonzero) >= limit - zero_share and len(zero) >= zero_share:
                    return nonzero + zero
                eta = structure_const(A, B, C, q)
                if eta and len(nonzero) < limit - zero_share:
                    nonzero.append((A, B, C, eta))
                elif not eta and len(zero) < zero_share:
                    zero.append((A, B, C, eta))
    return nonzero + zero


@_timed
def suite_a10(q: int = 2) -> SuiteResult:
    res = SuiteResult("A10", "Ψ reverses products; (,) vs (,)^t relation")
    nonzero = 0
    for A, B, C, eta in a10_triples(q=q):
        At, Bt, Ct = transpose(A), transpose(B), transpose(C)
        eta_t = structure_const(Bt, At, Ct, q)
        nonzero += bool(eta)
        lhs = sqrt_q_mul(_sq_pow(d_stat(C) - d_stat(A) - d_stat(B), q), (Fraction(eta), Fraction(0)), q)
        rhs = sqrt_q_mul(_sq_pow(d_stat(Ct) - d_stat(At) - d_stat(Bt), q), (Fraction(eta_t), Fraction(0)), q)
        res.record(_sq_eq(lhs, rhs), lambda: f"[{A}][{B}] at [{C}]: {lhs} vs Ψ side {rhs}")
    res.details["nonzero_triples"] = nonzero
    # v^{Σb²}/[[b]]! (f, f)_D = v^{Σa²}/[[a]]! (f, f)^t_D for f = [A], a = r(A), b = c(A)
    tiny = [generator_matrix("F", 1, (1, 1)), generator_matrix("E", 2, (2, 1)),
            PeriodicMatrix(2, [1, 0], {(1, 1): 1}), PeriodicMatrix(2, [0, 0], {(1, 2): 1}),
            PeriodicMatrix(3, [0, 1, 0], {(1, 1): 1})]
    literal_off = []
    for A in tiny:
        a, b = row_sums(A), col_sums(A)
        for qq in (2, 3):
            left = sqrt_q_mul(_ratio(sum(x * x for x in b), b, qq), inner_direct(A, A, qq), qq)
            right = sqrt_q_mul(_ratio(sum(x * x for x in a), a, qq), inner_direct_transposed(A, A, qq), qq)
            res.record(_sq_eq(left, right), lambda: f"iprelation for [{A}] at q={qq}: {left} vs {right}")
            # the same relation with (f, f)^t replaced by ([A^t], [A^t])
            lit = sqrt_q_mul(_ratio(sum(x * x for x in a), a, qq), inner_direct(transpose(A), transpose(A), qq), qq)
            if not _sq_eq(left, lit):
                literal_off.append(f"[{A}] q={qq}")
    res.details["relation_with_[A]->[A^t]_fails_for"] = literal_off
    return res


def _ratio(k: int, a: Sequence[int], q: int) -> Tuple[Fraction, Fraction]:
    """v^k / [[a]]! at v = sqrt(q)."""
    num = v_power(k, q)
    den, odd = bracket_factorial(a).at_sqrt(q)
    assert odd == 0
    return num[0] / den, num[1] / den


SUITES: Dict[str, Callable[..., SuiteResult]] = {
    "A1": suite_a1,
    "A2": suite_a2,
    "A3": suite_a3,
    "A4": suite_a4,
    "A5": suite_a5,
    "A6": suite_a6,
    "A7": suite_a7,
    "A8": suite_a8,
    "A9": suite_a9,
    "A10": suite_a10,
}
