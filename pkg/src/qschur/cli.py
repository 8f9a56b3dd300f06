"""Command-line front end: ``qschur <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 enumeration budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from .canon import CanonicalBasis, MonomialNotFound, StabilityNotReached, gs_stable
from .coeffring import RationalFunc
from .config import ConfigError, load_config
from .fqoracle import (
    Budget,
    BudgetExceeded,
    LatticeChainRep,
    Window,
    WindowTooSmall,
    count_fiber,
    structure_const,
    window_for,
)
from .periodic import PeriodicMatrix, row_sums
from .schur import (
    GenWord,
    WordSyntaxError,
    apply_word,
    format_word,
    inner_words,
    parse_word,
    word_from_json,
    word_to_json,
)
from .stab import inner_limit_words
from .udot import Weight
from .verify import SUITES

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

log = logging.getLogger("qschur")


class UsageError(Exception):
    pass


# ------------------------------------------------------------ input parsing

def read_matrix(spec: str) -> PeriodicMatrix:
    """A matrix given as a JSON file, inline JSON, or text like ``diag(1,0) + 1*E^{1,2}``."""
    text = spec
    if not spec.lstrip().startswith(("{", "diag")) and Path(spec).exists():
        text = Path(spec).read_text()
    text = text.strip()
    try:
        if text.startswith("{"):
            return PeriodicMatrix.from_json(json.loads(text))
        return PeriodicMatrix.parse(text)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read matrix {spec!r}: {exc}") from exc


def read_word(text: Optional[str], path: Optional[str]) -> GenWord:
    """Parse a word; errors carry line and column numbers."""
    if path:
        lines = Path(path).read_text().splitlines()
        src = [(k + 1, ln.split("#", 1)[0]) for k, ln in enumerate(lines)]
    else:
        src = [(1, text or "")]
    out: List = []
    for lineno, line in src:
        try:
            out.extend(parse_word(line))
        except WordSyntaxError as exc:
            raise UsageError(f"line {lineno}, column {exc.col + 1}: {exc}") from exc
    return tuple(out)


def read_vector(text: str, what: str) -> tuple:
    try:
        return tuple(int(x) for x in text.replace("(", "").replace(")", "").split(","))
    except ValueError as exc:
        raise UsageError(f"bad {what} {text!r}; expected comma-separated integers") from exc


def _check_n(n: Optional[int], got: int) -> None:
    if n is not None and n != got:
        raise UsageError(f"--n {n} does not match the input (n = {got})")


def _emit(obj, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(text)


# ------------------------------------------------------------ commands

def cmd_mult(args) -> int:
    word = read_word(args.word, args.word_file)
    a = read_vector(args.idempotent, "idempotent")
    _check_n(args.n, len(a))
    if args.D is not None and args.D != sum(a):
        raise UsageError(f"--D {args.D} does not match the idempotent (sum {sum(a)})")
    x = apply_word(word, a)
    _emit({"word": word_to_json(word), "idempotent": list(a), "result": x.to_json()},
          args.json, str(x))
    return EXIT_OK


def cmd_inner(args) -> int:
    w1 = read_word(args.w1, None)
    w2 = read_word(args.w2, None)
    a1, a2 = read_vector(args.a1, "weight"), read_vector(args.a2, "weight")
    if len(a1) != len(a2) or sum(a1) != sum(a2):
        raise UsageError("both idempotents must have the same n and D")
    _check_n(args.n, len(a1))
    val = inner_words(w1, a1, w2, a2)
    _emit({"value": str(val), "D": sum(a1)}, args.json, str(val))
    return EXIT_OK


def cmd_inner_limit(args) -> int:
    w1 = read_word(args.w1, None)
    w2 = read_word(args.w2, None)
    l1, l2 = Weight(read_vector(args.lam1, "weight")), Weight(read_vector(args.lam2, "weight"))
    if l1.n != l2.n:
        raise UsageError("weights have different lengths")
    _check_n(args.n, l1.n)
    val: RationalFunc = inner_limit_words(w1, l1, w2, l2)
    _emit({"value": str(val)}, args.json, str(val))
    return EXIT_OK


def cmd_canon(args) -> int:
    A = read_matrix(args.matrix)
    _check_n(args.n, A.n)
    if args.D is not None and args.D != A.level():
        raise UsageError(f"--D {args.D} does not match the matrix (level {A.level()})")
    basis = CanonicalBasis(args.cache_dir)
    if args.stable:
        fam = gs_stable(A, basis=basis)
        pres = sorted(((format_word(w), str(lam), str(c)) for (w, lam), c in fam.presentation.items()))
        obj = {"base": str(fam.base), "levels": list(fam.levels),
               "presentation": [{"word": w, "weight": lam, "coeff": c} for w, lam, c in pres]}
        text = [f"{{{fam.base}}} stable from D={fam.levels[0]}"]
        text += [f"  ({c}) {w} 1_{lam}" for w, lam, c in pres]
        _emit(obj, args.json, "\n".join(text))
        return EXIT_OK
    elem = basis.get(A)
    checks = elem.checks()
    obj = elem.to_json()
    obj["checks"] = checks
    lines = [f"{{{A}}} at D={elem.D}:", str(elem.expansion), "presentation:"]
    for item in obj["presentation"]:
        lines.append(f"  ({item['coeff']}) {format_word(word_from_json(item['word']))} [i_{tuple(item['weight'])}]")
    lines.append("checks: " + ", ".join(f"{k}={'ok' if ok else 'FAILED'}" for k, ok in checks.items()))
    _emit(obj, args.json, "\n".join(lines))
    return EXIT_OK if all(checks.values()) else EXIT_FAIL


def cmd_oracle(args, cfg) -> int:
    tracker = Budget(cfg.budget)
    if args.oracle_cmd == "count":
        A = read_matrix(args.matrix)
        _check_n(args.n, A.n)
        m = args.window or cfg.window or window_for(A)
        L = LatticeChainRep.standard(Window(args.q, A.level(), m), row_sums(A))
        cnt = count_fiber(A, L, q=args.q, budget=cfg.budget, tracker=tracker,
                          confirm_window=not args.no_window_check)
        obj = {"count": cnt, "q": args.q, "window": m, "budget_used": tracker.used}
    else:
        A, B, C = read_matrix(args.A), read_matrix(args.B), read_matrix(args.C)
        m = args.window or cfg.window
        eta = structure_const(A, B, C, args.q, m=m, budget=cfg.budget, tracker=tracker)
        obj = {"structure_constant": eta, "q": args.q, "window": m or window_for(A, B, C),
               "budget_used": tracker.used}
    _emit(obj, True, "")
    return EXIT_OK


def cmd_verify(args, cfg) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    basis = CanonicalBasis(cfg.cache_dir)
    results = []
    for name in names:
        fn = SUITES[name]
        kw = {}
        if name in ("A1", "A4"):
            kw["seed"] = cfg.seed
        if name in ("A6", "A7", "A8", "A9"):
            kw["basis"] = basis
        if name == "A9":
            kw["order"] = args.order if args.order is not None else cfg.order
        res = fn(**kw)
        results.append(res)
        if not args.json:
            print(res.line(), flush=True)
            for f in res.failures:
                print(f"    {f}")
            if name == "A9" and res.details.get("table"):
                for row in res.details["table"]:
                    print(f"    <{{{row['b1']}}}, {{{row['b2']}}}>: " + " ".join(row["series"]))
    if args.json:
        print(json.dumps([r.to_json() for r in results], indent=2, sort_keys=True))
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# ------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qschur", description=__doc__.split("\n")[0],
                                formatter_class=argparse.RawDescriptionHelpFormatter,
                                epilog="Exit codes: 0 ok, 1 verification failure, 2 usage, 3 budget exceeded.")
    p.add_argument("--config", help="JSON or TOML file with n, D, window, primes, budget, order, cache_dir, seed")
    p.add_argument("--seed", type=int, help="seed for randomized suites")
    p.add_argument("--budget", type=int, help="cap on enumerated candidates in the oracle")
    p.add_argument("--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    sub = p.add_subparsers(dest="cmd", required=True)

    m = sub.add_parser("mult", help="apply a generator word to an idempotent [i_a]")
    m.add_argument("--word", help="word such as 'E1^(2) F2 K(1,-1)'; the rightmost symbol acts first")
    m.add_argument("--word-file", help="file holding the word (may span lines, '#' starts a comment)")
    m.add_argument("--idempotent", "-a", required=True, help="weight a, e.g. 1,0")
    m.add_argument("--n", type=int)
    m.add_argument("--D", type=int)
    m.add_argument("--json", action="store_true")

    i = sub.add_parser("inner", help="fixed-level form (w1[i_a1], w2[i_a2])_D")
    i.add_argument("--w1", required=True)
    i.add_argument("--a1", required=True)
    i.add_argument("--w2", required=True)
    i.add_argument("--a2", required=True)
    i.add_argument("--n", type=int)
    i.add_argument("--json", action="store_true")

    il = sub.add_parser("inner-limit", help="limit form <w1 1_lam1, w2 1_lam2> in Q(v)")
    il.add_argument("--w1", required=True)
    il.add_argument("--lam1", required=True)
    il.add_argument("--w2", required=True)
    il.add_argument("--lam2", required=True)
    il.add_argument("--n", type=int)
    il.add_argument("--json", action="store_true")

    c = sub.add_parser("canon", help="canonical basis element {A}")
    c.add_argument("-A", "--matrix", required=True, help="matrix JSON file, inline JSON, or text form")
    c.add_argument("--n", type=int)
    c.add_argument("--D", type=int)
    c.add_argument("--stable", action="store_true", help="report the p-independent monomial presentation")
    c.add_argument("--cache-dir", default=os.environ.get("QSCHUR_CACHE"),
                   help="on-disk cache directory (default: $QSCHUR_CACHE)")
    c.add_argument("--json", action="store_true")

    o = sub.add_parser("oracle", help="finite-field lattice-chain counts")
    osub = o.add_subparsers(dest="oracle_cmd", required=True)
    oc = osub.add_parser("count", help="|X_A^L| for the standard chain L of type r(A)")
    oc.add_argument("-A", "--matrix", required=True)
    oc.add_argument("--q", type=int, default=2)
    oc.add_argument("--n", type=int)
    oc.add_argument("--D", type=int)
    oc.add_argument("--window", type=int)
    oc.add_argument("--no-window-check", action="store_true", help="skip the recount with a larger window")
    os_ = osub.add_parser("struct", help="structure constant η^C_{A,B}(q)")
    os_.add_argument("-A", required=True)
    os_.add_argument("-B", required=True)
    os_.add_argument("-C", required=True)
    os_.add_argument("--q", type=int, default=2)
    os_.add_argument("--window", type=int)

    v = sub.add_parser("verify", help="run an acceptance suite")
    v.add_argument("suite", choices=list(SUITES) + ["all"])
    v.add_argument("--order", type=int, help="series order for A9")
    v.add_argument("--json", action="store_true")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=args.log_level, format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = load_config(args.config, seed=args.seed, budget=args.budget,
                          cache_dir=getattr(args, "cache_dir", None))
        if args.cmd == "mult":
            return cmd_mult(args)
        if args.cmd == "inner":
            return cmd_inner(args)
        if args.cmd == "inner-limit":
            return cmd_inner_limit(args)
        if args.cmd == "canon":
            args.cache_dir = cfg.cache_dir
            return cmd_canon(args)
        if args.cmd == "oracle":
            if args.q not in (2, 3, 4, 5, 7):
                raise UsageError(f"unsupported q={args.q}; use 2, 3, 4, 5 or 7")
            return cmd_oracle(args, cfg)
        return cmd_verify(args, cfg)
    except (UsageError, ConfigError) as exc:
        print(f"qschur: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"qschur: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (WindowTooSmall, MonomialNotFound, StabilityNotReached) as exc:
        print(f"qschur: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"qschur: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
