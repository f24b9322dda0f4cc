"""Command-line front end.

    patternwait expect      --config coin.json --pattern HH --pattern HTTH [--verify] [--json]
    patternwait conditional --config coin.json --pattern HH --given H [--json]
    patternwait simulate    --config coin.json --pattern HH --trials 1000000 --seed 7
    patternwait identities  --config coin.json --max-len 6 --n 8 [--json]

Exit codes: 0 success, 2 config error, 3 --verify mismatch, 4 identity failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Sequence, TextIO

from . import identities as ids
from .oracles import hitting_time_oracle, monte_carlo
from .waiting import conditional, decimal_hint, expected_waiting_time
from .words import Alphabet, Distribution, DistributionError, Word, WordError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_MISMATCH = 3
EXIT_IDENTITY = 4

DEFAULT_SEED = 20261017


class ConfigError(Exception):
    pass


def rational(q: Fraction) -> str:
    """Always ``num/den`` so the string parses straight back with ``Fraction``."""
    return f"{q.numerator}/{q.denominator}"


def load_config(source: str, stdin: TextIO | None = None) -> tuple[Alphabet, Distribution]:
    try:
        if source == "-":
            doc = json.load(stdin if stdin is not None else sys.stdin)
        else:
            with open(source, encoding="utf-8") as fh:
                doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {source!r}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    return parse_config(doc)


def parse_config(doc: Any) -> tuple[Alphabet, Distribution]:
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    symbols = doc.get("alphabet")
    probs = doc.get("probabilities")
    if not isinstance(symbols, list) or not all(isinstance(s, str) for s in symbols):
        raise ConfigError("'alphabet' must be a list of strings")
    if not isinstance(probs, list):
        raise ConfigError("'probabilities' must be a list")
    if len(symbols) != len(probs):
        raise ConfigError(f"{len(symbols)} symbols but {len(probs)} probabilities")
    try:
        return Alphabet(tuple(symbols)), Distribution(tuple(probs))
    except (WordError, DistributionError) as exc:
        raise ConfigError(str(exc)) from None


def _parse_word(alphabet: Alphabet, text: str) -> Word:
    try:
        return alphabet.parse(text)
    except WordError as exc:
        raise ConfigError(str(exc)) from None


# -- subcommands ------------------------------------------------------------


def cmd_expect(alphabet, d, args, out) -> int:
    if not args.pattern:
        raise ConfigError("expect needs at least one --pattern")
    results = []
    status = EXIT_OK
    for text in args.pattern:
        w = _parse_word(alphabet, text)
        rep = expected_waiting_time(w, d)
        item = {
            "pattern": alphabet.format(w),
            "word": list(w),
            "p_w": rational(rep.p_w),
            "expectation": rational(rep.expectation),
            "decimal": rep.decimal_hint,
            "chain": [{"word": alphabet.format(v), "term": rational(t)} for v, t in rep.chain],
            "chain_terms": [rational(t) for _, t in rep.chain],
        }
        if args.verify:
            oracle = hitting_time_oracle(w, d) if w else Fraction(0)
            item["oracle"] = rational(oracle)
            item["agrees"] = oracle == rep.expectation
            if not item["agrees"]:
                status = EXIT_MISMATCH
        results.append(item)

    if args.json:
        _dump({"command": "expect", **_dist_json(alphabet, d), "results": results}, out)
    else:
        for item in results:
            terms = ", ".join(_short(t) for t in item["chain_terms"])
            chain = " -> ".join([c["word"] for c in item["chain"]] + ["(empty)"])
            print(f"pattern      {_show(item['pattern'])}", file=out)
            print(f"p(w)         {item['p_w']}", file=out)
            print(f"E(w)         {item['expectation']}  (~{item['decimal']})", file=out)
            print(f"border chain {chain}", file=out)
            print(f"chain terms  [{terms}]", file=out)
            if args.verify:
                print(f"oracle       {item['oracle']}  agrees={str(item['agrees']).lower()}", file=out)
            print(file=out)
    return status


def cmd_conditional(alphabet, d, args, out) -> int:
    if not args.pattern or len(args.pattern) != 1:
        raise ConfigError("conditional needs exactly one --pattern")
    w = _parse_word(alphabet, args.pattern[0])
    given = _parse_word(alphabet, args.given or "")
    if not w:
        raise ConfigError("conditional needs a nonempty --pattern")
    res = conditional(w, given, d)
    item = {
        "command": "conditional",
        **_dist_json(alphabet, d),
        "pattern": alphabet.format(w),
        "given": alphabet.format(given),
        "value": rational(res.value),
        "decimal": decimal_hint(res.value),
        "state": res.state,
        "occurred": res.occurred,
    }
    if args.json:
        _dump(item, out)
    else:
        print(f"E({_show(item['pattern'])} | {_show(item['given'])}) = {item['value']}  (~{item['decimal']})", file=out)
        print(f"automaton state {res.state}, already occurred: {str(res.occurred).lower()}", file=out)
    return EXIT_OK


def cmd_simulate(alphabet, d, args, out) -> int:
    if not args.pattern:
        raise ConfigError("simulate needs at least one --pattern")
    if args.trials < 1:
        raise ConfigError("--trials must be >= 1")
    if not 0 <= args.seed < 1 << 64:
        raise ConfigError("--seed must be an unsigned 64-bit integer")
    results = []
    for text in args.pattern:
        w = _parse_word(alphabet, text)
        if not w:
            raise ConfigError("cannot simulate the empty pattern")
        if args.max_steps is not None and args.max_steps < len(w):
            raise ConfigError("--max-steps is shorter than the pattern")
        est = monte_carlo(w, d, args.trials, args.seed, args.max_steps, workers=args.workers)
        exact = expected_waiting_time(w, d).expectation
        results.append({
            "pattern": alphabet.format(w),
            "mean": est.mean,
            "std_error": est.std_error,
            "trials": est.trials,
            "seed": est.seed,
            "max_steps": est.max_steps,
            "truncated_count": est.truncated_count,
            "predicted": rational(exact),
            "predicted_decimal": decimal_hint(exact),
        })
    _dump({"command": "simulate", **_dist_json(alphabet, d), "results": results}, out)
    return EXIT_OK


def cmd_identities(alphabet, d, args, out) -> int:
    max_len = args.max_len
    n = args.n
    if max_len < 0 or n < 0:
        raise ConfigError("--max-len and --n must be >= 0")
    try:
        f1 = ids.sweep_F1(max_len, d, args.budget)
        f2 = ids.check_F2(n, d, args.budget)
        srec = ids.check_S_recurrence(n, d, args.budget)
        lemma_failures = ids.sweep_lemma_checks(max_len, d, args.budget)
    except ids.BudgetExceeded as exc:
        raise ConfigError(str(exc)) from None

    def failures_json(fails):
        return [
            {"identity": f.identity.value, "word": alphabet.format(f.counterexample), "detail": f.detail,
             "lhs": rational(f.lhs), "rhs": rational(f.rhs)}
            for f in fails[:20]
        ]

    f1_fail = [c for c in f1 if not c.holds]
    checks = [
        {"identity": "F1", "instances": len(f1), "failures": len(f1_fail), "passed": not f1_fail,
         "counterexamples": failures_json(f1_fail)},
        {"identity": "F2", "instances": 1, "failures": int(not f2.holds), "passed": f2.holds,
         "n": n, "lhs": rational(f2.lhs), "rhs": rational(f2.rhs), "words_visited": f2.visited},
        {"identity": "S_RECURRENCE", "instances": 1, "failures": int(not srec.holds), "passed": srec.holds,
         "n": n, "lhs": rational(srec.lhs), "rhs": rational(srec.rhs)},
        {"identity": "LEMMAS", "instances": ids.count_lemma_checks(max_len, d.r),
         "failures": len(lemma_failures), "passed": not lemma_failures,
         "counterexamples": failures_json(lemma_failures)},
    ]
    all_passed = all(c["passed"] for c in checks)
    if args.json:
        _dump({"command": "identities", **_dist_json(alphabet, d), "max_len": max_len, "n": n,
               "checks": checks, "all_passed": all_passed}, out)
    else:
        for c in checks:
            extra = f"  lhs={c['lhs']} rhs={c['rhs']}" if "lhs" in c else ""
            mark = "pass" if c["passed"] else "FAIL"
            print(f"{c['identity']:<13} {mark}  {c['instances']} instance(s), {c['failures']} failure(s){extra}", file=out)
            for ce in c.get("counterexamples", []):
                print(f"    counterexample {_show(ce['word'])} {ce['detail']}: {ce['lhs']} != {ce['rhs']}", file=out)
    return EXIT_OK if all_passed else EXIT_IDENTITY


# -- plumbing ---------------------------------------------------------------


def _show(text: str) -> str:
    return text if text else "(empty)"


def _short(q: str) -> str:
    return q[:-2] if q.endswith("/1") else q


def _dist_json(alphabet: Alphabet, d: Distribution) -> dict:
    return {"alphabet": list(alphabet.symbols), "probabilities": [rational(p) for p in d.probs]}


def _dump(doc: dict, out: TextIO) -> None:
    out.write(json.dumps(doc, indent=2, sort_keys=True))
    out.write("\n")


COMMANDS = {
    "expect": cmd_expect,
    "conditional": cmd_conditional,
    "simulate": cmd_simulate,
    "identities": cmd_identities,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="patternwait", description="Exact expected waiting times for patterns.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, metavar="PATH|-",
                        help='JSON {"alphabet": [...], "probabilities": ["1/2", ...]}; "-" reads stdin')
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("expect", parents=[common], help="E(w) with its border-chain decomposition")
    p.add_argument("--pattern", action="append", default=[], metavar="WORD")
    p.add_argument("--verify", action="store_true", help="cross-check against the hitting-time oracle")

    p = sub.add_parser("conditional", parents=[common], help="E(w | w')")
    p.add_argument("--pattern", action="append", default=[], metavar="WORD")
    p.add_argument("--given", default="", metavar="WORD", help="history already observed (default: empty)")

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo estimate of E(w), JSON output")
    p.add_argument("--pattern", action="append", default=[], metavar="WORD")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--workers", type=int, default=1, help="threads; does not change the result")

    p = sub.add_parser("identities", parents=[common], help="exhaustive F1/F2/lemma checks")
    p.add_argument("--max-len", type=int, default=4, help="word length bound for F1 and lemma sweeps")
    p.add_argument("--n", type=int, default=4, help="word length for F2 and the S recurrence")
    p.add_argument("--budget", type=int, default=ids.DEFAULT_BUDGET, help="max words per enumeration")
    return parser


def main(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stdin: TextIO | None = None) -> int:
    out = stdout if stdout is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        alphabet, d = load_config(args.config, stdin)
        return COMMANDS[args.command](alphabet, d, args, out)
    except ConfigError as exc:
        print(f"patternwait: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
