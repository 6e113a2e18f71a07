"""Command-line front end: ``boolhier <subcommand> ...`` (or ``python3 -m boolhier``).

Exit status: 0 when the command ran (either verdict), 1 when a checked object
is invalid (``witness-check``) or a differential run failed, 2 on usage or
input errors, 3 when a budget refuses the query, 4 when a precondition fails.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .automaton import from_regex, load_dfa, minimize
from .ckd import CkdQuery, decide_ckd, min_level_ckd
from .errors import AlphabetArityError, BoolHierError, BudgetExceeded, NotStarFreeError
from .harness import DifferentialConfig, run_differential
from .marked import check_marked_chain, oracle_marked_chain_search, parse_marked_witness
from .monoid import is_aperiodic, transition_monoid
from .mw import decide_marked_chain, decide_sigmaL2_binary, decide_sigmaTau1, min_level
from .results import TRUNCATED, ExceedsCap, Family
from .word_orders import MAX_D, OrderParams, Semantics, check_chain, oracle_chain_search

CLASSES = [f.value for f in Family]

REGEX_HELP = """\
regex syntax: letters of the alphabet, juxtaposition for concatenation, '|' for
union, postfix '*', '+' and '?', parentheses for grouping, '{}' (or '∅') for the
empty language and '()' (or 'ε') for the empty word.  Example: "(a|b)*aa(a|b)*".

DFA files use the line format

  alphabet: ab
  states: 3
  start: 0
  accepting: 1
  0 a 1
  ...

or the equivalent JSON object; '#' starts a comment."""


class UsageError(Exception):
    pass


def _add_input(p: argparse.ArgumentParser):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--dfa", metavar="PATH", help="automaton file (line format or JSON)")
    src.add_argument("--regex", help="regular expression, see --help of the main command")
    p.add_argument("--alphabet", default="ab", help="alphabet for --regex (default: ab)")


def _add_query(p: argparse.ArgumentParser, with_n: bool = True):
    p.add_argument("--class", dest="family", required=True, choices=CLASSES)
    p.add_argument("--k", type=int, default=0, help="window size for ckd (default 0)")
    p.add_argument("--d", type=int, default=1, help="modulus for ckd and sigmaD1 (default 1)")
    if with_n:
        p.add_argument("--n", type=int, default=1, help="Boolean level (default 1)")
    p.add_argument("--semantics", choices=[s.value for s in Semantics], default=Semantics.LENGTH_CONGRUENT.value)
    p.add_argument("--mode", choices=["deepening", "exact"], default="deepening", help="sigmaTau1 only")
    p.add_argument("--d-list", default="1,2,3,4,6", help="moduli tried by sigmaTau1 deepening (default 1,2,3,4,6)")
    p.add_argument("--budget", type=int, default=None, help="configuration budget")
    p.add_argument("--unsafe-budgets", action="store_true", help="lift the caps k <= 4 and d <= 6")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="boolhier", description="Boolean-hierarchy levels of regular languages.",
                                     epilog=REGEX_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="decide membership in one level")
    _add_input(p)
    _add_query(p)
    p.add_argument("--timing", action="store_true", help="report wall-clock time (output is then not reproducible)")
    p.add_argument("--format", choices=["json", "text"], default="json")

    p = sub.add_parser("level", help="least level containing the language")
    _add_input(p)
    _add_query(p, with_n=False)
    p.add_argument("--cap", type=int, default=4)
    p.add_argument("--format", choices=["json", "text"], default="json")

    p = sub.add_parser("oracle", help="bounded brute-force chain search")
    _add_input(p)
    _add_query(p)
    p.add_argument("--max-word-len", type=int, default=8, help="ckd: longest word tried")
    p.add_argument("--max-marked-len", type=int, default=5, help="marked classes: longest marked word tried")
    p.add_argument("--max-label-len", type=int, default=3, help="marked classes: longest label tried")

    p = sub.add_parser("witness-check", help="replay a chain witness")
    _add_input(p)
    _add_query(p)
    p.add_argument("--witness", required=True, metavar="PATH", help="JSON list of chain words")
    p.add_argument("--format", choices=["json", "text"], default="text")

    p = sub.add_parser("info", help="size, minimality and aperiodicity of an automaton")
    _add_input(p)

    p = sub.add_parser("convert", help="compile a regex to the DFA text format")
    p.add_argument("--regex", required=True)
    p.add_argument("--alphabet", default="ab")
    p.add_argument("--json", action="store_true", help="emit JSON instead of the line format")

    p = sub.add_parser("differential", help="compare deciders with the oracles on random automata")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-states", type=int, default=4)
    p.add_argument("--families", default="ckd,sigmaB1,sigmaD1")
    p.add_argument("--semantics", choices=[s.value for s in Semantics], default=Semantics.LENGTH_CONGRUENT.value)
    p.add_argument("--complement", action="store_true", help="also check the complement level shift")
    return parser


def _load(args):
    if args.dfa is not None:
        return load_dfa(args.dfa)
    return from_regex(args.regex, args.alphabet)


def _d_list(args) -> tuple[int, ...]:
    try:
        values = tuple(int(x) for x in args.d_list.split(","))
    except ValueError:
        raise UsageError(f"--d-list must be comma-separated integers, got {args.d_list!r}") from None
    if not values or min(values) < 1:
        raise UsageError("--d-list entries must be >= 1")
    return values


def _check_caps(args):
    if args.unsafe_budgets:
        return
    if args.family in ("ckd", "sigmaD1"):
        OrderParams(args.k, args.d).check_caps()
    if args.family == "sigmaTau1" and args.mode == "deepening" and max(_d_list(args)) > MAX_D:
        raise UsageError(f"moduli above {MAX_D} need --unsafe-budgets")


def _params(args) -> dict:
    params = {"k": args.k, "d": args.d, "n": args.n}
    if args.family == "ckd":
        params["semantics"] = args.semantics
    if args.family == "sigmaTau1":
        params["mode"] = args.mode
        if args.mode == "deepening":
            params["d_list"] = list(_d_list(args))
    return params


def _decide(M, args):
    budget = {"budget": args.budget} if args.budget is not None else {}
    family = Family(args.family)
    if family is Family.CKD:
        return decide_ckd(M, CkdQuery(args.k, args.d, args.n, args.semantics, enforce_caps=not args.unsafe_budgets,
                                      **budget)), None
    if family is Family.SIGMA_B1:
        return decide_marked_chain(M, 1, args.n, **budget), None
    if family is Family.SIGMA_D1:
        return decide_marked_chain(M, args.d, args.n, **budget), None
    if family is Family.SIGMA_L2:
        return decide_sigmaL2_binary(M, args.n, **budget), None
    tau = decide_sigmaTau1(M, args.n, mode=args.mode, d_list=_d_list(args), **budget)
    return tau.decision, tau


def cmd_decide(args, out):
    M = _load(args)
    _check_caps(args)
    started = time.perf_counter()
    decision, tau = _decide(M, args)
    wall_ms = round((time.perf_counter() - started) * 1000, 3) if args.timing else None
    result = {"class": args.family, "params": _params(args), "decision": tau.kind if tau else decision.kind}
    if tau is not None:
        result["params"]["d"] = tau.d
    if not decision.in_class:
        result["witness"] = "truncated" if decision.witness is TRUNCATED else decision.witness.to_json()
    result["stats"] = {"configurations_explored": decision.stats.get("configurations_explored"), "wall_ms": wall_ms}
    if args.format == "text":
        out.write(f"{result['decision']}\n")
        if isinstance(result.get("witness"), list):
            out.writelines(f"  {w}\n" for w in result["witness"])
    else:
        _dump(result, out)
    return 0


def cmd_level(args, out):
    M = _load(args)
    _check_caps(args)
    extra = {"budget": args.budget} if args.budget is not None else {}
    if args.family == "ckd":
        level = min_level_ckd(M, args.k, args.d, args.cap, args.semantics, enforce_caps=not args.unsafe_budgets, **extra)
    else:
        if args.family == "sigmaTau1":
            extra.update(mode=args.mode, d_list=_d_list(args))
        level = min_level(M, args.family, args.cap, args.k, args.d, **extra)
    value = "exceeds_cap" if isinstance(level, ExceedsCap) else level.n
    if args.format == "text":
        out.write(f"{value}\n")
    else:
        _dump({"family": args.family, "level": value}, out)
    return 0


def cmd_oracle(args, out):
    M = _load(args)
    _check_caps(args)
    family = Family(args.family)
    if family is Family.CKD:
        chain = oracle_chain_search(M, OrderParams(args.k, args.d, args.semantics), args.n, args.max_word_len)
        bounds = {"max_word_len": args.max_word_len}
    elif family is Family.SIGMA_TAU1:
        raise UsageError("the oracle runs per modulus: use --class sigmaD1 --d D")
    else:
        ac = family is Family.SIGMA_L2
        d = args.d if family is Family.SIGMA_D1 else 1
        chain = oracle_marked_chain_search(M, d, args.n, args.max_marked_len, args.max_label_len, ac, ac)
        bounds = {"max_marked_len": args.max_marked_len, "max_label_len": args.max_label_len}
    _dump({"class": args.family, "params": _params(args), "bounds": bounds,
           "chain": chain.to_json() if chain else None}, out)
    return 0


def cmd_witness_check(args, out):
    M = _load(args)
    try:
        with open(args.witness, encoding="utf-8") as fh:
            words = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read witness: {exc}") from None
    if not isinstance(words, list) or not all(isinstance(w, str) for w in words):
        raise UsageError("witness must be a JSON list of strings")
    family = Family(args.family)
    if family is Family.CKD:
        problems = check_chain(M, words, OrderParams(args.k, args.d, args.semantics))
    else:
        ac = family is Family.SIGMA_L2
        d = args.d if family in (Family.SIGMA_D1, Family.SIGMA_TAU1) else 1
        problems = check_marked_chain(M, parse_marked_witness(words), d, ac, ac)
    if len(words) != args.n + 1:
        problems.append(f"expected a chain of length {args.n} ({args.n + 1} words), got {len(words)} words")
    if args.format == "json":
        _dump({"valid": not problems, "problems": problems}, out)
    elif problems:
        out.write("invalid\n")
        out.writelines(f"  {p}\n" for p in problems)
    else:
        out.write("valid\n")
    return 1 if problems else 0


def cmd_info(args, out):
    M = _load(args)
    small = minimize(M)
    _dump({"alphabet": "".join(M.alphabet), "states": M.num_states, "minimal_states": small.num_states,
           "minimal": small.num_states == M.num_states, "aperiodic": is_aperiodic(M),
           "monoid_size": len(transition_monoid(small))}, out)
    return 0


def cmd_convert(args, out):
    M = from_regex(args.regex, args.alphabet)
    if args.json:
        _dump(M.to_json(), out)
    else:
        out.write(M.to_text())
    return 0


def cmd_differential(args, out):
    config = DifferentialConfig(seed=args.seed, samples=args.samples, max_states=args.max_states,
                                families=tuple(args.families.split(",")), semantics=args.semantics,
                                check_complement=args.complement)
    report = run_differential(config)
    _dump(report.to_json(), out)
    return 0 if report.passed else 1


def _dump(obj, out):
    out.write(json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False))
    out.write("\n")


COMMANDS = {"decide": cmd_decide, "level": cmd_level, "oracle": cmd_oracle, "witness-check": cmd_witness_check,
            "info": cmd_info, "convert": cmd_convert, "differential": cmd_differential}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except BudgetExceeded as exc:
        err.write(f"budget exceeded: {exc}\n")
        return 3
    except (NotStarFreeError, AlphabetArityError) as exc:
        err.write(f"precondition failed ({type(exc).__name__}): {exc}\n")
        return 4
    except (UsageError, BoolHierError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
