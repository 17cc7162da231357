"""Command-line front door: equiv, minimize, gen, bench.

Exit codes for `equiv`: 0 the inputs accept the same language, 1 they do not
(the summary carries a witness), 2 usage or parse error. Other subcommands
use 0 on success, 2 on error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .automata import Dfa, Machine, determinize, load_automaton, write_automaton
from .equivalence import EquivalenceReport, am, equiv_uf, hk, hke, hki, hkn
from .genbench import (GenParams, gen_icdfa, gen_nfa, gen_regex, parse_config,
                       rows_to_csv, run_bench, write_bench_csv)
from .minimize import brzozowski_minimize, hopcroft_minimize
from .regex import (Regex, brzozowski_automaton, parse,
                    partial_derivative_nfa, to_text)

ALGORITHMS = ("hk", "hki", "hkn", "hke", "am", "equivuf", "auto")


def _load_input(arg: str):
    """Existing paths are automaton files; anything else is an inline regex."""
    if os.path.exists(arg):
        m = load_automaton(arg)
        return ("dfa" if isinstance(m, Dfa) else "nfa"), m
    return "regex", parse(arg)


def _as_dfa(value, kind: str, alg: str, convert: bool) -> Dfa:
    if kind == "dfa":
        return value
    if not convert:
        raise ValueError(
            f"{alg} works on DFAs; pass --convert to translate {kind} inputs"
        )
    if kind == "nfa":
        return determinize(value)
    return brzozowski_automaton(value)


def _as_nfa(value, kind: str):
    if kind == "dfa":
        return value.to_nfa()
    if kind == "nfa":
        return value
    return partial_derivative_nfa(value)


def _summary(report: EquivalenceReport) -> str:
    if report.equivalent:
        wit = "-"
    else:
        wit = '"{}"'.format(report.witness if report.witness is not None else "")
    verdict = "eq" if report.equivalent else "neq"
    return f"verdict={verdict} iters={report.iterations} witness={wit}"


def cmd_equiv(args) -> int:
    kind1, x = _load_input(args.input1)
    kind2, y = _load_input(args.input2)
    if kind1 != kind2 and not args.convert:
        raise ValueError(
            f"inputs are a {kind1} and a {kind2}; pass --convert to reconcile them"
        )
    alg = args.alg
    if alg == "auto":
        kinds = {kind1, kind2}
        if kinds == {"dfa"}:
            alg = "hki"
        elif kinds == {"regex"}:
            alg = "equivuf"
        else:
            alg = "hke"
    if alg in ("hk", "hki", "hkn"):
        d1 = _as_dfa(x, kind1, alg, args.convert)
        d2 = _as_dfa(y, kind2, alg, args.convert)
        if alg == "hk":
            report = hk(d1, d2)
        elif alg == "hki":
            report = hki(d1, d2)
        else:
            report = hkn(d1, d2)[0]
    elif alg == "hke":
        report = hke(_as_nfa(x, kind1), _as_nfa(y, kind2))
    else:
        if kind1 != "regex" or kind2 != "regex":
            raise ValueError(f"{alg} works on regular expressions only")
        report = (am if alg == "am" else equiv_uf)(x, y)
    print(_summary(report))
    return 0 if report.equivalent else 1


def cmd_minimize(args) -> int:
    m = load_automaton(args.input)
    if args.method == "hopcroft":
        d = hopcroft_minimize(m if isinstance(m, Dfa) else determinize(m))
    else:
        d = brzozowski_minimize(m.to_nfa() if isinstance(m, Dfa) else m)
    text = write_automaton(d)
    if args.output:
        Path(args.output).write_text(text, encoding="ascii")
    else:
        sys.stdout.write(text)
    return 0


def cmd_gen(args) -> int:
    params = GenParams(
        n=args.n,
        k=args.k,
        d=args.d,
        size=args.size,
        seed=args.seed,
        final_prob=args.final_prob,
        initials=args.initials,
    )
    if args.kind == "dfa":
        text = write_automaton(gen_icdfa(params))
    elif args.kind == "nfa":
        text = write_automaton(gen_nfa(params))
    else:
        text = to_text(gen_regex(params)) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="ascii")
    else:
        sys.stdout.write(text)
    return 0


def cmd_bench(args) -> int:
    config = parse_config(Path(args.config).read_text(encoding="ascii"))
    rows = run_bench(config, log=lambda line: print(line, file=sys.stderr))
    if args.output:
        out = Path(args.output)
        write_bench_csv(rows, out)
        print(f"wrote {out}", file=sys.stderr)
        if not args.no_figures:
            from .plots import render_bench_figures

            base = out.parent / out.stem
            for p in render_bench_figures(rows, base):
                print(f"wrote {p}", file=sys.stderr)
    else:
        sys.stdout.write(rows_to_csv(rows))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="releq",
        description="Decide equivalence of regular languages given as DFAs, "
        "NFAs, or regular expressions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("equiv", help="decide whether two inputs accept the same language")
    p.add_argument("input1", help="automaton file or inline regular expression")
    p.add_argument("input2", help="automaton file or inline regular expression")
    p.add_argument("--alg", choices=ALGORITHMS, default="auto")
    p.add_argument(
        "--convert",
        action="store_true",
        help="allow representation changes (determinize, regex-to-automaton)",
    )
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("minimize", help="minimize an automaton file")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.add_argument("--method", choices=("hopcroft", "brzozowski"), default="hopcroft")
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("kind", choices=("dfa", "nfa", "regex"))
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--d", type=float, default=0.5)
    p.add_argument("--size", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--final-prob", type=float, default=0.5)
    p.add_argument("--initials", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run a benchmark config and emit CSV")
    p.add_argument("--config", required=True)
    p.add_argument("-o", "--output", help="CSV path; figures are written alongside")
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
