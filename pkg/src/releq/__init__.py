"""Regular-language equivalence: union-find checkers, derivative methods,
minimization baselines, generators, and a benchmark harness."""

from .automata import (Alphabet, AutomatonError, Dfa, Machine, Nfa, complete,
                       determinize, disjoint_union, enumerate_language,
                       load_automaton, membership, read_automaton, reverse,
                       save_automaton, write_automaton)
from .equivalence import (EquivalenceReport, am, equiv_uf, hk, hke, hki, hkn,
                          witness)
from .genbench import (BenchConfig, BenchRow, GenParams, gen_icdfa, gen_nfa,
                       gen_regex, parse_config, rows_to_csv, run_bench,
                       worst_case_family, write_bench_csv)
from .minimize import (StatePartition, brzozowski_minimize, hopcroft_minimize,
                       minimal_isomorphic, state_equivalence)
from .regex import (EMPTY, EPSILON, Concat, Empty, Epsilon, Regex,
                    RegexSyntaxError, Star, Symbol, Union, alphabetic_width,
                    brzozowski_automaton, brzozowski_states, canonical_key,
                    canonicalize, derivative, infer_alphabet, nullable, parse,
                    partial_derivative_nfa, partial_derivatives, pd_closure,
                    size, to_text, word_derivative)
from .unionfind import OpCounts, Partition

__version__ = "0.1.0"

__all__ = [
    "Alphabet", "AutomatonError", "Dfa", "Machine", "Nfa", "complete",
    "determinize", "disjoint_union", "enumerate_language", "load_automaton",
    "membership", "read_automaton", "reverse", "save_automaton",
    "write_automaton",
    "EquivalenceReport", "am", "equiv_uf", "hk", "hke", "hki", "hkn",
    "witness",
    "BenchConfig", "BenchRow", "GenParams", "gen_icdfa", "gen_nfa",
    "gen_regex", "parse_config", "rows_to_csv", "run_bench",
    "worst_case_family", "write_bench_csv",
    "StatePartition", "brzozowski_minimize", "hopcroft_minimize",
    "minimal_isomorphic", "state_equivalence",
    "EMPTY", "EPSILON", "Concat", "Empty", "Epsilon", "Regex",
    "RegexSyntaxError", "Star", "Symbol", "Union", "alphabetic_width",
    "brzozowski_automaton", "brzozowski_states", "canonical_key",
    "canonicalize", "derivative", "infer_alphabet", "nullable", "parse",
    "partial_derivative_nfa", "partial_derivatives", "pd_closure", "size",
    "to_text", "word_derivative",
    "OpCounts", "Partition",
    "__version__",
]
