"""Seeded random instance generators and the benchmark harness.

Generators are deterministic per seed (PCG64 behind numpy's Generator, a
named, splittable algorithm). The bench runner times algorithm cores apart
from instance generation and conversion overhead, mirroring an
effective-versus-total split, and writes one CSV row per (algorithm, grid
cell).
"""

from __future__ import annotations

import csv
import io
import itertools
import time
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from .automata import LETTERS, Alphabet, Dfa, Nfa, determinize
from .equivalence import am, equiv_uf, hk, hke, hki, hkn
from .minimize import brzozowski_minimize, hopcroft_minimize, minimal_isomorphic
from .regex import (EMPTY, EPSILON, Concat, Regex, Star, Symbol, Union, parse,
                    partial_derivative_nfa)

CSV_HEADER = "alg,n,k,d,size,pairs,eff_s,total_s,mean_iters,timeouts"

DFA_ALGORITHMS = ("hk", "hki", "hkn", "hke", "hop", "brz")
NFA_ALGORITHMS = ("hke", "hop", "brz")
REGEX_ALGORITHMS = ("am", "equivuf", "hke", "hop", "brz")


@dataclass(frozen=True)
class GenParams:
    """Knobs for one generated instance; unused fields are ignored per kind."""

    n: int = 1
    k: int = 1
    d: float = 0.0
    size: int = 1
    seed: int = 0
    final_prob: float = 0.5
    initials: int = 1


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _randbelow(rng: np.random.Generator, bound: int) -> int:
    """Uniform integer in [0, bound) for arbitrarily large bounds."""
    if bound <= 0:
        raise ValueError("bound must be positive")
    nbits = max((bound - 1).bit_length(), 1)
    words = (nbits + 63) // 64
    mask = (1 << nbits) - 1
    while True:
        r = 0
        for _ in range(words):
            r = (r << 64) | int(rng.integers(0, 1 << 64, dtype=np.uint64))
        r &= mask
        if r < bound:
            return r


def _all_reachable(delta: list[tuple[int, ...]], n: int) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        q = stack.pop()
        for t in delta[q]:
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return len(seen) == n


def gen_icdfa(p: GenParams) -> Dfa:
    """Random initially-connected complete DFA with exactly n states.

    Tries plain rejection (uniform table, keep if connected) a bounded number
    of times; when connectivity is too rare, falls back to wiring each state
    into a random spanning skeleton and filling the remaining slots uniformly.
    """
    if p.n < 1 or p.k < 1:
        raise ValueError("n and k must be at least 1")
    rng = _rng(p.seed)
    n, k = p.n, p.k
    alphabet = Alphabet.first(k)
    for _ in range(64):
        table = rng.integers(0, n, size=(n, k))
        rows = [tuple(int(t) for t in row) for row in table]
        if _all_reachable(rows, n):
            finals = frozenset(int(q) for q in range(n) if rng.random() < p.final_prob)
            return Dfa(n, alphabet, tuple(rows), 0, finals)
    free = [[True] * k for _ in range(n)]
    grid = [[-1] * k for _ in range(n)]
    order = [0] + [int(q) + 1 for q in rng.permutation(n - 1)]
    connected = [0]
    for target in order[1:]:
        while True:
            src = connected[int(rng.integers(0, len(connected)))]
            sym = int(rng.integers(0, k))
            if free[src][sym]:
                free[src][sym] = False
                grid[src][sym] = target
                break
        connected.append(target)
    for q in range(n):
        for i in range(k):
            if grid[q][i] < 0:
                grid[q][i] = int(rng.integers(0, n))
    finals = frozenset(int(q) for q in range(n) if rng.random() < p.final_prob)
    return Dfa(n, alphabet, tuple(tuple(row) for row in grid), 0, finals)


def gen_nfa(p: GenParams) -> Nfa:
    """Random NFA with exactly round(d*k*n^2) distinct transitions sampled
    without replacement, `initials` initial states, finality prob final_prob."""
    if p.n < 1 or p.k < 1:
        raise ValueError("n and k must be at least 1")
    if not 0 < p.d <= 1:
        raise ValueError("density must satisfy 0 < d <= 1")
    if not 1 <= p.initials <= p.n:
        raise ValueError("initial-state count out of range")
    n, k = p.n, p.k
    total = k * n * n
    m = round(p.d * total)
    if m < 1:
        raise ValueError(f"infeasible density: d*k*n^2 = {p.d * total:.3f} < 1")
    rng = _rng(p.seed)
    alphabet = Alphabet.first(k)
    codes = rng.choice(total, size=m, replace=False)
    triples = set()
    for code in codes:
        code = int(code)
        q, rest = divmod(code, k * n)
        sym, q2 = divmod(rest, n)
        triples.add((q, alphabet.symbols[sym], q2))
    initials = frozenset(int(q) for q in rng.choice(n, size=p.initials, replace=False))
    finals = frozenset(int(q) for q in range(n) if rng.random() < p.final_prob)
    return Nfa(n, alphabet, frozenset(triples), initials, finals)


_tree_count_cache: dict = {}


def _tree_counts(size: int, k: int) -> list[int]:
    """counts[s] = number of syntax trees with exactly s nodes over k symbols."""
    got = _tree_count_cache.get((size, k))
    if got is not None:
        return got
    counts = [0] * (size + 1)
    if size >= 1:
        counts[1] = k + 2
    for s in range(2, size + 1):
        total = counts[s - 1]
        for i in range(1, s - 1):
            total += 2 * counts[i] * counts[s - 1 - i]
        counts[s] = total
    _tree_count_cache[(size, k)] = counts
    return counts


def gen_regex(p: GenParams) -> Regex:
    """Uniformly random syntax tree with exactly `size` nodes.

    Counting-based sampling: pick the root shape with probability proportional
    to the number of trees it heads, recurse on subtree sizes.
    """
    if p.size < 1 or p.k < 1:
        raise ValueError("size and k must be at least 1")
    rng = _rng(p.seed)
    counts = _tree_counts(p.size, p.k)
    letters = LETTERS[: p.k]

    def build(s: int) -> Regex:
        if s == 1:
            u = _randbelow(rng, p.k + 2)
            if u == 0:
                return EMPTY
            if u == 1:
                return EPSILON
            return Symbol(letters[u - 2])
        u = _randbelow(rng, counts[s])
        if u < counts[s - 1]:
            return Star(build(s - 1))
        u -= counts[s - 1]
        for i in range(1, s - 1):
            block = counts[i] * counts[s - 1 - i]
            if u < block:
                return Union(build(i), build(s - 1 - i))
            u -= block
            if u < block:
                return Concat(build(i), build(s - 1 - i))
            u -= block
        raise AssertionError("tree count bookkeeping is off")

    return build(p.size)


def worst_case_family(index: int, variant: str = "regex"):
    """Hard instances for derivative-based comparison.

    variant "regex": (a+b)*a(a+b)^index, whose minimal DFA has 2^(index+1)
    states. variant "nfa": the index-state chain that remembers the symbol
    seen index-1 steps ago, whose minimal DFA has 2^(index-1) states.
    """
    if variant == "regex":
        if index < 0:
            raise ValueError("family index must be non-negative")
        return parse("(a+b)*a" + "(a+b)" * index)
    if variant == "nfa":
        n = index
        if n < 1:
            raise ValueError("nfa family needs at least one state")
        alphabet = Alphabet(("a", "b"))
        triples = {(0, "a", 0), (0, "b", 0)}
        if n > 1:
            triples.add((0, "a", 1))
        for q in range(1, n - 1):
            triples.add((q, "a", q + 1))
            triples.add((q, "b", q + 1))
        return Nfa(n, alphabet, frozenset(triples), frozenset((0,)), frozenset((n - 1,)))
    raise ValueError(f"unknown family variant {variant!r}")


@dataclass(frozen=True)
class BenchConfig:
    kind: str
    algorithms: tuple
    n: tuple = ()
    k: tuple = (2,)
    d: tuple = ()
    size: tuple = ()
    pairs: int = 100
    timeout: float = 60.0
    seed: int = 0
    final_prob: float = 0.5
    initials: int = 1


@dataclass(frozen=True)
class BenchRow:
    alg: str
    n: Optional[int]
    k: int
    d: Optional[float]
    size: Optional[int]
    pairs: int
    eff_s: float
    total_s: float
    mean_iters: Optional[float]
    timeouts: int


def _algorithms_for(kind: str) -> tuple:
    return {
        "dfa": DFA_ALGORITHMS,
        "nfa": NFA_ALGORITHMS,
        "regex": REGEX_ALGORITHMS,
    }[kind]


def parse_config(text: str) -> BenchConfig:
    """Plain key-value bench configuration; lists are comma-separated.

    Keys: kind, algorithms, n, k, d, size, pairs, timeout, seed, final_prob,
    initials. Lines starting with # are comments.
    """
    values: dict = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"config line {line_no}: expected key = value")
        key, _, val = line.partition("=")
        values[key.strip()] = val.strip()

    kind = values.pop("kind", "dfa")
    if kind not in ("dfa", "nfa", "regex"):
        raise ValueError(f"unknown kind {kind!r}")
    allowed = _algorithms_for(kind)
    algorithms = tuple(
        a.strip() for a in values.pop("algorithms", ",".join(allowed)).split(",") if a.strip()
    )
    for a in algorithms:
        if a not in allowed:
            raise ValueError(f"unknown algorithm {a!r} for kind {kind!r}")

    def int_list(key: str, default: tuple) -> tuple:
        if key not in values:
            return default
        return tuple(int(v) for v in values.pop(key).split(","))

    def float_list(key: str, default: tuple) -> tuple:
        if key not in values:
            return default
        return tuple(float(v) for v in values.pop(key).split(","))

    config = BenchConfig(
        kind=kind,
        algorithms=algorithms,
        n=int_list("n", (5,)),
        k=int_list("k", (2,)),
        d=float_list("d", (0.5,)),
        size=int_list("size", (10,)),
        pairs=int(values.pop("pairs", 100)),
        timeout=float(values.pop("timeout", 60.0)),
        seed=int(values.pop("seed", 0)),
        final_prob=float(values.pop("final_prob", 0.5)),
        initials=int(values.pop("initials", 1)),
    )
    if values:
        raise ValueError(f"unknown config keys: {', '.join(sorted(values))}")
    if config.pairs < 1:
        raise ValueError("pairs must be at least 1")
    return config


def _grid(config: BenchConfig) -> list[GenParams]:
    base = GenParams(final_prob=config.final_prob, initials=config.initials)
    cells = []
    if config.kind == "dfa":
        for n, k in itertools.product(config.n, config.k):
            cells.append(replace(base, n=n, k=k))
    elif config.kind == "nfa":
        for n, k, d in itertools.product(config.n, config.k, config.d):
            cells.append(replace(base, n=n, k=k, d=d))
    else:
        for size, k in itertools.product(config.size, config.k):
            cells.append(replace(base, size=size, k=k))
    return cells


def _runner(kind: str, alg: str) -> tuple[Callable, Callable]:
    """(prepare, core): prepare converts a generated pair into the algorithm's
    input shape (counted as overhead); core runs the decision and returns an
    iteration count or None."""
    if kind in ("dfa", "nfa"):
        generate = gen_icdfa if kind == "dfa" else gen_nfa

        def gen_pair(params: GenParams, s1: int, s2: int):
            return (
                generate(replace(params, seed=s1)),
                generate(replace(params, seed=s2)),
            )
    else:

        def gen_pair(params: GenParams, s1: int, s2: int):
            return (
                gen_regex(replace(params, seed=s1)),
                gen_regex(replace(params, seed=s2)),
            )

    def prep(params, s1, s2):
        x, y = gen_pair(params, s1, s2)
        if alg == "hke" and kind == "dfa":
            return x.to_nfa(), y.to_nfa()
        if alg in ("hke", "hop", "brz") and kind == "regex":
            return partial_derivative_nfa(x), partial_derivative_nfa(y)
        if alg == "brz" and kind == "dfa":
            return x.to_nfa(), y.to_nfa()
        return x, y

    def core_equiv(fn):
        def run(x, y):
            return fn(x, y).iterations

        return run

    if alg in ("hk", "hki"):
        core = core_equiv(hk if alg == "hk" else hki)
    elif alg == "hkn":
        core = lambda x, y: hkn(x, y)[0].iterations
    elif alg == "hke":
        core = core_equiv(hke)
    elif alg == "am":
        core = core_equiv(am)
    elif alg == "equivuf":
        core = core_equiv(equiv_uf)
    elif alg == "hop":

        def core(x, y):
            mx = hopcroft_minimize(x if isinstance(x, Dfa) else determinize(x))
            my = hopcroft_minimize(y if isinstance(y, Dfa) else determinize(y))
            minimal_isomorphic(mx, my)
            return None
    elif alg == "brz":

        def core(x, y):
            minimal_isomorphic(brzozowski_minimize(x), brzozowski_minimize(y))
            return None
    else:
        raise ValueError(f"unknown algorithm {alg!r}")
    return prep, core


def run_bench(config: BenchConfig, log: Optional[Callable[[str], None]] = None) -> list[BenchRow]:
    """One BenchRow per (algorithm, grid cell).

    Per pair, instance generation and conversion count toward total time only;
    the decision core counts toward both. The first pair is run once untimed
    as warmup. A cell stops early once effective time exceeds the timeout;
    remaining pairs are reported in the timeouts column.
    """
    rows = []
    cells = _grid(config)
    cell_sequences = np.random.SeedSequence(config.seed).spawn(len(cells))
    for params, cell_seq in zip(cells, cell_sequences):
        pair_seeds = [
            tuple(int(v) for v in child.generate_state(2, dtype=np.uint64))
            for child in cell_seq.spawn(config.pairs)
        ]
        for alg in config.algorithms:
            prep, core = _runner(config.kind, alg)
            core(*prep(params, *pair_seeds[0]))
            eff = 0.0
            total = 0.0
            iter_sum = 0
            have_iters = False
            done = 0
            per_pair = []
            for s1, s2 in pair_seeds:
                t0 = time.perf_counter()
                inputs = prep(params, s1, s2)
                t1 = time.perf_counter()
                iters = core(*inputs)
                t2 = time.perf_counter()
                eff += t2 - t1
                total += t2 - t0
                per_pair.append(t2 - t1)
                if iters is not None:
                    iter_sum += iters
                    have_iters = True
                done += 1
                if eff > config.timeout:
                    break
            mean_iters = iter_sum / done if have_iters else None
            row = BenchRow(
                alg=alg,
                n=params.n if config.kind in ("dfa", "nfa") else None,
                k=params.k,
                d=params.d if config.kind == "nfa" else None,
                size=params.size if config.kind == "regex" else None,
                pairs=config.pairs,
                eff_s=eff,
                total_s=total,
                mean_iters=mean_iters,
                timeouts=config.pairs - done,
            )
            rows.append(row)
            if log is not None:
                per_pair.sort()
                median = per_pair[len(per_pair) // 2]
                log(
                    f"{alg}: {_cell_label(row)} pairs={done}/{config.pairs} "
                    f"eff={eff:.4f}s total={total:.4f}s median={median * 1000:.3f}ms"
                    + (f" mean_iters={mean_iters:.2f}" if mean_iters is not None else "")
                )
    return rows


def _cell_label(row: BenchRow) -> str:
    parts = []
    if row.n is not None:
        parts.append(f"n={row.n}")
    parts.append(f"k={row.k}")
    if row.d is not None:
        parts.append(f"d={row.d:g}")
    if row.size is not None:
        parts.append(f"size={row.size}")
    return " ".join(parts)


def rows_to_csv(rows: list[BenchRow]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER.split(","))
    for r in rows:
        writer.writerow(
            [
                r.alg,
                r.n if r.n is not None else "-",
                r.k,
                f"{r.d:g}" if r.d is not None else "-",
                r.size if r.size is not None else "-",
                r.pairs,
                f"{r.eff_s:.6f}",
                f"{r.total_s:.6f}",
                f"{r.mean_iters:.4f}" if r.mean_iters is not None else "-",
                r.timeouts,
            ]
        )
    return out.getvalue()


def write_bench_csv(rows: list[BenchRow], path) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(rows_to_csv(rows))
