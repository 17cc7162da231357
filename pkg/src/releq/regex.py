"""Regular expressions, Brzozowski derivatives, and Antimirov partial derivatives.

Syntax trees are immutable; the simplification pass (`canonicalize`) rewrites a
tree into its normal form modulo associativity, commutativity and idempotence
of union plus the unit/annihilator rules, so structural equality of canonical
trees decides ACI-equality. Derivatives of canonical trees stay canonical.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Optional

from .automata import Alphabet, AutomatonError, Dfa, Nfa


class RegexSyntaxError(ValueError):
    """Parse failure; carries the offset of the offending character."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (position {pos})")
        self.pos = pos


class Regex:
    """Base class of regular expression nodes. Treat instances as immutable."""

    __slots__ = ("_hash",)

    def __hash__(self) -> int:
        h = getattr(self, "_hash", None)
        if h is None:
            self._hash = h = self._compute_hash()
        return h

    def _compute_hash(self) -> int:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<regex {to_text(self)}>"


class Empty(Regex):
    __slots__ = ()
    __match_args__ = ()

    def _compute_hash(self):
        return hash("empty")

    def __eq__(self, other):
        return type(other) is Empty

    __hash__ = Regex.__hash__


class Epsilon(Regex):
    __slots__ = ()
    __match_args__ = ()

    def _compute_hash(self):
        return hash("epsilon")

    def __eq__(self, other):
        return type(other) is Epsilon

    __hash__ = Regex.__hash__


class Symbol(Regex):
    __slots__ = ("char",)
    __match_args__ = ("char",)

    def __init__(self, char: str):
        if len(char) != 1 or not ("a" <= char <= "z"):
            raise RegexSyntaxError(f"bad symbol {char!r}", 0)
        self.char = char

    def _compute_hash(self):
        return hash(("sym", self.char))

    def __eq__(self, other):
        return type(other) is Symbol and self.char == other.char

    __hash__ = Regex.__hash__


class Union(Regex):
    __slots__ = ("left", "right")
    __match_args__ = ("left", "right")

    def __init__(self, left: Regex, right: Regex):
        self.left = left
        self.right = right

    def _compute_hash(self):
        return hash(("or", self.left, self.right))

    def __eq__(self, other):
        return self is other or (
            type(other) is Union and self.left == other.left and self.right == other.right
        )

    __hash__ = Regex.__hash__


class Concat(Regex):
    __slots__ = ("left", "right")
    __match_args__ = ("left", "right")

    def __init__(self, left: Regex, right: Regex):
        self.left = left
        self.right = right

    def _compute_hash(self):
        return hash(("cat", self.left, self.right))

    def __eq__(self, other):
        return self is other or (
            type(other) is Concat and self.left == other.left and self.right == other.right
        )

    __hash__ = Regex.__hash__


class Star(Regex):
    __slots__ = ("inner",)
    __match_args__ = ("inner",)

    def __init__(self, inner: Regex):
        self.inner = inner

    def _compute_hash(self):
        return hash(("star", self.inner))

    def __eq__(self, other):
        return self is other or (type(other) is Star and self.inner == other.inner)

    __hash__ = Regex.__hash__


EMPTY = Empty()
EPSILON = Epsilon()


def parse(text: str, alphabet: Optional[Alphabet] = None) -> Regex:
    """Parse `0`, `1`, letters, `+`, juxtaposition, postfix `*`, parentheses.

    Whitespace is ignored. When an alphabet is given, letters outside it are
    rejected. Union is lowest precedence, star highest; `+` and concatenation
    associate to the left.
    """
    toks = [(i, c) for i, c in enumerate(text) if not c.isspace()]
    end = len(text)
    pos = 0

    def peek() -> str:
        return toks[pos][1] if pos < len(toks) else ""

    def here() -> int:
        return toks[pos][0] if pos < len(toks) else end

    def atom_start(c: str) -> bool:
        return c == "(" or c == "0" or c == "1" or "a" <= c <= "z"

    def parse_union() -> Regex:
        nonlocal pos
        node = parse_concat()
        while peek() == "+":
            pos += 1
            node = Union(node, parse_concat())
        return node

    def parse_concat() -> Regex:
        nonlocal pos
        if not atom_start(peek()):
            raise RegexSyntaxError("expected an expression", here())
        node = parse_factor()
        while atom_start(peek()):
            node = Concat(node, parse_factor())
        return node

    def parse_factor() -> Regex:
        nonlocal pos
        node = parse_atom()
        while peek() == "*":
            pos += 1
            node = Star(node)
        return node

    def parse_atom() -> Regex:
        nonlocal pos
        c = peek()
        at = here()
        if c == "(":
            pos += 1
            node = parse_union()
            if peek() != ")":
                raise RegexSyntaxError("expected ')'", here())
            pos += 1
            return node
        pos += 1
        if c == "0":
            return EMPTY
        if c == "1":
            return EPSILON
        if "a" <= c <= "z":
            if alphabet is not None and c not in alphabet:
                raise RegexSyntaxError(f"symbol {c!r} outside alphabet", at)
            return Symbol(c)
        raise RegexSyntaxError(f"unexpected {c!r}" if c else "unexpected end of input", at)

    node = parse_union()
    if pos < len(toks):
        raise RegexSyntaxError(f"unexpected {peek()!r}", here())
    return node


def _prec(r: Regex) -> int:
    if isinstance(r, Union):
        return 0
    if isinstance(r, Concat):
        return 1
    if isinstance(r, Star):
        return 2
    return 3


def _render(r: Regex, out: list, min_prec: int) -> None:
    wrap = _prec(r) < min_prec
    if wrap:
        out.append("(")
    match r:
        case Empty():
            out.append("0")
        case Epsilon():
            out.append("1")
        case Symbol(c):
            out.append(c)
        case Union(l, rr):
            _render(l, out, 0)
            out.append("+")
            _render(rr, out, 0)
        case Concat(l, rr):
            _render(l, out, 1)
            _render(rr, out, 1)
        case Star(x):
            _render(x, out, 2)
            out.append("*")
    if wrap:
        out.append(")")


def to_text(r: Regex) -> str:
    """Minimal-parenthesis rendering; inverse of parse on its own output."""
    out: list = []
    _render(r, out, 0)
    return "".join(out)


def nullable(r: Regex) -> bool:
    """Is the empty word in L(r)?"""
    match r:
        case Empty() | Symbol(_):
            return False
        case Epsilon() | Star(_):
            return True
        case Union(l, rr):
            return nullable(l) or nullable(rr)
        case Concat(l, rr):
            return nullable(l) and nullable(rr)
    raise TypeError(f"not a regex: {r!r}")


def _summands(r: Regex) -> Iterator[Regex]:
    if isinstance(r, Union):
        yield from _summands(r.left)
        yield from _summands(r.right)
    else:
        yield r


def _union_of(parts: Iterator[Regex]) -> Regex:
    # parts are canonical; flatten, drop the empty language, sort, deduplicate
    items: dict[str, Regex] = {}
    for p in parts:
        for s in _summands(p):
            if not isinstance(s, Empty):
                items.setdefault(to_text(s), s)
    if not items:
        return EMPTY
    keys = sorted(items)
    node = items[keys[-1]]
    for key in reversed(keys[:-1]):
        node = Union(items[key], node)
    return node


def _mk_union(x: Regex, y: Regex) -> Regex:
    return _union_of(iter((x, y)))


def _mk_concat(x: Regex, y: Regex) -> Regex:
    if isinstance(x, Empty) or isinstance(y, Empty):
        return EMPTY
    if isinstance(x, Epsilon):
        return y
    if isinstance(y, Epsilon):
        return x
    if isinstance(x, Concat):
        # keep chains right-associated
        return _mk_concat(x.left, _mk_concat(x.right, y))
    return Concat(x, y)


def canonicalize(r: Regex) -> Regex:
    """Normal form modulo ACI of + and the unit/annihilator rules.

    Unions are flattened, sorted by rendered text, deduplicated, and stripped
    of 0-summands; concatenations are right-associated with 1-factors dropped
    and 0-factors annihilating; nested stars are kept as written.
    """
    match r:
        case Empty():
            return EMPTY
        case Epsilon():
            return EPSILON
        case Symbol(_):
            return r
        case Union(l, rr):
            return _mk_union(canonicalize(l), canonicalize(rr))
        case Concat(l, rr):
            return _mk_concat(canonicalize(l), canonicalize(rr))
        case Star(x):
            return Star(canonicalize(x))
    raise TypeError(f"not a regex: {r!r}")


def canonical_key(r: Regex) -> str:
    """Serialization of the canonical form; equal keys <=> ACI-equal trees."""
    return to_text(canonicalize(r))


def _check_symbol(a: str, alphabet: Optional[Alphabet]) -> None:
    if len(a) != 1 or not ("a" <= a <= "z"):
        raise AutomatonError(f"bad symbol {a!r}: expected one letter a-z")
    if alphabet is not None and a not in alphabet:
        raise AutomatonError(f"symbol {a!r} outside alphabet")


@lru_cache(maxsize=65536)
def _deriv(r: Regex, a: str) -> Regex:
    # r is canonical; the result is canonical
    match r:
        case Empty() | Epsilon():
            return EMPTY
        case Symbol(c):
            return EPSILON if c == a else EMPTY
        case Union(l, rr):
            return _mk_union(_deriv(l, a), _deriv(rr, a))
        case Concat(l, rr):
            first = _mk_concat(_deriv(l, a), rr)
            if nullable(l):
                return _mk_union(first, _deriv(rr, a))
            return first
        case Star(x):
            return _mk_concat(_deriv(x, a), r)
    raise TypeError(f"not a regex: {r!r}")


def derivative(r: Regex, a: str, alphabet: Optional[Alphabet] = None) -> Regex:
    """Left quotient by one symbol: L(result) = { w : aw in L(r) }, canonical."""
    _check_symbol(a, alphabet)
    return _deriv(canonicalize(r), a)


def word_derivative(r: Regex, w: str, alphabet: Optional[Alphabet] = None) -> Regex:
    """Fold of derivative over the word; the empty word returns r unchanged."""
    for a in w:
        _check_symbol(a, alphabet)
    if not w:
        return r
    d = canonicalize(r)
    for a in w:
        d = _deriv(d, a)
    return d


@lru_cache(maxsize=65536)
def _pd(r: Regex, a: str) -> frozenset:
    # set-valued analogue of _deriv; r canonical, elements canonical
    match r:
        case Empty() | Epsilon():
            return frozenset()
        case Symbol(c):
            return frozenset((EPSILON,)) if c == a else frozenset()
        case Union(l, rr):
            return _pd(l, a) | _pd(rr, a)
        case Concat(l, rr):
            parts = {_mk_concat(g, rr) for g in _pd(l, a)}
            if nullable(l):
                parts |= _pd(rr, a)
            return frozenset(parts)
        case Star(x):
            return frozenset(_mk_concat(g, r) for g in _pd(x, a))
    raise TypeError(f"not a regex: {r!r}")


def partial_derivatives(r: Regex, a: str, alphabet: Optional[Alphabet] = None) -> frozenset:
    """Antimirov partial derivatives; the union of their languages is L(derivative(r, a))."""
    _check_symbol(a, alphabet)
    return _pd(canonicalize(r), a)


def symbols_of(r: Regex) -> set:
    """Set of alphabet symbols occurring in r."""
    match r:
        case Empty() | Epsilon():
            return set()
        case Symbol(c):
            return {c}
        case Union(l, rr) | Concat(l, rr):
            return symbols_of(l) | symbols_of(rr)
        case Star(x):
            return symbols_of(x)
    raise TypeError(f"not a regex: {r!r}")


def infer_alphabet(*rs: Regex) -> Alphabet:
    """Sorted union of occurring symbols; {a} for symbol-free expressions."""
    syms: set = set()
    for r in rs:
        syms |= symbols_of(r)
    return Alphabet(tuple(sorted(syms)) if syms else ("a",))


def _resolve_alphabet(alphabet: Optional[Alphabet], *rs: Regex) -> Alphabet:
    if alphabet is None:
        return infer_alphabet(*rs)
    for r in rs:
        bad = symbols_of(r) - set(alphabet.symbols)
        if bad:
            raise AutomatonError(f"symbol {min(bad)!r} outside alphabet")
    return alphabet


def _pd_closure_ordered(r: Regex, alphabet: Alphabet) -> tuple[list, dict]:
    start = canonicalize(r)
    order = [start]
    index = {start: 0}
    pos = 0
    while pos < len(order):
        q = order[pos]
        pos += 1
        for a in alphabet:
            for succ in sorted(_pd(q, a), key=to_text):
                if succ not in index:
                    index[succ] = len(order)
                    order.append(succ)
    return order, index


def pd_closure(r: Regex, alphabet: Optional[Alphabet] = None) -> frozenset:
    """Least set containing (the canonical form of) r and closed under
    partial derivatives by every alphabet symbol. Always finite."""
    alphabet = _resolve_alphabet(alphabet, r)
    order, _ = _pd_closure_ordered(r, alphabet)
    return frozenset(order)


def brzozowski_states(r: Regex, alphabet: Optional[Alphabet] = None) -> tuple[Dfa, list]:
    """Brzozowski automaton plus the canonical derivative behind each state id.

    States are ACI-classes of word derivatives of r, numbered in BFS discovery
    order; state q steps to the class of its derivative, finality is
    nullability. Finite by Brzozowski's theorem for the ACI quotient.
    """
    alphabet = _resolve_alphabet(alphabet, r)
    start = canonicalize(r)
    order = [start]
    index = {start: 0}
    rows = []
    pos = 0
    while pos < len(order):
        q = order[pos]
        pos += 1
        row = []
        for a in alphabet:
            d = _deriv(q, a)
            t = index.get(d)
            if t is None:
                t = len(order)
                index[d] = t
                order.append(d)
            row.append(t)
        rows.append(tuple(row))
    finals = frozenset(i for i, q in enumerate(order) if nullable(q))
    return Dfa(len(order), alphabet, tuple(rows), 0, finals), order


def brzozowski_automaton(r: Regex, alphabet: Optional[Alphabet] = None) -> Dfa:
    """The DFA of ACI-canonical derivatives of r."""
    return brzozowski_states(r, alphabet)[0]


def partial_derivative_nfa(r: Regex, alphabet: Optional[Alphabet] = None) -> Nfa:
    """NFA whose states are pd_closure(r), initial state the class of r,
    with q -a-> q' iff q' is a partial derivative of q by a."""
    alphabet = _resolve_alphabet(alphabet, r)
    order, index = _pd_closure_ordered(r, alphabet)
    triples = set()
    for i, q in enumerate(order):
        for a in alphabet:
            for succ in _pd(q, a):
                triples.add((i, a, index[succ]))
    finals = frozenset(i for i, q in enumerate(order) if nullable(q))
    return Nfa(len(order), alphabet, frozenset(triples), frozenset((0,)), finals)


def size(r: Regex) -> int:
    """Number of syntax tree nodes."""
    match r:
        case Empty() | Epsilon() | Symbol(_):
            return 1
        case Union(l, rr) | Concat(l, rr):
            return 1 + size(l) + size(rr)
        case Star(x):
            return 1 + size(x)
    raise TypeError(f"not a regex: {r!r}")


def alphabetic_width(r: Regex) -> int:
    """Number of symbol occurrences (letters), ignoring operators and constants."""
    match r:
        case Empty() | Epsilon():
            return 0
        case Symbol(_):
            return 1
        case Union(l, rr) | Concat(l, rr):
            return alphabetic_width(l) + alphabetic_width(rr)
        case Star(x):
            return alphabetic_width(x)
    raise TypeError(f"not a regex: {r!r}")
