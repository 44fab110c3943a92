"""Ultimately periodic Kripke structures and position-indexed evaluation.

A :class:`LassoTrace` stands for the infinite state sequence
``prefix[0], ..., prefix[P-1], loop[0], ..., loop[L-1], loop[0], ...``.
Evaluation works on the finite quotient of positions ``0 .. P+L-1`` whose
last position steps back to ``P``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .formula import (
    Always,
    And,
    Atom,
    ConstFalse,
    ConstTrue,
    Formula,
    FormulaLike,
    Iff,
    Implies,
    Lit,
    Next,
    Not,
    Or,
    Sometime,
    as_formula,
)


class TraceSyntaxError(ValueError):
    def __init__(self, text: str, offset: int, message: str):
        self.text = text
        self.offset = offset
        super().__init__(f"at position {offset}: {message}")


class UnknownAtomError(KeyError):
    def __init__(self, names: Iterable[str], vocabulary: Iterable[str]):
        self.names = sorted(names)
        self.vocabulary = tuple(vocabulary)
        super().__init__(
            f"atoms {', '.join(self.names)} not in trace vocabulary "
            f"{{{', '.join(self.vocabulary)}}}"
        )

    def __str__(self):
        return self.args[0]


@dataclass(frozen=True)
class State:
    """A total valuation of ``vocabulary``; ``true_atoms`` are the tt ones."""

    vocabulary: tuple[str, ...]
    true_atoms: frozenset[str]

    def __post_init__(self):
        extra = self.true_atoms - set(self.vocabulary)
        if extra:
            raise ValueError(f"state assigns atoms outside its vocabulary: {sorted(extra)}")

    def __getitem__(self, atom: str) -> bool:
        if atom not in self.vocabulary:
            raise UnknownAtomError([atom], self.vocabulary)
        return atom in self.true_atoms

    @property
    def assignment(self) -> dict[str, bool]:
        return {a: a in self.true_atoms for a in self.vocabulary}

    def render(self) -> str:
        return "{" + ",".join(sorted(self.true_atoms)) + "}"


@dataclass(frozen=True)
class LassoTrace:
    vocabulary: tuple[str, ...]
    prefix: tuple[State, ...]
    loop: tuple[State, ...]

    def __post_init__(self):
        if not self.loop:
            raise ValueError("a lasso trace needs at least one loop state")
        for s in self.prefix + self.loop:
            if s.vocabulary != self.vocabulary:
                raise ValueError("all states must share the trace vocabulary")

    @classmethod
    def from_sets(
        cls,
        prefix: Iterable[Iterable[str]],
        loop: Iterable[Iterable[str]],
        vocabulary: Iterable[str] | None = None,
    ) -> "LassoTrace":
        """Build a trace from the sets of tt atoms of each state."""
        prefix = [frozenset(s) for s in prefix]
        loop = [frozenset(s) for s in loop]
        if vocabulary is None:
            vocabulary = set().union(*prefix, *loop)
        vocab = tuple(sorted(set(vocabulary)))
        return cls(
            vocab,
            tuple(State(vocab, s) for s in prefix),
            tuple(State(vocab, s) for s in loop),
        )

    def __len__(self) -> int:
        """Number of canonical positions, P + L."""
        return len(self.prefix) + len(self.loop)

    def canonical(self, i: int) -> int:
        if i < 0:
            raise ValueError("positions are natural numbers")
        p = len(self.prefix)
        if i < p:
            return i
        return p + (i - p) % len(self.loop)

    def successor(self, i: int) -> int:
        """Successor of canonical position ``i`` in the quotient."""
        return self.canonical(i + 1)

    def state_at(self, i: int) -> State:
        i = self.canonical(i)
        p = len(self.prefix)
        return self.prefix[i] if i < p else self.loop[i - p]

    @property
    def initial_state(self) -> State:
        return self.state_at(0)

    def states(self) -> tuple[State, ...]:
        return self.prefix + self.loop

    def __str__(self) -> str:
        return render_trace(self)


def _reachable_from(trace: LassoTrace, i: int) -> range:
    # from i the quotient visits i..P+L-1 and then cycles through P..P+L-1
    return range(min(i, len(trace.prefix)), len(trace))


def truth_table(trace: LassoTrace, f: Formula) -> dict[Formula, list[bool]]:
    """Truth value of every subformula of ``f`` at every canonical position."""
    missing = f.atoms() - set(trace.vocabulary)
    if missing:
        raise UnknownAtomError(missing, trace.vocabulary)
    n = len(trace)
    positions = range(n)
    succ = [trace.successor(i) for i in positions]
    table: dict[Formula, list[bool]] = {}

    def go(g: Formula) -> list[bool]:
        if g in table:
            return table[g]
        if isinstance(g, Atom):
            v = [trace.state_at(i)[g.name] for i in positions]
        elif isinstance(g, Lit):
            v = [trace.state_at(i)[g.name] == g.positive for i in positions]
        elif isinstance(g, ConstTrue):
            v = [True] * n
        elif isinstance(g, ConstFalse):
            v = [False] * n
        elif isinstance(g, Not):
            a = go(g.arg)
            v = [not x for x in a]
        elif isinstance(g, Next):
            a = go(g.arg)
            v = [a[succ[i]] for i in positions]
        elif isinstance(g, Always):
            a = go(g.arg)
            v = [all(a[j] for j in _reachable_from(trace, i)) for i in positions]
        elif isinstance(g, Sometime):
            a = go(g.arg)
            v = [any(a[j] for j in _reachable_from(trace, i)) for i in positions]
        else:
            a, b = go(g.left), go(g.right)
            if isinstance(g, And):
                v = [x and y for x, y in zip(a, b)]
            elif isinstance(g, Or):
                v = [x or y for x, y in zip(a, b)]
            elif isinstance(g, Implies):
                v = [(not x) or y for x, y in zip(a, b)]
            elif isinstance(g, Iff):
                v = [x == y for x, y in zip(a, b)]
            else:
                raise TypeError(f"cannot evaluate {g!r}")
        table[g] = v
        return v

    go(f)
    return table


def evaluate(trace: LassoTrace, i: int, f: FormulaLike) -> bool:
    """Truth of ``f`` at position ``i`` of ``trace`` (``i`` may exceed P+L)."""
    f = as_formula(f)
    return truth_table(trace, f)[f][trace.canonical(i)]


def globally_satisfies(trace: LassoTrace, f: FormulaLike) -> bool:
    """True iff ``f`` holds at every position of ``trace``."""
    f = as_formula(f)
    return all(truth_table(trace, f)[f])


def with_vocabulary(trace: LassoTrace, extra: Iterable[str]) -> LassoTrace:
    """The same trace over a larger vocabulary; new atoms are ff everywhere."""
    vocab = set(trace.vocabulary) | set(extra)
    return LassoTrace.from_sets(
        [s.true_atoms for s in trace.prefix], [s.true_atoms for s in trace.loop], vocab
    )


def has_vocabulary_header(text: str) -> bool:
    return _VOCAB_RE.match(text) is not None


def unroll(trace: LassoTrace, times: int = 1) -> LassoTrace:
    """Same infinite sequence, with ``times`` loop copies moved into the prefix."""
    return LassoTrace(trace.vocabulary, trace.prefix + trace.loop * times, trace.loop)


# --------------------------------------------------------------------------
# Text format:  [V=a,b;] {..}{..}|{..}{..}

_VOCAB_RE = re.compile(r"\s*V\s*=\s*([^;]*);")
_NAME_RE = re.compile(r"[a-z][a-zA-Z0-9_]*")


def parse_trace(text: str) -> LassoTrace:
    """Parse ``<prefix-states>|<loop-states>``, e.g. ``{p}{}|{p,q}``."""
    pos = 0
    declared = None
    m = _VOCAB_RE.match(text)
    if m:
        names = [n.strip() for n in m.group(1).split(",") if n.strip()]
        for n in names:
            if not _NAME_RE.fullmatch(n):
                raise TraceSyntaxError(text, m.start(1), f"bad atom name {n!r}")
        declared = names
        pos = m.end()

    parts: list[list[frozenset[str]]] = [[]]
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
        elif ch == "|":
            if len(parts) == 2:
                raise TraceSyntaxError(text, pos, "second '|' separator")
            parts.append([])
            pos += 1
        elif ch == "{":
            end = text.find("}", pos)
            if end < 0:
                raise TraceSyntaxError(text, pos, "unterminated state, expected '}'")
            body = text[pos + 1:end]
            names = [x.strip() for x in body.split(",")] if body.strip() else []
            for name in names:
                if not _NAME_RE.fullmatch(name):
                    raise TraceSyntaxError(text, pos + 1, f"bad atom name {name!r}")
            parts[-1].append(frozenset(names))
            pos = end + 1
        else:
            raise TraceSyntaxError(text, pos, f"expected '{{', '|' or end of input, found {ch!r}")
    if len(parts) != 2:
        raise TraceSyntaxError(text, n, "missing '|' between prefix and loop")
    prefix, loop = parts
    if not loop:
        raise TraceSyntaxError(text, n, "loop must contain at least one state")
    mentioned = set().union(*prefix, *loop)
    if declared is not None:
        undeclared = mentioned - set(declared)
        if undeclared:
            raise TraceSyntaxError(
                text, 0, f"atoms {sorted(undeclared)} missing from the V= declaration"
            )
        vocabulary = declared
    else:
        vocabulary = mentioned
    return LassoTrace.from_sets(prefix, loop, vocabulary)


def render_trace(trace: LassoTrace) -> str:
    """Canonical text; a ``V=`` header only when some atom is never tt."""
    mentioned = set().union(*(s.true_atoms for s in trace.states()))
    head = ""
    if mentioned != set(trace.vocabulary):
        head = "V=" + ",".join(trace.vocabulary) + ";"
    pre = "".join(s.render() for s in trace.prefix)
    loop = "".join(s.render() for s in trace.loop)
    return f"{head}{pre}|{loop}"

