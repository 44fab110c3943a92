"""Formula syntax trees, the concrete-syntax parser and printer, NNF and closure.

Grammar (ASCII, Unicode aliases accepted on input)::

    iff     := implies ( "<->" iff )?
    implies := or ( "->" implies )?
    or      := and ( "|" and )*
    and     := unary ( "&" unary )*
    unary   := ("!" | "X" | "G" | "F") unary | primary
    primary := atom | "true" | "false" | "(" iff ")"

Abbreviations (negation, conjunction, ...) are real nodes, so a parsed
formula prints back the way it was written.  The NNF fragment reuses the
same node classes plus :class:`Lit`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union


class Formula:
    """Base class of all formula nodes.  Nodes are immutable and hashable."""

    __slots__ = ()

    def children(self) -> tuple["Formula", ...]:
        return ()

    @property
    def size(self) -> int:
        return 1 + sum(c.size for c in self.children())

    def subformulas(self) -> Iterator["Formula"]:
        """Yield every subformula, the node itself included (pre-order)."""
        yield self
        for c in self.children():
            yield from c.subformulas()

    def atoms(self) -> frozenset[str]:
        return frozenset(
            s.name for s in self.subformulas() if isinstance(s, (Atom, Lit))
        )

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Hole(Formula):
    """The ``_`` placeholder of an operator template."""


@dataclass(frozen=True)
class ConstTrue(Formula):
    pass


@dataclass(frozen=True)
class ConstFalse(Formula):
    pass


@dataclass(frozen=True)
class Lit(Formula):
    """NNF literal: ``name`` with ``positive`` polarity."""

    name: str
    positive: bool = True


@dataclass(frozen=True)
class _Unary(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class _Binary(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


class Not(_Unary):
    pass


class Next(_Unary):
    pass


class Always(_Unary):
    pass


class Sometime(_Unary):
    pass


class And(_Binary):
    pass


class Or(_Binary):
    pass


class Implies(_Binary):
    pass


class Iff(_Binary):
    pass


TRUE = ConstTrue()
FALSE = ConstFalse()

ATOM_RE = re.compile(r"[a-z][a-zA-Z0-9_]*")
KEYWORDS = frozenset({"true", "false"})

NNF_NODES = (Lit, ConstTrue, ConstFalse, And, Or, Next, Always, Sometime)


# --------------------------------------------------------------------------
# Parsing


class ParseError(ValueError):
    """Syntax error at a UTF-8 byte ``offset`` of the input."""

    def __init__(self, text: str, offset: int, expected: str, found: str):
        self.text = text
        self.offset = offset
        self.expected = expected
        self.found = found
        super().__init__(f"at byte {offset}: expected {expected}, found {found}")


_SYMBOLS = [
    ("<->", "IFF"), ("↔", "IFF"), ("⇔", "IFF"), ("⟷", "IFF"),
    ("->", "IMP"), ("→", "IMP"), ("⇒", "IMP"),
    ("&", "AND"), ("∧", "AND"),
    ("|", "OR"), ("∨", "OR"),
    ("!", "NOT"), ("¬", "NOT"), ("~", "NOT"),
    ("X", "NEXT"), ("○", "NEXT"), ("◯", "NEXT"),
    ("G", "ALWAYS"), ("□", "ALWAYS"), ("◻", "ALWAYS"),
    ("F", "SOMETIME"), ("◇", "SOMETIME"), ("◊", "SOMETIME"), ("♢", "SOMETIME"),
    ("(", "LPAREN"), (")", "RPAREN"),
    ("_", "HOLE"),
]

_DESCRIBE = {
    "IFF": "'<->'", "IMP": "'->'", "AND": "'&'", "OR": "'|'", "NOT": "'!'",
    "NEXT": "'X'", "ALWAYS": "'G'", "SOMETIME": "'F'", "LPAREN": "'('",
    "RPAREN": "')'", "HOLE": "'_'", "ATOM": "atom", "TRUE": "'true'",
    "FALSE": "'false'", "EOF": "end of input",
}

_OPERAND = "atom, constant, '(' or unary operator"


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    byte = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            byte += len(ch.encode())
            continue
        m = ATOM_RE.match(text, pos)
        if m:
            word = m.group()
            kind = word.upper() if word in KEYWORDS else "ATOM"
            tokens.append((kind, word, byte))
        else:
            for sym, kind in _SYMBOLS:
                if text.startswith(sym, pos):
                    tokens.append((kind, sym, byte))
                    word = sym
                    break
            else:
                raise ParseError(text, byte, _OPERAND + " or binary operator", repr(ch))
        pos += len(word)
        byte += len(word.encode())
    tokens.append(("EOF", "", byte))
    return tokens


class _Parser:
    def __init__(self, text: str, allow_hole: bool):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.allow_hole = allow_hole

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def fail(self, expected: str):
        kind, word, offset = self.tokens[self.i]
        found = "end of input" if kind == "EOF" else repr(word)
        raise ParseError(self.text, offset, expected, found)

    def take(self, kind: str):
        if self.peek() != kind:
            self.fail(_DESCRIBE[kind])
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> Formula:
        f = self.iff()
        if self.peek() != "EOF":
            self.fail("binary operator or end of input")
        return f

    def iff(self) -> Formula:
        left = self.implies()
        if self.peek() == "IFF":
            self.i += 1
            return Iff(left, self.iff())
        return left

    def implies(self) -> Formula:
        left = self.disj()
        if self.peek() == "IMP":
            self.i += 1
            return Implies(left, self.implies())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek() == "OR":
            self.i += 1
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek() == "AND":
            self.i += 1
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        ctor = _UNARY_TOKENS.get(self.peek())
        if ctor is not None:
            self.i += 1
            return ctor(self.unary())
        return self.primary()

    def primary(self) -> Formula:
        kind, word, _ = self.tokens[self.i]
        if kind == "ATOM":
            self.i += 1
            return Atom(word)
        if kind == "TRUE":
            self.i += 1
            return TRUE
        if kind == "FALSE":
            self.i += 1
            return FALSE
        if kind == "HOLE" and self.allow_hole:
            self.i += 1
            return Hole()
        if kind == "LPAREN":
            self.i += 1
            f = self.iff()
            self.take("RPAREN")
            return f
        self.fail(_OPERAND)


_UNARY_TOKENS = {"NOT": Not, "NEXT": Next, "ALWAYS": Always, "SOMETIME": Sometime}


def parse(text: str, *, allow_hole: bool = False) -> Formula:
    """Parse ``text`` into a :class:`Formula`.

    ``allow_hole`` admits the template placeholder ``_``.  Raises
    :class:`ParseError` carrying the byte offset of the offending token.
    """
    return _Parser(text, allow_hole).parse()


# --------------------------------------------------------------------------
# Printing

_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}
_BINOP = {Iff: "<->", Implies: "->", Or: "|", And: "&"}
_RIGHT_ASSOC = (Iff, Implies)
_TEMPORAL = {Next: "X", Always: "G", Sometime: "F"}
_UNARY_PREC = 5


def _prec(f: Formula) -> int:
    if isinstance(f, _Binary):
        return _PREC[type(f)]
    return _UNARY_PREC if isinstance(f, _Unary) else _UNARY_PREC + 1


def render(f: Formula) -> str:
    """Canonical ASCII text with minimal parentheses; ``parse`` inverts it.

    A negation over anything but an atom, constant or another negation is
    written ``!(...)`` for legibility, e.g. ``!(X p)``.
    """
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Hole):
        return "_"
    if isinstance(f, ConstTrue):
        return "true"
    if isinstance(f, ConstFalse):
        return "false"
    if isinstance(f, Lit):
        return f.name if f.positive else "!" + f.name
    if isinstance(f, Not):
        inner = render(f.arg)
        if isinstance(f.arg, (Atom, Hole, ConstTrue, ConstFalse, Not, Lit)):
            return "!" + inner
        return f"!({inner})"
    if isinstance(f, _Unary):
        inner = render(f.arg)
        if _prec(f.arg) < _UNARY_PREC:
            inner = f"({inner})"
        return f"{_TEMPORAL[type(f)]} {inner}"
    if isinstance(f, _Binary):
        p = _PREC[type(f)]
        left, right = render(f.left), render(f.right)
        lp, rp = _prec(f.left), _prec(f.right)
        if isinstance(f, _RIGHT_ASSOC):
            left_paren, right_paren = lp <= p, rp < p
        else:
            left_paren, right_paren = lp < p, rp <= p
        if left_paren:
            left = f"({left})"
        if right_paren:
            right = f"({right})"
        return f"{left} {_BINOP[type(f)]} {right}"
    raise TypeError(f"not a formula node: {f!r}")


# --------------------------------------------------------------------------
# Negation normal form

def to_nnf(f: Formula) -> Formula:
    """Push negations down to the atoms.

    The result only uses :data:`NNF_NODES`.  ``a <-> b`` expands to
    ``(a & b) | (!a & !b)`` and its negation to ``(a & !b) | (!a & b)``.
    """
    return _nnf(f, True)


def _nnf(f: Formula, pos: bool) -> Formula:
    if isinstance(f, (Atom, Lit)):
        polarity = f.positive if isinstance(f, Lit) else True
        return Lit(f.name, polarity == pos)
    if isinstance(f, ConstTrue):
        return TRUE if pos else FALSE
    if isinstance(f, ConstFalse):
        return FALSE if pos else TRUE
    if isinstance(f, Not):
        return _nnf(f.arg, not pos)
    if isinstance(f, Next):
        return Next(_nnf(f.arg, pos))
    if isinstance(f, Always):
        return Always(_nnf(f.arg, pos)) if pos else Sometime(_nnf(f.arg, False))
    if isinstance(f, Sometime):
        return Sometime(_nnf(f.arg, pos)) if pos else Always(_nnf(f.arg, False))
    if isinstance(f, And):
        ctor = And if pos else Or
        return ctor(_nnf(f.left, pos), _nnf(f.right, pos))
    if isinstance(f, Or):
        ctor = Or if pos else And
        return ctor(_nnf(f.left, pos), _nnf(f.right, pos))
    if isinstance(f, Implies):
        if pos:
            return Or(_nnf(f.left, False), _nnf(f.right, True))
        return And(_nnf(f.left, True), _nnf(f.right, False))
    if isinstance(f, Iff):
        a, na = _nnf(f.left, True), _nnf(f.left, False)
        b, nb = _nnf(f.right, True), _nnf(f.right, False)
        if pos:
            return Or(And(a, b), And(na, nb))
        return Or(And(a, nb), And(na, b))
    if isinstance(f, Hole):
        raise TypeError("cannot normalise a template hole")
    raise TypeError(f"not a formula node: {f!r}")


def is_nnf(f: Formula) -> bool:
    return all(isinstance(s, NNF_NODES) for s in f.subformulas())


def embed(f: Formula) -> Formula:
    """Map an NNF formula back into the parser's vocabulary (Lit -> Atom/Not)."""
    if isinstance(f, Lit):
        return Atom(f.name) if f.positive else Not(Atom(f.name))
    if isinstance(f, _Unary):
        return type(f)(embed(f.arg))
    if isinstance(f, _Binary):
        return type(f)(embed(f.left), embed(f.right))
    return f


def closure(f: Formula) -> frozenset[Formula]:
    """Subformulas of an NNF formula plus ``X G g`` / ``X F g`` expansions."""
    if not is_nnf(f):
        raise ValueError("closure expects a formula in negation normal form")
    out: set[Formula] = set()
    for s in f.subformulas():
        out.add(s)
        if isinstance(s, (Always, Sometime)):
            out.add(Next(s))
    return frozenset(out)


def substitute(body: Formula, value: Formula) -> Formula:
    """Replace every :class:`Hole` in ``body`` by ``value``."""
    if isinstance(body, Hole):
        return value
    if isinstance(body, _Unary):
        return type(body)(substitute(body.arg, value))
    if isinstance(body, _Binary):
        return type(body)(substitute(body.left, value), substitute(body.right, value))
    return body


def contains_hole(f: Formula) -> bool:
    return any(isinstance(s, Hole) for s in f.subformulas())


def conjoin(fs) -> Formula:
    fs = list(fs)
    if not fs:
        return TRUE
    out = fs[0]
    for g in fs[1:]:
        out = And(out, g)
    return out


FormulaLike = Union[Formula, str]


def as_formula(f: FormulaLike) -> Formula:
    return parse(f) if isinstance(f, str) else f
