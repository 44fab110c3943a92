"""Fixed points of unary temporal operators.

An operator is a formula with holes, e.g. ``X G !_``.  A sentence ``y`` is a
fixed point of ``O`` in a structure when ``y <-> O(y)`` holds at every
position, so ``O`` has a fixed point somewhere iff ``G(p <-> O(p))`` is
satisfiable for a fresh atom ``p``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import (
    Always,
    Atom,
    Formula,
    FormulaLike,
    Iff,
    Implies,
    Next,
    Not,
    contains_hole,
    parse,
    render,
    substitute,
)
from .sat import Sat, is_satisfiable, is_valid
from .trace import LassoTrace

FRESH_ATOM = "p"


class TemplateError(ValueError):
    pass


@dataclass(frozen=True)
class OperatorTemplate:
    body: Formula

    def __post_init__(self):
        if not contains_hole(self.body):
            raise TemplateError(f"template {render(self.body)!r} has no '_' hole")

    @classmethod
    def parse(cls, text: str) -> "OperatorTemplate":
        return cls(parse(text, allow_hole=True))

    def __str__(self):
        return render(self.body)


def apply(t: OperatorTemplate | str, f: FormulaLike) -> Formula:
    """Substitute ``f`` for every hole of ``t``."""
    if isinstance(t, str):
        t = OperatorTemplate.parse(t)
    if isinstance(f, str):
        f = parse(f)
    return substitute(t.body, f)


def fixed_point_sentence(t: OperatorTemplate, atom: str = FRESH_ATOM) -> Formula:
    """``G(p <-> O(p))``."""
    if atom in t.body.atoms():
        raise TemplateError(f"template already mentions the fresh atom {atom!r}")
    p = Atom(atom)
    return Always(Iff(p, apply(t, p)))


NO_FIXED_POINT = "NoFixedPoint"
FIXED_POINT = "FixedPointExists"


@dataclass(frozen=True)
class FixpointReport:
    template: OperatorTemplate
    verdict: str
    witness: LassoTrace | None = None
    theorem_tag: str | None = None
    expected: str | None = None

    @property
    def has_fixed_point(self) -> bool:
        return self.verdict == FIXED_POINT

    @property
    def matches(self) -> bool:
        return self.expected is None or self.expected == self.verdict


def has_global_fixed_point(
    t: OperatorTemplate | str, *, theorem_tag: str | None = None, **limits
) -> FixpointReport:
    if isinstance(t, str):
        t = OperatorTemplate.parse(t)
    verdict = is_satisfiable(fixed_point_sentence(t), **limits)
    if isinstance(verdict, Sat):
        return FixpointReport(t, FIXED_POINT, verdict.witness, theorem_tag)
    return FixpointReport(t, NO_FIXED_POINT, None, theorem_tag)


# (template, expected verdict, tag)
PARADOX_TEMPLATES = (
    ("X G !_", NO_FIXED_POINT, "yablo-always"),
    ("X F !_", NO_FIXED_POINT, "yablo-sometimes"),
    ("X F G !_", NO_FIXED_POINT, "yablo-almost-always"),
    ("X G F !_", NO_FIXED_POINT, "yablo-infinitely-often"),
    ("!(G _)", NO_FIXED_POINT, "no-fixpoint-not-always"),
    ("G !_", NO_FIXED_POINT, "no-fixpoint-always-not"),
    ("G _", FIXED_POINT, "fixpoint-always"),
    ("!(X _)", FIXED_POINT, "fixpoint-not-next"),
)


def paradox_suite(**limits) -> list[FixpointReport]:
    reports = []
    for text, expected, tag in PARADOX_TEMPLATES:
        r = has_global_fixed_point(text, theorem_tag=tag, **limits)
        reports.append(
            FixpointReport(r.template, r.verdict, r.witness, r.theorem_tag, expected)
        )
    return reports


@dataclass(frozen=True)
class LawResult:
    formula: Formula
    tag: str
    valid: bool
    countermodel: LassoTrace | None = None


def _chain(*texts: str) -> list[Formula]:
    fs = [parse(t) for t in texts]
    return [Iff(a, b) for a, b in zip(fs, fs[1:])]


# Adjacent links of the four rewritings of each Yablo operator.
CHAINS = {
    "chain-always": _chain("X G !p", "G X !p", "G !(X p)"),
    "chain-sometimes": _chain("X F !p", "F X !p", "F !(X p)"),
    "chain-almost-always": _chain("X F G !p", "F X G !p", "F G X !p", "F G !(X p)"),
    "chain-infinitely-often": _chain("X G F !p", "G X F !p", "G F X !p", "G F !(X p)"),
}

p = Atom("p")
BASE_LAWS = (
    ("law-next-not", Iff(Not(Next(p)), Next(Not(p)))),
    ("law-next-always", Iff(Next(Always(p)), Always(Next(p)))),
    ("law-always-not-implies-not", Implies(Always(Not(p)), Not(p))),
)
del p


def _check(tag: str, f: Formula, limits) -> LawResult:
    v = is_valid(f, **limits)
    return LawResult(f, tag, v.valid, getattr(v, "countermodel", None))


def equivalence_chains(**limits) -> list[LawResult]:
    return [_check(tag, f, limits) for tag, links in CHAINS.items() for f in links]


def law_suite(**limits) -> list[LawResult]:
    """The next/always laws, ``G !p -> !p`` and every chain link."""
    base = [_check(tag, f, limits) for tag, f in BASE_LAWS]
    return base + equivalence_chains(**limits)


def substitution_route(**limits):
    """The sometimes-variant result via ``!p`` fed into the always sentence.

    Returns the verdict of ``G(!p <-> X G !!p)``.
    """
    q = Not(Atom(FRESH_ATOM))
    return is_satisfiable(Always(Iff(q, Next(Always(Not(q))))), **limits)


__all__ = [
    "FIXED_POINT",
    "NO_FIXED_POINT",
    "FixpointReport",
    "LawResult",
    "OperatorTemplate",
    "TemplateError",
    "apply",
    "equivalence_chains",
    "fixed_point_sentence",
    "has_global_fixed_point",
    "law_suite",
    "paradox_suite",
    "substitution_route",
]
