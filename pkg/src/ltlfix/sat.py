"""Tableau decision procedure: satisfiability, validity and consequence.

The tableau has one node per maximal locally consistent subset of the NNF
closure (an *atom*).  ``A -> B`` is a transition when every ``X g`` in the
closure satisfies ``X g in A  <=>  g in B``.  A formula is satisfiable iff
some strongly connected component reachable from an atom containing it has
a cycle and fulfils every ``F g`` promised inside it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from . import _kernels
from ._kernels._pykernels import AND, ELEM, FALSE, NOT, OR, TRUE
from .formula import (
    Always,
    And,
    ConstFalse,
    ConstTrue,
    Formula,
    FormulaLike,
    Lit,
    Next,
    Not,
    Or,
    Sometime,
    as_formula,
    closure,
    conjoin,
    is_nnf,
    render,
    to_nnf,
)
from .trace import LassoTrace

DEFAULT_CLOSURE_LIMIT = 64
DEFAULT_ATOM_LIMIT = 1 << 22


class ResourceLimitError(RuntimeError):
    pass


def closure_order(f: Formula) -> tuple[Formula, ...]:
    """Closure of ``f`` sorted by (size, rendering): children before parents."""
    return tuple(sorted(closure(f), key=lambda g: (g.size, render(g))))


@dataclass(frozen=True)
class TableauAtom:
    mask: int
    members: frozenset[Formula]

    def __contains__(self, f: Formula) -> bool:
        return f in self.members


@dataclass
class TableauGraph:
    root: Formula
    closure: tuple[Formula, ...]
    masks: list[int]
    initial: list[int]
    offers: list[int] = field(repr=False)
    demands: list[int] = field(repr=False)
    groups: dict[int, list[int]] = field(repr=False)

    @cached_property
    def index(self) -> dict[Formula, int]:
        return {g: i for i, g in enumerate(self.closure)}

    @cached_property
    def atoms(self) -> list[TableauAtom]:
        return [TableauAtom(m, self.members(m)) for m in self.masks]

    def members(self, mask: int) -> frozenset[Formula]:
        return frozenset(g for i, g in enumerate(self.closure) if mask >> i & 1)

    def successors(self, i: int) -> list[int]:
        return self.groups.get(self.demands[i], [])

    def transitions(self) -> Iterator[tuple[int, int]]:
        for i in range(len(self.masks)):
            for j in self.successors(i):
                yield i, j

    def __len__(self) -> int:
        return len(self.masks)


def _encode(order: Sequence[Formula]):
    idx = {g: i for i, g in enumerate(order)}
    positive = {g.name for g in order if isinstance(g, Lit) and g.positive}
    kinds, arg0, arg1 = [], [], []
    for g in order:
        a = b = 0
        if isinstance(g, Lit):
            if not g.positive and g.name in positive:
                kind, a = NOT, idx[Lit(g.name, True)]
            else:
                kind = ELEM
        elif isinstance(g, Next):
            kind = ELEM
        elif isinstance(g, ConstTrue):
            kind = TRUE
        elif isinstance(g, ConstFalse):
            kind = FALSE
        elif isinstance(g, (And, Or)):
            kind = AND if isinstance(g, And) else OR
            a, b = idx[g.left], idx[g.right]
        elif isinstance(g, (Always, Sometime)):
            # G g = g & X G g ;  F g = g | X F g
            kind = AND if isinstance(g, Always) else OR
            a, b = idx[g.arg], idx[Next(g)]
        else:
            raise TypeError(f"not an NNF node: {g!r}")
        kinds.append(kind)
        arg0.append(a)
        arg1.append(b)
    next_idx = [i for i, g in enumerate(order) if isinstance(g, Next)]
    next_arg = [idx[order[i].arg] for i in next_idx]
    return kinds, arg0, arg1, next_idx, next_arg


def build_tableau(
    f: Formula,
    *,
    closure_limit: int = DEFAULT_CLOSURE_LIMIT,
    atom_limit: int = DEFAULT_ATOM_LIMIT,
    kernels=None,
) -> TableauGraph:
    """Build the full tableau of an NNF formula.

    Raises :class:`ResourceLimitError` when the closure exceeds
    ``closure_limit`` or the atom count would exceed ``atom_limit``.
    ``kernels`` forces a kernel module (used by tests and benchmarks).
    """
    if not is_nnf(f):
        raise ValueError("build_tableau expects a formula in negation normal form")
    order = closure_order(f)
    if len(order) > closure_limit:
        raise ResourceLimitError(
            f"closure has {len(order)} formulas, limit is {closure_limit}"
        )
    kinds, arg0, arg1, next_idx, next_arg = _encode(order)
    free_bits = kinds.count(ELEM)
    if (1 << free_bits) > atom_limit:
        raise ResourceLimitError(
            f"tableau would have 2^{free_bits} atoms, limit is {atom_limit}"
        )
    k = kernels or _kernels.backend_for(len(order))
    masks = k.enumerate_atoms(kinds, arg0, arg1)
    offers, demands = k.transition_keys(masks, next_idx, next_arg)
    groups: dict[int, list[int]] = {}
    for i, key in enumerate(offers):
        groups.setdefault(key, []).append(i)
    root_bit = order.index(f)
    initial = [i for i, m in enumerate(masks) if m >> root_bit & 1]
    return TableauGraph(f, order, masks, initial, offers, demands, groups)


# --------------------------------------------------------------------------
# Verdicts


@dataclass(frozen=True)
class Sat:
    witness: LassoTrace

    satisfiable = True

    def __bool__(self):
        return True


@dataclass(frozen=True)
class Unsat:
    satisfiable = False

    def __bool__(self):
        return False


@dataclass(frozen=True)
class Valid:
    valid = True

    def __bool__(self):
        return True


@dataclass(frozen=True)
class NotValid:
    countermodel: LassoTrace

    valid = False

    def __bool__(self):
        return False


@dataclass(frozen=True)
class Consequence:
    holds: bool
    countermodel: LassoTrace | None = None

    def __bool__(self):
        return self.holds


# --------------------------------------------------------------------------
# Search


def _scc_analysis(g: TableauGraph, kernels):
    """Component ids of atoms and the set of self-fulfilling component ids.

    Tarjan runs on a bipartite graph: atom -> its demand key -> every atom
    offering that key.  This has the same atom-level reachability as the
    tableau with O(atoms) edges instead of O(atoms^2).
    """
    n = len(g.masks)
    keys = list(g.groups)
    key_node = {key: n + j for j, key in enumerate(keys)}
    indptr = [0]
    indices: list[int] = []
    for i in range(n):
        node = key_node.get(g.demands[i])
        if node is not None:
            indices.append(node)
        indptr.append(len(indices))
    for key in keys:
        indices.extend(g.groups[key])
        indptr.append(len(indices))
    comp = kernels.tarjan_scc(n + len(keys), indptr, indices)

    size: dict[int, int] = {}
    union: dict[int, int] = {}
    for v, c in enumerate(comp):
        size[c] = size.get(c, 0) + 1
        if v < n:
            union[c] = union.get(c, 0) | g.masks[v]

    idx = g.index
    eventualities = [
        (i, idx[s.arg]) for i, s in enumerate(g.closure) if isinstance(s, Sometime)
    ]
    good = set()
    for c, u in union.items():
        # bipartite graph: a component of size 1 has no cycle
        if size[c] < 2:
            continue
        if all(u >> gi & 1 for si, gi in eventualities if u >> si & 1):
            good.add(c)
    return comp[:n], good, eventualities


def _bfs_path(g: TableauGraph, src: int, dst: int, allowed: set[int]) -> list[int]:
    """Shortest non-empty path src -> dst inside ``allowed``, excluding src."""
    parent = {}
    queue = deque()
    for s in g.successors(src):
        if s in allowed and s not in parent:
            parent[s] = src
            queue.append(s)
    while queue:
        v = queue.popleft()
        if v == dst:
            path = [v]
            v = parent[v]
            while v != src:
                path.append(v)
                v = parent[v]
            return path[::-1]
        for s in g.successors(v):
            if s in allowed and s not in parent:
                parent[s] = v
                queue.append(s)
    raise AssertionError("no path inside a strongly connected component")


def find_fulfilling_lasso(g: TableauGraph, kernels=None):
    """Atom indices ``(prefix, loop)`` of an accepting lasso, or ``None``."""
    if not g.initial:
        return None
    k = kernels or _kernels.backend_for(len(g.closure))
    comp, good, eventualities = _scc_analysis(g, k)
    if not good:
        return None

    # breadth-first from all initial atoms, in mask order
    parent: dict[int, int | None] = {}
    queue = deque()
    for i in g.initial:
        parent[i] = None
        queue.append(i)
    entry = None
    while queue:
        v = queue.popleft()
        if comp[v] in good:
            entry = v
            break
        for s in g.successors(v):
            if s not in parent:
                parent[s] = v
                queue.append(s)
    if entry is None:
        return None

    prefix = []
    v = parent[entry]
    while v is not None:
        prefix.append(v)
        v = parent[v]
    prefix.reverse()

    c = comp[entry]
    members = [i for i, ci in enumerate(comp) if ci == c]
    allowed = set(members)
    union = 0
    for i in members:
        union |= g.masks[i]
    targets = []
    for si, gi in eventualities:
        if union >> si & 1:
            t = next(i for i in members if g.masks[i] >> gi & 1)
            if t not in targets:
                targets.append(t)

    loop = [entry]
    cur = entry
    for t in targets:
        if t != cur:
            loop.extend(_bfs_path(g, cur, t, allowed))
            cur = t
    back = _bfs_path(g, cur, entry, allowed)
    loop.extend(back[:-1])
    return prefix, loop


def _witness(g: TableauGraph, vocabulary, prefix, loop) -> LassoTrace:
    positive = [
        (i, s.name) for i, s in enumerate(g.closure) if isinstance(s, Lit) and s.positive
    ]

    def state(a):
        m = g.masks[a]
        return {name for i, name in positive if m >> i & 1}

    return LassoTrace.from_sets(
        [state(a) for a in prefix], [state(a) for a in loop], vocabulary
    )


def is_satisfiable(
    f: FormulaLike,
    *,
    closure_limit: int = DEFAULT_CLOSURE_LIMIT,
    atom_limit: int = DEFAULT_ATOM_LIMIT,
    kernels=None,
) -> Sat | Unsat:
    """Decide whether ``f`` holds at position 0 of some Kripke structure.

    A ``Sat`` verdict carries a lasso witness over the atoms of ``f`` on which
    ``f`` is true at position 0.
    """
    f = as_formula(f)
    g = build_tableau(
        to_nnf(f), closure_limit=closure_limit, atom_limit=atom_limit, kernels=kernels
    )
    found = find_fulfilling_lasso(g, kernels)
    if found is None:
        return Unsat()
    return Sat(_witness(g, sorted(f.atoms()), *found))


def is_valid(f: FormulaLike, **limits) -> Valid | NotValid:
    """``f`` is valid iff ``!f`` is unsatisfiable; otherwise return a countermodel."""
    f = as_formula(f)
    verdict = is_satisfiable(Not(f), **limits)
    if isinstance(verdict, Unsat):
        return Valid()
    return NotValid(verdict.witness)


def consequence_formula(premises: Iterable[Formula], conclusion: Formula) -> Formula:
    """``G p1 & ... & G pn & F !c``: satisfiable iff the consequence fails."""
    parts = [Always(p) for p in premises]
    parts.append(Sometime(Not(conclusion)))
    return conjoin(parts)


def is_consequence(
    premises: Iterable[FormulaLike], conclusion: FormulaLike, **limits
) -> Consequence:
    """Does every structure satisfying all premises everywhere satisfy the conclusion everywhere?"""
    premises = [as_formula(p) for p in premises]
    conclusion = as_formula(conclusion)
    verdict = is_satisfiable(consequence_formula(premises, conclusion), **limits)
    if isinstance(verdict, Unsat):
        return Consequence(True)
    return Consequence(False, verdict.witness)
