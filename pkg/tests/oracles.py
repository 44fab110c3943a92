"""Independent reference procedures used as test oracles.

Nothing here calls into the tableau or the quotient evaluator.
"""

import itertools
import random

from ltlfix.formula import (
    FALSE,
    TRUE,
    Always,
    And,
    Atom,
    ConstFalse,
    ConstTrue,
    Iff,
    Implies,
    Lit,
    Next,
    Not,
    Or,
    Sometime,
)
from ltlfix.trace import LassoTrace

UNARY = (Not, Next, Always, Sometime)
BINARY = (And, Or, Implies, Iff)
NNF_UNARY = (Next, Always, Sometime)
NNF_BINARY = (And, Or)


def all_formulas(size, leaves, unary=UNARY, binary=BINARY):
    """Every formula tree with exactly ``size`` nodes."""
    if size == 1:
        yield from leaves
        return
    for ctor in unary:
        for sub in all_formulas(size - 1, leaves, unary, binary):
            yield ctor(sub)
    for left_size in range(1, size - 1):
        right_size = size - 1 - left_size
        lefts = list(all_formulas(left_size, leaves, unary, binary))
        rights = list(all_formulas(right_size, leaves, unary, binary))
        for ctor in binary:
            for a in lefts:
                for b in rights:
                    yield ctor(a, b)


def random_formula(rng, size, atoms):
    """A random formula of exactly ``size`` nodes over ``atoms``."""
    if size == 1:
        r = rng.random()
        if r < 0.1:
            return TRUE
        if r < 0.2:
            return FALSE
        return Atom(rng.choice(atoms))
    if size == 2 or rng.random() < 0.45:
        return rng.choice(UNARY)(random_formula(rng, size - 1, atoms))
    left = rng.randint(1, size - 2)
    return rng.choice(BINARY)(
        random_formula(rng, left, atoms), random_formula(rng, size - 1 - left, atoms)
    )


def corpus(n, max_size, max_atoms, seed):
    rng = random.Random(seed)
    names = ["p", "q", "r"][:max_atoms]
    out = []
    for _ in range(n):
        k = rng.randint(1, max_atoms)
        out.append(random_formula(rng, rng.randint(1, max_size), names[:k]))
    return out


def all_lassos(vocabulary, max_len):
    """Every lasso over ``vocabulary`` with 1 <= P + L <= ``max_len``."""
    vocabulary = sorted(vocabulary)
    states = [
        frozenset(a for a, bit in zip(vocabulary, bits) if bit)
        for bits in itertools.product((False, True), repeat=len(vocabulary))
    ]
    for n in range(1, max_len + 1):
        for seq in itertools.product(states, repeat=n):
            for p in range(n):
                yield LassoTrace.from_sets(seq[:p], seq[p:], vocabulary)


def naive_eval(trace, i, f):
    """Direct recursive reading of the semantic clauses on the unrolled trace.

    ``always``/``sometime`` at i scan positions i .. max(i, P) + L - 1,
    which visits every distinct future state of an ultimately periodic
    sequence at least once.
    """
    P, L = len(trace.prefix), len(trace.loop)

    def state(j):
        return trace.prefix[j] if j < P else trace.loop[(j - P) % L]

    def go(j, g):
        if isinstance(g, Atom):
            return state(j)[g.name]
        if isinstance(g, Lit):
            return state(j)[g.name] == g.positive
        if isinstance(g, ConstTrue):
            return True
        if isinstance(g, ConstFalse):
            return False
        if isinstance(g, Not):
            return not go(j, g.arg)
        if isinstance(g, Next):
            return go(j + 1, g.arg)
        if isinstance(g, Always):
            return all(go(k, g.arg) for k in range(j, max(j, P) + L))
        if isinstance(g, Sometime):
            return any(go(k, g.arg) for k in range(j, max(j, P) + L))
        if isinstance(g, And):
            return go(j, g.left) and go(j, g.right)
        if isinstance(g, Or):
            return go(j, g.left) or go(j, g.right)
        if isinstance(g, Implies):
            return (not go(j, g.left)) or go(j, g.right)
        if isinstance(g, Iff):
            return go(j, g.left) == go(j, g.right)
        raise TypeError(g)

    return go(i, f)


def has_small_model(f, vocabulary, max_len):
    """True iff some lasso with P + L <= max_len makes ``f`` true at 0."""
    return any(naive_eval(t, 0, f) for t in all_lassos(vocabulary, max_len))


def brute_force_atoms(closure_set):
    """Subsets of the closure meeting every local-consistency condition.

    When both polarities of a literal are in the closure exactly one of
    them is taken (maximality).
    """
    members = sorted(closure_set, key=repr)
    out = []
    for bits in itertools.product((False, True), repeat=len(members)):
        a = {m for m, b in zip(members, bits) if b}
        if ok_atom(a, closure_set):
            out.append(frozenset(a))
    return out


def ok_atom(a, cl):
    for g in cl:
        inside = g in a
        if isinstance(g, ConstFalse) and inside:
            return False
        if isinstance(g, ConstTrue) and not inside:
            return False
        if isinstance(g, Lit):
            other = Lit(g.name, not g.positive)
            if other in cl and inside == (other in a):
                return False
        if isinstance(g, And) and inside != (g.left in a and g.right in a):
            return False
        if isinstance(g, Or) and inside != (g.left in a or g.right in a):
            return False
        if isinstance(g, Always) and inside != (g.arg in a and Next(g) in a):
            return False
        if isinstance(g, Sometime) and inside != (g.arg in a or Next(g) in a):
            return False
    return True
