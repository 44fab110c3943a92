import pytest
from hypothesis import given

from ltlfix.formula import Always, Next, Not, Sometime
from ltlfix.trace import (
    LassoTrace,
    State,
    TraceSyntaxError,
    UnknownAtomError,
    evaluate,
    globally_satisfies,
    parse_trace,
    render_trace,
    truth_table,
    unroll,
)

from oracles import naive_eval
from strategies import formulas, lassos


def lasso(prefix, loop, vocab=None):
    return LassoTrace.from_sets(prefix, loop, vocab)


def test_state_at():
    k = lasso([{"p"}], [{"q"}], "pq")
    assert k.state_at(0).true_atoms == {"p"}
    assert k.state_at(1).true_atoms == {"q"}
    ab = lasso([], [{"a"}, {"b"}])
    assert ab.state_at(5) == ab.loop[1]


@given(lassos())
def test_state_at_periodic(k):
    P, L = len(k.prefix), len(k.loop)
    for j in range(2 * L + 1):
        assert k.state_at(P + L + j) == k.state_at(P + j)


def test_state_is_total():
    s = State(("p", "q"), frozenset({"p"}))
    assert s.assignment == {"p": True, "q": False}
    with pytest.raises(UnknownAtomError):
        s["r"]
    with pytest.raises(ValueError):
        State(("p",), frozenset({"q"}))


def test_empty_loop_rejected():
    with pytest.raises(ValueError):
        LassoTrace((), (), ())


def test_eval_examples():
    assert evaluate(lasso([], [{"p"}]), 0, "G p")
    k = lasso([set()], [{"p"}], "p")
    assert evaluate(k, 0, "X G p")
    assert not evaluate(k, 0, "G p")
    alt = lasso([], [{"p"}, set()])
    for i in (0, 1):
        assert evaluate(alt, i, "p <-> !(X p)")


def test_eval_large_positions_reduce():
    k = lasso([set()], [{"p"}, set()], "p")
    assert evaluate(k, 101, "p") == evaluate(k, 1, "p")
    assert evaluate(k, 102, "p") == evaluate(k, 2, "p")


def test_eval_unknown_atom():
    with pytest.raises(UnknownAtomError):
        evaluate(lasso([], [{"p"}]), 0, "q")


def test_globally_satisfies():
    assert globally_satisfies(lasso([], [{"p"}]), "p")
    alt = lasso([], [{"p"}, set()])
    assert globally_satisfies(alt, "p <-> !(X p)")
    assert not globally_satisfies(alt, "p")


@pytest.mark.parametrize(
    "text, prefix, loop, vocab",
    [
        ("{p}{}|{p,q}", [{"p"}, set()], [{"p", "q"}], ("p", "q")),
        ("|{}", [], [set()], ()),
        ("V=p,q;|{q}", [], [{"q"}], ("p", "q")),
        (" {p} | {q} {} ", [{"p"}], [{"q"}, set()], ("p", "q")),
    ],
)
def test_parse_trace(text, prefix, loop, vocab):
    k = parse_trace(text)
    assert k.vocabulary == vocab
    assert [s.true_atoms for s in k.prefix] == prefix
    assert [s.true_atoms for s in k.loop] == loop


@pytest.mark.parametrize("text", ["|", "{p}|", "{p}", "{p|{q}", "|{P}", "|{}|{}", "x|{}", "V=p;|{q}"])
def test_parse_trace_errors(text):
    with pytest.raises(TraceSyntaxError):
        parse_trace(text)


@pytest.mark.parametrize("text", ["{p}{}|{p,q}", "|{}", "V=p,q;|{q}", "V=p;{}|{}", "|{p}{}"])
def test_render_trace_canonical(text):
    assert render_trace(parse_trace(text)) == text


@given(lassos())
def test_trace_round_trip(k):
    assert parse_trace(render_trace(k)) == k


@given(formulas(), lassos())
def test_periodicity(f, k):
    P, L = len(k.prefix), len(k.loop)
    for i in range(P, P + L):
        assert evaluate(k, i, f) == evaluate(k, i + L, f)
    # unrolling one loop copy into the prefix describes the same sequence
    u = unroll(k)
    for i in range(len(u)):
        assert evaluate(u, i, f) == evaluate(k, i, f)


@given(formulas(), lassos())
def test_next_clause(f, k):
    for i in range(len(k)):
        assert evaluate(k, i, Next(f)) == evaluate(k, i + 1, f)


@given(formulas(), lassos())
def test_sometime_is_dual_of_always(f, k):
    for i in range(len(k)):
        assert evaluate(k, i, Sometime(f)) == (not evaluate(k, i, Always(Not(f))))


@given(formulas(), lassos())
def test_next_always_commute(f, k):
    for i in range(len(k)):
        assert evaluate(k, i, Next(Always(f))) == evaluate(k, i, Always(Next(f)))


@given(formulas(), lassos())
def test_agrees_with_naive_unrolled_evaluation(f, k):
    table = truth_table(k, f)[f]
    for i in range(len(k)):
        assert table[i] == naive_eval(k, i, f)
