"""Compare the compiled and pure-Python tableau kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Times atom enumeration, transition keys and the SCC pass separately, then
a complete ``is_satisfiable`` call, for a handful of formulas with growing
closures.  Both backends must return identical verdicts.
"""

import argparse
import time

from ltlfix import _kernels
from ltlfix.formula import parse, to_nnf
from ltlfix.sat import _encode, _scc_analysis, build_tableau, closure_order, is_satisfiable

FORMULAS = [
    "G(p <-> X G !p)",
    "G(p <-> X F G !p)",
    "G(p <-> X G F !p) | G F q",
    "G F p & G F q & G(p -> X X !q) & F G (r | X r)",
    "G(p <-> X q) & G(q <-> X r) & G(r <-> X !p) & G F (p & q) & F G !r",
    "G(a -> X F b) & G(b -> X F c) & G(c -> X F a) & G F a & G F !b & X X X (c & !a)",
]


def best_of(repeat, fn):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def bench(text, k, repeat):
    f = to_nnf(parse(text))
    kinds, a0, a1, ni, na = _encode(closure_order(f))
    t_enum, masks = best_of(repeat, lambda: k.enumerate_atoms(kinds, a0, a1))
    t_keys, _ = best_of(repeat, lambda: k.transition_keys(masks, ni, na))
    g = build_tableau(f, kernels=k)
    t_scc, _ = best_of(repeat, lambda: _scc_analysis(g, k))
    t_all, verdict = best_of(repeat, lambda: is_satisfiable(text, kernels=k))
    return len(g.closure), len(masks), (t_enum, t_keys, t_scc, t_all), bool(verdict)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = _kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; only the pure-Python backend is available")
    print(f"{'formula':<48} {'|cl|':>4} {'atoms':>7}  backend   enum(ms) keys(ms)  scc(ms) total(ms)")
    for text in FORMULAS:
        verdicts = set()
        for name, k in sorted(backends.items()):
            ncl, natoms, times, verdict = bench(text, k, args.repeat)
            verdicts.add(verdict)
            cols = " ".join(f"{1000 * t:8.2f}" for t in times)
            label = text if len(text) <= 48 else text[:45] + "..."
            print(f"{label:<48} {ncl:>4} {natoms:>7}  {name:<8} {cols}")
        assert len(verdicts) == 1, f"backends disagree on {text}"


if __name__ == "__main__":
    main()
