"""Pure-Python tableau kernels.

Reference implementation of the three hot loops of the decision procedure.
``_ckernels.pyx`` mirrors every function here with identical signatures and
results; :mod:`ltlfix._kernels` picks one at import time.

Closure formulas are addressed by bit index.  ``kinds`` holds one opcode per
index, listed so that every derived index comes after the indices it reads.
"""

ELEM, TRUE, FALSE, AND, OR, NOT = range(6)


def enumerate_atoms(kinds, arg0, arg1):
    """All locally consistent maximal atoms, as ascending bitmasks.

    Elementary indices take every combination of values; the others are
    then fixed by their opcode.
    """
    elementary = [i for i, k in enumerate(kinds) if k == ELEM]
    derived = [i for i, k in enumerate(kinds) if k != ELEM]
    out = []
    for combo in range(1 << len(elementary)):
        mask = 0
        for j, idx in enumerate(elementary):
            if combo >> j & 1:
                mask |= 1 << idx
        for idx in derived:
            k = kinds[idx]
            if k == TRUE:
                bit = 1
            elif k == FALSE:
                bit = 0
            elif k == AND:
                bit = (mask >> arg0[idx]) & (mask >> arg1[idx]) & 1
            elif k == OR:
                bit = ((mask >> arg0[idx]) | (mask >> arg1[idx])) & 1
            else:
                bit = ~(mask >> arg0[idx]) & 1
            if bit:
                mask |= 1 << idx
        out.append(mask)
    out.sort()
    return out


def transition_keys(masks, next_idx, next_arg):
    """Per atom: (bits it offers to predecessors, bits it demands of successors).

    For each ``X g`` at index ``next_idx[t]`` with ``g`` at ``next_arg[t]``,
    an atom A may step to B iff bit ``next_idx[t]`` of A equals bit
    ``next_arg[t]`` of B, i.e. ``offer(B) == demand(A)``.
    """
    sel = 0
    for c in next_arg:
        sel |= 1 << c
    offers = []
    demands = []
    pairs = list(zip(next_idx, next_arg))
    for m in masks:
        want = 0
        for k, c in pairs:
            if m >> k & 1:
                want |= 1 << c
        offers.append(m & sel)
        demands.append(want)
    return offers, demands


def tarjan_scc(n, indptr, indices):
    """Component id of every node of a CSR digraph (iterative Tarjan).

    Ids are assigned in completion order, so a component's id is smaller than
    the id of any component that reaches it.
    """
    index = [-1] * n
    low = [0] * n
    comp = [-1] * n
    on_stack = [False] * n
    stack = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, indptr[root])]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, ptr = work[-1]
            if ptr < indptr[v + 1]:
                work[-1] = (v, ptr + 1)
                w = indices[ptr]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, indptr[w]))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp
