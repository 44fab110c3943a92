# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled tableau kernels; same contracts as ``_pykernels``.

Masks are ``uint64``, so callers must route closures wider than 64
formulas to the pure-Python kernels.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport free, malloc

cdef enum:
    ELEM = 0
    TRUE = 1
    FALSE = 2
    AND = 3
    OR = 4
    NOT = 5

MAX_BITS = 64


cdef int* _int_array(seq) except NULL:
    cdef Py_ssize_t n = len(seq), i
    cdef int* out = <int*> malloc((n if n else 1) * sizeof(int))
    if out == NULL:
        raise MemoryError()
    for i in range(n):
        out[i] = seq[i]
    return out


def enumerate_atoms(kinds, arg0, arg1):
    cdef Py_ssize_t n = len(kinds)
    if n > MAX_BITS:
        raise ValueError("closure wider than 64 bits")
    cdef int* kind = _int_array(kinds)
    cdef int* a0 = _int_array(arg0)
    cdef int* a1 = _int_array(arg1)
    cdef int* elem = <int*> malloc((n if n else 1) * sizeof(int))
    cdef int* der = <int*> malloc((n if n else 1) * sizeof(int))
    cdef int ne = 0, nd = 0, j, idx, k
    cdef uint64_t combo, total, mask, bit
    cdef list out = []
    try:
        for j in range(n):
            if kind[j] == ELEM:
                elem[ne] = j
                ne += 1
            else:
                der[nd] = j
                nd += 1
        if ne >= 63:
            raise ValueError("too many elementary formulas to enumerate")
        total = (<uint64_t> 1) << ne
        combo = 0
        while combo < total:
            mask = 0
            for j in range(ne):
                if (combo >> j) & 1:
                    mask |= (<uint64_t> 1) << elem[j]
            for j in range(nd):
                idx = der[j]
                k = kind[idx]
                if k == TRUE:
                    bit = 1
                elif k == FALSE:
                    bit = 0
                elif k == AND:
                    bit = (mask >> a0[idx]) & (mask >> a1[idx]) & 1
                elif k == OR:
                    bit = ((mask >> a0[idx]) | (mask >> a1[idx])) & 1
                else:
                    bit = (~(mask >> a0[idx])) & 1
                if bit:
                    mask |= (<uint64_t> 1) << idx
            out.append(mask)
            combo += 1
    finally:
        free(kind)
        free(a0)
        free(a1)
        free(elem)
        free(der)
    out.sort()
    return out


def transition_keys(masks, next_idx, next_arg):
    cdef Py_ssize_t n = len(masks), t, i
    cdef Py_ssize_t npairs = len(next_idx)
    cdef int* ks = _int_array(next_idx)
    cdef int* cs = _int_array(next_arg)
    cdef uint64_t sel = 0, m, want
    cdef list offers = [], demands = []
    try:
        for t in range(npairs):
            sel |= (<uint64_t> 1) << cs[t]
        for i in range(n):
            m = masks[i]
            want = 0
            for t in range(npairs):
                if (m >> ks[t]) & 1:
                    want |= (<uint64_t> 1) << cs[t]
            offers.append(m & sel)
            demands.append(want)
    finally:
        free(ks)
        free(cs)
    return offers, demands


def tarjan_scc(Py_ssize_t n, indptr, indices):
    cdef int* ptr = _int_array(indptr)
    cdef int* adj = _int_array(indices)
    cdef int* index = <int*> malloc((n if n else 1) * sizeof(int))
    cdef int* low = <int*> malloc((n if n else 1) * sizeof(int))
    cdef int* comp = <int*> malloc((n if n else 1) * sizeof(int))
    cdef char* on_stack = <char*> malloc((n if n else 1) * sizeof(char))
    cdef int* stack = <int*> malloc((n if n else 1) * sizeof(int))
    cdef int* work_v = <int*> malloc((n if n else 1) * sizeof(int))
    cdef int* work_p = <int*> malloc((n if n else 1) * sizeof(int))
    cdef int sp = 0, wp = 0, counter = 0, ncomp = 0
    cdef int root, v, w, u, p
    cdef list result
    try:
        for v in range(n):
            index[v] = -1
            on_stack[v] = 0
            comp[v] = -1
        for root in range(n):
            if index[root] != -1:
                continue
            index[root] = counter
            low[root] = counter
            counter += 1
            stack[sp] = root
            sp += 1
            on_stack[root] = 1
            work_v[0] = root
            work_p[0] = ptr[root]
            wp = 1
            while wp > 0:
                v = work_v[wp - 1]
                p = work_p[wp - 1]
                if p < ptr[v + 1]:
                    work_p[wp - 1] = p + 1
                    w = adj[p]
                    if index[w] == -1:
                        index[w] = counter
                        low[w] = counter
                        counter += 1
                        stack[sp] = w
                        sp += 1
                        on_stack[w] = 1
                        work_v[wp] = w
                        work_p[wp] = ptr[w]
                        wp += 1
                    elif on_stack[w] and index[w] < low[v]:
                        low[v] = index[w]
                    continue
                wp -= 1
                if wp > 0:
                    u = work_v[wp - 1]
                    if low[v] < low[u]:
                        low[u] = low[v]
                if low[v] == index[v]:
                    while True:
                        sp -= 1
                        w = stack[sp]
                        on_stack[w] = 0
                        comp[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
        result = [comp[v] for v in range(n)]
    finally:
        free(ptr)
        free(adj)
        free(index)
        free(low)
        free(comp)
        free(on_stack)
        free(stack)
        free(work_v)
        free(work_p)
    return result
