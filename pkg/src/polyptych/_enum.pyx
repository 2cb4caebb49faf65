# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled lattice-point enumeration kernel (int64).

Same contract as ``_enum_py.enumerate_lattice_points``; the dispatcher in
``geometry`` only calls this variant when every intermediate value provably
fits in int64, so no overflow checks are needed in the inner loop.
"""

from libc.stdlib cimport malloc, free


class BudgetExceeded(Exception):
    """Raised when the search visits more nodes than the configured budget."""


def enumerate_lattice_points(rows_a, rows_b, box, budget):
    cdef Py_ssize_t dim = len(box)
    cdef Py_ssize_t nrows = len(rows_a)
    cdef Py_ssize_t i, r, k
    cdef long long lo, hi, v, ak, slack, q, nodes, budget_c
    out = []
    for lo, hi in box:
        if lo > hi:
            return out
    budget_c = budget

    cdef long long *A = <long long *> malloc(nrows * dim * sizeof(long long))
    cdef long long *maxrest = <long long *> malloc(nrows * (dim + 1) * sizeof(long long))
    cdef long long *need = <long long *> malloc(nrows * (dim + 1) * sizeof(long long))
    cdef long long *blo = <long long *> malloc(dim * sizeof(long long))
    cdef long long *bhi = <long long *> malloc(dim * sizeof(long long))
    cdef long long *x = <long long *> malloc(dim * sizeof(long long))
    cdef long long *culo = <long long *> malloc(dim * sizeof(long long))
    cdef long long *cuhi = <long long *> malloc(dim * sizeof(long long))
    if A == NULL or maxrest == NULL or need == NULL or blo == NULL \
            or bhi == NULL or x == NULL or culo == NULL or cuhi == NULL:
        raise MemoryError()
    try:
        for i in range(dim):
            blo[i] = box[i][0]
            bhi[i] = box[i][1]
        for r in range(nrows):
            row = rows_a[r]
            for i in range(dim):
                A[r * dim + i] = row[i]
            maxrest[r * (dim + 1) + dim] = 0
            for i in range(dim - 1, -1, -1):
                ak = A[r * dim + i]
                v = ak * blo[i]
                q = ak * bhi[i]
                maxrest[r * (dim + 1) + i] = maxrest[r * (dim + 1) + i + 1] + (v if v > q else q)
            need[r] = rows_b[r]
        nodes = 0

        # iterative DFS over depth k
        k = 0
        while True:
            if k == dim:
                out.append(tuple([x[i] for i in range(dim)]))
                k -= 1
                if k < 0:
                    break
                x[k] += 1
                while x[k] > cuhi[k]:
                    k -= 1
                    if k < 0:
                        break
                    x[k] += 1
                if k < 0:
                    break
                # refresh need for depth k+1 with new x[k]
                for r in range(nrows):
                    need[(k + 1) * nrows + r] = need[k * nrows + r] - A[r * dim + k] * x[k]
                k += 1
                continue
            # compute bounds at depth k from need[k]
            lo = blo[k]
            hi = bhi[k]
            for r in range(nrows):
                ak = A[r * dim + k]
                slack = need[k * nrows + r] - maxrest[r * (dim + 1) + k + 1]
                if ak > 0:
                    q = slack / ak
                    if q * ak < slack:
                        q += 1
                    if q > lo:
                        lo = q
                elif ak < 0:
                    q = slack / ak
                    if q * ak < slack:
                        q -= 1
                    if q < hi:
                        hi = q
                elif slack > 0:
                    lo = hi + 1
                    break
            if lo > hi:
                # backtrack
                k -= 1
                if k < 0:
                    break
                x[k] += 1
                while x[k] > cuhi[k]:
                    k -= 1
                    if k < 0:
                        break
                    x[k] += 1
                if k < 0:
                    break
                for r in range(nrows):
                    need[(k + 1) * nrows + r] = need[k * nrows + r] - A[r * dim + k] * x[k]
                k += 1
                continue
            nodes += hi - lo + 1
            if nodes > budget_c:
                raise BudgetExceeded(f"enumeration budget {budget} exceeded")
            culo[k] = lo
            cuhi[k] = hi
            x[k] = lo
            for r in range(nrows):
                need[(k + 1) * nrows + r] = need[k * nrows + r] - A[r * dim + k] * lo
            k += 1
    finally:
        free(A); free(maxrest); free(need); free(blo); free(bhi)
        free(x); free(culo); free(cuhi)
    return out
