"""Pure-Python lattice-point enumeration kernel.

Twin of the compiled kernel in ``_enum.pyx``; both enumerate the integer
points of ``{x : A x >= b}`` intersected with a coordinate box, in
lexicographic order, using per-axis bound propagation against worst-case
contributions of the not-yet-fixed coordinates.
"""

from __future__ import annotations

__all__ = ["enumerate_lattice_points", "BudgetExceeded"]


class BudgetExceeded(Exception):
    """Raised when the search visits more nodes than the configured budget."""


def enumerate_lattice_points(rows_a, rows_b, box, budget):
    """All integer points of {x : a.x >= b for all rows} inside ``box``.

    ``rows_a``: list of integer coefficient tuples, ``rows_b``: list of
    integer right-hand sides, ``box``: list of (lo, hi) inclusive integer
    bounds per axis.  Returns lexicographically sorted tuples.
    """
    dim = len(box)
    if any(lo > hi for lo, hi in box):
        return []
    nrows = len(rows_a)
    # maxrest[r][k] = max over the box of sum_{i >= k} a_i x_i for row r
    maxrest = []
    for a in rows_a:
        rest = [0] * (dim + 1)
        for i in range(dim - 1, -1, -1):
            lo, hi = box[i]
            rest[i] = rest[i + 1] + max(a[i] * lo, a[i] * hi)
        maxrest.append(rest)

    out = []
    x = [0] * dim
    # need[r] = b_r - sum_{i<k} a_i x_i maintained per depth on a stack
    need_stack = [list(rows_b)]
    nodes = 0

    def descend(k):
        nonlocal nodes
        need = need_stack[-1]
        if k == dim:
            out.append(tuple(x))
            return
        lo, hi = box[k]
        for r in range(nrows):
            ak = rows_a[r][k]
            slack = need[r] - maxrest[r][k + 1]
            if ak > 0:
                q = -((-slack) // ak)  # ceil(slack / ak)
                if q > lo:
                    lo = q
            elif ak < 0:
                q = slack // ak  # floor of slack/ak for negative ak
                if q < hi:
                    hi = q
            elif slack > 0:
                return
        if lo > hi:
            return
        nodes += max(hi - lo + 1, 1)
        if nodes > budget:
            raise BudgetExceeded(f"enumeration budget {budget} exceeded")
        child = [0] * nrows
        need_stack.append(child)
        for v in range(lo, hi + 1):
            x[k] = v
            for r in range(nrows):
                child[r] = need[r] - rows_a[r][k] * v
            descend(k + 1)
        need_stack.pop()

    descend(0)
    return out
