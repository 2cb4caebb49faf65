"""The two triangular pattern families (types A and C) with their grid
index metadata.

Unmarked elements are named ``q{i}{j}`` by (row, column); marked elements are
``qs{k}`` plus, in type C, the bottom zeros ``z{j}``.  Grid conventions:

* type C: q_{i,j} exists for 1 <= j <= n, 1 <= i <= 2n+1-2j; marked qs_k sits
  at grid position (2k, n-k+1) with value lam_k; z_j < q_{1,j} at the bottom.
* type A: q_{i,j} exists for 1 <= j <= n, n+1-j <= i <= 2n+1-2j; marked qs_k
  sits at grid position (2k-2, n-k+2) with value lam_k.

Every q_{i,j} covers the grid neighbours (i-1, j) and (i-1, j+1) that exist
(whether unmarked or marked).  The rank of q_{i,j} is i.
"""

from __future__ import annotations

from .posets import MarkedPoset


class GTFamily:
    def __init__(self, family, n, lam):
        if family not in ("A", "C"):
            raise ValueError(f"unknown family {family!r}")
        lam = tuple(int(v) for v in lam)
        expect = n + 1 if family == "A" else n
        if len(lam) != expect:
            raise ValueError(f"type {family} needs {expect} marking values")
        if any(a > b for a, b in zip(lam, lam[1:])):
            raise ValueError("marking values must be weakly increasing")
        if family == "C" and lam and lam[0] < 0:
            raise ValueError("type C marking values must be >= 0")
        self.family = family
        self.n = n
        self.lam = lam
        self.positions = {}   # (i, j) -> unmarked name
        for j in range(1, n + 1):
            i_lo = 1 if family == "C" else n + 1 - j
            for i in range(i_lo, 2 * n + 2 - 2 * j):
                self.positions[(i, j)] = f"q{i}{j}"
        self.pos_of = {name: ij for ij, name in self.positions.items()}
        self.marked_positions = {}  # (i, j) -> marked name on the grid
        marking = {}
        if family == "C":
            for k in range(1, n + 1):
                self.marked_positions[(2 * k, n - k + 1)] = f"qs{k}"
                marking[f"qs{k}"] = lam[k - 1]
                marking[f"z{k}"] = 0
        else:
            for k in range(1, n + 2):
                self.marked_positions[(2 * k - 2, n - k + 2)] = f"qs{k}"
                marking[f"qs{k}"] = lam[k - 1]
        covers = []
        for (i, j), name in sorted(self.positions.items()):
            if family == "C" and i == 1:
                covers.append((f"z{j}", name))
                continue
            for below in ((i - 1, j), (i - 1, j + 1)):
                lower = self.grid_name(*below)
                if lower is not None:
                    covers.append((lower, name))
        if family == "A":
            for k in range(2, n + 2):
                lower = self.grid_name(2 * k - 3, n - k + 2)
                covers.append((lower, f"qs{k}"))
        else:
            for k in range(1, n + 1):
                lower = self.grid_name(2 * k - 1, n - k + 1)
                covers.append((lower, f"qs{k}"))
        elements = list(self.positions.values()) + list(marking)
        self.poset = MarkedPoset(elements, covers, marking)
        self.axis = self.poset.axis
        rows = {}
        for (i, j) in self.positions:
            rows.setdefault(i, []).append(j)
        self.rows = {i: sorted(js) for i, js in rows.items()}

    # -- grid helpers -------------------------------------------------------

    def exists(self, i, j):
        return (i, j) in self.positions

    def grid_name(self, i, j):
        return self.positions.get((i, j)) or self.marked_positions.get((i, j))

    def row_start(self, i):
        return self.rows[i][0]

    def row_end(self, i):
        return self.rows[i][-1]

    def in_pihat(self, i, j):
        """Interior positions: both q_{i,j} and q_{i+1,j} are unmarked."""
        return (i, j) in self.positions and (i + 1, j) in self.positions

    @property
    def pihat(self):
        return sorted(ij for ij in self.positions if self.in_pihat(*ij))

    @property
    def units(self):
        """Unmarked positions whose variable is a unit (expected (2s-1, n+1-s))."""
        return sorted(ij for ij in self.positions if not self.in_pihat(*ij))

    # -- vectors over the unmarked axis ------------------------------------

    def axis_index(self, i, j):
        return self.axis.index(self.positions[(i, j)])

    def unit_vector(self, i, j):
        v = [0] * len(self.axis)
        v[self.axis_index(i, j)] = 1
        return tuple(v)

    def eps_leq(self, i, j):
        """The 0-chart coordinate of the row partial sum e_{i,start}+...+e_{i,j}."""
        v = [0] * len(self.axis)
        for l in range(self.row_start(i), j + 1):
            v[self.axis_index(i, l)] = 1
        return tuple(v)

    def coord(self, x, i, j):
        """x_{i,j} from an axis vector, with missing positions read as 0."""
        if (i, j) in self.positions:
            return x[self.axis_index(i, j)]
        return 0

    def lam_bounds(self):
        values = list(self.lam)
        if self.family == "C":
            values.append(0)
        return min(values), max(values)
