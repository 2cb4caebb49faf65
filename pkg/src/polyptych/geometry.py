"""Exact rational linear algebra and small-dimension polyhedral computations.

Everything is computed over arbitrary-precision rationals (``fractions.
Fraction``) or plain ints; no floating point.  The double description
conversion is a textbook incremental algorithm with the combinatorial
adjacency test, adequate for the dimensions handled here (capped, default 9).

Lattice-point enumeration dispatches to a compiled kernel (``_enum``) when
available and when all intermediate values provably fit in int64; otherwise
the pure-Python twin ``_enum_py`` is used.  Set ``POLYPTYCH_PURE_PYTHON=1``
to force the pure kernel.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import gcd

from . import _enum_py

try:  # pragma: no cover - depends on build environment
    from . import _enum
except ImportError:  # pragma: no cover
    _enum = None

HAVE_COMPILED_KERNEL = _enum is not None

DEFAULT_DIM_CAP = 9
DEFAULT_ENUM_BUDGET = 50_000_000

_INT64_SAFE = 2**61


class GeometryError(Exception):
    pass


class BoxTooLarge(GeometryError):
    pass


class DimCapExceeded(GeometryError):
    pass


class SingularBasis(GeometryError):
    pass


class NotSquare(GeometryError):
    pass


# ---------------------------------------------------------------------------
# vectors

def dot(a, x):
    return sum(ai * xi for ai, xi in zip(a, x))


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a):
    return tuple(c * x for x in a)


def primitive(v):
    """Scale an integer/rational vector to a primitive integer vector."""
    v = tuple(Fraction(x) for x in v)
    if all(x == 0 for x in v):
        return tuple(0 for _ in v)
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(x // g for x in ints)


# ---------------------------------------------------------------------------
# polyhedra

class HPolyhedron:
    """Finite system of inequalities a.x >= b (a integer covector, b rational)."""

    __slots__ = ("dim", "rows")

    def __init__(self, dim, rows=()):
        self.dim = dim
        self.rows = []
        for a, b in rows:
            self.add(a, b)

    def add(self, a, b):
        if len(a) != self.dim:
            raise GeometryError(f"row dimension {len(a)} != {self.dim}")
        self.rows.append((tuple(int(x) for x in a), Fraction(b)))

    def contains(self, x):
        return all(dot(a, x) >= b for a, b in self.rows)

    def translate(self, t):
        """The polyhedron shifted by +t: {x : a.(x - t) >= b}."""
        return HPolyhedron(self.dim, [(a, b + dot(a, t)) for a, b in self.rows])

    def dilate(self, k):
        """k-fold dilation about the origin (right-hand sides scaled by k)."""
        return HPolyhedron(self.dim, [(a, k * b) for a, b in self.rows])

    def to_json(self):
        return {"ineqs": [[*a, _frac_str(b)] for a, b in self.rows]}

    @classmethod
    def from_json(cls, data, dim=None):
        rows = []
        for row in data["ineqs"]:
            *a, b = row
            rows.append((tuple(int(x) for x in a), _parse_frac(b)))
        if dim is None:
            dim = len(rows[0][0]) if rows else 0
        return cls(dim, rows)

    def __repr__(self):
        return f"HPolyhedron(dim={self.dim}, rows={len(self.rows)})"


class VPolyhedron:
    """conv(vertices) + cone(rays) + span(lineality); empty iff no vertices."""

    __slots__ = ("dim", "vertices", "rays", "lineality")

    def __init__(self, dim, vertices=(), rays=(), lineality=()):
        self.dim = dim
        self.vertices = [tuple(Fraction(x) for x in v) for v in vertices]
        self.rays = [primitive(r) for r in rays]
        self.lineality = [primitive(l) for l in lineality]

    @property
    def is_empty(self):
        return not self.vertices

    def __repr__(self):
        return (f"VPolyhedron(dim={self.dim}, V={len(self.vertices)}, "
                f"R={len(self.rays)}, L={len(self.lineality)})")


def _frac_str(b):
    b = Fraction(b)
    return str(b.numerator) if b.denominator == 1 else f"{b.numerator}/{b.denominator}"


def _parse_frac(s):
    if isinstance(s, str) and "/" in s:
        num, den = s.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


# ---------------------------------------------------------------------------
# lattice-point enumeration

def lattice_points(poly, box, budget=DEFAULT_ENUM_BUDGET):
    """All integer points of ``poly`` within ``box``, lexicographically sorted.

    ``box`` is a list of inclusive integer bounds (lo, hi) per axis.
    Raises BoxTooLarge when the propagated search exceeds ``budget`` nodes.
    """
    if len(box) != poly.dim:
        raise GeometryError("box dimension mismatch")
    if poly.dim == 0:
        return [()] if all(b <= 0 for _, b in poly.rows) else []
    rows_a, rows_b = [], []
    for a, b in poly.rows:
        den = b.denominator
        rows_a.append(tuple(x * den for x in a))
        rows_b.append(b.numerator if den == 1 else int(b * den))
    box = [(int(lo), int(hi)) for lo, hi in box]
    kernel = _pick_kernel(rows_a, rows_b, box)
    try:
        pts = kernel.enumerate_lattice_points(rows_a, rows_b, box, budget)
    except (_enum_py.BudgetExceeded if _enum is None else
            (_enum_py.BudgetExceeded, _enum.BudgetExceeded)) as exc:
        raise BoxTooLarge(str(exc)) from exc
    return [tuple(int(c) for c in p) for p in pts]


def _pick_kernel(rows_a, rows_b, box):
    if _enum is None or os.environ.get("POLYPTYCH_PURE_PYTHON"):
        return _enum_py
    # conservative overflow pre-check: every partial sum is bounded by
    # sum |a_i| * max(|lo_i|, |hi_i|) plus |b|
    for a, b in zip(rows_a, rows_b):
        bound = abs(b) + sum(
            abs(ai) * max(abs(lo), abs(hi)) for ai, (lo, hi) in zip(a, box))
        if bound >= _INT64_SAFE:
            return _enum_py
    return _enum_py if any(
        abs(lo) >= _INT64_SAFE or abs(hi) >= _INT64_SAFE for lo, hi in box
    ) else _enum


# ---------------------------------------------------------------------------
# double description (cone {x : h.x >= 0 for h in halfspaces})

def cone_rays(halfspaces, dim, dim_cap=DEFAULT_DIM_CAP):
    """V-description (lineality, extreme rays) of an H-described cone."""
    if dim > dim_cap:
        raise DimCapExceeded(f"dimension {dim} exceeds cap {dim_cap}")
    lineality = [tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)]
    rays = []  # entries: [vector, zeroset frozenset of processed halfspace ids]
    processed = []
    for h in halfspaces:
        h = tuple(int(x) for x in h)
        hid = len(processed)
        vals_l = [dot(h, l) for l in lineality]
        pivot = next((i for i, v in enumerate(vals_l) if v != 0), None)
        if pivot is not None:
            l0, v0 = lineality[pivot], vals_l[pivot]
            if v0 < 0:
                l0, v0 = vscale(-1, l0), -v0
            new_lin = []
            for i, l in enumerate(lineality):
                if i == pivot:
                    continue
                new_lin.append(primitive(vsub(vscale(v0, l), vscale(vals_l[i], l0))))
            lineality = new_lin
            new_rays = []
            for vec, zs in rays:
                v = dot(h, vec)
                adj = primitive(vsub(vscale(v0, vec), vscale(v, l0)))
                if any(x != 0 for x in adj):
                    new_rays.append([adj, zs | {hid}])
            new_rays.append([primitive(l0), frozenset(
                i for i in range(hid) if dot(processed[i], l0) == 0)])
            rays = new_rays
        else:
            plus = [r for r in rays if dot(h, r[0]) > 0]
            zero = [r for r in rays if dot(h, r[0]) == 0]
            minus = [r for r in rays if dot(h, r[0]) < 0]
            for r in zero:
                r[1] = r[1] | {hid}
            new_rays = plus + zero
            for rp in plus:
                for rm in minus:
                    common = rp[1] & rm[1]
                    if not _adjacent(common, rp, rm, rays):
                        continue
                    vp, vm = dot(h, rp[0]), dot(h, rm[0])
                    vec = primitive(vsub(vscale(vp, rm[0]), vscale(vm, rp[0])))
                    if all(x == 0 for x in vec):
                        continue
                    zs = frozenset(
                        i for i in range(hid + 1)
                        if dot((processed + [h])[i], vec) == 0)
                    new_rays.append([vec, zs])
            # dedupe by primitive vector
            seen, rays = set(), []
            for r in new_rays:
                if r[0] not in seen:
                    seen.add(r[0])
                    rays.append(r)
        processed.append(h)
    return lineality, [r[0] for r in rays]


def _adjacent(common, rp, rm, rays):
    for r in rays:
        if r is rp or r is rm:
            continue
        if common <= r[1]:
            return False
    return True


def h_to_v(poly, dim_cap=DEFAULT_DIM_CAP):
    """Convert an H-polyhedron to V-form via homogenization."""
    dim = poly.dim
    halfspaces = []
    for a, b in poly.rows:
        den = b.denominator
        halfspaces.append(tuple(x * den for x in a) + (-int(b * den),))
    halfspaces.append(tuple([0] * dim + [1]))  # t >= 0
    lin, rays = cone_rays(halfspaces, dim + 1, dim_cap=dim_cap + 1)
    vertices, rec_rays = [], []
    for r in rays:
        if r[dim] > 0:
            t = Fraction(r[dim])
            vertices.append(tuple(Fraction(x) / t for x in r[:dim]))
        else:
            rec_rays.append(r[:dim])
    lineality = [l[:dim] for l in lin]
    return VPolyhedron(dim, vertices, rec_rays, lineality)


def v_to_h(vpoly, dim_cap=DEFAULT_DIM_CAP):
    """Convert a V-polyhedron to H-form (dual double description)."""
    if vpoly.is_empty:
        # canonical infeasible system
        zero = tuple([0] * vpoly.dim)
        return HPolyhedron(vpoly.dim, [(zero, Fraction(1))])
    dim = vpoly.dim
    gens = []
    for v in vpoly.vertices:
        gens.append(primitive(tuple(v) + (1,)))
    for r in vpoly.rays:
        gens.append(tuple(r) + (0,))
    for l in vpoly.lineality:
        gens.append(tuple(l) + (0,))
        gens.append(tuple(-x for x in l) + (0,))
    # dual cone {y : y.g >= 0} of the homogenization cone
    lin, rays = cone_rays(gens, dim + 1, dim_cap=dim_cap + 1)
    rows = []
    for y in rays:
        rows.append((y[:dim], Fraction(-y[dim])))
    for y in lin:
        rows.append((y[:dim], Fraction(-y[dim])))
        rows.append((tuple(-x for x in y[:dim]), Fraction(y[dim])))
    return HPolyhedron(dim, rows)


def _as_both(P, dim_cap):
    if isinstance(P, HPolyhedron):
        return P, h_to_v(P, dim_cap=dim_cap)
    return v_to_h(P, dim_cap=dim_cap), P


def polyhedron_equal(P, Q, dim_cap=DEFAULT_DIM_CAP):
    """Exact point-set equality of two polyhedra (H- or V-form)."""
    hp, vp = _as_both(P, dim_cap)
    hq, vq = _as_both(Q, dim_cap)
    if vp.is_empty or vq.is_empty:
        return vp.is_empty and vq.is_empty
    return _included(vp, hq) and _included(vq, hp)


def _included(v, h):
    for x in v.vertices:
        if not h.contains(x):
            return False
    for r in v.rays:
        if any(dot(a, r) < 0 for a, _ in h.rows):
            return False
    for l in v.lineality:
        if any(dot(a, l) != 0 for a, _ in h.rows):
            return False
    return True


def minkowski_sum_hull(points, cone_covectors, dim, dim_cap=DEFAULT_DIM_CAP):
    """conv(points) + K* where K* = {x : w.x >= 0 for each covector w}."""
    if dim > dim_cap:
        raise DimCapExceeded(f"dimension {dim} exceeds cap {dim_cap}")
    lin, rays = cone_rays([tuple(w) for w in cone_covectors], dim, dim_cap=dim_cap)
    return VPolyhedron(dim, points, rays, lin)


# ---------------------------------------------------------------------------
# exact linear algebra

def solve_matrix(columns, target):
    """Exact coefficients c with sum c_i * columns[i] = target."""
    n = len(target)
    m = len(columns)
    aug = [[Fraction(columns[j][i]) for j in range(m)] + [Fraction(target[i])]
           for i in range(n)]
    piv_cols, row = [], 0
    for col in range(m):
        p = next((r for r in range(row, n) if aug[r][col] != 0), None)
        if p is None:
            continue
        aug[row], aug[p] = aug[p], aug[row]
        pv = aug[row][col]
        aug[row] = [x / pv for x in aug[row]]
        for r in range(n):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        piv_cols.append(col)
        row += 1
        if row == n:
            break
    # consistency
    for r in range(row, n):
        if aug[r][m] != 0:
            raise SingularBasis("target outside the span of the given vectors")
    coeffs = [Fraction(0)] * m
    for r, col in enumerate(piv_cols):
        coeffs[col] = aug[r][m]
    return coeffs


def expand_in_basis(x, basis):
    """Exact coefficients of ``x`` over ``basis`` (raises if not a basis)."""
    n = len(x)
    if len(basis) != n:
        raise SingularBasis(f"need {n} basis vectors, got {len(basis)}")
    if det([[Fraction(b[i]) for b in basis] for i in range(n)]) == 0:
        raise SingularBasis("vectors do not form a basis")
    return solve_matrix(basis, x)


def det(matrix):
    """Exact determinant via fraction-free-ish Gaussian elimination."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise NotSquare("matrix is not square")
    m = [[Fraction(x) for x in row] for row in matrix]
    result = Fraction(1)
    for col in range(n):
        p = next((r for r in range(col, n) if m[r][col] != 0), None)
        if p is None:
            return Fraction(0)
        if p != col:
            m[col], m[p] = m[p], m[col]
            result = -result
        pv = m[col][col]
        result *= pv
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] / pv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return result


def is_unimodular(matrix):
    """Whether an integer square matrix has determinant +-1."""
    return abs(det(matrix)) == 1
