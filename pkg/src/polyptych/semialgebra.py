"""Idempotent semialgebra on finite generating sets of lattice elements.

Addition is union of generating sets; multiplication combines generators
through all charts.  Two generating sets represent the same element exactly
when their point-convex hulls agree, which is decided per chart: on each
chart the points linear there form a cone of covectors K, and hull equality
reduces to equality of conv(generators) + K-dual as honest polyhedra.
"""

from __future__ import annotations

from . import geometry, lattice, mco


class Infinity:
    """Additive identity (absorbing for multiplication)."""

    def __repr__(self):
        return "INFINITY"


INFINITY = Infinity()


class SemialgebraElement:
    __slots__ = ("lattice", "gens")

    def __init__(self, lat, gens):
        self.lattice = lat
        seen = {}
        for m in gens:
            seen[m.coord0] = m
        if not seen:
            raise ValueError("a finite element needs at least one generator")
        self.gens = tuple(seen[c] for c in sorted(seen))

    def coords(self):
        return [m.coord0 for m in self.gens]

    def __repr__(self):
        return f"SemialgebraElement({[m.coord0 for m in self.gens]})"


def from_coords(lat, coords):
    return SemialgebraElement(lat, [lat.element(c) for c in coords])


def oplus(a, b):
    if a is INFINITY:
        return b
    if b is INFINITY:
        return a
    return SemialgebraElement(a.lattice, a.gens + b.gens)


def star(a, b):
    if a is INFINITY or b is INFINITY:
        return INFINITY
    out = []
    for m1 in a.gens:
        for m2 in b.gens:
            out.extend(a.lattice.upsilon(m1, m2))
    return SemialgebraElement(a.lattice, out)


# ---------------------------------------------------------------------------
# equality via per-chart hulls

def chart_cone_covectors(fam, chart):
    """Covectors (in chart coordinates) of the generating points of the dual
    cone matched to the chart; their min over a generating set computes the
    point-convex hull restricted to this chart."""
    duals = lattice.chart_cone_duals(fam, chart)
    lat = lattice.PolyptychLattice(fam.poset)
    dim = len(fam.axis)
    basis = []
    for k in range(dim):
        e = tuple(1 if l == k else 0 for l in range(dim))
        basis.append(lat.from_chart(chart, e))
    covectors = []
    for n in duals:
        covectors.append(tuple(lattice.eval_w(fam, n, m.coord0)
                               for m in basis))
    return covectors


def _chart_hull(fam, chart, elem, covectors):
    points = [m.chart(chart) for m in elem.gens]
    return geometry.minkowski_sum_hull(points, covectors, len(fam.axis))


def equal_exact(fam, a, b):
    if a is INFINITY or b is INFINITY:
        return (a is INFINITY) == (b is INFINITY)
    for chart in mco.charts_of(fam.poset):
        covectors = chart_cone_covectors(fam, chart)
        ha = _chart_hull(fam, chart, a, covectors)
        hb = _chart_hull(fam, chart, b, covectors)
        if not geometry.polyhedron_equal(ha, hb):
            return False
    return True


def equal_sampled(a, b, functionals):
    """min-agreement over the supplied point functionals; equality up to the
    sampled family only."""
    if a is INFINITY or b is INFINITY:
        return (a is INFINITY) == (b is INFINITY)
    for phi in functionals:
        if min(phi(m) for m in a.gens) != min(phi(m) for m in b.gens):
            return False
    return True


def sample_functionals(fam, rng, count=60, radius=4):
    lat = lattice.PolyptychLattice(fam.poset)
    out = [phi for phi in lattice.structural_points(fam.poset)]
    for _ in range(count):
        out.append(lattice.dual_point(fam, lattice.random_dual(
            fam, rng, radius)))
    return out


def equal(a, b, mode="EXACT", fam=None, functionals=None):
    if mode == "EXACT":
        if fam is None:
            raise ValueError("EXACT equality needs a triangular family")
        return equal_exact(fam, a, b)
    if mode == "SAMPLED":
        if functionals is None:
            raise ValueError("SAMPLED equality needs point functionals")
        return equal_sampled(a, b, functionals)
    raise ValueError(f"unknown mode {mode!r}")


def canonicalize(fam, elem):
    """Minimal generating set: drop any generator whose removal preserves
    hull equality."""
    if elem is INFINITY:
        return INFINITY
    gens = list(elem.gens)
    changed = True
    while changed and len(gens) > 1:
        changed = False
        for k in range(len(gens)):
            trial = gens[:k] + gens[k + 1:]
            cand = SemialgebraElement(elem.lattice, trial)
            if equal_exact(fam, cand, SemialgebraElement(elem.lattice, gens)):
                gens = trial
                changed = True
                break
    return SemialgebraElement(elem.lattice, gens)


def leq(fam, a, b):
    """Partial order: a <= b iff a + b = a."""
    return equal_exact(fam, oplus(a, b), a)
