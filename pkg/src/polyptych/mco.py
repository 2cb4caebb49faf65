"""Marked chain-order polytopes, transfer maps and their linearizations.

Coordinates are indexed by the unmarked elements in ``poset.axis`` order.
A chart is the subset C of unmarked elements treated chain-style; the rest
(O) stay order-style.  The transfer map is a piecewise-affine bijection from
the marked order polytope (chart 0) onto the chart-C polytope; its
translation-free linearization ``mu`` glues the charts of the polyptych
lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import geometry
from .posets import graded_structure


def charts_of(poset):
    """All chain/order partitions, deterministically ordered by size then name."""
    axis = poset.axis
    out = []
    for size in range(len(axis) + 1):
        for combo in combinations(axis, size):
            out.append(frozenset(combo))
    return out


def chart_str(chart):
    return ",".join(sorted(chart))


@dataclass(frozen=True)
class MCOPolytope:
    chart: frozenset
    hrep: geometry.HPolyhedron


def build_mco(poset, chart, graded=None):
    """H-description of the chart's marked chain-order polytope.

    One inequality per saturated chain a < p_1 < ... < p_l < b running
    through chain elements with endpoints marked or order-style (l >= 0):
    sum x_{p_i} <= y_b - y_a, plus x_p >= 0 for chain-style p.
    """
    chart = frozenset(chart)
    if not chart <= set(poset.axis):
        raise ValueError("chart contains marked or unknown elements")
    axis = poset.axis
    index = {p: i for i, p in enumerate(axis)}
    dim = len(axis)
    endpoints = set(poset.elements) - chart
    rows = []
    for p in sorted(chart):
        e = [0] * dim
        e[index[p]] = 1
        rows.append((tuple(e), Fraction(0)))
    for a in sorted(endpoints):
        stack = [(a, ())]
        while stack:
            cur, chain = stack.pop()
            for b in poset.upper_covers(cur):
                if b in chart:
                    stack.append((b, chain + (b,)))
                else:
                    rows.append(_chain_row(poset, index, dim, a, chain, b))
    return MCOPolytope(chart, geometry.HPolyhedron(dim, rows))


def _chain_row(poset, index, dim, a, chain, b):
    coeffs = [0] * dim
    rhs = Fraction(0)
    for p in chain:
        coeffs[index[p]] -= 1
    if poset.is_marked(b):
        rhs -= poset.marking[b]
    else:
        coeffs[index[b]] += 1
    if poset.is_marked(a):
        rhs += poset.marking[a]
    else:
        coeffs[index[a]] -= 1
    return (tuple(coeffs), rhs)


# ---------------------------------------------------------------------------
# transfer maps

def _min_candidates(poset, p, values, marked_value):
    cands = []
    for q in poset.lower_covers(p):
        if poset.is_marked(q):
            cands.append(marked_value(q))
        else:
            cands.append(-values[q])
    return min(cands)


def transfer(poset, chart, x):
    """phi: x'_p = x_p + min(-x_q / -lam_q over lower covers) for p in chart."""
    axis = poset.axis
    values = dict(zip(axis, x))
    out = list(x)
    for i, p in enumerate(axis):
        if p in chart:
            out[i] = x[i] + _min_candidates(
                poset, p, values, lambda q: -poset.marking[q])
    return tuple(out)


def transfer_inverse(poset, chart, xp, graded=None):
    graded = graded or graded_structure(poset)
    axis = poset.axis
    order = sorted(axis, key=lambda p: graded.rank[p])
    values = {}
    out = dict(zip(axis, xp))
    for p in order:
        if p in chart:
            out[p] = out[p] - _min_candidates(
                poset, p, values, lambda q: -poset.marking[q])
        values[p] = out[p]
    return tuple(out[p] for p in axis)


def mu(poset, chart, x):
    """Linearized transfer: marked lower covers contribute 0 instead of -lam."""
    axis = poset.axis
    values = dict(zip(axis, x))
    out = list(x)
    for i, p in enumerate(axis):
        if p in chart:
            out[i] = x[i] + _min_candidates(poset, p, values, lambda q: 0)
    return tuple(out)


def mu_inverse(poset, chart, xp, graded=None):
    graded = graded or graded_structure(poset)
    axis = poset.axis
    order = sorted(axis, key=lambda p: graded.rank[p])
    values = {}
    out = dict(zip(poset.axis, xp))
    for p in order:
        if p in chart:
            out[p] = out[p] - _min_candidates(poset, p, values, lambda q: 0)
        values[p] = out[p]
    return tuple(out[p] for p in axis)


# ---------------------------------------------------------------------------
# centered polytopes

@dataclass(frozen=True)
class HatDelta:
    chart: frozenset
    hrep: geometry.HPolyhedron  # translated so the origin is the shift image
    shift: tuple                # phi_{C,O}(u)


def hat_delta(poset, u, chart, graded=None):
    """The chart polytope translated by -phi_{C,O}(u)."""
    chart = frozenset(chart)
    uvec = u.vector(poset)
    shift = transfer(poset, chart, uvec)
    mcop = build_mco(poset, chart, graded)
    hrep = mcop.hrep.translate(tuple(-t for t in shift))
    return HatDelta(chart, hrep, shift)


def hat_delta_box(poset, u, chart, k=1):
    """Integer bounding box of the k-fold dilation of hat_delta's polytope."""
    lam = list(poset.marking.values())
    lo, hi = min(lam), max(lam)
    uvec = u.vector(poset)
    shift = transfer(poset, frozenset(chart), uvec)
    box = []
    for p, t in zip(poset.axis, shift):
        if p in chart:
            plo, phi = 0, hi - lo
        else:
            plo, phi = lo, hi
        box.append((k * (plo - t), k * (phi - t)))
    return box


def lattice_points_of_hat_delta(poset, u, chart, k=1, graded=None,
                                budget=geometry.DEFAULT_ENUM_BUDGET):
    hd = hat_delta(poset, u, chart, graded)
    poly = hd.hrep.dilate(k)
    box = hat_delta_box(poset, u, chart, k)
    return geometry.lattice_points(poly, box, budget=budget)


def verify_transfer_bijection(poset, u, k=1, graded=None,
                              budget=geometry.DEFAULT_ENUM_BUDGET):
    """Per chart: |k hat-polytope ∩ Z^d| by enumeration vs as the mu-image
    of the chart-0 points; returns a report dict."""
    graded = graded or graded_structure(poset)
    base = lattice_points_of_hat_delta(poset, u, frozenset(), k, graded, budget)
    report = {"k": k, "charts": {}, "ok": True}
    for chart in charts_of(poset):
        direct = lattice_points_of_hat_delta(poset, u, chart, k, graded, budget)
        image = sorted(mu(poset, chart, z) for z in base)
        ok = image == direct
        report["charts"][chart_str(chart)] = {
            "count": len(direct), "image_count": len(set(image)), "match": ok}
        report["ok"] = report["ok"] and ok and len(direct) == len(base)
    return report
