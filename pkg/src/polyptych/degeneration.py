"""Graded pieces of the polytope-filtered algebra, Hilbert-versus-Ehrhart
comparisons, chart valuations from dual-cone bases, desk-scale value-body
samples, and divisor-order additivity checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import algebra, geometry, lattice, mco, semialgebra
from .posets import classify_spade


class GenerationGap(Exception):
    pass


class OrdFail(Exception):
    pass


class UnimodularityFail(Exception):
    pass


@dataclass(frozen=True)
class GradedPiece:
    degree: int
    basis: tuple  # standard monomial keys, sorted

    @property
    def dimension(self):
        return len(self.basis)


def gamma(poset, u, k, classification=None):
    """Degree-k graded piece: the standard monomials whose lattice element
    lies in the k-dilated centered polytope.  Membership is decided in
    chart 0, where the adapted-basis bijection identifies standard
    monomials with integer vectors."""
    classification = classification or classify_spade(poset)
    points = mco.lattice_points_of_hat_delta(poset, u, frozenset(), k)
    basis = sorted(algebra.m_to_monomial(poset, classification, z)
                   for z in points)
    return GradedPiece(k, tuple(basis))


def hilbert_vs_ehrhart(poset, u, kmax, generation_kmax=2,
                       classification=None):
    """Per degree k <= kmax: the graded dimension against the lattice-point
    count of every chart polytope; plus the degree-1 generation shadow at
    small k."""
    classification = classification or classify_spade(poset)
    tails = algebra.build_relations(poset, classification)
    report = {"kmax": kmax, "rows": [], "ok": True, "generation": []}
    pieces = {}
    for k in range(kmax + 1):
        piece = gamma(poset, u, k, classification)
        pieces[k] = piece
        counts = {}
        for chart in mco.charts_of(poset):
            counts[mco.chart_str(chart)] = len(
                mco.lattice_points_of_hat_delta(poset, u, chart, k))
        agree = all(c == piece.dimension for c in counts.values())
        report["rows"].append({"k": k, "dimension": piece.dimension,
                               "chart_counts": counts, "agree": agree})
        report["ok"] = report["ok"] and agree
    for k in range(2, min(kmax, generation_kmax) + 1):
        gap = _generation_gap(poset, classification, tails, u, pieces, k)
        report["generation"].append({"k": k, "gap": [str(g) for g in gap]})
        if gap:
            report["ok"] = False
    return report


def _generation_gap(poset, classification, tails, u, pieces, k):
    """Degree-k basis monomials not reached as a normal-form summand of a
    product of k degree-1 basis monomials (expected empty)."""
    deg1 = {algebra.monomial_to_m(poset, classification, b): b
            for b in pieces[1].basis}
    hd = mco.hat_delta(poset, u, frozenset())
    missing = []
    for b in pieces[k].basis:
        z = algebra.monomial_to_m(poset, classification, b)
        if not _reachable(poset, classification, tails, hd, deg1, b, z, k):
            missing.append(b)
    return missing


def _reachable(poset, classification, tails, hd, deg1, target, z, k):
    for parts in _decompositions(hd, sorted(deg1), z, k):
        prod = {algebra.ONE: Fraction(1)}
        for zi in parts:
            prod = algebra.multiply(
                prod, {deg1[zi]: Fraction(1)}, tails)
        if target in prod:
            return True
    return False


def _decompositions(hd, deg1_points, z, k, limit=40):
    """Up to ``limit`` ways to write z as a sum of k degree-1 points, found
    by depth-first search with H-rep pruning of the remainder."""
    out = []

    def rec(rest, depth, acc):
        if len(out) >= limit:
            return
        if depth == 0:
            if all(r == 0 for r in rest):
                out.append(tuple(acc))
            return
        scaled = hd.hrep.dilate(depth - 1) if depth > 1 else None
        for p in deg1_points:
            nxt = tuple(r - c for r, c in zip(rest, p))
            if depth == 1:
                if all(v == 0 for v in nxt):
                    out.append(tuple(acc) + (p,))
                    if len(out) >= limit:
                        return
                continue
            if scaled.contains(nxt):
                rec(nxt, depth - 1, acc + [p])

    rec(tuple(z), k, [])
    return out


def verify_semigroup_property(poset, u, k1, k2, classification=None):
    """Products of basis elements of degrees k1, k2 land in degree k1+k2."""
    classification = classification or classify_spade(poset)
    tails = algebra.build_relations(poset, classification)
    p1 = gamma(poset, u, k1, classification)
    p2 = gamma(poset, u, k2, classification)
    target = set(gamma(poset, u, k1 + k2, classification).basis)
    for b1 in p1.basis:
        for b2 in p2.basis:
            prod = algebra.multiply({b1: Fraction(1)}, {b2: Fraction(1)},
                                    tails)
            if not set(prod) <= target:
                return {"ok": False, "witness": (b1, b2)}
    return {"ok": True, "pairs": p1.dimension * p2.dimension}


# ---------------------------------------------------------------------------
# chart valuations

@dataclass(frozen=True)
class ChartValuationSpec:
    chart: frozenset
    rho: tuple          # ordered DualElements, a unimodular basis in the cone
    certificate: dict   # determinant and membership record


def _dual_y_vector(fam, dual):
    return tuple(dual.y[ij] for ij in sorted(fam.positions))


def default_chart_valuation_spec(fam, chart):
    """Ordered basis from the dual-cone generators, completed greedily to
    the first unimodular subset (in generator order)."""
    chart = frozenset(chart)
    duals = lattice.chart_cone_duals(fam, chart)
    dim = len(fam.axis)
    signs = lattice.chart_sign_vector(fam, chart)
    for combo in combinations(range(len(duals)), dim):
        vecs = [_dual_y_vector(fam, duals[i]) for i in combo]
        matrix = [[vecs[r][c] for c in range(dim)] for r in range(dim)]
        if geometry.is_unimodular(matrix):
            chosen = [duals[i] for i in combo]
            if not all(lattice.dual_in_cone(fam, d, signs) for d in chosen):
                continue
            cert = {"determinant": int(geometry.det(matrix)),
                    "generator_indices": list(combo),
                    "in_cone": True}
            return ChartValuationSpec(chart, tuple(chosen), cert)
    raise UnimodularityFail(
        f"no unimodular generator subset for chart {mco.chart_str(chart)}")


def rho_value(fam, spec, m):
    """The rho-coordinate vector of a lattice element."""
    return tuple(lattice.eval_w(fam, d, m.coord0) for d in spec.rho)


def chart_valuation(fam, spec, f, k, lat=None, classification=None):
    """v(f t^k): lexicographic minimum of the rho-values over the valuation
    generators of f, paired with the degree."""
    lat = lat or lattice.PolyptychLattice(fam.poset)
    classification = classification or classify_spade(fam.poset)
    nu = algebra.valuation(f, lat, classification)
    if nu is semialgebra.INFINITY:
        return None
    return (min(rho_value(fam, spec, m) for m in nu.gens), k)


def rho_covectors(fam, spec):
    """Linear forms of the rho members on the chart's coordinates."""
    lat = lattice.PolyptychLattice(fam.poset)
    dim = len(fam.axis)
    basis = [lat.from_chart(spec.chart,
                            tuple(1 if l == e else 0 for l in range(dim)))
             for e in range(dim)]
    return [tuple(lattice.eval_w(fam, d, m.coord0) for m in basis)
            for d in spec.rho]


def no_body_sample(fam, u, spec, kmax, classification=None):
    """Degree-normalized value sets against the chart polytope's lattice
    points under the rho identification, per degree k <= kmax."""
    classification = classification or classify_spade(fam.poset)
    lat = lattice.PolyptychLattice(fam.poset)
    covs = rho_covectors(fam, spec)
    report = {"chart": mco.chart_str(spec.chart), "levels": [], "ok": True}
    for k in range(kmax + 1):
        piece = gamma(fam.poset, u, k, classification)
        values = set()
        for b in piece.basis:
            m = lat.element(algebra.monomial_to_m(fam.poset, classification,
                                                  b))
            values.add(rho_value(fam, spec, m))
        points = mco.lattice_points_of_hat_delta(fam.poset, u, spec.chart, k)
        images = {tuple(sum(c * z for c, z in zip(cov, p)) for cov in covs)
                  for p in points}
        ok = values == images
        report["levels"].append({"k": k, "values": len(values),
                                 "points": len(images), "match": ok})
        report["ok"] = report["ok"] and ok
    return report


def verify_chart_valuation_additive(fam, spec, rng, samples=50,
                                    classification=None):
    """v(fg) = v(f) + v(g) on sampled pairs whose valuations have one-term
    hulls; larger hulls are recorded as superadditive observations."""
    classification = classification or classify_spade(fam.poset)
    tails = algebra.build_relations(fam.poset, classification)
    lat = lattice.PolyptychLattice(fam.poset)
    report = {"additive_pairs": 0, "observed_pairs": 0, "ok": True}
    for idx in range(samples):
        terms = 1 if idx % 2 == 0 else 2
        f = algebra.normal_form(
            algebra.random_sparse(rng, fam.poset, terms=terms), tails)
        g = algebra.normal_form(
            algebra.random_sparse(rng, fam.poset, terms=terms), tails)
        if not f or not g:
            continue
        vf = chart_valuation(fam, spec, f, 1, lat, classification)
        vg = chart_valuation(fam, spec, g, 1, lat, classification)
        vfg = chart_valuation(fam, spec,
                              algebra.multiply(f, g, tails), 2, lat,
                              classification)
        one_term = len(f) == 1 and len(g) == 1
        expected = tuple(a + b for a, b in zip(vf[0], vg[0]))
        if one_term:
            if vfg[0] != expected:
                raise OrdFail(f"valuation not additive on {f}, {g}")
            report["additive_pairs"] += 1
        else:
            report["observed_pairs"] += 1
    return report


# ---------------------------------------------------------------------------
# divisor orders

def ord_along(phi, nu):
    """ord(f) for the divisor functional phi: min over the valuation hull."""
    return min(phi(m) for m in nu.gens)


def ord_divisor_check(fam, rng, samples=100, classification=None):
    """Additivity ord(fg) = ord(f) + ord(g) for every structural-point
    functional, on seeded normal-form pairs."""
    classification = classification or classify_spade(fam.poset)
    tails = algebra.build_relations(fam.poset, classification)
    lat = lattice.PolyptychLattice(fam.poset)
    points = lattice.structural_points(fam.poset)
    checked = 0
    for _ in range(samples):
        f = algebra.normal_form(algebra.random_sparse(rng, fam.poset), tails)
        g = algebra.normal_form(algebra.random_sparse(rng, fam.poset), tails)
        if not f or not g:
            continue
        nf = algebra.valuation(f, lat, classification)
        ng = algebra.valuation(g, lat, classification)
        nfg = algebra.valuation(algebra.multiply(f, g, tails), lat,
                                classification)
        for phi in points:
            if ord_along(phi, nfg) != ord_along(phi, nf) + ord_along(phi, ng):
                raise OrdFail(
                    f"ord not additive at {phi.label()} on {f}, {g}")
        checked += 1
    return {"pairs": checked, "functionals": len(points), "ok": True}
