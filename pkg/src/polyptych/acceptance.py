"""Acceptance suite: the fourteen structural checks, each returning a
JSON-serializable report with a single pass/fail verdict.  All randomness
flows from one seed; reports contain no timestamps so identical runs are
byte-identical.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction

from . import algebra, cox, degeneration, families, lattice, mco, semialgebra
from .posets import (MarkedPoset, SpadeViolation, basic_pi1, basic_pi2,
                     choose_u, classify_spade, gt_type_A, gt_type_C)

PROFILES = {
    "quick": {
        "c1_kmax": 2, "c2_kmax": 1,
        "c3_pairs": 10, "c3_vectors": 2,
        "c4_samples": 100,
        "c5_nmax": 2, "c5_duals": 20, "c5_pairs": 20,
        "c6_pairs": 100, "c6_chart_samples": 10,
        "c7_pairs": 10,
        "c9_kmax": 2,
        "c10_kmax": 1,
        "c13_points": 10,
    },
    "full": {
        "c1_kmax": 3, "c2_kmax": 2,
        "c3_pairs": 50, "c3_vectors": 5,
        "c4_samples": 1000,
        "c5_nmax": 3, "c5_duals": 200, "c5_pairs": 200,
        "c6_pairs": 500, "c6_chart_samples": 50,
        "c7_pairs": 100,
        "c9_kmax": 3,
        "c10_kmax": 2,
        "c13_points": 50,
    },
}


def _fam_A2():
    return families.GTFamily("A", 2, (0, 2, 4))


def _fam_C2():
    return families.GTFamily("C", 2, (2, 4))


def criterion_1(rng, cfg):
    """Transfer bijection, triangular type A, n=2."""
    fam = _fam_A2()
    u = choose_u(fam.poset)
    ks = {}
    ok = True
    for k in range(1, cfg["c1_kmax"] + 1):
        rep = mco.verify_transfer_bijection(fam.poset, u, k)
        counts = {c: e["count"] for c, e in rep["charts"].items()}
        ks[str(k)] = {"ok": rep["ok"], "counts": sorted(set(counts.values()))}
        ok = ok and rep["ok"] and len(set(counts.values())) == 1
    ok = ok and ks["1"]["counts"] == [27]
    return {"criterion": 1, "name": "transfer bijection A2", "k": ks,
            "expected_k1": 27, "pass": ok}


def criterion_2(rng, cfg):
    fam = _fam_C2()
    u = choose_u(fam.poset)
    ks = {}
    ok = True
    for k in range(1, cfg["c2_kmax"] + 1):
        rep = mco.verify_transfer_bijection(fam.poset, u, k)
        counts = {c: e["count"] for c, e in rep["charts"].items()}
        ks[str(k)] = {"ok": rep["ok"], "counts": sorted(set(counts.values()))}
        ok = ok and rep["ok"] and len(set(counts.values())) == 1
    ok = ok and ks["1"]["counts"] == [81]
    return {"criterion": 2, "name": "transfer bijection C2", "k": ks,
            "expected_k1": 81, "pass": ok}


def criterion_3(rng, cfg):
    posets = [gt_type_A(1, (0, 2)), gt_type_A(2, (0, 2, 4)),
              gt_type_C(1, (2,)), gt_type_C(2, (2, 4))]
    total_pairs = total_vectors = 0
    ok = True
    for poset in posets:
        lat = lattice.PolyptychLattice(poset)
        charts = lat.charts()
        pairs = [(charts[rng.randrange(len(charts))],
                  charts[rng.randrange(len(charts))])
                 for _ in range(cfg["c3_pairs"])]
        vectors = [tuple(Fraction(rng.randint(-12, 12), rng.randint(1, 4))
                         for _ in lat.axis)
                   for _ in range(cfg["c3_vectors"])]
        rep = lattice.verify_mutation_axioms(lat, vectors, pairs)
        ok = ok and rep.get("ok", True)
        total_pairs += len(pairs)
        total_vectors += len(vectors) * len(pairs)
    return {"criterion": 3, "name": "polyptych axioms",
            "chart_pairs": total_pairs, "vector_checks": total_vectors,
            "pass": ok}


def criterion_4(rng, cfg):
    ok = True
    checked = 0
    for fam in (_fam_A2(), _fam_C2()):
        poset = fam.poset
        u = choose_u(poset)
        uvec = u.vector(poset)
        for chart in mco.charts_of(poset):
            shift = mco.transfer(poset, chart, uvec)
            for _ in range(cfg["c4_samples"]):
                a = tuple(rng.randint(-6, 6) for _ in poset.axis)
                lhs = mco.mu(poset, chart, a)
                au = tuple(x + y for x, y in zip(a, uvec))
                rhs = tuple(x - y
                            for x, y in zip(mco.transfer(poset, chart, au),
                                            shift))
                if lhs != rhs:
                    ok = False
                checked += 1
    return {"criterion": 4, "name": "mu/transfer compatibility",
            "samples": checked, "pass": ok}


def criterion_5(rng, cfg):
    ok = True
    details = {}
    for n in range(1, cfg["c5_nmax"] + 1):
        fam = families.GTFamily("C", n, tuple(2 * i for i in range(1, n + 1)))
        lat = lattice.PolyptychLattice(fam.poset)
        functionals = list(lattice.structural_points(fam.poset))
        functionals += [lattice.dual_point(fam, lattice.random_dual(fam, rng))
                        for _ in range(cfg["c5_duals"])]
        pairs = []
        for _ in range(cfg["c5_pairs"]):
            m1 = lat.element(tuple(rng.randint(-4, 4) for _ in lat.axis))
            m2 = lat.element(tuple(rng.randint(-4, 4) for _ in lat.axis))
            pairs.append((m1, m2, lat.upsilon(m1, m2)))
        for phi in functionals:
            for m1, m2, ups in pairs:
                if phi(m1) + phi(m2) != min(phi(s) for s in ups):
                    ok = False
                for k in (0, 1, 2, 3):
                    if phi(m1.scale(k)) != k * phi(m1):
                        ok = False
        details[str(n)] = {"functionals": len(functionals),
                           "pairs": len(pairs)}
    return {"criterion": 5, "name": "point axioms", "details": details,
            "pass": ok}


def criterion_6(rng, cfg):
    fam = _fam_C2()
    rep = lattice.verify_strict_dual(
        fam, rng, pairs=cfg["c6_pairs"],
        chart_samples=cfg["c6_chart_samples"])
    return {"criterion": 6, "name": "strict dual pairing",
            "symmetry_pairs": rep["symmetry"],
            "injectivity": rep["injectivity"],
            "charts_checked": len(rep["charts"]), "pass": rep["ok"]}


def criterion_7(rng, cfg):
    ok = True
    details = {}
    for fam in (_fam_C2(), _fam_A2()):
        poset = fam.poset
        classification = classify_spade(poset)
        tails = algebra.build_relations(poset, classification)
        lat = lattice.PolyptychLattice(poset)
        rep = algebra.verify_valuation(fam, rng, samples=cfg["c7_pairs"],
                                       mode="EXACT")
        star_ok = True
        for (i, j), name in sorted(fam.positions.items()):
            nx = algebra.valuation({algebra.x_var(name): Fraction(1)},
                                   lat, classification)
            ny = algebra.valuation({algebra.y_var(name): Fraction(1)},
                                   lat, classification)
            lhs = semialgebra.star(nx, ny)
            one_plus_tail = algebra.add(
                {algebra.ONE: Fraction(1)},
                algebra.tail_element(tails[name]))
            rhs = algebra.valuation(one_plus_tail, lat, classification)
            if not semialgebra.equal_exact(fam, lhs, rhs):
                star_ok = False
        details[fam.family] = {"pairs": rep["pairs"], "star_ok": star_ok}
        ok = ok and rep["ok"] and star_ok
    return {"criterion": 7, "name": "detropicalization", "details": details,
            "pass": ok}


def criterion_8(rng, cfg):
    fam = _fam_C2()
    poset = fam.poset
    classification = classify_spade(poset)
    from itertools import product
    images = set()
    count = 0
    injective = True
    for radius in (3, 4):
        images.clear()
        count = 0
        for combo in product(range(-radius, radius + 1),
                             repeat=len(poset.axis)):
            m = algebra.mono({p: (max(c, 0), max(-c, 0))
                              for p, c in zip(poset.axis, combo)})
            images.add(algebra.monomial_to_m(poset, classification, m))
            count += 1
        injective = injective and len(images) == count
    surjective = all(
        tuple(z) in images
        for z in product(range(-2, 3), repeat=len(poset.axis)))
    return {"criterion": 8, "name": "adapted basis bijection",
            "box_size": count, "injective": injective,
            "hits_radius2": surjective, "pass": injective and surjective}


def criterion_9(rng, cfg):
    ok = True
    details = {}
    for fam in (_fam_A2(), _fam_C2()):
        u = choose_u(fam.poset)
        rep = degeneration.hilbert_vs_ehrhart(fam.poset, u, cfg["c9_kmax"],
                                              generation_kmax=2)
        details[fam.family] = {
            "dimensions": [r["dimension"] for r in rep["rows"]],
            "all_charts_agree": all(r["agree"] for r in rep["rows"]),
            "generation_gaps": sum(len(g["gap"]) for g in rep["generation"]),
        }
        ok = ok and rep["ok"]
    return {"criterion": 9, "name": "Hilbert equals Ehrhart",
            "details": details, "pass": ok}


def criterion_10(rng, cfg):
    fam = _fam_A2()
    u = choose_u(fam.poset)
    charts = mco.charts_of(fam.poset)
    sampled = [charts[rng.randrange(len(charts))] for _ in range(3)]
    ok = True
    details = []
    for chart in sampled:
        spec = degeneration.default_chart_valuation_spec(fam, chart)
        rep = degeneration.no_body_sample(fam, u, spec, cfg["c10_kmax"])
        details.append({"chart": mco.chart_str(chart), "ok": rep["ok"],
                        "levels": rep["levels"]})
        ok = ok and rep["ok"]
    return {"criterion": 10, "name": "value-body desk check",
            "charts": details, "pass": ok}


def criterion_11(rng, cfg):
    ok = True
    counts = {}
    for n in range(1, 5):
        cC = cox.cox_counts(gt_type_C(n, tuple(2 * i
                                               for i in range(1, n + 1))))
        cA = cox.cox_counts(gt_type_A(n, tuple(2 * i for i in range(n + 1))))
        counts[str(n)] = {"C": cC.variables, "A": cA.variables}
        ok = ok and cC.variables == 2 * n * n
        ok = ok and cA.variables == n * (n + 1)
    famC = _fam_C2()
    certs = 0
    for eps in cox.all_sign_vectors(famC):
        rep = cox.semigroup_generators(famC, eps)
        certs += rep["ok"] and rep["unit_vector_bijection"]
    ok = ok and certs == 4
    elim = {}
    for fam, expect in ((famC, 8), (_fam_A2(), 6)):
        pres = cox.cox_presentation(fam)
        elim[fam.family] = len(pres.free_variables)
        ok = ok and len(pres.free_variables) == expect
    return {"criterion": 11, "name": "Cox counts",
            "variables": counts, "certificates": certs,
            "free_variables": elim, "pass": ok}


def _three_fan_poset():
    elements = ["a", "p1", "p2", "p3", "q", "b"]
    covers = [("a", "p1"), ("a", "p2"), ("a", "p3"),
              ("p1", "q"), ("p2", "q"), ("p3", "q"), ("q", "b")]
    return MarkedPoset(elements, covers, {"a": 0, "b": 3})


def criterion_12(rng, cfg):
    accepted = []
    ok = True
    for n in range(1, 5):
        for build in (lambda: gt_type_A(n, tuple(range(n + 1))),
                      lambda: gt_type_C(n, tuple(range(1, n + 1)))):
            try:
                classify_spade(build())
                accepted.append(True)
            except SpadeViolation:
                accepted.append(False)
                ok = False
    for build in (lambda: basic_pi1(2), lambda: basic_pi2(2, 2)):
        try:
            classify_spade(build())
            accepted.append(True)
        except SpadeViolation:
            accepted.append(False)
            ok = False
    try:
        classify_spade(_three_fan_poset())
        rejected = False
        ok = False
    except SpadeViolation:
        rejected = True
    return {"criterion": 12, "name": "zigzag classifier",
            "accepted": sum(accepted), "rejects_three_fan": rejected,
            "pass": ok}


def criterion_13(rng, cfg):
    fam = _fam_C2()
    rep = algebra.jacobian_rank_at_samples(
        fam.poset, rng, count=cfg["c13_points"],
        extra_points=[algebra.degenerate_point_gt(fam)])
    return {"criterion": 13, "name": "Jacobian rank",
            "points": rep["points"], "rank": rep["rank"], "pass": rep["ok"]}


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
            criterion_11, criterion_12, criterion_13]


def run_once(profile, seed):
    cfg = PROFILES[profile]
    rng = random.Random(seed)
    out = []
    for fn in CRITERIA:
        try:
            out.append(fn(rng, cfg))
        except Exception as exc:  # honest failure with witness
            out.append({"criterion": len(out) + 1,
                        "name": fn.__name__, "pass": False,
                        "error": f"{type(exc).__name__}: {exc}"})
    return out


def run_suite(profile="quick", seed=0):
    """Criteria 1-13 plus the determinism criterion: a second, fresh run
    must serialize to identical bytes."""
    first = run_once(profile, seed)
    blob1 = json.dumps(first, sort_keys=True).encode()
    blob2 = json.dumps(run_once(profile, seed), sort_keys=True).encode()
    deterministic = blob1 == blob2
    criteria = first + [{"criterion": 14, "name": "determinism",
                         "bytes": len(blob1), "pass": deterministic}]
    return {"profile": profile, "seed": seed, "criteria": criteria,
            "ok": all(c["pass"] for c in criteria)}
