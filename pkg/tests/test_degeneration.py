from polyptych import degeneration, geometry
from polyptych.posets import choose_u, gt_type_C


def test_hilbert_vs_ehrhart_a2(fam_A2):
    u = choose_u(fam_A2.poset)
    rep = degeneration.hilbert_vs_ehrhart(fam_A2.poset, u, 2)
    assert rep["ok"]
    assert [r["dimension"] for r in rep["rows"]] == [1, 27, 125]
    assert all(not g["gap"] for g in rep["generation"])


def test_hilbert_vs_ehrhart_c2(fam_C2):
    u = choose_u(fam_C2.poset)
    rep = degeneration.hilbert_vs_ehrhart(fam_C2.poset, u, 1)
    assert rep["ok"]
    assert [r["dimension"] for r in rep["rows"]] == [1, 81]


def test_graded_piece_monomials_standard(fam_C2, cls_C2):
    from polyptych import algebra
    u = choose_u(fam_C2.poset)
    piece = degeneration.gamma(fam_C2.poset, u, 1, cls_C2)
    assert piece.dimension == 81
    assert all(algebra.is_standard(b) for b in piece.basis)


def test_semigroup_property_degree_one(fam_A2):
    u = choose_u(fam_A2.poset)
    rep = degeneration.verify_semigroup_property(fam_A2.poset, u, 1, 1)
    assert rep["ok"]


def test_chart_valuation_spec_certificate(fam_A2):
    for chart in [frozenset(), frozenset({"q21"})]:
        spec = degeneration.default_chart_valuation_spec(fam_A2, chart)
        assert abs(spec.certificate["determinant"]) == 1
        assert spec.certificate["in_cone"]
        matrix = [[d.y[ij] for ij in sorted(fam_A2.positions)]
                  for d in spec.rho]
        assert geometry.is_unimodular(matrix)


def test_no_body_sample(fam_A2):
    u = choose_u(fam_A2.poset)
    spec = degeneration.default_chart_valuation_spec(
        fam_A2, frozenset({"q21"}))
    rep = degeneration.no_body_sample(fam_A2, u, spec, 2)
    assert rep["ok"]
    assert rep["levels"][1]["points"] == 27


def test_chart_valuation_additive(fam_C2, rng):
    spec = degeneration.default_chart_valuation_spec(fam_C2, frozenset())
    rep = degeneration.verify_chart_valuation_additive(fam_C2, spec, rng,
                                                       samples=20)
    assert rep["ok"] and rep["additive_pairs"] > 0


def test_ord_divisor_additive(fam_C2, rng):
    rep = degeneration.ord_divisor_check(fam_C2, rng, samples=15)
    assert rep["ok"] and rep["pairs"] > 0


def test_small_family_hilbert():
    p = gt_type_C(1, (2,))
    u = choose_u(p)
    rep = degeneration.hilbert_vs_ehrhart(p, u, 3)
    assert rep["ok"]
    assert [r["dimension"] for r in rep["rows"]] == [1, 3, 5, 7]
