from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from polyptych import algebra, lattice, semialgebra
from polyptych.posets import classify_spade, gt_type_C


def tails_of(fam, cls):
    return algebra.build_relations(fam.poset, cls)


def test_relations_c2(fam_C2, cls_C2):
    assert tails_of(fam_C2, cls_C2) == {
        "q11": ("Y", "q21"), "q12": None,
        "q21": ("Y", "q31"), "q31": None}


def test_relations_a2(fam_A2, cls_A2):
    assert tails_of(fam_A2, cls_A2) == {
        "q12": None, "q21": ("Y", "q31"), "q31": None}


def test_relations_c3_has_product_tail():
    p = gt_type_C(3, (2, 4, 6))
    tails = algebra.build_relations(p, classify_spade(p))
    assert any(t and t[0] == "XY" for t in tails.values())


def test_normal_form_oracle_c2(fam_C2, cls_C2):
    tails = tails_of(fam_C2, cls_C2)
    f = {algebra.mono({"q11": (1, 1), "q21": (1, 1)}): Fraction(1)}
    nf = algebra.normal_form(f, tails)
    expect = {
        algebra.ONE: Fraction(1),
        algebra.mono({"q21": (0, 1)}): Fraction(1),
        algebra.mono({"q31": (0, 1)}): Fraction(1),
        algebra.mono({"q21": (0, 1), "q31": (0, 1)}): Fraction(1)}
    assert nf == expect


def test_normal_form_terminates_and_standard(fam_C2, cls_C2, rng):
    tails = tails_of(fam_C2, cls_C2)
    for _ in range(20):
        f = algebra.random_sparse(rng, fam_C2.poset, terms=3, max_exp=2)
        nf = algebra.normal_form(f, tails)
        for m in nf:
            assert algebra.is_standard(m)


def test_multiply_associative(fam_C2, cls_C2, rng):
    tails = tails_of(fam_C2, cls_C2)
    for _ in range(10):
        f, g, h = (algebra.normal_form(
            algebra.random_sparse(rng, fam_C2.poset), tails)
            for _ in range(3))
        lhs = algebra.multiply(algebra.multiply(f, g, tails), h, tails)
        rhs = algebra.multiply(f, algebra.multiply(g, h, tails), tails)
        assert lhs == rhs


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_adapted_basis_roundtrip(vec):
    p = gt_type_C(2, (2, 4))
    cls = classify_spade(p)
    m = algebra.m_to_monomial(p, cls, tuple(vec))
    assert algebra.is_standard(m)
    assert algebra.monomial_to_m(p, cls, m) == tuple(vec)


def test_valuation_multiplicative_exact(fam_C2, rng):
    rep = algebra.verify_valuation(fam_C2, rng, samples=15, mode="EXACT")
    assert rep["ok"]


def test_valuation_star_identity(fam_C2, cls_C2):
    tails = tails_of(fam_C2, cls_C2)
    lat = lattice.PolyptychLattice(fam_C2.poset)
    for p, tail in tails.items():
        nx = algebra.valuation({algebra.x_var(p): Fraction(1)},
                               lat, cls_C2)
        ny = algebra.valuation({algebra.y_var(p): Fraction(1)},
                               lat, cls_C2)
        rhs = algebra.valuation(
            algebra.add({algebra.ONE: Fraction(1)},
                        algebra.tail_element(tail)), lat, cls_C2)
        assert semialgebra.equal_exact(fam_C2, semialgebra.star(nx, ny), rhs)


def test_unit_report(fam_C2, cls_C2):
    rep = algebra.unit_and_dimension_report(fam_C2.poset, cls_C2)
    assert rep["unit_products_trivial"]
    assert rep["unit_rank_matches"]
    assert rep["localization_laurent"]
    assert rep["units"] == ["q12", "q31"]


def test_jacobian_rank(fam_C2, rng):
    extra = [algebra.degenerate_point_gt(fam_C2)]
    rep = algebra.jacobian_rank_at_samples(fam_C2.poset, rng, count=8,
                                           extra_points=extra)
    assert rep["ok"]


def test_degenerate_point_solves_relations(fam_C2, cls_C2):
    tails = tails_of(fam_C2, cls_C2)
    xv, yv = algebra.degenerate_point_gt(fam_C2)
    vals = algebra.evaluate_relations(fam_C2.poset, tails, xv, yv)
    assert all(v == 0 for v in vals)
    assert xv["q21"] == 0 and yv["q21"] == 0


def test_element_json_roundtrip(fam_C2, rng):
    f = algebra.random_sparse(rng, fam_C2.poset, terms=3)
    again = algebra.element_from_json(algebra.element_to_json(f))
    assert again == f
