import pytest

from polyptych import cox, families
from polyptych.posets import chain_poset, gt_type_A, gt_type_C


def test_counts_type_c():
    for n in range(1, 5):
        lam = tuple(2 * i for i in range(1, n + 1))
        cc = cox.cox_counts(gt_type_C(n, lam))
        assert cc.variables == 2 * n * n


def test_counts_type_a():
    for n in range(1, 5):
        lam = tuple(2 * i for i in range(n + 1))
        cc = cox.cox_counts(gt_type_A(n, lam))
        assert cc.variables == n * (n + 1)


def test_counts_single_segment():
    cc = cox.cox_counts(chain_poset(1, 0, 2))
    assert (cc.U, cc.L, cc.variables) == (1, 2, 2)


def test_divisor_layout(fam_C2):
    divs = cox.divisors_of(fam_C2.poset)
    kinds = [d.kind for d in divs]
    assert kinds == sorted(kinds, key=lambda k: k != "element")
    labels = [d.label() for d in divs]
    assert len(set(labels)) == len(labels)


def test_divisor_functionals_integral_and_homogeneous(fam_C2, rng):
    from polyptych import lattice
    lat = lattice.PolyptychLattice(fam_C2.poset)
    m = lat.element(tuple(rng.randint(-3, 3) for _ in fam_C2.axis))
    for d in cox.divisors_of(fam_C2.poset):
        phi = d.functional()
        v = phi(m)
        assert v == int(v)
        assert phi(m.scale(3)) == 3 * v


def test_f_pair_identity(fam_A2, fam_C2):
    assert cox.verify_f_pair_identity(fam_A2)
    assert cox.verify_f_pair_identity(fam_C2)


def test_all_sign_vectors_count(fam_C2):
    assert len(cox.all_sign_vectors(fam_C2)) == 2 ** len(fam_C2.pihat)


@pytest.mark.parametrize("family,n,lam", [
    ("A", 2, (0, 2, 4)), ("C", 2, (2, 4))])
def test_semigroup_generator_certificates(family, n, lam):
    fam = families.GTFamily(family, n, lam)
    for eps in cox.all_sign_vectors(fam):
        rep = cox.semigroup_generators(fam, eps)
        assert rep["ok"]
        assert abs(rep["determinant"]) == 1


def test_presentation_free_counts():
    expected = {("A", 2, (0, 2, 4)): 6, ("C", 2, (2, 4)): 8,
                ("A", 3, (0, 2, 4, 6)): 12, ("C", 3, (2, 4, 6)): 18}
    for (family, n, lam), free in expected.items():
        pres = cox.cox_presentation(families.GTFamily(family, n, lam))
        assert len(pres.free_variables) == free
        assert len(pres.free_variables) == cox.cox_counts(
            families.GTFamily(family, n, lam).poset).variables


def test_eta_unit_patterns(fam_A2, fam_C2):
    assert cox.eta_unit_check(fam_A2)["ok"]
    assert cox.eta_unit_check(fam_C2)["ok"]
