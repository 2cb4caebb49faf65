import pytest

from polyptych.posets import (MarkedPoset, NoInteriorU, SpadeViolation,
                              basic_pi1, basic_pi2, chain_poset, choose_u,
                              classify_spade, gt_type_A, gt_type_C,
                              graded_structure, validate)


def three_fan():
    elements = ["a", "p1", "p2", "p3", "q", "b"]
    covers = [("a", "p1"), ("a", "p2"), ("a", "p3"),
              ("p1", "q"), ("p2", "q"), ("p3", "q"), ("q", "b")]
    return MarkedPoset(elements, covers, {"a": 0, "b": 3})


def test_chain_poset_validates():
    p = chain_poset(1, 0, 2)
    diag = validate(p)
    assert diag.ok and not diag.errors
    assert p.axis == ("p1",)


def test_builders_validate_and_classify():
    for p in [basic_pi1(2), basic_pi2(2, 2), gt_type_A(2, (0, 2, 4)),
              gt_type_C(2, (2, 4)), gt_type_A(3, (0, 1, 3, 5)),
              gt_type_C(3, (1, 3, 5))]:
        assert validate(p).ok
        classify_spade(p)


def test_gt_element_counts():
    assert len(gt_type_A(2, (0, 2, 4)).axis) == 3
    assert len(gt_type_C(2, (2, 4)).axis) == 4
    assert len(gt_type_C(3, (2, 4, 6)).axis) == 9


def test_classification_c2_shapes(fam_C2, cls_C2):
    shapes = sorted((c.level, c.shape) for c in cls_C2.components)
    assert shapes == [(0, "TRIVIAL"), (0, "TRIVIAL"),
                      (1, "ZIGZAG_UNMARKED"), (2, "ZIGZAG_MARKED_TOP"),
                      (3, "TRIVIAL"), (4, "TRIVIAL")]


def test_classification_positions_consistent(cls_C2):
    for idx, comp in enumerate(cls_C2.components):
        for k, p in enumerate(comp.lower, start=1):
            assert cls_C2.lower_pos[p] == (idx, k)
        for k, q in enumerate(comp.upper, start=1):
            assert cls_C2.upper_pos[q] == (idx, k)


def test_three_fan_rejected():
    p = three_fan()
    assert validate(p).ok
    with pytest.raises(SpadeViolation):
        classify_spade(p)


def test_choose_u_marks_and_interior():
    p = chain_poset(2, 0, 6)
    u = choose_u(p)
    vec = [u.u[e] for e in ("bot",) + p.axis + ("top",)]
    assert vec[0] == 0 and vec[-1] == 6
    assert all(a < b for a, b in zip(vec, vec[1:]))


def test_choose_u_no_strict_room():
    with pytest.raises(NoInteriorU):
        choose_u(chain_poset(3, 0, 3))
    choose_u(chain_poset(3, 0, 3), strict=False)


def test_json_roundtrip():
    p = gt_type_C(2, (2, 4))
    q = MarkedPoset.from_json(p.to_json())
    assert q.elements == p.elements
    assert q.covers == p.covers
    assert q.marking == p.marking


def test_graded_structure_ranks():
    g = graded_structure(chain_poset(2, 0, 4))
    assert g.rank["bot"] == 0 and g.rank["top"] == g.max_rank


def test_invalid_cycle_detected():
    p = MarkedPoset(["a", "b"], [("a", "b"), ("b", "a")], {})
    assert not validate(p).ok
