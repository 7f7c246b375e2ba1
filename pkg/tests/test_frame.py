from fractions import Fraction

import pytest

from anchorcross.frame import (CATALOGUE, FrameParams, build_frame, c1, c2,
                               counting_report, gamma, gamma_plus,
                               normal_drawing, normal_drawing_weight,
                               p0_weight, p1_weight, p2_weight,
                               perturbation_penalty)
from anchorcross.graph import validate_pp
from anchorcross.omega import OmegaPoly, W, poly_cmp_large_omega
from anchorcross.planarity import is_anchored_planar
from anchorcross.solver import drawing_weight, verify_drawing


def test_params_validation():
    with pytest.raises(ValueError):
        FrameParams(1)
    with pytest.raises(ValueError):
        FrameParams(2, 100)  # not a multiple of 5*(5k+7)
    FrameParams(2, 5 * 17 * 4)


def test_p0_schedule():
    assert p0_weight(4, 0) == W(41)
    assert p0_weight(4, 1) == W(41) + W(30, Fraction(2, 27))
    assert p0_weight(4, 9) == W(41) + W(30, Fraction(90, 27))
    with pytest.raises(IndexError):
        p0_weight(4, 10)


def test_p1_schedule():
    # position k+1 carries the extra 2/5 omega^35 step
    assert p1_weight(4, 5) == (W(49) + W(35, Fraction(2, 5))
                               + W(30, Fraction(35, 27)))
    assert p1_weight(4, 4) == W(49) + W(30, Fraction(24, 27))
    assert p1_weight(4, 0) == W(49)


def test_p2_schedule():
    assert p2_weight(3, 0) == W(38)
    assert p2_weight(3, 3) == W(38)
    assert p2_weight(3, 4) == W(38) + W(35, Fraction(4, 5))


def test_gamma_terms():
    g2 = gamma(2)
    assert g2.coeff(79) == 10  # 4k+2 at k=2
    assert g2.coeff(90) == 2 and g2.coeff(89) == -1
    assert g2.coeff(52) == 6 and g2.coeff(48) == -2
    assert gamma_plus(2) - g2 == W(34) - W(30) - 1


def test_c1_c2_values():
    # c1 is the normal drawing's own omega^65 total (half the figure the
    # source formula printed; see the decisions ledger)
    assert c1(2) == Fraction(256, 85)
    assert c2(2) == Fraction(216, 17)


def test_c1_c2_summation_identities():
    for k in range(2, 7):
        t0 = lambda i: Fraction(i * (i + 1), 5 * k + 7)
        t1 = lambda i: Fraction(i * (i + 2), 5 * k + 7)
        lhs_65 = 2 * k * Fraction(2, 5) + 2 * t0(k + 1)
        assert lhs_65 == c1(k), k
        per_half = (sum(t1(i) for i in range(1, 2 * k + 1))
                    + sum(t0(i) for i in range(1, 2 * k + 2)) - t0(k + 1))
        assert 2 * per_half == c2(k), k


def test_build_frame_structure_k2():
    f = build_frame(FrameParams(2))
    feats = f.features
    assert len(feats["P0"]) == 12 and len(feats["P0"]) - 1 == 11
    assert len(feats["P1"]) - 1 == 4 * 2 + 4
    assert len(feats["P2"]) - 1 == 4 * 2 + 2
    assert len(feats["C0"]) == 4 * 2 + 3
    assert feats["anchors_red"] == ["r0", "r2", "r4"]
    assert feats["anchors_blue"] == ["b0", "d1", "b4"]
    g = f.graph
    c0_eids = [e for e in g.edges if e.label == "C0"]
    assert len(c0_eids) == 11 and all(e.weight == W(49) for e in c0_eids)
    mid = next(e for e in g.edges if e.label == "mid")
    assert mid.weight == W(48) + W(38, 2) - W(34)
    rungs = [e for e in g.edges if e.label == "rung"]
    assert all(e.weight == W(41) - W(40) for e in rungs)
    sides = [e for e in g.edges if e.label == "side"]
    assert len(sides) == 2 and all(e.weight == W(35) for e in sides)
    straps = [e for e in g.edges if e.label in ("strap-red", "strap-blue")]
    assert len(straps) == 16 and all(e.weight == W(30) for e in straps)
    tops = [e for e in g.edges if e.label == "top"]
    assert len(tops) == 7 and all(e.weight == W(49) for e in tops)


def test_frame_parts_anchored_planar():
    for k in (2, 3):
        f = build_frame(FrameParams(k))
        assert validate_pp(f.instance).valid
        assert is_anchored_planar(f.instance.part_instance(1))
        assert is_anchored_planar(f.instance.part_instance(2))


def test_weight_schedule_symmetric():
    f = build_frame(FrameParams(3))
    g = f.graph
    p0 = [e for e in g.edges if e.label == "P0"]
    by_weight = {}
    for e in p0:
        by_weight.setdefault(repr(e.weight), 0)
        by_weight[repr(e.weight)] += 1
    # middle edge once, every other weight appears twice (mirrored)
    counts = sorted(by_weight.values())
    assert counts.count(1) == 1 and all(c == 2 for c in counts[1:])


def test_normal_drawing_counts_and_residue():
    for k in (2, 3):
        f = build_frame(FrameParams(k))
        nd = normal_drawing(f)
        assert nd.crossing_count() == 17 * k + 5
        assert verify_drawing(f.graph, nd)
        rep = counting_report(f)
        assert rep["residue"] == W(48)
        assert not rep["unexplained"]


def test_normal_matches_gamma_above_52():
    f = build_frame(FrameParams(2))
    diff = normal_drawing_weight(f) - gamma(2)
    assert all(e < 52 for e, _ in diff.terms)


def test_null_perturbation():
    f = build_frame(FrameParams(2))
    assert perturbation_penalty(f, "null") == OmegaPoly.zero()


def test_perturbation_bounds_k2():
    f = build_frame(FrameParams(2))
    k = 2
    b60 = W(60, Fraction(1, 5 * k + 7))
    b65 = W(65, Fraction(1, 5 * (5 * k + 7)))
    assert perturbation_penalty(f, "vertex_slide_left", 2) == b60
    assert perturbation_penalty(f, "vertex_slide_right", 1) == b60
    assert poly_cmp_large_omega(
        perturbation_penalty(f, "strap_hop_left", 2), b60) >= 0
    assert poly_cmp_large_omega(
        perturbation_penalty(f, "strap_hop_right", 1), b60) >= 0
    assert poly_cmp_large_omega(
        perturbation_penalty(f, "b3c3_slide_left"), b65) >= 0
    assert poly_cmp_large_omega(
        perturbation_penalty(f, "b3c3_slide_right"), b65) >= 0


def test_perturbation_rejects_uncatalogued():
    f = build_frame(FrameParams(2))
    with pytest.raises(ValueError):
        perturbation_penalty(f, "teleport", 1)
    with pytest.raises(ValueError):
        perturbation_penalty(f, "vertex_slide_left", 3)  # k+1 is the heavy one
