import pytest

from anchorcross.cmgadget import (FAULT_KINDS, assignment_drawing,
                                  build_cm_instance, build_grid,
                                  certificate_offset, compose_with_frame,
                                  diagonal_route, full_assignment,
                                  heavy_red_crossing_weight, inject_fault,
                                  insert_heavy_path, pad_formula,
                                  pasted_drawing, red_blue_crossing_weight,
                                  shift_constant, theorem21_check)
from anchorcross.frame import gamma, normal_drawing_weight
from anchorcross.graph import CnfFormula, validate_pp
from anchorcross.omega import OmegaPoly, W
from anchorcross.solver import drawing_weight, verify_drawing


def toy_formula():
    return CnfFormula(1, ((1,),))


def test_pad_balances_counts():
    phi = CnfFormula(2, ((1, -2),))
    padded, pad = pad_formula(phi)
    assert padded.num_vars == 4
    assert len(padded.clauses) == 3
    assert padded.clauses[0] == (2, -4)  # original, remapped to even slots
    assert padded.clauses[1] == (1,) and padded.clauses[2] == (1,)


def test_pad_preserves_satisfiability():
    sat = CnfFormula(2, ((1, -2), (2,)))
    unsat = CnfFormula(1, ((1,), (-1,)))
    padded_sat, pad = pad_formula(sat)
    padded_unsat, _ = pad_formula(unsat)

    def satisfiable(phi):
        n = phi.num_vars
        return any(phi.satisfied_by({v + 1: bool(m >> v & 1) for v in range(n)})
                   for m in range(1 << n))

    assert satisfiable(padded_sat)
    assert not satisfiable(padded_unsat)


def test_pad_rejects_small_k():
    with pytest.raises(ValueError):
        pad_formula(CnfFormula(2, ((1, -2),)), k=3)


def test_grid_and_heavy_path_shapes():
    padded, _ = pad_formula(toy_formula(), k=3)
    grid = build_grid(padded, OmegaPoly.const(9))
    assert len(grid.nodes) == 3 * 3 * 3 * 2  # 3k verticals x 3(k-1) horizontals
    bundle = insert_heavy_path(grid, diagonal_route(3))
    seq = bundle.heavy["vertices"]
    assert seq[0] == "bp" and seq[-1] == "b"
    w12 = OmegaPoly.const(9) ** 12
    heavy = [e for e in bundle.edges if e[3] == "R"]
    assert all(weight == w12 for _, _, weight, _ in heavy)
    assert len(bundle.heavy["subdivisions"]) == 2  # one per diagonal subgrid


def test_build_cm_basic_counts():
    ci = build_cm_instance(toy_formula(), w=17, k=2)
    k = ci.k
    assert len(ci.features["A1"]) == 4 * k
    q1 = [q for q in ci.features["Q"] if q["family"] == "Q1"]
    pairs = [q for q in ci.features["Q"] if q["family"] in ("Q2", "Q3")]
    assert len(q1) == k and len(pairs) == 2 * k
    # every end-edge of every path has weight w
    for q in ci.features["Q"]:
        first, last = q["edges"][0], q["edges"][-1]
        assert ci.graph.edge(first).weight == ci.w
        assert ci.graph.edge(last).weight == ci.w


def test_theorem21_clean_for_k_2_to_5():
    for k in (2, 3, 4, 5):
        ci = build_cm_instance(toy_formula(), w=17, k=k)
        rep = theorem21_check(ci)
        assert rep.ok, (k, rep.violations)


def test_theorem21_detects_each_fault():
    ci = build_cm_instance(toy_formula(), w=17, k=3)
    for kind in FAULT_KINDS:
        bad = inject_fault(ci, kind)
        rep = theorem21_check(bad)
        assert not rep.ok, kind


def test_validate_pp_on_cm_instance():
    ci = build_cm_instance(toy_formula(), w=17, k=2)
    assert validate_pp(ci.instance).valid


def test_assignment_drawings_verify_and_link_satisfaction():
    ci = build_cm_instance(toy_formula(), w=17, k=2)
    weights = {}
    for tv in (True, False):
        p = assignment_drawing(ci, full_assignment(ci, {1: tv}))
        assert verify_drawing(ci.graph, p)
        weights[tv] = red_blue_crossing_weight(ci, p)
    # clause (x): satisfied routing is strictly lighter
    assert weights[True].cmp_large_omega(weights[False]) < 0


def test_linkage_negative_literal():
    ci = build_cm_instance(CnfFormula(1, ((-1,),)), w=17, k=2)
    weights = {}
    for tv in (True, False):
        p = assignment_drawing(ci, full_assignment(ci, {1: tv}))
        assert verify_drawing(ci.graph, p)
        weights[tv] = red_blue_crossing_weight(ci, p)
    assert weights[False].cmp_large_omega(weights[True]) < 0


def test_heavy_path_crossing_count():
    ci = build_cm_instance(toy_formula(), w=17, k=3)
    p = assignment_drawing(ci, full_assignment(ci))
    g = ci.graph
    heavy = set(ci.features["R"]["edges"])
    hits = [pr for pr in p.pairs() if (pr[0] in heavy) != (pr[1] in heavy)]
    assert len(hits) == 3 * ci.k  # once per red path


def test_shift_constant_values():
    assert shift_constant(2, W(1)) == W(13, 6) - W(12)
    assert shift_constant(3, W(1)) == W(13, 9) - W(12, 2)
    s = shift_constant(2, W(4))
    assert {e for e, _ in s.terms} == {52, 48}


def test_compose_bookkeeping_k2():
    ci = build_cm_instance(toy_formula(), w=W(4), k=2)
    comp = compose_with_frame(ci)
    assert len(comp.instance.anchors) == 6
    assert validate_pp(comp.instance).valid
    assert comp.certificate_offset == gamma(2) - (W(52, 6) - W(48, 2))
    p = pasted_drawing(comp)
    assert verify_drawing(comp.instance.graph, p)
    inner = assignment_drawing(ci, full_assignment(ci))
    lhs = drawing_weight(comp.instance.graph, p)
    rhs = (normal_drawing_weight(comp.frame)
           + drawing_weight(ci.graph, inner)
           - heavy_red_crossing_weight(ci, inner))
    assert lhs == rhs


def test_compose_requires_omega4():
    ci = build_cm_instance(toy_formula(), w=17, k=2)
    with pytest.raises(ValueError):
        compose_with_frame(ci)


def test_compose_omega_check():
    ci = build_cm_instance(toy_formula(), w=W(4), k=2)
    with pytest.raises(ValueError):
        compose_with_frame(ci, omega_check=10)


def test_five_anchor_variant():
    ci = build_cm_instance(toy_formula(), w=W(4), k=2)
    comp = compose_with_frame(ci, identify_r0_b0=True)
    assert len(comp.instance.anchors) == 5
    assert validate_pp(comp.instance).valid
