"""Solubilizer canaries and the lemma/theorem check battery.

The A5 table is cross-checked at runtime against an independent sympy
oracle (brute-force solvability of every 2-generated subgroup). The other
frozen values were produced the same way or by exhaustive runs of two
independent implementations before being pinned here.
"""

import pytest
from sympy.combinatorics import Permutation as SPerm, PermutationGroup

from grouplab import (
    FactoredInteger,
    build_named_group,
    check_lemma_suite,
    closure_test,
    direct_product_sol_check,
    derived_subgroup,
    ell_invariant,
    identify_small_group,
    is_soluble,
    parse_permutation,
    quotient_sol_check,
    sol_core_check,
    solubilizer,
    subgroup_generated,
    sylow_subgroup,
    theorem_instance_checks,
    center,
)


def g(name):
    return build_named_group(name)


def rep_of_order(G, k):
    for c in G.conjugacy_classes().classes:
        if c.element_order == k:
            return c.representative
    raise AssertionError(f"no class of element order {k}")


def sol_orders_by_class(G):
    out = {}
    for c in G.conjugacy_classes().classes:
        out.setdefault(c.element_order, []).append(
            solubilizer(G, c.representative).order.value
        )
    return {k: sorted(v) for k, v in out.items()}


# ------------------------------------------------------------- A5 oracle


def test_a5_table_matches_independent_sympy_oracle():
    a5 = g("A:5")
    sp_elements = [SPerm([i - 1 for i in e.images]) for e in a5.elements()]
    for c in a5.conjugacy_classes().classes:
        x = SPerm([i - 1 for i in c.representative.images])
        oracle = sum(1 for y in sp_elements if PermutationGroup([x, y]).is_solvable)
        mine = solubilizer(a5, c.representative).order.value
        assert mine == oracle


def test_a5_frozen_values():
    assert sol_orders_by_class(g("A:5")) == {1: [60], 2: [36], 3: [24], 5: [10, 10]}


def test_a5_five_cycle_is_dihedral_and_equals_normalizer():
    a5 = g("A:5")
    x = rep_of_order(a5, 5)
    r = solubilizer(a5, x)
    assert r.order.value == 10
    assert r.is_subgroup
    assert r.structure.label == "dihedral 10"
    assert r.normalizer_order.value == 10
    # N_G(<x>) = Sol as literal sets
    H = subgroup_generated(a5, [x])
    from grouplab import normalizer

    N = normalizer(a5, H)
    assert set(N.elements()) == set(r.members)


def test_a5_involution_is_not_a_subgroup():
    a5 = g("A:5")
    r = solubilizer(a5, rep_of_order(a5, 2))
    assert r.order.value == 36
    assert not r.is_subgroup
    assert r.subgroup is None
    assert not closure_test(r.members)


# --------------------------------------------------------- frozen canaries


def test_s5_mixed_element():
    s5 = g("S:5")
    r = solubilizer(s5, parse_permutation("(1,2,3)(4,5)", 5))
    assert r.order.value == 12
    assert r.is_subgroup
    assert r.structure.label == "dihedral 12"


def test_psl27_reaches_21_with_realized_order_reported():
    psl7 = g("PSL2:7")
    hits = []
    for c in psl7.conjugacy_classes().classes:
        r = solubilizer(psl7, c.representative)
        if r.order.value == 21:
            hits.append((c.element_order, r))
    assert hits, "no representative realizes order 21"
    realized_orders = {k for k, _ in hits}
    assert realized_orders == {7}
    for _, r in hits:
        assert r.is_subgroup
        assert r.structure.label == "C7:C3"


def test_pgl27_order8_is_a_full_sylow_2():
    pgl7 = g("PGL2:7")
    r = solubilizer(pgl7, rep_of_order(pgl7, 8))
    assert r.order.value == 16
    assert r.is_subgroup
    assert r.structure.label == "dihedral 16"
    # full 2-part, hence a Sylow 2-subgroup
    assert r.order.value == 2 ** pgl7.order_factored.factors[2]
    assert sylow_subgroup(pgl7, 2).order == 16


def test_m10_order8_is_semidihedral():
    m10 = g("M10")
    r = solubilizer(m10, rep_of_order(m10, 8))
    assert r.order.value == 16
    assert r.structure.label == "semidihedral 16"


def test_psl211_frozen_values():
    assert sol_orders_by_class(g("PSL2:11")) == {
        1: [660],
        2: [132],
        3: [48],
        5: [110, 110],
        6: [12],
        11: [55, 55],
    }


def test_soluble_ambient_gives_whole_group():
    for name in ("C:6", "S:4", "D:16", "Q:8"):
        G = g(name)
        for c in G.conjugacy_classes().classes:
            r = solubilizer(G, c.representative)
            assert r.order.value == G.order
            assert r.is_subgroup


def test_solubilizer_rejects_outside_element():
    with pytest.raises(ValueError):
        solubilizer(g("A:5"), parse_permutation("(1,2)", 5))


def test_solubilizer_workers_agree():
    a5 = g("A:5")
    x = rep_of_order(a5, 2)
    seq = solubilizer(a5, x, workers=1)
    a5._cache.pop(("sol", x._raw))
    par = solubilizer(a5, x, workers=2)
    assert seq.order.value == par.order.value
    assert seq.members._raws == par.members._raws


# ----------------------------------------------------------- identification


def test_identify_soundness_set():
    cases = [
        ("D:16", "dihedral 16"),
        ("SD:16", "semidihedral 16"),
        ("Q:16", "generalized_quaternion 16"),
        ("Q:8", "generalized_quaternion 8"),
        ("C:16", "cyclic 16"),
        ("C:10", "cyclic 10"),
        ("D:10", "dihedral 10"),
        ("C7:C3", "C7:C3"),
        ("A:4", "A4"),
        ("S:4", "S4"),
        ("D:12", "dihedral 12"),
        ("SD:32", "semidihedral 32"),
    ]
    for name, label in cases:
        assert identify_small_group(g(name)).label == label


def test_identify_abelian_labels():
    assert identify_small_group(g("C:2 x C:2")).label == "elementary_abelian 4"
    assert identify_small_group(g("C:3 x C:3")).label == "elementary_abelian 9"
    assert identify_small_group(g("C:2 x C:4")).label == "abelian 2x4"
    assert identify_small_group(g("C:2 x C:2 x C:4")).label == "abelian 2x2x4"
    assert identify_small_group(g("C:3 x C:7")).label == "cyclic 21"
    assert identify_small_group(g("C:6 x C:2")).label == "abelian 2x6"


def test_identify_falls_back_to_other():
    assert identify_small_group(g("C:2 x Q:8")).label == "other"
    assert identify_small_group(g("C:2 x A:4")).label == "other"


def test_identify_rejects_large_input():
    with pytest.raises(ValueError):
        identify_small_group(g("S:5"))


# ------------------------------------------------------------- ell report


def test_ell_a5_five_cycle():
    a5 = g("A:5")
    rep = ell_invariant(a5, rep_of_order(a5, 5))
    assert rep.ell == 5
    assert rep.dichotomy == "normalizer_equals_sol"


def test_ell_s7_double_transposition():
    s7 = g("S:7")
    rep = ell_invariant(s7, parse_permutation("(1,2)(3,4)", 7))
    assert rep.ell == 2
    assert rep.dichotomy == "strict_bound"
    assert rep.sol_order > rep.ell * rep.x_order


def test_ell_undefined_when_normalizer_is_everything():
    c6 = g("C:6")
    rep = ell_invariant(c6, parse_permutation("(1,2,3,4,5,6)", 6))
    assert rep.ell is None
    assert rep.dichotomy == "undefined"


# -------------------------------------------------------------- core check


def test_core_check_inapplicable_for_non_subgroup_sol():
    a5 = g("A:5")
    rep = sol_core_check(a5, rep_of_order(a5, 2))
    assert not rep.applicable
    assert rep.passed
    assert rep.companion_checked > 0


def test_core_check_applicable_in_soluble_ambient():
    s4 = g("S:4")
    rep = sol_core_check(s4, rep_of_order(s4, 2))
    assert rep.applicable
    assert rep.passed
    assert rep.core_order == 24


def test_core_check_requires_involution():
    a5 = g("A:5")
    with pytest.raises(ValueError):
        sol_core_check(a5, rep_of_order(a5, 3))


# ------------------------------------------------------------- lemma suite


@pytest.mark.parametrize("name", ["A:5", "PSL2:7", "PGL2:7", "C:6", "S:4"])
def test_lemma_suite_passes(name):
    report = check_lemma_suite(g(name), name, seed=11)
    failures = [c for c in report.checks if not c.passed]
    assert not failures, failures
    assert report.group == name
    assert report.seed == 11


def test_lemma_suite_soluble_group_degenerates():
    report = check_lemma_suite(g("C:6"), "C:6", seed=0)
    insoluble_only = {
        "cyclic_proper",
        "order_not_prime",
        "order_not_prime_square",
        "sylow2_of_sol_nonabelian_ge16",
        "no_self_normalizing_prime_cyclic",
    }
    for c in report.checks:
        if c.item in insoluble_only:
            assert not c.triggered


def test_lemma_suite_r1_fires_on_pgl27():
    report = check_lemma_suite(g("PGL2:7"), "PGL2:7", seed=0)
    fired = [
        c for c in report.checks
        if c.item == "sylow2_of_sol_nonabelian_ge16" and c.triggered
    ]
    assert fired and all(c.passed for c in fired)


# --------------------------------------------------------- theorem checks


def test_theorem_checks_a5():
    checks = theorem_instance_checks(g("A:5"), "A:5")
    fired = {(c.item, c.rep) for c in checks if c.triggered}
    assert all(c.passed for c in checks)
    # |Sol| = 10 = 2*5 at the 5-cycles triggers both hypotheses
    assert {"sol_2p", "sol_pq"} == {item for item, _ in fired}


def test_theorem_checks_psl27_pq():
    checks = theorem_instance_checks(g("PSL2:7"), "PSL2:7")
    assert all(c.passed for c in checks)
    pq = [c for c in checks if c.item == "sol_pq" and c.triggered]
    assert pq, "21 = 3*7 with |x| = 7 should trigger the pq remark"


def test_theorem_checks_pgl27_16_and_2group():
    checks = theorem_instance_checks(g("PGL2:7"), "PGL2:7")
    assert all(c.passed for c in checks)
    fired = {c.item for c in checks if c.triggered}
    assert "sol_16" in fired
    assert "sol_2group" in fired


def test_theorem_checks_empty_for_soluble():
    assert theorem_instance_checks(g("S:4"), "S:4") == []


# ------------------------------------------------------- quotient, product


def test_quotient_check_sl27_center():
    G = g("SL2:7")
    Z = center(G)
    x = rep_of_order(G, 7)
    rep = quotient_sol_check(G, Z, x)
    assert rep.passed
    assert rep.n_soluble
    assert rep.sol_order == rep.quotient_sol_order * 2


def test_quotient_check_insoluble_kernel_containment():
    s5 = g("S:5")
    a5 = derived_subgroup(s5)
    rep = quotient_sol_check(s5, a5, parse_permutation("(1,2)", 5))
    assert rep.passed
    assert not rep.n_soluble


def test_quotient_check_rejects_non_normal():
    s5 = g("S:5")
    H = subgroup_generated(s5, [parse_permutation("(1,2)", 5)])
    with pytest.raises(ValueError):
        quotient_sol_check(s5, H, parse_permutation("(1,2,3)", 5))


def test_product_check_c2_a5():
    A = g("C:2")
    H = g("A:5")
    x = rep_of_order(H, 5)
    rep = direct_product_sol_check(A, H, x)
    assert rep.passed
    assert rep.sol_in_factor == 10
    assert rep.sol_in_product == 20


# ------------------------------------------------------------- invariants


def test_sol_result_divisibility_invariants():
    # |x|, |C_G(x)| and |R(G)| all divide |Sol|; spot-check on PSL(2,7)
    G = g("PSL2:7")
    for c in G.conjugacy_classes().classes:
        r = solubilizer(G, c.representative)
        assert r.order.value % c.element_order == 0
        assert r.order.value % r.centralizer_order.value == 0


def test_sol_members_serialize():
    a5 = g("A:5")
    r = solubilizer(a5, rep_of_order(a5, 5))
    doc = r.to_json()
    assert doc["order"]["value"] == 10
    assert doc["structure"]["label"] == "dihedral 10"
    assert doc["element_order"] == 5
    assert FactoredInteger.from_int(10).to_json() == doc["order"]
