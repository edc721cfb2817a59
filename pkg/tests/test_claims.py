import pytest

from linlat.claims import (
    FAIL,
    PASS,
    REGISTRY,
    UNMET,
    Claim,
    Outcome,
    check_claim,
    claim_ids,
    counterexample_search,
    monoids_for,
    run_all,
)
from linlat.corpus import chain2, enumerate_lattices, m2, n_c1, named_examples, pentagon, qc6
from linlat.errors import TheoremViolated
from linlat.monoid import contains_all_projections, full_endo_monoid, generate_submonoid, idempotents, is_central, is_regular
from linlat.morphisms import projection, projection_values


def verdict(L, m, cid):
    return check_claim(L, m, cid).verdict


def phi_psi():
    L = m2()
    a, b = L.ids("a", "b")
    return L, generate_submonoid(L, [projection(L, a, b), projection(L, b, a)])


def test_registry_ids_are_unique_and_described():
    ids = claim_ids()
    assert len(ids) == len(set(ids)) >= 30
    for c in REGISTRY.values():
        assert c.title and c.statement and c.hypotheses


def test_every_claim_on_named_examples_has_no_failures():
    for L in named_examples():
        for m in monoids_for(L, "generated:2"):
            for chk in run_all(L, m):
                assert chk.verdict != FAIL, (L.name, m.name, chk.claim, chk.witness)


def test_diamond_full_end():
    M = m2()
    m = full_endo_monoid(M)
    for cid in ("prop_reg", "thm_kerimgsumm", "prop_ker_img", "prop_cbool", "lemma_pife",
                "prop_abendofi", "prop_xyig", "prop_vnl", "thm_delta", "thm_nabla"):
        assert verdict(M, m, cid) == PASS, cid
    assert verdict(M, m, "cor_atoms") == UNMET
    chk = check_claim(M, m, "cor_two_element")
    assert chk.notes["values"] == {"abelian_endoregular": False, "two_chain": False}
    chk = check_claim(M, m, "idempotent_basics")
    assert chk.notes == {"idempotents": 4, "complement_pairs": 4}


def test_diamond_phi_psi():
    L, s = phi_psi()
    for cid in ("prop_ker_img", "prop_abendofi", "cor_hopf", "prop_xyig", "lemma_compdecomp"):
        assert verdict(L, s, cid) == PASS, cid
    notes = check_claim(L, s, "prop_xyig").notes
    # a and b are generated with isomorphic intervals but the submonoid has no map between them
    assert notes["values"] == {"abelian": True, "iso_equal": True, "no_morphisms": True}
    assert notes["free_reading_agrees"] is False


def test_n_c1():
    N = n_c1()
    m = full_endo_monoid(N)
    for cid in ("prop_reg", "prop_rickex", "prop_drictlif", "thm_delta", "thm_nabla",
                "cor_indec_delta", "cor_indec_nabla", "prop_vnl", "lemma_imginvess"):
        assert verdict(N, m, cid) == PASS, cid


def test_qc6():
    Q = qc6()
    m = full_endo_monoid(Q)
    assert verdict(Q, m, "prop_drictlif") == PASS
    assert verdict(Q, m, "lemma_compdecomp") == PASS
    assert check_claim(Q, m, "idempotent_basics").notes == {"idempotents": 4, "complement_pairs": 4}


def test_two_chain_passes_everything():
    C = chain2()
    assert all(c.verdict == PASS for c in run_all(C))


def test_trivial_submonoid_is_gated():
    M = m2()
    s = generate_submonoid(M, [])
    assert verdict(M, s, "thm_kerimgsumm") == UNMET
    assert check_claim(M, s, "thm_kerimgsumm").unmet == "closed_under_complements"


def test_non_modular_lattice_is_gated():
    checks = run_all(pentagon())
    assert checks and all(c.verdict == UNMET and c.unmet == "modular" for c in checks)
    assert monoids_for(pentagon(), "full") == []


def test_record_schema():
    rec = check_claim(m2(), full_endo_monoid(m2()), "prop_reg").record()
    assert rec["schema"] == 1 and rec["kind"] == "claim" and rec["verdict"] == PASS


def test_strict_mode_raises_on_a_failing_claim():
    REGISTRY["always_false"] = Claim("always_false", "t", "t", ("modular",), lambda c: Outcome(False, "w"))
    try:
        with pytest.raises(TheoremViolated):
            run_all(m2(), claims=["always_false"], strict=True)
        rep = counterexample_search([m2()], ["always_false"], strict=False)
        assert len(rep.failures) == 1
    finally:
        del REGISTRY["always_false"]


def test_unknown_claim():
    with pytest.raises(KeyError):
        run_all(m2(), claims=["no_such_claim"])


def test_projection_gate_is_needed_for_central_idempotent_test():
    # a regular submonoid without the kernel projections breaks the literal test
    found = False
    for L in enumerate_lattices(5, modular_only=True):
        for m in monoids_for(L, "generated:2"):
            if not is_regular(m) or contains_all_projections(L, m):
                continue
            for e in idempotents(m):
                pk = projection_values(L, m.kernels[e], m.images[e])
                vanish = all(pk[m.vals[m.table[f][e]][x]] == L.bottom
                             for f in range(m.n) for x in range(L.n))
                if vanish and not is_central(m, e):
                    found = True
                    assert check_claim(L, m, "lemma_pife").unmet == "contains_projections"
    assert found


def test_sweep_small_corpus():
    lats = [L for n in range(2, 6) for L in enumerate_lattices(n)]
    rep = counterexample_search(lats, policy="generated:2")
    assert rep.failures == []
    assert rep.lattices == len(lats)
