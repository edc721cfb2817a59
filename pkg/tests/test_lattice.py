import pytest

from linlat.corpus import m2, n_c1, pentagon, qc6
from linlat.errors import CycleDetected, LatticeError, NoUniqueBound, NotALattice
from linlat.lattice import (
    atoms,
    automorphisms,
    big_join,
    big_meet,
    build_lattice,
    chain,
    coatoms,
    compact_elements,
    complemented_elements,
    complements_of,
    dual,
    interval,
    interval_isomorphisms,
    is_boolean,
    is_distributive,
    is_essential,
    is_independent,
    is_modular,
    is_self_dual,
    is_superfluous,
    max_superfluous,
    min_essential,
    radical,
    socle,
)


def names(L, ids):
    return sorted(L.names[i] for i in ids)


def test_two_chain():
    L = build_lattice(["0", "1"], [("0", "1")])
    assert L.n == 2
    assert L.meet(0, 1) == 0 and L.join(0, 1) == 1


def test_diamond_meet_join():
    L = m2()
    a, b = L.ids("a", "b")
    assert L.join(a, b) == L.top
    assert L.meet(a, b) == L.bottom


def test_two_maximal_elements_rejected():
    with pytest.raises((NotALattice, NoUniqueBound)):
        build_lattice(list("0abcd"), [("0", "a"), ("0", "b"), ("a", "c"), ("b", "c"), ("a", "d")])


def test_cycle_rejected():
    with pytest.raises(CycleDetected):
        build_lattice(list("0ab1"), [("0", "a"), ("a", "b"), ("b", "a"), ("b", "1")])


def test_join_with_bottom_is_identity():
    for L in (m2(), n_c1(), qc6()):
        for x in range(L.n):
            assert L.join(x, L.bottom) == x
            assert L.meet(x, L.top) == x


def test_qc6_meet_c_d_is_b():
    L = qc6()
    assert L.meet(L["c"], L["d"]) == L["b"]


def test_big_operations_on_empty():
    L = qc6()
    assert big_join(L, []) == L.bottom
    assert big_meet(L, []) == L.top


def test_modularity():
    assert is_modular(m2())[0]
    assert is_modular(qc6())[0]
    ok, wit = is_modular(pentagon())
    assert not ok
    L = pentagon()
    a, b, x = wit
    assert L.leq(a, b)
    assert L.join(a, L.meet(x, b)) != L.meet(L.join(a, x), b)


def test_boolean_and_distributive():
    assert is_boolean(m2())
    assert is_boolean(chain(2))
    assert not is_boolean(n_c1())
    assert is_distributive(m2())
    assert not is_distributive(pentagon())


def test_complements():
    assert names(qc6(), complemented_elements(qc6())) == ["0", "1", "a", "d"]
    assert names(m2(), complemented_elements(m2())) == ["0", "1", "a", "b"]
    assert names(n_c1(), complemented_elements(n_c1())) == ["0", "1"]
    L = qc6()
    assert names(L, complements_of(L, L["a"])) == ["d"]


def test_essential_and_superfluous():
    L = qc6()
    assert is_essential(L, L["b"], interval(L, L.bottom, L["d"]))
    assert is_essential(L, L["c"], L.whole())
    assert is_essential(L, L.top)
    assert is_superfluous(L, L.bottom)
    N = n_c1()
    assert is_superfluous(N, N["a"])


def test_min_essential_max_superfluous():
    N = n_c1()
    assert min_essential(N) == N["c"] and max_superfluous(N) == N["c"]
    M = m2()
    assert min_essential(M) == M.top and max_superfluous(M) == M.bottom
    C = chain(2)
    assert min_essential(C) == C.top and max_superfluous(C) == C.bottom


def test_atoms_and_radical():
    M = m2()
    assert names(M, atoms(M)) == ["a", "b"]
    assert socle(M) == M.top
    C = chain(2)
    assert radical(C) == C.bottom and socle(C) == C.top
    L = qc6()
    assert names(L, atoms(L)) == ["a", "b"]
    assert names(L, coatoms(L)) == ["c", "d"]
    assert radical(L) == L["b"]


def test_intervals():
    L = qc6()
    I = interval(L, L.bottom, L["d"])
    assert names(L, I.elements) == ["0", "b", "d"]
    assert I.as_lattice().n == 3
    assert len(interval(L, L.bottom, L.top)) == L.n
    M = m2()
    assert names(M, interval(M, M["a"], M.top).elements) == ["1", "a"]
    with pytest.raises(LatticeError):
        interval(L, L["a"], L["b"])


def test_interval_isomorphisms():
    L = qc6()
    o = L.bottom
    assert len(interval_isomorphisms(interval(L, o, L["a"]), interval(L, o, L["b"]))) == 1
    assert interval_isomorphisms(interval(L, o, L["a"]), interval(L, o, L["d"])) == []
    assert len(automorphisms(m2())) == 2


def test_independence():
    M = m2()
    assert is_independent(M, M.ids("a", "b"))
    L = qc6()
    assert is_independent(L, L.ids("a", "d"))
    with pytest.raises(LatticeError):
        is_independent(L, [L.bottom, L["a"]])


def test_duality():
    assert is_self_dual(qc6())
    assert is_self_dual(chain(2))
    assert not is_self_dual(n_c1())
    assert dual(dual(m2())).covers == m2().covers


def test_compact_elements_are_everything():
    for L in (m2(), qc6(), n_c1()):
        assert len(compact_elements(L)) == L.n
