from hypothesis import given, settings, strategies as st

from linlat.claims import FAIL, run_all
from linlat.corpus import are_isomorphic, canonical_form, enumerate_lattices
from linlat.errors import LatticeError, MorphismError
from linlat.lattice import build_lattice, dual, is_modular, is_self_dual
from linlat.monoid import (
    congruence_delta,
    congruence_nabla,
    full_endo_monoid,
    generate_submonoid,
    idempotents,
    quotient,
)
from linlat.morphisms import compose, endo_value_vectors, projection_values, validate_linear
from linlat.properties import PROPERTY_IDS, check_property, replay

from oracles import classes_of, delta_relation, has_n5_sublattice, nabla_relation

ALL = [L for n in range(1, 7) for L in enumerate_lattices(n)]
MODULAR = [L for L in ALL if L.modular]

lattices = st.sampled_from(ALL)
modular_lattices = st.sampled_from(MODULAR)


@st.composite
def lattice_and_submonoid(draw):
    L = draw(modular_lattices)
    full = full_endo_monoid(L)
    gens = draw(st.lists(st.integers(0, full.n - 1), max_size=3))
    return L, generate_submonoid(L, [full.elements[i] for i in gens])


@st.composite
def relabeled(draw):
    L = draw(lattices)
    perm = draw(st.permutations(range(L.n)))
    names = [f"x{p}" for p in perm]
    covers = [(names[x], names[y]) for x, y in sorted(L.covers)]
    return L, build_lattice(names, draw(st.permutations(covers)), "R")


@settings(max_examples=60, deadline=None)
@given(lattice_and_submonoid(), st.data())
def test_submonoid_is_associative_and_closed(pair, data):
    L, m = pair
    t = m.table
    a, b, c = (data.draw(st.integers(0, m.n - 1)) for _ in range(3))
    assert t[t[a][b]][c] == t[a][t[b][c]]
    # every product is again linear
    W = L.whole()
    validate_linear(W, W, m.vals[t[a][b]])


@settings(max_examples=60, deadline=None)
@given(lattice_and_submonoid())
def test_congruences_match_definition_and_are_compatible(pair):
    L, m = pair
    for cong, rel in ((congruence_delta(L, m), delta_relation), (congruence_nabla(L, m), nabla_relation)):
        assert sorted(cong.classes) == classes_of(rel(L, m))
        assert cong.is_compatible()
        q = quotient(m, cong)
        assert q.table[q.id_class][q.zero_class] == q.zero_class


@settings(max_examples=60, deadline=None)
@given(lattice_and_submonoid(), st.sampled_from(PROPERTY_IDS))
def test_property_witnesses_replay(pair, pid):
    L, m = pair
    v = check_property(L, m, pid)
    assert replay(L, m, pid, v)


@settings(max_examples=40, deadline=None)
@given(lattice_and_submonoid())
def test_claims_never_fail(pair):
    L, m = pair
    for chk in run_all(L, m):
        assert chk.verdict != FAIL, (chk.claim, chk.witness)


@settings(max_examples=60, deadline=None)
@given(lattice_and_submonoid())
def test_idempotents_are_projections(pair):
    L, m = pair
    for e in idempotents(m):
        k, img = m.kernels[e], m.images[e]
        assert L.meet(k, img) == L.bottom and L.join(k, img) == L.top
        assert projection_values(L, img, k) == m.vals[e]


@settings(max_examples=80, deadline=None)
@given(relabeled())
def test_relabel_invariance(pair):
    L, R = pair
    assert canonical_form(L) == canonical_form(R)
    assert are_isomorphic(L, R)
    assert is_modular(L)[0] == is_modular(R)[0]
    assert is_self_dual(L) == is_self_dual(R)
    if L.modular:
        mL, mR = full_endo_monoid(L), full_endo_monoid(R)
        assert mL.n == mR.n
        for pid in PROPERTY_IDS:
            assert bool(check_property(L, mL, pid)) == bool(check_property(R, mR, pid)), pid


@settings(max_examples=80, deadline=None)
@given(lattices)
def test_modularity_agrees_with_pentagon_search(L):
    assert L.modular == (not has_n5_sublattice(L))


@settings(max_examples=80, deadline=None)
@given(lattices)
def test_dual_is_an_involution(L):
    assert are_isomorphic(dual(dual(L)), L)
    assert is_self_dual(L) == are_isomorphic(L, dual(L))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([L for L in ALL if L.n <= 5]), st.data())
def test_random_maps_are_linear_iff_enumerated(L, data):
    values = tuple(data.draw(st.lists(st.integers(0, L.n - 1), min_size=L.n, max_size=L.n)))
    W = L.whole()
    try:
        validate_linear(W, W, values)
        linear = True
    except MorphismError:
        linear = False
    assert linear == (values in set(endo_value_vectors(L)))


@settings(max_examples=60, deadline=None)
@given(modular_lattices, st.data())
def test_composites_of_linear_maps_are_linear(L, data):
    maps = full_endo_monoid(L).elements
    f = data.draw(st.sampled_from(maps))
    g = data.draw(st.sampled_from(maps))
    h = compose(g, f)
    assert h.values == tuple(g.values[v] for v in f.values)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=10))))
def test_random_covers_give_a_lattice_or_an_error(spec):
    n, pairs = spec
    names = [str(i) for i in range(n)]
    try:
        L = build_lattice(names, [(names[a], names[b]) for a, b in pairs if a != b])
    except LatticeError:
        return
    r = range(L.n)
    for x in r:
        assert L.join(x, L.bottom) == x and L.meet(x, L.top) == x
        for y in r:
            assert L.join(x, L.meet(x, y)) == x
            assert L.meet(x, L.join(x, y)) == x
            assert L.leq(x, y) == (L.meet(x, y) == x)
