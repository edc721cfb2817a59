import pytest

from linlat.corpus import m2, n_c1, qc6
from linlat.errors import MorphismError, NotComplementPair
from linlat.lattice import chain, interval, interval_isomorphisms
from linlat.morphisms import (
    compose,
    endo,
    enumerate_endomorphisms,
    extend_hat,
    identity_morphism,
    inclusion,
    is_idempotent,
    is_injective,
    is_isomorphism,
    is_surjective,
    projection,
    quotient_map,
    restrict,
    validate_linear,
    zero_morphism,
)


def by_name(L, table):
    return tuple(L[table[x]] for x in L.names)


# reference endomorphisms of the diamond and of n_c1, element by element
M2_TABLES = {
    "id": {"0": "0", "a": "a", "b": "b", "1": "1"},
    "0": {"0": "0", "a": "0", "b": "0", "1": "0"},
    "tau": {"0": "0", "a": "b", "b": "a", "1": "1"},
    "phi": {"0": "0", "a": "a", "b": "0", "1": "a"},
    "psi": {"0": "0", "a": "0", "b": "b", "1": "b"},
    "tau phi": {"0": "0", "a": "b", "b": "0", "1": "b"},
    "phi tau": {"0": "0", "a": "0", "b": "a", "1": "a"},
}

NC1_TABLES = {
    "0": {"0": "0", "a": "0", "b": "0", "c": "0", "1": "0"},
    "id": {"0": "0", "a": "a", "b": "b", "c": "c", "1": "1"},
    "phi": {"0": "0", "a": "0", "b": "0", "c": "0", "1": "a"},
    "psi": {"0": "0", "a": "0", "b": "0", "c": "0", "1": "b"},
    "tau": {"0": "0", "a": "b", "b": "a", "c": "c", "1": "1"},
}


def test_phi_on_diamond():
    L = m2()
    f = endo(L, by_name(L, M2_TABLES["phi"]))
    assert f.kernel == L["b"] and f.image == L["a"]


def test_identity_is_linear():
    for L in (m2(), qc6(), n_c1()):
        f = validate_linear(L.whole(), L.whole(), tuple(range(L.n)))
        assert f.kernel == L.bottom and f.image == L.top


def test_rejects_non_linear_maps():
    L = m2()
    with pytest.raises(MorphismError):
        endo(L, by_name(L, {"0": "0", "a": "b", "b": "b", "1": "b"}))
    with pytest.raises(MorphismError):
        validate_linear(L.whole(), L.whole(), {0: 0, 1: 1})


def test_zero_and_identity():
    M = m2()
    z = zero_morphism(M.whole())
    assert z.kernel == M.top and z.image == M.bottom
    L = qc6()
    i = identity_morphism(L)
    assert i.kernel == L.bottom and i.image == L.top


def test_projection():
    L = m2()
    assert projection(L, L["a"], L["b"]).values == by_name(L, M2_TABLES["phi"])
    assert projection(L, L.top, L.bottom).values == tuple(range(L.n))
    with pytest.raises(NotComplementPair):
        projection(L, L["a"], L["a"])


def test_inclusion_and_quotient_map():
    M = m2()
    i = inclusion(M, M["a"])
    assert i.image == M["a"] and i.kernel == M.bottom
    N = n_c1()
    r = quotient_map(N, N["c"])
    assert r.kernel == N["c"]
    assert [N.names[r(x)] for x in range(N.n)] == ["c", "c", "c", "c", "1"]


def test_compose_tau_phi():
    L = m2()
    tau = endo(L, by_name(L, M2_TABLES["tau"]))
    phi = endo(L, by_name(L, M2_TABLES["phi"]))
    assert compose(tau, phi).values == by_name(L, M2_TABLES["tau phi"])
    assert compose(phi, tau).values == by_name(L, M2_TABLES["phi tau"])
    assert compose(phi, identity_morphism(L)) == phi


def test_extend_hat():
    L = m2()
    a, b = L.ids("a", "b")
    ida = validate_linear(interval(L, 0, a), interval(L, 0, a), {0: 0, a: a})
    assert extend_hat(ida, a, b, a).values == projection(L, a, b).values

    Q = qc6()
    a, b, d = Q.ids("a", "b", "d")
    iso = interval_isomorphisms(interval(Q, 0, a), interval(Q, 0, b))[0]
    f = validate_linear(interval(Q, 0, a), interval(Q, 0, b), iso)
    hat = extend_hat(f, a, d, b)
    assert [Q.names[v] for v in hat.values] == ["0", "b", "0", "b", "0", "b"]


def test_enumerate_matches_reference_tables():
    L = m2()
    got = {f.values for f in enumerate_endomorphisms(L)}
    assert got == {by_name(L, t) for t in M2_TABLES.values()}
    N = n_c1()
    got = {f.values for f in enumerate_endomorphisms(N)}
    assert got == {by_name(N, t) for t in NC1_TABLES.values()}
    assert len(enumerate_endomorphisms(chain(2))) == 2


def test_predicates():
    L = m2()
    maps = {k: endo(L, by_name(L, t)) for k, t in M2_TABLES.items()}
    assert {k for k, f in maps.items() if is_idempotent(f)} == {"id", "0", "phi", "psi"}
    assert {k for k, f in maps.items() if is_injective(f)} == {"id", "tau"}
    assert {k for k, f in maps.items() if is_surjective(f)} == {"id", "tau"}
    assert {k for k, f in maps.items() if is_isomorphism(f)} == {"id", "tau"}
    for k in ("0", "phi", "psi", "id"):
        f = maps[k]
        assert f.values == projection(L, f.image, f.kernel).values


def test_restrict():
    L = m2()
    phi = endo(L, by_name(L, M2_TABLES["phi"]))
    r = restrict(phi, interval(L, 0, L["a"]))
    assert r.values == (0, L["a"])
    z = restrict(phi, interval(L, 0, 0))
    assert z.values == (0,)
