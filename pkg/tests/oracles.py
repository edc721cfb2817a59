"""Slow, obviously-correct references used to cross-check the library."""

from itertools import combinations, permutations, product

from linlat.errors import MorphismError
from linlat.lattice import build_lattice
from linlat.morphisms import validate_linear


def leq_matrix(L):
    return [[L.leq(x, y) for y in range(L.n)] for x in range(L.n)]


def has_n5_sublattice(L):
    """Search every 5-subset for a copy of the pentagon o < x < y < i, o < z < i."""
    le = leq_matrix(L)
    for o, x, y, z, i in permutations(range(L.n), 5):
        if not (le[o][x] and le[x][y] and le[y][i] and le[o][z] and le[z][i]):
            continue
        if le[x][z] or le[z][x] or le[y][z] or le[z][y]:
            continue
        # sublattice: closed under the ambient meet and join
        if (L.join(x, z) == i and L.join(y, z) == i
                and L.meet(x, z) == o and L.meet(y, z) == o):
            return True
    return False


def brute_endomorphisms(L):
    """Every map L -> L that validates as linear, as value tuples."""
    W = L.whole()
    out = []
    for values in product(range(L.n), repeat=L.n):
        try:
            validate_linear(W, W, values)
        except MorphismError:
            continue
        out.append(values)
    return sorted(out)


def _closure(n, rel):
    le = [[i == j for j in range(n)] for i in range(n)]
    for a, b in rel:
        le[a][b] = True
    for k in range(n):
        for i in range(n):
            if le[i][k]:
                for j in range(n):
                    if le[k][j]:
                        le[i][j] = True
    return le


def _is_lattice(n, le):
    for a in range(n):
        for b in range(a + 1, n):
            ub = [c for c in range(n) if le[a][c] and le[b][c]]
            least = [c for c in ub if all(le[c][d] for d in ub)]
            if len(least) != 1:
                return False
    return True


def _key(n, le, perm):
    # perm relabels the middle elements; bottom and top stay fixed
    p = (0,) + perm + (n - 1,)
    inv = [0] * n
    for new, old in enumerate(p):
        inv[old] = new
    return tuple(sorted((inv[a], inv[b]) for a in range(n) for b in range(n) if le[a][b] and a != b))


def naive_lattices(n):
    """All n-element lattices up to isomorphism, by filtering posets.

    Bottom is 0 and top is n-1. Every finite poset has a linear extension, so
    relations between middle elements only need pairs i < j.
    """
    if n == 1:
        return [((),)]
    mids = list(range(1, n - 1))
    pairs = list(combinations(mids, 2))
    base = [(0, m) for m in mids] + [(m, n - 1) for m in mids] + [(0, n - 1)]
    seen = set()
    for mask in range(1 << len(pairs)):
        rel = base + [p for k, p in enumerate(pairs) if mask >> k & 1]
        le = _closure(n, rel)
        if not _is_lattice(n, le):
            continue
        key = min(_key(n, le, perm) for perm in permutations(mids))
        seen.add(key)
    return sorted(seen)


def lattice_from_key(n, key, name="oracle"):
    names = [str(i) for i in range(n)]
    rel = set(key)
    covers = [(names[a], names[b]) for a, b in rel
              if not any((a, c) in rel and (c, b) in rel for c in range(n))]
    return build_lattice(names, covers, name)


def essential_by_definition(L):
    return [x for x in range(L.n)
            if all(L.meet(x, y) != L.bottom for y in range(L.n) if y != L.bottom)]


def superfluous_by_definition(L):
    return [s for s in range(L.n)
            if all(L.join(s, y) != L.top for y in range(L.n) if y != L.top)]


def delta_relation(L, m):
    """phi ~ psi iff they agree on [0, x] for some essential x."""
    ess = essential_by_definition(L)
    vals = m.vals
    return [[any(all(vals[i][y] == vals[j][y] for y in range(L.n) if L.leq(y, x)) for x in ess)
             for j in range(m.n)] for i in range(m.n)]


def nabla_relation(L, m):
    """phi ~ psi iff phi(a) v s = psi(a) v s for all a, for some superfluous s."""
    sup = superfluous_by_definition(L)
    vals = m.vals
    return [[any(all(L.join(vals[i][a], s) == L.join(vals[j][a], s) for a in range(L.n)) for s in sup)
             for j in range(m.n)] for i in range(m.n)]


def classes_of(rel):
    n = len(rel)
    out = []
    done = set()
    for i in range(n):
        if i in done:
            continue
        cls = tuple(j for j in range(n) if rel[i][j])
        done.update(cls)
        out.append(cls)
    return sorted(out)


def is_equivalence(rel):
    n = len(rel)
    for i in range(n):
        if not rel[i][i]:
            return False
        for j in range(n):
            if rel[i][j] != rel[j][i]:
                return False
            if rel[i][j]:
                for k in range(n):
                    if rel[j][k] and not rel[i][k]:
                        return False
    return True


def delta_members(L, m):
    ess = set(essential_by_definition(L))
    return sorted(i for i in range(m.n) if m.kernels[i] in ess)


def nabla_members(L, m):
    sup = set(superfluous_by_definition(L))
    return sorted(i for i in range(m.n) if m.images[i] in sup)


def complement_pairs(L):
    return [(x, y) for x in range(L.n) for y in range(L.n)
            if L.meet(x, y) == L.bottom and L.join(x, y) == L.top]
