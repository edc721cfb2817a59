"""
Monoids of linear endomorphisms and their quotients by congruences.

Monoid elements are value vectors in canonical (lexicographic) order, and
``table[i][j]`` is the index of ``elements[i]`` after ``elements[j]``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, product

from .errors import IllDefined, LatticeError, NotModular, ShortcutMismatch, TheoremViolated
from .lattice import (
    Lattice,
    bits,
    essential_elements,
    max_superfluous,
    min_essential,
    superfluous_elements,
)
from .morphisms import (
    LinearMorphism,
    endo,
    endo_value_vectors,
    inverse_on,
    projection_values,
)
from .verdict import Verdict

ASSOC_EXHAUSTIVE_LIMIT = 64
ASSOC_SAMPLES = 50_000


class EndoMonoid:
    def __init__(self, lattice: Lattice, vals, table, name="m", verify=True):
        self.lattice = lattice
        self.vals = tuple(vals)
        self.n = len(self.vals)
        self.index = {v: i for i, v in enumerate(self.vals)}
        self.table = tuple(tuple(r) for r in table)
        self.name = name
        L = lattice
        try:
            self.id_index = self.index[tuple(range(L.n))]
            self.zero_index = self.index[(L.bottom,) * L.n]
        except KeyError:
            raise LatticeError("a monoid with zero must contain the identity and zero maps") from None
        self.kernels = tuple(L.big_join(x for x in range(L.n) if v[x] == L.bottom) for v in self.vals)
        self.images = tuple(v[L.top] for v in self.vals)
        if verify:
            check_associative(self)

    def __len__(self):
        return self.n

    def __contains__(self, f):
        vals = f.values if isinstance(f, LinearMorphism) else tuple(f)
        return vals in self.index

    def __repr__(self):
        return f"<EndoMonoid {self.name} on {self.lattice.name} order {self.n}>"

    @cached_property
    def elements(self):
        return [endo(self.lattice, v, name=self.label(i), check=False) for i, v in enumerate(self.vals)]

    def label(self, i):
        if i == self.id_index:
            return "id"
        if i == self.zero_index:
            return "0"
        return f"e{i}"

    def mul(self, i, j):
        return self.table[i][j]

    @cached_property
    def member_set(self):
        return frozenset(self.vals)

    @cached_property
    def is_full(self):
        return self.n == len(endo_value_vectors(self.lattice))

    def dump(self):
        L = self.lattice
        lines = [f"monoid {self.name} order {self.n}"]
        for i, v in enumerate(self.vals):
            body = ", ".join(f"{L.names[x]}->{L.names[v[x]]}" for x in range(L.n))
            lines.append(f"  {i} {self.label(i)} {{{body}}}")
        for row in self.table:
            lines.append(" ".join(str(c) for c in row))
        return "\n".join(lines)


def check_associative(m: EndoMonoid):
    t, n = m.table, m.n
    if n <= ASSOC_EXHAUSTIVE_LIMIT:
        triples = product(range(n), repeat=3)
    else:
        rng = random.Random(0)
        triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(ASSOC_SAMPLES))
    for a, b, c in triples:
        if t[t[a][b]][c] != t[a][t[b][c]]:
            raise TheoremViolated("associativity", (a, b, c), m.name)


def build_monoid(L: Lattice, vals, name="m", verify=True) -> EndoMonoid:
    vals = sorted(set(tuple(v) for v in vals))
    index = {v: i for i, v in enumerate(vals)}
    table = []
    for g in vals:
        row = []
        for f in vals:
            h = tuple(g[y] for y in f)
            if h not in index:
                raise LatticeError("the given maps are not closed under composition")
            row.append(index[h])
        table.append(row)
    return EndoMonoid(L, vals, table, name=name, verify=verify)


@lru_cache(maxsize=128)
def full_endo_monoid(L: Lattice) -> EndoMonoid:
    return build_monoid(L, endo_value_vectors(L), name="End")


def submonoid_from_indices(ambient: EndoMonoid, members, name="m") -> EndoMonoid:
    members = sorted(members)
    pos = {g: i for i, g in enumerate(members)}
    t = ambient.table
    table = [[pos[t[a][b]] for b in members] for a in members]
    return EndoMonoid(ambient.lattice, [ambient.vals[i] for i in members], table, name=name, verify=False)


def closure_indices(ambient: EndoMonoid, gens) -> frozenset:
    t = ambient.table
    gens = set(gens) | {ambient.id_index, ambient.zero_index}
    seen = set(gens)
    frontier = list(seen)
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                for p in (t[s][g], t[g][s]):
                    if p not in seen:
                        seen.add(p)
                        nxt.append(p)
        frontier = nxt
    return frozenset(seen)


def generate_submonoid(L: Lattice, generators=(), name=None, ambient=None) -> EndoMonoid:
    """Smallest composition-closed set containing generators, id and zero."""
    ambient = ambient or full_endo_monoid(L)
    idx = []
    for g in generators:
        vals = g.values if isinstance(g, LinearMorphism) else tuple(g)
        if vals not in ambient.index:
            endo(L, vals)  # raises a precise linearity error
            raise LatticeError("generator is not in the ambient monoid")
        idx.append(ambient.index[vals])
    if name is None:
        name = "<" + ",".join(ambient.label(i) for i in sorted(idx)) + ">"
    return submonoid_from_indices(ambient, closure_indices(ambient, idx), name=name)


def generated_submonoids(L: Lattice, k: int, ambient=None):
    """All distinct submonoids generated by 1..k non-trivial elements, deterministic order."""
    ambient = ambient or full_endo_monoid(L)
    pool = [i for i in range(ambient.n) if i not in (ambient.id_index, ambient.zero_index)]
    seen = set()
    out = []
    if k >= 0:
        base = closure_indices(ambient, ())
        seen.add(base)
        out.append(("<>", base))
    for r in range(1, k + 1):
        for gens in combinations(pool, r):
            members = closure_indices(ambient, gens)
            if members not in seen:
                seen.add(members)
                out.append(("<" + ",".join(ambient.label(i) for i in gens) + ">", members))
    for name, members in out:
        yield submonoid_from_indices(ambient, members, name=name)


# ---------------------------------------------------------------------------
# regularity and idempotents


def regularity_witnesses(m: EndoMonoid):
    """For each element i, every j with i j i = i."""
    t = m.table
    return [[j for j in range(m.n) if t[t[i][j]][i] == i] for i in range(m.n)]


def is_regular(m: EndoMonoid) -> Verdict:
    t = m.table
    witnesses = {}
    for i in range(m.n):
        row = t[i]
        for j in range(m.n):
            if t[row[j]][i] == i:
                witnesses[i] = j
                break
        else:
            return Verdict(False, i)
    return Verdict(True, witnesses)


def idempotents(m: EndoMonoid):
    return [i for i in range(m.n) if m.table[i][i] == i]


def is_central(m: EndoMonoid, e) -> bool:
    t = m.table
    return all(t[e][x] == t[x][e] for x in range(m.n))


def is_abelian(m: EndoMonoid) -> Verdict:
    t = m.table
    for e in idempotents(m):
        for x in range(m.n):
            if t[e][x] != t[x][e]:
                return Verdict(False, (e, x))
    return Verdict(True)


def is_closed_under_complements(L: Lattice, m: EndoMonoid) -> Verdict:
    """Every phi inducing [0,x] ~ [0,y] on complemented x, y has iota_x phi^-1 pi_y in m."""
    cm = L.complemented_mask
    for i, v in enumerate(m.vals):
        f = m.elements[i]
        for x in bits(cm):
            y = v[x]
            if not cm >> y & 1:
                continue
            inv = inverse_on(f, x)
            if inv is None:
                continue
            for yp in bits(L.complement_masks[y]):
                p = projection_values(L, y, yp)
                psi = tuple(inv[p[a]] for a in range(L.n))
                if psi not in m.index:
                    return Verdict(False, {"phi": i, "x": x, "y": y, "y_prime": yp, "missing": psi})
    return Verdict(True)


def contains_all_projections(L: Lattice, m: EndoMonoid) -> Verdict:
    for x in bits(L.complemented_mask):
        for xp in bits(L.complement_masks[x]):
            if projection_values(L, x, xp) not in m.index:
                return Verdict(False, (x, xp))
    return Verdict(True)


# ---------------------------------------------------------------------------
# ideals


@dataclass(frozen=True)
class MonoidIdeal:
    monoid: EndoMonoid
    members: frozenset
    side: str = "two-sided"

    def is_left(self):
        t = self.monoid.table
        return all(t[c][a] in self.members for a in self.members for c in range(self.monoid.n))

    def is_right(self):
        t = self.monoid.table
        return all(t[a][c] in self.members for a in self.members for c in range(self.monoid.n))

    def verify(self):
        if self.monoid.zero_index not in self.members:
            return False
        if self.side in ("left", "two-sided") and not self.is_left():
            return False
        if self.side in ("right", "two-sided") and not self.is_right():
            return False
        return True

    def is_zero(self):
        return self.members == frozenset({self.monoid.zero_index})

    def sorted(self):
        return sorted(self.members)


def _require_modular(L):
    if not L.modular:
        raise NotModular(f"{L.name} is not modular")


def delta_ideal(L: Lattice, m: EndoMonoid) -> MonoidIdeal:
    """Members whose kernel is essential."""
    _require_modular(L)
    ess = essential_elements(L)
    A = MonoidIdeal(m, frozenset(i for i in range(m.n) if m.kernels[i] in ess))
    if not A.verify():
        raise TheoremViolated("lemma_ideals", "delta is not a two-sided ideal", m.name)
    return A


def nabla_ideal(L: Lattice, m: EndoMonoid) -> MonoidIdeal:
    """Members whose image is superfluous."""
    _require_modular(L)
    sup = superfluous_elements(L)
    A = MonoidIdeal(m, frozenset(i for i in range(m.n) if m.images[i] in sup))
    if not A.verify():
        raise TheoremViolated("lemma_ideals", "nabla is not a two-sided ideal", m.name)
    return A


# ---------------------------------------------------------------------------
# congruences


@dataclass(frozen=True)
class Congruence:
    monoid: EndoMonoid
    classes: tuple
    class_of: tuple
    relation: str = ""

    @classmethod
    def from_keys(cls, m, keys, relation=""):
        groups = {}
        for i, k in enumerate(keys):
            groups.setdefault(k, []).append(i)
        return cls.from_classes(m, groups.values(), relation)

    @classmethod
    def from_classes(cls, m, classes, relation=""):
        classes = tuple(sorted(tuple(sorted(c)) for c in classes))
        class_of = [0] * m.n
        for ci, c in enumerate(classes):
            for i in c:
                class_of[i] = ci
        return cls(m, classes, tuple(class_of), relation)

    def related(self, i, j):
        return self.class_of[i] == self.class_of[j]

    def class_containing(self, i):
        return self.classes[self.class_of[i]]

    @property
    def is_discrete(self):
        return len(self.classes) == self.monoid.n

    def is_compatible(self):
        """Left and right compatibility, checked against each class representative."""
        t, co = self.monoid.table, self.class_of
        for c in self.classes:
            r = c[0]
            for i in c[1:]:
                for s in range(self.monoid.n):
                    if co[t[s][i]] != co[t[s][r]] or co[t[i][s]] != co[t[r][s]]:
                        return False
        return True

    def dump(self):
        lines = [f"congruence {self.relation} on {self.monoid.name} classes {len(self.classes)}"]
        for c in self.classes:
            lines.append("  [" + ", ".join(self.monoid.label(i) for i in c) + "]")
        return "\n".join(lines)


def _partition_from_relation(m, related, claim):
    """Turn a relation matrix into classes, insisting it is an equivalence."""
    n = m.n
    for i in range(n):
        if not related[i][i]:
            raise TheoremViolated(claim, ("not reflexive", i), m.name)
        for j in range(n):
            if related[i][j] != related[j][i]:
                raise TheoremViolated(claim, ("not symmetric", i, j), m.name)
    classes = []
    assigned = [False] * n
    for i in range(n):
        if assigned[i]:
            continue
        cls = [j for j in range(n) if related[i][j]]
        for j in cls:
            for k in cls:
                if not related[j][k]:
                    raise TheoremViolated(claim, ("not transitive", i, j, k), m.name)
            assigned[j] = True
        classes.append(cls)
    return classes


def _delta_naive(L, m):
    downs = [[y for y in range(L.n) if L.leq(y, x)] for x in essential_elements(L)]
    keys = [[tuple(v[y] for y in d) for v in m.vals] for d in downs]
    related = [[any(k[i] == k[j] for k in keys) for j in range(m.n)] for i in range(m.n)]
    return Congruence.from_classes(m, _partition_from_relation(m, related, "lemma_congru"), "delta")


def _delta_shortcut(L, m):
    e = min_essential(L)
    d = [y for y in range(L.n) if L.leq(y, e)]
    return Congruence.from_keys(m, [tuple(v[y] for y in d) for v in m.vals], "delta")


def _nabla_naive(L, m):
    jt = L.join_table
    keys = [[tuple(jt[a][s] for a in v) for v in m.vals] for s in superfluous_elements(L)]
    related = [[any(k[i] == k[j] for k in keys) for j in range(m.n)] for i in range(m.n)]
    return Congruence.from_classes(m, _partition_from_relation(m, related, "lemma_congru"), "nabla")


def _nabla_shortcut(L, m):
    s = max_superfluous(L)
    jt = L.join_table
    return Congruence.from_keys(m, [tuple(jt[a][s] for a in v) for v in m.vals], "nabla")


def _congruence(L, m, method, naive, shortcut):
    _require_modular(L)
    if method not in ("both", "naive", "shortcut"):
        raise ValueError(f"unknown method {method!r}")
    fast = shortcut(L, m) if method != "naive" else None
    slow = naive(L, m) if method != "shortcut" else None
    if fast is not None and slow is not None and fast.classes != slow.classes:
        raise ShortcutMismatch(f"shortcut and definitional congruences differ on {m.name}")
    cong = fast or slow
    if not cong.is_compatible():
        raise TheoremViolated("lemma_congru", cong.classes, m.name)
    return cong


def congruence_delta(L: Lattice, m: EndoMonoid, method="both") -> Congruence:
    """phi ~ psi iff they agree below some essential element."""
    return _congruence(L, m, method, _delta_naive, _delta_shortcut)


def congruence_nabla(L: Lattice, m: EndoMonoid, method="both") -> Congruence:
    """phi ~ psi iff phi(a) v s = psi(a) v s for all a, for some superfluous s."""
    return _congruence(L, m, method, _nabla_naive, _nabla_shortcut)


def discrete_congruence(m: EndoMonoid) -> Congruence:
    return Congruence.from_classes(m, [[i] for i in range(m.n)], "discrete")


# ---------------------------------------------------------------------------
# quotients


class QuotientMonoid:
    def __init__(self, congruence: Congruence):
        m = congruence.monoid
        self.congruence = congruence
        self.monoid = m
        self.classes = congruence.classes
        self.reps = tuple(c[0] for c in self.classes)
        co, t = congruence.class_of, m.table
        self.table = tuple(tuple(co[t[r][s]] for s in self.reps) for r in self.reps)
        for i in range(m.n):
            for j in range(m.n):
                if co[t[i][j]] != self.table[co[i]][co[j]]:
                    raise IllDefined(f"class product depends on representatives ({i}, {j})")
        self.n = len(self.classes)
        self.id_class = co[m.id_index]
        self.zero_class = co[m.zero_index]

    def __len__(self):
        return self.n

    def is_regular(self) -> Verdict:
        t = self.table
        wit = {}
        for c in range(self.n):
            for d in range(self.n):
                if t[t[c][d]][c] == c:
                    wit[c] = d
                    break
            else:
                return Verdict(False, c)
        return Verdict(True, wit)

    def inverse(self, c):
        t = self.table
        for d in range(self.n):
            if t[c][d] == self.id_class and t[d][c] == self.id_class:
                return d
        return None

    def nonzero_invertible(self) -> Verdict:
        for c in range(self.n):
            if c != self.zero_class and self.inverse(c) is None:
                return Verdict(False, c)
        return Verdict(True)

    def class_labels(self):
        return ["[" + ",".join(self.monoid.label(i) for i in c) + "]" for c in self.classes]

    def dump(self):
        labels = self.class_labels()
        lines = [f"quotient {self.congruence.relation} of {self.monoid.name} order {self.n}"]
        for k, lab in enumerate(labels):
            lines.append(f"  {k} {lab}")
        for row in self.table:
            lines.append(" ".join(str(c) for c in row))
        return "\n".join(lines)


def quotient(m: EndoMonoid, cong: Congruence) -> QuotientMonoid:
    if cong.monoid is not m:
        raise ValueError("congruence belongs to a different monoid")
    return QuotientMonoid(cong)


# ---------------------------------------------------------------------------
# reports tied to the congruences


def class_of_zero_check(L: Lattice, m: EndoMonoid) -> Verdict:
    dc, nc = congruence_delta(L, m), congruence_nabla(L, m)
    zd = set(dc.class_containing(m.zero_index))
    zn = set(nc.class_containing(m.zero_index))
    D, N = set(delta_ideal(L, m).members), set(nabla_ideal(L, m).members)
    ok = zd == D and zn == N
    return Verdict(ok, None if ok else {"delta": (sorted(zd), sorted(D)), "nabla": (sorted(zn), sorted(N))})


def class_of_identity_check(L: Lattice, m: EndoMonoid) -> Verdict:
    from .properties import satisfies_C2, satisfies_D2

    notes = {}
    bad = None
    if satisfies_C2(L, m):
        cls = congruence_delta(L, m).class_containing(m.id_index)
        notes["delta"] = list(cls)
        for i in cls:
            if m.kernels[i] != L.bottom or m.images[i] != L.top:
                bad = ("delta", i)
    else:
        notes["delta"] = "C2 fails; not applicable"
    if satisfies_D2(L, m):
        cls = congruence_nabla(L, m).class_containing(m.id_index)
        notes["nabla"] = list(cls)
        for i in cls:
            if m.kernels[i] != L.bottom or m.images[i] != L.top:
                bad = bad or ("nabla", i)
    else:
        notes["nabla"] = "D2 fails; not applicable"
    return Verdict(bad is None, bad, notes=notes)


def principal_left_ideal(m: EndoMonoid, i) -> frozenset:
    t = m.table
    return frozenset(t[c][i] for c in range(m.n)) | {m.zero_index}


def _square_is_zero(m, A):
    t, z = m.table, m.zero_index
    return all(t[a][b] == z for a in A for b in A)


def nilpotent_left_ideal_check(m: EndoMonoid, max_union=3) -> Verdict:
    """In a regular monoid no nonzero left ideal squares to zero.

    Searches principal left ideals and unions of up to ``max_union`` of them;
    a union can only square to zero if each part does, which prunes the scan.
    """
    if not is_regular(m):
        return Verdict(True, skipped_reason="monoid is not regular")
    principals = sorted({principal_left_ideal(m, i) for i in range(m.n)}, key=sorted)
    nil = [A for A in principals if _square_is_zero(m, A)]
    zero = frozenset({m.zero_index})
    for r in range(1, max_union + 1):
        for parts in combinations(nil, r):
            A = frozenset().union(*parts)
            if A != zero and _square_is_zero(m, A):
                return Verdict(False, sorted(A))
    return Verdict(True)


# ---------------------------------------------------------------------------
# semiring structure


def pointwise_join_table(m: EndoMonoid):
    """(phi + psi)(a) = phi(a) v psi(a), as an index table, or None if it leaves m."""
    jt = m.lattice.join_table
    table = []
    for f in m.vals:
        row = []
        for g in m.vals:
            h = tuple(jt[a][b] for a, b in zip(f, g))
            if h not in m.index:
                return None
            row.append(m.index[h])
        table.append(row)
    return table


def is_semiring(m: EndoMonoid, add) -> Verdict:
    """Check semiring axioms for a user supplied addition table on m."""
    n, t, z = m.n, m.table, m.zero_index
    r = range(n)
    for a in r:
        if add[a][z] != a or add[z][a] != a:
            return Verdict(False, ("zero is not additive identity", a))
        for b in r:
            if add[a][b] != add[b][a]:
                return Verdict(False, ("addition not commutative", a, b))
            for c in r:
                if add[add[a][b]][c] != add[a][add[b][c]]:
                    return Verdict(False, ("addition not associative", a, b, c))
                if t[a][add[b][c]] != add[t[a][b]][t[a][c]]:
                    return Verdict(False, ("left distributivity", a, b, c))
                if t[add[b][c]][a] != add[t[b][a]][t[c][a]]:
                    return Verdict(False, ("right distributivity", a, b, c))
    return Verdict(True)
