"""
Lattices to test against: named examples plus exhaustive generation up to isomorphism.

Subgroup lattices of small abelian groups and corpus files live here too.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from pathlib import Path

from .errors import LatticeError, NotALattice, OrderBound
from .lattice import Lattice, automorphisms, bits, build_lattice, chain
from .textio import format_lattice, parse_lattices

# ---------------------------------------------------------------------------
# named examples


def m2() -> Lattice:
    """The diamond with two atoms."""
    return build_lattice("0 a b 1".split(), [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")], "m2")


def n_c1() -> Lattice:
    """0 < a, b < c < 1 with a, b incomparable."""
    return build_lattice(
        "0 a b c 1".split(),
        [("0", "a"), ("0", "b"), ("a", "c"), ("b", "c"), ("c", "1")],
        "n_c1",
    )


def qc6() -> Lattice:
    return build_lattice(
        "0 a b c d 1".split(),
        [("0", "a"), ("0", "b"), ("a", "c"), ("b", "c"), ("b", "d"), ("c", "1"), ("d", "1")],
        "qc6",
    )


def chain_k(k: int) -> Lattice:
    """0 < a_k < ... < a_0 < b, c < 1."""
    if not 0 <= k <= 3:
        raise OrderBound("chain_k is only provided for k = 0..3")
    names = ["0"] + [f"a{i}" for i in range(k, -1, -1)] + ["b", "c", "1"]
    covers = list(zip(names[: k + 1], names[1 : k + 2]))
    covers += [("a0", "b"), ("a0", "c"), ("b", "1"), ("c", "1")]
    return build_lattice(names, covers, f"chain_{k}")


def chain2() -> Lattice:
    return chain(2, "chain2")


def pentagon() -> Lattice:
    return build_lattice(
        "0 a b c 1".split(),
        [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        "n5",
    )


def named_examples() -> list:
    return [m2(), n_c1(), qc6(), chain2()] + [chain_k(k) for k in range(4)]


def named(name: str) -> Lattice:
    table = {L.name: L for L in named_examples()}
    table["n5"] = pentagon()
    if name not in table:
        raise LatticeError(f"unknown named example {name!r}")
    return table[name]


# ---------------------------------------------------------------------------
# canonical forms


def _refine(L, cells):
    """Split cells by cover-neighbour cell counts until stable."""
    while True:
        where = {}
        for i, c in enumerate(cells):
            for x in c:
                where[x] = i
        new = []
        for c in cells:
            if len(c) == 1:
                new.append(c)
                continue
            groups = {}
            for x in c:
                sig = (
                    tuple(sorted(where[y] for y in L.upper_covers[x])),
                    tuple(sorted(where[y] for y in L.lower_covers[x])),
                )
                groups.setdefault(sig, []).append(x)
            for sig in sorted(groups):
                new.append(groups[sig])
        if len(new) == len(cells):
            return new
        cells = new


def _encode(L, perm):
    pos = {x: i for i, x in enumerate(perm)}
    rows = []
    for x in perm:
        r = 0
        for y in bits(L.down[x]):
            r |= 1 << pos[y]
        rows.append(r)
    return tuple(rows)


def canonical_labeling(L: Lattice):
    """(encoding, element order) minimal over individualisation-refinement leaves."""
    inv = L.whole().invariants
    groups = {}
    for x in range(L.n):
        groups.setdefault(inv[x], []).append(x)
    start = _refine(L, [groups[k] for k in sorted(groups)])
    best = [None, None]

    def search(cells):
        cells = _refine(L, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            perm = [c[0] for c in cells]
            code = _encode(L, perm)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, perm
            return
        c = cells[target]
        for v in c:
            rest = [x for x in c if x != v]
            search(cells[:target] + [[v], rest] + cells[target + 1 :])

    search(start)
    return best[0], best[1]


@dataclass(frozen=True, order=True)
class CanonicalForm:
    n: int
    rows: tuple = field(repr=False)

    def to_bytes(self) -> bytes:
        width = max(1, (self.n + 7) // 8)
        return bytes([self.n]) + b"".join(r.to_bytes(width, "little") for r in self.rows)


def canonical_form(L: Lattice) -> CanonicalForm:
    return CanonicalForm(L.n, canonical_labeling(L)[0])


def are_isomorphic(L1: Lattice, L2: Lattice) -> bool:
    return canonical_form(L1) == canonical_form(L2)


def from_canonical(form: CanonicalForm, name=None) -> Lattice:
    names = [str(i) for i in range(form.n)]
    rel = [(names[y], names[x]) for x, r in enumerate(form.rows) for y in bits(r) if y != x]
    return build_lattice(names, rel, name or "L")


def relabel_canonical(L: Lattice, name=None) -> Lattice:
    return from_canonical(canonical_form(L), name or L.name)


# ---------------------------------------------------------------------------
# orderly generation
#
# Every lattice with n >= 3 elements arises from one with n - 1 elements by
# adding a new coatom whose down-set is a down-set of the old lattice minus
# its top.  Extensions are reduced modulo Aut(K) and accepted only when the
# new coatom lies in the orbit of the canonically chosen coatom.


def _down_sets(K):
    """Down-sets of K minus top that contain bottom, as bitmasks."""
    pool = [x for x in range(K.n) if x != K.top]
    out = []
    for choice in product((0, 1), repeat=len(pool)):
        mask = 0
        for x, c in zip(pool, choice):
            if c:
                mask |= 1 << x
        if not mask >> K.bottom & 1:
            continue
        if all(K.down[x] & mask == K.down[x] for x in bits(mask)):
            out.append(mask)
    return out


def _extend(K, D):
    names = list(K.names) + [str(K.n)]
    rel = [(K.names[x], K.names[y]) for x, y in K.covers]
    new = names[-1]
    rel += [(K.names[y], new) for y in bits(D)] + [(new, K.names[K.top])]
    try:
        return build_lattice(names, rel, "ext")
    except NotALattice:
        return None


def _canonical_coatom(L, perm):
    coatoms = set(L.lower_covers[L.top])
    return max(coatoms, key=perm.index)


@lru_cache(maxsize=None)
def _level(n: int) -> tuple:
    if n < 1:
        raise OrderBound("lattices need at least one element")
    if n == 1:
        return (canonical_form(build_lattice(["0"], [], "L")),)
    if n == 2:
        return (canonical_form(chain(2)),)
    seen = set()
    for form in _level(n - 1):
        K = from_canonical(form)
        auts = automorphisms(K)
        for D in _down_sets(K):
            if any(sum(1 << g[x] for x in bits(D)) < D for g in auts):
                continue
            L = _extend(K, D)
            if L is None:
                continue
            code, perm = canonical_labeling(L)
            c = _canonical_coatom(L, perm)
            new = L.n - 1
            if c != new and not any(g[new] == c for g in automorphisms(L)):
                continue
            f = CanonicalForm(n, code)
            if f in seen:
                raise AssertionError("orderly generation produced a duplicate")
            seen.add(f)
    return tuple(sorted(seen))


MAX_GENERATED = 10


def enumerate_lattices(n: int, modular_only=False):
    """Every n-element lattice up to isomorphism, in canonical order."""
    if n > MAX_GENERATED:
        raise OrderBound(f"generation is capped at {MAX_GENERATED} elements")
    for i, form in enumerate(_level(n)):
        L = from_canonical(form, f"L{n}_{i}")
        if modular_only and not L.modular:
            continue
        yield L


def lattice_count(n: int) -> int:
    return len(_level(n))


@dataclass(frozen=True)
class CorpusSpec:
    max_n: int
    modular_only: bool = True
    min_n: int = 2
    include_named: tuple = ()
    files: tuple = ()

    def __post_init__(self):
        if self.min_n < 1:
            raise ValueError("min_n must be at least 1")


def build_corpus(spec: CorpusSpec) -> list:
    out = []
    for n in range(spec.min_n, spec.max_n + 1):
        out.extend(enumerate_lattices(n, spec.modular_only))
    for name in spec.include_named:
        L = named(name)
        if not spec.modular_only or L.modular:
            out.append(L)
    for path in spec.files:
        for L in read_corpus(path):
            if not spec.modular_only or L.modular:
                out.append(L)
    return out


def dedupe(lattices) -> list:
    seen = set()
    out = []
    for L in lattices:
        f = canonical_form(L)
        if f not in seen:
            seen.add(f)
            out.append(L)
    return out


# ---------------------------------------------------------------------------
# subgroup lattices

MAX_GROUP_ORDER = 64


def _parse_group(spec):
    if isinstance(spec, str):
        parts = [p.strip().lstrip("Zz_") for p in spec.replace("*", "x").split("x")]
        spec = [int(p) for p in parts if p]
    return [int(m) for m in spec]


def _is_prime_power(m):
    if m < 2:
        return False
    p = next(d for d in range(2, m + 1) if m % d == 0)
    while m % p == 0:
        m //= p
    return m == 1


def subgroup_lattice(group, name=None) -> Lattice:
    """Subgroups of Z_m1 x ... x Z_mk ordered by inclusion.

    ``group`` is a list of cyclic orders or a string like ``"Z2xZ4"``.
    """
    mods = _parse_group(group)
    if not mods or any(not _is_prime_power(m) for m in mods):
        raise LatticeError("group factors must be prime powers")
    order = 1
    for m in mods:
        order *= m
    if order > MAX_GROUP_ORDER:
        raise OrderBound(f"group order {order} exceeds {MAX_GROUP_ORDER}")
    elems = list(product(*(range(m) for m in mods)))

    def add(g, h):
        return tuple((a + b) % m for a, b, m in zip(g, h, mods))

    def close(gens):
        H = {tuple(0 for _ in mods)}
        frontier = list(H)
        while frontier:
            nxt = []
            for h in frontier:
                for g in gens:
                    s = add(h, g)
                    if s not in H:
                        H.add(s)
                        nxt.append(s)
            frontier = nxt
        return frozenset(H)

    subgroups = {close([])}
    frontier = list(subgroups)
    while frontier:
        nxt = []
        for H in frontier:
            for g in elems:
                if g not in H:
                    K = close(list(H) + [g])
                    if K not in subgroups:
                        subgroups.add(K)
                        nxt.append(K)
        frontier = nxt
    subs = sorted(subgroups, key=lambda H: (len(H), sorted(H)))
    names = ["0"] + [f"H{i}" for i in range(1, len(subs) - 1)] + ["G"] if len(subs) > 1 else ["0"]
    rel = [
        (names[i], names[j])
        for i, A in enumerate(subs)
        for j, B in enumerate(subs)
        if i != j and A < B
    ]
    label = name or "x".join(f"Z{m}" for m in mods)
    L = build_lattice(names, rel, label)
    if not L.modular:
        raise AssertionError("subgroup lattice of an abelian group must be modular")
    return L


# ---------------------------------------------------------------------------
# corpus files


def format_corpus(lattices, max_n=None, modular=None) -> str:
    lattices = list(lattices)
    if max_n is None:
        max_n = max((L.n for L in lattices), default=0)
    mod = "true" if modular else "false"
    head = f"# corpus n={max_n} modular={mod} count={len(lattices)}\n"
    return head + "\n".join(format_lattice(L) for L in lattices)


def write_corpus(path, lattices, max_n=None, modular=None):
    Path(path).write_text(format_corpus(lattices, max_n, modular))


def read_manifest(text: str):
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("# corpus"):
            fields = dict(tok.split("=", 1) for tok in line.split()[2:] if "=" in tok)
            return {
                "n": int(fields["n"]),
                "modular": fields.get("modular") == "true",
                "count": int(fields["count"]),
            }
    return None


def read_corpus(path) -> list:
    text = Path(path).read_text()
    lats = parse_lattices(text)
    man = read_manifest(text)
    if man is not None and man["count"] != len(lats):
        raise LatticeError(f"manifest count {man['count']} does not match {len(lats)} lattices")
    return lats
