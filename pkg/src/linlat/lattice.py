"""
Finite bounded lattices stored as bitset order tables.

Elements are dense integer ids in declaration order; every public helper
takes and returns ids.  ``L["a"]`` maps a name to its id and
``L.names[i]`` goes the other way.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import (
    CycleDetected,
    InternalInvariantViolation,
    LatticeError,
    NoUniqueBound,
    NotALattice,
    NotComparable,
)


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class ElementSet:
    """Bitset of element ids of a fixed lattice."""

    __slots__ = ("lattice", "mask")

    def __init__(self, lattice: "Lattice", mask: int = 0):
        self.lattice = lattice
        self.mask = mask

    @classmethod
    def of(cls, lattice, ids):
        mask = 0
        for i in ids:
            mask |= 1 << i
        return cls(lattice, mask)

    def __contains__(self, x):
        return bool(self.mask >> x & 1)

    def __iter__(self):
        return bits(self.mask)

    def __len__(self):
        return popcount(self.mask)

    def __or__(self, other):
        return ElementSet(self.lattice, self.mask | other.mask)

    def __and__(self, other):
        return ElementSet(self.lattice, self.mask & other.mask)

    def __sub__(self, other):
        return ElementSet(self.lattice, self.mask & ~other.mask)

    def __invert__(self):
        return ElementSet(self.lattice, self.lattice.full_mask & ~self.mask)

    def __eq__(self, other):
        if isinstance(other, ElementSet):
            return self.mask == other.mask
        if isinstance(other, (set, frozenset)):
            return set(self) == other
        return NotImplemented

    def __hash__(self):
        return hash(self.mask)

    def names(self):
        return [self.lattice.names[i] for i in self]

    def __repr__(self):
        return "{" + ", ".join(self.names()) + "}"


class Lattice:
    """A validated finite bounded lattice.

    Build instances with :func:`build_lattice`; the constructor assumes the
    order tables are already consistent.
    """

    def __init__(self, name, names, down, meet_table, join_table, bottom, top):
        self.name = name
        self.names = tuple(names)
        self.n = len(self.names)
        self.down = tuple(down)
        up = [0] * self.n
        for y, d in enumerate(self.down):
            for x in bits(d):
                up[x] |= 1 << y
        self.up = tuple(up)
        self.meet_table = meet_table
        self.join_table = join_table
        self.bottom = bottom
        self.top = top
        self.full_mask = (1 << self.n) - 1
        self._index = {nm: i for i, nm in enumerate(self.names)}
        lower = [[] for _ in range(self.n)]
        upper = [[] for _ in range(self.n)]
        for y in range(self.n):
            for x in bits(self.down[y] & ~(1 << y)):
                # x is covered by y iff nothing sits strictly between them
                if self.up[x] & self.down[y] == (1 << x) | (1 << y):
                    lower[y].append(x)
                    upper[x].append(y)
        self.lower_covers = tuple(tuple(c) for c in lower)
        self.upper_covers = tuple(tuple(c) for c in upper)

    # -- identity -----------------------------------------------------------

    def __getitem__(self, name) -> int:
        try:
            return self._index[str(name)]
        except KeyError:
            raise KeyError(f"{name!r} is not an element of {self.name}") from None

    def ids(self, *names):
        return [self[nm] for nm in names]

    def __len__(self):
        return self.n

    def __iter__(self):
        return iter(range(self.n))

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self is other or (self.names == other.names and self.down == other.down)

    def __hash__(self):
        return hash((self.names, self.down))

    def __repr__(self):
        return f"<Lattice {self.name} n={self.n}>"

    @property
    def degenerate(self):
        return self.n == 1

    @cached_property
    def covers(self):
        return frozenset((x, y) for y in range(self.n) for x in self.lower_covers[y])

    def cover_names(self):
        return sorted((self.names[x], self.names[y]) for x, y in self.covers)

    # -- order and operations -----------------------------------------------

    def leq(self, x, y) -> bool:
        return bool(self.up[x] >> y & 1)

    def lt(self, x, y) -> bool:
        return x != y and self.leq(x, y)

    def meet(self, x, y) -> int:
        return self.meet_table[x][y]

    def join(self, x, y) -> int:
        return self.join_table[x][y]

    def big_meet(self, xs: Iterable[int]) -> int:
        r = self.top
        for x in xs:
            r = self.meet_table[r][x]
        return r

    def big_join(self, xs: Iterable[int]) -> int:
        r = self.bottom
        for x in xs:
            r = self.join_table[r][x]
        return r

    def between(self, lo, hi) -> int:
        """Bitmask of the interval [lo, hi]."""
        return self.up[lo] & self.down[hi]

    def whole(self) -> "IntervalView":
        return IntervalView(self, self.bottom, self.top)

    def interval(self, lo, hi) -> "IntervalView":
        return interval(self, lo, hi)

    def element_set(self, ids=()) -> ElementSet:
        return ElementSet.of(self, ids)

    # -- cached derived structure -------------------------------------------

    @cached_property
    def complement_masks(self):
        out = []
        for x in range(self.n):
            m = 0
            mt, jt = self.meet_table[x], self.join_table[x]
            for y in range(self.n):
                if mt[y] == self.bottom and jt[y] == self.top:
                    m |= 1 << y
            out.append(m)
        return tuple(out)

    @cached_property
    def complemented_mask(self):
        m = 0
        for x, c in enumerate(self.complement_masks):
            if c:
                m |= 1 << x
        return m

    @cached_property
    def heights(self):
        """Longest-chain distance from bottom."""
        h = [0] * self.n
        for y in self.linear_extension:
            for x in self.lower_covers[y]:
                h[y] = max(h[y], h[x] + 1)
        return tuple(h)

    @cached_property
    def depths(self):
        d = [0] * self.n
        for x in reversed(self.linear_extension):
            for y in self.upper_covers[x]:
                d[x] = max(d[x], d[y] + 1)
        return tuple(d)

    @cached_property
    def linear_extension(self):
        return tuple(sorted(range(self.n), key=lambda x: (popcount(self.down[x]), x)))

    @property
    def modular(self) -> bool:
        return self.modular_witness is None

    @cached_property
    def modular_witness(self):
        """First (a, b, x) with a <= b violating the modular law, or None."""
        mt, jt = self.meet_table, self.join_table
        for a in range(self.n):
            for b in bits(self.up[a]):
                for x in range(self.n):
                    if jt[a][mt[x][b]] != mt[jt[a][x]][b]:
                        return (a, b, x)
        return None


@dataclass(frozen=True)
class IntervalView:
    parent: Lattice
    lo: int
    hi: int

    def __post_init__(self):
        if not self.parent.leq(self.lo, self.hi):
            raise NotComparable(
                f"{self.parent.names[self.lo]} is not below {self.parent.names[self.hi]}"
            )

    @cached_property
    def mask(self) -> int:
        return self.parent.between(self.lo, self.hi)

    @cached_property
    def elements(self) -> tuple:
        return tuple(bits(self.mask))

    @property
    def bottom(self):
        return self.lo

    @property
    def top(self):
        return self.hi

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return bool(self.mask >> x & 1)

    def __iter__(self):
        return iter(self.elements)

    def leq(self, x, y):
        return self.parent.leq(x, y)

    def meet(self, x, y):
        return self.parent.meet(x, y)

    def join(self, x, y):
        return self.parent.join(x, y)

    def upper_covers(self, x):
        return tuple(y for y in self.parent.upper_covers[x] if self.mask >> y & 1)

    def lower_covers(self, x):
        return tuple(y for y in self.parent.lower_covers[x] if self.mask >> y & 1)

    @cached_property
    def invariants(self):
        """Per-element (height, depth, up-degree, down-degree) inside the interval."""
        h = {}
        for x in self.elements_by_height:
            h[x] = max((h[y] + 1 for y in self.lower_covers(x)), default=0)
        d = {}
        for x in reversed(self.elements_by_height):
            d[x] = max((d[y] + 1 for y in self.upper_covers(x)), default=0)
        return {
            x: (h[x], d[x], len(self.upper_covers(x)), len(self.lower_covers(x)))
            for x in self.elements
        }

    @cached_property
    def elements_by_height(self):
        down = self.parent.down
        return tuple(sorted(self.elements, key=lambda x: (popcount(down[x] & self.mask), x)))

    @property
    def is_whole(self):
        return self.lo == self.parent.bottom and self.hi == self.parent.top

    def as_lattice(self, name=None) -> Lattice:
        """Standalone copy of the interval, keeping element names."""
        p = self.parent
        elements = [p.names[x] for x in self.elements]
        covers = [(p.names[x], p.names[y]) for y in self.elements for x in self.lower_covers(y)]
        return build_lattice(
            elements, covers, name=name or f"{p.name}[{p.names[self.lo]},{p.names[self.hi]}]"
        )

    def __repr__(self):
        p = self.parent
        return f"[{p.names[self.lo]},{p.names[self.hi]}] in {p.name}"


# ---------------------------------------------------------------------------
# construction


def build_lattice(elements: Sequence, covers: Iterable, name: str = "L") -> Lattice:
    names = [str(e) for e in elements]
    if not names:
        raise LatticeError("a lattice needs at least one element")
    if len(set(names)) != len(names):
        raise LatticeError("duplicate element names")
    index = {nm: i for i, nm in enumerate(names)}
    n = len(names)

    preds = [set() for _ in range(n)]
    for pair in covers:
        x, y = (str(p) for p in pair)
        if x not in index or y not in index:
            raise LatticeError(f"cover ({x}, {y}) references an undeclared element")
        if x == y:
            raise CycleDetected(f"{x} covers itself")
        preds[index[y]].add(index[x])

    # Kahn's algorithm doubles as cycle detection
    succ = [[] for _ in range(n)]
    indeg = [len(p) for p in preds]
    for y, ps in enumerate(preds):
        for x in ps:
            succ[x].append(y)
    queue = [i for i in range(n) if indeg[i] == 0]
    order = []
    while queue:
        x = queue.pop()
        order.append(x)
        for y in succ[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                queue.append(y)
    if len(order) != n:
        stuck = [names[i] for i in range(n) if indeg[i] > 0]
        raise CycleDetected(f"cover relation has a cycle through {stuck}")

    down = [1 << i for i in range(n)]
    for y in order:
        for x in preds[y]:
            down[y] |= down[x]
    up = [0] * n
    for y in range(n):
        for x in bits(down[y]):
            up[x] |= 1 << y

    minimal = [i for i in range(n) if down[i] == 1 << i]
    maximal = [i for i in range(n) if up[i] == 1 << i]
    if len(minimal) > 1:
        raise NoUniqueBound((names[minimal[0]], names[minimal[1]]))
    if len(maximal) > 1:
        raise NoUniqueBound((names[maximal[0]], names[maximal[1]]))
    bottom, top = minimal[0], maximal[0]

    meet_table = [[0] * n for _ in range(n)]
    join_table = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(x, n):
            meet_table[x][y] = meet_table[y][x] = _extremum(down[x] & down[y], down, (x, y), names)
            join_table[x][y] = join_table[y][x] = _extremum(up[x] & up[y], up, (x, y), names)
    return Lattice(
        name,
        names,
        down,
        tuple(tuple(r) for r in meet_table),
        tuple(tuple(r) for r in join_table),
        bottom,
        top,
    )


def _extremum(candidates, cone, pair, names):
    # greatest lower bound = the candidate whose down-cone contains all candidates
    best = [g for g in bits(candidates) if cone[g] & candidates == candidates]
    if len(best) != 1:
        raise NotALattice((names[pair[0]], names[pair[1]]))
    return best[0]


def chain(k: int, name=None) -> Lattice:
    names = [str(i) for i in range(k)]
    return build_lattice(names, zip(names, names[1:]), name=name or f"chain{k}")


# ---------------------------------------------------------------------------
# order-theoretic predicates


def meet(L, x, y):
    return L.meet(x, y)


def join(L, x, y):
    return L.join(x, y)


def big_meet(L, xs):
    return L.big_meet(xs)


def big_join(L, xs):
    return L.big_join(xs)


def is_modular(L: Lattice):
    """Return ``(True, None)`` or ``(False, (a, b, x))`` for the first violation."""
    w = L.modular_witness
    return w is None, w


def is_distributive(L: Lattice) -> bool:
    mt, jt = L.meet_table, L.join_table
    r = range(L.n)
    return all(mt[x][jt[y][z]] == jt[mt[x][y]][mt[x][z]] for x in r for y in r for z in r)


def is_boolean(L: Lattice) -> bool:
    return L.complemented_mask == L.full_mask and is_distributive(L)


def complements_of(L: Lattice, x) -> ElementSet:
    return ElementSet(L, L.complement_masks[x])


def complemented_elements(L: Lattice) -> ElementSet:
    return ElementSet(L, L.complemented_mask)


def _interval_or_whole(L, I):
    return I if I is not None else L.whole()


def is_essential(L: Lattice, x, I: IntervalView | None = None) -> bool:
    I = _interval_or_whole(L, I)
    if x not in I:
        raise LatticeError(f"{L.names[x]} is not in {I}")
    return all(L.meet(x, y) != I.lo for y in I.elements if y != I.lo)


def is_superfluous(L: Lattice, x, I: IntervalView | None = None) -> bool:
    I = _interval_or_whole(L, I)
    if x not in I:
        raise LatticeError(f"{L.names[x]} is not in {I}")
    return all(y == I.hi for y in I.elements if L.join(x, y) == I.hi)


def essential_elements(L: Lattice) -> ElementSet:
    return L.element_set(x for x in L if is_essential(L, x))


def superfluous_elements(L: Lattice) -> ElementSet:
    return L.element_set(x for x in L if is_superfluous(L, x))


def min_essential(L: Lattice) -> int:
    e = L.big_meet(essential_elements(L))
    if not is_essential(L, e):
        raise InternalInvariantViolation(f"meet of essential elements {L.names[e]} is not essential")
    return e


def max_superfluous(L: Lattice) -> int:
    s = L.big_join(superfluous_elements(L))
    if not is_superfluous(L, s):
        raise InternalInvariantViolation(f"join of superfluous elements {L.names[s]} is not superfluous")
    return s


def atoms(L: Lattice) -> ElementSet:
    return L.element_set(L.upper_covers[L.bottom])


def coatoms(L: Lattice) -> ElementSet:
    return L.element_set(L.lower_covers[L.top])


def radical(L: Lattice) -> int:
    return L.big_meet(coatoms(L))


def socle(L: Lattice) -> int:
    return L.big_join(atoms(L))


def interval(L: Lattice, lo, hi) -> IntervalView:
    return IntervalView(L, lo, hi)


def compact_elements(L: Lattice) -> ElementSet:
    # Any family joining to c inside a finite lattice is itself a finite
    # subfamily, so every element is compact.
    return L.element_set(range(L.n))


def is_independent(L: Lattice, family: Sequence[int]) -> bool:
    """Each member meets the join of the others at bottom.

    Meets are monotone, so checking against the join of *all* remaining
    members covers every finite sub-join.
    """
    family = list(family)
    if any(x == L.bottom for x in family):
        raise LatticeError("independent families must not contain bottom")
    for i, x in enumerate(family):
        rest = L.big_join(family[:i] + family[i + 1:])
        if L.meet(x, rest) != L.bottom:
            return False
    return True


# ---------------------------------------------------------------------------
# isomorphisms and duality


def interval_isomorphisms(I1: IntervalView, I2: IntervalView, limit: int | None = None) -> list:
    """All order isomorphisms I1 -> I2 as dicts, sorted by image vector."""
    if len(I1) != len(I2):
        return []
    inv1, inv2 = I1.invariants, I2.invariants
    if sorted(inv1.values()) != sorted(inv2.values()):
        return []
    order = I1.elements_by_height
    cands = {x: [y for y in I2.elements if inv2[y] == inv1[x]] for x in order}
    leq1, leq2 = I1.parent.leq, I2.parent.leq
    found = []
    image = {}
    used = set()

    def extend(k):
        if limit is not None and len(found) >= limit:
            return
        if k == len(order):
            found.append(dict(image))
            return
        x = order[k]
        for y in cands[x]:
            if y in used:
                continue
            ok = True
            for u in order[:k]:
                fu = image[u]
                if leq1(u, x) != leq2(fu, y) or leq1(x, u) != leq2(y, fu):
                    ok = False
                    break
            if ok:
                image[x] = y
                used.add(y)
                extend(k + 1)
                used.discard(y)
                del image[x]

    extend(0)
    found.sort(key=lambda f: tuple(f[x] for x in I1.elements))
    return found


def are_intervals_isomorphic(I1, I2) -> bool:
    return bool(interval_isomorphisms(I1, I2, limit=1))


def dual(L: Lattice) -> Lattice:
    covers = [(L.names[y], L.names[x]) for x, y in sorted(L.covers)]
    return build_lattice(L.names, covers, name=f"{L.name}^op")


def is_self_dual(L: Lattice) -> bool:
    return are_intervals_isomorphic(L.whole(), dual(L).whole())


def automorphisms(L: Lattice) -> list:
    return interval_isomorphisms(L.whole(), L.whole())
