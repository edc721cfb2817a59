"""
Linear morphisms between intervals of finite lattices.

A morphism stores its full value vector (aligned with ``domain.elements``)
plus the inferred kernel and image.  Endomorphisms of a whole lattice have
``values[x] == f(x)`` for every element id ``x``.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import (
    DomainMismatch,
    MorphismError,
    NoKernel,
    NotComplementPair,
    NotConstantOnKernelCosets,
    NotIntervalIso,
    NotInvariant,
    NotMonotone,
)
from .lattice import IntervalView, Lattice, interval_isomorphisms


class LinearMorphism:
    __slots__ = ("domain", "codomain", "values", "kernel", "image", "name", "provenance", "_map")

    def __init__(self, domain, codomain, values, kernel, image, name=None, provenance=None):
        self.domain = domain
        self.codomain = codomain
        self.values = tuple(values)
        self.kernel = kernel
        self.image = image
        self.name = name
        self.provenance = provenance
        self._map = None if domain.is_whole else dict(zip(domain.elements, self.values))

    def __call__(self, x):
        if self._map is None:
            return self.values[x]
        return self._map[x]

    @property
    def lattice(self) -> Lattice:
        return self.domain.parent

    @property
    def mapping(self) -> dict:
        return dict(zip(self.domain.elements, self.values))

    @property
    def is_endo(self):
        return self.domain.is_whole and self.domain == self.codomain

    def key(self):
        """(kernel, image, values on [kernel, top]) -- determines the map."""
        leq = self.domain.parent.leq
        return (self.kernel, self.image,
                tuple(self(x) for x in self.domain.elements if leq(self.kernel, x)))

    def __eq__(self, other):
        if not isinstance(other, LinearMorphism):
            return NotImplemented
        return (self.values == other.values and self.domain == other.domain
                and self.codomain == other.codomain)

    def __hash__(self):
        return hash((self.values, self.domain.lo, self.domain.hi, self.codomain.lo, self.codomain.hi))

    def describe(self):
        nm = self.domain.parent.names
        cn = self.codomain.parent.names
        return "{" + ", ".join(f"{nm[x]}->{cn[self(x)]}" for x in self.domain.elements) + "}"

    def __repr__(self):
        label = self.name or "f"
        return f"<{label} {self.describe()} ker={self.domain.parent.names[self.kernel]}>"


def _as_values(domain, mapping):
    if isinstance(mapping, dict):
        try:
            return tuple(mapping[x] for x in domain.elements)
        except KeyError as e:
            raise MorphismError(f"map is not total: missing {e.args[0]!r}") from None
    values = tuple(mapping)
    if len(values) == domain.parent.n and domain.is_whole:
        return values
    if len(values) != len(domain.elements):
        raise MorphismError("value vector does not match the domain size")
    return values


def validate_linear(domain: IntervalView, codomain: IntervalView, mapping, name=None,
                    provenance=None) -> LinearMorphism:
    """Certify ``mapping`` as a linear morphism and infer kernel and image."""
    values = _as_values(domain, mapping)
    D, C = domain.parent, codomain.parent
    f = dict(zip(domain.elements, values))
    for x, y in f.items():
        if y not in codomain:
            raise MorphismError(f"{D.names[x]} maps to {C.names[y]}, outside {codomain}")

    fiber = [x for x in domain.elements if f[x] == codomain.bottom]
    k = D.big_join(fiber) if fiber else None
    if k is None or f.get(k) != codomain.bottom:
        raise NoKernel("the zero fiber has no largest element")

    for x in domain.elements:
        if f[x] != f[D.join(x, k)]:
            raise NotConstantOnKernelCosets(
                f"f({D.names[x]}) != f({D.names[x]} v {D.names[k]})")

    image = f[domain.top]
    upper = [x for x in domain.elements if D.leq(k, x)]
    target = C.between(codomain.bottom, image)
    hit = 0
    for x in upper:
        hit |= 1 << f[x]
    if hit != target or len(upper) != len(set(f[x] for x in upper)):
        raise NotIntervalIso("the map is not a bijection [ker, 1] -> [0, f(1)]")
    for u in upper:
        for v in upper:
            if D.leq(u, v) != C.leq(f[u], f[v]):
                raise NotIntervalIso(
                    f"order not preserved/reflected at ({D.names[u]}, {D.names[v]})")

    for x in domain.elements:
        for y in domain.elements:
            if D.leq(x, y) and not C.leq(f[x], f[y]):
                raise NotMonotone(f"{D.names[x]} <= {D.names[y]} but images are not ordered")

    return LinearMorphism(domain, codomain, values, k, image, name=name, provenance=provenance)


def endo(L: Lattice, values, name=None, check=True) -> LinearMorphism:
    W = L.whole()
    if check:
        return validate_linear(W, W, tuple(values), name=name)
    values = tuple(values)
    k = L.big_join(x for x in range(L.n) if values[x] == L.bottom)
    return LinearMorphism(W, W, values, k, values[L.top], name=name)


def zero_morphism(domain: IntervalView, codomain: IntervalView | None = None) -> LinearMorphism:
    if isinstance(domain, Lattice):
        domain = domain.whole()
    codomain = codomain or domain
    return LinearMorphism(domain, codomain, [codomain.bottom] * len(domain), domain.top,
                          codomain.bottom, name="0")


def identity_morphism(L) -> LinearMorphism:
    I = L.whole() if isinstance(L, Lattice) else L
    return LinearMorphism(I, I, I.elements, I.bottom, I.top, name="id")


def _check_pair(L, x, xp):
    if not L.complement_masks[x] >> xp & 1:
        raise NotComplementPair(f"{L.names[xp]} is not a complement of {L.names[x]}")


def projection(L: Lattice, x, x_prime) -> LinearMorphism:
    """The idempotent a -> (a v x') ^ x; kernel x', image x."""
    _check_pair(L, x, x_prime)
    W = L.whole()
    vals = [L.meet(L.join(a, x_prime), x) for a in range(L.n)]
    return validate_linear(W, W, vals, name=f"pi[{L.names[x]},{L.names[x_prime]}]",
                           provenance=("projection", x, x_prime))


def projection_values(L, x, x_prime):
    return tuple(L.meet_table[L.join_table[a][x_prime]][x] for a in range(L.n))


def inclusion(L: Lattice, x) -> LinearMorphism:
    dom = L.interval(L.bottom, x)
    return validate_linear(dom, L.whole(), dom.elements, name=f"iota[{L.names[x]}]")


def quotient_map(L: Lattice, a) -> LinearMorphism:
    W = L.whole()
    return validate_linear(W, L.interval(a, L.top), [L.join(a, y) for y in range(L.n)],
                           name=f"rho[{L.names[a]}]")


def compose(g: LinearMorphism, f: LinearMorphism) -> LinearMorphism:
    """g after f."""
    if f.codomain.parent != g.domain.parent or any(y not in g.domain for y in f.values):
        raise DomainMismatch("image of f does not lie in the domain of g")
    vals = [g(y) for y in f.values]
    return validate_linear(f.domain, g.codomain, vals)


def compose_values(g, f):
    """Composition of endomorphism value vectors, g after f."""
    return tuple(g[y] for y in f)


def extend_hat(phi: LinearMorphism, x, x_prime, y) -> LinearMorphism:
    """iota_y . phi . pi_x as an endomorphism of the ambient lattice."""
    L = phi.domain.parent
    _check_pair(L, x, x_prime)
    if phi.domain != L.interval(L.bottom, x) or phi.codomain.parent != L or phi.codomain.hi != y:
        raise DomainMismatch("phi must map [0, x] to [0, y] inside the same lattice")
    p = projection_values(L, x, x_prime)
    W = L.whole()
    return validate_linear(W, W, [phi(p[a]) for a in range(L.n)])


def enumerate_morphisms(I1: IntervalView, I2: IntervalView) -> list:
    """All linear morphisms I1 -> I2, one per (kernel, image, interval iso) triple."""
    out = []
    D, C = I1.parent, I2.parent
    seen = set()
    for k in I1.elements:
        upper = D.interval(k, I1.top)
        for a in I2.elements:
            if C.leq(I2.bottom, a):
                lower = C.interval(I2.bottom, a)
                for theta in interval_isomorphisms(upper, lower):
                    vals = tuple(theta[D.join(x, k)] for x in I1.elements)
                    if vals in seen:
                        raise MorphismError("kernel/image/iso parameterisation is not injective")
                    seen.add(vals)
                    out.append(LinearMorphism(I1, I2, vals, k, a, provenance=("triple", k, a)))
    out.sort(key=lambda f: f.values)
    return out


@lru_cache(maxsize=256)
def _endo_values(L: Lattice):
    W = L.whole()
    return tuple(f.values for f in enumerate_morphisms(W, W))


def enumerate_endomorphisms(L: Lattice, validate: bool = False) -> list:
    """Every linear endomorphism of L in canonical (value-vector) order."""
    W = L.whole()
    out = []
    for vals in _endo_values(L):
        if validate:
            out.append(validate_linear(W, W, vals))
        else:
            out.append(endo(L, vals, check=False))
    return out


def endo_value_vectors(L: Lattice):
    return _endo_values(L)


def is_injective(f: LinearMorphism) -> bool:
    return f.kernel == f.domain.bottom


def is_surjective(f: LinearMorphism) -> bool:
    return f.image == f.codomain.top


def is_isomorphism(f: LinearMorphism) -> bool:
    return is_injective(f) and is_surjective(f)


def is_idempotent(f: LinearMorphism) -> bool:
    if f.domain != f.codomain:
        return False
    return all(f(f(x)) == f(x) for x in f.domain.elements)


def restrict(f: LinearMorphism, I: IntervalView, codomain: IntervalView | None = None) -> LinearMorphism:
    codomain = codomain or I
    if any(x not in f.domain for x in I.elements):
        raise DomainMismatch(f"{I} is not inside the domain of f")
    vals = [f(x) for x in I.elements]
    for x, y in zip(I.elements, vals):
        if y not in codomain:
            P = I.parent
            raise NotInvariant(f"f({P.names[x]}) = {codomain.parent.names[y]} leaves {codomain}")
    return validate_linear(I, codomain, vals)


def inverse_on(f: LinearMorphism, x) -> dict:
    """Inverse of f restricted to [0, x] onto [0, f(x)], or None if not an iso."""
    L = f.domain.parent
    dom = L.between(L.bottom, x)
    y = f(x)
    inv = {}
    for u in range(L.n):
        if dom >> u & 1:
            inv[f(u)] = u
    if len(inv) != bin(dom).count("1") or set(inv) != set(i for i in range(L.n) if L.leq(i, y)):
        return None
    for a in inv:
        for b in inv:
            if L.leq(a, b) != L.leq(inv[a], inv[b]):
                return None
    return inv
