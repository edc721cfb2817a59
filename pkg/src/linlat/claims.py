"""
Executable hypothesis -> conclusion checks over a (lattice, monoid) pair.

Each claim is a registry entry: a stable id, the hypotheses it needs (named
predicates that can be re-evaluated on their own) and an evaluator that
returns whether the conclusion held, with a witness when it did not.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from typing import Any, Callable

from .errors import InternalInvariantViolation, TheoremViolated
from .lattice import (
    Lattice,
    atoms,
    bits,
    essential_elements,
    interval_isomorphisms,
    is_independent,
    radical,
    superfluous_elements,
)
from .monoid import (
    EndoMonoid,
    build_monoid,
    class_of_identity_check,
    class_of_zero_check,
    congruence_delta,
    congruence_nabla,
    contains_all_projections,
    delta_ideal,
    full_endo_monoid,
    idempotents,
    is_abelian,
    is_closed_under_complements,
    is_regular,
    is_semiring,
    nabla_ideal,
    nilpotent_left_ideal_check,
    pointwise_join_table,
    quotient,
    regularity_witnesses,
)
from .morphisms import enumerate_morphisms, projection_values
from .properties import (
    complemented_is_boolean,
    fully_invariant_elements,
    is_cohopfian,
    is_dual_m_rickart,
    is_hopfian,
    is_K_extending,
    is_K_nonsingular,
    is_L_generated,
    is_m_rickart,
    is_T_lifting,
    is_T_nonsingular,
    is_vnr_lattice,
    kernel_image_complement_pairs,
    kernel_image_complemented,
    satisfies_C2,
    satisfies_D2,
)

PASS, FAIL, UNMET = "pass", "fail", "hypotheses_not_met"


class Context:
    """Lazily computed facts about one (L, m) pair, shared across claims."""

    def __init__(self, L: Lattice, m: EndoMonoid):
        self.L = L
        self.m = m

    def comp(self, x):
        return bool(self.L.complemented_mask >> x & 1)

    @cached_property
    def modular(self):
        return self.L.modular

    @cached_property
    def nondegenerate(self):
        return self.L.n > 1

    @cached_property
    def full(self):
        return self.m.is_full

    @cached_property
    def closed(self):
        return bool(is_closed_under_complements(self.L, self.m))

    @cached_property
    def projections(self):
        return bool(contains_all_projections(self.L, self.m))

    @cached_property
    def regular(self):
        return bool(is_regular(self.m))

    @cached_property
    def abelian(self):
        return bool(is_abelian(self.m))

    @cached_property
    def abelian_endoregular(self):
        return self.regular and self.abelian

    @cached_property
    def rickart(self):
        return bool(is_m_rickart(self.L, self.m))

    @cached_property
    def dual_rickart(self):
        return bool(is_dual_m_rickart(self.L, self.m))

    @cached_property
    def c2(self):
        return bool(satisfies_C2(self.L, self.m))

    @cached_property
    def d2(self):
        return bool(satisfies_D2(self.L, self.m))

    @cached_property
    def k_extending(self):
        return bool(is_K_extending(self.L, self.m))

    @cached_property
    def t_lifting(self):
        return bool(is_T_lifting(self.L, self.m))

    @cached_property
    def k_nonsingular(self):
        return bool(is_K_nonsingular(self.L, self.m))

    @cached_property
    def t_nonsingular(self):
        return bool(is_T_nonsingular(self.L, self.m))

    @cached_property
    def indecomposable(self):
        L = self.L
        return L.n > 1 and L.complemented_mask == (1 << L.bottom) | (1 << L.top)

    @cached_property
    def hopfian(self):
        return bool(is_hopfian(self.L, full_endo_monoid(self.L)))

    @cached_property
    def cohopfian(self):
        return bool(is_cohopfian(self.L, full_endo_monoid(self.L)))

    @cached_property
    def generated(self):
        return [a for a in range(self.L.n) if is_L_generated(self.L, self.m, a)]

    @cached_property
    def all_generated(self):
        return len(self.generated) == self.L.n

    @cached_property
    def c_boolean(self):
        return complemented_is_boolean(self.L)

    @cached_property
    def join_semiring(self):
        add = pointwise_join_table(self.m)
        return add is not None and bool(is_semiring(self.m, add))

    @cached_property
    def delta(self):
        return congruence_delta(self.L, self.m)

    @cached_property
    def nabla(self):
        return congruence_nabla(self.L, self.m)


HYPOTHESES: dict[str, Callable[[Context], bool]] = {
    "modular": lambda c: c.modular,
    "nondegenerate": lambda c: c.nondegenerate,
    "full_monoid": lambda c: c.full,
    "closed_under_complements": lambda c: c.closed,
    "contains_projections": lambda c: c.projections,
    "m_endoregular": lambda c: c.regular,
    "m_abelian_endoregular": lambda c: c.abelian_endoregular,
    "abelian_endoregular": lambda c: bool(is_regular(full_endo_monoid(c.L)))
    and bool(is_abelian(full_endo_monoid(c.L))),
    "k_extending": lambda c: c.k_extending,
    "t_lifting": lambda c: c.t_lifting,
    "c2": lambda c: c.c2,
    "d2": lambda c: c.d2,
    "indecomposable": lambda c: c.indecomposable,
    "radical_proper": lambda c: radical(c.L) != c.L.top,
    "join_semiring": lambda c: c.join_semiring,
}


def evaluate_hypothesis(ctx: Context, name: str) -> bool:
    return bool(HYPOTHESES[name](ctx))


@dataclass
class Outcome:
    ok: bool
    witness: Any = None
    notes: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Claim:
    id: str
    title: str
    statement: str
    hypotheses: tuple
    evaluate: Callable[[Context], Outcome]


@dataclass
class ClaimCheck:
    claim: str
    lattice: str
    monoid: str
    hypotheses: list
    verdict: str
    witness: Any = None
    unmet: str | None = None
    notes: dict = field(default_factory=dict)

    def record(self) -> dict:
        return {
            "schema": 1,
            "kind": "claim",
            "claim": self.claim,
            "lattice": self.lattice,
            "monoid": self.monoid,
            "verdict": self.verdict,
            "hypotheses": [[h, v] for h, v in self.hypotheses],
            "unmet": self.unmet,
            "witness": _plain(self.witness),
            "notes": _plain(self.notes),
        }

    def line(self) -> str:
        s = f"{self.claim:24s} {self.verdict}"
        if self.unmet:
            s += f" ({self.unmet})"
        if self.verdict == FAIL:
            s += f" witness={_plain(self.witness)!r}"
        return s


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_plain(v) for v in x)
    return x


REGISTRY: dict[str, Claim] = {}


def claim(cid, title, statement, hypotheses=("modular",)):
    def deco(fn):
        REGISTRY[cid] = Claim(cid, title, statement, tuple(hypotheses), fn)
        return fn

    return deco


def _equal(**vals):
    ok = len(set(vals.values())) <= 1
    return Outcome(ok, None if ok else vals, {"values": vals})


# ---------------------------------------------------------------------------
# helpers


def _zero_values(L):
    return (L.bottom,) * L.n


def _is_inverse_pair(t, i, j, e):
    return t[i][j] == e and t[j][i] == e


def _has_inverse(m, i):
    t, e = m.table, m.id_index
    return any(_is_inverse_pair(t, i, j, e) for j in range(m.n))


def _interval_monoid(L, a):
    """Full End of [0, a] as a standalone lattice, plus the name map back into L."""
    sub = L.interval(L.bottom, a).as_lattice()
    return sub, full_endo_monoid(sub)


def _hat(L, theta, x, xp):
    p = projection_values(L, x, xp)
    return tuple(theta[p[y]] for y in range(L.n))


def _independent_families(L, max_size=3):
    """Independent families of distinct nonzero elements joining to top."""
    pool = [x for x in range(L.n) if x != L.bottom]
    for r in range(1, max_size + 1):
        for fam in combinations(pool, r):
            if L.big_join(fam) == L.top and is_independent(L, fam):
                yield fam


# ---------------------------------------------------------------------------
# section: regularity


@claim(
    "prop_reg",
    "elementwise regularity",
    "For m closed under complements and phi in m: ker(phi) and phi(1) are complemented iff "
    "phi = phi psi phi for some psi in m; then psi phi(1) complements ker(phi) and "
    "ker(phi psi) complements phi(1).",
    ("modular", "closed_under_complements"),
)
def _prop_reg(c):
    L, m, t = c.L, c.m, c.m.table
    wits = regularity_witnesses(m)
    literal_misses = 0
    for i in range(m.n):
        a = c.comp(m.kernels[i]) and c.comp(m.images[i])
        b = bool(wits[i])
        if a != b:
            return Outcome(False, {"phi": i, "complemented": a, "regular": b})
        for j in wits[i]:
            pf = t[j][i]
            fp = t[i][j]
            k, img = m.kernels[i], m.images[i]
            if not (L.complement_masks[k] >> m.images[pf] & 1):
                return Outcome(False, {"phi": i, "psi": j, "clause": "psi phi(1) vs ker phi"})
            if not (L.complement_masks[img] >> m.kernels[fp] & 1):
                return Outcome(False, {"phi": i, "psi": j, "clause": "ker phi psi vs phi(1)"})
            if not (L.complement_masks[img] >> m.kernels[pf] & 1):
                literal_misses += 1
    return Outcome(True, notes={"ker_psi_phi_reading_misses": literal_misses})


@claim(
    "thm_kerimgsumm",
    "four-way characterisation of endoregularity",
    "For m closed under complements, these agree: m is regular; L is m-Rickart with m-C2; "
    "L is dual-m-Rickart with m-D2; every member of m has complemented kernel and image.",
    ("modular", "closed_under_complements"),
)
def _thm_kerimgsumm(c):
    return _equal(
        endoregular=c.regular,
        rickart_c2=c.rickart and c.c2,
        dual_rickart_d2=c.dual_rickart and c.d2,
        kernel_image=bool(kernel_image_complemented(c.L, c.m)),
    )


@claim(
    "cor_rickart_dual",
    "endoregular iff Rickart and dual-Rickart",
    "For m closed under complements: m is regular iff L is m-Rickart and dual-m-Rickart.",
    ("modular", "closed_under_complements"),
)
def _cor_rickart_dual(c):
    return _equal(endoregular=c.regular, both=c.rickart and c.dual_rickart)


@claim(
    "cor_indec_endo",
    "indecomposable endoregular lattices",
    "If C(L) = {0, 1}: m is regular iff every nonzero member of m is invertible in m.",
    ("modular", "indecomposable"),
)
def _cor_indec_endo(c):
    m = c.m
    inv = all(_has_inverse(m, i) for i in range(m.n) if i != m.zero_index)
    return _equal(endoregular=c.regular, nonzero_invertible=inv)


@claim(
    "prop_vnl",
    "von Neumann regular lattices",
    "For m closed under complements: every element of L is complemented iff L is "
    "dual-m-Rickart and every element is m-L-generated.",
    ("modular", "closed_under_complements"),
)
def _prop_vnl(c):
    return _equal(vnr=bool(is_vnr_lattice(c.L)), dual_and_generated=c.dual_rickart and c.all_generated)


@claim(
    "cor_vnlendo",
    "von Neumann regular with D2",
    "For m closed under complements these agree: L is von Neumann regular with m-D2; "
    "L is m-Rickart, dual-m-Rickart and every element is m-L-generated; m is regular and "
    "every element is m-L-generated.",
    ("modular", "closed_under_complements"),
)
def _cor_vnlendo(c):
    return _equal(
        vnr_d2=bool(is_vnr_lattice(c.L)) and c.d2,
        rickart_both_generated=c.rickart and c.dual_rickart and c.all_generated,
        endoregular_generated=c.regular and c.all_generated,
    )


@claim(
    "lemma_regsp",
    "no square-zero left ideals in regular monoids",
    "If m is regular, a left ideal A of m with A A = 0 is zero (checked on principal ideals "
    "and unions of up to three of them).",
    ("m_endoregular",),
)
def _lemma_regsp(c):
    v = nilpotent_left_ideal_check(c.m)
    return Outcome(bool(v), v.witness)


@claim(
    "remark_cucproj",
    "closure under complements gives projections",
    "If m is closed under complements it contains every projection.",
    ("modular", "closed_under_complements"),
)
def _remark_cucproj(c):
    v = contains_all_projections(c.L, c.m)
    return Outcome(bool(v), v.witness)


# ---------------------------------------------------------------------------
# section: abelian endoregularity


@claim(
    "lemma_pife",
    "central idempotents",
    "If m is regular and e in m is idempotent: e is central iff pi_k phi e = 0 for every "
    "phi in m, where pi_k projects onto k = ker(e) along e(1). Requires m to contain the "
    "projections, which the argument uses to keep e m pi_k inside m.",
    ("modular", "m_endoregular", "contains_projections"),
)
def _lemma_pife(c):
    L, m = c.L, c.m
    t = m.table
    for e in idempotents(m):
        k, img = m.kernels[e], m.images[e]
        p = projection_values(L, k, img)
        central = all(t[e][x] == t[x][e] for x in range(m.n))
        vanish = all(p[v[img]] == L.bottom for v in m.vals)
        if central != vanish:
            return Outcome(False, {"idempotent": e, "central": central, "vanishes": vanish})
    return Outcome(True)


@claim(
    "prop_ker_img",
    "abelian endoregularity via complement pairs",
    "For m closed under complements: L is m-Rickart, dual-m-Rickart and m-abelian iff "
    "ker(phi) and phi(1) are complements of each other for every phi in m.",
    ("modular", "closed_under_complements"),
)
def _prop_ker_img(c):
    return _equal(
        rickart_dual_abelian=c.rickart and c.dual_rickart and c.abelian,
        complement_pairs=bool(kernel_image_complement_pairs(c.L, c.m)),
    )


@claim(
    "prop_cbool",
    "commuting idempotents and Boolean complements",
    "For m closed under complements and regular: idempotents of m pairwise commute iff "
    "C(L) is a Boolean sublattice.",
    ("modular", "closed_under_complements", "m_endoregular"),
)
def _prop_cbool(c):
    t = c.m.table
    ids = idempotents(c.m)
    commute = all(t[e][f] == t[f][e] for e in ids for f in ids)
    return _equal(idempotents_commute=commute, c_boolean=c.c_boolean)


@claim(
    "cor_semiring_join",
    "Boolean complements force abelian (pointwise-join semiring)",
    "For m closed under complements, regular, and a semiring under pointwise join: if C(L) "
    "is Boolean then m is abelian.",
    ("modular", "closed_under_complements", "m_endoregular", "join_semiring"),
)
def _cor_semiring_join(c):
    ok = (not c.c_boolean) or c.abelian
    return Outcome(ok, None if ok else {"c_boolean": True, "abelian": False})


@claim(
    "lemma_isocomp",
    "isomorphic complemented elements coincide",
    "If m is abelian-regular, a, b are complemented, theta: [0,a] ~ [0,b], and both "
    "iota_b theta pi_a and iota_a theta^-1 pi_b lie in m, then a = b.",
    ("modular", "m_abelian_endoregular"),
)
def _lemma_isocomp(c):
    L, m = c.L, c.m
    cm = L.complemented_mask
    for a in bits(cm):
        for b in bits(cm):
            if a == b:
                continue
            for theta in interval_isomorphisms(L.interval(L.bottom, a), L.interval(L.bottom, b)):
                inv = {v: k for k, v in theta.items()}
                fwd = any(_hat(L, theta, a, ap) in m.index for ap in bits(L.complement_masks[a]))
                back = any(_hat(L, inv, b, bp) in m.index for bp in bits(L.complement_masks[b]))
                if fwd and back:
                    return Outcome(False, {"a": L.names[a], "b": L.names[b]})
    return Outcome(True)


@claim(
    "prop_abendofi",
    "abelian endoregular via invariant generated elements",
    "For m closed under complements: m is abelian-regular iff m is regular and phi(a) <= a "
    "for every m-L-generated a and every phi in m.",
    ("modular", "closed_under_complements"),
)
def _prop_abendofi(c):
    L, m = c.L, c.m
    inv = all(L.leq(v[a], a) for a in c.generated for v in m.vals)
    return _equal(abelian_endoregular=c.abelian_endoregular, regular_invariant=c.regular and inv)


def _xyig_readings(c):
    L, m = c.L, c.m
    gen = c.generated
    b_mem = b_free = c_mem = c_free = True
    wit = {}
    for x, y in product(gen, repeat=2):
        if x == y:
            continue
        Ix, Iy = L.interval(L.bottom, x), L.interval(L.bottom, y)
        for theta in interval_isomorphisms(Ix, Iy):
            b_free = False
            wit.setdefault("b_free", (L.names[x], L.names[y]))
            inv = {v: k for k, v in theta.items()}
            fwd = any(_hat(L, theta, x, xp) in m.index for xp in bits(L.complement_masks[x]))
            back = any(_hat(L, inv, y, yp) in m.index for yp in bits(L.complement_masks[y]))
            if fwd and back:
                b_mem = False
                wit.setdefault("b_mem", (L.names[x], L.names[y]))
        if L.meet(x, y) == L.bottom:
            for f in enumerate_morphisms(Ix, Iy):
                if f.image == L.bottom:
                    continue
                c_free = False
                wit.setdefault("c_free", (L.names[x], L.names[y]))
                mp = f.mapping
                if any(_hat(L, mp, x, xp) in m.index for xp in bits(L.complement_masks[x])):
                    c_mem = False
                    wit.setdefault("c_mem", (L.names[x], L.names[y]))
    return b_mem, c_mem, b_free, c_free, wit


@claim(
    "prop_xyig",
    "abelian via isomorphic generated elements",
    "If m is regular these agree: m is abelian; m-L-generated x, y with [0,x] ~ [0,y] via a "
    "map whose extensions lie in m are equal; m-L-generated x, y with x ^ y = 0 admit no "
    "nonzero linear [0,x] -> [0,y] whose extension lies in m. The unrestricted reading is "
    "reported in the notes. Requires m to contain the projections.",
    ("modular", "m_endoregular", "contains_projections"),
)
def _prop_xyig(c):
    b_mem, c_mem, b_free, c_free, wit = _xyig_readings(c)
    out = _equal(abelian=c.abelian, iso_equal=b_mem, no_morphisms=c_mem)
    out.notes.update(
        {
            "free_iso_equal": b_free,
            "free_no_morphisms": c_free,
            "free_reading_agrees": c.abelian == b_free == c_free,
            "examples": wit,
        }
    )
    return out


@claim(
    "cor_hopf",
    "injective, bijective and surjective coincide",
    "If m is abelian-regular then for phi in m: injective iff isomorphism iff surjective.",
    ("modular", "m_abelian_endoregular"),
)
def _cor_hopf(c):
    L, m = c.L, c.m
    for i in range(m.n):
        inj, surj = m.kernels[i] == L.bottom, m.images[i] == L.top
        if inj != surj:
            return Outcome(False, {"phi": i, "injective": inj, "surjective": surj})
    return Outcome(True)


@claim(
    "cor_atoms",
    "abelian endoregular lattices have at most one atom",
    "If L is abelian endoregular (full End) with Rad(L) != 1, L has at most one atom, and an "
    "atom a has a complement c with no atoms below c.",
    ("modular", "full_monoid", "abelian_endoregular", "radical_proper"),
)
def _cor_atoms(c):
    L = c.L
    at = list(atoms(L))
    if len(at) > 1:
        return Outcome(False, {"atoms": [L.names[a] for a in at]})
    for a in at:
        # in a finite lattice [0,x] has no atoms exactly when x = 0
        good = [x for x in bits(L.complement_masks[a]) if not any(L.leq(t, x) for t in at)]
        if not good:
            return Outcome(False, {"atom": L.names[a]})
    return Outcome(True)


@claim(
    "cor_two_element",
    "finite abelian endoregular lattices",
    "A finite modular lattice with more than one element is abelian endoregular (full End) "
    "iff it is the two-element chain.",
    ("modular", "nondegenerate", "full_monoid"),
)
def _cor_two_element(c):
    return _equal(abelian_endoregular=c.abelian_endoregular, two_chain=c.L.n == 2)


@claim(
    "lemma_compdecomp",
    "joins of decompositions",
    "If {a_i} is independent with join 1 and each a_i = b_i v c_i with b_i ^ c_i = 0, then "
    "the join of the b_i complements the join of the c_i.",
    ("modular",),
)
def _lemma_compdecomp(c):
    L = c.L
    for fam in _independent_families(L):
        choices = []
        for a in fam:
            pairs = [
                (b, x)
                for b in range(L.n)
                if L.leq(b, a)
                for x in range(L.n)
                if L.leq(x, a) and L.meet(b, x) == L.bottom and L.join(b, x) == a
            ]
            choices.append(pairs)
        for pick in product(*choices):
            B = L.big_join(p[0] for p in pick)
            C = L.big_join(p[1] for p in pick)
            if L.meet(B, C) != L.bottom or L.join(B, C) != L.top:
                return Outcome(False, {"family": [L.names[a] for a in fam], "pick": pick})
    return Outcome(True)


@claim(
    "prop_compendo",
    "endoregularity splits over fully invariant decompositions",
    "For an independent family of fully invariant elements joining to 1: L is endoregular "
    "iff every [0, a_i] is endoregular (full End throughout).",
    ("modular", "full_monoid"),
)
def _prop_compendo(c):
    L = c.L
    fi = fully_invariant_elements(L, c.m)
    for fam in _independent_families(L):
        if not all(a in fi for a in fam):
            continue
        parts = all(bool(is_regular(_interval_monoid(L, a)[1])) for a in fam)
        if parts != c.regular:
            return Outcome(False, {"family": [L.names[a] for a in fam], "parts": parts})
    return Outcome(True)


@claim(
    "cor_compabendo",
    "abelian endoregularity splits over decompositions",
    "For an independent family joining to 1: L is abelian endoregular iff every [0, a_i] is "
    "abelian endoregular and every a_i is fully invariant (full End throughout).",
    ("modular", "full_monoid"),
)
def _cor_compabendo(c):
    L = c.L
    fi = fully_invariant_elements(L, c.m)
    for fam in _independent_families(L):
        parts = True
        for a in fam:
            _, n = _interval_monoid(L, a)
            parts = parts and bool(is_regular(n)) and bool(is_abelian(n)) and a in fi
        if parts != c.abelian_endoregular:
            return Outcome(False, {"family": [L.names[a] for a in fam], "parts": parts})
    return Outcome(True)


@claim(
    "cor_compabend",
    "abelian endoregularity passes to summands",
    "If m is abelian-regular and closed under complements, a is complemented, and n is a "
    "submonoid of End([0,a]) closed under complements with iota_a psi pi_a in m for psi in n, "
    "then [0, a] is n-abelian-regular. Here n is the largest such set.",
    ("modular", "closed_under_complements", "m_abelian_endoregular"),
)
def _cor_compabend(c):
    L, m = c.L, c.m
    checked = []
    for a in bits(L.complemented_mask):
        sub, full = _interval_monoid(L, a)
        to_parent = [L[nm] for nm in sub.names]
        comps = list(bits(L.complement_masks[a]))
        keep = []
        for v in full.vals:
            ok = True
            for ap in comps:
                p = projection_values(L, a, ap)
                ext = tuple(to_parent[v[sub[L.names[p[y]]]]] for y in range(L.n))
                if ext not in m.index:
                    ok = False
                    break
            if ok:
                keep.append(v)
        if tuple(range(sub.n)) not in keep:
            continue
        n = build_monoid(sub, keep, name="n", verify=False)
        if not is_closed_under_complements(sub, n):
            continue
        checked.append(L.names[a])
        if not (is_regular(n) and is_abelian(n)):
            return Outcome(False, {"a": L.names[a]})
    return Outcome(True, notes={"summands_checked": checked})


# ---------------------------------------------------------------------------
# section: extending and lifting conditions with the regular quotients


@claim(
    "prop_rickex",
    "Rickart via K-extending",
    "If m contains all projections: L is m-Rickart iff it is m-K-extending and "
    "m-K-nonsingular.",
    ("modular", "contains_projections"),
)
def _prop_rickex(c):
    return _equal(rickart=c.rickart, kext_knonsing=c.k_extending and c.k_nonsingular)


@claim(
    "prop_drictlif",
    "dual-Rickart via T-lifting",
    "If m contains all projections: L is dual-m-Rickart iff it is m-T-lifting and "
    "m-T-nonsingular.",
    ("modular", "contains_projections"),
)
def _prop_drictlif(c):
    return _equal(dual_rickart=c.dual_rickart, tlift_tnonsing=c.t_lifting and c.t_nonsingular)


@claim(
    "lemma_imginvess",
    "preimages of essentials and images of superfluous elements",
    "For phi in m: if x is essential, the join of all a with phi(a) <= x is essential; if x is "
    "superfluous, phi(x) is superfluous.",
)
def _lemma_imginvess(c):
    L, m = c.L, c.m
    ess, sup = essential_elements(L), superfluous_elements(L)
    for i, v in enumerate(m.vals):
        for x in ess:
            w = L.big_join(a for a in range(L.n) if L.leq(v[a], x))
            if w not in ess:
                return Outcome(False, {"phi": i, "x": L.names[x], "w": L.names[w]})
        for x in sup:
            if v[x] not in sup:
                return Outcome(False, {"phi": i, "x": L.names[x]})
    return Outcome(True)


@claim(
    "lemma_congru",
    "the two relations are congruences",
    "Agreement below an essential element, and agreement modulo a superfluous element, are "
    "congruences on m.",
)
def _lemma_congru(c):
    try:
        d, n = c.delta, c.nabla
    except (TheoremViolated, InternalInvariantViolation) as e:
        return Outcome(False, str(e))
    ok = d.is_compatible() and n.is_compatible()
    return Outcome(ok, notes={"delta_classes": len(d.classes), "nabla_classes": len(n.classes)})


@claim(
    "lemma_zero_class",
    "the zero classes",
    "phi is related to 0 under the delta relation iff ker(phi) is essential; under the nabla "
    "relation iff phi(1) is superfluous.",
)
def _lemma_zero_class(c):
    v = class_of_zero_check(c.L, c.m)
    return Outcome(bool(v), v.witness)


@claim(
    "lemma_ideals",
    "Delta and Nabla are ideals without idempotents",
    "The members of m with essential kernel, and those with superfluous image, form two-sided "
    "ideals of m containing no nonzero idempotent.",
)
def _lemma_ideals(c):
    m = c.m
    for name, ideal in (("delta", delta_ideal(c.L, m)), ("nabla", nabla_ideal(c.L, m))):
        for e in idempotents(m):
            if e in ideal.members and e != m.zero_index:
                return Outcome(False, {"ideal": name, "idempotent": e})
    return Outcome(True)


@claim(
    "lemma_one_class",
    "the identity classes",
    "Under m-C2 a monomorphism in m with essential image is an isomorphism and the delta class "
    "of 1 consists of isomorphisms; dually under m-D2.",
)
def _lemma_one_class(c):
    L, m = c.L, c.m
    ess, sup = essential_elements(L), superfluous_elements(L)
    notes = {}
    if c.c2:
        for i in range(m.n):
            if m.kernels[i] == L.bottom and m.images[i] in ess and m.images[i] != L.top:
                return Outcome(False, {"phi": i, "part": "C2 monomorphism"})
    if c.d2:
        for i in range(m.n):
            if m.images[i] == L.top and m.kernels[i] in sup and m.kernels[i] != L.bottom:
                return Outcome(False, {"phi": i, "part": "D2 epimorphism"})
    v = class_of_identity_check(L, m)
    notes.update(v.notes)
    return Outcome(bool(v), v.witness, notes)


@claim(
    "thm_delta",
    "the Delta quotient is regular",
    "If m is closed under complements, L is m-K-extending and satisfies m-C2, then m modulo "
    "the delta relation is a regular monoid.",
    ("modular", "closed_under_complements", "k_extending", "c2"),
)
def _thm_delta(c):
    q = quotient(c.m, c.delta)
    v = q.is_regular()
    return Outcome(bool(v), None if v else {"class": q.class_labels()[v.witness]}, {"classes": q.n})


@claim(
    "thm_nabla",
    "the Nabla quotient is regular",
    "If m is closed under complements, L is m-T-lifting and satisfies m-D2, then m modulo "
    "the nabla relation is a regular monoid.",
    ("modular", "closed_under_complements", "t_lifting", "d2"),
)
def _thm_nabla(c):
    q = quotient(c.m, c.nabla)
    v = q.is_regular()
    return Outcome(bool(v), None if v else {"class": q.class_labels()[v.witness]}, {"classes": q.n})


def _indec_chain(c, ideal, cong, extending, hopf):
    m = c.m
    one = all(_has_inverse(m, i) for i in range(m.n) if i not in ideal.members)
    q = quotient(m, cong)
    two = bool(q.nonzero_invertible())
    three = extending
    vals = {"(1)": one, "(2)": two, "(3)": three, "upgrade": hopf}
    ok = (not one or two) and (not two or three) and (not (hopf and three) or one)
    return Outcome(ok, None if ok else vals, {"values": vals})


@claim(
    "cor_indec_delta",
    "indecomposable lattices and the Delta quotient",
    "If C(L) = {0, 1} (full End): every phi outside Delta invertible => every nonzero class "
    "of the Delta quotient invertible => K-extending; all equivalent when L is Hopfian.",
    ("modular", "full_monoid", "indecomposable"),
)
def _cor_indec_delta(c):
    return _indec_chain(c, delta_ideal(c.L, c.m), c.delta, c.k_extending, c.hopfian)


@claim(
    "cor_indec_nabla",
    "indecomposable lattices and the Nabla quotient",
    "If C(L) = {0, 1} (full End): every phi outside Nabla invertible => every nonzero class "
    "of the Nabla quotient invertible => T-lifting; all equivalent when L is cohopfian.",
    ("modular", "full_monoid", "indecomposable"),
)
def _cor_indec_nabla(c):
    return _indec_chain(c, nabla_ideal(c.L, c.m), c.nabla, c.t_lifting, c.cohopfian)


# ---------------------------------------------------------------------------
# section: idempotents


@claim(
    "idempotent_basics",
    "idempotents are projections",
    "An idempotent e has ker(e) and e(1) complementary, equals the projection onto e(1) along "
    "ker(e), and in End(L) idempotents correspond bijectively to ordered complement pairs.",
)
def _idempotent_basics(c):
    L, m = c.L, c.m
    for e in idempotents(m):
        k, img = m.kernels[e], m.images[e]
        if L.meet(k, img) != L.bottom or L.join(k, img) != L.top:
            return Outcome(False, {"idempotent": e, "clause": "complement pair"})
        if projection_values(L, img, k) != m.vals[e]:
            return Outcome(False, {"idempotent": e, "clause": "projection"})
    notes = {}
    if c.full:
        pairs = sum(popcount_mask(L.complement_masks[x]) for x in range(L.n))
        count = len(idempotents(m))
        notes = {"idempotents": count, "complement_pairs": pairs}
        if pairs != count:
            return Outcome(False, notes, notes)
    return Outcome(True, notes=notes)


def popcount_mask(mask):
    return bin(mask).count("1")


# ---------------------------------------------------------------------------
# running


def claim_ids():
    return list(REGISTRY)


def check_claim(L: Lattice, m: EndoMonoid, cid: str, ctx: Context | None = None) -> ClaimCheck:
    cl = REGISTRY[cid]
    ctx = ctx or Context(L, m)
    hyps = []
    for h in cl.hypotheses:
        val = evaluate_hypothesis(ctx, h)
        hyps.append((h, val))
        if not val:
            return ClaimCheck(cid, L.name, m.name, hyps, UNMET, unmet=h)
    out = cl.evaluate(ctx)
    return ClaimCheck(cid, L.name, m.name, hyps, PASS if out.ok else FAIL, out.witness, notes=out.notes)


def gated_checks(L: Lattice, claims=None) -> list:
    """Checks for a non-modular lattice, where composites of linear maps need not be linear."""
    return [ClaimCheck(cid, L.name, "End", [("modular", False)], UNMET, unmet="modular")
            for cid in claims or claim_ids()]


def run_all(L: Lattice, m: EndoMonoid | None = None, claims=None, strict=False) -> list:
    if m is None and not L.modular:
        return gated_checks(L, claims)
    m = m or full_endo_monoid(L)
    ctx = Context(L, m)
    out = []
    for cid in claims or claim_ids():
        if cid not in REGISTRY:
            raise KeyError(f"unknown claim {cid!r}")
        chk = check_claim(L, m, cid, ctx)
        if strict and chk.verdict == FAIL:
            raise TheoremViolated(cid, chk.witness, f"{L.name}/{m.name}")
        out.append(chk)
    return out


def monoids_for(L: Lattice, policy: str = "full"):
    """Monoids to test on L: ``full`` or ``generated:<k>`` (full End plus <=k-generated).

    Empty for non-modular L; use ``sweep_lattice`` to get gated checks instead.
    """
    from .monoid import generated_submonoids

    if not L.modular:
        return []
    full = full_endo_monoid(L)
    if policy == "full":
        return [full]
    if policy.startswith("generated:"):
        k = int(policy.split(":", 1)[1])
        seen = {full.member_set}
        out = [full]
        for sub in generated_submonoids(L, k, full):
            if sub.member_set not in seen:
                seen.add(sub.member_set)
                out.append(sub)
        return out
    raise ValueError(f"unknown monoid policy {policy!r}")


@dataclass
class SearchReport:
    checks: list
    lattices: int
    monoids: int

    @property
    def failures(self):
        return [c for c in self.checks if c.verdict == FAIL]

    def counts(self):
        out = {}
        for c in self.checks:
            key = (c.claim, c.verdict)
            out[key] = out.get(key, 0) + 1
        return out


def sweep_lattice(L: Lattice, policy="full", claims=None, strict=False) -> list:
    if not L.modular:
        return gated_checks(L, claims)
    out = []
    for m in monoids_for(L, policy):
        out.extend(run_all(L, m, claims, strict=strict))
    return out


def counterexample_search(lattices, claims=None, policy="full", strict=True) -> SearchReport:
    checks = []
    nm = 0
    lattices = list(lattices)
    for L in lattices:
        if not L.modular:
            checks.extend(gated_checks(L, claims))
            continue
        for m in monoids_for(L, policy):
            nm += 1
            ctx = Context(L, m)
            for cid in claims or claim_ids():
                chk = check_claim(L, m, cid, ctx)
                if strict and chk.verdict == FAIL:
                    raise TheoremViolated(cid, chk.witness, f"{L.name}/{m.name}")
                checks.append(chk)
    checks.sort(key=lambda c: (c.lattice, c.monoid, c.claim))
    return SearchReport(checks, len(lattices), nm)
