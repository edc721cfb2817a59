"""
Lattice properties relative to a monoid ``m`` of linear endomorphisms.

Every checker returns a :class:`Verdict` whose witness uses element names and
monoid indices, so :func:`replay` can re-derive the value from the witness
alone.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import EquivalenceViolation, NotModular
from .lattice import (
    Lattice,
    bits,
    interval_isomorphisms,
    is_essential,
    is_superfluous,
)
from .monoid import (
    EndoMonoid,
    contains_all_projections,
    delta_ideal,
    is_abelian,
    is_closed_under_complements,
    is_regular,
    nabla_ideal,
)
from .morphisms import projection_values
from .verdict import Verdict

INFERRED = {"k_nonsingular", "t_nonsingular", "c1", "c3"}


def _require_modular(L):
    if not L.modular:
        raise NotModular(f"{L.name} is not modular")


def _complemented(L, x):
    return bool(L.complemented_mask >> x & 1)


# ---------------------------------------------------------------------------
# kernel and image conditions


def is_m_rickart(L: Lattice, m: EndoMonoid) -> Verdict:
    _require_modular(L)
    for i, k in enumerate(m.kernels):
        if not _complemented(L, k):
            return Verdict(False, {"phi": i, "kernel": L.names[k]})
    return Verdict(True)


def is_dual_m_rickart(L: Lattice, m: EndoMonoid) -> Verdict:
    _require_modular(L)
    for i, a in enumerate(m.images):
        if not _complemented(L, a):
            return Verdict(False, {"phi": i, "image": L.names[a]})
    return Verdict(True)


def kernel_image_complemented(L, m) -> Verdict:
    for i in range(m.n):
        if not (_complemented(L, m.kernels[i]) and _complemented(L, m.images[i])):
            return Verdict(False, {"phi": i})
    return Verdict(True)


def kernel_image_complement_pairs(L, m) -> Verdict:
    """ker and image of every member are complements of each other."""
    for i in range(m.n):
        k, a = m.kernels[i], m.images[i]
        if L.meet(k, a) != L.bottom or L.join(k, a) != L.top:
            return Verdict(False, {"phi": i})
    return Verdict(True)


def is_m_endoregular(L: Lattice, m: EndoMonoid) -> Verdict:
    _require_modular(L)
    v = is_regular(m)
    closed = is_closed_under_complements(L, m)
    if closed:
        crit = kernel_image_complemented(L, m)
        if bool(crit) != bool(v):
            raise EquivalenceViolation(
                "regularity disagrees with the kernel/image criterion", (v.witness, crit.witness)
            )
    if v:
        return Verdict(True, {"inverses": v.witness})
    return Verdict(False, {"phi": v.witness})


def is_m_abelian_endoregular(L: Lattice, m: EndoMonoid) -> Verdict:
    _require_modular(L)
    reg = is_regular(m)
    ab = is_abelian(m) if reg else Verdict(True)
    value = bool(reg) and bool(ab)
    if is_closed_under_complements(L, m):
        crit = kernel_image_complement_pairs(L, m)
        if bool(crit) != value:
            raise EquivalenceViolation(
                "abelian regularity disagrees with the complement-pair criterion",
                (reg.witness, ab.witness, crit.witness),
            )
    if value:
        return Verdict(True)
    if not reg:
        return Verdict(False, {"not_regular": reg.witness})
    return Verdict(False, {"not_central": list(ab.witness)})


# ---------------------------------------------------------------------------
# C2 and D2


@lru_cache(maxsize=4096)
def _isos(L, lo1, hi1, lo2, hi2):
    return tuple(
        tuple(sorted(t.items())) for t in interval_isomorphisms(L.interval(lo1, hi1), L.interval(lo2, hi2))
    )


def satisfies_C2(L: Lattice, m: EndoMonoid) -> Verdict:
    """Whenever iota_a theta pi_x lies in m for an iso [0,x] -> [0,a], a is complemented."""
    _require_modular(L)
    for x in bits(L.complemented_mask):
        for xp in bits(L.complement_masks[x]):
            p = projection_values(L, x, xp)
            for a in range(L.n):
                for theta in _isos(L, L.bottom, x, L.bottom, a):
                    t = dict(theta)
                    vals = tuple(t[p[y]] for y in range(L.n))
                    if vals in m.index and not _complemented(L, a):
                        return Verdict(
                            False,
                            {"x": L.names[x], "x_prime": L.names[xp], "a": L.names[a], "phi": m.index[vals]},
                        )
    return Verdict(True)


def satisfies_D2(L: Lattice, m: EndoMonoid) -> Verdict:
    """Whenever iota_x theta rho_a lies in m for an iso [a,1] -> [0,x] with x complemented, a is complemented."""
    _require_modular(L)
    jt = L.join_table
    for a in range(L.n):
        for x in bits(L.complemented_mask):
            for theta in _isos(L, a, L.top, L.bottom, x):
                t = dict(theta)
                vals = tuple(t[jt[a][y]] for y in range(L.n))
                if vals in m.index and not _complemented(L, a):
                    return Verdict(False, {"a": L.names[a], "x": L.names[x], "phi": m.index[vals]})
    return Verdict(True)


# ---------------------------------------------------------------------------
# extending / lifting / nonsingular


def is_K_extending(L: Lattice, m: EndoMonoid) -> Verdict:
    _require_modular(L)
    wit = {}
    for i, k in enumerate(m.kernels):
        for c in bits(L.complemented_mask & L.up[k]):
            if is_essential(L, k, L.interval(L.bottom, c)):
                wit[i] = L.names[c]
                break
        else:
            return Verdict(False, {"phi": i, "kernel": L.names[k]})
    return Verdict(True, wit)


def is_T_lifting(L: Lattice, m: EndoMonoid) -> Verdict:
    _require_modular(L)
    wit = {}
    for i, a in enumerate(m.images):
        found = None
        for c in bits(L.complemented_mask & L.down[a]):
            for cp in bits(L.complement_masks[c]):
                if is_superfluous(L, L.meet(a, cp), L.interval(L.bottom, cp)):
                    found = (L.names[c], L.names[cp])
                    break
            if found:
                break
        if found is None:
            return Verdict(False, {"phi": i, "image": L.names[a]})
        wit[i] = found
    return Verdict(True, wit)


def is_K_nonsingular(L: Lattice, m: EndoMonoid) -> Verdict:
    D = delta_ideal(L, m)
    bad = [i for i in D.sorted() if i != m.zero_index]
    return Verdict(not bad, {"phi": bad[0]} if bad else None)


def is_T_nonsingular(L: Lattice, m: EndoMonoid) -> Verdict:
    N = nabla_ideal(L, m)
    bad = [i for i in N.sorted() if i != m.zero_index]
    return Verdict(not bad, {"phi": bad[0]} if bad else None)


# ---------------------------------------------------------------------------
# generated and fully invariant elements


def is_L_generated(L: Lattice, m: EndoMonoid, a) -> bool:
    """a is the join of the images of members whose image lies below a."""
    return L.big_join(b for b in m.images if L.leq(b, a)) == a


def L_generated_elements(L: Lattice, m: EndoMonoid):
    return [a for a in range(L.n) if is_L_generated(L, m, a)]


def fully_invariant_elements(L: Lattice, m: EndoMonoid):
    return L.element_set(a for a in range(L.n) if all(L.leq(v[a], a) for v in m.vals))


def is_hopfian(L: Lattice, m: EndoMonoid) -> Verdict:
    for i in range(m.n):
        if m.kernels[i] == L.bottom and m.images[i] != L.top:
            return Verdict(False, {"phi": i})
    return Verdict(True)


def is_cohopfian(L: Lattice, m: EndoMonoid) -> Verdict:
    for i in range(m.n):
        if m.images[i] == L.top and m.kernels[i] != L.bottom:
            return Verdict(False, {"phi": i})
    return Verdict(True)


# ---------------------------------------------------------------------------
# conditions on L alone


def is_vnr_lattice(L: Lattice) -> Verdict:
    # every element of a finite lattice is compact
    for x in range(L.n):
        if not _complemented(L, x):
            return Verdict(False, {"element": L.names[x]})
    return Verdict(True)


def satisfies_C1(L: Lattice) -> Verdict:
    _require_modular(L)
    wit = {}
    for x in range(L.n):
        for c in bits(L.complemented_mask & L.up[x]):
            if is_essential(L, x, L.interval(L.bottom, c)):
                wit[L.names[x]] = L.names[c]
                break
        else:
            return Verdict(False, {"element": L.names[x]})
    return Verdict(True, wit)


def satisfies_C3(L: Lattice) -> Verdict:
    _require_modular(L)
    cm = L.complemented_mask
    for x in bits(cm):
        for y in bits(cm):
            if x < y and L.meet(x, y) == L.bottom and not _complemented(L, L.join(x, y)):
                return Verdict(False, {"x": L.names[x], "y": L.names[y]})
    return Verdict(True)


def complemented_is_boolean(L: Lattice) -> bool:
    """C(L) is a Boolean sublattice: closed under meet and join, and distributive."""
    cm = L.complemented_mask
    C = list(bits(cm))
    mt, jt = L.meet_table, L.join_table
    for x in C:
        for y in C:
            if not (cm >> mt[x][y] & 1 and cm >> jt[x][y] & 1):
                return False
    return all(mt[x][jt[y][z]] == jt[mt[x][y]][mt[x][z]] for x in C for y in C for z in C)


# ---------------------------------------------------------------------------
# report


PROPERTY_IDS = (
    "m_rickart",
    "dual_m_rickart",
    "m_endoregular",
    "m_abelian_endoregular",
    "c2",
    "d2",
    "k_extending",
    "t_lifting",
    "k_nonsingular",
    "t_nonsingular",
    "hopfian",
    "cohopfian",
    "closed_under_complements",
    "contains_projections",
    "vnr_lattice",
    "c1",
    "c3",
)

_CHECKERS = {
    "m_rickart": is_m_rickart,
    "dual_m_rickart": is_dual_m_rickart,
    "m_endoregular": is_m_endoregular,
    "m_abelian_endoregular": is_m_abelian_endoregular,
    "c2": satisfies_C2,
    "d2": satisfies_D2,
    "k_extending": is_K_extending,
    "t_lifting": is_T_lifting,
    "k_nonsingular": is_K_nonsingular,
    "t_nonsingular": is_T_nonsingular,
    "hopfian": is_hopfian,
    "cohopfian": is_cohopfian,
    "closed_under_complements": is_closed_under_complements,
    "contains_projections": contains_all_projections,
    "vnr_lattice": lambda L, m: is_vnr_lattice(L),
    "c1": lambda L, m: satisfies_C1(L),
    "c3": lambda L, m: satisfies_C3(L),
}


def check_property(L: Lattice, m: EndoMonoid, pid: str) -> Verdict:
    if pid not in _CHECKERS:
        raise KeyError(f"unknown property {pid!r}")
    return _CHECKERS[pid](L, m)


def _jsonable(w):
    if isinstance(w, dict):
        return {str(k): _jsonable(v) for k, v in w.items()}
    if isinstance(w, (list, tuple)):
        return [_jsonable(v) for v in w]
    return w


@dataclass
class PropertyReport:
    lattice: str
    monoid: str
    results: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    degenerate: bool = False
    extras: dict = field(default_factory=dict)

    def text(self) -> str:
        lines = [f"lattice {self.lattice} monoid {self.monoid}" + (" (degenerate)" if self.degenerate else "")]
        for pid in self.results:
            v = self.results[pid]
            flag = "  [inferred definition]" if pid in INFERRED else ""
            if v.skipped:
                lines.append(f"  {pid:26s} skipped ({v.skipped_reason})")
                continue
            line = f"  {pid:26s} {'true' if v else 'false'}{flag}"
            if not v and v.witness is not None:
                line += f"  witness={json.dumps(_jsonable(v.witness), sort_keys=True)}"
            lines.append(line)
        for k, val in self.extras.items():
            lines.append(f"  {k:26s} {val}")
        return "\n".join(lines)

    def records(self):
        for pid, v in self.results.items():
            yield {
                "schema": 1,
                "kind": "property",
                "lattice": self.lattice,
                "monoid": self.monoid,
                "property": pid,
                "value": bool(v),
                "witness": _jsonable(v.witness),
                "skipped_reason": v.skipped_reason,
                "inferred_definition": pid in INFERRED,
                "degenerate": self.degenerate,
                "time_ms": round(self.timings.get(pid, 0.0) * 1000, 3),
            }


def analyze(L: Lattice, m: EndoMonoid, properties=PROPERTY_IDS) -> PropertyReport:
    _require_modular(L)
    rep = PropertyReport(L.name, m.name, degenerate=L.degenerate)
    for pid in properties:
        t0 = time.perf_counter()
        rep.results[pid] = check_property(L, m, pid)
        rep.timings[pid] = time.perf_counter() - t0
    rep.extras["complemented"] = "{" + ", ".join(L.names[x] for x in bits(L.complemented_mask)) + "}"
    rep.extras["fully_invariant"] = repr(fully_invariant_elements(L, m))
    rep.extras["m_generated"] = "{" + ", ".join(L.names[a] for a in L_generated_elements(L, m)) + "}"
    return rep


# ---------------------------------------------------------------------------
# witness replay


def replay(L: Lattice, m: EndoMonoid, pid: str, verdict: Verdict) -> bool:
    """Re-derive a verdict's value from its witness alone."""
    w = verdict.witness
    cm = L.complemented_mask

    def comp(name):
        return bool(cm >> L[name] & 1)

    if pid in ("m_rickart", "dual_m_rickart", "k_nonsingular", "t_nonsingular", "hopfian", "cohopfian"):
        if verdict:
            return verdict.value == bool(check_property(L, m, pid))
        i = w["phi"]
        k, a = m.kernels[i], m.images[i]
        return {
            "m_rickart": lambda: not comp(L.names[k]),
            "dual_m_rickart": lambda: not comp(L.names[a]),
            "k_nonsingular": lambda: i in delta_ideal(L, m).members and i != m.zero_index,
            "t_nonsingular": lambda: i in nabla_ideal(L, m).members and i != m.zero_index,
            "hopfian": lambda: k == L.bottom and a != L.top,
            "cohopfian": lambda: a == L.top and k != L.bottom,
        }[pid]()
    if pid == "m_endoregular":
        t = m.table
        if verdict:
            inv = w["inverses"]
            return all(t[t[i][inv[i]]][i] == i for i in range(m.n))
        i = w["phi"]
        return all(t[t[i][j]][i] != i for j in range(m.n))
    if pid == "c2":
        if verdict:
            return bool(satisfies_C2(L, m))
        i = w["phi"]
        return (
            m.kernels[i] == L[w["x_prime"]]
            and m.images[i] == L[w["a"]]
            and bool(L.complement_masks[L[w["x"]]] >> L[w["x_prime"]] & 1)
            and not comp(w["a"])
        )
    if pid == "d2":
        if verdict:
            return bool(satisfies_D2(L, m))
        i = w["phi"]
        return m.kernels[i] == L[w["a"]] and m.images[i] == L[w["x"]] and comp(w["x"]) and not comp(w["a"])
    if pid == "k_extending":
        if not verdict:
            k = m.kernels[w["phi"]]
            return not any(is_essential(L, k, L.interval(L.bottom, c)) for c in bits(cm & L.up[k]))
        return all(
            comp(c) and L.leq(m.kernels[i], L[c]) and is_essential(L, m.kernels[i], L.interval(L.bottom, L[c]))
            for i, c in w.items()
        ) and len(w) == m.n
    if pid == "t_lifting":
        if not verdict:
            return not bool(is_T_lifting(L, m))
        return len(w) == m.n and all(
            L.leq(L[c], m.images[i])
            and bool(L.complement_masks[L[c]] >> L[cp] & 1)
            and is_superfluous(L, L.meet(m.images[i], L[cp]), L.interval(L.bottom, L[cp]))
            for i, (c, cp) in w.items()
        )
    if pid == "c1":
        if not verdict:
            x = L[w["element"]]
            return not any(is_essential(L, x, L.interval(L.bottom, c)) for c in bits(cm & L.up[x]))
        return len(w) == L.n and all(
            comp(c) and L.leq(L[x], L[c]) and is_essential(L, L[x], L.interval(L.bottom, L[c]))
            for x, c in w.items()
        )
    if pid == "c3":
        if verdict:
            return bool(satisfies_C3(L))
        x, y = L[w["x"]], L[w["y"]]
        return comp(w["x"]) and comp(w["y"]) and L.meet(x, y) == L.bottom and not cm >> L.join(x, y) & 1
    if pid == "vnr_lattice":
        return bool(verdict) == (cm == L.full_mask) and (verdict or not comp(w["element"]))
    if pid == "m_abelian_endoregular":
        if verdict:
            return bool(is_regular(m)) and bool(is_abelian(m))
        if "not_regular" in w:
            t, i = m.table, w["not_regular"]
            return all(t[t[i][j]][i] != i for j in range(m.n))
        e, x = w["not_central"]
        return m.table[e][e] == e and m.table[e][x] != m.table[x][e]
    if pid == "closed_under_complements":
        if verdict:
            return bool(is_closed_under_complements(L, m))
        return w["missing"] not in m.index
    if pid == "contains_projections":
        if verdict:
            return bool(contains_all_projections(L, m))
        return projection_values(L, *w) not in m.index
    raise KeyError(pid)
