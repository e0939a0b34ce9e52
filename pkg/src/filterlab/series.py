"""Central series, filters, layerings, boundaries, axiom checks, products.

A filter or layering is stored on a finite box past the stabilisation point
of the underlying series.  Outside the box a filter evaluates to the trivial
subgroup and a layering to the full group; with the box chosen past
stabilisation those are the true values, so all axiom checks on the box are
exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional

from . import monoid as mon
from .monoid import GradedMonoid, MonoidElem
from .pcgroup import (
    Elem,
    PcGroup,
    Subgroup,
    centralizer_mod,
    comm_subgroup,
    embed,
    full_subgroup,
    subgroup_from_gens,
    trivial_subgroup,
)


@dataclass
class Violation:
    clause: str
    s: MonoidElem
    t: Optional[MonoidElem]
    witness: Optional[Elem]

    def __str__(self) -> str:
        w = f", witness {self.witness}" if self.witness is not None else ""
        return f"{self.clause} at s={self.s}, t={self.t}{w}"


class _BoxMap:
    """Shared storage for filters and layerings."""

    def __init__(
        self,
        group: PcGroup,
        monoid: GradedMonoid,
        box: MonoidElem,
        table: Dict[MonoidElem, Subgroup],
    ):
        if len(box) != monoid.dim:
            raise ValueError("box dimension does not match monoid")
        self.group = group
        self.monoid = monoid
        self.box = box
        self.table = dict(table)
        for m in mon.box_iter(box):
            if m not in self.table:
                raise ValueError(f"missing table entry at {m}")

    def grades(self) -> List[MonoidElem]:
        return mon.box_enumerate(self.box)

    def in_box(self, m: MonoidElem) -> bool:
        if len(m) != self.monoid.dim:
            raise ValueError(f"grade {m} does not match monoid dimension {self.monoid.dim}")
        return mon.in_box(m, self.box)


class Filter(_BoxMap):
    """Order-reversing phi with [phi_s, phi_t] <= phi_{s+t}.

    Off the box the map is evaluated at the grade clamped into the box; with
    the box past stabilisation in every coordinate direction this is the true
    value (trivial for N-graded series, the stabilised factor value for
    pointwise products).
    """

    def value(self, m: MonoidElem) -> Subgroup:
        if self.in_box(m):
            return self.table[m]
        return self.table[tuple(min(x, b) for x, b in zip(m, self.box))]

    def boundary_at(self, s: MonoidElem) -> Subgroup:
        # translates t in the box reach every clamped target of s + t, t != 0
        acc = trivial_subgroup(self.group)
        for t in mon.box_iter(self.box):
            if t == self.monoid.zero:
                continue
            acc = acc.join(self.value(mon.add(s, t)))
        return acc

    def boundary(self) -> "Filter":
        table = {s: self.boundary_at(s) for s in mon.box_iter(self.box)}
        return Filter(self.group, self.monoid, self.box, table)

    def orders(self) -> List[int]:
        return [self.value(m).order for m in self.grades()]


class Layering(_BoxMap):
    """Order-preserving pi with [pi^s, boundary^t] <= pi^t.

    Off-box grades clamp into the box, mirroring Filter; for N-graded series
    this evaluates to the full group past stabilisation.
    """

    def value(self, m: MonoidElem) -> Subgroup:
        if self.in_box(m):
            return self.table[m]
        return self.table[tuple(min(x, b) for x, b in zip(m, self.box))]

    def boundary_at(self, s: MonoidElem) -> Subgroup:
        acc: Optional[Subgroup] = None
        for t in mon.box_iter(self.box):
            if t == self.monoid.zero:
                continue
            v = self.value(mon.add(s, t))
            acc = v if acc is None else acc.meet(v)
        if acc is None:
            return full_subgroup(self.group)
        return acc

    def boundary(self) -> "Layering":
        table = {s: self.boundary_at(s) for s in mon.box_iter(self.box)}
        return Layering(self.group, self.monoid, self.box, table)

    def orders(self) -> List[int]:
        return [self.value(m).order for m in self.grades()]


# -- constructors -----------------------------------------------------------

N_MONOID = GradedMonoid(1, mon.POINTWISE)


def lower_central(G: PcGroup) -> Filter:
    """gamma_1 = G, gamma_{i+1} = [G, gamma_i]; graded over N with phi_0 = G."""
    full = full_subgroup(G)
    chain = [full]
    while chain[-1].order > 1:
        nxt = comm_subgroup(full, chain[-1])
        if nxt.order == chain[-1].order:
            raise ValueError("lower central series did not reach 1 (not nilpotent?)")
        chain.append(nxt)
    table = {(0,): full}
    for i, H in enumerate(chain, start=1):
        table[(i,)] = H
    return Filter(G, N_MONOID, (len(chain),), table)


def upper_central(G: PcGroup) -> Layering:
    """zeta^0 = 1, zeta^{i+1}/zeta^i the centre of G/zeta^i; graded over N."""
    full = full_subgroup(G)
    chain = [trivial_subgroup(G)]
    while chain[-1].order < G.order:
        nxt = centralizer_mod(G, full, chain[-1])
        if nxt.order == chain[-1].order:
            raise ValueError("upper central series stalled (not nilpotent?)")
        chain.append(nxt)
    table = {(i,): H for i, H in enumerate(chain)}
    return Layering(G, N_MONOID, (len(chain) - 1,), table)


def exponent_p_lcs(G: PcGroup) -> Filter:
    """eta_1 = G, eta_{i+1} = [G, eta_i] * eta_i^p; elementary abelian factors."""
    full = full_subgroup(G)
    chain = [full]
    while chain[-1].order > 1:
        cur = chain[-1]
        gens = list(comm_subgroup(full, cur).igs)
        gens += [G.power(h, G.p) for h in cur.igs]
        nxt = subgroup_from_gens(G, gens)
        if nxt.order == cur.order:
            raise ValueError("exponent-p series did not reach 1")
        chain.append(nxt)
    table = {(0,): full}
    for i, H in enumerate(chain, start=1):
        table[(i,)] = H
    return Filter(G, N_MONOID, (len(chain),), table)


# -- verification -----------------------------------------------------------


def _containment_witness(G: PcGroup, C: Subgroup, target: Subgroup) -> Optional[Elem]:
    for h in C.igs:
        if not target.contains(h):
            return h
    return None


def verify_filter(f: Filter) -> List[Violation]:
    """Exhaustive check of both filter clauses over the box."""
    out: List[Violation] = []
    grades = f.grades()
    for s in grades:
        for t in grades:
            c = comm_subgroup(f.value(s), f.value(t))
            target = f.value(mon.add(s, t))
            if not c.is_subset(target):
                w = next(
                    (
                        f.group.commutator(x, y)
                        for x in f.value(s).igs
                        for y in f.value(t).igs
                        if not target.contains(f.group.commutator(x, y))
                    ),
                    _containment_witness(f.group, c, target),
                )
                out.append(Violation("[phi_s,phi_t] <= phi_{s+t}", s, t, w))
    for s in grades:
        for t in grades:
            if f.monoid.preceq(s, t) and not f.value(t).is_subset(f.value(s)):
                out.append(Violation("s<t but phi_s < phi_t", s, t, None))
    return out


def verify_layering(l: Layering) -> List[Violation]:
    out: List[Violation] = []
    grades = l.grades()
    for s in grades:
        for t in grades:
            c = comm_subgroup(l.value(s), l.boundary_at(t))
            if not c.is_subset(l.value(t)):
                w = _containment_witness(l.group, c, l.value(t))
                out.append(Violation("[pi^s, d^t pi] <= pi^t", s, t, w))
    for s in grades:
        for t in grades:
            if l.monoid.preceq(s, t) and not l.value(s).is_subset(l.value(t)):
                out.append(Violation("s<t but pi^s > pi^t", s, t, None))
    return out


def verify_sift(f: Filter, l: Layering) -> List[Violation]:
    """[phi_s, pi^{s+t}] <= pi^t for all box grades s, t."""
    if f.group is not l.group:
        raise ValueError("filter and layering live on different groups")
    if f.monoid != l.monoid:
        raise ValueError("monoid mismatch between filter and layering")
    out: List[Violation] = []
    grades = f.grades()
    for s in grades:
        for t in grades:
            c = comm_subgroup(f.value(s), l.value(mon.add(s, t)))
            if not c.is_subset(l.value(t)):
                w = _containment_witness(f.group, c, l.value(t))
                out.append(Violation("[phi_s, pi^{s+t}] <= pi^t", s, t, w))
    return out


# -- products ---------------------------------------------------------------


def _product_box_map(parts, G: PcGroup, order_kind: str):
    if len(parts) == 1 and parts[0].group is G:
        # degenerate product: the part itself
        p = parts[0]
        return GradedMonoid(p.monoid.dim, order_kind), p.box, dict(p.table)
    if not G.factors or len(G.factors) != len(parts):
        raise ValueError("group was not built as a direct product of the part groups")
    offsets = []
    for (goff, fac), part in zip(G.factors, parts):
        if fac is not part.group:
            raise ValueError("part filter group does not match product factor")
        offsets.append(goff)
    box = tuple(c for p in parts for c in p.box)
    monoid_ = GradedMonoid(sum(p.monoid.dim for p in parts), order_kind)
    table: Dict[MonoidElem, Subgroup] = {}
    for m in mon.box_iter(box):
        gens: List[Elem] = []
        pos = 0
        for part, goff in zip(parts, offsets):
            sub_m = m[pos : pos + part.monoid.dim]
            pos += part.monoid.dim
            for h in part.value(sub_m).igs:
                gens.append(embed(G, h, goff, G.n))
        table[m] = subgroup_from_gens(G, gens)
    return monoid_, box, table


def product_filter(parts: List[Filter], G: PcGroup, order_kind: str = mon.POINTWISE) -> Filter:
    """phi_m = prod of phi^{H_i}_{m_i} inside the declared direct product."""
    monoid_, box, table = _product_box_map(parts, G, order_kind)
    return Filter(G, monoid_, box, table)


def product_layering(parts: List[Layering], G: PcGroup, order_kind: str = mon.POINTWISE) -> Layering:
    monoid_, box, table = _product_box_map(parts, G, order_kind)
    return Layering(G, monoid_, box, table)


# -- serialisation ----------------------------------------------------------


def boxmap_to_json(f: _BoxMap) -> dict:
    return {
        "monoid": {"dim": f.monoid.dim, "order": f.monoid.order_kind},
        "box": list(f.box),
        "entries": [
            {"grade": list(m), "igs": [list(h) for h in f.table[m].igs]}
            for m in f.grades()
        ],
    }
