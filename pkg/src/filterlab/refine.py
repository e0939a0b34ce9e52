"""Filter refinement: lift characteristic subspaces, insert, iterate, classify.

Each insertion extends the grading monoid by one lexicographic coordinate
(appended least-significant), threading the new subgroup between phi_s and
its boundary.  Grades for the extended filter are generated by the closure
rules (order rule plus iterated commutator rule) and the result is verified
against the filter axioms; closure failures raise instead of being patched.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import monoid as mon, scalars
from .lie import GradedLieRing, graded_lie_ring
from .monoid import GradedMonoid, MonoidElem
from .pcgroup import Elem, PcGroup, Subgroup, comm_subgroup, subgroup_from_gens
from .series import Filter, exponent_p_lcs, verify_filter


class RefinementError(RuntimeError):
    pass


def lift_subspace(
    G: PcGroup, f: Filter, s: MonoidElem, subspace: np.ndarray
) -> Subgroup:
    """H = <boundary, lifts of the subspace basis>; strictly between boundary and phi_s."""
    from .lie import CosetBasis

    bound = f.boundary_at(s)
    comp = CosetBasis(f.value(s), bound)
    rows = np.atleast_2d(np.asarray(subspace, dtype=np.int64)) % G.p
    rows = rows[~np.all(rows == 0, axis=1)] if rows.size else rows
    if rows.size == 0:
        raise RefinementError("nothing to insert: subspace is zero")
    if rows.shape[1] != comp.dim:
        raise RefinementError("subspace dimension does not match the component")
    lifts = [comp.lift(v) for v in rows]
    H = subgroup_from_gens(G, list(bound.igs) + lifts)
    if H.order >= f.value(s).order:
        raise RefinementError("nothing to insert: subspace is the full component")
    if H.order <= bound.order:
        raise RefinementError("nothing to insert: subspace is zero")
    return H


def _closure(
    G: PcGroup,
    box: MonoidElem,
    seeds: Dict[MonoidElem, Subgroup],
    comm_cache: Dict,
) -> Dict[MonoidElem, Subgroup]:
    """Smallest box table containing the seeds and closed under both rules."""
    from .pcgroup import trivial_subgroup

    grades = mon.box_enumerate(box)
    table: Dict[MonoidElem, Subgroup] = {m: trivial_subgroup(G) for m in grades}
    for m, H in seeds.items():
        if mon.in_box(m, box):
            table[m] = table[m].join(H)

    def cached_comm(A: Subgroup, B: Subgroup) -> Subgroup:
        key = (A.igs, B.igs)
        got = comm_cache.get(key)
        if got is None:
            got = comm_subgroup(A, B)
            comm_cache[key] = got
            comm_cache[(B.igs, A.igs)] = got
        return got

    changed = True
    while changed:
        changed = False
        # order rule: descending lex cascade
        desc = sorted(grades, reverse=True)
        for prev, cur in zip(desc, desc[1:]):
            if not table[prev].is_subset(table[cur]):
                table[cur] = table[cur].join(table[prev])
                changed = True
        # commutator rule
        for u in grades:
            if table[u].order == 1:
                continue
            for v in grades:
                if table[v].order == 1:
                    continue
                w = mon.add(u, v)
                c = cached_comm(table[u], table[v])
                if c.order == 1:
                    continue
                if mon.in_box(w, box):
                    if not c.is_subset(table[w]):
                        table[w] = table[w].join(c)
                        changed = True
                else:
                    wc = tuple(min(x, b) for x, b in zip(w, box))
                    if not c.is_subset(table[wc]):
                        raise RefinementError(
                            f"closure escapes the box at {w}: enlarge the box"
                        )
    return table


def insert_refinement(f: Filter, s: MonoidElem, H: Subgroup) -> Filter:
    """Extend f over N^(d+1), lexicographic, with H threaded at grade (s, 1)."""
    G = f.group
    bound = f.boundary_at(s)
    val = f.value(s)
    if not (bound.is_subset(H) and H.is_subset(val)):
        raise RefinementError("containment violated: need boundary <= H <= phi_s")
    if H.order <= bound.order or H.order >= val.order:
        raise RefinementError("containment violated: insertion must be strict")
    if not H.is_normal():
        raise RefinementError("inserted subgroup is not normal")
    d = f.monoid.dim
    comm_cache: Dict = {}
    extra = 1
    while True:
        box = f.box + (extra,)
        seeds: Dict[MonoidElem, Subgroup] = {}
        for m in f.grades():
            seeds[m + (0,)] = f.value(m)
        seeds[s + (1,)] = H
        try:
            table = _closure(G, box, seeds, comm_cache)
        except RefinementError:
            extra += 1
            if extra > 2 * len(bin(G.order)):
                raise
            continue
        # stabilisation: one-step larger box must agree under clamping
        big_box = tuple(b + 1 for b in box)
        big = _closure(G, big_box, seeds, comm_cache)
        stable = all(
            big[w] == table[tuple(min(x, bb) for x, bb in zip(w, box))]
            for w in mon.box_iter(big_box)
        )
        if stable:
            break
        extra += 1
        if extra > 2 * len(bin(G.order)):
            raise RefinementError("refined filter does not stabilise in the new grade")
    out = Filter(G, GradedMonoid(d + 1, mon.LEX), box, table)
    bad = verify_filter(out)
    if bad:
        raise RefinementError(f"refined table is not a filter: {bad[0]}")
    return out


@dataclass
class RefinementStep:
    grade: MonoidElem
    provenance: str
    new_index: int  # index of H inside phi_s
    igs: Tuple[Elem, ...]


@dataclass
class RefineOptions:
    ring_kinds: Tuple[str, ...] = scalars.KINDS
    include_bimap_radicals: Optional[bool] = None
    cap: int = 20


@dataclass
class RefinementReport:
    group: str
    order: int
    seed_dims: List[int]
    steps: List[RefinementStep]
    final: Filter
    classification: str
    ring_dims: Dict[str, Dict[str, int]]
    cap_hit: bool
    runtime_ms: int

    @property
    def flagged(self) -> bool:
        return self.classification == "non-semi-classical"


def _candidate_sort_key(rank: int, grade: MonoidElem, basis: np.ndarray):
    return (
        rank,
        grade,
        basis.shape[0],
        tuple(int(x) for x in basis.reshape(-1)),
    )


def _gather_candidates(L: GradedLieRing, opts: RefineOptions):
    """All proper emitted subspaces over all in-box products, ordered."""
    out = []
    ring_dims: Dict[str, Dict[str, int]] = {}
    include_rad = opts.include_bimap_radicals
    if include_rad is None:
        include_rad = set(opts.ring_kinds) == set(scalars.KINDS)
    grades = [s for s in L.comps if L.dim(s) > 0]
    for s in grades:
        for t in grades:
            u = mon.add(s, t)
            if L.dim(u) == 0:
                continue
            b = scalars.bimap_from_lie_pair(L, s, t)
            rings = scalars.all_rings(b)
            key = ",".join(str(x) for x in s) + "|" + ",".join(str(x) for x in t)
            ring_dims[key] = {k: rings[k].dim for k in scalars.KINDS}
            ems = scalars.characteristic_subspaces(
                b,
                rings,
                kinds=opts.ring_kinds,
                include_bimap_radicals=include_rad,
            )
            side_grade = {"U": s, "V": t, "W": u}
            for e in ems:
                g = side_grade[e.side]
                comp_dim = L.dim(g)
                if 0 < e.dim < comp_dim:
                    rank = scalars.PROVENANCE_RANK[e.provenance]
                    out.append(
                        (
                            _candidate_sort_key(rank, g, e.basis),
                            g,
                            e.basis,
                            e.provenance,
                        )
                    )
    out.sort(key=lambda c: c[0])
    return out, ring_dims


def refine_to_fixpoint(
    G: PcGroup, opts: Optional[RefineOptions] = None, group_id: str = ""
) -> RefinementReport:
    """Seed with the exponent-p series, insert first emitted subspace, repeat."""
    opts = opts or RefineOptions()
    t0 = time.monotonic()
    f = exponent_p_lcs(G)
    L = graded_lie_ring(f)
    seed_dims = [L.dim(s) for s in L.grades()]
    steps: List[RefinementStep] = []
    ring_dims: Dict[str, Dict[str, int]] = {}
    cap_hit = False
    while True:
        candidates, dims = _gather_candidates(L, opts)
        if not ring_dims:
            ring_dims = dims
        inserted = False
        for _, grade, basis, prov in candidates:
            try:
                H = lift_subspace(G, f, grade, basis)
                new_index = f.value(grade).order // H.order
                f = insert_refinement(f, grade, H)
            except RefinementError:
                continue
            steps.append(RefinementStep(grade, prov, new_index, H.igs))
            inserted = True
            break
        if not inserted:
            break
        if len(steps) >= opts.cap:
            cap_hit = True
            break
        L = graded_lie_ring(f)
    report = RefinementReport(
        group=group_id or (G.name or "group"),
        order=G.order,
        seed_dims=seed_dims,
        steps=steps,
        final=f,
        classification="",
        ring_dims=ring_dims,
        cap_hit=cap_hit,
        runtime_ms=int((time.monotonic() - t0) * 1000),
    )
    report.classification = classify(report, G)
    return report


def _product_series_values(G: PcGroup) -> Optional[set]:
    """Subgroups of the product exponent-p filter, when factors are declared."""
    from .series import product_filter

    if len(G.factors) < 2:
        return None
    parts = [exponent_p_lcs(F) for _, F in G.factors]
    pf = product_filter(parts, G)
    return {pf.value(m).igs for m in pf.grades()}


def classify(r: RefinementReport, G: PcGroup) -> str:
    """classical: no insertion; semi-classical: insertions only reproduce a
    declared direct-product structure; non-semi-classical otherwise."""
    if not r.steps:
        return "classical"
    product_values = _product_series_values(G)
    if product_values is not None and all(
        step.igs in product_values for step in r.steps
    ):
        return "semi-classical"
    return "non-semi-classical"


def report_to_json(r: RefinementReport) -> dict:
    return {
        "group": r.group,
        "order": r.order,
        "seed": {"dims": list(r.seed_dims)},
        "steps": [
            {
                "grade": list(s.grade),
                "provenance": s.provenance,
                "new_index": s.new_index,
            }
            for s in r.steps
        ],
        "classification": r.classification,
        "ring_dims": {k: dict(v) for k, v in sorted(r.ring_dims.items())},
        "cap_hit": r.cap_hit,
        "runtime_ms": r.runtime_ms,
    }
