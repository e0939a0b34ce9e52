"""Brute-force Cayley-table engine used as ground truth for pc computations.

The table is built column by column: column of element y = column of y's
parent (last pc letter removed) composed with one generator column, so only
n * p^n collections are needed.  Series and subgroup computations on the
table work on plain index sets, fully independent of the igs machinery.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Tuple

import numpy as np

from .pcgroup import Elem, PcGroup

ORDER_CAP = 2 ** 12
FULL_ASSOC_CAP = 512


class TableGroup:
    def __init__(self, order: int, table: np.ndarray, labels: List[Elem]):
        self.order = order
        self.table = table
        self.labels = labels
        self.index: Dict[Elem, int] = {x: i for i, x in enumerate(labels)}
        self.identity = self.index[labels[0]] if labels else 0
        inv = np.full(order, -1, dtype=np.int64)
        for i in range(order):
            js = np.nonzero(table[i] == self.identity)[0]
            inv[i] = js[0]
        self.inv = inv

    def mult(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def comm(self, i: int, j: int) -> int:
        t = self.table
        return int(t[t[t[self.inv[i], self.inv[j]], i], j])

    def conj(self, i: int, g: int) -> int:
        t = self.table
        return int(t[t[self.inv[g], i], g])

    def closure(self, seed) -> FrozenSet[int]:
        """Subgroup of the table generated by a set of indices."""
        have = {self.identity} | set(int(s) for s in seed)
        frontier = list(have)
        while frontier:
            new = set()
            cur = np.fromiter(have, dtype=np.int64)
            fr = np.fromiter(frontier, dtype=np.int64)
            prods = self.table[np.ix_(cur, fr)].ravel()
            for x in np.unique(prods):
                if int(x) not in have:
                    new.add(int(x))
            prods = self.table[np.ix_(fr, cur)].ravel()
            for x in np.unique(prods):
                if int(x) not in have:
                    new.add(int(x))
            have |= new
            frontier = list(new)
        return frozenset(have)

    def associativity_violation(self, samples: int = 1_000_000, seed: int = 0):
        """First violating triple, or None.  Full check below FULL_ASSOC_CAP."""
        t = self.table
        n = self.order
        if n <= FULL_ASSOC_CAP:
            for k in range(n):
                left = t[t, k]      # (i,j) -> (ij)k
                right = t[:, t[:, k]]  # (i,j) -> i(jk)
                if not np.array_equal(left, right):
                    bad = np.argwhere(left != right)[0]
                    return int(bad[0]), int(bad[1]), k
            return None
        rng = np.random.default_rng(seed)
        ii = rng.integers(0, n, size=samples)
        jj = rng.integers(0, n, size=samples)
        kk = rng.integers(0, n, size=samples)
        left = t[t[ii, jj], kk]
        right = t[ii, t[jj, kk]]
        bad = np.nonzero(left != right)[0]
        if bad.size:
            b = bad[0]
            return int(ii[b]), int(jj[b]), int(kk[b])
        return None


def cayley_from_pc(G: PcGroup, cap: int = ORDER_CAP) -> TableGroup:
    """Full multiplication table from collection; |G| <= cap."""
    if G.order > cap:
        raise ValueError(f"order {G.order} exceeds oracle cap {cap}")
    labels = list(G.elements())
    index = {x: i for i, x in enumerate(labels)}
    n, p = G.n, G.p
    order = G.order
    table = np.zeros((order, order), dtype=np.int64)
    # generator columns by collection, the rest by column composition
    gen_cols = {}
    for k in range(1, n + 1):
        col = np.empty(order, dtype=np.int64)
        for i, x in enumerate(labels):
            col[i] = index[G.mult_word(x, ((k, 1),))]
        gen_cols[k] = col
    ident_col = np.arange(order, dtype=np.int64)
    for j, y in enumerate(labels):
        last = None
        for k in range(n, 0, -1):
            if y[k - 1]:
                last = k
                break
        if last is None:
            table[:, j] = ident_col
            continue
        parent = y[: last - 1] + (y[last - 1] - 1,) + y[last:]
        table[:, j] = gen_cols[last][table[:, index[parent]]]
    return TableGroup(order, table, labels)


def brute_comm_set(T: TableGroup, left: FrozenSet[int], right: FrozenSet[int]) -> FrozenSet[int]:
    gens = {T.comm(x, y) for x in left for y in right}
    return T.closure(gens)


def brute_series(T: TableGroup) -> Tuple[List[FrozenSet[int]], List[FrozenSet[int]]]:
    """Lower central chain (gamma_1, gamma_2, ...) and upper chain (zeta^0, ...)."""
    whole = frozenset(range(T.order))
    gamma = [whole]
    while True:
        nxt = brute_comm_set(T, whole, gamma[-1])
        if nxt == gamma[-1]:
            break
        gamma.append(nxt)
        if len(nxt) == 1:
            break
    zeta = [frozenset({T.identity})]
    gens = list(range(T.order))
    while True:
        cur = zeta[-1]
        nxt = frozenset(
            x for x in range(T.order) if all(T.comm(x, g) in cur for g in gens)
        )
        if nxt == cur:
            break
        zeta.append(nxt)
        if len(nxt) == T.order:
            break
    return gamma, zeta


def brute_center_mod(T: TableGroup, modulus: FrozenSet[int]) -> FrozenSet[int]:
    return frozenset(
        x
        for x in range(T.order)
        if all(T.comm(x, g) in modulus for g in range(T.order))
    )


@dataclass
class EquivReport:
    discrepancies: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.discrepancies

    def add(self, msg: str) -> None:
        self.discrepancies.append(msg)


def check_equiv(G: PcGroup, T: TableGroup) -> EquivReport:
    """Compare pc-engine arithmetic, subgroup ops, and series with the table."""
    from . import series as series_mod
    from .pcgroup import (
        centralizer_mod,
        comm_subgroup,
        full_subgroup,
        trivial_subgroup,
    )

    rep = EquivReport()
    bad = T.associativity_violation()
    if bad is not None:
        i, j, k = bad
        rep.add(
            f"table not associative at ({T.labels[i]}, {T.labels[j]}, {T.labels[k]})"
        )
        return rep
    ident = T.identity
    if T.labels[ident] != G.identity:
        rep.add("identity mismatch")
    for i, x in enumerate(T.labels):
        if T.labels[T.inv[i]] != G.inverse(x):
            rep.add(f"inverse mismatch at {x}")
            break
    # commutators on all pairs for small orders, a fixed sample above
    pairs: List[Tuple[int, int]]
    if T.order <= 128:
        pairs = list(itertools.product(range(T.order), repeat=2))
    else:
        rng = np.random.default_rng(1)
        pairs = [
            (int(a), int(b))
            for a, b in zip(
                rng.integers(0, T.order, 4000), rng.integers(0, T.order, 4000)
            )
        ]
    for i, j in pairs:
        if T.labels[T.comm(i, j)] != G.commutator(T.labels[i], T.labels[j]):
            rep.add(f"commutator mismatch at ({T.labels[i]}, {T.labels[j]})")
            break
    # subgroup machinery vs index-set closure
    full = full_subgroup(G)
    if full.order != T.order:
        rep.add(f"full subgroup order {full.order} != {T.order}")
    derived_pc = comm_subgroup(full, full)
    derived_tab = brute_comm_set(T, frozenset(range(T.order)), frozenset(range(T.order)))
    if frozenset(T.index[x] for x in derived_pc.elements()) != derived_tab:
        rep.add("derived subgroup mismatch")
    center_pc = centralizer_mod(G, full, trivial_subgroup(G))
    center_tab = brute_center_mod(T, frozenset({ident}))
    if frozenset(T.index[x] for x in center_pc.elements()) != center_tab:
        rep.add("center mismatch")
    # series, order by order
    gamma_tab, zeta_tab = brute_series(T)
    lc = series_mod.lower_central(G)
    for i, g_set in enumerate(gamma_tab, start=1):
        got = lc.value((i,))
        if frozenset(T.index[x] for x in got.elements()) != g_set:
            rep.add(f"gamma_{i} mismatch")
            break
    uc = series_mod.upper_central(G)
    for i, z_set in enumerate(zeta_tab):
        got = uc.value((i,))
        if frozenset(T.index[x] for x in got.elements()) != z_set:
            rep.add(f"zeta^{i} mismatch")
            break
    return rep
