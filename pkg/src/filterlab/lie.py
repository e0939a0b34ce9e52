"""Graded Lie rings from filters and graded modules from sifted layerings.

Matrix mode assumes every relevant factor is elementary abelian and encodes
structure constants as dense GF(p) tensors; integral mode works directly with
group-element coset arithmetic and needs no assumption on the factors.

Tensor index order is (s-basis, t-basis, target-basis) throughout; the
Knuth-Liebler shuffle is the pure slice transpose and the module action adds
the minus sign on top of it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import monoid as mon
from .monoid import MonoidElem
from .pcgroup import Elem, Subgroup, comm_subgroup, depth, subgroup_from_gens
from .series import Filter, Layering, verify_sift


class NonElementaryAbelianError(ValueError):
    def __init__(self, grade, what="factor"):
        super().__init__(f"{what} at grade {grade} is not elementary abelian")
        self.grade = grade


class CosetBasis:
    """GF(p) coordinates on an elementary abelian section H/N.

    Representatives are the first igs elements of H independent modulo N,
    extended greedily, so the basis is deterministic for a fixed presentation.
    With integral=True coordinates are tracked over Z instead (H/N abelian but
    not necessarily elementary); used for abelian-duality presentations.
    """

    def __init__(self, H: Subgroup, N: Subgroup, integral: bool = False):
        G = H.group
        if N.group is not G:
            raise ValueError("section subgroups have different parents")
        if not N.is_subset(H):
            raise ValueError("N is not contained in H")
        if not comm_subgroup(H, H).is_subset(N):
            raise ValueError("section H/N is not abelian")
        self.group = G
        self.p = G.p
        self.H = H
        self.N = N
        self.integral = integral
        reps: List[Elem] = []
        cur = N
        for h in H.igs:
            if not cur.contains(h):
                reps.append(h)
                cur = cur.join(subgroup_from_gens(G, [h]))
        self.reps = reps
        self.dim = len(reps)
        if integral:
            tagged = list(zip(H.igs, list(np.eye(len(H.igs), dtype=np.int64))))
            self.gens = list(H.igs)
        else:
            tagged = list(zip(reps, list(np.eye(self.dim, dtype=np.int64))))
            self.gens = reps
        for x in N.igs:
            tagged.append((x, np.zeros(len(self.gens), dtype=np.int64)))
        self._table: Dict[int, Tuple[Elem, np.ndarray]] = {}
        for x, v in tagged:
            self._insert(x, v.copy())

    def _insert(self, x: Elem, v: np.ndarray) -> None:
        G, p = self.group, self.p
        while x != G.identity:
            d = depth(x)
            slot = self._table.get(d)
            if slot is None:
                self._table[d] = (x, v)
                return
            h, w = slot
            k = (x[d - 1] * pow(h[d - 1], p - 2, p)) % p
            x = G.multiply(G.power(G.inverse(h), k), x)
            v = v - k * w
            if not self.integral:
                v %= p
        if not self.integral and (v % p).any():
            raise ValueError("dependent representative in coset basis")

    def coords(self, y: Elem) -> np.ndarray:
        """Coordinates of the class of y (y must lie in H)."""
        G, p = self.group, self.p
        v = np.zeros(len(self.gens), dtype=np.int64)
        while y != G.identity:
            d = depth(y)
            slot = self._table.get(d)
            if slot is None:
                raise ValueError(f"element {y} not in section subgroup")
            h, w = slot
            k = (y[d - 1] * pow(h[d - 1], p - 2, p)) % p
            y = G.multiply(G.power(G.inverse(h), k), y)
            v = v + k * w
        return v % p if not self.integral else v

    def lift(self, v) -> Elem:
        """A representative of the class with the given coordinates."""
        G = self.group
        x = G.identity
        for rep, c in zip(self.gens, v):
            x = G.multiply(x, G.power(rep, int(c) % G.p))
        return x

    def is_exponent_p(self) -> bool:
        return all(self.N.contains(self.group.power(h, self.p)) for h in self.H.igs)


def _component(f: Filter, s: MonoidElem) -> CosetBasis:
    cb = CosetBasis(f.value(s), f.boundary_at(s))
    if not cb.is_exponent_p():
        raise NonElementaryAbelianError(s)
    return cb


@dataclass
class GradedLieRing:
    filter: Filter
    p: int
    comps: Dict[MonoidElem, CosetBasis]
    brackets: Dict[Tuple[MonoidElem, MonoidElem], np.ndarray] = field(default_factory=dict)

    def dim(self, s: MonoidElem) -> int:
        c = self.comps.get(s)
        return c.dim if c is not None else 0

    def grades(self) -> List[MonoidElem]:
        return [s for s in self.filter.grades() if s != self.filter.monoid.zero]

    def bracket_tensor(self, s: MonoidElem, t: MonoidElem) -> np.ndarray:
        got = self.brackets.get((s, t))
        if got is not None:
            return got
        u = mon.add(s, t)
        return np.zeros((self.dim(s), self.dim(t), self.dim(u)), dtype=np.int64)


def graded_lie_ring(f: Filter) -> GradedLieRing:
    """Structure constants of L_*(phi) by commutating coset representatives."""
    G = f.group
    comps = {s: _component(f, s) for s in f.grades() if s != f.monoid.zero}
    L = GradedLieRing(f, G.p, comps)
    for s, cs in comps.items():
        if cs.dim == 0:
            continue
        for t, ct in comps.items():
            if ct.dim == 0:
                continue
            u = mon.add(s, t)
            cu = comps.get(u)
            if cu is None or cu.dim == 0:
                continue
            T = np.zeros((cs.dim, ct.dim, cu.dim), dtype=np.int64)
            for a, x in enumerate(cs.reps):
                for b, y in enumerate(ct.reps):
                    T[a, b] = cu.coords(G.commutator(x, y))
            if T.any():
                L.brackets[(s, t)] = T
    return L


def check_alternating(L: GradedLieRing) -> List[str]:
    """x o x = 0 on each grade and antisymmetry across grade pairs."""
    out = []
    p = L.p
    for s in L.comps:
        B = L.bracket_tensor(s, s)
        for a in range(L.dim(s)):
            if B[a, a].any():
                out.append(f"x o x != 0 at grade {s}, basis {a}")
    for s in L.comps:
        for t in L.comps:
            B1 = L.bracket_tensor(s, t)
            B2 = L.bracket_tensor(t, s)
            if B1.size and ((B1 + np.transpose(B2, (1, 0, 2))) % p).any():
                out.append(f"antisymmetry fails at grades ({s}, {t})")
    return out


def check_jacobi(L: GradedLieRing) -> List[str]:
    """[[x,y],z] + [[y,z],x] + [[z,x],y] = 0 over all basis triples."""
    out = []
    p = L.p
    grades = [s for s in L.comps if L.dim(s)]
    for s in grades:
        for t in grades:
            for u in grades:
                total = mon.add(mon.add(s, t), u)
                dT = L.dim(total)
                if dT == 0:
                    continue
                # ((s,t),u) + ((t,u),s) + ((u,s),t)
                term1 = np.einsum(
                    "abk,kcd->abcd", L.bracket_tensor(s, t), L.bracket_tensor(mon.add(s, t), u)
                )
                term2 = np.einsum(
                    "bck,kad->bcad", L.bracket_tensor(t, u), L.bracket_tensor(mon.add(t, u), s)
                )
                term3 = np.einsum(
                    "cak,kbd->cabd", L.bracket_tensor(u, s), L.bracket_tensor(mon.add(u, s), t)
                )
                total_sum = (
                    term1
                    + np.transpose(term2, (2, 0, 1, 3))
                    + np.transpose(term3, (1, 2, 0, 3))
                ) % p
                if total_sum.any():
                    idx = np.argwhere(total_sum)[0]
                    out.append(f"jacobi fails at grades ({s},{t},{u}), basis {tuple(idx[:3])}")
    return out


# -- graded modules ----------------------------------------------------------


def shuffle(tensor: np.ndarray) -> np.ndarray:
    """Knuth-Liebler shuffle of U x V -> W into U x hom(W,Q) -> hom(V,Q).

    Pure slice transpose: out[u, w, v] = tensor[u, v, w].  Signs belong to the
    module action, not to the shuffle.
    """
    return np.transpose(np.asarray(tensor), (0, 2, 1))


@dataclass
class GradedModule:
    ring: GradedLieRing
    layering: Layering
    strata: Dict[MonoidElem, CosetBasis]
    mixed: Dict[Tuple[MonoidElem, MonoidElem], np.ndarray] = field(default_factory=dict)
    actions: Dict[Tuple[MonoidElem, MonoidElem], np.ndarray] = field(default_factory=dict)

    def stratum_dim(self, s: MonoidElem) -> int:
        c = self.strata.get(s)
        return c.dim if c is not None else 0

    def action_tensor(self, s: MonoidElem, t: MonoidElem) -> np.ndarray:
        got = self.actions.get((s, t))
        if got is not None:
            return got
        return np.zeros(
            (self.ring.dim(s), self.stratum_dim(t), self.stratum_dim(mon.add(s, t))),
            dtype=np.int64,
        )


def graded_module(f: Filter, l: Layering, ring: Optional[GradedLieRing] = None) -> GradedModule:
    """Dual strata of a sifted layering as a graded module over L_*(phi).

    Strata are taken at every box grade including 0 (for the upper central
    series the grade-i stratum is zeta^{i+1}/zeta^i, so grade 0 carries the
    centre); the ring side keeps L_0 = 0.
    """
    sift_bad = verify_sift(f, l)
    if sift_bad:
        raise ValueError(f"filter does not sift layering: {sift_bad[0]}")
    G = f.group
    p = G.p
    if ring is None:
        ring = graded_lie_ring(f)
    strata: Dict[MonoidElem, CosetBasis] = {}
    for s in l.grades():
        cb = CosetBasis(l.boundary_at(s), l.value(s))
        if not cb.is_exponent_p():
            raise NonElementaryAbelianError(s, what="stratum")
        strata[s] = cb
    M = GradedModule(ring, l, strata)
    for s, cs in ring.comps.items():
        if cs.dim == 0:
            continue
        for t, dual_t in strata.items():
            if dual_t.dim == 0:
                continue
            st = mon.add(s, t)
            src = strata.get(st)
            if src is None or src.dim == 0:
                continue
            # mixed product o : L_s(phi) x stratum(s+t) -> stratum(t)
            T = np.zeros((cs.dim, src.dim, dual_t.dim), dtype=np.int64)
            for a, x in enumerate(cs.reps):
                for b, y in enumerate(src.reps):
                    T[a, b] = dual_t.coords(G.commutator(x, y))
            M.mixed[(s, t)] = T
            M.actions[(s, t)] = (-shuffle(T)) % p
    return M


def check_module_law(L: GradedLieRing, M: GradedModule) -> List[str]:
    """(x o y) . f = x . (y . f) - y . (x . f) over all basis combinations."""
    out = []
    p = L.p
    ring_grades = [s for s in L.comps if L.dim(s)]
    strat_grades = [u for u in M.strata if M.stratum_dim(u)]
    for s in ring_grades:
        for t in ring_grades:
            for u in strat_grades:
                stu = mon.add(mon.add(s, t), u)
                if M.stratum_dim(stu) == 0:
                    continue
                lhs = np.einsum(
                    "abc,cgk->abgk",
                    L.bracket_tensor(s, t),
                    M.action_tensor(mon.add(s, t), u),
                )
                t1 = np.einsum(
                    "bgh,ahk->abgk",
                    M.action_tensor(t, u),
                    M.action_tensor(s, mon.add(t, u)),
                )
                t2 = np.einsum(
                    "agh,bhk->abgk",
                    M.action_tensor(s, u),
                    M.action_tensor(t, mon.add(s, u)),
                )
                if ((lhs - t1 + t2) % p).any():
                    out.append(f"module law fails at grades ({s},{t},{u})")
    return out


# -- integral (coset arithmetic) law checks ----------------------------------


def check_module_law_integral(
    f: Filter, l: Layering, trials: int = 500, seed: int = 7
) -> List[str]:
    """Prop-style law [[x,y],z] = [x,[y,z]] [y,[x,z]]^-1 mod pi^u on random data.

    Works on raw group elements, so no elementary-abelian assumption is made.
    """
    G = f.group
    rng = random.Random(seed)
    grades = [s for s in f.grades() if s != f.monoid.zero]
    strat_grades = l.grades()
    out: List[str] = []
    if not grades or not strat_grades:
        return out
    for trial in range(trials):
        s = rng.choice(grades)
        t = rng.choice(grades)
        u = rng.choice(strat_grades)
        x = f.value(s).random_element(rng)
        y = f.value(t).random_element(rng)
        z = l.boundary_at(mon.add(mon.add(s, t), u)).random_element(rng)
        lhs = G.commutator(G.commutator(x, y), z)
        r1 = G.commutator(x, G.commutator(y, z))
        r2 = G.commutator(y, G.commutator(x, z))
        w = G.multiply(G.multiply(lhs, r2), G.inverse(r1))
        if not l.value(u).contains(w):
            out.append(f"integral module law fails at ({s},{t},{u}) trial {trial}")
    return out


def check_biadditive_integral(
    f: Filter, l: Layering, trials: int = 200, seed: int = 11
) -> List[str]:
    """(xbar + ybar) o zbar = xbar o zbar + ybar o zbar mod pi^t on random lifts."""
    G = f.group
    rng = random.Random(seed)
    grades = [s for s in f.grades() if s != f.monoid.zero]
    strat_grades = l.grades()
    out: List[str] = []
    for trial in range(trials):
        s = rng.choice(grades)
        t = rng.choice(strat_grades)
        x = f.value(s).random_element(rng)
        y = f.value(s).random_element(rng)
        z = l.boundary_at(mon.add(s, t)).random_element(rng)
        lhs = G.commutator(G.multiply(x, y), z)
        rhs = G.multiply(G.commutator(x, z), G.commutator(y, z))
        w = G.multiply(lhs, G.inverse(rhs))
        if not l.value(t).contains(w):
            out.append(f"biadditivity fails at ({s},{t}) trial {trial}")
    return out


def check_operator_grade_action(f: Filter) -> List[str]:
    """The boundary at 0 acts trivially on every component: [phi_s, d_0 phi] <= d_s phi."""
    out = []
    b0 = f.boundary_at(f.monoid.zero)
    for s in f.grades():
        if s == f.monoid.zero:
            continue
        c = comm_subgroup(f.value(s), b0)
        if not c.is_subset(f.boundary_at(s)):
            out.append(f"operator action not trivial at grade {s}")
    return out


# -- finite abelian duality ---------------------------------------------------


def _snf(mat: List[List[int]]) -> Tuple[List[List[int]], List[List[int]], List[List[int]]]:
    """Smith normal form with transforms: U @ A @ V = D (all python ints)."""
    a = [row[:] for row in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(i, j, c):  # row i += c * row j
        a[i] = [x + c * y for x, y in zip(a[i], a[j])]
        U[i] = [x + c * y for x, y in zip(U[i], U[j])]

    def add_col(i, j, c):  # col i += c * col j
        for r in a:
            r[i] += c * r[j]
        for r in V:
            r[i] += c * r[j]

    def neg_row(i):
        a[i] = [-x for x in a[i]]
        U[i] = [-x for x in U[i]]

    k = 0
    while k < min(m, n):
        # move a nonzero pivot of minimal absolute value to (k, k)
        piv = None
        best = None
        for i in range(k, m):
            for j in range(k, n):
                if a[i][j] and (best is None or abs(a[i][j]) < best):
                    best = abs(a[i][j])
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(k, piv[0])
        swap_cols(k, piv[1])
        done = False
        while not done:
            done = True
            for i in range(k + 1, m):
                if a[i][k]:
                    add_row(i, k, -(a[i][k] // a[k][k]))
                    if a[i][k]:
                        swap_rows(k, i)
                        done = False
            for j in range(k + 1, n):
                if a[k][j]:
                    add_col(j, k, -(a[k][j] // a[k][k]))
                    if a[k][j]:
                        swap_cols(k, j)
                        done = False
        if a[k][k] < 0:
            neg_row(k)
        k += 1
    # relation matrices here have p-power determinant, so the diagonal entries
    # are p-powers already; coordinates are taken per position, and invariant
    # factors are reported sorted, so the divisibility chain is not enforced
    return a, U, V


@dataclass
class DualAbelian:
    """hom(A, Q/Z) for a finite abelian p-section A = H/N, with the evaluation pairing."""

    invariants: List[int]
    _basis: CosetBasis
    _V: List[List[int]]
    _diag: List[int]

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariants:
            out *= d
        return out

    def invariant_coords(self, x: Elem) -> Tuple[int, ...]:
        v = self._basis.coords(x)
        m = len(self._diag)
        out = []
        for j in range(m):
            c = sum(int(v[i]) * self._V[i][j] for i in range(m))
            d = self._diag[j]
            out.append(c % d if d > 1 else 0)
        return tuple(out[j] for j in range(m) if self._diag[j] > 1)

    @property
    def factor_orders(self) -> List[int]:
        """Cyclic factor orders in coordinate position order."""
        return [d for d in self._diag if d > 1]

    def pairing(self, x: Elem, functional: Tuple[int, ...]) -> Fraction:
        """Evaluation <x, f> in Q/Z, as a fraction in [0, 1)."""
        coords = self.invariant_coords(x)
        total = Fraction(0)
        for c, fc, d in zip(coords, functional, self.factor_orders):
            total += Fraction(int(c) * int(fc), d)
        frac = total - int(total)
        return frac if frac >= 0 else frac + 1


def dual_abelian(H: Subgroup, N: Subgroup) -> DualAbelian:
    """Invariant factors and Q/Z pairing of the finite abelian section H/N."""
    cb = CosetBasis(H, N, integral=True)
    G = H.group
    m = len(cb.gens)
    if m == 0:
        return DualAbelian([], cb, [], [])
    # relation lattice of the section on the igs(H) generator classes:
    # p-th power rows plus one row per igs(N) member (its class is trivial)
    rel = []
    for i, x in enumerate(cb.gens):
        c = cb.coords(G.power(x, G.p))
        rel.append([G.p * int(i == j) - int(c[j]) for j in range(m)])
    for n in N.igs:
        rel.append([int(c) for c in cb.coords(n)])
    D, U, V = _snf(rel)
    diag = [abs(D[i][i]) for i in range(m)]
    index = 1
    for d in diag:
        index *= max(d, 1)
    if index * N.order != H.order:
        raise ArithmeticError("abelian section presentation has wrong index")
    invariants = sorted(d for d in diag if d > 1)
    return DualAbelian(invariants, cb, V, diag)
