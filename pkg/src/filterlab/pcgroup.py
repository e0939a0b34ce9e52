"""Finite p-group arithmetic via consistent polycyclic presentations.

A group of order p^n is presented on generators g1..gn with power relations
g_i^p = w_i and commutator relations [g_j, g_i] = w_ji (j > i), where every
relation word uses only generators of index strictly greater than the
left-hand side's largest index.  The chain G_k = <g_k, ..., g_n> is then a
central series and collection from the left terminates structurally.

Elements are exponent vectors (tuples of length n, entries in [0, p)).
Subgroups carry a canonical induced generating sequence (igs): echelonised by
leading depth, leading exponent 1, and zero entries at the depths of deeper
igs members.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Word = Tuple[Tuple[int, int], ...]  # ((generator index 1-based, exponent), ...)
Elem = Tuple[int, ...]


class PcgError(ValueError):
    """Malformed or inconsistent pc presentation."""


class PcgSyntaxError(PcgError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PcGroup:
    """Immutable pc presentation with collection-based arithmetic."""

    def __init__(
        self,
        p: int,
        n: int,
        pow_words: Optional[Dict[int, Word]] = None,
        comm_words: Optional[Dict[Tuple[int, int], Word]] = None,
        check: bool = True,
        name: str = "",
    ):
        if not _is_prime(p):
            raise PcgError(f"p = {p} is not prime")
        if n < 0:
            raise PcgError("generator count must be non-negative")
        self.p = p
        self.n = n
        self.name = name
        self.pow_words: Dict[int, Word] = {}
        self.comm_words: Dict[Tuple[int, int], Word] = {}
        for i, w in (pow_words or {}).items():
            w = tuple(w)
            self._check_relation_word(w, i, f"pow {i}")
            if w:
                self.pow_words[i] = w
        for (j, i), w in (comm_words or {}).items():
            if not (1 <= i < j <= n):
                raise PcgError(f"comm {j} {i}: need n >= j > i >= 1")
            w = tuple(w)
            self._check_relation_word(w, j, f"comm {j} {i}")
            if w:
                self.comm_words[(j, i)] = w
        self.identity: Elem = (0,) * n
        self.factors: List[Tuple[int, "PcGroup"]] = []  # (offset, factor) when built as a direct product
        self._mult_cache: Dict[Tuple[Elem, int], Elem] = {}
        self._inv_words: Dict[int, Word] = {}
        for k in range(n, 0, -1):
            self._inv_words[k] = ((k, self.p - 1),) + self._invert_word(
                self.pow_words.get(k, ())
            )
        if check and n > 0:
            bad = self.consistency_violations()
            if bad:
                raise PcgError("inconsistent presentation: " + bad[0])

    def _check_relation_word(self, w: Word, above: int, what: str) -> None:
        for k, e in w:
            if not (1 <= k <= self.n):
                raise PcgError(f"{what}: generator index {k} out of range")
            if k <= above:
                raise PcgError(
                    f"{what}: relation word may only use generators of index > {above}"
                )

    @property
    def order(self) -> int:
        return self.p ** self.n

    # -- collection ------------------------------------------------------

    def _invert_word(self, w: Word) -> Word:
        # inverse of a word as positive letters; letters of w have indices whose
        # _inv_words entries are already built (descending construction order)
        out: List[Tuple[int, int]] = []
        for k, e in reversed(w):
            if e >= 0:
                for _ in range(e):
                    out.extend(self._inv_words[k])
            else:
                out.extend([(k, 1)] * (-e))
        return tuple(out)

    def _mult_gen(self, x: Elem, k: int) -> Elem:
        """Normal form of x * g_k."""
        key = (x, k)
        hit = self._mult_cache.get(key)
        if hit is not None:
            return hit
        p = self.p
        if all(x[m] == 0 for m in range(k, self.n)):
            e = x[k - 1] + 1
            if e < p:
                res = x[: k - 1] + (e,) + x[k:]
            else:
                base = x[: k - 1] + (0,) + x[k:]
                res = self.mult_word(base, self.pow_words.get(k, ()))
        else:
            head = x[:k] + (0,) * (self.n - k)
            acc = self._mult_gen(head, k)
            for m in range(k + 1, self.n + 1):
                e = x[m - 1]
                if e == 0:
                    continue
                comm = self.comm_words.get((m, k), ())
                for _ in range(e):
                    acc = self._mult_gen(acc, m)
                    if comm:
                        acc = self.mult_word(acc, comm)
            res = acc
        self._mult_cache[key] = res
        return res

    def mult_word(self, x: Elem, w: Iterable[Tuple[int, int]]) -> Elem:
        """Normal form of x times a word (letters with any integer exponents)."""
        for k, e in w:
            if e >= 0:
                for _ in range(e):
                    x = self._mult_gen(x, k)
            else:
                for _ in range(-e):
                    for m, f in self._inv_words[k]:
                        for _ in range(f):
                            x = self._mult_gen(x, m)
        return x

    def collect(self, word: Iterable[Tuple[int, int]]) -> Elem:
        """Unique normal form of an arbitrary word in the generators."""
        x = self.identity
        for k, e in word:
            if not (1 <= k <= self.n):
                raise PcgError(f"generator index {k} out of range")
            x = self.mult_word(x, ((k, e),))
        return x

    def multiply(self, x: Elem, y: Elem) -> Elem:
        self._check_elem(x)
        self._check_elem(y)
        for k in range(1, self.n + 1):
            for _ in range(y[k - 1]):
                x = self._mult_gen(x, k)
        return x

    def inverse(self, x: Elem) -> Elem:
        self._check_elem(x)
        acc = self.identity
        for k in range(self.n, 0, -1):
            for _ in range(x[k - 1]):
                acc = self.mult_word(acc, self._inv_words[k])
        return acc

    def power(self, x: Elem, e: int) -> Elem:
        if e < 0:
            return self.power(self.inverse(x), -e)
        acc = self.identity
        for _ in range(e):
            acc = self.multiply(acc, x)
        return acc

    def commutator(self, x: Elem, y: Elem) -> Elem:
        """[x, y] = x^-1 y^-1 x y."""
        xi = self.inverse(x)
        yi = self.inverse(y)
        return self.multiply(self.multiply(self.multiply(xi, yi), x), y)

    def conjugate(self, x: Elem, g: Elem) -> Elem:
        """x^g = g^-1 x g."""
        return self.multiply(self.multiply(self.inverse(g), x), g)

    def generator(self, k: int) -> Elem:
        if not (1 <= k <= self.n):
            raise PcgError(f"generator index {k} out of range")
        return tuple(1 if m == k else 0 for m in range(1, self.n + 1))

    def generators(self) -> List[Elem]:
        return [self.generator(k) for k in range(1, self.n + 1)]

    def elements(self) -> Iterable[Elem]:
        """All p^n exponent vectors in lexicographic order."""
        import itertools

        for v in itertools.product(range(self.p), repeat=self.n):
            yield v

    def _check_elem(self, x: Elem) -> None:
        if len(x) != self.n:
            raise PcgError(f"element length {len(x)} does not match n = {self.n}")

    # -- consistency -----------------------------------------------------

    def consistency_violations(self, limit: int = 1) -> List[str]:
        """Overlap conditions of the rewriting system; empty list means consistent."""
        out: List[str] = []
        gens = self.generators()

        def record(msg: str) -> bool:
            out.append(msg)
            return len(out) >= limit

        for i in range(1, self.n + 1):
            gi = gens[i - 1]
            gp = self.power(gi, self.p)
            if self.multiply(gi, gp) != self.multiply(gp, gi):
                if record(f"g{i} * g{i}^p != g{i}^p * g{i}"):
                    return out
        for j in range(2, self.n + 1):
            for i in range(1, j):
                gi, gj = gens[i - 1], gens[j - 1]
                lhs = self.multiply(self.power(gj, self.p - 1), self.multiply(gj, gi))
                if self.multiply(self.power(gj, self.p), gi) != lhs:
                    if record(f"overlap g{j}^p . g{i}"):
                        return out
                rhs = self.multiply(self.multiply(gj, gi), self.power(gi, self.p - 1))
                if self.multiply(gj, self.power(gi, self.p)) != rhs:
                    if record(f"overlap g{j} . g{i}^p"):
                        return out
        for k in range(3, self.n + 1):
            for j in range(2, k):
                for i in range(1, j):
                    gk, gj, gi = gens[k - 1], gens[j - 1], gens[i - 1]
                    a = self.multiply(gk, self.multiply(gj, gi))
                    b = self.multiply(self.multiply(gk, gj), gi)
                    if a != b:
                        if record(f"overlap g{k} g{j} g{i}"):
                            return out
        return out

    def __repr__(self) -> str:
        tag = self.name or f"p{self.p}n{self.n}"
        return f"PcGroup({tag}, order={self.order})"


# -- subgroups -------------------------------------------------------------


def depth(x: Elem) -> int:
    """1-based index of the first nonzero exponent; 0 for the identity."""
    for i, e in enumerate(x):
        if e:
            return i + 1
    return 0


class Subgroup:
    """Subgroup given by a canonical induced generating sequence."""

    def __init__(self, group: PcGroup, igs: Sequence[Elem]):
        self.group = group
        self.igs: Tuple[Elem, ...] = tuple(igs)

    @property
    def order(self) -> int:
        return self.group.p ** len(self.igs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.group is other.group
            and self.igs == other.igs
        )

    def __hash__(self) -> int:
        return hash((id(self.group), self.igs))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order})"

    def contains(self, x: Elem) -> bool:
        return sift(self.group, self.igs, x) == self.group.identity

    def is_subset(self, other: "Subgroup") -> bool:
        self._check_parent(other)
        return all(other.contains(h) for h in self.igs)

    def join(self, other: "Subgroup") -> "Subgroup":
        self._check_parent(other)
        return subgroup_from_gens(self.group, list(self.igs) + list(other.igs))

    def meet(self, other: "Subgroup") -> "Subgroup":
        """Intersection by enumerating the smaller subgroup's elements."""
        self._check_parent(other)
        small, big = (self, other) if self.order <= other.order else (other, self)
        gens = [x for x in small.elements() if big.contains(x)]
        return subgroup_from_gens(self.group, gens)

    def elements(self) -> List[Elem]:
        """All elements, as products of igs powers in normal order."""
        import itertools

        G = self.group
        out = [G.identity]
        for h in reversed(self.igs):
            powers = [G.identity]
            for _ in range(G.p - 1):
                powers.append(G.multiply(powers[-1], h))
            out = [G.multiply(pw, x) for pw in powers for x in out]
        return out

    def random_element(self, rng) -> Elem:
        G = self.group
        x = G.identity
        for h in self.igs:
            x = G.multiply(x, G.power(h, rng.randrange(G.p)))
        return x

    def is_normal(self) -> bool:
        G = self.group
        return all(
            self.contains(G.conjugate(h, g))
            for h in self.igs
            for g in G.generators()
        )

    def _check_parent(self, other: "Subgroup") -> None:
        if self.group is not other.group:
            raise PcgError("subgroups have different parent groups")


def sift(G: PcGroup, igs: Sequence[Elem], x: Elem) -> Elem:
    """Reduce x against an echelonised igs; identity iff x is in the span."""
    by_depth = {depth(h): h for h in igs}
    while x != G.identity:
        d = depth(x)
        h = by_depth.get(d)
        if h is None:
            return x
        k = (x[d - 1] * pow(h[d - 1], G.p - 2, G.p)) % G.p
        x = G.multiply(G.power(G.inverse(h), k), x)
    return x


def _canonicalize_igs(G: PcGroup, by_depth: Dict[int, Elem]) -> Tuple[Elem, ...]:
    # Normalise leading exponents to 1, then clear deeper pivot coordinates
    # top-down; within G_d the pivot coordinate of a product is additive, so
    # the result is the unique fully reduced igs of the subgroup.
    canon: Dict[int, Elem] = {}
    for d in sorted(by_depth):
        h = by_depth[d]
        h = G.power(h, pow(h[d - 1], G.p - 2, G.p))
        canon[d] = h
    for d in sorted(canon, reverse=True):
        for d2 in sorted(x for x in canon if x > d):
            h = canon[d]
            c = h[d2 - 1]
            if c:
                canon[d] = G.multiply(h, G.power(G.inverse(canon[d2]), c))
    return tuple(canon[d] for d in sorted(canon))


def subgroup_from_gens(G: PcGroup, gens: Iterable[Elem]) -> Subgroup:
    """Closure of <gens> into an echelonised igs (noncommutative elimination)."""
    by_depth: Dict[int, Elem] = {}
    queue: List[Elem] = [tuple(x) for x in gens]
    while queue:
        x = queue.pop()
        x = sift(G, list(by_depth.values()), x)
        if x == G.identity:
            continue
        d = depth(x)
        by_depth[d] = x
        # re-close: powers and commutators must sift through the new basis
        queue.append(G.power(x, G.p))
        for h in list(by_depth.values()):
            if h != x:
                queue.append(G.commutator(x, h))
                queue.append(G.commutator(h, x))
    return Subgroup(G, _canonicalize_igs(G, by_depth))


def trivial_subgroup(G: PcGroup) -> Subgroup:
    return Subgroup(G, ())


def full_subgroup(G: PcGroup) -> Subgroup:
    return subgroup_from_gens(G, G.generators())


def comm_subgroup(H: Subgroup, K: Subgroup) -> Subgroup:
    """[H, K]: generated by igs commutators, closed under conjugation by <H, K>."""
    H._check_parent(K)
    G = H.group
    gens = [G.commutator(h, k) for h in H.igs for k in K.igs]
    S = subgroup_from_gens(G, gens)
    parent_gens = list(H.igs) + list(K.igs)
    changed = True
    while changed:
        changed = False
        for s in S.igs:
            for g in parent_gens:
                c = G.conjugate(s, g)
                if not S.contains(c):
                    S = subgroup_from_gens(G, list(S.igs) + [c])
                    changed = True
    return S


def centralizer_mod(G: PcGroup, H: Subgroup, N: Subgroup) -> Subgroup:
    """Largest K <= G with [K, H] <= N; requires N normal in G."""
    if H.group is not G or N.group is not G:
        raise PcgError("subgroup parent mismatch")
    if not N.is_normal():
        raise PcgError("N is not normal in G")
    hgens = H.igs
    members = [
        x
        for x in G.elements()
        if all(N.contains(G.commutator(x, h)) for h in hgens)
    ]
    K = subgroup_from_gens(G, members)
    assert comm_subgroup(K, H).is_subset(N)
    return K


def center(G: PcGroup) -> Subgroup:
    return centralizer_mod(G, full_subgroup(G), trivial_subgroup(G))


# -- parsing ---------------------------------------------------------------


def _parse_word(text: str, line_no: int) -> Word:
    text = text.strip()
    if not text:
        return ()
    letters: List[Tuple[int, int]] = []
    for tok in text.split():
        if not tok.startswith("g"):
            raise PcgSyntaxError(line_no, f"bad word token {tok!r}")
        body = tok[1:]
        if "^" in body:
            idx_s, exp_s = body.split("^", 1)
        else:
            idx_s, exp_s = body, "1"
        try:
            idx, exp = int(idx_s), int(exp_s)
        except ValueError:
            raise PcgSyntaxError(line_no, f"bad word token {tok!r}") from None
        if idx < 1:
            raise PcgSyntaxError(line_no, f"bad generator index in {tok!r}")
        letters.append((idx, exp))
    return tuple(letters)


def parse_pcgroup(text: str, name: str = "", check: bool = True) -> PcGroup:
    """Parse the .pcg format (see README) into a PcGroup."""
    p = None
    n = None
    pow_words: Dict[int, Word] = {}
    comm_words: Dict[Tuple[int, int], Word] = {}
    aut_lines: List[Tuple[int, str]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("aut:"):
            aut_lines.append((line_no, line))
            continue
        parts = line.split()
        head = parts[0]
        if head == "p":
            if p is not None or len(parts) != 2:
                raise PcgSyntaxError(line_no, "expected a single 'p <prime>' line")
            try:
                p = int(parts[1])
            except ValueError:
                raise PcgSyntaxError(line_no, "p must be an integer") from None
            if not _is_prime(p):
                raise PcgSyntaxError(line_no, f"p = {p} is not prime")
        elif head == "n":
            if p is None:
                raise PcgSyntaxError(line_no, "'n' line before 'p' line")
            if n is not None or len(parts) != 2:
                raise PcgSyntaxError(line_no, "expected a single 'n <count>' line")
            try:
                n = int(parts[1])
            except ValueError:
                raise PcgSyntaxError(line_no, "n must be an integer") from None
            if n < 0:
                raise PcgSyntaxError(line_no, "n must be non-negative")
        elif head == "pow":
            if n is None:
                raise PcgSyntaxError(line_no, "relation before 'n' line")
            if len(parts) < 3 or parts[2] != "=":
                raise PcgSyntaxError(line_no, "expected 'pow <i> = <word>'")
            i = _parse_rel_index(parts[1], n, line_no)
            word = _parse_word(line.split("=", 1)[1], line_no)
            _check_word_indices(word, i, n, line_no)
            if i in pow_words:
                raise PcgSyntaxError(line_no, f"duplicate pow relation for g{i}")
            pow_words[i] = word
        elif head == "comm":
            if n is None:
                raise PcgSyntaxError(line_no, "relation before 'n' line")
            if len(parts) < 4 or parts[3] != "=":
                raise PcgSyntaxError(line_no, "expected 'comm <j> <i> = <word>'")
            j = _parse_rel_index(parts[1], n, line_no)
            i = _parse_rel_index(parts[2], n, line_no)
            if j <= i:
                raise PcgSyntaxError(
                    line_no, f"comm {j} {i}: lower index on left (need j > i)"
                )
            word = _parse_word(line.split("=", 1)[1], line_no)
            _check_word_indices(word, j, n, line_no)
            if (j, i) in comm_words:
                raise PcgSyntaxError(line_no, f"duplicate comm relation for ({j},{i})")
            comm_words[(j, i)] = word
        else:
            raise PcgSyntaxError(line_no, f"unknown directive {head!r}")
    if p is None or n is None:
        raise PcgError("missing 'p' or 'n' line")
    G = PcGroup(p, n, pow_words, comm_words, check=check, name=name)
    G.aut_lines = aut_lines  # raw automorphism lines, parsed by autfilter
    return G


def _parse_rel_index(tok: str, n: int, line_no: int) -> int:
    try:
        i = int(tok)
    except ValueError:
        raise PcgSyntaxError(line_no, f"bad generator index {tok!r}") from None
    if not (1 <= i <= n):
        raise PcgSyntaxError(line_no, f"generator index {i} out of range")
    return i


def _check_word_indices(word: Word, above: int, n: int, line_no: int) -> None:
    for k, _ in word:
        if k > n:
            raise PcgSyntaxError(line_no, f"generator index {k} out of range")
        if k <= above:
            raise PcgSyntaxError(
                line_no, f"relation word uses g{k} but needs indices > {above}"
            )


def parse_pcg_file(path, check: bool = True) -> PcGroup:
    from pathlib import Path

    path = Path(path)
    return parse_pcgroup(path.read_text(), name=path.stem, check=check)


# -- direct products --------------------------------------------------------


def direct_product(G1: PcGroup, G2: PcGroup) -> PcGroup:
    """Direct product on n1 + n2 generators with trivial cross commutators."""
    if G1.p != G2.p:
        raise PcgError("direct products require the same prime")
    n1 = G1.n
    pow_words: Dict[int, Word] = {}
    comm_words: Dict[Tuple[int, int], Word] = {}
    for i, w in G1.pow_words.items():
        pow_words[i] = w
    for (j, i), w in G1.comm_words.items():
        comm_words[(j, i)] = w
    for i, w in G2.pow_words.items():
        pow_words[i + n1] = tuple((k + n1, e) for k, e in w)
    for (j, i), w in G2.comm_words.items():
        comm_words[(j + n1, i + n1)] = tuple((k + n1, e) for k, e in w)
    name = f"{G1.name or 'G1'}x{G2.name or 'G2'}"
    G = PcGroup(G1.p, n1 + G2.n, pow_words, comm_words, check=False, name=name)
    f1 = G1.factors or [(0, G1)]
    f2 = G2.factors or [(0, G2)]
    G.factors = [(off, H) for off, H in f1] + [(off + n1, H) for off, H in f2]
    return G


def embed(G: PcGroup, x: Elem, offset: int, total_n: int) -> Elem:
    """Embed a factor element into a product group's coordinates."""
    return (0,) * offset + tuple(x) + (0,) * (total_n - offset - len(x))
