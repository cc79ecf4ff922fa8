"""Finite p-groups from consistent polycyclic presentations.

Every generator has relative order p, so the group has order p^n and each
element a unique normal word g1^e1 ... gn^en with 0 <= ei < p, stored as the
exponent tuple (e1, ..., en).  Stored relations:

    power:      gi^p   = tail word in g_{i+1} .. g_n
    commutator: [gj,gi] = tail word in g_{j+1} .. g_n   (i < j)

with [x, y] = x^-1 y^-1 x y and the rewriting rule gj gi -> gi gj [gj,gi];
words are collected from the left.  Consistency is not assumed: after
collection the multiplication on normal words is checked to be a group law,
and a PresentationError is raised otherwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .abgroup import (AbelianGroup, Homomorphism, Subgroup, abelian_structure)


class PresentationError(ValueError):
    pass


_COLLECT_CAP = 10_000_000


def _word_letters(word):
    """Expand ((gen, exp), ...) into single generator letters."""
    out = []
    for g, e in word:
        out.extend([g] * e)
    return out


class PcGroup:
    """Finite p-group with a consistent polycyclic presentation.

    power_tails[i] is the word for g_i^p; conj_tails[(j, i)] (j > i) the word
    for [g_j, g_i], both as tuples of (generator_index, exponent) with
    generator indices 0-based and strictly above i resp. j.  Missing
    commutator entries mean the generators commute.
    """

    def __init__(self, p, ngens, power_tails, conj_tails, name=None):
        self.p = p
        self.n = ngens
        self.name = name
        self.power_tails = [tuple(power_tails.get(i, ())) if isinstance(power_tails, dict)
                            else tuple(power_tails[i]) for i in range(ngens)]
        self.conj_tails = {k: tuple(v) for k, v in conj_tails.items() if v}
        self._validate_tails()
        self._elements = list(itertools.product(range(p), repeat=ngens))
        self._gen_table = None   # dict element -> list over gens
        self._table = None       # dict (u, v) -> u*v
        self._inverse = None
        self._derived = None
        self._abelianization = None
        self._build()

    # -- presentation plumbing -------------------------------------------

    def _validate_tails(self):
        for i, tail in enumerate(self.power_tails):
            for g, e in tail:
                if not (i < g < self.n) or not (1 <= e < self.p):
                    raise PresentationError(
                        "power tail of g%d uses invalid letter g%d^%d" % (i + 1, g + 1, e))
        for (j, i), tail in self.conj_tails.items():
            if not (0 <= i < j < self.n):
                raise PresentationError("commutator [g%d,g%d] out of order" % (j + 1, i + 1))
            for g, e in tail:
                if not (j < g < self.n) or not (1 <= e < self.p):
                    raise PresentationError(
                        "commutator tail [g%d,g%d] uses invalid letter" % (j + 1, i + 1))

    def _collect_letters(self, letters):
        """Collection from the left on a list of single generator letters."""
        w = list(letters)
        p = self.p
        steps = 0
        while True:
            steps += 1
            if steps > _COLLECT_CAP:
                raise PresentationError("collection did not terminate")
            # leftmost violation of normality
            pos = -1
            kind = None
            run = 1
            for k in range(len(w)):
                if k + 1 < len(w) and w[k] > w[k + 1]:
                    if pos == -1 or k < pos:
                        pos, kind = k, "swap"
                    break
                run = run + 1 if k and w[k] == w[k - 1] else 1
                if run == p:
                    pos, kind = k - p + 1, "power"
                    break
            if kind is None:
                break
            if kind == "swap":
                j, i = w[pos], w[pos + 1]
                tail = self.conj_tails.get((j, i), ())
                w[pos:pos + 2] = [i, j] + _word_letters(tail)
            else:
                i = w[pos]
                w[pos:pos + p] = _word_letters(self.power_tails[i])
        vec = [0] * self.n
        for g in w:
            vec[g] += 1
        return tuple(vec)

    def _build(self):
        p, n = self.p, self.n
        gen_table = {}
        for u in self._elements:
            letters = []
            for i, e in enumerate(u):
                letters.extend([i] * e)
            row = []
            for g in range(n):
                row.append(self._collect_letters(letters + [g]))
            gen_table[u] = row
        self._gen_table = gen_table

        table = {}
        for u in self._elements:
            for v in self._elements:
                w = u
                for i, e in enumerate(v):
                    for _ in range(e):
                        w = gen_table[w][i]
                table[(u, v)] = w
        self._table = table

        ident = self.identity
        inverse = {}
        for u in self._elements:
            for v in self._elements:
                if table[(u, v)] == ident:
                    inverse[u] = v
                    break
        self._inverse = inverse

        # consistency: the collected multiplication must be a group law
        if len(inverse) != len(self._elements):
            raise PresentationError("presentation inconsistent: missing inverses")
        for g in range(n):
            gv = self._gen_vec(g)
            images = {table[(u, gv)] for u in self._elements}
            if len(images) != len(self._elements):
                raise PresentationError(
                    "presentation inconsistent: right multiplication not bijective")
        for u in self._elements:
            for v in self._elements:
                uv = table[(u, v)]
                for g in range(n):
                    if gen_table[uv][g] != table[(u, gen_table[v][g])]:
                        raise PresentationError(
                            "presentation inconsistent: associativity fails")

    def _gen_vec(self, i):
        return tuple(1 if j == i else 0 for j in range(self.n))

    # -- group operations -------------------------------------------------

    @property
    def identity(self):
        return (0,) * self.n

    @property
    def order(self):
        return self.p ** self.n

    def elements(self):
        return list(self._elements)

    def generators(self):
        return [self._gen_vec(i) for i in range(self.n)]

    def mult(self, u, v):
        return self._table[(u, v)]

    def inv(self, u):
        return self._inverse[u]

    def power(self, u, k):
        if k < 0:
            return self.power(self.inv(u), -k)
        w = self.identity
        for _ in range(k):
            w = self.mult(w, u)
        return w

    def element_order(self, u):
        o = 1
        w = u
        while w != self.identity:
            w = self.mult(w, u)
            o += 1
        return o

    def commutator(self, x, y):
        return self.mult(self.mult(self.inv(x), self.inv(y)), self.mult(x, y))

    def conjugate(self, x, t):
        """t^-1 x t."""
        return self.mult(self.mult(self.inv(t), x), t)

    def collect(self, word):
        """Normal form of a word given as ((gen_index, exponent), ...);
        exponents may be any integers."""
        w = self.identity
        for g, e in word:
            if not 0 <= g < self.n:
                raise PresentationError("letter g%d out of range" % (g + 1))
            w = self.mult(w, self.power(self._gen_vec(g), e))
        return w

    # -- subgroup machinery ------------------------------------------------

    def closure(self, gens):
        """Subgroup generated by the given elements, as a frozenset."""
        seen = {self.identity}
        frontier = [self.identity]
        gens = [g for g in gens]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mult(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def derived_subgroup(self):
        if self._derived is None:
            comms = {self.commutator(x, y)
                     for x in self._elements for y in self._elements}
            self._derived = self.closure(comms)
        return self._derived

    def derived_of(self, subset):
        subset = list(subset)
        comms = {self.commutator(x, y) for x in subset for y in subset}
        return self.closure(comms)

    def is_metabelian(self):
        der = self.derived_subgroup()
        return all(self.mult(x, y) == self.mult(y, x) for x in der for y in der)

    def center_size(self):
        return sum(1 for z in self._elements
                   if all(self.mult(z, x) == self.mult(x, z) for x in self._elements))

    def quotient_structure(self, subset_elements, normal_subgroup):
        """Abelian structure of subset/normal_subgroup (the quotient must be
        abelian).  Returns (AbelianGroup, proj element->coords, lift of each
        invariant-factor generator back to a subset element)."""
        normal = frozenset(normal_subgroup)
        rep = {}
        for x in sorted(subset_elements):
            if x in rep:
                continue
            for d in normal:
                rep[self.mult(x, d)] = x
        reps = sorted(set(rep.values()))

        def qop(a, b):
            return rep[self.mult(a, b)]

        res = abelian_structure(reps, qop, rep[self.identity])

        def proj(x):
            return res.coords[rep[x]]

        return res.group, proj, res.generators

    def abelianization(self):
        """(G/G' as AbelianGroup, projection element->coords, generator lifts)."""
        if self._abelianization is None:
            self._abelianization = self.quotient_structure(
                self._elements, self.derived_subgroup())
        return self._abelianization


@dataclass(frozen=True)
class SubgroupDescriptor:
    ambient: PcGroup = field(compare=False)
    generators: tuple
    elements: frozenset
    index: int

    @classmethod
    def from_elements(cls, G, elements):
        elements = frozenset(elements)
        if G.order % len(elements):
            raise PresentationError("subgroup order does not divide group order")
        # greedy small generating set
        gens = []
        current = {G.identity}
        for x in sorted(elements):
            if x not in current:
                gens.append(x)
                current = G.closure(gens)
        if current != elements:
            raise PresentationError("generated set not closed")
        return cls(G, tuple(gens), elements, G.order // len(elements))

    def is_normal(self):
        G = self.ambient
        return all(G.conjugate(x, t) in self.elements
                   for x in self.generators for t in G.generators())


def normalized_lines(p, r):
    """Directions in F_p^r with first nonzero coordinate 1, lexicographic."""
    out = []
    for v in itertools.product(range(p), repeat=r):
        if not any(v):
            continue
        lead = next(x for x in v if x)
        if lead != 1:
            continue
        out.append(v)
    return sorted(out)


def subgroups_index_p_above_derived(G: PcGroup):
    """The (p^r - 1)/(p - 1) subgroups of index p containing G', where r is
    the rank of G/G'.  For r = 2 they are ordered as lines of
    G/(G' G^p) = F_p^2 by normalized direction vector; otherwise as
    hyperplane functionals by normalized coefficient vector."""
    p = G.p
    A, proj, _ = G.abelianization()
    r = A.rank(p)
    if r < 1:
        raise PresentationError("G/G' must have rank >= 1")
    k = A.ngens  # == r for a p-group

    def modp(x):
        return tuple(c % p for c in proj(x))

    subs = []
    if r == 2:
        for v in normalized_lines(p, 2):
            line = {tuple((t * c) % p for c in v) for t in range(p)}
            elems = [x for x in G.elements() if modp(x) in line]
            subs.append(SubgroupDescriptor.from_elements(G, elems))
    else:
        for phi in normalized_lines(p, k):
            elems = [x for x in G.elements()
                     if sum(a * b for a, b in zip(phi, modp(x))) % p == 0]
            subs.append(SubgroupDescriptor.from_elements(G, elems))
    expected = (p ** r - 1) // (p - 1)
    assert len(subs) == expected
    return subs


def schreier_transversal(G: PcGroup, H: SubgroupDescriptor):
    """Canonical right-coset representatives of H in G by breadth-first
    search over H t g, starting at the identity coset, generators in order.
    Returns the transversal as a list; the identity is first."""
    hset = H.elements

    def coset_key(t):
        return min(G.mult(h, t) for h in hset)

    ident = G.identity
    trans = {coset_key(ident): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for t in frontier:
            for g in G.generators():
                u = G.mult(t, g)
                key = coset_key(u)
                if key not in trans:
                    trans[key] = u
                    nxt.append(u)
        frontier = nxt
    assert len(trans) == H.index
    return [trans[k] for k in sorted(trans)]


@dataclass(frozen=True)
class TransferMap:
    """The transfer (Verlagerung) G/G' -> H/H' as an explicit Homomorphism."""
    group: PcGroup = field(compare=False)
    subgroup: SubgroupDescriptor = field(compare=False)
    source: AbelianGroup
    target: AbelianGroup
    hom: Homomorphism

    def kernel(self):
        return self.hom.kernel()


def transfer_on_element(G, H, transversal, proj_H, g):
    """Image of g under the transfer, as coordinates in H/H'."""
    hset = H.elements
    total = None
    for t in transversal:
        u = G.mult(t, g)
        # find the representative of the coset H u
        for t2 in transversal:
            h = G.mult(u, G.inv(t2))
            if h in hset:
                break
        else:  # pragma: no cover
            raise PresentationError("transversal does not cover the group")
        c = proj_H(h)
        total = c if total is None else tuple(a + b for a, b in zip(total, c))
    return total if total is not None else ()


def transfer(G: PcGroup, H: SubgroupDescriptor, transversal=None) -> TransferMap:
    """Transfer map computed by the transversal product formula
    Ver(g G') = prod_i t_i g t_{sigma_g(i)}^-1 mod H'."""
    if transversal is None:
        transversal = schreier_transversal(G, H)
    else:
        hset = H.elements
        keys = {min(G.mult(h, t) for h in hset) for t in transversal}
        if len(transversal) != H.index or len(keys) != H.index:
            raise PresentationError("not a transversal")
    A_G, proj_G, gens_G = G.abelianization()
    A_H, proj_H, _ = G.quotient_structure(H.elements, G.derived_of(H.elements))[:3]
    cols = [A_H.reduce(transfer_on_element(G, H, transversal, proj_H, g))
            for g in gens_G]
    matrix = [[cols[j][i] for j in range(len(cols))] for i in range(A_H.ngens)]
    hom = Homomorphism(A_G, A_H, matrix)
    return TransferMap(G, H, A_G, A_H, hom)


@dataclass(frozen=True)
class CapitulationEntry:
    subgroup_no: int          # 1-based, canonical line order
    kernel: Subgroup
    code: int | None          # 0 full kernel, 1..p+1 line index, None = flagged

    @property
    def flagged(self):
        return self.code is None


def _line_subgroups(A: AbelianGroup, p):
    """The p+1 order-p subgroups of a rank-2 abelian p-group, in canonical
    line order of the p-torsion."""
    assert A.ngens == 2
    e1 = (A.invariant_factors[0] // p, 0)
    e2 = (0, A.invariant_factors[1] // p)
    out = []
    for v in normalized_lines(p, 2):
        gen = A.add(A.scale(v[0], e1), A.scale(v[1], e2))
        out.append(Subgroup.from_generators(A, [gen]))
    return out


def capitulation_type(G: PcGroup):
    """Transfer-kernel pattern over the p+1 index-p subgroups above G'.

    Requires rank(G/G') = 2 for the integer encoding; kernels that are
    neither a canonical line nor the full group are returned flagged."""
    p = G.p
    A, _, _ = G.abelianization()
    subs = subgroups_index_p_above_derived(G)
    lines = _line_subgroups(A, p) if A.ngens == 2 else []
    entries = []
    for i, H in enumerate(subs, start=1):
        ker = transfer(G, H).kernel()
        code = None
        if ker == Subgroup.full(A):
            code = 0
        else:
            for j, line in enumerate(lines, start=1):
                if ker == line:
                    code = j
                    break
        entries.append(CapitulationEntry(i, ker, code))
    return entries
