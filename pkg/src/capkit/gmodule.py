"""Group-algebra machinery over Z/p^m: primitive idempotents, component and
cyclic-module decompositions, the relative-extension datum coming from a
group/subgroup pair, the norm-kernel comparison predicate and the growth
classifier for norm kernels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum

from sympy import GF, Poly, symbols

from .abgroup import (AbelianGroup, Homomorphism, Subgroup, hom_power,
                      identity_hom, power_hom, zero_hom)
from .pcgroup import PcGroup, SubgroupDescriptor, transfer


class GModuleError(ValueError):
    pass


# ---------------------------------------------------------------------------
# group algebra elements and idempotents
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupAlgebraElement:
    """Element of (Z/p^m)[G] for a finite abelian G with p coprime to |G|.
    Coefficients are stored per group element tuple, reduced mod p^m."""

    group: AbelianGroup
    prime: int
    precision: int
    coeffs: tuple  # ((element, coefficient), ...) sorted, zero entries dropped

    @classmethod
    def make(cls, group, prime, precision, mapping):
        mod = prime ** precision
        items = tuple(sorted((g, c % mod) for g, c in mapping.items() if c % mod))
        return cls(group, prime, precision, items)

    def _as_dict(self):
        return dict(self.coeffs)

    @property
    def modulus(self):
        return self.prime ** self.precision

    def _check_compat(self, other):
        if (self.group, self.prime, self.precision) != \
                (other.group, other.prime, other.precision):
            raise GModuleError("group algebra mismatch")

    def __add__(self, other):
        self._check_compat(other)
        out = self._as_dict()
        for g, c in other.coeffs:
            out[g] = out.get(g, 0) + c
        return GroupAlgebraElement.make(self.group, self.prime, self.precision, out)

    def __sub__(self, other):
        self._check_compat(other)
        out = self._as_dict()
        for g, c in other.coeffs:
            out[g] = out.get(g, 0) - c
        return GroupAlgebraElement.make(self.group, self.prime, self.precision, out)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupAlgebraElement.make(
                self.group, self.prime, self.precision,
                {g: c * other for g, c in self.coeffs})
        self._check_compat(other)
        out = {}
        for g, c in self.coeffs:
            for h, d in other.coeffs:
                k = self.group.add(g, h)
                out[k] = out.get(k, 0) + c * d
        return GroupAlgebraElement.make(self.group, self.prime, self.precision, out)

    __rmul__ = __mul__

    def is_zero(self):
        return not self.coeffs

    def coefficient(self, g):
        return self._as_dict().get(self.group.reduce(g), 0)

    def reduce_precision(self, m):
        return GroupAlgebraElement.make(self.group, self.prime, m, self._as_dict())


def algebra_one(group, p, m):
    return GroupAlgebraElement.make(group, p, m, {group.zero(): 1})


def _cyclic_idempotents_modp(d, p):
    """Primitive idempotents of F_p[C_d] as coefficient lists indexed by
    exponent of the generator, one per irreducible factor of x^d - 1."""
    x = symbols("x")
    modulus = Poly(x ** d - 1, x, domain=GF(p))
    factors = Poly(x ** d - 1, x, domain=GF(p)).factor_list()[1]
    out = []
    for f, mult in factors:
        assert mult == 1
        cof = modulus.div(f)[0]
        inv = cof.invert(f)
        e = (cof * inv).rem(modulus)
        coeffs = [0] * d
        for mono, c in zip(e.monoms(), e.coeffs()):
            coeffs[mono[0]] = int(c) % p
        out.append(coeffs)
    return out


def _hensel_lift(e, target_precision):
    """Lift an idempotent of (Z/p)[G] to (Z/p^m)[G] via e <- 3e^2 - 2e^3."""
    prec = e.precision
    while prec < target_precision:
        prec = min(prec * 2, target_precision)
        e = GroupAlgebraElement.make(e.group, e.prime, prec, e._as_dict())
        e = 3 * (e * e) - 2 * (e * e * e)
    return e


def primitive_idempotents(G: AbelianGroup, p: int, m: int):
    """Pairwise orthogonal primitive idempotents of (Z/p^m)[G] summing to 1.

    Factor idempotents of the mod-p group algebra (by factoring x^d - 1 over
    F_p per cyclic invariant factor) are multiplied out over the factors and
    Hensel-lifted to precision m; characters with values outside F_p appear
    orbit-summed."""
    if G.order() % p == 0:
        raise GModuleError("prime divides the group order")
    if m < 1:
        raise GModuleError("precision must be >= 1")
    per_factor = [_cyclic_idempotents_modp(d, p) for d in G.invariant_factors]
    idems = []
    for combo in itertools.product(*per_factor):
        mapping = {}
        for g in G.elements():
            c = 1
            for coord, coeff_list in zip(g, combo):
                c = (c * coeff_list[coord]) % p
            if c:
                mapping[g] = c
        e = GroupAlgebraElement.make(G, p, 1, mapping)
        idems.append(_hensel_lift(e, m))
    return idems


# ---------------------------------------------------------------------------
# modules with abelian group action
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GModule:
    """Finite abelian p-group with an action of a finite abelian group given
    by one commuting invertible endomorphism per generator."""

    module: AbelianGroup
    acting_group: AbelianGroup
    action: tuple  # one Homomorphism per acting-group generator

    def __post_init__(self):
        object.__setattr__(self, "action", tuple(self.action))
        if len(self.action) != self.acting_group.ngens:
            raise GModuleError("need one action map per acting-group generator")
        for h in self.action:
            if h.source != self.module or h.target != self.module:
                raise GModuleError("action maps must be endomorphisms of the module")
        for a, b in itertools.combinations(self.action, 2):
            if a.compose(b) != b.compose(a):
                raise GModuleError("action maps must commute")
        ident = identity_hom(self.module)
        for h, d in zip(self.action, self.acting_group.invariant_factors):
            if hom_power(h, d) != ident:
                raise GModuleError("action does not respect acting-group orders")

    def act_element(self, g):
        """Endomorphism attached to acting-group element g."""
        out = identity_hom(self.module)
        for c, h in zip(g, self.action):
            out = hom_power(h, c).compose(out)
        return out

    def algebra_endomorphism(self, a: GroupAlgebraElement):
        if a.group != self.acting_group:
            raise GModuleError("algebra element acts through the wrong group")
        exp = self.module.exponent()
        if exp > 1 and a.modulus % exp:
            raise GModuleError("precision too low for module exponent %d" % exp)
        out = zero_hom(self.module, self.module)
        for g, c in a.coeffs:
            out = out + Homomorphism(
                self.module, self.module,
                [[c * x for x in row] for row in self.act_element(g).matrix])
        return out

    def orbit_span(self, b):
        """Smallest action-stable subgroup containing b."""
        span = Subgroup.from_generators(self.module, [b])
        while True:
            gens = span.generators()
            nxt = span
            for h in self.action:
                nxt = nxt.join(Subgroup.from_generators(
                    self.module, [h(g) for g in gens]))
            if nxt == span:
                return span
            span = nxt

    def stable(self, sub: Subgroup):
        return all(sub.contains(h(g)) for h in self.action for g in sub.generators())


def trivial_action_module(A: AbelianGroup, G: AbelianGroup):
    return GModule(A, G, tuple(identity_hom(A) for _ in range(G.ngens)))


def decompose_module(M: GModule, idempotents):
    """Internal direct product decomposition A = prod e_alpha(A)."""
    comps = [M.algebra_endomorphism(e).image() for e in idempotents]
    total = 1
    for c in comps:
        total *= c.order()
    if total != M.module.order():
        raise GModuleError("component orders do not multiply to |A|")
    for c in comps:
        if not M.stable(c):
            raise GModuleError("component is not action-stable")
    return comps


def cycle_decomposition(M: GModule):
    """Generators b_i whose orbit modules form an internal direct product
    equal to the whole module.  Greedy on element order with backtracking."""
    A = M.module
    elements = sorted(A.elements(), key=lambda x: (-A.element_order(x), x))
    full = Subgroup.full(A)
    trivial = Subgroup.trivial(A)

    dead_ends = set()

    def search(current, gens):
        if current == full:
            return gens
        if current.basis in dead_ends:
            return None
        for b in elements:
            if current.contains(b):
                continue
            span = M.orbit_span(b)
            if span.intersection(current) != trivial:
                continue
            res = search(current.join(span), gens + [b])
            if res is not None:
                return res
        dead_ends.add(current.basis)
        return None

    if A.order() == 1:
        return []
    res = search(trivial, [])
    if res is None:
        raise GModuleError("no cyclic direct decomposition found")
    return res


def is_exact_cycle(M: GModule, b):
    """For a cyclic action of order p with generator sigma and s = sigma - 1:
    whether B = span(b) satisfies B meet A^s = B^s."""
    if M.acting_group.ngens != 1:
        raise GModuleError("exactness needs a cyclic acting group")
    sigma = M.action[0]
    s = sigma - identity_hom(M.module)
    B = M.orbit_span(b)
    Bs = B.image_under(s)
    As = s.image()
    return B.intersection(As) == Bs


# ---------------------------------------------------------------------------
# the Artin relative-extension datum
# ---------------------------------------------------------------------------

class GrowthClass(Enum):
    STABLE = "stable"
    SEMI_STABLE = "semi-stable"
    WILD = "wild"
    # reserved: the taxonomy names a tame case whose defining condition is
    # not available; the classifier never returns it and evaluates the wild
    # fallback relative to the stable and semi-stable conditions only.
    UNCLASSIFIED_TAME = "unclassified-tame"


@dataclass(frozen=True)
class RelativeExtensionDatum:
    """Group-side package of a degree-p extension: class groups upstairs and
    downstairs, lift and norm between them and the Galois action upstairs.

    Invariants (theorems for catalog-derived data, merely reportable for
    synthetic data):
      norm o lift = p-th power map on A_K
      lift o norm = action of 1 + sigma + ... + sigma^(p-1) on A_L
      norm o sigma = norm, sigma o lift = lift
    """

    p: int
    A_K: AbelianGroup
    A_L: AbelianGroup
    lift: Homomorphism     # A_K -> A_L
    norm: Homomorphism     # A_L -> A_K
    sigma: Homomorphism    # automorphism of A_L of order dividing p
    synthetic: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.lift.source != self.A_K or self.lift.target != self.A_L:
            raise GModuleError("lift has wrong signature")
        if self.norm.source != self.A_L or self.norm.target != self.A_K:
            raise GModuleError("norm has wrong signature")
        if self.sigma.source != self.A_L or self.sigma.target != self.A_L:
            raise GModuleError("sigma must be an endomorphism of A_L")
        if hom_power(self.sigma, self.p) != identity_hom(self.A_L):
            raise GModuleError("sigma order does not divide p")
        if not self.synthetic:
            bad = self.check_invariants()
            if bad:
                raise GModuleError("datum invariants violated: " + "; ".join(bad))

    def norm_element_action(self):
        out = zero_hom(self.A_L, self.A_L)
        for i in range(self.p):
            out = out + hom_power(self.sigma, i)
        return out

    def s_map(self):
        return self.sigma - identity_hom(self.A_L)

    def check_invariants(self):
        out = []
        if self.norm.compose(self.lift) != power_hom(self.A_K, self.p):
            out.append("norm o lift is not the p-th power map")
        if self.lift.compose(self.norm) != self.norm_element_action():
            out.append("lift o norm is not the norm-element action")
        if self.norm.compose(self.sigma) != self.norm:
            out.append("norm is not sigma-invariant")
        if self.sigma.compose(self.lift) != self.lift:
            out.append("lift does not land in the fixed part")
        return out


def make_relative_datum(G: PcGroup, H: SubgroupDescriptor) -> RelativeExtensionDatum:
    """Artin dictionary for a normal index-p subgroup H >= G': A_K = G/G',
    A_L = H/H', lift = transfer, norm = inclusion-induced map, sigma =
    conjugation by a transversal generator."""
    p = G.p
    if H.index != p:
        raise GModuleError("subgroup must have index p")
    if not H.is_normal():
        raise GModuleError("subgroup must be normal")
    der = G.derived_subgroup()
    if not der <= H.elements:
        raise GModuleError("subgroup must contain the derived subgroup")

    A_K, proj_G, _ = G.abelianization()
    A_L, proj_H, gens_H = G.quotient_structure(H.elements, G.derived_of(H.elements))

    tmap = transfer(G, H)
    lift = tmap.hom

    norm = Homomorphism(A_L, A_K, [[proj_G(g)[i] for g in gens_H]
                                   for i in range(A_K.ngens)])

    t = next(x for x in sorted(G.elements()) if x not in H.elements)
    sigma = Homomorphism(A_L, A_L, [[proj_H(G.conjugate(g, t))[i] for g in gens_H]
                                    for i in range(A_L.ngens)])
    return RelativeExtensionDatum(p, A_K, A_L, lift, norm, sigma)


def f_property(d: RelativeExtensionDatum) -> bool:
    """Whether ker(norm) = A_L^s; containment ker(norm) >= A_L^s always holds
    and is asserted unconditionally."""
    ker = d.norm.kernel()
    As = d.s_map().image()
    if not ker.contains_subgroup(As):
        raise GModuleError("ker(norm) does not contain A_L^s")
    return ker == As


def classify_growth(d: RelativeExtensionDatum) -> GrowthClass:
    """Stable when rk(N(A_L)) = rk(A_L) and rk(A_K) = rk(A_K^p); semi-stable
    when s^(p-1) annihilates A_L; wild otherwise (relative to those two
    conditions; the tame case of the taxonomy has no computable definition)."""
    p = d.p
    AKprime = d.norm.image()
    if AKprime.structure().rank(p) == d.A_L.rank(p) and \
            d.A_K.rank(p) == power_hom(d.A_K, p).image().structure().rank(p):
        return GrowthClass.STABLE
    if hom_power(d.s_map(), p - 1).image().order() == 1:
        return GrowthClass.SEMI_STABLE
    return GrowthClass.WILD


def check_growth_order_law(d: RelativeExtensionDatum, b):
    """Whether ord(b) = p * ord(lift(norm(b))), for b whose norm extends to a
    minimal generating system of N(A_L).  Returns True/False, or None when
    the hypothesis is not met (inapplicable)."""
    if classify_growth(d) not in (GrowthClass.STABLE, GrowthClass.SEMI_STABLE):
        return None
    AKprime = d.norm.image()
    S, to_coords, _ = AKprime.structure_with_coords()
    if S.order() == 1:
        return None
    a = d.norm(b)
    coords = to_coords(a)
    if all(c % d.p == 0 for c in coords):
        return None  # norm image lies in the Frattini subgroup of N(A_L)
    ord_b = d.A_L.element_order(b)
    ord_lift = d.A_L.element_order(d.lift(a))
    return ord_b == d.p * ord_lift


def catalog_relative_data(G: PcGroup):
    """All relative data from index-p subgroups of G above the derived
    subgroup (the normality requirement is automatic there)."""
    from .pcgroup import subgroups_index_p_above_derived
    return [make_relative_datum(G, H)
            for H in subgroups_index_p_above_derived(G)]
