"""Polycyclic p-groups, transfer maps and transfer-kernel patterns.

Oracles:
  - collected multiplication is compared against explicit faithful models
    built in this file (modular arithmetic, unitriangular matrices over F_p,
    affine maps of Z/9), none of which go through the collection code;
  - the transfer is recomputed from the raw coset-product definition with a
    transversal chosen by a different rule, and compared modulo H'.
"""

import itertools
import random

import pytest

from capkit.catalog import get_group
from capkit.pcgroup import (PcGroup, PresentationError,
                            SubgroupDescriptor, capitulation_type,
                            normalized_lines, schreier_transversal,
                            subgroups_index_p_above_derived, transfer)


# ---------------------------------------------------------------------------
# faithful models used as multiplication oracles
# ---------------------------------------------------------------------------

def mat_mul_mod(A, B, m):
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) % m
                       for col in zip(*B)) for row in A)


def check_against_model(G, images, model_mult, model_one):
    """images: model element per generator.  Requires the map
    g1^e1...gn^en -> prod images[i]^ei to be an injective homomorphism."""
    def phi(u):
        out = model_one
        for i, e in enumerate(u):
            for _ in range(e):
                out = model_mult(out, images[i])
        return out

    seen = {}
    for u in G.elements():
        mu = phi(u)
        assert mu not in seen, "model not faithful at %s vs %s" % (u, seen.get(mu))
        seen[mu] = u
    for u in G.elements():
        for v in G.elements():
            assert phi(G.mult(u, v)) == model_mult(phi(u), phi(v))


class TestCollectionAgainstModels:
    def test_cyclic_c27_is_base_3_arithmetic(self):
        G = get_group("C27")
        check_against_model(G, [1, 3, 9],
                            lambda a, b: (a + b) % 27, 0)

    def test_c9_is_base_3_arithmetic(self):
        G = get_group("C9")
        check_against_model(G, [1, 3], lambda a, b: (a + b) % 9, 0)

    def test_heisenberg_matches_unitriangular_matrices(self):
        G = get_group("H27")
        I = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
        E23 = ((1, 0, 0), (0, 1, 1), (0, 0, 1))
        E12 = ((1, 1, 0), (0, 1, 0), (0, 0, 1))
        E13 = ((1, 0, 1), (0, 1, 0), (0, 0, 1))

        def mm(A, B):
            return mat_mul_mod(A, B, 3)

        # the presentation's commutator convention in the model
        def comm(X, Y):
            Xi = next(A for A in all_unitriangular() if mm(A, X) == I)
            Yi = next(A for A in all_unitriangular() if mm(A, Y) == I)
            return mm(mm(Xi, Yi), mm(X, Y))

        def all_unitriangular():
            for a, b, c in itertools.product(range(3), repeat=3):
                yield ((1, a, b), (0, 1, c), (0, 0, 1))

        g1, g2, g3 = E23, E12, E13
        assert comm(g2, g1) == g3
        assert mm(mm(g1, g1), g1) == I
        check_against_model(G, [g1, g2, g3], mm, I)

    def test_m27_matches_affine_maps_of_z9(self):
        G = get_group("M27")
        # affine maps t -> m*t + c with m in {1, 4, 7}: a faithful model of
        # the order-27 group with an element of order 9
        def compose(f, g):
            # (f then g), matching left-to-right products
            (mf, cf), (mg, cg) = f, g
            return ((mf * mg) % 9, (cf * mg + cg) % 9)

        g1 = (1, 1)   # translation, order 9
        g2 = (4, 0)   # multiplication by 4, order 3
        g3 = (1, 3)   # translation by 3 = g1 cubed

        def inv(f):
            return next(h for h in itertools.product((1, 4, 7), range(9))
                        if compose(f, h) == (1, 0))

        comm = compose(compose(inv(g2), inv(g1)), compose(g2, g1))
        if comm != g3:  # the other composition convention
            def compose(f, g, _c=compose):  # noqa: F811
                return _c(g, f)
            comm = compose(compose(inv(g2), inv(g1)), compose(g2, g1))
        assert comm == g3
        check_against_model(G, [g1, g2, g3], compose, (1, 0))

    def test_collect_rewrites_heisenberg_words(self):
        G = get_group("H27")
        assert G.collect(((1, 1), (0, 1))) == (1, 1, 1)
        assert G.collect(((1, 1), (0, 2))) == (2, 1, 2)
        assert G.collect(((0, -1),)) == (2, 0, 0)
        assert G.collect(()) == G.identity


class TestPresentationValidation:
    def test_rejects_out_of_range_tails(self):
        with pytest.raises(PresentationError):
            PcGroup(3, 2, {0: ((0, 1),)}, {})
        with pytest.raises(PresentationError):
            PcGroup(3, 3, {}, {(1, 0): ((1, 1),)})

    def test_rejects_inconsistent_presentation(self):
        # g1^3 = g3 together with [g3,g2] = g4 admits no group of order 3^4
        with pytest.raises(PresentationError):
            PcGroup(3, 4, {0: ((2, 1),)}, {(2, 1): ((3, 1),)})

    def test_group_invariants(self):
        G = get_group("H27")
        assert G.order == 27
        assert G.center_size() == 3
        assert G.derived_subgroup() == frozenset({(0, 0, 0), (0, 0, 1), (0, 0, 2)})
        assert G.is_metabelian()
        assert sorted(G.element_order(x) for x in G.elements()).count(3) == 26

    def test_abelianization_structures(self):
        for name, invs in [("C27", (27,)), ("H27", (3, 3)), ("M27", (3, 3)),
                           ("M243", (3, 27)), ("Q8", (2, 2)),
                           ("C3xC3xC3", (3, 3, 3))]:
            A, proj, lifts = get_group(name).abelianization()
            assert A.invariant_factors == invs, name
            G = get_group(name)
            for x in G.elements():
                for y in G.elements():
                    assert proj(G.mult(x, y)) == A.add(proj(x), proj(y))
                    break


class TestSubgroups:
    def test_normalized_lines(self):
        assert normalized_lines(3, 2) == [(0, 1), (1, 0), (1, 1), (1, 2)]
        assert len(normalized_lines(5, 2)) == 6
        assert normalized_lines(2, 3) == [(0, 0, 1), (0, 1, 0), (0, 1, 1),
                                          (1, 0, 0), (1, 0, 1), (1, 1, 0),
                                          (1, 1, 1)]

    def test_index_p_subgroups(self):
        G = get_group("H27")
        subs = subgroups_index_p_above_derived(G)
        assert len(subs) == 4
        der = G.derived_subgroup()
        for H in subs:
            assert H.index == 3
            assert H.is_normal()
            assert der <= H.elements
        assert len({H.elements for H in subs}) == 4

    def test_subgroup_descriptor_roundtrip(self):
        G = get_group("C3xC3")
        H = SubgroupDescriptor.from_elements(G, [(0, 0), (1, 0), (2, 0)])
        assert H.index == 3
        assert H.is_normal()
        with pytest.raises(PresentationError):
            SubgroupDescriptor.from_elements(G, [(0, 0), (1, 0)])

    def test_schreier_transversal(self):
        G = get_group("M27")
        for H in subgroups_index_p_above_derived(G):
            T = schreier_transversal(G, H)
            assert len(T) == H.index
            assert T[0] == G.identity
            # exactly one representative per right coset
            covered = {G.mult(h, t) for h in H.elements for t in T}
            assert covered == set(G.elements())


# ---------------------------------------------------------------------------
# transfer
# ---------------------------------------------------------------------------

def raw_transfer_class(G, H, g):
    """Transfer image of g computed from the definition with a transversal
    picked as the minimum of each right coset; returned as the full H'-coset
    of the product so it can be compared without coordinates."""
    hset = H.elements
    cosets = {}
    for x in G.elements():
        key = min(G.mult(h, x) for h in hset)
        cosets.setdefault(key, key)
    T = sorted(cosets)
    prod = G.identity
    for t in T:
        u = G.mult(t, g)
        rep = min(G.mult(h, u) for h in hset)  # coset representative of Hu
        prod = G.mult(prod, G.mult(u, G.inv(rep)))
    derived = G.derived_of(hset)
    return frozenset(G.mult(prod, d) for d in derived)


class TestTransfer:
    @pytest.mark.parametrize("name", ["C9", "H27", "M27", "MC81a", "Q8", "D4"])
    def test_matches_raw_definition(self, name):
        G = get_group(name)
        for H in subgroups_index_p_above_derived(G):
            tm = transfer(G, H)
            A_H, proj_H, gens_H = G.quotient_structure(
                H.elements, G.derived_of(H.elements))
            for g in G.elements():
                coords = tm.hom(tm.source.reduce(
                    G.abelianization()[1](g)))
                built = G.identity
                for c, lift in zip(coords, gens_H):
                    built = G.mult(built, G.power(lift, c))
                assert built in raw_transfer_class(G, H, g)

    def test_cyclic_transfer_is_multiplication_by_index(self):
        # C9 -> its subgroup of order 3: the transfer cubes
        G = get_group("C9")
        H = subgroups_index_p_above_derived(G)[0]
        tm = transfer(G, H)
        assert tm.kernel().order() == 3

    def test_transversal_validation(self):
        G = get_group("H27")
        H = subgroups_index_p_above_derived(G)[0]
        with pytest.raises(PresentationError):
            transfer(G, H, transversal=[G.identity] * 3)

    def test_transversal_independence(self):
        rng = random.Random(5)
        G = get_group("MC81b")
        for H in subgroups_index_p_above_derived(G):
            base = transfer(G, H)
            T0 = schreier_transversal(G, H)
            for _ in range(5):
                T = [G.mult(rng.choice(sorted(H.elements)), t) for t in T0]
                assert transfer(G, H, transversal=T).hom == base.hom


class TestCapitulationType:
    def test_heisenberg_kernels_are_full(self):
        entries = capitulation_type(get_group("H27"))
        assert [e.code for e in entries] == [0, 0, 0, 0]
        for e in entries:
            assert e.kernel.order() == 9
            assert not e.flagged

    def test_elementary_abelian_kernels_are_full(self):
        entries = capitulation_type(get_group("C3xC3"))
        assert [e.code for e in entries] == [0, 0, 0, 0]

    def test_line_codes_partition(self):
        # every kernel of an order-3 transfer kernel group is a line or full
        for name in ("M27", "MC81a", "MC81b", "MC81c", "C3wrC3"):
            entries = capitulation_type(get_group(name))
            assert len(entries) == 4
            for e in entries:
                assert e.code is not None
                assert 0 <= e.code <= 4

    def test_quaternion_kernels_are_the_three_lines(self):
        # each order-4 subgroup of Q8 has a kernel of order 2 and all
        # three lines occur exactly once
        entries = capitulation_type(get_group("Q8"))
        assert sorted(e.code for e in entries) == [1, 2, 3]
        for e in entries:
            assert e.kernel.order() == 2
