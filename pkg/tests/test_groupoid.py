import itertools
from fractions import Fraction

import pytest

from finpoly import (
    discrete, deloop, coproduct, product, build_groupoid,
    validate_groupoid, validate_functor, identity_functor,
    components_and_automorphisms, groupoid_cardinality,
    check_groupoid_equivalence, verify_equivalence_witness,
    FiniteGroupoid, GroupoidError, Caps,
)

from oracles import (cyclic_table, klein_table, equivalent_by_search,
                     cardinality_by_orbit_count)


Z2 = cyclic_table(2)


def test_discrete_validates():
    for n in (0, 1, 2, 5):
        assert validate_groupoid(discrete(n)).ok


def test_discrete_zero_is_empty():
    G = discrete(0)
    assert G.object_count == 0
    assert G.morphism_count == 0


def test_deloop_z2():
    G = deloop(Z2)
    assert G.object_count == 1
    assert G.morphism_count == 2
    s = 1  # the non-identity element
    assert G.compose2(s, s) == G.identity_of[0]
    assert validate_groupoid(G).ok


def test_deloop_rejects_non_group():
    # drop closure: a table with an out-of-range entry
    with pytest.raises(GroupoidError, match="closed"):
        deloop([[0, 1], [1, 5]])
    # no identity: constant table on 2 elements
    with pytest.raises(GroupoidError, match="identity|associative"):
        deloop([[0, 0], [0, 0]])
    # non-associative magma with unit: build one explicitly
    with pytest.raises(GroupoidError, match="associative|inverse"):
        deloop([[0, 1, 2], [1, 0, 0], [2, 0, 1]])


def test_validate_catches_broken_inverse():
    G = deloop(Z2)
    broken = FiniteGroupoid(
        1, G.morphisms, G.identity_of,
        {k: G.compose2(*k) for k in G.compose_pairs()},
        (0, 0))  # inverse of s claimed to be id
    report = validate_groupoid(broken)
    assert not report.ok
    assert "inverse" in report.first


def test_coproduct_of_discretes():
    G = coproduct(discrete(1), discrete(2))
    assert G.object_count == 3
    assert validate_groupoid(G).ok
    eq = check_groupoid_equivalence(G, discrete(3))
    assert eq.status == "equivalent"


def test_product_componentwise():
    G = product(deloop(Z2), discrete(2))
    assert G.object_count == 2
    assert G.morphism_count == 4
    assert validate_groupoid(G).ok


def test_every_builder_output_validates():
    gs = [discrete(0), discrete(3), deloop(Z2), deloop(cyclic_table(3)),
          deloop(klein_table())]
    for a, b in itertools.product(gs[:4], repeat=2):
        assert validate_groupoid(coproduct(a, b)).ok
        assert validate_groupoid(product(a, b)).ok
    for g in gs:
        assert validate_groupoid(g).ok


def test_build_groupoid_dispatch():
    assert build_groupoid(("discrete", 2)).object_count == 2
    assert build_groupoid(("deloop", Z2)).morphism_count == 2
    assert build_groupoid(("coproduct", discrete(1), discrete(1))).object_count == 2
    assert build_groupoid(("product", discrete(2), discrete(3))).object_count == 6


def test_components_discrete():
    comps = components_and_automorphisms(discrete(3))
    assert len(comps) == 3
    assert all(len(c.automorphisms) == 1 for c in comps)


def test_components_deloop():
    comps = components_and_automorphisms(deloop(Z2))
    assert len(comps) == 1
    assert len(comps[0].automorphisms) == 2


def test_components_of_coproduct():
    G = coproduct(discrete(1), deloop(Z2))
    comps = components_and_automorphisms(G)
    assert [len(c.automorphisms) for c in comps] == [1, 2]


def test_cardinality_examples():
    assert groupoid_cardinality(discrete(5)) == Fraction(5)
    assert groupoid_cardinality(deloop(Z2)) == Fraction(1, 2)
    assert groupoid_cardinality(coproduct(deloop(Z2), discrete(1))) == Fraction(3, 2)


def test_cardinality_additive_and_multiplicative():
    pool = [discrete(1), discrete(2), deloop(Z2), deloop(cyclic_table(3))]
    for G, H in itertools.product(pool, repeat=2):
        assert (groupoid_cardinality(coproduct(G, H))
                == groupoid_cardinality(G) + groupoid_cardinality(H))
        assert (groupoid_cardinality(product(G, H))
                == groupoid_cardinality(G) * groupoid_cardinality(H))


def test_cardinality_against_orbit_oracle():
    pool = [discrete(2), deloop(Z2), coproduct(deloop(Z2), discrete(1)),
            product(deloop(Z2), discrete(2))]
    for G in pool:
        assert groupoid_cardinality(G) == cardinality_by_orbit_count(G)


def test_equivalence_trivial_cases():
    assert check_groupoid_equivalence(discrete(2), discrete(2)).status == "equivalent"
    res = check_groupoid_equivalence(deloop(Z2), discrete(2))
    assert res.status == "not_equivalent"
    assert "2" in res.distinguishing


def test_equivalence_swapped_coproduct():
    G = coproduct(deloop(Z2), discrete(1))
    H = coproduct(discrete(1), deloop(Z2))
    res = check_groupoid_equivalence(G, H)
    assert res.status == "equivalent"
    assert verify_equivalence_witness(G, H, res.witness).ok
    # oracle agreement on these 4-morphism groupoids
    assert equivalent_by_search(G, H)


def test_equivalence_agrees_with_exhaustive_search_at_small_sizes():
    pool = [discrete(0), discrete(1), discrete(2), deloop(Z2),
            deloop(cyclic_table(3)), coproduct(deloop(Z2), discrete(1)),
            product(deloop(Z2), discrete(1))]
    for G, H in itertools.product(pool, repeat=2):
        if G.morphism_count > 6 or H.morphism_count > 6:
            continue
        want = equivalent_by_search(G, H)
        got = check_groupoid_equivalence(G, H)
        assert got.status == ("equivalent" if want else "not_equivalent"), (G, H)


def test_equivalent_groupoids_have_equal_cardinality():
    pool = [discrete(2), deloop(Z2), coproduct(deloop(Z2), deloop(Z2)),
            product(deloop(Z2), discrete(2))]
    for G, H in itertools.product(pool, repeat=2):
        if check_groupoid_equivalence(G, H):
            assert groupoid_cardinality(G) == groupoid_cardinality(H)


def test_distinguishes_z4_from_klein():
    res = check_groupoid_equivalence(deloop(cyclic_table(4)), deloop(klein_table()))
    assert res.status == "not_equivalent"


def test_cap_exceeded_is_explicit():
    G = deloop(cyclic_table(4))
    res = check_groupoid_equivalence(G, G, caps=Caps(aut_order=3))
    assert res.status == "cap_exceeded"


def test_identity_functor_validates():
    for G in (discrete(2), deloop(Z2), product(deloop(Z2), discrete(2))):
        assert validate_functor(identity_functor(G)).ok
