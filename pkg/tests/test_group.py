"""Abstract group layer: normal forms, the word homomorphism onto surface
maps, derived conjugation tables, enumeration, and inverses."""
import random

import pytest

from clusteraut.autgroup import (
    GroupElement,
    enumerate_finite,
    from_word,
    ginv,
    gmul,
    identity_element,
    structure_of,
    to_endo,
)
from clusteraut.errors import (
    NotFiniteType,
    StructureMismatch,
    SwapRequiresEqualParams,
)
from clusteraut.poly import Params
from clusteraut.surface import (
    compose,
    compose_word,
    equal,
    identity,
    scaling,
    sigma2,
    sigma3,
    swap,
)
from clusteraut.textio import parse_word


def random_word(rng, params, max_len, allow_sp=False):
    atoms = [("s2",), ("s3",)]
    atoms.append(("m", rng.randrange(params.a), rng.randrange(params.b)))
    if params.a == params.b and params.a >= 2:
        atoms.append(("h",))
    if allow_sp:
        atoms.append(("sp", rng.randrange(-1, 4)))
    return [rng.choice(atoms) for _ in range(rng.randrange(0, max_len + 1))]


def test_structure_cases():
    expect = {
        (1, 1): ("A2", 10, 1, False),
        (2, 1): ("B2-like", 6, 2, False),
        (1, 2): ("B2-like", 6, 2, False),
        (3, 1): ("G2-like", 8, 3, False),
        (1, 3): ("G2-like", 8, 3, False),
        (2, 2): ("EqualGE2", None, 4, True),
        (3, 3): ("EqualGE2", None, 9, True),
        (3, 2): ("GenericInfinite", None, 6, False),
        (4, 1): ("GenericInfinite", None, 4, False),
    }
    for (a, b), (case, dihedral, mu, has_swap) in expect.items():
        st = structure_of(Params(a, b))
        assert st.case == case
        assert st.dihedral_order == dihedral
        assert st.mu_order == mu
        assert st.has_swap == has_swap
        assert st.is_finite == (dihedral is not None)
        assert st.describe()


def test_enumeration_counts():
    for (a, b), count in (((1, 1), 10), ((2, 1), 12), ((1, 2), 12), ((3, 1), 24), ((1, 3), 24)):
        st = structure_of(Params(a, b))
        elements = enumerate_finite(st, cross_check=False)
        assert len(elements) == count
        assert len(set(elements)) == count


def test_enumeration_distinct_as_surface_maps():
    for a, b in ((1, 1), (2, 1), (3, 1)):
        st = structure_of(Params(a, b))
        enumerate_finite(st, cross_check=True)


def test_enumeration_requires_finite():
    with pytest.raises(NotFiniteType):
        enumerate_finite(structure_of(Params(2, 2)))


def test_word_homomorphism_random():
    rng = random.Random(606)
    for a, b in ((1, 1), (2, 1), (3, 1), (2, 2), (3, 2)):
        params = Params(a, b)
        st = structure_of(params)
        finite = st.is_finite
        # long alternating words grow fast in the infinite cases; the full
        # 100-word battery lives in the acceptance tests
        max_len = 5 if finite else 4
        for _ in range(20):
            word = random_word(rng, params, max_len, allow_sp=finite)
            x = from_word(st, word)
            assert equal(to_endo(x), compose_word(params, word))


def test_gmul_matches_composition_on_finite_groups():
    for a, b in ((1, 1), (2, 1)):
        st = structure_of(Params(a, b))
        elements = enumerate_finite(st, cross_check=False)
        endos = {e: to_endo(e) for e in elements}
        for x in elements:
            for y in elements:
                assert equal(to_endo(gmul(x, y)), compose(endos[x], endos[y]))


def test_gmul_matches_composition_random_infinite():
    rng = random.Random(17)
    for a, b in ((2, 2), (3, 2)):
        params = Params(a, b)
        st = structure_of(params)
        for _ in range(15):
            wx = random_word(rng, params, 2)
            wy = random_word(rng, params, 2)
            x, y = from_word(st, wx), from_word(st, wy)
            assert equal(to_endo(gmul(x, y)), compose_word(params, wx + wy))


def test_group_axioms_abstract():
    rng = random.Random(99)
    for a, b in ((2, 1), (2, 2), (3, 2), (3, 3)):
        params = Params(a, b)
        st = structure_of(params)
        e = identity_element(st)
        for _ in range(40):
            x = from_word(st, random_word(rng, params, 6))
            y = from_word(st, random_word(rng, params, 6))
            z = from_word(st, random_word(rng, params, 6))
            assert gmul(gmul(x, y), z) == gmul(x, gmul(y, z))
            assert gmul(x, e) == x
            assert gmul(e, x) == x
            assert gmul(x, ginv(x)) == e
            assert gmul(ginv(x), x) == e
            assert ginv(ginv(x)) == x


def test_conjugation_tables_match_surface_maps():
    """The derived scaling-action tables must reproduce conjugation:
    m(i,j) . g == g . m(table(i,j)) as surface maps."""
    for a, b in ((2, 1), (3, 2), (2, 2), (3, 3)):
        params = Params(a, b)
        st = structure_of(params)
        gens = [("s2", sigma2(params), st.s2_table), ("s3", sigma3(params), st.s3_table)]
        if st.has_swap:
            gens.append(("h", swap(params), st.h_table))
        for _, g, table in gens:
            (m00, m01), (m10, m11) = table
            for i in range(a):
                for j in range(b):
                    ti = (m00 * i + m01 * j) % a
                    tj = (m10 * i + m11 * j) % b
                    lhs = compose(scaling(params, i, j), g)
                    rhs = compose(g, scaling(params, ti, tj))
                    assert equal(lhs, rhs)


def test_normal_form_strings_round_trip():
    rng = random.Random(3)
    for a, b in ((2, 1), (3, 1), (2, 2), (4, 1)):
        params = Params(a, b)
        st = structure_of(params)
        assert str(identity_element(st)) == "id"
        for _ in range(25):
            x = from_word(st, random_word(rng, params, 6))
            assert from_word(st, parse_word(str(x))) == x


def test_finite_rotation_exponent_wraps():
    st = structure_of(Params(1, 1))
    assert GroupElement(st, r_exp=7).r_exp == 2
    assert GroupElement(st, r_exp=-1).r_exp == 4
    big = from_word(st, [("s2",), ("s3",)] * 7)
    assert big.r_exp == 2 and big.s == 0


def test_swap_flag_requires_equal_params():
    st = structure_of(Params(2, 3))
    with pytest.raises(SwapRequiresEqualParams):
        GroupElement(st, h=1)
    with pytest.raises(SwapRequiresEqualParams):
        from_word(st, [("h",)])


def test_structure_mismatch_rejected():
    x = identity_element(structure_of(Params(2, 2)))
    y = identity_element(structure_of(Params(2, 1)))
    with pytest.raises(StructureMismatch):
        gmul(x, y)


def test_swap_relations_at_equal_params():
    """h conjugates the two involutions into each other and transposes the
    scaling indices; h^2 = id."""
    for a in (2, 3):
        params = Params(a, a)
        st = structure_of(params)
        h = from_word(st, [("h",)])
        s2 = from_word(st, [("s2",)])
        s3 = from_word(st, [("s3",)])
        assert gmul(h, h) == identity_element(st)
        assert gmul(gmul(h, s2), h) == s3
        for i in range(a):
            for j in range(a):
                m = from_word(st, [("m", i, j)])
                swapped = from_word(st, [("m", j, i)])
                assert gmul(gmul(h, m), h) == swapped


def test_pentagon_case_special_relation():
    """At (1,1) the coordinate reversal is itself a sigma-word."""
    from clusteraut.poly import LaurentPoly
    from clusteraut.surface import EndoMap

    params = Params(1, 1)
    st = structure_of(params)
    w = from_word(st, [("s2",), ("s3",), ("s2",), ("s3",), ("s2",)])
    reversal = EndoMap.make(
        params, [LaurentPoly.variable(i) for i in (4, 3, 2, 1)]
    )
    assert equal(to_endo(w), reversal)
    assert equal(to_endo(from_word(st, [("sp", 3)])), compose_word(params, [("sp", 3)]))


def test_scaling_commutes_in_b2_case():
    params = Params(2, 1)
    st = structure_of(params)
    m = from_word(st, [("m", 1, 0)])
    for word in ([("s2",)], [("s3",)], [("s2",), ("s3",)]):
        g = from_word(st, word)
        assert gmul(m, g) == gmul(g, m)


def test_to_endo_of_identity():
    for a, b in ((1, 1), (2, 2), (3, 2)):
        params = Params(a, b)
        st = structure_of(params)
        assert equal(to_endo(identity_element(st)), identity(params))
