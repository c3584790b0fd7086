"""Surface elements and endomorphisms: normal-form confluence against an
independent rewriter, composition against rational-point evaluation, word
algebra, factorization, and serialization."""
import random
from fractions import Fraction

import pytest

from clusteraut.budget import limit
from clusteraut.cluster import cluster_var, laurent_expand
from clusteraut.errors import (
    BudgetExceeded,
    FactorizationFailed,
    ParamsMismatch,
    ParseError,
    SwapRequiresEqualParams,
)
from clusteraut.poly import LaurentPoly, Params
from clusteraut.rings import ZZ, root_surrogate
from clusteraut.surface import (
    EndoMap,
    compose,
    compose_word,
    endo_from_json,
    endo_from_obj,
    endo_to_json,
    endo_to_obj,
    equal,
    factorize,
    identity,
    is_endomorphism,
    make_generator,
    normal_form,
    order_of,
    scaling,
    sigma2,
    sigma3,
    sigma_word,
    swap,
    total_degree,
)

ALL_PARAMS = [Params(a, b) for a in range(1, 4) for b in range(1, 4)]


def naive_normal_form(params, p, rng):
    """Reduce with the two rewrite rules applied in random order — an
    independent strategy for the confluence check (integer coefficients)."""
    a, b = params.a, params.b

    def add_to(terms, exps, c):
        c += terms.pop(exps, 0)
        if c:
            terms[exps] = c

    terms = dict(p.term_map())
    while True:
        candidates = [
            e
            for e in terms
            if (e[0] > 0 and e[2] > 0) or (e[1] > 0 and e[3] > 0)
        ]
        if not candidates:
            return LaurentPoly.from_terms(ZZ, terms)
        e = rng.choice(candidates)
        c = terms.pop(e)
        rules = []
        if e[0] > 0 and e[2] > 0:
            rules.append(0)
        if e[1] > 0 and e[3] > 0:
            rules.append(1)
        if rng.choice(rules) == 0:
            base = (e[0] - 1, e[1], e[2] - 1, e[3])
            add_to(terms, (base[0], base[1] + a, base[2], base[3]), c)
            add_to(terms, base, c)
        else:
            base = (e[0], e[1] - 1, e[2], e[3] - 1)
            add_to(terms, (base[0], base[1], base[2] + b, base[3]), c)
            add_to(terms, base, c)


def random_positive_poly(rng, n_terms=5, span=3):
    terms = {}
    for _ in range(rng.randrange(1, n_terms + 1)):
        exps = tuple(rng.randrange(0, span + 1) for _ in range(4))
        terms[exps] = rng.randrange(-6, 7)
    return LaurentPoly.from_terms(ZZ, terms)


def test_normal_form_confluent_with_random_strategy():
    rng = random.Random(321)
    for a, b in ((2, 2), (3, 2), (4, 1)):
        params = Params(a, b)
        for _ in range(120):
            p = random_positive_poly(rng)
            engine = normal_form(params, p).poly
            independent = naive_normal_form(params, p, rng)
            assert engine == independent


def test_normal_form_kills_ideal_multiples():
    rng = random.Random(33)
    for params in (Params(2, 2), Params(3, 1)):
        a, b = params.a, params.b
        y = [LaurentPoly.variable(i) for i in (1, 2, 3, 4)]
        rel1 = y[0] * y[2] - y[1] ** a - LaurentPoly.one()
        rel2 = y[1] * y[3] - y[2] ** b - LaurentPoly.one()
        for _ in range(60):
            p = random_positive_poly(rng)
            m1 = random_positive_poly(rng, n_terms=2, span=2)
            m2 = random_positive_poly(rng, n_terms=2, span=2)
            q = p + m1 * rel1 + m2 * rel2
            assert normal_form(params, p) == normal_form(params, q)
            assert normal_form(params, m1 * rel1 + m2 * rel2).poly.is_zero()


def test_normal_form_is_reduced():
    rng = random.Random(9)
    params = Params(3, 2)
    for _ in range(80):
        nf = normal_form(params, random_positive_poly(rng)).poly
        for e, _ in nf.terms():
            assert not (e[0] > 0 and e[2] > 0)
            assert not (e[1] > 0 and e[3] > 0)


def test_generators_preserve_relations():
    for params in ALL_PARAMS:
        assert sigma2(params).verified
        assert sigma3(params).verified
        for i in range(params.a):
            for j in range(params.b):
                assert scaling(params, i, j).verified
        if params.a == params.b:
            assert swap(params).verified
        assert is_endomorphism(identity(params))


def surface_point(params, v1, v2):
    a, b = params.a, params.b
    v3 = (v2 ** a + 1) / v1
    v4 = (v3 ** b + 1) / v2
    return (v1, v2, v3, v4)


def evaluate(poly, point):
    total = Fraction(0)
    for exps, c in poly.terms():
        v = Fraction(c)
        for e, x in zip(exps, point):
            v *= Fraction(x) ** e
        total += v
    return total


def test_composition_against_point_evaluation():
    """compose(f, g) evaluated on surface points must equal f after g."""
    rng = random.Random(404)
    for a, b in ((1, 1), (2, 1), (2, 2), (3, 2)):
        params = Params(a, b)
        gens = [sigma2(params), sigma3(params), identity(params)]
        if params.a == params.b:
            gens.append(swap(params))
        for _ in range(12):
            f, g = rng.choice(gens), rng.choice(gens)
            fg = compose(f, g)
            for _ in range(3):
                pt = surface_point(
                    params,
                    Fraction(rng.randrange(1, 5)),
                    Fraction(rng.randrange(1, 5)),
                )
                # on points, the ring map f o g acts through f first:
                # (f o g)(y_i) evaluated at P is g(y_i) at (f(y_j) at P)_j
                f_pt = tuple(evaluate(e.poly, pt) for e in f.images)
                want = tuple(evaluate(e.poly, f_pt) for e in g.images)
                got = tuple(evaluate(e.poly, pt) for e in fg.images)
                assert got == want


def test_composition_associative_and_unital():
    rng = random.Random(71)
    for params in (Params(2, 2), Params(3, 1)):
        atoms = [("s2",), ("s3",)]
        if params.a == params.b:
            atoms.append(("h",))
        for _ in range(8):
            f = make_generator(params, rng.choice(atoms))
            g = make_generator(params, rng.choice(atoms))
            h = make_generator(params, rng.choice(atoms))
            assert equal(compose(compose(f, g), h), compose(f, compose(g, h)))
            assert equal(compose(identity(params), f), f)
            assert equal(compose(f, identity(params)), f)


def test_generator_orders():
    for params in ALL_PARAMS:
        assert order_of(sigma2(params), cap=2) == 2
        assert order_of(sigma3(params), cap=2) == 2
        if params.a == params.b:
            assert order_of(swap(params), cap=2) == 2
    for (a, b), r_order in (((1, 1), 5), ((2, 1), 3), ((1, 2), 3), ((3, 1), 4), ((1, 3), 4)):
        params = Params(a, b)
        r = compose(sigma2(params), sigma3(params))
        assert order_of(r, cap=8) == r_order
    params = Params(2, 2)
    r = compose(sigma2(params), sigma3(params))
    assert order_of(r, cap=6) is None


def test_scalings_form_a_group():
    params = Params(3, 2)
    for i in range(3):
        for j in range(2):
            m = scaling(params, i, j)
            inv = scaling(params, (-i) % 3, (-j) % 2)
            assert equal(compose(m, inv), identity(params))
            for k in range(3):
                for l in range(2):
                    assert equal(
                        compose(m, scaling(params, k, l)),
                        scaling(params, (i + k) % 3, (j + l) % 2),
                    )


def test_swap_needs_equal_params():
    with pytest.raises(SwapRequiresEqualParams):
        swap(Params(2, 3))


def test_params_mismatch_rejected():
    with pytest.raises(ParamsMismatch):
        compose(sigma2(Params(2, 2)), sigma2(Params(2, 1)))
    with pytest.raises(ParamsMismatch):
        equal(sigma2(Params(2, 2)), sigma2(Params(3, 2)))


def test_shift_words_shift_cluster_indices():
    """The word for y_n -> y_{2p-n} must expand each y_i to y_{2p-i} in the
    seed cluster — checked against the cluster walk."""
    for a, b in ((2, 2), (2, 1)):
        params = Params(a, b)
        for p in (0, 1, 2, 3, 4):
            f = compose_word(params, sigma_word(p))
            assert f.verified
            for i in (1, 2, 3, 4):
                assert laurent_expand(params, f.images[i - 1]) == cluster_var(
                    params, 2 * p - i
                ).value


def test_reversal_equals_five_letter_word():
    params = Params(1, 1)
    f = compose_word(params, [("s2",), ("s3",), ("s2",), ("s3",), ("s2",)])
    want = EndoMap.make(
        params, [LaurentPoly.variable(i) for i in (4, 3, 2, 1)]
    )
    assert equal(f, want)


def test_factorize_round_trip_small():
    rng = random.Random(88)
    for a, b in ((1, 1), (2, 1), (3, 1), (2, 2)):
        params = Params(a, b)
        atoms = [("s2",), ("s3",), ("m", 1 % a, 1 % b)]
        if a == b and a >= 2:
            atoms.append(("h",))
        for _ in range(10):
            word = [rng.choice(atoms) for _ in range(rng.randrange(0, 6))]
            f = compose_word(params, word)
            back = factorize(f, max_word=12)
            assert equal(compose_word(params, back), f)


def test_factorize_rejects_when_capped():
    params = Params(2, 2)
    f = compose_word(params, [("s2",), ("s3",)] * 6)
    with pytest.raises(FactorizationFailed):
        factorize(f, max_word=2)


def test_degree_growth_measure():
    params = Params(2, 2)
    r = compose(sigma2(params), sigma3(params))
    f = r
    degrees = [total_degree(f)]
    for _ in range(3):
        f = compose(r, f)
        degrees.append(total_degree(f))
    assert degrees == sorted(degrees) and len(set(degrees)) == len(degrees)


def test_budget_limits_composition():
    params = Params(3, 3)
    r = compose(sigma2(params), sigma3(params))
    with limit(60):
        with pytest.raises(BudgetExceeded):
            f = r
            for _ in range(10):
                f = compose(r, f)


def test_serialization_round_trip():
    for a, b in ((2, 2), (3, 2), (4, 1)):
        params = Params(a, b)
        maps = [
            identity(params),
            sigma2(params),
            compose(sigma3(params), scaling(params, a - 1, b - 1)),
        ]
        if a == b:
            maps.append(swap(params))
        for f in maps:
            blob = endo_to_json(f)
            g = endo_from_json(blob)
            assert equal(f, g)
            assert endo_to_json(g) == blob
            obj = endo_to_obj(f)
            assert endo_to_obj(endo_from_obj(obj)) == obj


def test_serialization_rejects_malformed():
    for blob in (
        "[]",
        '{"a": 2, "b": 2}',
        '{"a": 2, "b": 0, "images": [[], [], [], []]}',
        '{"a": 2, "b": 2, "images": [[], [], []]}',
        '{"a": 2, "b": 2, "images": [[[[0,0,0,0],[1,0]],[[1,0,0,0],[1,0,0]]], [], [], []]}',
        "no",
    ):
        with pytest.raises(ParseError):
            endo_from_json(blob)


def test_serialization_verify_flag():
    params = Params(2, 2)
    obj = endo_to_obj(sigma2(params))
    obj["images"][0] = [[[9, 0, 0, 0], [1]]]
    f = endo_from_obj(obj)
    assert not f.verified
    g = endo_from_obj(obj, verify=False)
    assert not g.verified
