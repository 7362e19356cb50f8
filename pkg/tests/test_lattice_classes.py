from itertools import product

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from ilat.errors import NotNested, UncertifiedFactorization
from ilat.iwasawa import HeightOnePrimeFactor, Irreducibility, PrimeKind
from ilat.lattice_classes import (
    DivisorTuple,
    IdealFactorization,
    count_free,
    divisor_set,
    expected_edge_count,
    parse_factor_spec,
    quotient_label,
    rectangle_graph,
    theorem5_variation,
    variation_set,
)


def lin(c):
    return HeightOnePrimeFactor(PrimeKind.DISTINGUISHED, (c, 1), Irreducibility.CERTIFIED, "degree-1")


def fact(mu, exps, p=5):
    return IdealFactorization(mu, tuple((lin(p * (i + 1)), e) for i, e in enumerate(exps)))


DELTA = fact(0, [1], 691)

factorizations = st.builds(fact, st.integers(min_value=0, max_value=3),
                           st.lists(st.integers(min_value=1, max_value=3), max_size=3))


def to_nx(g):
    G = nx.Graph()
    G.add_nodes_from(range(len(g.vertices)))
    G.add_edges_from(g.edges)
    return G


def test_count_free_examples():
    assert count_free(IdealFactorization.unit()) == 1
    assert count_free(DELTA) == 2
    assert count_free(fact(1, [2])) == 6


def test_divisor_set_examples():
    assert divisor_set(IdealFactorization.unit()) == [DivisorTuple(0, ())]
    assert [t.m for t in divisor_set(DELTA)] == [(0,), (1,)]
    assert len(divisor_set(fact(0, [1, 1, 1]))) == 8


def test_quotient_label_examples():
    t = DivisorTuple(2, (1,))
    assert quotient_label(t, t) == DivisorTuple(0, (0,))
    assert quotient_label(t, DivisorTuple(0, (0,))) == t
    with pytest.raises(NotNested):
        quotient_label(DivisorTuple(0, (1,)), DivisorTuple(1, (0,)))


def test_variation_set_examples():
    assert variation_set(DELTA, "odd").is_singleton
    assert variation_set(DELTA, 3).is_singleton
    even = variation_set(DELTA, "even")
    assert even.cardinality == 2 and even.base == "L_alg(T_min)"
    assert variation_set(IdealFactorization.unit(), 0).is_singleton


def test_theorem5_variation_examples():
    v = theorem5_variation(DELTA, True)
    assert v.base == "unit" and [t.m for t in v.multipliers] == [(0,), (1,)]
    assert theorem5_variation(IdealFactorization.unit(), True).cardinality == 1
    assert theorem5_variation(fact(0, [2]), True).cardinality == 3
    assert theorem5_variation(DELTA, False).base != "unit"


def test_graph_examples():
    cube = rectangle_graph(fact(0, [1, 1, 1]))
    assert len(cube.vertices) == 8 and len(cube.edges) == 12
    assert nx.is_isomorphic(to_nx(cube), nx.hypercube_graph(3))
    for e in range(1, 6):
        seg = rectangle_graph(fact(0, [e]))
        assert nx.is_isomorphic(to_nx(seg), nx.path_graph(e + 1))
    single = rectangle_graph(IdealFactorization.unit())
    assert len(single.vertices) == 1 and single.edges == []
    assert single.labels[single.vertices[0]] == "T_min=T_max"


def test_dot_output():
    dot = rectangle_graph(fact(0, [1, 1, 1])).to_dot()
    assert dot.startswith("graph lattice_classes {")
    assert dot.count(" -- ") == 12
    assert dot.count("shape=doublecircle") == 2
    assert 'label="T(1,1,1)"' in dot and 'xlabel="T_max"' in dot


@given(factorizations)
def test_divisors_count_and_order(f):
    divs = divisor_set(f)
    assert len(divs) == count_free(f)
    assert divs == sorted(divs)
    assert len(set(divs)) == len(divs)


@given(factorizations)
def test_graph_matches_grid_oracle(f):
    g = rectangle_graph(f)
    bounds = f.bounds()
    assert len(g.vertices) == count_free(f)
    assert len(g.edges) == expected_edge_count(bounds)
    assert g.is_connected()
    grid = nx.grid_graph(dim=[b + 1 for b in bounds]) if bounds else nx.empty_graph(1)
    assert nx.is_isomorphic(to_nx(g), grid)
    zero = 0
    assert len(g.neighbors(zero)) == sum(1 for b in bounds if b > 0)


@given(factorizations)
def test_graph_edges_are_covering_relations(f):
    g = rectangle_graph(f)
    with_p = f.mu > 0
    covers = set()
    for i, v in enumerate(g.vertices):
        for j, w in enumerate(g.vertices):
            d = [a - b for a, b in zip(w.coords(with_p), v.coords(with_p))]
            if sorted(d) == [0] * (len(d) - 1) + [1]:
                covers.add((i, j))
    assert set(g.edges) == covers
    # undirected: covered-by is the transpose of covers
    assert {(b, a) for a, b in g.edges} == {(j, i) for i, j in covers}


@given(factorizations)
def test_parity_law(f):
    assert variation_set(f, "odd").cardinality == 1
    assert variation_set(f, "even").cardinality == count_free(f)


@given(factorizations, st.data())
def test_quotient_label_is_subtraction(f, data):
    divs = divisor_set(f)
    t = data.draw(st.sampled_from(divs))
    smaller = [s for s in divs if s.a <= t.a and all(x <= y for x, y in zip(s.m, t.m))]
    s = data.draw(st.sampled_from(smaller))
    q = quotient_label(t, s)
    assert DivisorTuple(q.a + s.a, tuple(x + y for x, y in zip(q.m, s.m))) == t
    assert quotient_label(t, DivisorTuple(0, (0,) * len(t.m))) == t


def test_uncertified_factorization_hard_fails():
    bad = HeightOnePrimeFactor(PrimeKind.DISTINGUISHED, (10, 5, 1), Irreducibility.UNRESOLVED)
    f = IdealFactorization(0, ((bad, 1),))
    for fn in (count_free, divisor_set, rectangle_graph):
        with pytest.raises(UncertifiedFactorization):
            fn(f)
    with pytest.raises(UncertifiedFactorization):
        variation_set(f, "odd")


def test_parse_factor_spec():
    out = parse_factor_spec("T+686:1,T+5:1,T+10:2")
    assert [(f.poly, e) for f, e in out] == [((686, 1), 1), ((5, 1), 1), ((10, 1), 2)]
    (f, _), = parse_factor_spec("T^2+5", p=5)
    assert f.certificate == "eisenstein"
    (f, _), = parse_factor_spec("T^2+25")
    assert f.irreducibility is Irreducibility.UNRESOLVED
    (f, _), = parse_factor_spec("T^2+25", assume_irreducible=True)
    assert f.irreducibility is Irreducibility.ASSUMED
    assert count_free(IdealFactorization(0, tuple(parse_factor_spec("T^2+25:2", assume_irreducible=True)))) == 3
    with pytest.raises(ValueError):
        parse_factor_spec("T+3", p=5)
    with pytest.raises(ValueError):
        parse_factor_spec("2T+5")


def test_factorization_validation():
    with pytest.raises(ValueError):
        IdealFactorization(-1)
    with pytest.raises(ValueError):
        IdealFactorization(0, ((lin(5), 1), (lin(5), 2)))
    with pytest.raises(ValueError):
        IdealFactorization(0, ((HeightOnePrimeFactor.prime_p(), 1),))


def test_coordinates_include_p_only_when_mu_positive():
    assert rectangle_graph(fact(0, [1])).coordinate_names == ("T+5",)
    g = rectangle_graph(fact(2, [1]))
    assert g.coordinate_names == ("p", "T+5") and len(g.vertices) == 6
    assert list(product(range(3), range(2))) == [v.coords(True) for v in g.vertices]
