import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tamegood import oracle
from tamegood.errors import CapExceeded, DomainError
from tamegood.rootsys import RootDatum
from tamegood.weyl import (
    WeylGroup, char_poly_of_matrix, contains_minus_one, coxeter_element,
    diagram_automorphism, diagram_fixed_subgroup, longest_element, minus_one,
    no_order_multiple, poly_eval, poly_mul, t_pow_plus_one, weyl_order_formula,
)


def group(kind, n, lattice="adjoint"):
    return WeylGroup(RootDatum([(kind, n)], lattice)).enumerate()


@pytest.fixture(scope="module")
def d4():
    return group("D", 4)


@pytest.fixture(scope="module")
def d5():
    return group("D", 5)


@pytest.mark.parametrize("tag,order", [("A3", 24), ("B3", 48), ("D4", 192), ("E6", 51840),
                                       ("E7", 2903040), ("E8", 696729600), ("F4", 1152),
                                       ("G2", 12), ("A2xG2", 72)])
def test_order_formula(tag, order):
    assert weyl_order_formula(tag) == order


@pytest.mark.parametrize("kind,n", [("A", 3), ("B", 3), ("C", 3), ("G", 2), ("F", 4), ("D", 4)])
def test_generation_matches_formula(kind, n):
    assert len(group(kind, n).elements) == weyl_order_formula(f"{kind}{n}")


def test_cap():
    with pytest.raises(CapExceeded):
        WeylGroup(RootDatum([("E", 7)])).enumerate()
    with pytest.raises(CapExceeded):
        WeylGroup(RootDatum([("A", 4)])).enumerate(cap=100)


def test_a2_classes():
    g = group("A", 2)
    assert len(g.elements) == 6
    assert sorted(c["size"] for c in g.class_data) == [1, 2, 3]


def test_d4_classes(d4):
    assert len(d4.class_data) == 13
    assert sum(c["size"] for c in d4.class_data) == 192


@pytest.mark.parametrize("kind,n", [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3),
                                    ("D", 4), ("D", 5), ("G", 2), ("F", 4)])
def test_minus_one(kind, n):
    g = group(kind, n)
    expected = contains_minus_one(f"{kind}{n}")
    assert (minus_one(g) is not None) == expected == oracle.minus_one_by_search(g)


def test_longest_element(d4):
    w0 = longest_element(d4)
    assert w0 == minus_one(d4)
    a3 = group("A", 3)
    assert longest_element(a3) != minus_one(a3) is None


def test_coxeter_a2():
    g = group("A", 2)
    c = coxeter_element(g)
    assert c.char_poly() == [1, 1, 1] and c.order() == 3 and c.is_elliptic()
    idx = oracle.search_char_poly(g, [1, 1, 1])
    assert g[idx].char_poly() == [1, 1, 1]


@pytest.mark.parametrize("kind,n,h", [("A", 4, 5), ("B", 3, 6), ("D", 4, 6), ("G", 2, 6), ("F", 4, 12)])
def test_coxeter_number(kind, n, h):
    c = coxeter_element(group(kind, n))
    assert c.order() == h and c.is_elliptic()


def test_d5_char_polys(d5):
    for i, order in ((4, 8), (3, 12)):
        target = poly_mul(t_pow_plus_one(i), t_pow_plus_one(5 - i))
        w = d5[oracle.search_char_poly(d5, target)]
        assert w.order() == order and w.is_elliptic()
    assert no_order_multiple(d5, 5)


def test_diagram_automorphisms(d4):
    assert diagram_fixed_subgroup(d4, [0, 1, 3, 2]) == 48
    assert diagram_fixed_subgroup(d4, [2, 1, 3, 0]) == 12
    with pytest.raises(DomainError):
        diagram_automorphism(d4.datum, [1, 0, 2, 3])


def test_a_flip():
    g = group("A", 3)
    assert diagram_fixed_subgroup(g, [2, 1, 0]) == 8


def test_char_poly_matrix():
    assert char_poly_of_matrix([[0, -1], [1, -1]]) == [1, 1, 1]
    assert poly_eval([1, 0, -1], 1) == 0


def test_batched_char_polys_agree(d4):
    polys = oracle.batched_char_polys(oracle._simple_root_matrices(d4))
    for i in range(0, 192, 7):
        assert list(polys[i]) == d4[i].char_poly()


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([("B", 3), ("G", 2), ("A", 4), ("D", 4)]),
       st.lists(st.integers(0, 3), min_size=1, max_size=12), st.sampled_from(["sc", "adjoint"]))
def test_random_words(typ, word, lattice):
    g = WeylGroup(RootDatum([typ], lattice)).enumerate()
    w = g.identity()
    for i in word:
        w = w * g.simple_reflection(i % g.datum.rank)
    assert w.key in g._lookup
    assert g.order % w.order() == 0
    assert (w ** w.order()).is_identity()
    assert (w * w.inverse()).is_identity()
    # char poly is a class function
    s = g.simple_reflection(word[0] % g.datum.rank)
    assert (s * w * s).char_poly() == w.char_poly()
    # the reflection representation preserves the pairing
    m = np.array(w.matrix)
    for i in g.datum.simple:
        x = np.array(g.datum.coroots[i])
        assert tuple(m @ x) == g.datum.coroots[w.apply_root(i)]


def test_element_orders_match_powering(d4):
    assert (d4.element_orders() == oracle.orders_by_powering(d4)).all()
