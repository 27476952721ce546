from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tamegood.errors import DomainError
from tamegood.lattice import det
from tamegood.rootsys import (
    RootDatum, bad_primes, cartan_matrix, char_quotient_invariants, closure,
    connection_index, coweight_multiplier, fundamental_coweights, rational_closure,
    subsystem_basis, subsystem_from_simple, tabulated_type_data, torsion_primes_of_char_quotient,
)

ROOT_COUNTS = [
    ("A", 1, 2), ("A", 4, 20), ("B", 3, 18), ("C", 4, 32), ("D", 4, 24), ("D", 5, 40),
    ("E", 6, 72), ("E", 7, 126), ("E", 8, 240), ("F", 4, 48), ("G", 2, 12),
]

HIGHEST = [
    ("A", 3, (1, 1, 1)), ("B", 3, (1, 2, 2)), ("C", 3, (2, 2, 1)), ("D", 5, (1, 2, 2, 1, 1)),
    ("E", 6, (1, 2, 2, 3, 2, 1)), ("E", 8, (2, 3, 4, 6, 5, 4, 3, 2)),
    ("F", 4, (2, 3, 4, 2)), ("G", 2, (3, 2)),
]


@pytest.mark.parametrize("kind,n,count", ROOT_COUNTS)
def test_root_counts(kind, n, count):
    assert len(RootDatum([(kind, n)]).roots) == count


@pytest.mark.parametrize("kind,n,top", HIGHEST)
def test_highest_root(kind, n, top):
    assert RootDatum([(kind, n)]).highest_root() == top


def test_cartan_conventions():
    assert cartan_matrix("B", 2) == [[2, -1], [-2, 2]]
    assert cartan_matrix("C", 2) == [[2, -2], [-1, 2]]
    assert cartan_matrix("G", 2) == [[2, -3], [-1, 2]]


@pytest.mark.parametrize("kind,n", [("A", 2), ("B", 3), ("C", 3), ("G", 2), ("F", 4), ("E", 6)])
@pytest.mark.parametrize("lattice", ["adjoint", "sc"])
def test_pairing_and_reflections(kind, n, lattice):
    d = RootDatum([(kind, n)], lattice)
    for i in range(len(d.roots)):
        assert d.pairing[i][i] == 2
        for j in range(len(d.roots)):
            assert d.reflect(i, d.roots[j]) == d.roots[d.reflection_table[i][j]]
    for i, j in combinations(d.simple, 2):
        a, b = d.simple.index(i), d.simple.index(j)
        assert d.pairing[i][j] == d.cartan[a][b]


@pytest.mark.parametrize("kind,n", [("A", 1), ("A", 5), ("B", 4), ("C", 5), ("D", 4), ("D", 6),
                                    ("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)])
def test_tabulated_type_data(kind, n):
    d = RootDatum([(kind, n)])
    assert (bad_primes(d), connection_index(d)) == tabulated_type_data(kind, n)


def test_char_quotient():
    assert char_quotient_invariants(RootDatum([("A", 2)], "sc")) == [3]
    assert char_quotient_invariants(RootDatum([("A", 2)])) == []
    assert torsion_primes_of_char_quotient(RootDatum([("D", 4)], "sc")) == {2}
    assert char_quotient_invariants(RootDatum([("D", 4)], "sc")) == [2, 2]


def test_intermediate_lattice():
    # SO(6)-type lattice in A3: index 2 over the root lattice
    d = RootDatum([("A", 3)], {"generators": [[0, 1, 0], [2, -1, 0], [-1, 2, -1], [0, -1, 2]]})
    assert d.lattice == "custom"
    assert char_quotient_invariants(d) == [2]
    with pytest.raises(DomainError):
        RootDatum([("A", 2)], {"generators": [[2, 0], [0, 2]]})


def test_product_type():
    d = RootDatum("A2xG2")
    assert d.type_tag == "A2xG2" and d.rank == 4 and len(d.roots) == 18
    assert bad_primes(d) == {2, 3}


@pytest.mark.parametrize("kind,n", [("Q", 2), ("E", 5), ("G", 3), ("B", 1)])
def test_invalid_types(kind, n):
    with pytest.raises(DomainError):
        RootDatum([(kind, n)])


def test_long_roots_b2():
    d = RootDatum([("B", 2)])
    long_roots = [c for c in d.root_coeffs if c in {(1, 0), (-1, 0), (1, 2), (-1, -2)}]
    s = closure(d, long_roots)
    assert len(s) == 4
    assert rational_closure(d, long_roots) != s
    assert s.is_closed() and not s.is_rationally_closed()


def test_short_roots_g2_not_closed():
    d = RootDatum([("G", 2)])
    short = [c for c in d.root_coeffs if c in {(1, 0), (-1, 0), (1, 1), (-1, -1), (2, 1), (-2, -1)}]
    assert len(closure(d, short)) == 12


def coweight_pairings(d, s, vectors):
    return {(a, b): sum(x * y for x, y in zip(vectors[a], d.roots[b]))
            for a in vectors for b in s.basis}


@pytest.mark.parametrize("kind,n,lattice", [("A", 3, "sc"), ("B", 3, "adjoint"), ("G", 2, "sc"),
                                            ("D", 4, "adjoint"), ("F", 4, "sc")])
def test_fundamental_coweights_dual(kind, n, lattice):
    d = RootDatum([(kind, n)], lattice)
    for k in range(1, n + 1):
        for subset in combinations(range(n), k):
            s = subsystem_from_simple(d, subset)
            vectors, coeffs, _ = fundamental_coweights(s)
            for (a, b), v in coweight_pairings(d, s, vectors).items():
                assert v == (1 if a == b else 0)
            for a in vectors:
                n_a = coweight_multiplier(coeffs[a])
                assert all((n_a * x).denominator == 1 for x in coeffs[a].values())


def test_a2_coweight():
    d = RootDatum([("A", 2)])
    s = subsystem_from_simple(d, [1])
    vectors, coeffs, primes = fundamental_coweights(s)
    (a,) = s.basis
    assert coeffs[a] == {a: Fraction(1, 2)}
    assert primes == {2}


def test_basis_functional():
    d = RootDatum([("A", 2)])
    full = closure(d, range(len(d.roots)))
    assert len(subsystem_basis(full)) == 2
    alt = subsystem_basis(full, [-1, 3])
    assert len(alt) == 2 and set(alt) != set(full.basis)
    with pytest.raises(DomainError):
        subsystem_basis(full, [1, -1])


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([("A", 3), ("B", 3), ("C", 3), ("G", 2), ("D", 4)]),
       st.lists(st.integers(0, 10**6), min_size=1, max_size=4))
def test_closure_properties(typ, picks):
    d = RootDatum([typ])
    subset = {x % len(d.roots) for x in picks}
    c = closure(d, subset)
    assert subset <= c.members
    assert closure(d, c).members == c.members
    assert c.members <= rational_closure(d, subset).members
    assert {d.negation[i] for i in c.members} == c.members
    basis = c.basis
    assert abs(det([[d.pairing[i][j] for j in basis] for i in basis])) == connection_index(c)
