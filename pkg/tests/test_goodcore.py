from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tamegood import oracle
from tamegood.errors import DomainError, HypothesisError
from tamegood.lattice import is_prime
from tamegood.localfield import INF, FieldContext
from tamegood.rootsys import RootDatum, closure, subsystem_from_simple
from tamegood.suites import RANK_LE_6, random_group_element, random_lie_element
from tamegood.torus import (
    TorusGroupElement, TorusLieElement, eval_char_group, eval_char_lie, is_good_lie,
)
from tamegood.goodcore import (
    check_hypotheses, goodify_group, goodify_lie, hypothesis_soundness,
    tame_prime_bounds, tame_sufficient,
)
from tamegood.weyl import weyl_order_formula

F5 = FieldContext(5, precision=10)
T = F5.uniformizer()
A2 = RootDatum([("A", 2)])


def root(d, coeffs):
    return d.roots[d.index[coeffs]]


def test_tame_sufficient():
    e6 = RootDatum([("E", 6)])
    assert tame_sufficient(7, e6, True)
    assert not tame_sufficient(5, e6, True)
    assert not tame_sufficient(7, e6, False)


@pytest.mark.parametrize("kind,n,lower,upper", [
    ("A", 3, [2, 3], [2]), ("D", 5, [2, 3, 5], [2, 3]), ("E", 6, [2, 3, 5], [2, 3]),
    ("A", 4, [2, 3, 5], [5]), ("D", 4, [2, 3], [2, 3]), ("B", 3, [2, 3], [2, 3]),
    ("G", 2, [2, 3], [2, 3]),
])
def test_tame_prime_bounds(kind, n, lower, upper):
    rep = tame_prime_bounds(kind, n)
    assert rep.excluded_lower == lower and rep.excluded_upper == upper
    assert set(rep.excluded_upper) <= set(rep.excluded_lower)


def test_check_hypotheses_examples():
    e6 = RootDatum([("E", 6)])
    for k in range(7):
        for subset in list(combinations(range(6), k))[:4]:
            assert check_hypotheses(7, e6, subsystem_from_simple(e6, subset)).ok
    b2 = RootDatum([("B", 2)], "sc")
    long_roots = closure(b2, [c for c in b2.root_coeffs if c in {(1, 0), (1, 2)}])
    assert not check_hypotheses(2, b2, long_roots).bad_prime_ok
    a2 = RootDatum([("A", 2)], "sc")
    rep = check_hypotheses(3, a2, closure(a2, range(6)))
    assert not rep.char_torsion_ok
    assert rep.witnesses["char_quotient_invariants"] == [3]


def test_hypothesis_soundness_rank_le_6():
    for kind, n in RANK_LE_6:
        d = RootDatum([(kind, n)])
        order = weyl_order_formula(d)
        for p in (q for q in range(2, 30) if is_prime(q) and order % q):
            assert all(flag for _, flag in hypothesis_soundness(d, p))


def test_goodify_lie_a2_example():
    x = TorusLieElement.from_root_values(A2, F5, [T, T * T])
    res = goodify_lie(x, 5)
    assert res.depth == 1
    # X1 = t^2 * coroot(a2) / 2, and 1/2 = 3 mod 5
    a2 = A2.index[(0, 1)]
    expected = TorusLieElement.from_cocharacter(A2, F5, A2.coroots[a2], (T * T).scale(3))
    assert res.X1.agrees_with(expected)
    assert eval_char_lie(res.X2, root(A2, (0, 1))).is_exact_zero()
    v = eval_char_lie(res.X2, root(A2, (1, 0)))
    assert v.agrees_with(T + (T * T).scale(3)) and v.val() == 1
    verdict = oracle.exhaustive_goodness(res.X2)
    assert verdict["good"] and verdict["certain"] and verdict["depth"] == 1


def test_goodify_lie_trivial_cases():
    good = TorusLieElement.from_root_values(A2, F5, [T, T])
    res = goodify_lie(good)
    assert res.X1.is_exact_zero() and res.X2.agrees_with(good)
    zero = TorusLieElement.zero(A2, F5)
    assert goodify_lie(zero).depth is INF


def test_goodify_lie_identity_coset():
    # depth 2 with only a2 beyond it
    x = TorusLieElement.from_root_values(A2, F5, [T * T, T * T * T])
    res = goodify_lie(x)
    assert res.depth == 2 and len(res.phi0) == 2


def test_goodify_refuses_bad_p():
    ctx = FieldContext(3, precision=6)
    t = ctx.uniformizer()
    a2 = RootDatum([("A", 2)], "sc")
    x = TorusLieElement(a2, ctx, [t, t])
    with pytest.raises(HypothesisError):
        goodify_lie(x)
    with pytest.raises(DomainError):
        goodify_lie(TorusLieElement.from_root_values(A2, F5, [T, T]), p=7)


def test_goodify_group_a2_example():
    g = TorusGroupElement(A2, F5, [1 + T, 1 + T * T])
    res = goodify_group(g, 5)
    a1, a2 = A2.index[(1, 0)], A2.index[(0, 1)]
    assert res.n_map == {a2: 2}
    # gamma1 = lambda(y) with lambda = 2 * coweight, so a2(gamma1) = y^2 = 1 + t^2
    assert eval_char_group(res.gamma1, A2.roots[a2]).agrees_with(1 + T * T)
    assert (eval_char_group(res.gamma1, A2.roots[a1]) - 1).val() == 2
    assert (eval_char_group(res.gamma2, A2.roots[a2]) - 1).vanishes()
    assert (eval_char_group(res.gamma2, A2.roots[a1]) - 1).val() == 1
    verdict = oracle.exhaustive_goodness(res.gamma2)
    assert verdict["good"] and verdict["depth"] == 1


def test_goodify_group_trivial_cases():
    g = TorusGroupElement(A2, F5, [1 + T, 1 + T])
    res = goodify_group(g)
    assert res.gamma1.is_identity() and res.gamma2.agrees_with(g)
    ident = TorusGroupElement.identity(A2, F5)
    assert goodify_group(ident).depth is INF


grid = st.sampled_from([("A", 2, "sc"), ("B", 2, "adjoint"), ("G", 2, "sc"), ("A", 3, "sc"),
                        ("C", 3, "adjoint"), ("B", 3, "sc"), ("A", 2, "adjoint")])


@settings(max_examples=60, deadline=None)
@given(grid, st.integers(0, 2**32 - 1))
def test_goodify_lie_properties(typ, seed):
    kind, n, lattice = typ
    rng = np.random.default_rng(seed)
    x = random_lie_element(RootDatum([(kind, n)], lattice), rng)
    res = goodify_lie(x)
    verdict = oracle.exhaustive_goodness(res.X2)
    assert verdict["good"] and verdict["depth"] == res.depth
    assert is_good_lie(res.X2).good
    assert all(c.val_or_bound()[0] > res.depth for c in (x - res.X2).coords)
    assert goodify_lie(res.X2).X2.agrees_with(res.X2)


@settings(max_examples=40, deadline=None)
@given(grid, st.integers(0, 2**32 - 1))
def test_goodify_group_properties(typ, seed):
    kind, n, lattice = typ
    rng = np.random.default_rng(seed)
    d = RootDatum([(kind, n)], lattice)
    g = random_group_element(d, rng)
    res = goodify_group(g)
    verdict = oracle.exhaustive_goodness(res.gamma2)
    assert verdict["good"] and verdict["depth"] == res.depth
    for b in res.phi0.members:
        assert eval_char_group(res.gamma1, d.roots[b]).agrees_with(eval_char_group(g, d.roots[b]))
    assert goodify_group(res.gamma2).gamma2.agrees_with(res.gamma2)
    # gamma = gamma1 * gamma2
    assert (res.gamma1 * res.gamma2).agrees_with(g)


def test_basis_choice_does_not_matter():
    rng = np.random.default_rng(11)
    d = RootDatum([("A", 3)], "sc")
    checked = 0
    for _ in range(20):
        x = random_lie_element(d, rng)
        res = goodify_lie(x)
        if not res.phi0.members or len(res.phi0) == len(d.roots):
            continue
        alt = goodify_lie(x, functional=[7, -3, 5])
        assert alt.X2.agrees_with(res.X2)
        checked += 1
    assert checked
