from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tamegood.errors import DomainError, IndeterminateError
from tamegood.localfield import INF, FieldContext
from tamegood.rootsys import RootDatum
from tamegood.suites import random_group_element, random_lie_element
from tamegood.torus import (
    TorusGroupElement, TorusLieElement, depth_group, depth_lie, eval_char_group,
    eval_char_lie, eval_chars_group, is_good_group, is_good_lie,
)

F5 = FieldContext(5, precision=10)
T = F5.uniformizer()
A1 = RootDatum([("A", 1)])
A2 = RootDatum([("A", 2)])


def root(d, coeffs):
    return d.roots[d.index[coeffs]]


def test_coroot_scaled_by_t():
    x = TorusLieElement.from_cocharacter(A1, F5, A1.coroots[A1.simple[0]], T)
    v = eval_char_lie(x, root(A1, (1,)))
    assert v.agrees_with(2 * T) and v.val() == 1


def test_zero_element():
    x = TorusLieElement.zero(A2, F5)
    assert all(eval_char_lie(x, r).is_exact_zero() for r in A2.roots)
    assert depth_lie(x) is INF
    rep = is_good_lie(x)
    assert rep.good and rep.certain and rep.depth is INF


@pytest.mark.parametrize("lattice", ["adjoint", "sc"])
def test_a2_from_root_values(lattice):
    d = RootDatum([("A", 2)], lattice)
    x = TorusLieElement.from_root_values(d, F5, [T, T * T])
    assert eval_char_lie(x, root(d, (1, 0))).agrees_with(T)
    assert eval_char_lie(x, root(d, (0, 1))).agrees_with(T * T)
    assert depth_lie(x) == 1
    assert min(eval_char_lie(x, r).val() for r in d.roots) >= 1
    rep = is_good_lie(x)
    assert not rep.good
    assert {d.root_coeffs[i] for i in rep.violating} == {(0, 1), (0, -1)}


def test_a2_good_example():
    x = TorusLieElement.from_root_values(A2, F5, [T, T])
    rep = is_good_lie(x)
    assert rep.good and rep.depth == 1
    assert eval_char_lie(x, root(A2, (1, 1))).agrees_with(2 * T)


def test_group_examples():
    g = TorusGroupElement(A1, F5, [1 + T])
    assert eval_char_group(g, (2,)).agrees_with(1 + 2 * T + T * T)
    assert is_good_group(g).good and depth_group(g) == 1
    g2 = TorusGroupElement(A2, F5, [1 + T, 1 + T * T])
    chi = eval_char_group(g2, root(A2, (1, 1)))
    assert (chi - 1).val() == 1
    rep = is_good_group(g2)
    assert not rep.good and rep.depth == 1
    g3 = TorusGroupElement(A2, F5, [1 + T * T, 1 + T * T])
    assert depth_group(g3) == 2
    ident = TorusGroupElement.identity(A2, F5)
    assert eval_char_group(ident, (3, -2)).agrees_with(F5.one())
    assert depth_group(ident) is INF and is_good_group(ident).good


def test_group_rejects_non_units():
    with pytest.raises(DomainError):
        TorusGroupElement(A1, F5, [2 + T])


def test_indeterminate_depth():
    x = TorusLieElement(A2, F5, [T.truncate(0), T * T])
    with pytest.raises(IndeterminateError):
        depth_lie(x)


def test_batched_group_evaluation():
    rng = np.random.default_rng(3)
    g = random_group_element(RootDatum([("G", 2)], "sc"), rng)
    for r, v in zip(g.datum.roots, eval_chars_group(g, g.datum.roots)):
        assert v.agrees_with(eval_char_group(g, r))


data = st.sampled_from([("A", 2, "sc"), ("B", 2, "adjoint"), ("G", 2, "sc"), ("A", 3, "adjoint")])


@settings(max_examples=40, deadline=None)
@given(data, st.integers(0, 2**32 - 1))
def test_depth_is_min_over_all_characters(typ, seed):
    kind, n, lattice = typ
    rng = np.random.default_rng(seed)
    x = random_lie_element(RootDatum([(kind, n)], lattice), rng)
    r = depth_lie(x)
    for _ in range(10):
        chi = tuple(int(c) for c in rng.integers(-5, 6, n))
        assert eval_char_lie(x, chi).val_or_bound()[0] >= r


@settings(max_examples=30, deadline=None)
@given(data, st.integers(0, 2**32 - 1))
def test_filtration_subgroup(typ, seed):
    kind, n, lattice = typ
    rng = np.random.default_rng(seed)
    d = RootDatum([(kind, n)], lattice)
    g = random_group_element(d, rng)
    r = depth_group(g)
    h = TorusGroupElement(d, g.field, [1 + (v - 1) * g.field.uniformizer() for v in g.values])
    assert depth_group(h) > r
    for z in (g * h, g.inverse(), h * g.inverse()):
        assert all((v - 1).val_or_bound()[0] >= r for v in z.values)


@settings(max_examples=30, deadline=None)
@given(data, st.integers(0, 2**32 - 1), st.integers(1, 4))
def test_unit_scaling_preserves_verdict(typ, seed, c):
    kind, n, lattice = typ
    rng = np.random.default_rng(seed)
    x = random_lie_element(RootDatum([(kind, n)], lattice), rng)
    unit = x.field.constant(c)
    if x.field.cap > 1:
        unit = unit + x.field.uniformizer()
    a, b = is_good_lie(x), is_good_lie(x.scale(unit))
    assert (a.good, a.depth) == (b.good, b.depth)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 3]))
def test_tame_descent(seed, e):
    rng = np.random.default_rng(seed)
    big = FieldContext(7, 1, 2, e, precision=4)
    small = big.base
    coords = [small.random_element(rng, -1, 4, zero_prob=0.3) for _ in range(2)]
    if all(c.vanishes() for c in coords):
        coords[0] = small.one()
    x_small = TorusLieElement(A2, small, coords)
    x_big = TorusLieElement(A2, big, [big.lift(c) for c in coords])
    assert depth_lie(x_small) == depth_lie(x_big)
    assert is_good_lie(x_small).good == is_good_lie(x_big).good
    vals = [1 + c * small.uniformizer() ** 2 for c in coords]
    if all(not (v - 1).vanishes() and (v - 1).val() > 0 for v in vals):
        g_small = TorusGroupElement(A2, small, vals)
        g_big = TorusGroupElement(A2, big, [big.lift(v) for v in vals])
        assert depth_group(g_small) == depth_group(g_big)


def test_ramified_depth():
    ctx = FieldContext(7, e=2, precision=4)
    pi = ctx.uniformizer()
    x = TorusLieElement.from_root_values(A2, ctx, [pi, pi * pi * pi])
    assert depth_lie(x) == Fraction(1, 2)
