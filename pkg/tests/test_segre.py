from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quillendef.families import beta_words
from quillendef.segre import (
    bracket_check,
    evaluate_component,
    matrix_point,
    product_matrix,
    segre_data,
    segre_relations,
)


@lru_cache(maxsize=None)
def data(r, s=1):
    return segre_data(r, 3, s)


@pytest.mark.parametrize("r, c", [(2, 2), (3, 8)])
def test_component_is_span_of_minors(r, c):
    rep = segre_relations(r)
    assert rep.c == c == len(beta_words(r))
    assert len(rep.minors) == c * (c - 1) // 2
    assert rep.span_equal
    assert rep.minors_present == len(rep.minors)
    assert rep.images_independent and rep.image_rank == len(rep.minors)


def test_r3_has_28_minors():
    assert len(segre_relations(3).minors) == 28


def test_bad_parameters():
    with pytest.raises(ValueError):
        segre_relations(1)
    with pytest.raises(ValueError):
        segre_relations(2, k=2)


@pytest.mark.parametrize("r", [2, 3])
def test_bracket_is_minor_sum(r):
    assert bracket_check(data(r), r)


def test_product_matrix():
    assert product_matrix([[1], [2]], [[3, 4]]) == [[3, 4], [6, 8]]


def _symmetric(m):
    return all(m[i][j] == m[j][i] for i in range(len(m)) for j in range(i))


entries = st.integers(-2, 2).map(Fraction)


@settings(max_examples=80)
@given(st.data())
def test_points_vanish_exactly_when_mn_symmetric(draw):
    r, s = 2, 2
    d = data(r, s)
    c = len(beta_words(r))
    m = draw.draw(st.lists(st.lists(entries, min_size=s, max_size=s), min_size=c, max_size=c))
    if draw.draw(st.booleans()):
        # force a symmetric product: n = m^T
        n = [[m[q][i] for q in range(c)] for i in range(s)]
    else:
        n = draw.draw(st.lists(st.lists(entries, min_size=c, max_size=c), min_size=s, max_size=s))
    values = evaluate_component(d, matrix_point(d, s, m, n))
    assert (not any(values)) == _symmetric(product_matrix(m, n))


def test_rank_one_points_lie_on_the_cone():
    d = data(3)
    c = len(beta_words(3))
    m = [[Fraction(p + 1)] for p in range(c)]
    n = [[Fraction(2 * (q + 1)) for q in range(c)]]
    assert not any(evaluate_component(d, matrix_point(d, 1, m, n)))
    n[0][0] += 1
    assert any(evaluate_component(d, matrix_point(d, 1, m, n)))


def test_minors_are_quadrics_in_u_and_v():
    rep = segre_relations(2)
    (minor,) = rep.minors
    names = [rep.ring.names[i] for i in minor.variables()]
    assert sorted(names) == ["u1", "u2", "v1", "v2"]
    assert minor.is_homogeneous() and minor.degree == 2
    assert all(g.variables() <= minor.variables() for g in rep.component)
