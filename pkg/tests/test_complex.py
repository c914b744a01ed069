from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complex_for
from quillendef.complex import TruncationError, assemble_controlling, natural_weight_min
from quillendef.derivations import Derivation
from quillendef.linalg import nullspace, rank
from quillendef.quillen import build_model
from quillendef.specfile import bundled_names, load_spec
from strategies import elements

PRODUCTS = ["prod_s2s2_s3", "prod_s2s3_s4", "prod_s3s3_s5", "s3_s3_s8_s10_e13"]


@pytest.mark.parametrize("name", PRODUCTS)
def test_cohomology_dims_by_rank_nullity(name):
    """dim H = dim ker d_n - rank d_(n-1), computed without the splitting."""
    cx = complex_for(name)
    for n in cx.degree_set:
        for w in cx.weights(n):
            cols = cx.differential_columns(n, w)
            kernel = len(nullspace(cols))
            below = rank(cx.differential_columns(n - 1, w)) if cx.has_block(n - 1, w) else 0
            assert cx.cohomology(n, w).dimension == kernel - below


@pytest.mark.parametrize("name", PRODUCTS)
def test_splitting_is_consistent(name):
    cx = complex_for(name)
    for n in cx.degree_set:
        for w in cx.weights(n):
            coh = cx.cohomology(n, w)
            for h in coh.representatives:
                assert not cx.split(cx.d(cx.derivation(n, w, h))).get((n + 1, w))
                assert coh.project(h) and not coh.contract(h)
            for b, pre in zip(coh.boundaries, coh.boundary_preimages):
                assert coh.is_boundary(b)
                assert coh.contract(b) == pre


@settings(max_examples=100)
@given(st.sampled_from(PRODUCTS), st.data())
def test_contraction_inverts_d_on_boundaries(name, data):
    cx = complex_for(name)
    n = data.draw(st.sampled_from([0, 1]))
    x = data.draw(elements(cx, n))
    dx = cx.d(x)
    for (m, w), vec in cx.split(dx).items():
        coh = cx.cohomology(m, w)
        assert coh.is_boundary(vec)
        g = cx.derivation(m - 1, w, coh.contract(vec))
        assert cx.split(cx.d(g)).get((m, w), {}) == vec


@settings(max_examples=60)
@given(st.sampled_from(PRODUCTS), st.data())
def test_d_squares_to_zero_in_blocks(name, data):
    cx = complex_for(name)
    x = data.draw(elements(cx, 0))
    assert not cx.d(cx.d(x))


@pytest.mark.parametrize("name", bundled_names())
def test_natural_weight_bound_is_exact(name):
    model = build_model(load_spec(name))
    bound = natural_weight_min(model)
    deep = assemble_controlling(model, (0, 1, 2), bound - 3)
    assert all(not deep.dimension(n, w) for n in (0, 1, 2) for w in range(bound - 3, bound))


def test_natural_weight_bound_values():
    got = {name: natural_weight_min(build_model(load_spec(name))) for name in ["wedge_r2_k2", "wedge_r2_k3", "prod_s2s2_s3", "s3_s3_s5_s10"]}
    assert got == {"wedge_r2_k2": -6, "wedge_r2_k3": -5, "prod_s2s2_s3": -3, "s3_s3_s5_s10": -3}


def test_truncation_errors():
    model = build_model(load_spec("wedge_r2_k3"))
    with pytest.raises(TruncationError):
        assemble_controlling(model, (1, 2), None)
    with pytest.raises(TruncationError):
        assemble_controlling(model, (1, 2), 0)
    cx = assemble_controlling(model, (1, 2), -1)
    deep = Derivation.from_terms(model.alg, [(1, ("x1", ("x2", ("x1", ("x1", "x2")))), "z")])
    with pytest.raises(TruncationError):
        cx.split(deep)
    assert cx.split(deep, strict=False) == {}
    with pytest.raises(TruncationError):
        cx.cohomology(0, -1)


def test_top_degree_uses_true_cycles():
    # d: L^2 -> L^3 is nonzero somewhere here, so cycles must be cut out
    cx = complex_for("s3_s3_s8_s10_e13", None, (0, 1))
    wide = complex_for("s3_s3_s8_s10_e13", None, (0, 1, 2))
    for w in cx.weights(1):
        assert cx.cohomology(1, w).dimension == wide.cohomology(1, w).dimension


def test_negative_degrees_give_true_h0():
    narrow = complex_for("prod_s2s2_s3")
    wide = complex_for("prod_s2s2_s3", None, (-1, 0, 1, 2))
    h0 = lambda cx: sum(cx.cohomology(0, w).dimension for w in cx.weights(0))
    assert h0(narrow) == 14  # cohomology of the non-negative part: all of Z^0
    assert h0(wide) == 4
