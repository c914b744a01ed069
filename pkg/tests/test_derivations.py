from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complex_for
from quillendef.derivations import Derivation, apply, bracket_der, differential_der
from strategies import elements

SPECS = ["prod_s2s2_s3", "s3_s3_s8_s10_e13", "prod_s3s3_s5"]


def _sign(a, b):
    return -1 if a.degree % 2 and b.degree % 2 else 1


def test_from_terms_and_describe():
    cx = complex_for("wedge_r2_k3")
    theta = Derivation.from_terms(cx.alg, [(1, ("x1", ("x1", "x2")), "y"), (Fraction(-1, 2), ("x2", ("x1", "y")), "z")])
    assert theta.degree == 1
    assert theta.weights() == {-1}
    assert "d y" in theta.describe() and "d z" in theta.describe()
    assert not theta - theta


def test_mixed_degrees_are_rejected():
    cx = complex_for("wedge_r2_k3")
    with pytest.raises(ValueError):
        Derivation.from_terms(cx.alg, [(1, ("x1", ("x1", "x2")), "y"), (1, ("x1", "x2"), "y")])


@settings(max_examples=60)
@given(st.sampled_from(SPECS), st.data())
def test_bracket_graded_antisymmetry(name, data):
    cx = complex_for(name)
    a = data.draw(elements(cx, data.draw(st.sampled_from([0, 1]))))
    b = data.draw(elements(cx, 1))
    assert bracket_der(a, b) == bracket_der(b, a) * (-_sign(a, b))


@settings(max_examples=40)
@given(st.sampled_from(SPECS), st.data())
def test_bracket_graded_jacobi(name, data):
    cx = complex_for(name)
    a, b = (data.draw(elements(cx, 0)) for _ in range(2))
    c = data.draw(elements(cx, 1))
    lhs = bracket_der(a, bracket_der(b, c))
    rhs = bracket_der(bracket_der(a, b), c) + bracket_der(b, bracket_der(a, c)) * _sign(a, b)
    assert lhs == rhs


@settings(max_examples=60)
@given(st.sampled_from(SPECS), st.data())
def test_differential_squares_to_zero_and_is_a_derivation(name, data):
    cx = complex_for(name)
    model = cx.model
    a = data.draw(elements(cx, 0))
    b = data.draw(elements(cx, 1))
    assert not differential_der(model, differential_der(model, a))
    assert differential_der(model, a) == bracket_der(model.differential, a)
    lhs = differential_der(model, bracket_der(a, b))
    rhs = bracket_der(differential_der(model, a), b) + bracket_der(a, differential_der(model, b))
    assert lhs == rhs


@settings(max_examples=60)
@given(st.data())
def test_leibniz_rule_on_elements(data):
    cx = complex_for("wedge_r2_k3")
    alg = cx.alg
    theta = data.draw(elements(cx, 1))
    names = list(alg.gens.names)
    u = alg.normalize((data.draw(st.sampled_from(names)), data.draw(st.sampled_from(names))))
    v = alg.letter(data.draw(st.sampled_from(names)))
    if not u:
        return
    (du,) = u.degrees()
    lhs = apply(theta, alg.bracket(u, v))
    rhs = alg.bracket(apply(theta, u), v) + alg.bracket(u, apply(theta, v)) * (-1) ** (theta.degree * du)
    assert lhs == rhs
