from __future__ import annotations

from fractions import Fraction

import pytest

from quillendef.derivations import bracket_der
from quillendef.quillen import CohomologySpec, ModelError, build_model, check_differential, validate_spec
from quillendef.specfile import bundled_names, load_spec


def d_of(model, name):
    return {model.alg.show(t): c for t, c in model.differential.value(name).terms.items()}


def test_cp2_model():
    # d w = 1/2 [v, v] for the truncated polynomial algebra on a degree-2 class
    spec = CohomologySpec.build("cp2", [("x", 2), ("x2", 4)], [("x", "x", "x2")])
    m = build_model(spec)
    assert d_of(m, "x2") == {"[x,x]": Fraction(1, 2)}
    assert [(g.degree, g.weight) for g in m.gens.entries] == [(-1, 2), (-3, 4)]


def test_product_of_odd_spheres():
    spec = CohomologySpec.build("s3s3", [("a", 3), ("b", 3), ("ab", 6)], [("a", "b", "ab")])
    assert d_of(build_model(spec), "ab") == {"[a,b]": -1}


def test_bouquet_has_zero_differential():
    m = build_model(load_spec("wedge_r2_k3"))
    assert m.is_bouquet


@pytest.mark.parametrize("name", bundled_names())
def test_bundled_models_square_to_zero(name):
    m = build_model(load_spec(name))
    assert check_differential(m.differential) == []
    assert not bracket_der(m.differential, m.differential)


@pytest.mark.parametrize(
    "classes, products, fragment",
    [
        ([("a", 1)], [], "simply connected"),
        ([("a", 2), ("a", 3)], [], "duplicate"),
        ([("a", 2)], [("a", "q", "a")], "unknown class"),
        ([("a", 2), ("b", 5)], [("a", "a", "b")], "has degree 4"),
        ([("a", 3), ("b", 6)], [("a", "a", "b")], "must vanish"),
        ([("a", 2), ("b", 2), ("c", 4)], [("a", "b", "c"), ("b", "a", {"c": 2})], "Koszul sign"),
        (
            [("a", 2), ("b", 2), ("c", 4), ("e", 6)],
            [("a", "b", "c"), ("c", "b", "e")],
            "associativity",
        ),
    ],
)
def test_invalid_algebras_are_rejected(classes, products, fragment):
    spec = CohomologySpec.build("bad", classes, products)
    problems = validate_spec(spec)
    assert any(fragment in p for p in problems), problems
    with pytest.raises(ModelError):
        build_model(spec)


def test_graded_commutative_completion():
    spec = CohomologySpec.build("s3s3", [("a", 3), ("b", 3), ("ab", 6)], [("a", "b", "ab")])
    assert spec.table()[("b", "a")] == {"ab": -1}
