from __future__ import annotations

from fractions import Fraction

import pytest

from quillendef.derivations import Derivation
from quillendef.families import repaired_spec, s2s2_s3_spec, wedge_spec
from quillendef.quillen import ModelError, build_model
from quillendef.specfile import (
    SpecParseError,
    bundled_names,
    format_spec,
    load_derivation,
    load_spec,
    parse_combination,
    parse_derivation,
    parse_spec,
    resolve_path,
    spec_digest,
)

GOOD = """\
name: demo   # comment
classes:
  a 2
  b 3
  ab 5
products:
  a b -> ab
"""


def test_parse_good_spec():
    spec = parse_spec(GOOD)
    assert spec.name == "demo"
    assert spec.classes == (("a", 2), ("b", 3), ("ab", 5))
    assert len(spec.products) == 1


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("name: x\nclasses:\n  a\n", 3, 3),
        ("name: x\nclasses:\n  a 2\nproducts:\n  a a b -> a\n", 5, 3),
        ("name: x\nclasses:\n  a 2\nproducts:\n  a a\n", 5, 3),
        ("name: x\nstray line\n", 2, 1),
        ("classes:\n  a 2\n", 1, 1),
        ("name: x\nclasses: junk\n", 2, 10),
    ],
)
def test_parse_errors_report_position(text, line, column):
    with pytest.raises(SpecParseError) as info:
        parse_spec(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert str(info.value).startswith(f"line {line}, column {column}:")


def test_linear_combinations():
    assert parse_combination("2*a - 1/2*b + c", 1, 0) == {"a": 2, "b": Fraction(-1, 2), "c": 1}
    assert parse_combination("a - a + b", 1, 0) == {"b": 1}
    with pytest.raises(SpecParseError) as info:
        parse_combination("a b", 7, 10)
    assert info.value.line == 7 and info.value.column == 13


def test_round_trip_and_digest():
    for spec in (wedge_spec(2), s2s2_s3_spec(), repaired_spec()):
        again = parse_spec(format_spec(spec))
        assert spec_digest(again) == spec_digest(spec)
    # the digest sees products completed by graded commutativity
    a = parse_spec("name: p\nclasses:\n  a 2\n  b 3\n  ab 5\nproducts:\n  a b -> ab\n")
    b = parse_spec("name: q\nclasses:\n  a 2\n  b 3\n  ab 5\nproducts:\n  b a -> ab\n")
    assert spec_digest(a) == spec_digest(b)
    assert spec_digest(a) != spec_digest(s2s2_s3_spec())


def test_bundled_specs_load():
    names = bundled_names()
    assert {"wedge_r2_k3", "prod_s2s2_s3", "s3_s3_s8_s13", "s3_s3_s8_s10_e13"} <= set(names)
    for name in names:
        spec = load_spec(name)
        assert spec.name == name
        build_model(spec)
    w = load_spec("wedge_r2_k3")
    assert len(w.classes) == 4 and not w.products
    p = load_spec("prod_s2s2_s3")
    assert len(p.classes) == 5 and len(p.products) == 2


def test_resolve_and_missing(tmp_path):
    f = tmp_path / "mine.spec"
    f.write_text(GOOD)
    assert resolve_path(str(f), ".spec") == f
    assert resolve_path("wedge_r2_k3.spec", ".spec").name == "wedge_r2_k3.spec"
    with pytest.raises(FileNotFoundError):
        load_spec("no_such_spec")


def test_invalid_spec_is_rejected(tmp_path):
    f = tmp_path / "bad.spec"
    f.write_text("name: bad\nclasses:\n  a 1\n")
    with pytest.raises(ModelError):
        load_spec(str(f))


def test_parse_derivations():
    alg = build_model(load_spec("s3_s3_s8_s10_e13")).alg
    theta1 = load_derivation(alg, "theta1")
    expected = Derivation.from_terms(alg, [(1, ("x1", ("x1", "x2")), "y"), (1, ("x2", ("x1", "y")), "z")])
    assert theta1 == expected
    d = parse_derivation(alg, "-1/2 * [x1,x2] d y\n# comment\n\n3 [x2,x1] d y\n")
    assert d == Derivation.from_terms(alg, [(Fraction(-7, 2), ("x1", "x2"), "y")])
    with pytest.raises(SpecParseError):
        parse_derivation(alg, "[x1,x2] y")
    with pytest.raises(SpecParseError) as info:
        parse_derivation(alg, "[x1,x2] d y\n[x1,q] d y")
    assert info.value.line == 2
