from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import assoc_of_element, assoc_of_tree, brute_force_dimension, pbw_dimensions
from quillendef.lie import (
    FreeLieAlgebra,
    GeneratorTable,
    LieInputError,
    is_lyndon,
    lyndon_tree,
    parse_bracket,
    right_normed,
    witt_dimension,
)

# (L-degree, weight) patterns: even letters, odd letters, mixed
PATTERNS = {
    "even": GeneratorTable.of(("a", -2, 3), ("b", -2, 3)),
    "odd": GeneratorTable.of(("a", -1, 2), ("b", -1, 2)),
    "mixed": GeneratorTable.of(("a", -1, 2), ("b", -2, 3), ("c", -7, 8)),
}


def alg_of(kind: str) -> FreeLieAlgebra:
    return FreeLieAlgebra(PATTERNS[kind])


def test_lyndon_words():
    assert is_lyndon((0, 0, 1))
    assert not is_lyndon((0, 1, 0))
    assert not is_lyndon((0, 0))
    assert lyndon_tree((0, 0, 1)) == (0, (0, 1))
    assert lyndon_tree((0, 1, 1)) == ((0, 1), 1)


def test_small_basis_by_hand():
    even, odd = alg_of("even"), alg_of("odd")
    # [a,a] vanishes for an even letter and survives for an odd one
    assert [b.tree for b in even.enumerate_basis(2)] == [(0, 1)]
    assert sorted(b.tree for b in odd.enumerate_basis(2)) == [(0, 0), (0, 1), (1, 1)]
    assert not even.normalize(("a", "a"))
    assert odd.normalize(("a", ("a", "a"))) == odd.zero()


@pytest.mark.parametrize("kind", sorted(PATTERNS))
def test_basis_counts_match_witt_and_pbw(kind):
    alg = alg_of(kind)
    degrees = [g.degree for g in alg.gens.entries]
    pbw = pbw_dimensions(degrees, 6)
    for content, dim in pbw.items():
        assert len(alg.enumerate_basis(sum(content), content)) == dim == witt_dimension(degrees, content)


@pytest.mark.parametrize("kind", sorted(PATTERNS))
def test_basis_counts_match_brute_force_rank(kind):
    alg = alg_of(kind)
    degrees = [g.degree for g in alg.gens.entries]
    r = len(degrees)
    for n in range(1, 6 if r == 2 else 5):
        for content in pbw_dimensions(degrees, n):
            if sum(content) != n:
                continue
            assert len(alg.enumerate_basis(n, content)) == brute_force_dimension(degrees, content), content


def test_basis_elements_are_independent_in_tensor_algebra():
    from quillendef.linalg import Echelon

    alg = alg_of("mixed")
    basis = alg.enumerate_basis(5)
    e = Echelon()
    for b in basis:
        assert e.add(assoc_of_tree(b.tree, lambda i: alg.gens.entries[i].degree)[0])
    assert e.rank == len(basis)


def test_basis_word_bookkeeping():
    alg = alg_of("mixed")
    b = alg.basis_word(lyndon_tree((0, 1, 2)))
    assert b.content == (1, 1, 1)
    assert b.degree == -1 - 2 - 7
    assert b.weight == 2 + 3 + 8
    assert b.length == 3


def test_enumerate_basis_rejects_bad_input():
    alg = alg_of("even")
    with pytest.raises(LieInputError):
        alg.enumerate_basis(0)
    with pytest.raises(LieInputError):
        alg.enumerate_basis(3, (1, 1))
    with pytest.raises(LieInputError):
        alg.enumerate_basis(2, (1, 1, 0))


def test_parse_bracket():
    assert parse_bracket("[x1,[x1,x2]]") == ("x1", ("x1", "x2"))
    assert parse_bracket(" [ [a , b] , c ] ") == (("a", "b"), "c")
    for bad in ["[a,b", "[a b]", "a]", "[a,b]]", "[,a]"]:
        with pytest.raises(LieInputError):
            parse_bracket(bad)
    with pytest.raises(LieInputError):
        alg_of("even").normalize("[a,q]")


def test_right_normed():
    assert right_normed(["a", "b", "c"]) == ("a", ("b", "c"))
    assert right_normed(["a"]) == "a"


# ---- random bracket trees ------------------------------------------------


def trees(letters, max_len):
    leaf = st.sampled_from(letters)
    return st.recursive(leaf, lambda kids: st.tuples(kids, kids), max_leaves=max_len)


def _length(t):
    return 1 if not isinstance(t, tuple) else _length(t[0]) + _length(t[1])


def _assoc(alg, expr):
    idx = {n: i for i, n in enumerate(alg.gens.names)}

    def to_idx(e):
        return idx[e] if not isinstance(e, tuple) else (to_idx(e[0]), to_idx(e[1]))

    return assoc_of_tree(to_idx(expr), lambda i: alg.gens.entries[i].degree)[0]


@settings(max_examples=1000)
@given(st.sampled_from(sorted(PATTERNS)), st.data())
def test_normalize_matches_associative_embedding(kind, data):
    alg = alg_of(kind)
    t = data.draw(trees(list(alg.gens.names), 6))
    assert _length(t) <= 6
    assert assoc_of_element(alg.normalize(t)) == _assoc(alg, t)


@settings(max_examples=200)
@given(st.sampled_from(sorted(PATTERNS)), st.data())
def test_graded_antisymmetry(kind, data):
    alg = alg_of(kind)
    a = alg.normalize(data.draw(trees(list(alg.gens.names), 3)))
    b = alg.normalize(data.draw(trees(list(alg.gens.names), 3)))
    if not a or not b:
        return
    (da,), (db,) = a.degrees(), b.degrees()
    sign = -1 if da % 2 and db % 2 else 1
    assert alg.bracket(a, b) == alg.bracket(b, a) * (-sign)


@settings(max_examples=200)
@given(st.sampled_from(sorted(PATTERNS)), st.data())
def test_graded_jacobi(kind, data):
    alg = alg_of(kind)
    names = list(alg.gens.names)
    x, y, z = (alg.normalize(data.draw(trees(names, 2))) for _ in range(3))
    if not (x and y and z):
        return
    (dx,), (dy,), (dz,) = x.degrees(), y.degrees(), z.degrees()
    lhs = alg.bracket(x, alg.bracket(y, z))
    rhs = alg.bracket(alg.bracket(x, y), z) + alg.bracket(y, alg.bracket(x, z)) * (-1) ** (dx * dy)
    assert lhs == rhs


@settings(max_examples=100)
@given(st.data(), st.integers(-3, 3).filter(bool))
def test_bracket_is_bilinear(data, c):
    alg = alg_of("mixed")
    names = list(alg.gens.names)
    a, b, e = (alg.normalize(data.draw(trees(names, 3))) for _ in range(3))
    if len(b.degrees() | e.degrees()) > 1:
        return
    assert alg.bracket(a, b + e * Fraction(c)) == alg.bracket(a, b) + alg.bracket(a, e) * Fraction(c)
