from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from quillendef.linalg import Echelon, nullspace, rank, solve

entries = st.fractions(min_value=-3, max_value=3, max_denominator=3)
vectors = st.dictionaries(st.integers(0, 4), entries, max_size=5)


def _apply(columns, coeffs):
    out: dict = {}
    for j, c in coeffs.items():
        for k, v in columns[j].items():
            out[k] = out.get(k, 0) + c * v
    return {k: v for k, v in out.items() if v}


def test_rank_by_hand():
    assert rank([{0: 1, 1: 2}, {0: 2, 1: 4}, {2: Fraction(1, 3)}]) == 2
    assert rank([]) == 0
    assert rank([{0: 0}]) == 0


def test_express_tracks_labels():
    e = Echelon(track=True)
    e.add({0: 1, 1: 1}, "a")
    e.add({1: 1}, "b")
    assert e.express({0: 2, 1: 5}) == {"a": 2, "b": 3}
    assert e.express({2: 1}) is None


@settings(max_examples=300)
@given(st.lists(vectors, max_size=6))
def test_nullspace_vectors_are_in_kernel(columns):
    kernel = nullspace(columns)
    for v in kernel:
        assert not _apply(columns, v)
    assert len(kernel) + rank(columns) == len(columns)


@settings(max_examples=300)
@given(st.lists(vectors, min_size=1, max_size=6), st.data())
def test_solve_recovers_a_solution(columns, data):
    coeffs = data.draw(st.dictionaries(st.integers(0, len(columns) - 1), entries))
    target = _apply(columns, coeffs)
    sol = solve(columns, target)
    assert sol is not None
    assert _apply(columns, sol) == target


def test_solve_reports_inconsistent_system():
    assert solve([{0: 1}], {1: 1}) is None


@settings(max_examples=200)
@given(st.lists(vectors, max_size=6))
def test_reduced_basis_spans_the_same_space(rows):
    e = Echelon()
    for r in rows:
        e.add(r)
    f = Echelon()
    for r in e.reduced_basis():
        f.add(r)
    assert f.rank == e.rank
    assert all(f.contains(r) for r in rows)
