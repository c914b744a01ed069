"""Segre-type relations for bouquets of S^k, S^(3k-1) and S^(6k-3).

Degree-one derivations split as ``A = x^3 y d z`` (weight -2) and
``B = x^3 d y`` (weight -1).  ``A`` is written in three right-normed
shapes: ``ijk y`` (i>=j>=k), ``(ij)(ky)`` (i<j) and ``y ijk`` (i>=j<k).
Pairing the last shape with ``B`` gives the 2x2 minors
``u_p v_q - u_q v_p`` over the simple words ``p = ijk``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from typing import NamedTuple

from .complex import BigradedComplex, assemble_controlling
from .derivations import Derivation, bracket_der
from .families import BasisChange, basis_change, beta_words, named_ring, rewrite_generators, segre_spec, simple_word
from .linalg import Echelon
from .mc import McIdeal, mc_generators
from .polynomial import Polynomial, PolyRing
from .quillen import build_model


def _ys(s: int) -> list[str]:
    return ["y"] if s == 1 else [f"y{i}" for i in range(1, s + 1)]


def _suffix(i: int, s: int) -> str:
    return "" if s == 1 else f"_{i}"


def segre_basis(cx: BigradedComplex, r: int, s: int = 1) -> list[tuple[str, Derivation]]:
    """Named degree-one basis: A1 (c1..), A2 (c2..), A3 (u..) and B (v..)."""
    alg = cx.alg
    simple = beta_words(r)
    out = []
    idx = range(1, r + 1)
    for yi, y in enumerate(_ys(s), 1):
        suf = _suffix(yi, s)
        for i, j, k in product(idx, repeat=3):
            if i >= j >= k:
                out.append((f"c{i}{j}{k}{suf}", Derivation.from_terms(alg, [(1, (f"x{i}", (f"x{j}", (f"x{k}", y))), "z")])))
        for i, j, k in product(idx, repeat=3):
            if i < j:
                out.append((f"e{i}{j}{k}{suf}", Derivation.from_terms(alg, [(1, ((f"x{i}", f"x{j}"), (f"x{k}", y)), "z")])))
        for n, p in enumerate(simple, 1):
            out.append((f"u{n}{suf}", Derivation.from_terms(alg, [(1, (y, simple_word(p)), "z")])))
    for yi, y in enumerate(_ys(s), 1):
        for n, q in enumerate(simple, 1):
            out.append((f"v{yi}_{n}" if s > 1 else f"v{n}", Derivation.from_terms(alg, [(1, simple_word(q), y)])))
    return out


class SegreReport(NamedTuple):
    r: int
    s: int
    c: int
    ring: PolyRing
    component: list[Polynomial]  # generators restricted to A3 + B
    minors: list[Polynomial]
    span_equal: bool
    minors_present: int  # minors lying in the span of the component
    images_independent: bool
    image_rank: int


class SegreData(NamedTuple):
    cx: BigradedComplex
    ideal: McIdeal
    change: BasisChange
    ring: PolyRing
    generators: dict[int, Polynomial]


def segre_data(r: int, k: int = 3, s: int = 1) -> SegreData:
    model = build_model(segre_spec(r, k, s))
    cx = assemble_controlling(model, (1, 2), -3)
    ideal = mc_generators(cx)
    named = segre_basis(cx, r, s)
    change = basis_change(cx, 1, named)
    ring = named_ring(cx, [n for n, _ in named], [d for _, d in named])
    return SegreData(cx, ideal, change, ring, rewrite_generators(cx, ideal, change, ring))


def a3b_component(data: SegreData) -> list[Polynomial]:
    """Generators after setting the A1 and A2 coordinates to zero."""
    ring = data.ring
    zero = {i: ring.zero() for i, n in enumerate(ring.names) if n[0] in "ce"}
    out = []
    for g in data.generators.values():
        h = g.subs(zero)
        if h:
            out.append(h)
    return out


def segre_relations(r: int, k: int = 3) -> SegreReport:
    if r < 2:
        raise ValueError("the Segre family needs r >= 2")
    if k % 2 == 0:
        raise ValueError("k must be odd so that every generator has even degree")
    data = segre_data(r, k, 1)
    ring = data.ring
    c = len(beta_words(r))
    u = [ring.var(f"u{n}") for n in range(1, c + 1)]
    v = [ring.var(f"v{n}") for n in range(1, c + 1)]
    minors = [u[p] * v[q] - u[q] * v[p] for p, q in combinations(range(c), 2)]
    comp = a3b_component(data)
    e_comp, e_all = Echelon(), Echelon()
    for g in comp:
        e_comp.add(g.terms)
        e_all.add(g.terms)
    for m in minors:
        e_all.add(m.terms)
    e_minors = Echelon()
    for m in minors:
        e_minors.add(m.terms)
    span_equal = e_comp.rank == e_all.rank == e_minors.rank
    present = sum(1 for m in minors if e_comp.contains(m.terms))
    # the images [p, q] d z of the simple words
    alg = data.cx.alg
    words = [simple_word(p) for p in beta_words(r)]
    img = Echelon()
    for a, b in combinations(words, 2):
        der = Derivation.from_terms(alg, [(1, (a, b), "z")])
        vec = {}
        for (n, w), part in data.cx.split(der).items():
            vec.update({(n, w, i): x for i, x in part.items()})
        img.add(vec)
    n_pairs = c * (c - 1) // 2
    return SegreReport(r, 1, c, ring, comp, minors, span_equal, present, img.rank == n_pairs, img.rank)


def matrix_point(data: SegreData, s: int, m: list[list[Fraction]], n: list[list[Fraction]]) -> dict[int, Fraction]:
    """Coordinates with ``u_{p,i} = M[p][i]``, ``v_{i,q} = N[i][q]`` and A1 = A2 = 0."""
    ring = data.ring
    point = {i: Fraction(0) for i in range(len(ring))}
    c = len(m)
    for p in range(c):
        for i in range(s):
            point[ring.index(f"u{p + 1}{_suffix(i + 1, s)}")] = Fraction(m[p][i])
    for i in range(s):
        for q in range(c):
            point[ring.index(f"v{i + 1}_{q + 1}" if s > 1 else f"v{q + 1}")] = Fraction(n[i][q])
    return point


def evaluate_component(data: SegreData, point: dict[int, Fraction]) -> list[Fraction]:
    return [g.evaluate(point) for g in data.generators.values()]


def product_matrix(m, n) -> list[list[Fraction]]:
    return [[sum(Fraction(m[p][i]) * n[i][q] for i in range(len(n))) for q in range(len(n[0]))] for p in range(len(m))]


def bracket_check(data: SegreData, r: int) -> bool:
    """``[alpha, beta]`` for generic alpha in A3 and beta in B equals the minor sum."""
    named = dict(segre_basis(data.cx, r, 1))
    simple = beta_words(r)
    ok = True
    for (p, wp), (q, wq) in product(enumerate(simple, 1), repeat=2):
        br = bracket_der(named[f"u{p}"], named[f"v{q}"])
        expect = Derivation.from_terms(data.cx.alg, [(1, (simple_word(wq), simple_word(wp)), "z")])
        ok &= br == expect
    return ok
