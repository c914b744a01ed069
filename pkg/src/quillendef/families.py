"""Named example spaces and the right-normed Hall coordinates used for them.

Right-normed words are written as digit strings: ``"21112"`` is
``[x2,[x1,[x1,[x1,x2]]]]`` and ``"12|112"`` is ``[[x1,x2],[x1,[x1,x2]]]``.
The engine's own basis is Lyndon-style, so every comparison goes through
an explicit change of basis computed by normalizing these words.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product
from typing import NamedTuple

from .complex import BigradedComplex, TruncationError, assemble_controlling
from .derivations import Derivation
from .lie import right_normed
from .linalg import Echelon, solve
from .mc import McIdeal, default_letters, l1_coordinates, mc_generators
from .polynomial import Polynomial, PolyRing
from .quillen import CohomologySpec, build_model


# ---- specs --------------------------------------------------------------


def _xs(r: int, k: int) -> list[tuple[str, int]]:
    return [(f"x{i}", k) for i in range(1, r + 1)]


def wedge_spec(r: int, k: int = 3) -> CohomologySpec:
    """Bouquet of r copies of S^k with S^(3k-1) and S^(5k-2)."""
    return CohomologySpec.build(f"wedge_r{r}_k{k}", _xs(r, k) + [("y", 3 * k - 1), ("z", 5 * k - 2)])


def k2_spec(r: int = 2) -> CohomologySpec:
    return wedge_spec(r, 2)


def segre_spec(r: int, k: int = 3, s: int = 1) -> CohomologySpec:
    """Bouquet of r copies of S^k, s copies of S^(3k-1) and S^(6k-3).

    The top degree is forced by asking ``[y, ijk] d z`` to have degree one.
    """
    ys = [("y", 3 * k - 1)] if s == 1 else [(f"y{i}", 3 * k - 1) for i in range(1, s + 1)]
    return CohomologySpec.build(f"segre_r{r}_s{s}_k{k}", _xs(r, k) + ys + [("z", 6 * k - 3)])


def obstruction_spec() -> CohomologySpec:
    """S3 v S3 v S8 v S13."""
    return CohomologySpec.build("s3_s3_s8_s13", [("x1", 3), ("x2", 3), ("y", 8), ("z", 13)])


def repaired_spec() -> CohomologySpec:
    """S3 v S3 v S8 v S10 with the 13-cell attached to realize x2 * x10."""
    return CohomologySpec.build(
        "s3_s3_s8_s10_e13",
        [("x1", 3), ("x2", 3), ("y", 8), ("x10", 10), ("z", 13)],
        [("x2", "x10", "z")],
    )


def product_spec(sphere_degrees, factor: int, name: str | None = None) -> CohomologySpec:
    """(S^a v S^b v ...) x S^factor."""
    cls = [(f"x{i}", d) for i, d in enumerate(sphere_degrees, 1)] + [(f"x{len(sphere_degrees) + 1}", factor)]
    c = f"x{len(sphere_degrees) + 1}"
    prods = []
    for i, d in enumerate(sphere_degrees, 1):
        cls.append((f"x{i}{c}", d + factor))
        prods.append((f"x{i}", c, f"x{i}{c}"))
    default = "prod_" + "".join(f"s{d}" for d in sphere_degrees) + f"_s{factor}"
    return CohomologySpec.build(name or default, cls, prods)


def s2s2_s3_spec() -> CohomologySpec:
    return CohomologySpec.build(
        "prod_s2s2_s3",
        [("x1", 2), ("x2", 2), ("x3", 3), ("x1x3", 5), ("x2x3", 5)],
        [("x1", "x3", "x1x3"), ("x2", "x3", "x2x3")],
    )


def quadratic_form_spec() -> CohomologySpec:
    """(S3 v S3) x S5: degree-one classes are symmetric bilinear forms."""
    return CohomologySpec.build(
        "prod_s3s3_s5",
        [("x1", 3), ("x2", 3), ("x5", 5), ("x1x5", 8), ("x2x5", 8)],
        [("x1", "x5", "x1x5"), ("x2", "x5", "x2x5")],
    )


def uvw_spec() -> CohomologySpec:
    return CohomologySpec.build("s3_s3_s5_s10", [("x1", 3), ("x2", 3), ("x5", 5), ("x10", 10)])


def shallow_spec(n: int = 3) -> CohomologySpec:
    """S^n v S^n v S^(2n+1)."""
    return CohomologySpec.build(f"s{n}_s{n}_s{2 * n + 1}", [("x1", n), ("x2", n), ("y", 2 * n + 1)])


def s3s3_s12_spec() -> CohomologySpec:
    return CohomologySpec.build("s3_s3_s12", [("x1", 3), ("x2", 3), ("y", 12)])


# Weight bounds that house every bracket image the examples need.
DEFAULT_WEIGHT_MIN = {
    "wedge": -2,
    "segre": -3,
    "obstruction": -4,
    "prod_s2s2_s3": -4,
    "prod_s3s3_s5": -4,
    "s3_s3_s5_s10": -4,
}


# ---- right-normed words -------------------------------------------------


def simple_word(digits: str):
    return right_normed([f"x{d}" for d in digits])


def compound_word(text: str):
    left, right = text.split("|")
    return (simple_word(left), simple_word(right))


def label_word(text: str):
    return compound_word(text) if "|" in text else simple_word(text)


def alpha_words(r: int) -> list[str]:
    """``ij`` for [x_i,[x_j,y]] d z."""
    return [f"{i}{j}" for i in range(1, r + 1) for j in range(1, r + 1)]


def beta_words(r: int) -> list[str]:
    """``klm`` with k >= l < m for [x_k,[x_l,x_m]] d y."""
    return [f"{k}{l}{m}" for k, l, m in product(range(1, r + 1), repeat=3) if k >= l < m]


def l2_words(r: int) -> list[str]:
    """Simple words pqrst (p>=q>=r>=s<t) and compound words pq|rst (p<q, r>=s<t)."""
    simple = [
        "".join(map(str, w))
        for w in product(range(1, r + 1), repeat=5)
        if w[0] >= w[1] >= w[2] >= w[3] < w[4]
    ]
    compound = [f"{p}{q}|{b}" for p in range(1, r + 1) for q in range(p + 1, r + 1) for b in beta_words(r)]
    return simple + compound


def alpha(alg, ij: str) -> Derivation:
    i, j = ij
    return Derivation.from_terms(alg, [(1, (f"x{i}", (f"x{j}", "y")), "z")])


def beta(alg, klm: str) -> Derivation:
    return Derivation.from_terms(alg, [(1, simple_word(klm), "y")])


def gamma(alg, w: str) -> Derivation:
    return Derivation.from_terms(alg, [(1, label_word(w), "z")])


def word_content(w: str, r: int) -> tuple[int, ...]:
    digits = w.replace("|", "")
    return tuple(digits.count(str(i)) for i in range(1, r + 1))


# ---- change of basis ----------------------------------------------------


class BasisChange(NamedTuple):
    """Columns express named derivations in the engine's block coordinates."""

    names: list[str]
    coords: list[tuple[int, int, int]]
    columns: list[dict]  # name index -> {engine coordinate index: coeff}


def basis_change(cx: BigradedComplex, degree: int, named: list[tuple[str, Derivation]]) -> BasisChange:
    coords = l1_coordinates(cx, degree)
    pos = {c: k for k, c in enumerate(coords)}
    cols = []
    for _, der in named:
        col = {}
        for (n, w), vec in cx.split(der).items():
            for i, c in vec.items():
                col[pos[(n, w, i)]] = c
        cols.append(col)
    e = Echelon()
    for col in cols:
        e.add(col)
    if e.rank != len(coords) or len(cols) != len(coords):
        raise ValueError(f"named derivations do not form a basis: rank {e.rank}, {len(cols)} vectors, dimension {len(coords)}")
    return BasisChange([n for n, _ in named], coords, cols)


def label_ring(r: int) -> PolyRing:
    names = [f"a{w}" for w in alpha_words(r)] + [f"b{w}" for w in beta_words(r)]
    contents = []
    for n in names:
        c = [0] * (r + 3)
        for d in n[1:]:
            c[int(d) - 1] += 1
        if n[0] == "a":
            c[r] += 1  # y
            c[r + 1] -= 1  # z
        else:
            c[r] -= 1
        contents.append(tuple(c))
    return PolyRing(tuple(names), tuple(contents), tuple(-1 for _ in names))


class WordQuadrics(NamedTuple):
    ideal: McIdeal  # engine generators rewritten in alpha, beta coordinates
    quadrics: dict[str, Polynomial]  # one per right-normed L^2 word
    l1: BasisChange
    l2: BasisChange


def word_quadrics(r: int, k: int = 3) -> WordQuadrics:
    """MC generators of the wedge family in right-normed coordinates.

    With ``p = sum a_ij alpha_ij + sum b_klm beta_klm`` the engine
    generators ``g`` satisfy ``g = Q q`` where ``Q`` writes the
    right-normed L^2 words in engine coordinates; ``q = Q^-1 g`` are the
    quadrics indexed by those words.
    """
    model = build_model(wedge_spec(r, k))
    cx = assemble_controlling(model, (1, 2), -2)
    alg = model.alg
    ideal = mc_generators(cx)
    l1 = basis_change(cx, 1, [(f"a{w}", alpha(alg, w)) for w in alpha_words(r)] + [(f"b{w}", beta(alg, w)) for w in beta_words(r)])
    ring = label_ring(r)
    rewritten = rewrite_generators(cx, ideal, l1, ring)
    l2 = basis_change(cx, 2, [(w, gamma(alg, w)) for w in l2_words(r)])
    # g_m = sum_w Q[m][w] q_w: solve per word via the inverse
    quadrics = {}
    inverse = _inverse_columns(l2.columns, len(l2.coords))
    for wi, w in enumerate(l2.names):
        q = ring.zero()
        for m, c in inverse[wi].items():
            if m in rewritten:
                q = q + rewritten[m] * c
        quadrics[w] = q
    gens = [g for g in rewritten.values() if g]
    letters = tuple(range(r))
    return WordQuadrics(McIdeal(ring, gens, [], letters), quadrics, l1, l2)


def rewrite_generators(cx: BigradedComplex, ideal: McIdeal, change: BasisChange, ring: PolyRing) -> dict[int, Polynomial]:
    """Engine generators (keyed by L^2 coordinate) in the named coordinates.

    A point ``sum_j a_j f_j`` with ``f_j = sum_k P[k][j] e_k`` has engine
    coordinates ``t_k = sum_j P[k][j] a_j``.
    """
    values = {k: ring.zero() for k in range(len(change.coords))}
    for j, col in enumerate(change.columns):
        for k, c in col.items():
            values[k] = values[k] + ring.var(j) * c
    gens = _engine_generators_by_coordinate(cx, ideal)
    return {m: g.subs(values, ring) for m, g in gens.items()}


def named_ring(cx: BigradedComplex, names: list[str], named: list[Derivation]) -> PolyRing:
    """Dual coordinates of content-homogeneous derivations."""
    alg = cx.alg
    entries = cx.model.gens.entries
    contents, weights = [], []
    for der in named:
        x, t, _ = der.terms()[0]
        c = list(alg.content(t))
        c[x] -= 1
        contents.append(tuple(c))
        weights.append(entries[x].weight - alg.weight(t))
    return PolyRing(tuple(names), tuple(contents), tuple(weights), tuple(d.describe() for d in named))


def _engine_generators_by_coordinate(cx: BigradedComplex, ideal: McIdeal) -> dict[int, Polynomial]:
    """Map each engine L^2 coordinate to its generator (zero ones omitted)."""
    coords = l1_coordinates(cx, 2)
    alg, names = cx.alg, cx.model.gens.names
    label_of = {}
    for k, (n, w, i) in enumerate(coords):
        x, t = cx.blocks[(n, w)].basis[i]
        label_of[f"{alg.show(t)} d {names[x]}"] = k
    return {label_of[lab]: g for lab, g in zip(ideal.labels, ideal.generators)}


def _inverse_columns(columns: list[dict], dim: int) -> list[dict]:
    """Rows of Q^-1 where Q has the given columns: row w maps m -> coeff."""
    rows: list[dict] = [dict() for _ in range(dim)]
    for m in range(dim):
        sol = solve(columns, {m: Fraction(1)})
        if sol is None:
            raise ValueError("change of basis is singular")
        for w, c in sol.items():
            rows[w][m] = c
    return rows


# ---- the multilinear slice ------------------------------------------------


class SliceReport(NamedTuple):
    rows: list[str]  # u = ijklm
    columns: list[str]  # right-normed L^2 words
    matrix: list[list[Fraction]]
    entries_ok: bool
    halves_ok: bool
    simple_claim: bool
    compound_claim: bool  # summands a_pq b_rst, s_pr v_qst, s_rs v_pqt only
    extended_claim: bool  # the same with s_ps v_qrt summands allowed


def multilinear_slice(r: int = 5) -> SliceReport:
    """Expansion of ``[alpha_ij, beta_klm]`` over the multilinear L^2 words.

    Rows are ordered lexicographically by ``u = ijklm``; the words ``u``
    and the column words use each of the letters 1..5 once.
    """
    if r < 5:
        raise ValueError("the multilinear slice needs five letters")
    model = build_model(wedge_spec(5))
    cx = assemble_controlling(model, (2,), -2)
    alg = model.alg
    letters = "12345"
    rows = sorted(
        f"{p[0]}{p[1]}{p[2]}{p[3]}{p[4]}" for p in permutations(letters) if p[2] >= p[3] < p[4]
    )
    cols = [w for w in l2_words(5) if sorted(w.replace("|", "")) == list(letters)]
    change = basis_change_subset(cx, [(w, gamma(alg, w)) for w in cols])
    matrix = []
    for u in rows:
        vec = change(Derivation.from_terms(alg, [(1, simple_word(u), "z")]))
        matrix.append([vec.get(j, Fraction(0)) for j in range(len(cols))])
    entries_ok = all(v in (0, 1, -1) for row in matrix for v in row)
    index = {u: i for i, u in enumerate(rows)}
    halves_ok = True
    for u in rows:
        i, j, rest = u[0], u[1], u[2:]
        if i < j:
            top, bottom = matrix[index[u]], matrix[index[j + i + rest]]
            expect = list(top)
            expect[cols.index(f"{i}{j}|{rest}")] -= 1
            halves_ok &= bottom == expect
    simple_claim = compound_claim = extended_claim = True
    for c, w in enumerate(cols):
        col = {rows[i]: matrix[i][c] for i in range(len(rows)) if matrix[i][c]}
        if "|" not in w:
            # only s_ij b_klm terms, with the last letter of w in b
            for u, v in col.items():
                simple_claim &= col.get(u[1] + u[0] + u[2:], 0) == v and w[4] in (u[3], u[4])
            continue
        pq, rst = w.split("|")
        p, r, s = pq[0], rst[0], rst[1]
        for u, v in col.items():
            if u == pq + rst:
                continue
            symmetric = col.get(u[1] + u[0] + u[2:], 0) == v or u[1] + u[0] + u[2:] == pq + rst
            pair = set(u[:2])
            compound_claim &= symmetric and pair in ({p, r}, {r, s}, set(pq))
            extended_claim &= symmetric and pair in ({p, r}, {p, s}, {r, s}, set(pq))
    return SliceReport(rows, cols, matrix, entries_ok, halves_ok, simple_claim, compound_claim, extended_claim)


def basis_change_subset(cx: BigradedComplex, named: list[tuple[str, Derivation]]):
    """Coordinates relative to named derivations spanning a subspace."""
    vecs = []
    for _, der in named:
        vecs.append(_flat(cx, der))

    def coords(der: Derivation) -> dict:
        sol = solve(vecs, _flat(cx, der))
        if sol is None:
            raise ValueError("element lies outside the span of the named words")
        return sol

    return coords


def _flat(cx: BigradedComplex, der: Derivation) -> dict:
    out = {}
    for (n, w), vec in cx.split(der).items():
        for i, c in vec.items():
            out[(n, w, i)] = c
    return out


# ---- controlling algebras for named examples ----------------------------


def controlling(spec: CohomologySpec, weight_min: int, degrees=(0, 1, 2)) -> BigradedComplex:
    return assemble_controlling(build_model(spec), degrees, weight_min)


def wedge_ab_split(ideal: McIdeal) -> tuple[list[int], list[int]]:
    """Coordinates targeting z (the A part) and y (the B part)."""
    a, b = [], []
    for i, d in enumerate(ideal.ring.descriptions):
        (a if d.endswith("d z") else b).append(i)
    return a, b


# ---- coordinates for the orbit families ----------------------------------


def _solve_named(cx: BigradedComplex, named: list[Derivation], p: Derivation) -> list[Fraction]:
    sol = solve([_flat(cx, d) for d in named], _flat(cx, p))
    if sol is None:
        raise ValueError("point lies outside the family")
    return [sol.get(i, Fraction(0)) for i in range(len(named))]


def quadratic_form_basis(alg) -> list[Derivation]:
    """``[x_i,[x1,x2]] d (x_j x5)`` in the order m11, m12, m21, m22."""
    return [
        Derivation.from_terms(alg, [(1, (f"x{i}", ("x1", "x2")), f"x{j}x5")])
        for i in (1, 2)
        for j in (1, 2)
    ]


def quadratic_form_coordinates(cx: BigradedComplex, p: Derivation) -> tuple[Fraction, ...]:
    return tuple(_solve_named(cx, quadratic_form_basis(cx.alg), p))


def quadratic_form_point(alg, m) -> Derivation:
    out = Derivation(alg, {}, 1)
    for c, d in zip(m, quadratic_form_basis(alg)):
        out = out + d * c
    return out


def uvw_basis(alg) -> tuple[dict, dict]:
    """Bilinear ``[x_i,[x_j,x5]] d x10`` and symmetric ``[x_i,[x_j,[x1,x2]]] d x10``."""
    bil = {(i, j): Derivation.from_terms(alg, [(1, (f"x{i}", (f"x{j}", "x5")), "x10")]) for i in (1, 2) for j in (1, 2)}
    sym = {(i, j): Derivation.from_terms(alg, [(1, (f"x{i}", (f"x{j}", ("x1", "x2"))), "x10")]) for i in (1, 2) for j in (1, 2)}
    return bil, sym


class UVW(NamedTuple):
    u: tuple  # symmetric part of the bilinear form, ((u11, u12), (u21, u22))
    v: Fraction  # antisymmetric part: (b12 - b21) / 2
    w: tuple  # symmetric form on the weight -2 part


def uvw_point(alg, point: UVW) -> Derivation:
    bil, sym = uvw_basis(alg)
    out = Derivation(alg, {}, 1)
    for i in (1, 2):
        for j in (1, 2):
            b = Fraction(point.u[i - 1][j - 1]) + (point.v if (i, j) == (1, 2) else -point.v if (i, j) == (2, 1) else 0)
            out = out + bil[(i, j)] * b + sym[(i, j)] * Fraction(point.w[i - 1][j - 1])
    return out


def uvw_coordinates(cx: BigradedComplex, p: Derivation) -> UVW:
    bil, sym = uvw_basis(cx.alg)
    keys = [(1, 1), (1, 2), (2, 1), (2, 2)]
    b = dict(zip(keys, _solve_named(cx, [bil[k] for k in keys], _weight_part(p, -1))))
    # sym[(1,2)] and sym[(2,1)] coincide, so solve over (1,1), (2,1), (2,2)
    skeys = [(1, 1), (2, 1), (2, 2)]
    c = dict(zip(skeys, _solve_named(cx, [sym[k] for k in skeys], _weight_part(p, -2))))
    off_b = (b[(1, 2)] + b[(2, 1)]) / 2
    off_w = c[(2, 1)] / 2
    return UVW(
        ((b[(1, 1)], off_b), (off_b, b[(2, 2)])),
        (b[(1, 2)] - b[(2, 1)]) / 2,
        ((c[(1, 1)], off_w), (off_w, c[(2, 2)])),
    )


def _weight_part(p: Derivation, w: int) -> Derivation:
    return p.by_weight().get(w, Derivation(p.alg, {}, p.degree))


# ---- the k = 2 family ----------------------------------------------------


def k2_subspaces(cx: BigradedComplex) -> dict[str, list[Derivation]]:
    """Basis derivations of the k = 2 wedge family sorted by shape.

    In L^1: ``A = x^3 d y`` and ``B = x^2 y d z`` (weight -1), ``C = x^6 d z``
    (weight -4).  In L^0: ``D = x^4 d y`` and ``E = x^3 y d z`` (weight -3),
    ``F = x^7 d z`` (weight -6).
    """
    shapes = {(1, -1, "y"): "A", (1, -1, "z"): "B", (1, -4, "z"): "C", (0, -3, "y"): "D", (0, -3, "z"): "E", (0, -6, "z"): "F"}
    names = cx.model.gens.names
    out: dict[str, list[Derivation]] = {k: [] for k in "ABCDEF"}
    for n in (0, 1):
        for w in cx.weights(n):
            for i in range(cx.dimension(n, w)):
                x, _ = cx.blocks[(n, w)].basis[i]
                key = shapes.get((n, w, names[x]))
                if key is None:
                    raise ValueError(f"unexpected block (degree {n}, weight {w}) targeting {names[x]}")
                out[key].append(cx.basis_derivation(n, w, i))
    return out
