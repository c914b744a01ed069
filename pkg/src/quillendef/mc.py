"""Maurer-Cartan ideals and exact multigraded membership.

With ``p = sum t_i e_i`` over a basis ``e_i`` of degree-one derivations,
the Maurer-Cartan expression ``dp + 1/2 [p, p]`` expanded in a basis of
degree-two derivations has one polynomial coefficient per basis element;
these generate the ideal.  Generators are homogeneous for the weight
grading, and for content and total degree when the differential vanishes,
so membership of a homogeneous polynomial reduces to linear algebra on
the finite set ``{m g}`` of matching grade.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from .complex import BigradedComplex, TruncationError
from .derivations import Derivation, bracket_der, differential_der
from .linalg import Echelon
from .polynomial import Monomial, Polynomial, PolyRing, mono_degree, mono_mul


class Certificate(NamedTuple):
    """``p = sum coeff * monomial * generators[index]``."""

    terms: tuple[tuple[Fraction, Monomial, int], ...]

    def expand(self, ideal: McIdeal) -> Polynomial:
        out = ideal.ring.zero()
        for c, m, i in self.terms:
            out = out + ideal.generators[i].times_monomial(m, c)
        return out


@dataclass
class McIdeal:
    ring: PolyRing
    generators: list[Polynomial]
    labels: list[str] = field(default_factory=list)
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        self.generators = [g for g in self.generators]
        if not self.labels:
            self.labels = [f"g{i + 1}" for i in range(len(self.generators))]
        self._grading = self._choose_grading()
        self._cache: dict = {}

    def __len__(self) -> int:
        return len(self.generators)

    # ---- grading --------------------------------------------------------
    def _choose_grading(self) -> list[tuple[int, ...]]:
        """Per-variable grading vectors: (weight[, degree][, content...])."""
        ring = self.ring
        use_deg = all(g.is_homogeneous() for g in self.generators)
        use_content = all(c for c in ring.contents) and all(g.is_content_homogeneous() for g in self.generators)
        use_weight = all(w < 0 for w in ring.weights) and all(
            len({ring.weight_of(m) for m in g.terms}) <= 1 for g in self.generators
        )
        if not (use_deg or use_weight):
            raise ValueError("ideal is neither homogeneous nor weight-graded; membership is not finite")
        grades = []
        for i in range(len(ring)):
            v: tuple = ()
            if use_weight:
                v += (ring.weights[i],)
            if use_deg:
                v += (1,)
            if use_content:
                v += tuple(ring.contents[i])
            grades.append(v)
        self._bounded = 0
        return grades

    def grade(self, mono: Monomial) -> tuple[int, ...]:
        width = len(self._grading[0]) if self._grading else 0
        out = [0] * width
        for i, e in mono:
            for k, v in enumerate(self._grading[i]):
                out[k] += e * v
        return tuple(out)

    def _monomials_of_grade(self, target: tuple[int, ...]) -> list[Monomial]:
        n = len(self.ring)
        grades = self._grading
        width = len(target)
        nonneg = [[True] * width for _ in range(n + 1)]
        nonpos = [[True] * width for _ in range(n + 1)]
        for i in range(n - 1, -1, -1):
            for k in range(width):
                nonneg[i][k] = nonneg[i + 1][k] and grades[i][k] >= 0
                nonpos[i][k] = nonpos[i + 1][k] and grades[i][k] <= 0
        b = self._bounded
        out: list = []

        def rec(i, remaining, mono):
            if not any(remaining):
                out.append(tuple(mono))
                return
            if i == n:
                return
            for k in range(width):
                if nonneg[i][k] and remaining[k] < 0 or nonpos[i][k] and remaining[k] > 0:
                    return
            g = grades[i]
            emax = remaining[b] // g[b]
            for e in range(emax, -1, -1):
                rem = tuple(r - e * gk for r, gk in zip(remaining, g))
                if e:
                    mono.append((i, e))
                rec(i + 1, rem, mono)
                if e:
                    mono.pop()

        rec(0, tuple(target), [])
        return out

    def _echelon(self, grade: tuple[int, ...]) -> Echelon:
        hit = self._cache.get(grade)
        if hit is not None:
            return hit
        e = Echelon(track=True)
        for gi, g in enumerate(self.generators):
            if not g:
                continue
            gg = self.grade(next(iter(g.terms)))
            rest = tuple(a - b for a, b in zip(grade, gg))
            for m in self._monomials_of_grade(rest):
                e.add(g.times_monomial(m).terms, (m, gi))
        self._cache[grade] = e
        return e

    # ---- queries --------------------------------------------------------
    def contains(self, p: Polynomial) -> tuple[bool, Certificate | None]:
        pieces: dict = {}
        for m, c in p.terms.items():
            pieces.setdefault(self.grade(m), {})[m] = c
        cert = []
        for grade, terms in sorted(pieces.items()):
            combo = self._echelon(grade).express(terms)
            if combo is None:
                return False, None
            cert.extend((c, m, gi) for (m, gi), c in sorted(combo.items(), key=lambda kv: (kv[0][1], kv[0][0])))
        return True, Certificate(tuple(cert))

    def letter_content(self, mono: Monomial) -> tuple[int, ...]:
        full = self.ring.content_of(mono)
        letters = self.letters or tuple(range(len(full)))
        return tuple(full[i] for i in letters)

    def generator_counts(self) -> dict[tuple[int, ...], tuple[int, int]]:
        """Per letter content: (number of generators, rank of their span).

        A rank below the count flags redundant generators.
        """
        groups: dict = {}
        for g in self.generators:
            key = self.letter_content(next(iter(g.terms))) if g else ()
            groups.setdefault(key, []).append(g)
        out = {}
        for key, gens in sorted(groups.items()):
            e = Echelon()
            for g in gens:
                e.add(g.terms)
            out[key] = (len(gens), e.rank)
        return out

    def polynomial(self, text: str) -> Polynomial:
        """A monomial (or product of coordinates) from ``"a11*b212"``."""
        return Polynomial(self.ring, {self.ring.monomial(text): Fraction(1)})


def is_in_ideal(p: Polynomial, ideal: McIdeal) -> tuple[bool, Certificate | None]:
    return ideal.contains(p)


def is_nilpotent_mod(m, ideal: McIdeal, max_power: int = 4) -> int | None:
    """Least ``e <= max_power`` with ``m**e`` in the ideal."""
    if max_power < 1:
        raise ValueError("max_power must be at least 1")
    if isinstance(m, str):
        m = ideal.polynomial(m)
    elif not isinstance(m, Polynomial):
        m = Polynomial(ideal.ring, {tuple(m): Fraction(1)})
    power = m
    for e in range(1, max_power + 1):
        if ideal.contains(power)[0]:
            return e
        power = power * m
    return None


def partition_of(m, ideal: McIdeal) -> tuple[int, ...]:
    """Letter content of a monomial sorted in descending order."""
    if isinstance(m, str):
        m = ideal.ring.monomial(m)
    return tuple(sorted(ideal.letter_content(m), reverse=True))


class PreconditionError(ValueError):
    pass


class InductionWitness(NamedTuple):
    monomial: str
    partition: tuple[int, ...]
    base_partition: tuple[int, ...]


def induction_step_check(ideal: McIdeal, a: str, a2: str, b: str, b2: str) -> InductionWitness | None:
    """Return whichever of ``a2*b`` and ``a*b2`` has higher partition than ``a*b``.

    Requires different letter contents for ``a`` and ``a2`` and equal
    letter contents for ``a*b`` and ``a2*b2``.  Returns None when neither
    product beats ``a*b`` (which would refute the lemma).
    """
    ring = ideal.ring
    c = lambda text: ideal.letter_content(ring.monomial(text))
    if c(a) == c(a2):
        raise PreconditionError(f"{a} and {a2} have the same content")
    if c(f"{a}*{b}") != c(f"{a2}*{b2}"):
        raise PreconditionError(f"{a}*{b} and {a2}*{b2} have different contents")
    base = partition_of(f"{a}*{b}", ideal)
    best = None
    for cand in (f"{a2}*{b}", f"{a}*{b2}"):
        p = partition_of(cand, ideal)
        if p > base and (best is None or p > best.partition):
            best = InductionWitness(cand, p, base)
    return best


@dataclass
class FanReport:
    vanishes_on_a: bool
    vanishes_on_b: bool
    powers: dict[str, int | None]
    max_power: int

    @property
    def success(self) -> bool:
        return self.vanishes_on_a and self.vanishes_on_b and all(p is not None for p in self.powers.values())


def fan_decomposition(ideal: McIdeal, a_vars: Sequence[int], b_vars: Sequence[int], max_power: int = 4) -> FanReport:
    ring = ideal.ring
    zero_a = {i: ring.zero() for i in a_vars}
    zero_b = {i: ring.zero() for i in b_vars}
    on_a = all(not g.subs(zero_b) for g in ideal.generators)
    on_b = all(not g.subs(zero_a) for g in ideal.generators)
    powers = {}
    for i in a_vars:
        for j in b_vars:
            mono = tuple(sorted(((i, 1), (j, 1))))
            powers[ring.show_monomial(mono)] = is_nilpotent_mod(mono, ideal, max_power)
    return FanReport(on_a, on_b, powers, max_power)


# ---- extraction from the controlling algebra ---------------------------


def l1_coordinates(cx: BigradedComplex, degree: int = 1) -> list[tuple[int, int, int]]:
    """``(degree, weight, index)`` for every basis derivation of the given degree."""
    out = []
    for w in sorted(cx.weights(degree), reverse=True):
        out.extend((degree, w, i) for i in range(cx.dimension(degree, w)))
    return out


def coordinate_ring(cx: BigradedComplex, coords, prefix: str = "t") -> PolyRing:
    alg = cx.alg
    gens = cx.model.gens
    names, contents, weights, desc = [], [], [], []
    for k, (n, w, i) in enumerate(coords):
        x, t = cx.blocks[(n, w)].basis[i]
        c = list(alg.content(t))
        c[x] -= 1
        names.append(f"{prefix}{k + 1}")
        contents.append(tuple(c))
        weights.append(w)
        desc.append(f"{alg.show(t)} d {gens.names[x]}")
    return PolyRing(tuple(names), tuple(contents), tuple(weights), tuple(desc))


def default_letters(model) -> tuple[int, ...]:
    """Generators of minimal weight: the letters whose content is tracked."""
    wts = [g.weight for g in model.gens.entries]
    return tuple(i for i, w in enumerate(wts) if w == min(wts))


def mc_generators(cx: BigradedComplex, strict: bool = True) -> McIdeal:
    coords = l1_coordinates(cx, 1)
    ring = coordinate_ring(cx, coords)
    basis = [cx.basis_derivation(n, w, i) for n, w, i in coords]
    polys: dict = {}

    def deposit(theta: Derivation, mono: Monomial, coeff) -> None:
        try:
            parts = cx.split(theta, strict=strict)
        except TruncationError as exc:
            raise TruncationError(f"bracket images leave the assembled blocks: {exc}") from None
        for (n, w), vec in parts.items():
            if n != 2:
                continue
            for idx, c in vec.items():
                terms = polys.setdefault((w, idx), {})
                s = terms.get(mono, 0) + coeff * c
                if s:
                    terms[mono] = s
                else:
                    terms.pop(mono, None)

    if 2 not in cx.degree_set:
        raise TruncationError("degree-2 blocks are required for Maurer-Cartan generators")
    if not cx.model.is_bouquet:
        for k, e in enumerate(basis):
            deposit(differential_der(cx.model, e), ((k, 1),), Fraction(1))
    for i, ei in enumerate(basis):
        for j in range(i, len(basis)):
            br = bracket_der(ei, basis[j])
            if not br:
                continue
            if i == j:
                deposit(br, ((i, 2),), Fraction(1, 2))
            else:
                deposit(br, ((i, 1), (j, 1)), Fraction(1))
    gens, labels = [], []
    alg, names = cx.alg, cx.model.gens.names
    for w in sorted(cx.weights(2), reverse=True):
        for idx in range(cx.dimension(2, w)):
            terms = polys.get((w, idx))
            if terms:
                x, t = cx.blocks[(2, w)].basis[idx]
                gens.append(Polynomial(ring, terms))
                labels.append(f"{alg.show(t)} d {names[x]}")
    return McIdeal(ring, gens, labels, default_letters(cx.model))


# ---- obstructions -------------------------------------------------------


@dataclass
class ObstructionResult:
    obstruction: Derivation
    class_coordinates: dict[int, dict]
    bounding: Derivation | None

    @property
    def is_zero(self) -> bool:
        return not any(self.class_coordinates.values())


def primary_obstruction(cx: BigradedComplex, theta: Derivation) -> ObstructionResult:
    """Class of ``1/2 [theta, theta] + d theta`` in degree-two cohomology.

    When the class vanishes, ``bounding`` satisfies ``[d, bounding]`` equal
    to that element.
    """
    if theta.degree != 1:
        raise ValueError("the obstruction is defined for degree-one derivations")
    if any(w >= 0 for w in theta.weights()):
        raise ValueError("the derivation must have negative weight")
    ob = bracket_der(theta, theta) * Fraction(1, 2) + differential_der(cx.model, theta)
    parts = cx.split(ob)
    classes, bound = {}, {}
    for (n, w), vec in sorted(parts.items()):
        coh = cx.cohomology(n, w)
        decomp = coh.decompose(vec)
        if any(kind == "r" for kind, _ in decomp):
            raise ValueError("obstruction element is not a cocycle")
        classes[w] = coh.project(vec)
        bound[(n - 1, w)] = coh.contract(vec)
    bounding = None
    if not any(classes.values()):
        bounding = Derivation(cx.alg, {}, 1)
        for (n, w), vec in bound.items():
            if vec:
                bounding = bounding + cx.derivation(n, w, vec)
    return ObstructionResult(ob, classes, bounding)
