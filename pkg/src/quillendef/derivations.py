"""Derivations of a free graded Lie algebra, stored by their values on generators.

A derivation sends generator ``x`` to a Lie element; the basis derivation
``w d x`` sends ``x`` to the basis word ``w`` and every other generator to
zero.  Its degree is ``deg w - deg x`` and its weight ``wt x - wt w``, so
the derivations controlling deformations have negative weight.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .lie import FreeLieAlgebra, LieElement, LieInputError, Tree, _accumulate, word


class Derivation:
    """A derivation, homogeneous in degree; weight may be mixed."""

    __slots__ = ("alg", "values", "_degree", "_cache", "_support")

    def __init__(self, alg: FreeLieAlgebra, values: dict, degree: int | None = None):
        self.alg = alg
        vals = {}
        for x, v in values.items():
            terms = v.terms if isinstance(v, LieElement) else v
            terms = {t: Fraction(c) for t, c in terms.items() if c}
            if terms:
                vals[x] = terms
        self.values: dict[int, dict] = dict(sorted(vals.items()))
        degs = {alg.degree(t) - alg.gens.entries[x].degree for x, v in self.values.items() for t in v}
        if len(degs) > 1:
            raise LieInputError(f"derivation is not degree-homogeneous: degrees {sorted(degs)}")
        if degs:
            d = degs.pop()
            if degree is not None and degree != d:
                raise LieInputError(f"declared degree {degree} but values have degree {d}")
            degree = d
        self._degree = degree
        self._cache: dict = {}
        self._support = frozenset(self.values)

    # ---- constructors ---------------------------------------------------
    @classmethod
    def basis(cls, alg: FreeLieAlgebra, tree: Tree, target: int, coeff=1) -> Derivation:
        return cls(alg, {target: {tree: Fraction(coeff)}})

    @classmethod
    def zero(cls, alg: FreeLieAlgebra, degree: int | None = None) -> Derivation:
        return cls(alg, {}, degree)

    @classmethod
    def from_terms(cls, alg: FreeLieAlgebra, terms: Iterable[tuple[object, object, str]], degree=None) -> Derivation:
        """Build from ``(coeff, bracket expression, target name)`` triples."""
        vals: dict = {}
        for coeff, expr, target in terms:
            x = alg.gens.index(target)
            _accumulate(vals.setdefault(x, {}), alg.normalize(expr).terms, Fraction(coeff))
        return cls(alg, vals, degree)

    # ---- gradings -------------------------------------------------------
    @property
    def degree(self) -> int | None:
        return self._degree

    @property
    def parity(self) -> int:
        return (self._degree or 0) & 1

    def weights(self) -> set[int]:
        g = self.alg.gens.entries
        return {g[x].weight - self.alg.weight(t) for x, v in self.values.items() for t in v}

    @property
    def weight(self) -> int | None:
        w = self.weights()
        if len(w) > 1:
            raise LieInputError(f"derivation has mixed weights {sorted(w)}")
        return w.pop() if w else None

    def by_weight(self) -> dict[int, Derivation]:
        g = self.alg.gens.entries
        out: dict = {}
        for x, v in self.values.items():
            for t, c in v.items():
                out.setdefault(g[x].weight - self.alg.weight(t), {}).setdefault(x, {})[t] = c
        return {w: Derivation(self.alg, vals, self._degree) for w, vals in sorted(out.items(), reverse=True)}

    def truncate(self, weight_min: int) -> Derivation:
        """Drop every component of weight below ``weight_min``."""
        g = self.alg.gens.entries
        vals = {
            x: {t: c for t, c in v.items() if g[x].weight - self.alg.weight(t) >= weight_min}
            for x, v in self.values.items()
        }
        return Derivation(self.alg, vals, self._degree)

    def terms(self) -> list[tuple[int, Tree, Fraction]]:
        """All ``(target, tree, coeff)`` in deterministic order."""
        return [(x, t, c) for x in self.values for t, c in sorted(self.values[x].items(), key=lambda tc: word(tc[0]))]

    def value(self, x) -> LieElement:
        if isinstance(x, str):
            x = self.alg.gens.index(x)
        return LieElement(self.alg, dict(self.values.get(x, {})))

    # ---- arithmetic -----------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.values)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.values
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.values == other.values

    def __hash__(self):
        return hash(tuple((x, tuple(sorted(v.items(), key=lambda tc: word(tc[0])))) for x, v in self.values.items()))

    def _combine(self, other: Derivation, coeff) -> Derivation:
        if other.alg is not self.alg:
            raise LieInputError("derivations over different generator tables")
        vals = {x: dict(v) for x, v in self.values.items()}
        for x, v in other.values.items():
            _accumulate(vals.setdefault(x, {}), v, coeff)
        deg = self._degree if self._degree is not None else other._degree
        if self.values and other.values and self._degree != other._degree:
            raise LieInputError("adding derivations of different degrees")
        return Derivation(self.alg, vals, deg)

    def __add__(self, other: Derivation) -> Derivation:
        return self._combine(other, 1)

    def __sub__(self, other: Derivation) -> Derivation:
        return self._combine(other, -1)

    def __neg__(self) -> Derivation:
        return self * -1

    def __mul__(self, c) -> Derivation:
        c = Fraction(c)
        return Derivation(self.alg, {x: {t: c * v for t, v in vals.items()} for x, vals in self.values.items()} if c else {}, self._degree)

    __rmul__ = __mul__

    def __truediv__(self, c) -> Derivation:
        return self * (1 / Fraction(c))

    # ---- action ---------------------------------------------------------
    def apply_tree(self, t: Tree) -> dict:
        if isinstance(t, int):
            return self.values.get(t, {})
        hit = self._cache.get(t)
        if hit is not None:
            return hit
        if self._support.isdisjoint(word(t)):
            return {}
        a, b = t
        alg = self.alg
        out: dict = {}
        for x, c in self.apply_tree(a).items():
            _accumulate(out, alg.bracket_trees(x, b), c)
        sign = -1 if self.parity and alg.parity(a) else 1
        for y, c in self.apply_tree(b).items():
            _accumulate(out, alg.bracket_trees(a, y), sign * c)
        self._cache[t] = out
        return out

    def apply_terms(self, terms: dict) -> dict:
        out: dict = {}
        for t, c in terms.items():
            _accumulate(out, self.apply_tree(t), c)
        return out

    def __call__(self, e: LieElement) -> LieElement:
        return apply(self, e)

    def describe(self) -> str:
        if not self.values:
            return "0"
        names = self.alg.gens.names
        coeff = {1: "", -1: "-"}
        parts = [f"{coeff.get(c, f'{c}*')}{self.alg.show(t)} d {names[x]}" for x, t, c in self.terms()]
        return " + ".join(parts).replace("+ -", "- ")

    __str__ = describe

    def __repr__(self) -> str:
        return f"Derivation({self.describe()})"


def apply(theta: Derivation, e: LieElement) -> LieElement:
    """Extend ``theta`` to ``e`` by the graded Leibniz rule."""
    if theta.alg is not e.alg:
        raise LieInputError("derivation and element over different generator tables")
    return LieElement(e.alg, theta.apply_terms(e.terms))


def bracket_der(theta: Derivation, phi: Derivation) -> Derivation:
    """Graded commutator ``theta phi - (-1)^{|theta||phi|} phi theta``."""
    if theta.alg is not phi.alg:
        raise LieInputError("derivations over different generator tables")
    if not theta or not phi:
        deg = None if theta._degree is None or phi._degree is None else theta._degree + phi._degree
        return Derivation(theta.alg, {}, deg)
    sign = -1 if theta.parity and phi.parity else 1
    vals: dict = {}
    for x in set(theta.values) | set(phi.values):
        out: dict = {}
        if x in phi.values:
            _accumulate(out, theta.apply_terms(phi.values[x]), 1)
        if x in theta.values:
            _accumulate(out, phi.apply_terms(theta.values[x]), -sign)
        vals[x] = out
    return Derivation(theta.alg, vals, theta._degree + phi._degree)


def differential_der(model, theta: Derivation) -> Derivation:
    """``[d, theta]`` for the differential of a Quillen model."""
    d = model.differential
    if not d:
        return Derivation(theta.alg, {}, None if theta.degree is None else theta.degree + 1)
    return bracket_der(d, theta)
