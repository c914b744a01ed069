"""Quillen models of finite simply connected graded-commutative algebras.

Each positive-degree class ``u`` of degree ``s`` gives a generator ``u``
of the free Lie algebra with degree ``1 - s`` and weight ``s``.  The
differential is dual to the multiplication: if ``u v = c z + ...`` then
``d z`` contains ``1/2 (-1)^{deg u} c [u, v]`` for each ordered pair, so an
unordered pair of distinct classes contributes ``(-1)^{deg u} c [u, v]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .derivations import Derivation
from .lie import FreeLieAlgebra, GeneratorTable, _accumulate, word


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class CohomologySpec:
    name: str
    classes: tuple[tuple[str, int], ...]
    products: tuple[tuple[str, str, tuple[tuple[str, Fraction], ...]], ...] = ()

    @classmethod
    def build(cls, name: str, classes, products=()) -> CohomologySpec:
        prods = []
        for left, right, value in products:
            if isinstance(value, str):
                value = {value: 1}
            prods.append((left, right, tuple((k, Fraction(v)) for k, v in dict(value).items())))
        return cls(name, tuple((n, int(d)) for n, d in classes), tuple(prods))

    @property
    def degrees(self) -> dict[str, int]:
        return dict(self.classes)

    def table(self) -> dict[tuple[str, str], dict[str, Fraction]]:
        """Graded-commutative completion of the listed products."""
        deg = self.degrees
        out: dict = {}
        for left, right, value in self.products:
            _accumulate(out.setdefault((left, right), {}), dict(value), 1)
        for (left, right), val in list(out.items()):
            if (right, left) not in out and left in deg and right in deg:
                sign = -1 if deg[left] % 2 and deg[right] % 2 else 1
                out[(right, left)] = {k: sign * v for k, v in val.items()}
        return out


def _merge(old, new):
    if old is None:
        return dict(new)
    out = dict(old)
    _accumulate(out, new, 1)
    return out


def validate_spec(spec: CohomologySpec) -> list[str]:
    """Return every violated invariant as a human-readable line."""
    problems = []
    names = [n for n, _ in spec.classes]
    deg = spec.degrees
    if len(set(names)) != len(names):
        problems.append("duplicate class names")
    for n, s in spec.classes:
        if s < 2:
            problems.append(f"class {n} has degree {s}; simply connected algebras need degree >= 2")
    for left, right, value in spec.products:
        for n in (left, right, *(k for k, _ in value)):
            if n not in deg:
                problems.append(f"product {left}*{right} mentions unknown class {n}")
    if problems:
        return problems
    listed: dict = {}
    for left, right, value in spec.products:
        listed[(left, right)] = _merge(listed.get((left, right)), {k: v for k, v in value if v})
        for k, v in value:
            if v and deg[k] != deg[left] + deg[right]:
                problems.append(
                    f"product {left}*{right} has degree {deg[left] + deg[right]} but lands on {k} of degree {deg[k]}"
                )
    for (left, right), val in listed.items():
        sign = -1 if deg[left] % 2 and deg[right] % 2 else 1
        if left == right and sign == -1 and val:
            problems.append(f"{left}*{left} must vanish for a class of odd degree (graded commutativity)")
        elif (right, left) in listed and left != right:
            other = listed[(right, left)]
            if {k: sign * v for k, v in val.items()} != other:
                problems.append(f"{left}*{right} and {right}*{left} are not related by the Koszul sign")
    if problems:
        return problems
    table = spec.table()

    def mul(a: dict, b: dict) -> dict:
        out: dict = {}
        for u, cu in a.items():
            for v, cv in b.items():
                _accumulate(out, table.get((u, v), {}), cu * cv)
        return out

    for u, v, w in product(names, repeat=3):
        lhs = mul(mul({u: 1}, {v: 1}), {w: 1})
        rhs = mul({u: 1}, mul({v: 1}, {w: 1}))
        if lhs != rhs:
            problems.append(f"associativity fails on ({u}, {v}, {w})")
    return problems


@dataclass
class QuillenModel:
    spec: CohomologySpec
    gens: GeneratorTable
    alg: FreeLieAlgebra = field(repr=False)
    differential: Derivation = field(repr=False)

    @property
    def is_bouquet(self) -> bool:
        return not self.differential


def build_model(spec: CohomologySpec) -> QuillenModel:
    problems = validate_spec(spec)
    if problems:
        raise ModelError("; ".join(problems))
    gens = GeneratorTable.from_classes(spec.classes)
    alg = FreeLieAlgebra(gens)
    deg = spec.degrees
    vals: dict = {}
    for (u, v), val in spec.table().items():
        iu, iv = gens.index(u), gens.index(v)
        bracket = alg.bracket_trees(iu, iv)
        sign = -1 if deg[u] % 2 else 1
        for z, c in val.items():
            _accumulate(vals.setdefault(gens.index(z), {}), bracket, Fraction(sign * c, 2))
    d = Derivation(alg, vals, 1)
    problems = check_differential(d)
    if problems:
        raise ModelError("; ".join(problems))
    return QuillenModel(spec, gens, alg, d)


def check_differential(d: Derivation) -> list[str]:
    """Problems with a candidate differential: d^2, degree, weight, quadratic."""
    alg = d.alg
    names = alg.gens.names
    problems = []
    for x in range(len(names)):
        image = d.values.get(x, {})
        if d.apply_terms(image):
            problems.append(f"d^2 does not vanish on generator {names[x]}")
        for t in image:
            if alg.weight(t) != alg.gens.entries[x].weight:
                problems.append(f"d does not preserve weight on {names[x]}")
            if alg.degree(t) != alg.gens.entries[x].degree + 1:
                problems.append(f"d does not raise degree by one on {names[x]}")
            if len(word(t)) != 2:
                problems.append(f"d is not quadratic on {names[x]}")
    return problems
