"""Free graded Lie algebras over the rationals.

Basis elements are stored as bracket trees: a letter is an ``int`` (its
index in the generator table) and a bracket is a pair ``(left, right)``.
The canonical basis consists of

* standard bracketings of Lyndon words (letter order = table order), and
* squares ``(w, w)`` of Lyndon trees ``w`` of odd degree.

Arbitrary brackets are rewritten into this basis by graded antisymmetry
and the graded Jacobi identity; results are memoized per algebra.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence, Union

Tree = Union[int, tuple]


class LieInputError(ValueError):
    pass


class Generator(NamedTuple):
    name: str
    degree: int
    weight: int


@dataclass(frozen=True)
class GeneratorTable:
    entries: tuple[Generator, ...]

    def __post_init__(self):
        names = [g.name for g in self.entries]
        if len(set(names)) != len(names):
            raise LieInputError(f"duplicate generator names in {names}")

    @classmethod
    def from_classes(cls, classes: Iterable[tuple[str, int]]) -> GeneratorTable:
        """Suspended duals: a class of degree s gives degree 1 - s, weight s."""
        return cls(tuple(Generator(n, 1 - s, s) for n, s in classes))

    @classmethod
    def of(cls, *entries: tuple[str, int, int]) -> GeneratorTable:
        return cls(tuple(Generator(*e) for e in entries))

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.entries)

    def index(self, name: str) -> int:
        for i, g in enumerate(self.entries):
            if g.name == name:
                return i
        raise LieInputError(f"unknown generator {name!r}")


@lru_cache(maxsize=None)
def word(t: Tree) -> tuple[int, ...]:
    if isinstance(t, int):
        return (t,)
    return word(t[0]) + word(t[1])


def is_square(t: Tree) -> bool:
    return not isinstance(t, int) and t[0] == t[1]


def is_lyndon(w: Sequence[int]) -> bool:
    n = len(w)
    w = tuple(w)
    return n > 0 and all(w < w[i:] for i in range(1, n))


@lru_cache(maxsize=None)
def lyndon_tree(w: tuple[int, ...]) -> Tree:
    """Standard bracketing: split off the longest proper Lyndon suffix."""
    if len(w) == 1:
        return w[0]
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return (lyndon_tree(w[:i]), lyndon_tree(w[i:]))
    raise AssertionError(f"{w} is not Lyndon")


def _multiset_permutations(counts: list[int]):
    total = sum(counts)
    if total == 0:
        yield ()
        return
    for i, c in enumerate(counts):
        if c:
            counts[i] -= 1
            for rest in _multiset_permutations(counts):
                yield (i,) + rest
            counts[i] += 1


def _compositions(n: int, parts: int):
    if parts == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


class BasisWord(NamedTuple):
    """Public view of a canonical basis element."""

    tree: Tree
    word: tuple[int, ...]
    content: tuple[int, ...]
    degree: int
    weight: int
    length: int


class FreeLieAlgebra:
    """Arithmetic in the free graded Lie algebra on a generator table."""

    def __init__(self, gens: GeneratorTable):
        self.gens = gens
        self._deg = [g.degree for g in gens.entries]
        self._wt = [g.weight for g in gens.entries]
        self._bracket_cache: dict[tuple[Tree, Tree], dict] = {}
        self._active: set = set()

    def __repr__(self) -> str:
        return f"FreeLieAlgebra({', '.join(self.gens.names)})"

    # ---- gradings -------------------------------------------------------
    def degree(self, t: Tree) -> int:
        return sum(self._deg[i] for i in word(t))

    def weight(self, t: Tree) -> int:
        return sum(self._wt[i] for i in word(t))

    def parity(self, t: Tree) -> int:
        return self.degree(t) & 1

    def content(self, t: Tree) -> tuple[int, ...]:
        c = [0] * len(self.gens)
        for i in word(t):
            c[i] += 1
        return tuple(c)

    def basis_word(self, t: Tree) -> BasisWord:
        w = word(t)
        return BasisWord(t, w, self.content(t), self.degree(t), self.weight(t), len(w))

    def show(self, t: Tree) -> str:
        if isinstance(t, int):
            return self.gens.entries[t].name
        return f"[{self.show(t[0])},{self.show(t[1])}]"

    # ---- basis ----------------------------------------------------------
    def enumerate_basis(self, length: int, content: Sequence[int] | None = None) -> list[BasisWord]:
        r = len(self.gens)
        if length < 1:
            raise LieInputError("length must be at least 1")
        if content is not None:
            content = tuple(content)
            if len(content) != r or any(c < 0 for c in content):
                raise LieInputError(f"content {content} does not match {r} generators")
            if sum(content) != length:
                raise LieInputError("content must sum to length")
            contents = [content]
        else:
            contents = list(_compositions(length, r))
        trees = []
        for c in contents:
            trees.extend(self._basis_of_content(c))
        trees.sort(key=word)
        return [self.basis_word(t) for t in trees]

    def _basis_of_content(self, content: tuple[int, ...]) -> list[Tree]:
        out = [lyndon_tree(w) for w in _multiset_permutations(list(content)) if is_lyndon(w)]
        if all(c % 2 == 0 for c in content):
            half = [c // 2 for c in content]
            for w in _multiset_permutations(half):
                if is_lyndon(w):
                    t = lyndon_tree(w)
                    if self.parity(t):
                        out.append((t, t))
        return out

    # ---- bracket of basis trees ----------------------------------------
    def _sign(self, a: Tree, b: Tree) -> int:
        return -1 if self.parity(a) and self.parity(b) else 1

    def bracket_trees(self, a: Tree, b: Tree) -> dict:
        """[a, b] for canonical basis trees, as a dict tree -> Fraction."""
        key = (a, b)
        hit = self._bracket_cache.get(key)
        if hit is not None:
            return hit
        if key in self._active:
            raise RuntimeError(f"bracket rewriting cycle at {self.show(a)}, {self.show(b)}")
        self._active.add(key)
        try:
            res = self._bracket_uncached(a, b)
        finally:
            self._active.discard(key)
        self._bracket_cache[key] = res
        return res

    def _bracket_many(self, left: dict, right_tree: Tree, coeff, out: dict, flip=False) -> None:
        for t, c in left.items():
            r = self.bracket_trees(right_tree, t) if flip else self.bracket_trees(t, right_tree)
            _accumulate(out, r, coeff * c)

    def _bracket_uncached(self, a: Tree, b: Tree) -> dict:
        if a == b:
            if self.parity(a) and not is_square(a):
                return {(a, a): Fraction(1)}
            return {}
        wa, wb = word(a), word(b)
        if wa > wb:
            return {t: -self._sign(a, b) * c for t, c in self.bracket_trees(b, a).items()}
        out: dict = {}
        if is_square(b):
            # [a, [w,w]] = 2 [[a,w], w]; [w, [w,w]] = 0 by Jacobi
            w = b[0]
            if a == w:
                return {}
            self._bracket_many(self.bracket_trees(a, w), w, 2, out)
            return out
        if is_square(a):
            # [[w,w], b] = -[b, [w,w]] = -2 [[b,w], w]
            w = a[0]
            if b == w:
                return {}
            self._bracket_many(self.bracket_trees(b, w), w, -2, out)
            return out
        if isinstance(a, int) or word(a[1]) >= wb:
            return {(a, b): Fraction(1)}
        # [[a1,a2],b] = [a1,[a2,b]] - (-1)^{|a1||a2|} [a2,[a1,b]]
        a1, a2 = a
        self._bracket_many(self.bracket_trees(a2, b), a1, 1, out, flip=True)
        self._bracket_many(self.bracket_trees(a1, b), a2, -self._sign(a1, a2), out, flip=True)
        return out

    # ---- elements -------------------------------------------------------
    def zero(self) -> LieElement:
        return LieElement(self, {})

    def letter(self, name_or_index) -> LieElement:
        i = name_or_index if isinstance(name_or_index, int) else self.gens.index(name_or_index)
        if not 0 <= i < len(self.gens):
            raise LieInputError(f"unknown generator index {i}")
        return LieElement(self, {i: Fraction(1)})

    def element(self, terms: dict) -> LieElement:
        return LieElement(self, {t: Fraction(c) for t, c in terms.items() if c})

    def bracket(self, a: LieElement, b: LieElement) -> LieElement:
        if a.alg is not self or b.alg is not self:
            raise LieInputError("elements belong to different generator tables")
        out: dict = {}
        for ta, ca in a.terms.items():
            for tb, cb in b.terms.items():
                _accumulate(out, self.bracket_trees(ta, tb), ca * cb)
        return LieElement(self, out)

    def normalize(self, expr) -> LieElement:
        """Normalize a bracket expression.

        ``expr`` is a generator name, a generator index, a nested pair
        ``(left, right)``, or a string such as ``"[x1,[x1,x2]]"``.
        """
        if isinstance(expr, str) and expr.lstrip().startswith("["):
            expr = parse_bracket(expr)
        if isinstance(expr, (str, int)):
            return self.letter(expr)
        left, right = expr
        return self.bracket(self.normalize(left), self.normalize(right))


def _accumulate(out: dict, terms: dict, coeff) -> None:
    if not coeff:
        return
    for t, c in terms.items():
        s = out.get(t, 0) + coeff * c
        if s:
            out[t] = s
        else:
            del out[t]


@dataclass(frozen=True)
class LieElement:
    alg: FreeLieAlgebra = field(repr=False, compare=False)
    terms: dict = field(hash=False)

    def __post_init__(self):
        for t, c in list(self.terms.items()):
            if not c:
                del self.terms[t]

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: LieElement) -> LieElement:
        out = dict(self.terms)
        _accumulate(out, other.terms, 1)
        return LieElement(self.alg, out)

    def __sub__(self, other: LieElement) -> LieElement:
        out = dict(self.terms)
        _accumulate(out, other.terms, -1)
        return LieElement(self.alg, out)

    def __neg__(self) -> LieElement:
        return LieElement(self.alg, {t: -c for t, c in self.terms.items()})

    def __mul__(self, c) -> LieElement:
        c = Fraction(c)
        if not c:
            return LieElement(self.alg, {})
        return LieElement(self.alg, {t: c * v for t, v in self.terms.items()})

    __rmul__ = __mul__

    def bracket(self, other: LieElement) -> LieElement:
        return self.alg.bracket(self, other)

    def sorted_terms(self) -> list[tuple[Tree, Fraction]]:
        return sorted(self.terms.items(), key=lambda tc: word(tc[0]))

    def basis_terms(self) -> list[tuple[BasisWord, Fraction]]:
        return [(self.alg.basis_word(t), c) for t, c in self.sorted_terms()]

    def components(self) -> dict[tuple[int, tuple[int, ...]], LieElement]:
        """Split by (degree, content)."""
        out: dict = {}
        for t, c in self.terms.items():
            key = (self.alg.degree(t), self.alg.content(t))
            out.setdefault(key, {})[t] = c
        return {k: LieElement(self.alg, v) for k, v in sorted(out.items())}

    def degrees(self) -> set[int]:
        return {self.alg.degree(t) for t in self.terms}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for t, c in self.sorted_terms():
            parts.append(f"{c}*{self.alg.show(t)}")
        return " + ".join(parts).replace("+ -", "- ")


_TOKEN = re.compile(r"\s*(\[|\]|,|[^\[\],\s]+)")


def parse_bracket(text: str):
    """Parse ``"[x1,[x1,x2]]"`` into nested pairs of names."""
    tokens = _TOKEN.findall(text)
    pos = 0

    def parse():
        nonlocal pos
        if pos >= len(tokens):
            raise LieInputError(f"unexpected end of bracket expression {text!r}")
        tok = tokens[pos]
        pos += 1
        if tok == "[":
            left = parse()
            if pos >= len(tokens) or tokens[pos] != ",":
                raise LieInputError(f"expected ',' in {text!r}")
            pos += 1
            right = parse()
            if pos >= len(tokens) or tokens[pos] != "]":
                raise LieInputError(f"expected ']' in {text!r}")
            pos += 1
            return (left, right)
        if tok in "],":
            raise LieInputError(f"unexpected {tok!r} in {text!r}")
        return tok

    out = parse()
    if pos != len(tokens):
        raise LieInputError(f"trailing input in {text!r}")
    return out


def right_normed(letters: Sequence) -> tuple:
    """``[a1,[a2,[...,an]]]`` as nested pairs."""
    expr = letters[-1]
    for x in reversed(letters[:-1]):
        expr = (x, expr)
    return expr


def witt_dimension(degrees: Sequence[int], content: Sequence[int]) -> int:
    """Dimension of a multigraded piece of the free graded Lie algebra.

    Graded Möbius formula: with ``odd(c)`` the number of odd-degree letters
    in ``c``, the dimension is
    ``1/|c| * sum_{e | c} mu(e) (-1)^(odd(c) + odd(c/e)) multinomial(c/e)``.
    It is independent of the basis enumeration and checks it.
    """
    from math import factorial

    n = sum(content)
    if n == 0:
        return 0

    def odd(c):
        return sum(x for x, deg in zip(c, degrees) if deg % 2)

    total = 0
    for e in range(1, n + 1):
        if any(c % e for c in content):
            continue
        sub = [c // e for c in content]
        multinom = factorial(sum(sub))
        for c in sub:
            multinom //= factorial(c)
        total += _mobius(e) * (-1) ** (odd(content) + odd(sub)) * multinom
    if total % n:
        raise AssertionError(f"non-integral Witt dimension {total}/{n}")
    return total // n


def _mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result
