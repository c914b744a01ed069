"""Multivariate polynomials over the rationals in named coordinates.

A monomial is a sorted tuple of ``(variable index, exponent)`` pairs.
Every variable carries a content vector (and a weight), and contents add
under multiplication, so homogeneous pieces are cheap to isolate.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

Monomial = tuple


@dataclass(frozen=True)
class PolyRing:
    names: tuple[str, ...]
    contents: tuple[tuple[int, ...], ...] = ()
    weights: tuple[int, ...] = ()
    descriptions: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("coordinate names must be unique")
        if not self.contents:
            object.__setattr__(self, "contents", tuple(() for _ in self.names))
        if not self.weights:
            object.__setattr__(self, "weights", tuple(0 for _ in self.names))

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown coordinate {name!r}") from None

    def var(self, name_or_index) -> Polynomial:
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        return Polynomial(self, {((i, 1),): Fraction(1)})

    def const(self, c) -> Polynomial:
        c = Fraction(c)
        return Polynomial(self, {(): c} if c else {})

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def monomial(self, text: str) -> Monomial:
        """Parse ``"a11*b212^2"`` into a monomial."""
        exps: dict[int, int] = {}
        for part in re.split(r"\s*\*\s*", text.strip()):
            if not part or part == "1":
                continue
            m = re.fullmatch(r"([^\^]+)(?:\^(\d+))?", part)
            if not m:
                raise ValueError(f"cannot parse monomial factor {part!r}")
            i = self.index(m.group(1))
            exps[i] = exps.get(i, 0) + int(m.group(2) or 1)
        return tuple(sorted(exps.items()))

    def content_of(self, mono: Monomial) -> tuple[int, ...]:
        width = max((len(c) for c in self.contents), default=0)
        out = [0] * width
        for i, e in mono:
            for k, v in enumerate(self.contents[i]):
                out[k] += e * v
        return tuple(out)

    def weight_of(self, mono: Monomial) -> int:
        return sum(e * self.weights[i] for i, e in mono)

    def show_monomial(self, mono: Monomial) -> str:
        if not mono:
            return "1"
        return "*".join(self.names[i] if e == 1 else f"{self.names[i]}^{e}" for i, e in mono)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for i, e in b:
        d[i] = d.get(i, 0) + e
    return tuple(sorted(d.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, Fraction]):
        self.ring = ring
        self.terms = {m: Fraction(c) for m, c in terms.items() if c}

    def _check(self, other: Polynomial) -> None:
        if other.ring is not self.ring and other.ring != self.ring:
            raise ValueError("polynomials over different coordinate rings")

    def _lift(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.ring.const(other)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(): Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> Polynomial:
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> Polynomial:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> Polynomial:
        return self._lift(other) - self

    def __mul__(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            return Polynomial(self.ring, {m: c * v for m, v in self.terms.items()} if c else {})
        self._check(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Polynomial:
        out = self.ring.const(1)
        for _ in range(e):
            out = out * self
        return out

    def times_monomial(self, mono: Monomial, coeff=1) -> Polynomial:
        return Polynomial(self.ring, {mono_mul(mono, m): coeff * c for m, c in self.terms.items()})

    @property
    def degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({mono_degree(m) for m in self.terms}) <= 1

    def contents(self) -> set[tuple[int, ...]]:
        return {self.ring.content_of(m) for m in self.terms}

    def is_content_homogeneous(self) -> bool:
        return len(self.contents()) <= 1

    def content(self) -> tuple[int, ...] | None:
        cs = self.contents()
        return cs.pop() if len(cs) == 1 else None

    def variables(self) -> set[int]:
        return {i for m in self.terms for i, _ in m}

    def linear_part(self) -> Polynomial:
        return Polynomial(self.ring, {m: c for m, c in self.terms.items() if mono_degree(m) == 1})

    def subs(self, values: Mapping[int, Polynomial], ring: PolyRing | None = None) -> Polynomial:
        """Substitute polynomials (over ``ring``) for variables."""
        ring = ring or self.ring
        out = ring.zero()
        cache: dict = {}
        for m, c in self.terms.items():
            term = ring.const(c)
            for i, e in m:
                if i in values:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = values[i] ** e
                    term = term * cache[key]
                else:
                    if ring is not self.ring:
                        raise ValueError(f"no substitution for {self.ring.names[i]}")
                    term = term * (ring.var(i) ** e)
            out = out + term
        return out

    def evaluate(self, point: Mapping[int, Fraction] | Sequence) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for i, e in m:
                v *= Fraction(point[i]) ** e
            total += v
        return total

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda mc: (mono_degree(mc[0]), mc[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            if not m:
                parts.append(f"{c}")
            elif c == 1:
                parts.append(self.ring.show_monomial(m))
            elif c == -1:
                parts.append("-" + self.ring.show_monomial(m))
            else:
                parts.append(f"{c}*{self.ring.show_monomial(m)}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__
