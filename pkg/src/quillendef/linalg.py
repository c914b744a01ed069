"""Exact sparse linear algebra over the rationals.

Vectors are plain dicts mapping a sortable column key to a nonzero
``Fraction``.  Elimination always pivots on the smallest key, so every
echelon form (and hence every chosen representative) is reproducible.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Hashable, Iterable, Mapping

Vector = dict


def add_into(target: dict, vec: Mapping, coeff=1) -> None:
    """``target += coeff * vec`` in place, dropping zeros."""
    if not coeff:
        return
    for k, v in vec.items():
        s = target.get(k, 0) + coeff * v
        if s:
            target[k] = s
        else:
            target.pop(k, None)


def scaled(vec: Mapping, coeff) -> dict:
    if not coeff:
        return {}
    return {k: coeff * v for k, v in vec.items()}


def combine(pairs: Iterable[tuple[object, Mapping]]) -> dict:
    out: dict = {}
    for c, v in pairs:
        add_into(out, v, c)
    return out


class Echelon:
    """Incremental row echelon form with optional combination tracking.

    Each stored row has a pivot equal to its smallest key and a pivot
    entry of 1.  With ``track=True`` every row remembers how it was built
    from the labelled input vectors, which turns reduction into an exact
    solver: ``express`` returns the coefficients writing a vector in terms
    of the inputs.
    """

    def __init__(self, track: bool = False, key=None):
        self.track = track
        self.key = key
        self.rows: dict[Hashable, tuple[dict, dict]] = {}
        self.labels: list = []

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _order(self, k):
        return self.key(k) if self.key else k

    def reduce(self, vec: Mapping, combo: dict | None = None) -> tuple[dict, dict]:
        """Return ``(remainder, combo)`` with no pivot key left in remainder."""
        v = {k: x for k, x in vec.items() if x}
        combo = dict(combo) if combo else {}
        if not self.rows:
            return v, combo
        heap = [(self._order(k), i, k) for i, k in enumerate(v)]
        heapq.heapify(heap)
        counter = len(heap)
        seen = set()
        while heap:
            _, _, k = heapq.heappop(heap)
            if k in seen:
                continue
            seen.add(k)
            c = v.get(k)
            if not c or k not in self.rows:
                continue
            row, rcombo = self.rows[k]
            for rk, rv in row.items():
                s = v.get(rk, 0) - c * rv
                if s:
                    if rk not in v and rk not in seen:
                        heapq.heappush(heap, (self._order(rk), counter, rk))
                        counter += 1
                    v[rk] = s
                else:
                    v.pop(rk, None)
            if self.track:
                add_into(combo, rcombo, -c)
        return v, combo

    def add(self, vec: Mapping, label=None) -> bool:
        """Insert a vector; return True when it was independent."""
        if self.track:
            label = len(self.labels) if label is None else label
            self.labels.append(label)
            combo = {label: Fraction(1)}
        else:
            combo = None
        v, combo = self.reduce(vec, combo)
        if not v:
            return False
        piv = min(v, key=self._order)
        inv = 1 / Fraction(v[piv])
        row = {k: x * inv for k, x in v.items()}
        self.rows[piv] = (row, scaled(combo, inv) if self.track else {})
        return True

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)[0]

    def express(self, vec: Mapping) -> dict | None:
        """Coefficients of ``vec`` over the input labels, or None."""
        if not self.track:
            raise ValueError("express needs a tracking echelon")
        v, combo = self.reduce(vec)
        if v:
            return None
        return scaled(combo, -1)

    def pivots(self) -> list:
        return sorted(self.rows, key=self._order)

    def basis(self) -> list[dict]:
        return [self.rows[p][0] for p in self.pivots()]

    def reduced_basis(self) -> list[dict]:
        """Fully reduced rows (pivot columns cleared in every other row)."""
        out = []
        piv = self.pivots()
        for p in reversed(piv):
            row = dict(self.rows[p][0])
            for q in out:
                qp = min(q, key=self._order)
                c = row.get(qp)
                if c:
                    add_into(row, q, -c)
            out.append(row)
        out.reverse()
        return out


def rank(vectors: Iterable[Mapping]) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rank


def nullspace(columns: list[Mapping]) -> list[dict]:
    """Basis of ``{c : sum_j c_j columns[j] = 0}`` as sparse dicts over j."""
    e = Echelon(track=True)
    out = []
    for j, col in enumerate(columns):
        v, combo = e.reduce(col, {j: Fraction(1)})
        if v:
            piv = min(v, key=e._order)
            inv = 1 / Fraction(v[piv])
            e.labels.append(j)
            e.rows[piv] = ({k: x * inv for k, x in v.items()}, scaled(combo, inv))
        else:
            out.append(combo)
    return [_normalize_leading(c) for c in out]


def _normalize_leading(vec: dict) -> dict:
    lead = vec[max(vec)]
    return {k: Fraction(v) / lead for k, v in vec.items()}


def solve(columns: list[Mapping], target: Mapping) -> dict | None:
    """Some ``c`` with ``sum_j c_j columns[j] = target``, or None."""
    e = Echelon(track=True)
    for j, col in enumerate(columns):
        e.add(col, j)
    return e.express(target)
