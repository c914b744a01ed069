"""Homotopy transfer to cohomology and the miniversal Maurer-Cartan ideal.

Conventions (shifted, graded-symmetric): an element of cohomology in
derivation degree ``n`` has shifted degree ``n - 1``.  The strict
structure is ``m1 = d`` and ``m2(y1, y2) = (-1)^{|y1|} [y1, y2]``; the
homotopy is ``h = -G`` where ``G`` inverts ``d`` on boundaries.  With
``p1`` the inclusion of representatives,

    Q_n(v) = sum over splits S + T of v (first argument in S)
             of koszul(S, T) * m2(p(S), p(T)),
    p_n = h(Q_n),   m'_n = projection(Q_n).

These signs are fixed by the identity ``mc(x1 + x2 + ...) = sum_n
m'_n(y^n)/n!`` for ``x_n`` built by the same recursion, which
``master_identity`` checks order by order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import factorial
from typing import NamedTuple, Sequence

from .complex import BigradedComplex, TruncationError
from .derivations import Derivation
from .linalg import Echelon, add_into
from .mc import McIdeal, default_letters
from .polynomial import Polynomial, PolyRing, mono_mul


class HElement(NamedTuple):
    degree: int
    weight: int
    slot: int  # index among the block's representatives
    rep: Derivation

    @property
    def shifted(self) -> int:
        return self.degree - 1


def _koszul_unshuffle(degrees: Sequence[int], first: Sequence[int], second: Sequence[int]) -> int:
    """Sign of moving positions ``first`` before ``second`` (odd swaps only)."""
    sign = 1
    for j in first:
        for i in second:
            if i < j and degrees[i] & 1 and degrees[j] & 1:
                sign = -sign
    return sign


def _sort_sign(args: Sequence[int], degrees: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sort indices, returning the Koszul sign (0 when an odd index repeats)."""
    items = list(args)
    sign = 1
    for i in range(len(items)):
        for j in range(len(items) - 1 - i):
            a, b = items[j], items[j + 1]
            if a > b:
                if degrees[a] & 1 and degrees[b] & 1:
                    sign = -sign
                items[j], items[j + 1] = b, a
            elif a == b and degrees[a] & 1:
                return 0, tuple(items)
    for a, b in zip(items, items[1:]):
        if a == b and degrees[a] & 1:
            return 0, tuple(items)
    return sign, tuple(items)


class TransferData:
    """Splitting data on the assembled window: inclusion, projection, contraction."""

    def __init__(self, cx: BigradedComplex, window: Sequence[int] = (0, 1, 2)):
        missing = [n for n in window if n not in cx.degree_set]
        if missing:
            raise TruncationError(f"degrees {missing} are not assembled")
        self.cx = cx
        self.window = tuple(window)
        basis: list[HElement] = []
        for n in self.window:
            for w in sorted(cx.weights(n), reverse=True):
                coh = cx.cohomology(n, w)
                for slot, rep in enumerate(coh.rep_derivations()):
                    basis.append(HElement(n, w, slot, rep))
        self.basis = basis
        self._index = {(h.degree, h.weight, h.slot): i for i, h in enumerate(basis)}
        self.shifted = [h.shifted for h in basis]

    def __len__(self) -> int:
        return len(self.basis)

    def indices(self, degree: int) -> list[int]:
        return [i for i, h in enumerate(self.basis) if h.degree == degree]

    def include(self, vec: dict) -> Derivation:
        out = None
        for i, c in sorted(vec.items()):
            term = self.basis[i].rep * c
            out = term if out is None else out + term
        return out if out is not None else Derivation(self.cx.alg, {})

    def project(self, theta: Derivation) -> dict:
        out: dict = {}
        for (n, w), vec in self.cx.split(theta, strict=False).items():
            if n not in self.window:
                continue
            for slot, c in self.cx.cohomology(n, w).project(vec).items():
                add_into(out, {self._index[(n, w, slot)]: c})
        return out

    def contract(self, theta: Derivation) -> Derivation:
        """``G(theta)``: inverse of ``d`` on boundaries, zero elsewhere."""
        deg = None if theta.degree is None else theta.degree - 1
        out = Derivation(self.cx.alg, {}, deg)
        for (n, w), vec in self.cx.split(theta, strict=False).items():
            if n not in self.window:
                continue
            pre = self.cx.cohomology(n, w).contract(vec)
            if pre:
                out = out + self.cx.derivation(n - 1, w, pre)
        return out

    def homotopy(self, theta: Derivation) -> Derivation:
        return self.contract(theta) * -1


@dataclass
class LInftyBrackets:
    transfer: TransferData
    cutoff: int
    tables: dict[int, dict[tuple[int, ...], dict]] = field(default_factory=dict)
    witnesses: dict[tuple[int, ...], Derivation] = field(default_factory=dict)

    @property
    def basis(self) -> list[HElement]:
        return self.transfer.basis

    def evaluate(self, args: Sequence[int]) -> dict:
        """``m'_n`` on basis indices in any order (Koszul sign applied)."""
        n = len(args)
        if n < 2 or n > self.cutoff:
            return {}
        sign, key = _sort_sign(args, self.transfer.shifted)
        if not sign:
            return {}
        val = self.tables.get(n, {}).get(key)
        if not val:
            return {}
        return {k: sign * v for k, v in val.items()}

    def mutated(self, args: Sequence[int], output: int, delta=1) -> LInftyBrackets:
        """Copy with ``delta`` added to one coefficient (for checker tests)."""
        n = len(args)
        sign, key = _sort_sign(args, self.transfer.shifted)
        if not sign:
            raise ValueError("arguments repeat an odd element")
        if not self.admits(key, output):
            raise ValueError("output class has the wrong degree or weight for these arguments")
        tables = {m: dict(t) for m, t in self.tables.items()}
        entry = dict(tables.setdefault(n, {}).get(key, {}))
        add_into(entry, {output: Fraction(delta) * sign})
        tables[n][key] = entry
        return LInftyBrackets(self.transfer, self.cutoff, tables, self.witnesses)

    def admits(self, args: Sequence[int], output: int) -> bool:
        """Whether ``m'_n(args)`` may have a component on ``output``."""
        hs = self.basis
        shifted = sum(hs[a].shifted for a in args) + 1
        weight = sum(hs[a].weight for a in args)
        return hs[output].shifted == shifted and hs[output].weight == weight

    def nonzero_count(self) -> dict[int, int]:
        return {n: sum(1 for v in t.values() if v) for n, t in sorted(self.tables.items())}


def admissible_tuples(td: TransferData, n: int, indices: Sequence[int] | None = None):
    """Sorted index tuples of length ``n`` whose output can be nonzero."""
    pool = list(range(len(td))) if indices is None else sorted(indices)
    shifted = td.shifted
    wmin = td.cx.weight_min
    max_w = max((td.basis[i].weight for i in pool), default=-1)

    def rec(start, left, wt, deg, acc):
        if left == 0:
            if deg - n + 2 in td.window:
                yield tuple(acc)
            return
        for k in range(start, len(pool)):
            i = pool[k]
            h = td.basis[i]
            if wt + h.weight + (left - 1) * max_w < wmin:
                continue
            if acc and acc[-1] == i and shifted[i] & 1:
                continue
            acc.append(i)
            yield from rec(k, left - 1, wt + h.weight, deg + h.degree, acc)
            acc.pop()

    yield from rec(0, n, 0, 0, [])


def max_arity(td: TransferData) -> int:
    """Largest arity whose output can be nonzero by weight bookkeeping."""
    ws = [h.weight for h in td.basis]
    if not ws:
        return 0
    return max(1, td.cx.weight_min // max(ws))


def transfer(cx: BigradedComplex, window: Sequence[int] = (0, 1, 2), cutoff: int = 4) -> LInftyBrackets:
    td = TransferData(cx, window)
    out = LInftyBrackets(td, cutoff)
    shifted = td.shifted
    memo_p: dict[tuple[int, ...], Derivation] = {(i,): h.rep for i, h in enumerate(td.basis)}

    def q_of(args: tuple[int, ...]) -> Derivation | None:
        n = len(args)
        pos = range(n)
        total = None
        for size in range(1, n):
            for rest in combinations(range(1, n), size - 1):
                first = (0,) + rest
                second = tuple(i for i in pos if i not in first)
                a = p_of(tuple(args[i] for i in first))
                b = p_of(tuple(args[i] for i in second))
                if not a or not b:
                    continue
                sign = _koszul_unshuffle([shifted[x] for x in args], first, second)
                if sum(shifted[args[i]] for i in first) & 1:
                    sign = -sign
                term = cx.bracket(a, b) * sign
                total = term if total is None else total + term
        return total

    def p_of(args: tuple[int, ...]) -> Derivation | None:
        if args in memo_p:
            return memo_p[args]
        q = q_of(args)
        val = td.homotopy(q) if q else None
        memo_p[args] = val
        if val:
            out.witnesses[args] = val
        return val

    for n in range(2, cutoff + 1):
        table: dict = {}
        for args in admissible_tuples(td, n):
            q = q_of(args)
            if q:
                proj = td.project(q)
                if proj:
                    table[args] = proj
        out.tables[n] = table
    return out


# ---- Maurer-Cartan series on H^1 ---------------------------------------


def tangent_ring(br: LInftyBrackets) -> tuple[PolyRing, list[int]]:
    td = br.transfer
    idx = td.indices(1)
    alg = td.cx.alg
    names, contents, weights, desc = [], [], [], []
    for k, i in enumerate(idx):
        h = td.basis[i]
        cs = set()
        for x, t, _ in h.rep.terms():
            c = list(alg.content(t))
            c[x] -= 1
            cs.add(tuple(c))
        names.append(f"t{k + 1}")
        contents.append(cs.pop() if len(cs) == 1 else ())
        weights.append(h.weight)
        desc.append(h.rep.describe())
    if any(not c for c in contents):
        contents = []
    return PolyRing(tuple(names), tuple(contents), tuple(weights), tuple(desc)), idx


def _multiplicity_factor(args: Sequence[int]) -> Fraction:
    out = 1
    for a in set(args):
        out *= factorial(args.count(a))
    return Fraction(1, out)


def _h1_series(br: LInftyBrackets, ring: PolyRing, idx: list[int], order: int) -> dict:
    """``sum_n 1/n! m'_n(y^n)`` up to ``order`` as {H index: Polynomial}."""
    pos = {i: k for k, i in enumerate(idx)}
    out: dict = {}
    for n in range(2, order + 1):
        for args in combinations_with_replacement(idx, n):
            val = br.evaluate(args)
            if not val:
                continue
            mono: tuple = ()
            for a in args:
                mono = mono_mul(mono, ((pos[a], 1),))
            coeff = _multiplicity_factor(list(args))
            for k, c in val.items():
                poly = out.setdefault(k, {})
                poly[mono] = poly.get(mono, 0) + coeff * c
    return {k: Polynomial(ring, v) for k, v in sorted(out.items())}


def miniversal_ideal(br: LInftyBrackets) -> McIdeal:
    td = br.transfer
    need = min(max_arity(td), _h2_arity_bound(td))
    if br.cutoff < need:
        raise TruncationError(f"cutoff {br.cutoff} is below the arity {need} that can contribute; raise the cutoff")
    ring, idx = tangent_ring(br)
    series = _h1_series(br, ring, idx, br.cutoff)
    gens, labels = [], []
    for k in td.indices(2):
        poly = series.get(k)
        if poly:
            gens.append(poly)
            labels.append(td.basis[k].rep.describe())
    return McIdeal(ring, gens, labels, default_letters(td.cx.model))


def _h2_arity_bound(td: TransferData) -> int:
    h1 = [h.weight for h in td.basis if h.degree == 1]
    h2 = [h.weight for h in td.basis if h.degree == 2]
    if not h1 or not h2:
        return 0
    return min(h2) // max(h1)


# ---- checks -------------------------------------------------------------


class MasterReport(NamedTuple):
    orders: dict[int, bool]
    series: dict[int, dict]

    @property
    def holds(self) -> bool:
        return all(self.orders.values())


def master_identity(br: LInftyBrackets, order: int | None = None) -> MasterReport:
    """Check ``mc(x1 + x2 + ...) = sum_n m'_n(y^n)/n!`` order by order.

    ``x1 = sum t_i h_i`` over degree-one classes and ``x_n = h(1/2 sum
    [x_a, x_b])``; everything is a polynomial in commuting ``t_i``.
    """
    td = br.transfer
    cx = td.cx
    order = order or br.cutoff
    ring, idx = tangent_ring(br)
    pos = {i: k for k, i in enumerate(idx)}
    xs: dict[int, dict] = {1: {((pos[i], 1),): td.basis[i].rep for i in idx}}
    results: dict[int, bool] = {}
    rhs_series = _h1_series(br, ring, idx, order)
    for n in range(1, order + 1):
        q: dict = {}
        for a in range(1, n):
            b = n - a
            for ma, xa in xs[a].items():
                for mb, xb in xs[b].items():
                    br_ab = cx.bracket(xa, xb) * Fraction(1, 2)
                    if not br_ab:
                        continue
                    m = mono_mul(ma, mb)
                    q[m] = q[m] + br_ab if m in q else br_ab
        if n >= 2:
            xs[n] = {m: td.homotopy(v) for m, v in q.items()}
            xs[n] = {m: v for m, v in xs[n].items() if v}
        lhs: dict = {}
        for m, v in xs[n].items():
            dv = cx.d(v)
            if dv:
                lhs[m] = dv
        for m, v in q.items():
            lhs[m] = lhs[m] + v if m in lhs else v
        lhs = {m: v for m, v in lhs.items() if v}
        rhs: dict = {}
        for k, poly in rhs_series.items():
            for m, c in poly.terms.items():
                if sum(e for _, e in m) != n:
                    continue
                term = td.basis[k].rep * c
                rhs[m] = rhs[m] + term if m in rhs else term
        rhs = {m: v for m, v in rhs.items() if v}
        results[n] = lhs == rhs
    return MasterReport(results, xs)


class JacobiReport(NamedTuple):
    n: int
    checked: int
    residuals: dict[tuple[int, ...], dict]

    @property
    def holds(self) -> bool:
        return not self.residuals


def check_n_jacobi(br: LInftyBrackets, n: int, tuples: Sequence[Sequence[int]] | None = None) -> JacobiReport:
    """Evaluate ``sum_{j} sum_unshuffles koszul * m'_{n-j+1}(m'_j(v_S), v_T)``."""
    if n > br.cutoff:
        raise ValueError("n exceeds the cutoff")
    td = br.transfer
    shifted = td.shifted
    if tuples is None:
        tuples = [t for t in combinations_with_replacement(range(len(td)), n) if _sort_sign(t, shifted)[0]]
    residuals = {}
    for args in tuples:
        args = tuple(args)
        degs = [shifted[a] for a in args]
        total: dict = {}
        for j in range(2, n):
            for first in combinations(range(n), j):
                second = tuple(i for i in range(n) if i not in first)
                inner = br.evaluate([args[i] for i in first])
                if not inner:
                    continue
                sign = _koszul_unshuffle(degs, first, second)
                rest = [args[i] for i in second]
                for c, coeff in inner.items():
                    add_into(total, br.evaluate([c] + rest), sign * coeff)
        if total:
            residuals[args] = total
    return JacobiReport(n, len(tuples), residuals)


def ideal_piece_dims(ideal: McIdeal, depth: int) -> dict[int, int]:
    """Dimension of the ideal in each coordinate weight ``-1 .. -depth``."""
    ring = ideal.ring
    out = {}
    for w in range(-1, -depth - 1, -1):
        e = Echelon()
        for g in ideal.generators:
            gw = ring.weight_of(next(iter(g.terms)))
            for m in _monomials_of_weight(ring, w - gw):
                e.add(g.times_monomial(m).terms)
        out[w] = e.rank
    return out


def _monomials_of_weight(ring: PolyRing, w: int) -> list[tuple]:
    """Monomials of total weight ``w`` (coordinate weights are negative)."""
    if w > 0:
        return []
    out = []

    def rec(i, rem, mono):
        if rem == 0:
            out.append(tuple(mono))
            return
        if i == len(ring):
            return
        wi = ring.weights[i]
        for e in range(rem // wi, -1, -1):
            if e:
                mono.append((i, e))
            rec(i + 1, rem - e * wi, mono)
            if e:
                mono.pop()

    rec(0, w, [])
    return out
