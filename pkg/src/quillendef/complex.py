"""The bigraded complex of negative-weight derivations.

Blocks are indexed by ``(degree, weight)``.  Only finitely many blocks
are assembled: degrees from an explicit set and weights in
``[weight_min, -1]``.  The assembled blocks form a finite-dimensional dg
Lie algebra: brackets that land outside them are dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .derivations import Derivation, bracket_der, differential_der
from .lie import Tree, word
from .linalg import Echelon, add_into, nullspace
from .quillen import QuillenModel


class TruncationError(ValueError):
    pass


@dataclass
class Block:
    degree: int
    weight: int
    basis: list[tuple[int, Tree]]
    index: dict = field(repr=False)

    def __len__(self) -> int:
        return len(self.basis)


def _contents_with_weight(weights: list[int], total: int, start: int = 0):
    """Nonnegative integer vectors c with sum(c_i * weights_i) == total."""
    if start == len(weights):
        if total == 0:
            yield ()
        return
    w = weights[start]
    for k in range(total // w + 1):
        for rest in _contents_with_weight(weights, total - k * w, start + 1):
            yield (k,) + rest


def words_of_bidegree(model: QuillenModel, degree: int, weight: int) -> list[Tree]:
    """Canonical basis trees with the given total degree and weight."""
    alg = model.alg
    entries = model.gens.entries
    wts = [g.weight for g in entries]
    if any(w <= 0 for w in wts):
        raise TruncationError("generator weights must be positive to enumerate a block")
    out = []
    for c in _contents_with_weight(wts, weight):
        n = sum(c)
        if n == 0 or sum(ci * g.degree for ci, g in zip(c, entries)) != degree:
            continue
        out.extend(b.tree for b in alg.enumerate_basis(n, c))
    out.sort(key=word)
    return out


class BigradedComplex:
    def __init__(self, model: QuillenModel, degree_set: Iterable[int], weight_min: int):
        self.model = model
        self.alg = model.alg
        self.degree_set = tuple(sorted(set(degree_set)))
        self.weight_min = weight_min
        self.blocks: dict[tuple[int, int], Block] = {}
        for n in self.degree_set:
            for w in range(-1, weight_min - 1, -1):
                self.blocks[(n, w)] = self._make_block(n, w)
        # blocks one degree above the window, so the top degree has true cycles
        self._above: dict[tuple[int, int], Block] = {}
        self._dmat: dict = {}
        self._cohomology: dict = {}

    def _make_block(self, n: int, w: int) -> Block:
        basis = []
        for x, g in enumerate(self.model.gens.entries):
            if g.weight - w <= 0:
                continue
            for t in words_of_bidegree(self.model, g.degree + n, g.weight - w):
                basis.append((x, t))
        return Block(n, w, basis, {b: i for i, b in enumerate(basis)})

    def _target_block(self, n: int, w: int) -> Block:
        blk = self.blocks.get((n, w))
        if blk is None:
            blk = self._above.get((n, w))
            if blk is None:
                blk = self._above[(n, w)] = self._make_block(n, w)
        return blk

    def __repr__(self) -> str:
        dims = {k: len(b) for k, b in self.blocks.items() if len(b)}
        return f"BigradedComplex(degrees={self.degree_set}, weight_min={self.weight_min}, dims={dims})"

    # ---- coordinates ----------------------------------------------------
    def has_block(self, n: int, w: int) -> bool:
        return (n, w) in self.blocks

    def dimension(self, n: int, w: int | None = None) -> int:
        if w is not None:
            return len(self.blocks[(n, w)]) if (n, w) in self.blocks else 0
        return sum(len(b) for (m, _), b in self.blocks.items() if m == n)

    def weights(self, n: int) -> list[int]:
        return [w for (m, w) in self.blocks if m == n]

    def basis_derivation(self, n: int, w: int, i: int) -> Derivation:
        x, t = self.blocks[(n, w)].basis[i]
        return Derivation.basis(self.alg, t, x)

    def derivation(self, n: int, w: int, vec: dict) -> Derivation:
        basis = self.blocks[(n, w)].basis
        vals: dict = {}
        for i, c in vec.items():
            if c:
                x, t = basis[i]
                vals.setdefault(x, {})[t] = Fraction(c)
        return Derivation(self.alg, vals, n)

    def split(self, theta: Derivation, strict: bool = True) -> dict[tuple[int, int], dict]:
        """Coordinates of ``theta`` per assembled block.

        With ``strict`` a component outside the assembled blocks raises;
        otherwise it is dropped (quotient semantics).
        """
        out: dict = {}
        deg = theta.degree
        entries = self.model.gens.entries
        for x, vals in theta.values.items():
            for t, c in vals.items():
                w = entries[x].weight - self.alg.weight(t)
                blk = self.blocks.get((deg, w))
                if blk is None:
                    if strict:
                        raise TruncationError(f"component in block (degree {deg}, weight {w}) is not assembled")
                    continue
                out.setdefault((deg, w), {})[blk.index[(x, t)]] = c
        return out

    def truncate(self, theta: Derivation) -> Derivation:
        """Project onto the assembled blocks."""
        if theta.degree not in self.degree_set:
            return Derivation(self.alg, {}, theta.degree)
        vals: dict = {}
        entries = self.model.gens.entries
        for x, v in theta.values.items():
            for t, c in v.items():
                if (theta.degree, entries[x].weight - self.alg.weight(t)) in self.blocks:
                    vals.setdefault(x, {})[t] = c
        return Derivation(self.alg, vals, theta.degree)

    def from_blocks(self, parts: dict[tuple[int, int], dict], degree: int) -> Derivation:
        total = Derivation(self.alg, {}, degree)
        for (n, w), vec in parts.items():
            total = total + self.derivation(n, w, vec)
        return total

    def bracket(self, a: Derivation, b: Derivation) -> Derivation:
        """Bracket in the truncated algebra."""
        return self.truncate(bracket_der(a, b))

    # ---- differential ---------------------------------------------------
    def differential_columns(self, n: int, w: int) -> list[dict]:
        """Images of the basis of block (n, w) in block (n+1, w)."""
        key = (n, w)
        if key in self._dmat:
            return self._dmat[key]
        cols = []
        target = None if self.model.is_bouquet else self._target_block(n + 1, w)
        for i in range(len(self.blocks[key])):
            if target is None:
                cols.append({})
                continue
            img = differential_der(self.model, self.basis_derivation(n, w, i))
            cols.append({target.index[(x, t)]: c for x, t, c in img.terms()})
        self._dmat[key] = cols
        return cols

    def d(self, theta: Derivation) -> Derivation:
        """Differential in the truncated algebra."""
        return self.truncate(differential_der(self.model, theta))

    # ---- cohomology -----------------------------------------------------
    def cohomology(self, n: int, w: int) -> CohomologyBlock:
        key = (n, w)
        if key not in self.blocks:
            raise TruncationError(f"block (degree {n}, weight {w}) is not assembled")
        hit = self._cohomology.get(key)
        if hit is None:
            hit = self._cohomology[key] = CohomologyBlock(self, n, w)
        return hit


class CohomologyBlock:
    """Kernel, image and a splitting ``block = H + B + R`` of one block.

    ``B`` is the image of the complement ``R`` of the previous block, so
    its basis comes with preimages; this makes the contraction ``G``
    (inverse of ``d`` on ``B``, zero on ``H`` and ``R``) immediate.
    """

    def __init__(self, cx: BigradedComplex, n: int, w: int):
        self.degree, self.weight = n, w
        dim = len(cx.blocks[(n, w)])
        self.dim_block = dim
        cols = cx.differential_columns(n, w)
        kernel = nullspace(cols)
        ze = Echelon()
        for v in kernel:
            ze.add(v)
        self.cycles = ze.reduced_basis()
        pivots = set(ze.pivots())
        self.complement = [j for j in range(dim) if j not in pivots]
        if cx.has_block(n - 1, w):
            prev = cx.cohomology(n - 1, w)
            prev_cols = cx.differential_columns(n - 1, w)
            self.boundary_preimages = [{j: Fraction(1)} for j in prev.complement]
            self.boundaries = [prev_cols[j] for j in prev.complement]
        else:
            self.boundary_preimages, self.boundaries = [], []
        be = Echelon()
        for b in self.boundaries:
            if not be.add(b):
                raise AssertionError("boundary basis is dependent")
        reps = []
        for z in self.cycles:
            if be.add(z):
                reps.append(z)
        self.representatives = reps
        self._solver = Echelon(track=True)
        for i, h in enumerate(reps):
            self._solver.add(h, ("h", i))
        for i, b in enumerate(self.boundaries):
            self._solver.add(b, ("b", i))
        for i, j in enumerate(self.complement):
            self._solver.add({j: Fraction(1)}, ("r", i))
        if self._solver.rank != dim:
            raise AssertionError(f"splitting of block ({n}, {w}) is not a basis")
        self._cx = cx

    @property
    def dimension(self) -> int:
        return len(self.representatives)

    def rep_derivations(self) -> list[Derivation]:
        return [self._cx.derivation(self.degree, self.weight, h) for h in self.representatives]

    def decompose(self, vec: dict) -> dict:
        return self._solver.express(vec)

    def project(self, vec: dict) -> dict:
        """Coordinates of the H-component, indexed by representative."""
        return {i: c for (kind, i), c in self.decompose(vec).items() if kind == "h"}

    def contract(self, vec: dict) -> dict:
        """``G(vec)`` as a vector in block (degree - 1, weight)."""
        out: dict = {}
        for (kind, i), c in self.decompose(vec).items():
            if kind == "b":
                add_into(out, self.boundary_preimages[i], c)
        return out

    def is_boundary(self, vec: dict) -> bool:
        return all(kind == "b" for kind, _ in self.decompose(vec))


def assemble_controlling(model: QuillenModel, degree_set: Iterable[int] = (0, 1, 2), weight_min: int | None = None) -> BigradedComplex:
    if weight_min is None:
        raise TruncationError("a weight bound is required: blocks of unbounded weight are infinite")
    if weight_min >= 0:
        raise TruncationError("weight_min must be negative")
    return BigradedComplex(model, degree_set, weight_min)


def cohomology(cx: BigradedComplex, degree: int, weight: int) -> CohomologyBlock:
    return cx.cohomology(degree, weight)


def natural_weight_min(model: QuillenModel, degree_set: Iterable[int] = (0, 1, 2)) -> int:
    """Most negative weight with a nonzero block in the given degrees.

    A degree-``n`` derivation of weight ``w`` sends a generator of weight
    ``s`` to words of length ``n + 1 - w`` and weight ``s + |w|``; since
    every letter has weight at least ``s_min >= 2`` the length is at most
    ``(s_max - n - 1) / (s_min - 1)``.
    """
    wts = [g.weight for g in model.gens.entries]
    lo, hi = min(wts), max(wts)
    if lo < 2:
        raise TruncationError("generators of weight below 2 give unbounded blocks")
    best = -1
    for n in degree_set:
        length = (hi - n - 1) // (lo - 1)
        if length >= 2:
            best = min(best, n + 1 - length)
    return best
