"""Independent oracles: free associative algebra embedding and brute-force ranks.

Nothing here touches the Lie basis rewriting; a bracket tree is sent to
the tensor algebra by iterated graded commutators.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product


def assoc_of_tree(expr, degree_of) -> dict:
    """Image of a nested-pair tree of letters in the free associative algebra.

    Returns (word tuple -> Fraction, degree).
    """
    if not isinstance(expr, tuple):
        return {(expr,): Fraction(1)}, degree_of(expr)
    a, da = assoc_of_tree(expr[0], degree_of)
    b, db = assoc_of_tree(expr[1], degree_of)
    sign = -1 if (da % 2 and db % 2) else 1
    out: dict = {}
    for u, cu in a.items():
        for v, cv in b.items():
            for w, c in ((u + v, cu * cv), (v + u, -sign * cu * cv)):
                s = out.get(w, 0) + c
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
    return out, da + db


def assoc_of_element(elem) -> dict:
    alg = elem.alg
    out: dict = {}
    for t, c in elem.terms.items():
        img, _ = assoc_of_tree(t, lambda i: alg.gens.entries[i].degree)
        for w, v in img.items():
            s = out.get(w, 0) + c * v
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return out


def all_trees(letters, n):
    """Every binary bracketing of every word of length n."""
    if n == 1:
        for x in letters:
            yield x
        return
    for k in range(1, n):
        for left in all_trees(letters, k):
            for right in all_trees(letters, n - k):
                yield (left, right)


def brute_force_dimension(degrees, content) -> int:
    """Rank of the span of all commutator expansions with a given content."""
    from quillendef.linalg import Echelon

    r = len(degrees)
    n = sum(content)
    e = Echelon()
    for w in product(range(r), repeat=n):
        if tuple(w.count(i) for i in range(r)) != tuple(content):
            continue
        for t in _bracketings(w):
            e.add(assoc_of_tree(t, lambda i: degrees[i])[0])
    return e.rank


def _bracketings(w):
    if len(w) == 1:
        yield w[0]
        return
    for k in range(1, len(w)):
        for left in _bracketings(w[:k]):
            for right in _bracketings(w[k:]):
                yield (left, right)


def pbw_dimensions(degrees, max_length: int) -> dict:
    """Dimensions of the free graded Lie algebra by content, from PBW.

    The tensor algebra and the graded-symmetric algebra on L have equal
    Hilbert series; peel off one content at a time.  Shares nothing with
    the Moebius formula in the package.
    """
    from math import comb, factorial

    r = len(degrees)
    contents = [c for n in range(1, max_length + 1) for c in _contents(r, n)]

    def tensor_dim(c):
        out = factorial(sum(c))
        for x in c:
            out //= factorial(x)
        return out

    series = {(0,) * r: 1}
    dims = {}
    for c in contents:
        dim = tensor_dim(c) - series.get(c, 0)
        dims[c] = dim
        if not dim:
            continue
        odd = sum(x * d for x, d in zip(c, degrees)) % 2
        factor = {}
        k = 1
        while sum(c) * k <= max_length:
            factor[tuple(x * k for x in c)] = comb(dim, k) if odd else comb(dim + k - 1, k)
            k += 1
        new = dict(series)
        for a, ca in series.items():
            for b, cb in factor.items():
                key = tuple(x + y for x, y in zip(a, b))
                if sum(key) <= max_length:
                    new[key] = new.get(key, 0) + ca * cb
        series = new
    return dims


def _contents(r, n):
    if r == 1:
        yield (n,)
        return
    for i in range(n + 1):
        for rest in _contents(r - 1, n - i):
            yield (i,) + rest
