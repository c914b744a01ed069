"""Hypothesis strategies for elements of assembled controlling algebras."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from quillendef.derivations import Derivation

small = st.integers(-2, 2).map(Fraction)


@st.composite
def elements(draw, cx, degree, weights=None, density=0.5):
    """A random element of L^degree, summed over the assembled weights."""
    out = Derivation(cx.alg, {}, degree)
    for w in cx.weights(degree):
        if weights is not None and w not in weights:
            continue
        dim = cx.dimension(degree, w)
        if not dim:
            continue
        vec = {}
        for i in range(dim):
            if draw(st.floats(0, 1)) < density:
                vec[i] = draw(small)
        if any(vec.values()):
            out = out + cx.derivation(degree, w, vec)
    return out
