"""Gauge action of degree-zero derivations on Maurer-Cartan elements.

Families in a formal variable ``t`` are dicts ``{power: Derivation}``.
All series are finite because every bracket with a negative-weight
element lowers the weight, and components below ``weight_min`` are
dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .derivations import Derivation, bracket_der, differential_der
from .quillen import QuillenModel

TPoly = dict  # power of t -> Derivation


class NilpotenceError(ValueError):
    pass


def _trunc(theta: Derivation, weight_min: int | None) -> Derivation:
    return theta if weight_min is None else theta.truncate(weight_min)


def mc_defect(model: QuillenModel, p: Derivation, weight_min: int | None = None) -> Derivation:
    """``dp + 1/2 [p, p]``."""
    return _trunc(differential_der(model, p) + bracket_der(p, p) * Fraction(1, 2), weight_min)


@dataclass
class McElement:
    p: Derivation
    on_shell: bool = False

    @classmethod
    def checked(cls, model: QuillenModel, p: Derivation, weight_min: int | None = None) -> McElement:
        return cls(p, not mc_defect(model, p, weight_min))


def _require_negative(b: Derivation, max_terms: int | None) -> None:
    if b and any(w >= 0 for w in b.weights()) and max_terms is None:
        raise NilpotenceError("weight-zero or positive component: nilpotence is not guaranteed; pass max_terms")


def exp_action(
    model: QuillenModel,
    b: Derivation,
    p: Derivation,
    weight_min: int | None = None,
    max_terms: int | None = None,
) -> Derivation:
    """``sum_n (ad b)^n (d + p) / n! - d``."""
    _require_negative(b, max_terms)
    if b.degree not in (None, 0):
        raise ValueError("the gauge parameter must have degree zero")
    total = _trunc(p, weight_min)
    cur = model.differential + total
    limit = max_terms if max_terms is not None else 10_000
    for n in range(1, limit + 1):
        cur = _trunc(bracket_der(b, cur), weight_min) * Fraction(1, n)
        if not cur:
            return total
        total = total + cur
    if max_terms is None:
        raise NilpotenceError("exponential series did not terminate; supply weight_min")
    return total


# ---- polynomial families in t ------------------------------------------


def tpoly_clean(f: TPoly) -> TPoly:
    return {k: v for k, v in sorted(f.items()) if v}


def tpoly_add(f: TPoly, g: TPoly, coeff=1) -> TPoly:
    out = dict(f)
    for k, v in g.items():
        out[k] = out[k] + v * coeff if k in out else v * coeff
    return tpoly_clean(out)


def tpoly_bracket(f: TPoly, g: TPoly, weight_min: int | None, max_power: int | None = None) -> TPoly:
    out: TPoly = {}
    for i, a in f.items():
        for j, b in g.items():
            if max_power is not None and i + j > max_power:
                continue
            c = _trunc(bracket_der(a, b), weight_min)
            if c:
                out[i + j] = out[i + j] + c if i + j in out else c
    return tpoly_clean(out)


def tpoly_derivative(f: TPoly) -> TPoly:
    return tpoly_clean({k - 1: v * k for k, v in f.items() if k})


def tpoly_eval(f: TPoly, t) -> Derivation:
    t = Fraction(t)
    items = list(f.values())
    if not items:
        raise ValueError("cannot evaluate an empty family without a derivation table")
    out = items[0] * 0
    for k, v in f.items():
        out = out + v * t**k
    return out


def _exp_ad_t(theta: Derivation, k: int, x: TPoly, weight_min: int | None) -> TPoly:
    """``exp(ad(t^k theta)) x`` for a family ``x``."""
    total = dict(x)
    cur = x
    for m in range(1, 10_000):
        cur = tpoly_bracket({k: theta}, cur, weight_min)
        cur = {p: v * Fraction(1, m) for p, v in cur.items()}
        if not cur:
            return tpoly_clean(total)
        total = tpoly_add(total, cur)
    raise NilpotenceError("adjoint exponential did not terminate")


class FlowPath(NamedTuple):
    eta: TPoly
    zeta: TPoly
    factors: tuple[Derivation, ...]  # theta_1, theta_2, ... with mu(t) = ... exp(t^2 theta_2) exp(t theta_1) mu(0)


def flow_solve(model: QuillenModel, p0: Derivation, zeta: TPoly, weight_min: int) -> FlowPath:
    """Integrate ``d eta/dt + d zeta + [eta, zeta] = 0`` with ``eta(0) = p0``.

    The solution is written as a finite product of exponentials
    ``exp(t^N theta_N) ... exp(t theta_1)`` acting on ``d + p0``.  The
    factor ``exp(t^k theta)`` has logarithmic derivative ``k t^(k-1) theta``
    and conjugation by later factors only adds higher powers of ``t``, so
    ``theta_n`` is fixed by the ``t^(n-1)`` coefficient of ``zeta``.
    """
    zeta = tpoly_clean({k: _trunc(v, weight_min) for k, v in zeta.items()})
    for v in zeta.values():
        if v.degree != 0:
            raise ValueError("zeta must consist of degree-zero derivations")
        _require_negative(v, None)
    top = max(zeta, default=-1)
    n_max = (top + 1) * max(1, -weight_min) + 1
    thetas: list[Derivation] = []
    # xi: logarithmic derivative of the product built so far
    xi: TPoly = {}
    zero0 = Derivation(model.alg, {}, 0)
    for n in range(1, n_max + 1):
        target = zeta.get(n - 1)
        have = xi.get(n - 1)
        rest = (target if target is not None else zero0) - (have if have is not None else zero0)
        theta = _trunc(rest * Fraction(1, n), weight_min)
        thetas.append(theta)
        if theta:
            xi = _exp_ad_t(theta, n, xi, weight_min)
            xi = tpoly_add(xi, {n - 1: theta * n})
    while thetas and not thetas[-1]:
        thetas.pop()
    mu: TPoly = tpoly_clean({0: model.differential + _trunc(p0, weight_min)})
    for k, theta in enumerate(thetas, start=1):
        if theta:
            mu = _exp_ad_t(theta, k, mu, weight_min)
    eta = tpoly_add(mu, {0: model.differential}, -1)
    return FlowPath(eta, zeta, tuple(thetas))


def flow_series(model: QuillenModel, p0: Derivation, zeta: TPoly, weight_min: int, max_power: int = 64) -> TPoly:
    """Direct power-series solution of ``d mu/dt = [zeta, mu]``.

    Independent of the product construction; used to cross-check it.
    """
    mu = {0: model.differential + _trunc(p0, weight_min)}
    top = max(zeta, default=0)
    for n in range(max_power):
        acc = None
        for i, z in zeta.items():
            if n - i in mu:
                c = _trunc(bracket_der(z, mu[n - i]), weight_min)
                acc = c if acc is None else acc + c
        if acc:
            mu[n + 1] = acc * Fraction(1, n + 1)
        elif all(m not in mu for m in range(n + 1 - top, n + 2)):
            break
    else:
        raise NilpotenceError("flow series did not terminate")
    return tpoly_add(tpoly_clean(mu), {0: model.differential}, -1)


def flow_residual(model: QuillenModel, path: FlowPath, weight_min: int) -> TPoly:
    """``d eta/dt + d zeta + [eta, zeta]`` coefficient-wise."""
    lhs = tpoly_derivative(path.eta)
    lhs = tpoly_add(lhs, {k: _trunc(differential_der(model, z), weight_min) for k, z in path.zeta.items()})
    lhs = tpoly_add(lhs, tpoly_bracket(path.eta, path.zeta, weight_min))
    return lhs


class DefectFlow(NamedTuple):
    u: TPoly
    residual: TPoly

    @property
    def holds(self) -> bool:
        return not self.residual

    @property
    def vanishes(self) -> bool:
        return not self.u


def mc_defect_flow(model: QuillenModel, path: FlowPath, weight_min: int) -> DefectFlow:
    """Defect ``u = d eta + 1/2 [eta, eta]`` and the residual of ``du/dt = -[u, zeta]``.

    Along a flow ``d mu/dt = [zeta, mu]`` the defect equals ``1/2 [mu, mu]``
    and evolves by ``du/dt = [zeta, u] = -[u, zeta]``; so ``u(0) = 0``
    forces ``u = 0`` for all ``t``.
    """
    eta = path.eta
    u = {k: _trunc(differential_der(model, v), weight_min) for k, v in eta.items()}
    u = tpoly_add(tpoly_clean(u), {k: v * Fraction(1, 2) for k, v in tpoly_bracket(eta, eta, weight_min).items()})
    residual = tpoly_add(tpoly_derivative(u), tpoly_bracket(u, path.zeta, weight_min))
    return DefectFlow(u, residual)


def literal_defect_residual(u: TPoly, zeta: TPoly, weight_min: int) -> TPoly:
    """Residual of ``du/dt = -[zeta, u]`` read with the bracket on the left."""
    return tpoly_add(tpoly_derivative(u), tpoly_bracket(zeta, u, weight_min))


def path_automorphism(path: FlowPath, f: TPoly, weight_min: int) -> TPoly:
    """``u(t) f`` where ``u(t) = ... exp(ad t^2 theta_2) exp(ad t theta_1)``."""
    out = dict(f)
    for k, theta in enumerate(path.factors, start=1):
        if theta:
            out = _exp_ad_t(theta, k, out, weight_min)
    return out


def compose_zeta(first: FlowPath, second: FlowPath, weight_min: int) -> TPoly:
    """``zeta_2 + u_2 zeta_1``: the generator of ``u_2(t) u_1(t)``."""
    return tpoly_add(second.zeta, path_automorphism(second, first.zeta, weight_min))


# ---- orbit normal forms -------------------------------------------------


def squarefree_class(q: Fraction) -> int:
    """Representative of ``q`` in Q*/(Q*)^2 as a squarefree integer."""
    q = Fraction(q)
    if not q:
        raise ValueError("zero has no square class")
    n = q.numerator * q.denominator
    sign = -1 if n < 0 else 1
    n = abs(n)
    out, p = 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
        if n % p == 0:
            out *= p
            n //= p
        p += 1
    return sign * out * n


class OrbitLabel(NamedTuple):
    family: str
    name: str
    rank: int
    invariant: object  # squarefree class, continuous modulus, or None


QUADRATIC_ARROWS = {"rank 2": ["rank 1"], "rank 1": ["rank 0"], "rank 0": []}
BILINEAR_ARROWS = {
    "(x1+dx2,1)": ["(x1+dx2,0)", "(x2,0)", "(x2,1)"],
    "(x1+dx2,0)": ["(x2,0)"],
    "(x2,1)": ["(x2,0)", "(0,1)"],
    "(0,1)": ["(0,0)"],
    "(x2,0)": ["(0,0)"],
    "(0,0)": [],
}


def _det2(s) -> Fraction:
    return s[0][0] * s[1][1] - s[0][1] * s[1][0]


def _rank2(s) -> int:
    if _det2(s):
        return 2
    return 1 if any(v for row in s for v in row) else 0


def quadratic_form_of(point) -> list[list[Fraction]]:
    """Binary quadratic form of a point ``(m11, m12, m21, m22)`` of the product family.

    ``m_ij`` is the coefficient of ``[x_i,[x1,x2]] d (x_j x5)``.  The gauge
    direction ``m = identity`` is killed by forming ``sym(m J)`` with
    ``J = [[0, 1], [-1, 0]]``.
    """
    m11, m12, m21, m22 = (Fraction(v) for v in point)
    off = (m11 - m22) / 2
    return [[-m12, off], [off, m21]]


def orbit_normal_form(family: str, point) -> OrbitLabel:
    if family == "quadratic-form":
        s = quadratic_form_of(point)
        r = _rank2(s)
        inv = squarefree_class(-_det2(s)) if r == 2 else None
        return OrbitLabel(family, f"rank {r}", r, inv)
    if family == "bilinear-r2":
        a11, a12, a21, a22 = (Fraction(v) for v in point)
        off = (a12 + a21) / 2
        s = [[a11, off], [off, a22]]
        v = (a12 - a21) / 2
        r = _rank2(s)
        anti = 1 if v else 0
        if r == 2:
            inv = _det2(s) / v**2 if v else squarefree_class(_det2(s))
            return OrbitLabel(family, f"(x1+dx2,{anti})", 2, inv)
        if r == 1:
            return OrbitLabel(family, f"(x2,{anti})", 1, None)
        return OrbitLabel(family, f"(0,{anti})", 0, None)
    raise NotImplementedError(f"no normal forms for family {family!r}")


def degenerations(family: str) -> dict[str, list[str]]:
    """Arrows ``a -> b`` meaning ``b`` lies in the closure of the orbit ``a``."""
    if family == "quadratic-form":
        return QUADRATIC_ARROWS
    if family == "bilinear-r2":
        return BILINEAR_ARROWS
    raise NotImplementedError(f"no normal forms for family {family!r}")
