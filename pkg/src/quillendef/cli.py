"""Batch command-line front end.

Exit codes: 0 success, 2 a mathematical failure report (for example a
nonzero obstruction under ``--expect-zero``), 1 usage or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .complex import assemble_controlling, natural_weight_min
from .derivations import Derivation
from .gauge import degenerations, exp_action, mc_defect, orbit_normal_form
from .mc import fan_decomposition, is_nilpotent_mod, mc_generators, partition_of, primary_obstruction
from .miniversal import check_n_jacobi, master_identity, miniversal_ideal, transfer
from .quillen import build_model
from .specfile import load_derivation, load_spec, spec_digest


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    spec: str | None
    format: str
    weight_min: int | None
    degrees: tuple[int, ...]
    cutoff: int
    max_power: int
    out: str | None
    expect_zero: bool
    extra: dict


def q(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _poly_json(p) -> list:
    return [[p.ring.show_monomial(m), q(c)] for m, c in p.sorted_terms()]


def _der_json(d: Derivation) -> list:
    names = d.alg.gens.names
    return [[d.alg.show(t), names[x], q(c)] for x, t, c in d.terms()]


# ---- commands -----------------------------------------------------------


class Context:
    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        if cfg.spec is None:
            raise UsageError("--spec is required for this command")
        self.spec = load_spec(cfg.spec)
        self.model = build_model(self.spec)
        self.weight_min = cfg.weight_min if cfg.weight_min is not None else natural_weight_min(self.model, cfg.degrees)
        self._cx = None

    @property
    def cx(self):
        if self._cx is None:
            self._cx = assemble_controlling(self.model, self.cfg.degrees, self.weight_min)
        return self._cx

    def header(self) -> dict:
        return {
            "engine": {"name": "quillendef", "version": __version__},
            "spec": {"name": self.spec.name, "digest": spec_digest(self.spec)},
            "bounds": {"weight_min": self.weight_min, "degrees": list(self.cfg.degrees)},
            "command": self.cfg.command,
        }


def cmd_quillen(ctx: Context):
    m = ctx.model
    gens = [{"name": g.name, "degree": g.degree, "weight": g.weight} for g in m.gens.entries]
    raw = {m.gens.names[x]: sorted((m.alg.show(t), c) for t, c in v.items()) for x, v in m.differential.values.items()}
    diff = {x: [[t, q(c)] for t, c in terms] for x, terms in raw.items()}
    lines = [f"Quillen model of {ctx.spec.name}", "generators (name, degree, weight):"]
    lines += [f"  {g['name']}  {g['degree']}  {g['weight']}" for g in gens]
    lines.append("differential:" if diff else "differential: 0 (bouquet)")
    for x, terms in raw.items():
        lines.append(f"  d {x} = " + " + ".join(t if c == 1 else f"-{t}" if c == -1 else f"{c}*{t}" for t, c in terms))
    return {"generators": gens, "differential": diff}, lines, 0


def cmd_cohomology(ctx: Context):
    cx = ctx.cx
    degree = ctx.cfg.extra.get("degree")
    degrees = [degree] if degree is not None else list(ctx.cfg.degrees)
    weight = ctx.cfg.extra.get("weight")
    blocks, lines = [], []
    for n in degrees:
        if n not in cx.degree_set:
            raise UsageError(f"degree {n} is not in --degrees")
        total = 0
        for w in sorted(cx.weights(n), reverse=True):
            if weight is not None and w != weight:
                continue
            coh = cx.cohomology(n, w)
            if not coh.dim_block:
                continue
            reps = coh.rep_derivations()
            total += len(reps)
            blocks.append({"degree": n, "weight": w, "dim_block": coh.dim_block, "dim_cohomology": len(reps), "representatives": [_der_json(r) for r in reps]})
            lines.append(f"H^{n} weight {w}: block {coh.dim_block}, cohomology {len(reps)}")
            lines += [f"    {r.describe()}" for r in reps]
        lines.append(f"dim H^{n} = {total}")
    return {"blocks": blocks}, lines, 0


def cmd_mc_ideal(ctx: Context):
    ideal = mc_generators(ctx.cx)
    lines = [f"{len(ideal)} generators in {len(ideal.ring)} coordinates"]
    lines += [f"  {n} <-> {d}" for n, d in zip(ideal.ring.names, ideal.ring.descriptions)]
    gens = []
    for lab, g in zip(ideal.labels, ideal.generators):
        gens.append({"dual_of": lab, "polynomial": _poly_json(g)})
        lines.append(f"[{lab}]*:  {g}")
    counts = {",".join(map(str, k)): {"count": c, "rank": r} for k, (c, r) in ideal.generator_counts().items()}
    coords = [{"name": n, "derivation": d} for n, d in zip(ideal.ring.names, ideal.ring.descriptions)]
    return {"ideal": {"coordinates": coords, "generators": gens, "counts_by_content": counts}}, lines, 0


def cmd_nilpotent(ctx: Context):
    ideal = mc_generators(ctx.cx)
    monos = ctx.cfg.extra.get("monomial") or []
    if not monos:
        raise UsageError("give at least one --monomial")
    out, lines, code = [], [], 0
    for text in monos:
        try:
            power = is_nilpotent_mod(text, ideal, ctx.cfg.max_power)
        except KeyError as exc:
            raise UsageError(str(exc)) from None
        part = partition_of(text, ideal)
        out.append({"monomial": text, "power": power, "partition": list(part)})
        lines.append(f"{text}: " + (f"power {power}" if power else f"not nilpotent up to power {ctx.cfg.max_power}") + f"  partition {part}")
        if power is None:
            code = 2
    return {"certificates": out}, lines, code


def cmd_obstruction(ctx: Context):
    path = ctx.cfg.extra.get("derivation")
    if not path:
        raise UsageError("--derivation is required")
    theta = load_derivation(ctx.model.alg, path)
    res = primary_obstruction(ctx.cx, theta)
    nonzero = {w: sorted(v.items()) for w, v in res.class_coordinates.items() if v}
    classes = {str(w): {str(i): q(c) for i, c in v} for w, v in nonzero.items()}
    lines = ["NONZERO in H^2" if not res.is_zero else "ZERO in H^2"]
    for w, v in nonzero.items():
        lines.append(f"  weight {w}: " + ", ".join(f"h{i} {c}" for i, c in v))
    rep = {"zero": res.is_zero, "classes": classes}
    if res.bounding is not None:
        rep["bounding"] = _der_json(res.bounding)
        lines.append(f"  bounding element: {res.bounding.describe()}")
    code = 2 if (ctx.cfg.expect_zero and not res.is_zero) else 0
    return {"obstruction": rep}, lines, code


def cmd_fan(ctx: Context):
    ideal = mc_generators(ctx.cx)
    a_t, b_t = ctx.cfg.extra.get("a_target", "z"), ctx.cfg.extra.get("b_target", "y")
    a = [i for i, d in enumerate(ideal.ring.descriptions) if d.endswith(f"d {a_t}")]
    b = [i for i, d in enumerate(ideal.ring.descriptions) if d.endswith(f"d {b_t}")]
    rep = fan_decomposition(ideal, a, b, ctx.cfg.max_power)
    lines = [
        f"generators vanish on A: {rep.vanishes_on_a}",
        f"generators vanish on B: {rep.vanishes_on_b}",
        f"mixed products: {len(rep.powers)}",
    ]
    lines += [f"  {m}: {p}" for m, p in rep.powers.items()]
    lines.append("SUCCESS: reduced scheme is A v B" if rep.success else "FAILED")
    body = {"vanishes_on_a": rep.vanishes_on_a, "vanishes_on_b": rep.vanishes_on_b, "powers": rep.powers, "max_power": rep.max_power, "success": rep.success}
    return {"certificates": body}, lines, 0 if rep.success else 2


def cmd_segre(ctx: Context):
    from .segre import segre_relations

    r, k = _segre_shape(ctx.spec)
    rep = segre_relations(r, k)
    lines = [
        f"r = {r}, k = {k}, c = {rep.c}",
        f"minors: {len(rep.minors)}, in component span: {rep.minors_present}",
        f"component span equals minor span: {rep.span_equal}",
        f"[p,q] d z images independent: {rep.images_independent} (rank {rep.image_rank})",
    ]
    ok = rep.span_equal and rep.images_independent and rep.minors_present == len(rep.minors)
    body = {
        "r": r, "k": k, "c": rep.c,
        "minors": [_poly_json(m) for m in rep.minors],
        "component": [_poly_json(g) for g in rep.component],
        "span_equal": rep.span_equal, "images_independent": rep.images_independent,
    }
    return {"ideal": body}, lines, 0 if ok else 2


def _segre_shape(spec) -> tuple[int, int]:
    degs = [d for _, d in spec.classes]
    k = min(degs)
    r = degs.count(k)
    if spec.products or sorted(degs) != sorted([k] * r + [3 * k - 1, 6 * k - 3]):
        raise UsageError("segre needs a bouquet of r S^k, one S^(3k-1) and one S^(6k-3)")
    names = [n for n, _ in spec.classes]
    if names != [f"x{i}" for i in range(1, r + 1)] + ["y", "z"]:
        raise UsageError("segre expects classes named x1..xr, y, z")
    return r, k


def cmd_gauge(ctx: Context):
    p_path, b_path = ctx.cfg.extra.get("derivation"), ctx.cfg.extra.get("action")
    if not p_path or not b_path:
        raise UsageError("--derivation and --action are required")
    alg = ctx.model.alg
    p = load_derivation(alg, p_path)
    b = load_derivation(alg, b_path) * Fraction(ctx.cfg.extra.get("t") or 1)
    wmin = ctx.weight_min
    before = mc_defect(ctx.model, p, wmin)
    after_p = exp_action(ctx.model, b, p, wmin)
    after = mc_defect(ctx.model, after_p, wmin)
    lines = [f"input on-shell: {not before}", f"result: {after_p.describe()}", f"result on-shell: {not after}"]
    code = 2 if (not before and after) else 0
    return {"orbits": {"input_on_shell": not before, "result": _der_json(after_p), "result_on_shell": not after}}, lines, code


def cmd_orbit(cfg: RunConfig):
    family = cfg.extra.get("family")
    if not family:
        raise UsageError("--family is required")
    try:
        arrows = degenerations(family)
    except NotImplementedError as exc:
        raise UsageError(str(exc)) from None
    text = cfg.extra.get("point")
    body: dict = {"family": family, "arrows": arrows}
    lines = [f"family {family}"]
    if text:
        try:
            point = [Fraction(v) for v in text.split(",")]
        except ValueError:
            raise UsageError(f"cannot parse point {text!r}") from None
        if len(point) != 4:
            raise UsageError("a point has four coordinates")
        label = orbit_normal_form(family, point)
        inv = None if label.invariant is None else q(label.invariant)
        body["label"] = {"name": label.name, "rank": label.rank, "invariant": inv}
        lines.append(f"normal form {label.name}" + (f", invariant {label.invariant}" if inv else ""))
    lines += [f"  {a} -> {', '.join(bs) or '.'}" for a, bs in arrows.items()]
    return {"orbits": body}, lines, 0


def cmd_miniversal(ctx: Context):
    br = transfer(ctx.cx, cutoff=ctx.cfg.cutoff)
    td = br.transfer
    dims = {n: len(td.indices(n)) for n in td.window}
    ideal = miniversal_ideal(br)
    master = master_identity(br)
    jac = {n: check_n_jacobi(br, n).holds for n in range(3, min(4, br.cutoff) + 1)}
    lines = [f"dim H^{n} = {d}" for n, d in dims.items()]
    lines.append("nonzero brackets by arity: " + ", ".join(f"{n}: {c}" for n, c in br.nonzero_count().items()))
    lines.append(f"{len(ideal)} generators in {len(ideal.ring)} coordinates")
    lines += [f"  {n} <-> {d}" for n, d in zip(ideal.ring.names, ideal.ring.descriptions)]
    lines += [f"[{lab}]*:  {g}" for lab, g in zip(ideal.labels, ideal.generators)]
    lines.append(f"master identity holds to order {br.cutoff}: {master.holds}")
    lines += [f"{n}-Jacobi residuals vanish: {ok}" for n, ok in jac.items()]
    body = {
        "cohomology_dims": {str(n): d for n, d in dims.items()},
        "bracket_counts": {str(n): c for n, c in br.nonzero_count().items()},
        "coordinates": [{"name": n, "derivation": d} for n, d in zip(ideal.ring.names, ideal.ring.descriptions)],
        "generators": [{"dual_of": lab, "polynomial": _poly_json(g)} for lab, g in zip(ideal.labels, ideal.generators)],
        "master_identity": master.holds,
        "jacobi": {str(n): ok for n, ok in jac.items()},
    }
    bounds = {"cutoff": br.cutoff}
    ok = master.holds and all(jac.values())
    return {"ideal": body, "bounds_extra": bounds}, lines, 0 if ok else 2


COMMANDS = {
    "quillen": cmd_quillen,
    "cohomology": cmd_cohomology,
    "mc-ideal": cmd_mc_ideal,
    "nilpotent": cmd_nilpotent,
    "obstruction": cmd_obstruction,
    "fan": cmd_fan,
    "segre": cmd_segre,
    "gauge": cmd_gauge,
    "orbit": None,
    "miniversal": cmd_miniversal,
}


def run(cfg: RunConfig) -> tuple[dict, list[str], int]:
    if cfg.command == "orbit":
        body, lines, code = cmd_orbit(cfg)
        header = {"engine": {"name": "quillendef", "version": __version__}, "command": "orbit"}
        return {**header, **body}, lines, code
    ctx = Context(cfg)
    body, lines, code = COMMANDS[cfg.command](ctx)
    report = ctx.header()
    extra = body.pop("bounds_extra", None)
    if extra:
        report["bounds"].update(extra)
    report.update(body)
    return report, lines, code


def render(report: dict, lines: list[str], fmt: str) -> str:
    if fmt == "machine":
        return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    return "\n".join(lines) + "\n"


def _degrees(text: str) -> tuple[int, ...]:
    try:
        return tuple(sorted({int(v) for v in text.split(",") if v.strip()}))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad degree list {text!r}") from None


def _weight(text: str):
    if text == "auto":
        return None
    try:
        w = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad weight bound {text!r}") from None
    if w >= 0:
        raise argparse.ArgumentTypeError("--weight-min must be negative")
    return w


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", help="spec file, or the name of a bundled spec")
    common.add_argument("--format", choices=["table", "machine"], default="table")
    common.add_argument("--weight-min", type=_weight, default=None, help="negative weight bound, or 'auto' (default): the most negative nonzero weight")
    common.add_argument("--degrees", type=_degrees, default=(0, 1, 2), help="comma-separated derivation degrees (default 0,1,2)")
    common.add_argument("--cutoff", type=int, default=4, help="highest transferred bracket arity (default 4)")
    common.add_argument("--max-power", type=int, default=4, help="nilpotency search bound (default 4)")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--expect-zero", action="store_true", help="exit 2 when an obstruction is nonzero")
    parser = _Parser(prog="quillendef", description="Deformations of rational homotopy types with fixed cohomology.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("quillen", parents=[common], help="generators and differential of the Quillen model")
    p = sub.add_parser("cohomology", parents=[common], help="cohomology of the controlling algebra")
    p.add_argument("--degree", type=int)
    p.add_argument("--weight", type=int)
    sub.add_parser("mc-ideal", parents=[common], help="generators of the Maurer-Cartan ideal on L^1")
    p = sub.add_parser("nilpotent", parents=[common], help="nilpotency of monomials modulo the MC ideal")
    p.add_argument("--monomial", action="append")
    p = sub.add_parser("obstruction", parents=[common], help="primary obstruction of a degree-one derivation")
    p.add_argument("--derivation")
    p = sub.add_parser("fan", parents=[common], help="verify the A v B decomposition")
    p.add_argument("--a-target", default="z")
    p.add_argument("--b-target", default="y")
    sub.add_parser("segre", parents=[common], help="2x2 minor relations of the Segre family")
    p = sub.add_parser("gauge", parents=[common], help="exponential action of a degree-zero derivation")
    p.add_argument("--derivation", help="the Maurer-Cartan element")
    p.add_argument("--action", help="the degree-zero derivation b")
    p.add_argument("--t", help="scalar multiple of b (default 1)")
    p = sub.add_parser("orbit", parents=[common], help="normal forms of the orbit families")
    p.add_argument("--family", choices=["quadratic-form", "bilinear-r2"])
    p.add_argument("--point", help="four comma-separated coordinates")
    sub.add_parser("miniversal", parents=[common], help="transferred brackets and the miniversal ideal")
    return parser


_OPTIONAL = ("degree", "weight", "monomial", "derivation", "a_target", "b_target", "action", "t", "family", "point")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        cfg = RunConfig(
            ns.command, ns.spec, ns.format, ns.weight_min, ns.degrees, ns.cutoff, ns.max_power, ns.out, ns.expect_zero,
            {k: getattr(ns, k) for k in _OPTIONAL if hasattr(ns, k)},
        )
        report, lines, code = run(cfg)
        text = render(report, lines, cfg.format)
        if cfg.out:
            Path(cfg.out).write_text(text)
        else:
            sys.stdout.write(text)
        return code
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
