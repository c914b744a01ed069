"""Text formats for cohomology specs and derivations.

A spec file::

    name: wedge_r2_k3
    classes:
      x1 3
      x2 3
    products:
      x1 x2 -> x12            # or: 2*a - 1/2*b

A derivation file has one term per line, ``coeff * [word] d name``,
where ``d name`` is the dual of the named class.
"""

from __future__ import annotations

import hashlib
import re
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .derivations import Derivation
from .lie import FreeLieAlgebra, LieInputError
from .quillen import CohomologySpec, ModelError, validate_spec


class SpecParseError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line, self.column = line, column


_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?([A-Za-z_][\w']*)\s*")
_COEFF = re.compile(r"\s*([+-]?\s*\d+(?:/\d+)?)\s*\*?\s*")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def parse_combination(text: str, line: int, offset: int) -> dict[str, Fraction]:
    """``2*a - 1/2*b + c`` as {name: coeff}."""
    out: dict[str, Fraction] = {}
    pos = 0
    first = True
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or (not first and not m.group(1)):
            raise SpecParseError(line, offset + pos + 1, f"cannot parse linear combination near {text[pos:].strip()!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        name = m.group(3)
        out[name] = out.get(name, 0) + sign * coeff
        pos = m.end()
        first = False
    if not out:
        raise SpecParseError(line, offset + 1, "empty product value")
    return {k: v for k, v in out.items() if v}


def parse_spec(text: str) -> CohomologySpec:
    name = None
    classes: list[tuple[str, int]] = []
    products = []
    section = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        m = re.fullmatch(r"(name|classes|products)\s*:\s*(.*)", body)
        if m:
            key, rest = m.groups()
            if key == "name":
                if not rest:
                    raise SpecParseError(lineno, indent + 1, "name is empty")
                name = rest.strip()
                section = None
            else:
                if rest:
                    raise SpecParseError(lineno, line.index(rest) + 1, f"unexpected text after {key}:")
                section = key
            continue
        if section == "classes":
            parts = body.split()
            if len(parts) != 2 or not re.fullmatch(r"-?\d+", parts[1]):
                raise SpecParseError(lineno, indent + 1, "expected 'name degree'")
            classes.append((parts[0], int(parts[1])))
        elif section == "products":
            if "->" not in body:
                raise SpecParseError(lineno, indent + 1, "expected 'left right -> value'")
            lhs, rhs = body.split("->", 1)
            operands = lhs.split()
            if len(operands) != 2:
                raise SpecParseError(lineno, indent + 1, "a product has exactly two factors")
            value = parse_combination(rhs, lineno, line.index("->") + 2)
            products.append((operands[0], operands[1], value))
        else:
            raise SpecParseError(lineno, indent + 1, "content outside any section")
    if name is None:
        raise SpecParseError(1, 1, "missing 'name:'")
    if not classes:
        raise SpecParseError(1, 1, "no classes listed")
    return CohomologySpec.build(name, classes, products)


def format_spec(spec: CohomologySpec) -> str:
    lines = [f"name: {spec.name}", "classes:"]
    lines += [f"  {n} {d}" for n, d in spec.classes]
    if spec.products:
        lines.append("products:")
        for left, right, value in spec.products:
            terms = " + ".join(f"{c}*{n}" if c != 1 else n for n, c in value)
            lines.append(f"  {left} {right} -> {terms.replace('+ -', '- ')}")
    return "\n".join(lines) + "\n"


def spec_digest(spec: CohomologySpec) -> str:
    """SHA-256 of the product table completed by graded commutativity."""
    table = spec.table()
    canon = [f"{n}:{d}" for n, d in spec.classes]
    for (a, b), val in sorted(table.items()):
        canon.append(f"{a}*{b}=" + ",".join(f"{k}:{v}" for k, v in sorted(val.items())))
    return hashlib.sha256("\n".join(canon).encode()).hexdigest()


def bundled_names() -> list[str]:
    return sorted(p.name[: -len(".spec")] for p in resources.files("quillendef.data").iterdir() if p.name.endswith(".spec"))


def resolve_path(path: str, suffix: str) -> Path:
    """An existing file, else a bundled data file of the same stem."""
    p = Path(path)
    if p.exists():
        return p
    stem = p.name[: -len(suffix)] if p.name.endswith(suffix) else p.name
    bundled = resources.files("quillendef.data") / f"{stem}{suffix}"
    if bundled.is_file():
        return Path(str(bundled))
    raise FileNotFoundError(f"no such file {path!r} and no bundled {stem}{suffix}")


def load_spec(path: str) -> CohomologySpec:
    text = resolve_path(path, ".spec").read_text()
    spec = parse_spec(text)
    problems = validate_spec(spec)
    if problems:
        raise ModelError("; ".join(problems))
    return spec


def parse_derivation(alg: FreeLieAlgebra, text: str) -> Derivation:
    terms = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw).strip()
        if not line:
            continue
        m = re.fullmatch(r"(.*?)\s+d\s+([A-Za-z_][\w']*)", line)
        if not m:
            raise SpecParseError(lineno, 1, "expected 'coeff * [word] d name'")
        lhs, target = m.groups()
        coeff = Fraction(1)
        cm = _COEFF.match(lhs)
        if cm and cm.end() < len(lhs):
            coeff = Fraction(cm.group(1).replace(" ", ""))
            lhs = lhs[cm.end():]
        elif lhs.startswith("-"):
            coeff, lhs = Fraction(-1), lhs[1:].strip()
        try:
            expr = alg.normalize(lhs.strip())
            alg.gens.index(target)
        except (LieInputError, KeyError, ValueError) as exc:
            raise SpecParseError(lineno, 1, str(exc)) from None
        terms.append((coeff, expr, target))
    vals: dict = {}
    for coeff, expr, target in terms:
        x = alg.gens.index(target)
        acc = vals.setdefault(x, {})
        for t, c in expr.terms.items():
            acc[t] = acc.get(t, 0) + coeff * c
    return Derivation(alg, vals)


def load_derivation(alg: FreeLieAlgebra, path: str) -> Derivation:
    return parse_derivation(alg, resolve_path(path, ".der").read_text())
