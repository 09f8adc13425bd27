"""Ring-definition files, element literals, skew polynomials and identities.

Ring file grammar (line oriented, '#' starts a comment)::

    ring.kind = zn | matrix | triangular | truncpoly | structure | product
    ring.params = 4                 # integers, per kind
    ring.factors = zn(2) * matrix(2,2)   # product only
    ring.labels = a, b              # optional generator names
    [structure]
    g1*g2 = 2g1 + g3
    [derivation]
    zero | inner = E12 | D(g1) = g2

Element literals are sums of ``<int><generator>`` terms; generators are
``g1 .. gk`` or identifier labels.  Polynomials are written
``x^2*(g2) + x^1*(2g1) + (g1)`` with coefficients on the right.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .derivation import Derivation, inner_derivation, make_derivation, zero_derivation
from .errors import ParseError
from .finring import (
    Element,
    FiniteRing,
    _matrix_label,
    build_matrix_ring,
    build_product,
    build_structure,
    build_triangular_ring,
    build_truncated_poly,
    build_zn,
)
from .identities import MultilinearIdentity, make_identity
from .skewpoly import SkewPoly, _normalize

MAX_GENERATORS = 64
KINDS = ("zn", "matrix", "triangular", "truncpoly", "structure", "product")
_PARAM_COUNT = {"zn": 1, "matrix": 2, "triangular": 2, "truncpoly": 2}

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT = re.compile(r"\d+")
_GEN = re.compile(r"g(\d+)$")

Literal = tuple[tuple[int, int], ...]


def _to_int(text: str, line: int, col: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"integer {text[:20]!r} is out of range", line, col) from None


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos] in " \t":
        pos += 1
    return pos


class GeneratorNames:
    """Resolves ``g<i>`` and identifier labels to 0-based generator indices."""

    def __init__(self, k: int, labels=()):
        self.k = k
        counts: dict[str, int] = {}
        for lab in labels:
            counts[lab] = counts.get(lab, 0) + 1
        self.labels = {lab: i for i, lab in enumerate(labels)
                       if counts[lab] == 1 and _IDENT.fullmatch(lab) and not _GEN.match(lab)}

    def resolve(self, name: str) -> int | None:
        m = _GEN.match(name)
        if m:
            idx = int(m.group(1)) if len(m.group(1)) < 8 else 0
            return idx - 1 if 1 <= idx <= self.k else None
        return self.labels.get(name)


def parse_element_literal(text: str, names: GeneratorNames, line: int = 0, col: int = 1) -> Literal:
    """Parse ``2g1 + g3 - E12`` into ((index, coefficient), ...) summed per generator."""
    pos = _skip_ws(text, 0)
    if pos == len(text):
        raise ParseError("empty element literal", line, col + pos)
    acc: dict[int, int] = {}
    first = True
    while True:
        pos = _skip_ws(text, pos)
        sign = 1
        if pos < len(text) and text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos = _skip_ws(text, pos + 1)
        elif not first:
            raise ParseError(f"expected '+' or '-' at {text[pos:pos+8]!r}", line, col + pos)
        start = pos
        coeff = None
        m = _INT.match(text, pos)
        if m:
            coeff = _to_int(m.group(), line, col + pos)
            pos = _skip_ws(text, m.end())
            if pos < len(text) and text[pos] == "*":
                pos = _skip_ws(text, pos + 1)
                if not _IDENT.match(text, pos):
                    raise ParseError("expected a generator after '*'", line, col + pos)
        m = _IDENT.match(text, pos)
        if m:
            idx = names.resolve(m.group())
            if idx is None:
                raise ParseError(f"unknown generator {m.group()[:20]!r}", line, col + pos)
            acc[idx] = acc.get(idx, 0) + sign * (1 if coeff is None else coeff)
            pos = m.end()
        elif coeff is None:
            raise ParseError(f"expected a term at {text[start:start+8]!r}", line, col + start)
        elif coeff != 0:
            raise ParseError("a bare integer term must be 0", line, col + start)
        first = False
        pos = _skip_ws(text, pos)
        if pos == len(text):
            break
    return tuple(sorted(acc.items()))


def literal_to_element(R: FiniteRing, lit: Literal) -> Element:
    vec = [0] * R.k
    for i, c in lit:
        vec[i] += c
    return R.element(vec)


def format_element(R: FiniteRing, a: Element) -> str:
    """Canonical literal: ``2g1 + g3``, or ``0``."""
    parts = [f"g{i+1}" if c == 1 else f"{c}g{i+1}" for i, c in enumerate(a) if c]
    return " + ".join(parts) if parts else "0"


def parse_element(R: FiniteRing, text: str) -> Element:
    return literal_to_element(R, parse_element_literal(text, GeneratorNames(R.k, R.labels)))


# -- polynomials ----------------------------------------------------------------------

def format_poly(p: SkewPoly) -> str:
    """Highest degree first; ``x^i*(coeff)`` for i >= 1 and ``(coeff)`` for i = 0."""
    R = p.ring
    terms = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if c == R.zero:
            continue
        body = f"({format_element(R, c)})"
        terms.append(body if i == 0 else f"x^{i}*{body}")
    return " + ".join(terms) if terms else "0"


def _split_top_level(text: str, line: int) -> list[tuple[int, str]]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced ')'", line, i + 1)
        elif ch == "+" and depth == 0:
            parts.append((start, text[start:i]))
            start = i + 1
    if depth:
        raise ParseError("unbalanced '('", line, len(text))
    parts.append((start, text[start:]))
    return parts


_TERM = re.compile(r"\s*(?:x\s*(?:\^\s*(\d+)\s*)?\*\s*)?\((.*)\)\s*$", re.S)


def parse_poly(text: str, D: Derivation, line: int = 1) -> SkewPoly:
    """Parse a polynomial; duplicate degrees are summed."""
    R = D.ring
    names = GeneratorNames(R.k, R.labels)
    if text.strip() == "0":
        return SkewPoly(D, ())
    coeffs: dict[int, list[int]] = {}
    for start, chunk in _split_top_level(text, line):
        if not chunk.strip():
            raise ParseError("empty term", line, start + 1)
        m = _TERM.match(chunk)
        if not m:
            raise ParseError(f"malformed term {chunk.strip()[:20]!r}", line, start + 1)
        if m.group(1) is not None:
            deg = _to_int(m.group(1), line, start + 1)
        else:
            deg = 1 if chunk.lstrip().startswith("x") else 0
        if deg > 10_000:
            raise ParseError("degree too large", line, start + 1)
        lit = parse_element_literal(m.group(2), names, line, start + m.start(2) + 1)
        vec = coeffs.setdefault(deg, [0] * R.k)
        for i, c in lit:
            vec[i] += c
    top = max(coeffs)
    out = [R.element(coeffs.get(i, [0] * R.k)) for i in range(top + 1)]
    return SkewPoly(D, _normalize(R, out))


# -- identities -----------------------------------------------------------------------

_VAR = re.compile(r"x(\d+)")


def parse_identity(text: str) -> MultilinearIdentity:
    """``x1*x2 - x2*x1`` or ``2*x1*x2*x3 + ...``; every term must use each
    variable exactly once."""
    pos = _skip_ws(text, 0)
    terms = []
    first = True
    while pos < len(text):
        sign = 1
        if text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos = _skip_ws(text, pos + 1)
        elif not first:
            raise ParseError("expected '+' or '-'", 1, pos + 1)
        coeff = 1
        m = _INT.match(text, pos)
        if m:
            coeff = _to_int(m.group(), 1, pos + 1)
            pos = _skip_ws(text, m.end())
            if pos < len(text) and text[pos] == "*":
                pos = _skip_ws(text, pos + 1)
        word = []
        while True:
            m = _VAR.match(text, pos)
            if not m:
                raise ParseError("expected a variable x<i>", 1, pos + 1)
            word.append(_to_int(m.group(1), 1, pos + 1) - 1)
            pos = _skip_ws(text, m.end())
            if pos < len(text) and text[pos] == "*":
                pos = _skip_ws(text, pos + 1)
                continue
            break
        terms.append((tuple(word), sign * coeff))
        first = False
        pos = _skip_ws(text, pos)
    if not terms:
        raise ParseError("empty identity", 1, 1)
    d = max(max(w) for w, _ in terms) + 1
    for w, _ in terms:
        if sorted(w) != list(range(d)):
            raise ParseError(f"term {'*'.join(f'x{i+1}' for i in w)} is not multilinear of degree {d}", 1, 1)
    return make_identity(d, terms)


# -- ring files -----------------------------------------------------------------------

@dataclass
class DerivationSpec:
    mode: str  # "zero", "inner" or "images"
    element: Literal | None = None
    images: dict[int, Literal] = field(default_factory=dict)


@dataclass
class RingFile:
    kind: str
    params: tuple[int, ...]
    factors: tuple[tuple[str, tuple[int, ...]], ...] = ()
    labels: tuple[str, ...] = ()
    custom_labels: bool = False
    products: dict[tuple[int, int], Literal] = field(default_factory=dict)
    derivation: DerivationSpec | None = None

    @property
    def k(self) -> int:
        return len(self.labels)

    def build_ring(self, cap: int | None = None) -> FiniteRing:
        if self.kind == "structure":
            k = len(self.params)
            moduli = self.params
            table = []
            for i in range(k):
                row = []
                for j in range(k):
                    vec = [0] * k
                    for idx, c in self.products.get((i, j), ()):
                        vec[idx] += c
                    row.append(tuple(v % m for v, m in zip(vec, moduli)))
                table.append(row)
            R = build_structure(moduli, table, labels=self.labels)
        elif self.kind == "product":
            rings = [_build_kind(kind, params, cap) for kind, params in self.factors]
            R = rings[0]
            for other in rings[1:]:
                R = build_product(R, other, cap)
        else:
            R = _build_kind(self.kind, self.params, cap)
        if self.custom_labels:
            R.labels = self.labels
        return R

    def build(self, cap: int | None = None) -> tuple[FiniteRing, Derivation | None]:
        R = self.build_ring(cap)
        spec = self.derivation
        if spec is None:
            return R, None
        if spec.mode == "zero":
            return R, zero_derivation(R)
        if spec.mode == "inner":
            return R, inner_derivation(R, literal_to_element(R, spec.element))
        images = [literal_to_element(R, spec.images.get(i, ())) for i in range(R.k)]
        return R, make_derivation(R, images)


def _build_kind(kind: str, params: tuple[int, ...], cap: int | None) -> FiniteRing:
    if kind == "zn":
        return build_zn(params[0], cap)
    if kind == "matrix":
        return build_matrix_ring(params[0], params[1], cap)
    if kind == "triangular":
        return build_triangular_ring(params[0], params[1], cap)
    if kind == "truncpoly":
        return build_truncated_poly(params[0], params[1], cap)
    raise ValueError(kind)


def _kind_labels(kind: str, params: tuple[int, ...]) -> list[str]:
    if kind == "zn":
        return ["1"]
    if kind == "matrix":
        n = params[0]
        return [_matrix_label(i, j, n) for i in range(n) for j in range(n)]
    if kind == "triangular":
        n = params[0]
        return [_matrix_label(i, j, n) for i in range(n) for j in range(i, n)]
    if kind == "truncpoly":
        return (["1", "t"] + [f"t^{i}" for i in range(2, params[1])])[:params[1]]
    return [f"g{i+1}" for i in range(len(params))]


def _kind_size(kind: str, params: tuple[int, ...]) -> int:
    if kind == "zn":
        return 1
    if kind == "matrix":
        return params[0] ** 2
    if kind == "triangular":
        return params[0] * (params[0] + 1) // 2
    if kind == "truncpoly":
        return params[1]
    return len(params)


def _check_params(kind: str, params: tuple[int, ...], line: int, col: int) -> None:
    want = _PARAM_COUNT.get(kind)
    if want is not None and len(params) != want:
        raise ParseError(f"ring kind {kind} takes {want} parameter(s), got {len(params)}", line, col)
    if kind == "zn" and params[0] < 1:
        raise ParseError("zn needs n >= 1", line, col)
    if kind in ("matrix", "triangular") and (params[0] < 1 or params[1] < 2):
        raise ParseError(f"{kind} needs n >= 1 and m >= 2", line, col)
    if kind == "truncpoly" and (params[0] < 2 or params[1] < 1):
        raise ParseError("truncpoly needs m >= 2 and e >= 1", line, col)
    if kind == "structure":
        if not params:
            raise ParseError("structure needs at least one modulus", line, col)
        if any(p < 1 for p in params):
            raise ParseError("moduli must be >= 1", line, col)
    if _kind_size(kind, params) > MAX_GENERATORS:
        raise ParseError(f"more than {MAX_GENERATORS} generators", line, col)


def _parse_int_list(text: str, line: int, col: int) -> tuple[int, ...]:
    items = [s.strip() for s in text.split(",")]
    if not items or any(not _INT.fullmatch(s) for s in items):
        raise ParseError(f"expected comma-separated integers, got {text.strip()[:20]!r}", line, col)
    return tuple(_to_int(s, line, col) for s in items)


_FACTOR = re.compile(r"\s*([a-z]+)\s*\(([^()]*)\)\s*$")
_HEADER = re.compile(r"\[\s*([A-Za-z]+)\s*\]$")
_PRODUCT_LHS = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*\*\s*([A-Za-z_][A-Za-z0-9_]*)\s*$")
_D_LHS = re.compile(r"\s*D\s*\(\s*([A-Za-z_][A-Za-z0-9_]*)\s*\)\s*$")


def parse_ringfile(text: str) -> RingFile:
    keys: dict[str, tuple[str, int, int]] = {}
    sections_seen: set[str] = set()
    section = "ring"
    ringfile: RingFile | None = None
    names: GeneratorNames | None = None
    deriv: DerivationSpec | None = None

    def finish_ring(line: int) -> None:
        nonlocal ringfile, names
        if "ring.kind" not in keys:
            raise ParseError("missing ring.kind", line, 1)
        kind, kl, kc = keys["ring.kind"]
        kind = kind.strip()
        if kind not in KINDS:
            raise ParseError(f"unknown ring kind {kind[:20]!r}", kl, kc)
        factors: list[tuple[str, tuple[int, ...]]] = []
        if kind == "product":
            if "ring.params" in keys:
                raise ParseError("product rings take ring.factors, not ring.params", *keys["ring.params"][1:])
            if "ring.factors" not in keys:
                raise ParseError("missing ring.factors", line, 1)
            ftext, fl, fc = keys["ring.factors"]
            for piece in ftext.split("*"):
                m = _FACTOR.match(piece)
                if not m or m.group(1) not in _PARAM_COUNT:
                    raise ParseError(f"bad factor {piece.strip()[:20]!r}", fl, fc)
                fparams = _parse_int_list(m.group(2), fl, fc)
                _check_params(m.group(1), fparams, fl, fc)
                factors.append((m.group(1), fparams))
            if len(factors) < 2:
                raise ParseError("a product needs at least two factors", fl, fc)
            params: tuple[int, ...] = ()
            labels = _kind_labels(*factors[0])
            for f in factors[1:]:
                labels = [f"{s}_1" for s in labels] + [f"{s}_2" for s in _kind_labels(*f)]
            if sum(_kind_size(*f) for f in factors) > MAX_GENERATORS:
                raise ParseError(f"more than {MAX_GENERATORS} generators", fl, fc)
        else:
            if "ring.factors" in keys:
                raise ParseError("ring.factors is only valid for product rings", *keys["ring.factors"][1:])
            if "ring.params" not in keys:
                raise ParseError("missing ring.params", line, 1)
            ptext, pl, pc = keys["ring.params"]
            params = _parse_int_list(ptext, pl, pc)
            _check_params(kind, params, pl, pc)
            labels = _kind_labels(kind, params)
        custom = "ring.labels" in keys
        if custom:
            ltext, ll, lc = keys["ring.labels"]
            given = [s.strip() for s in ltext.split(",")]
            if len(given) != len(labels) or any(not _IDENT.fullmatch(s) for s in given):
                raise ParseError(f"ring.labels needs {len(labels)} identifiers", ll, lc)
            labels = given
        ringfile = RingFile(kind, params, tuple(factors), tuple(labels), custom)
        names = GeneratorNames(len(labels), labels)

    lines = text.replace("\r\n", "\n").replace("\r", "\n").split("\n")
    last = len(lines)
    for lineno, raw in enumerate(lines, 1):
        body = raw.split("#", 1)[0]
        stripped = body.strip()
        if not stripped:
            continue
        col = len(body) - len(body.lstrip()) + 1
        if stripped.startswith("["):
            m = _HEADER.fullmatch(stripped)
            if not m:
                raise ParseError("malformed section header", lineno, col)
            name = m.group(1).lower()
            if name not in ("ring", "structure", "derivation"):
                raise ParseError(f"unknown section [{name[:20]}]", lineno, col)
            if name in sections_seen:
                raise ParseError(f"duplicate section [{name}]", lineno, col)
            if name == "ring":
                if section != "ring" or keys or sections_seen:
                    raise ParseError("[ring] must come first", lineno, col)
            elif ringfile is None:
                finish_ring(lineno)
            sections_seen.add(name)
            section = name
            if name == "structure" and ringfile.kind != "structure":
                raise ParseError("[structure] requires ring.kind=structure", lineno, col)
            if name == "derivation":
                deriv = None
            continue
        if section == "ring":
            if "=" not in stripped:
                raise ParseError("expected key=value", lineno, col)
            key, value = stripped.split("=", 1)
            key = key.strip()
            if key not in ("ring.kind", "ring.params", "ring.factors", "ring.labels"):
                raise ParseError(f"unknown key {key[:20]!r}", lineno, col)
            if key in keys:
                raise ParseError(f"duplicate key {key}", lineno, col)
            keys[key] = (value, lineno, col + body.lstrip().index("=") + 1)
        elif section == "structure":
            if "=" not in body:
                raise ParseError("expected 'gi*gj = element'", lineno, col)
            lhs, rhs = body.split("=", 1)
            m = _PRODUCT_LHS.match(lhs)
            if not m:
                raise ParseError("left side must be a product of two generators", lineno, col)
            i, j = names.resolve(m.group(1)), names.resolve(m.group(2))
            if i is None or j is None:
                bad = m.group(1) if i is None else m.group(2)
                raise ParseError(f"unknown generator {bad[:20]!r}", lineno, col)
            if (i, j) in ringfile.products:
                raise ParseError("duplicate product", lineno, col)
            ringfile.products[(i, j)] = parse_element_literal(rhs, names, lineno, len(lhs) + 2)
        else:
            if stripped == "zero":
                if deriv is not None:
                    raise ParseError("derivation already specified", lineno, col)
                deriv = DerivationSpec("zero")
            elif "=" not in body:
                raise ParseError("expected 'zero', 'inner = <element>' or 'D(g) = <element>'", lineno, col)
            else:
                lhs, rhs = body.split("=", 1)
                rcol = len(lhs) + 2
                if lhs.strip() == "inner":
                    if deriv is not None:
                        raise ParseError("derivation already specified", lineno, col)
                    deriv = DerivationSpec("inner", parse_element_literal(rhs, names, lineno, rcol))
                else:
                    m = _D_LHS.match(lhs)
                    if not m:
                        raise ParseError("expected D(<generator>) on the left", lineno, col)
                    idx = names.resolve(m.group(1))
                    if idx is None:
                        raise ParseError(f"unknown generator {m.group(1)[:20]!r}", lineno, col)
                    if deriv is None:
                        deriv = DerivationSpec("images")
                    elif deriv.mode != "images":
                        raise ParseError("cannot mix image lines with zero/inner", lineno, col)
                    if idx in deriv.images:
                        raise ParseError("duplicate image line", lineno, col)
                    deriv.images[idx] = parse_element_literal(rhs, names, lineno, rcol)
            ringfile.derivation = deriv
    if ringfile is None:
        finish_ring(last)
    if "derivation" in sections_seen and ringfile.derivation is None:
        raise ParseError("empty [derivation] section", last, 1)
    return ringfile


def load_ringfile(path) -> RingFile:
    with open(path, encoding="utf-8") as fh:
        return parse_ringfile(fh.read())
