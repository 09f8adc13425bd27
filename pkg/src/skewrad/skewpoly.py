"""Arithmetic in the differential polynomial ring R[x;D].

Polynomials are kept in right-coefficient normal form: ``coeffs[i]`` is the
coefficient a_i of the term x^i a_i.  Products are reduced with the
commutation rule

    a x^r = sum_{l=0}^{r} (-1)^l C(r, l) x^(r-l) D^l(a),

which is the r-fold iterate of ``a x = x a - D(a)``.  Signs and binomials
are exact integers applied through integer multiples of ring elements, so
characteristic effects fall out of the arithmetic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .derivation import Derivation
from .errors import ContextMismatch, InternalInconsistency, NotNilpotent, SearchCapExceeded
from .finring import Element, FiniteRing
from .linalg import solve_mod

ZERO_DEGREE = -math.inf

# budget (rows * columns) for the linear system behind quasi_inverse_search
SEARCH_BUDGET = 400_000
ENUMERATION_BUDGET = 1 << 16


@lru_cache(maxsize=None)
def _signed_binomials(r: int) -> tuple[int, ...]:
    return tuple((-1) ** l * math.comb(r, l) for l in range(r + 1))


@dataclass(frozen=True)
class SkewPoly:
    """sum_i x^i coeffs[i]; trailing zeros are always stripped."""

    deriv: Derivation
    coeffs: tuple[Element, ...]

    @property
    def ring(self) -> FiniteRing:
        return self.deriv.ring

    def __repr__(self) -> str:
        return f"SkewPoly({list(self.coeffs)})"

    def __add__(self, other: SkewPoly) -> SkewPoly:
        return poly_add(self, other)

    def __sub__(self, other: SkewPoly) -> SkewPoly:
        return poly_add(self, poly_neg(other))

    def __neg__(self) -> SkewPoly:
        return poly_neg(self)

    def __mul__(self, other: SkewPoly) -> SkewPoly:
        return poly_mul(self, other)

    def __pow__(self, n: int) -> SkewPoly:
        return poly_pow(self, n)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self):
        return degree(self)


def _normalize(R: FiniteRing, coeffs: Sequence[Element]) -> tuple[Element, ...]:
    coeffs = list(coeffs)
    zero = R.zero
    while coeffs and coeffs[-1] == zero:
        coeffs.pop()
    return tuple(coeffs)


def make_poly(D: Derivation, coeffs: Iterable[Sequence[int]]) -> SkewPoly:
    R = D.ring
    return SkewPoly(D, _normalize(R, [R.validate(c) for c in coeffs]))


def zero_poly(D: Derivation) -> SkewPoly:
    return SkewPoly(D, ())


def monomial(D: Derivation, i: int, a: Element) -> SkewPoly:
    """x^i a."""
    R = D.ring
    return SkewPoly(D, _normalize(R, [R.zero] * i + [R.validate(a)]))


def x_times(D: Derivation, a: Element) -> SkewPoly:
    """The element x a."""
    return monomial(D, 1, a)


def _context(p: SkewPoly, q: SkewPoly) -> Derivation:
    if p.deriv is q.deriv or p.deriv == q.deriv:
        return p.deriv
    raise ContextMismatch("polynomials live in different rings R[x;D]")


def poly_add(p: SkewPoly, q: SkewPoly) -> SkewPoly:
    D = _context(p, q)
    R = D.ring
    a, b = p.coeffs, q.coeffs
    if len(a) < len(b):
        a, b = b, a
    out = [R.add(x, y) for x, y in zip(a, b)] + list(a[len(b):])
    return SkewPoly(D, _normalize(R, out))


def poly_neg(p: SkewPoly) -> SkewPoly:
    R = p.ring
    return SkewPoly(p.deriv, tuple(R.neg(c) for c in p.coeffs))


def poly_sub(p: SkewPoly, q: SkewPoly) -> SkewPoly:
    return poly_add(p, poly_neg(q))


def degree(p: SkewPoly):
    """Degree as an int, or ``ZERO_DEGREE`` (minus infinity) for 0."""
    return len(p.coeffs) - 1 if p.coeffs else ZERO_DEGREE


def extract_coefficient(p: SkewPoly, i: int) -> Element:
    return p.coeffs[i] if 0 <= i < len(p.coeffs) else p.ring.zero


def move_coeff(D: Derivation, a: Element, r: int) -> SkewPoly:
    """Right-normal form of a x^r."""
    R = D.ring
    a = R.validate(a)
    if r < 0:
        raise ValueError("r must be >= 0")
    out = [R.zero] * (r + 1)
    da = a
    for l, c in enumerate(_signed_binomials(r)):
        out[r - l] = R.int_mul(c, da)
        da = D.apply(da)
    return SkewPoly(D, _normalize(R, out))


def _mul_dense(D: Derivation, P: Sequence[Element], Q: Sequence[Element]) -> list[Element]:
    R = D.ring
    dense = R.dense()
    index = dense.index
    pi = [index[c] for c in P]
    qi = [index[c] for c in Q]
    mul, add = dense.mul, dense.add
    dpow = D.dense_powers(len(qi))
    exponent = R.exponent
    out = [0] * (len(pi) + len(qi) - 1)
    for i, a in enumerate(pi):
        if not a:
            continue
        for j, b in enumerate(qi):
            if not b:
                continue
            signs = _signed_binomials(j)
            for l in range(j + 1):
                da = dpow[l][a]
                if not da:
                    break
                t = mul[da][b]
                if not t:
                    continue
                c = signs[l] % exponent
                if not c:
                    continue
                if c != 1:
                    t = dense.int_mul_table(c)[t]
                pos = i + j - l
                out[pos] = add[out[pos]][t]
    elems = dense.elements
    return [elems[x] for x in out]


def _mul_sparse(D: Derivation, P: Sequence[Element], Q: Sequence[Element]) -> list[Element]:
    R = D.ring
    zero = R.zero
    out = [zero] * (len(P) + len(Q) - 1)
    for i, a in enumerate(P):
        if a == zero:
            continue
        da_list = [a]
        for j, b in enumerate(Q):
            if b == zero:
                continue
            while len(da_list) <= j:
                da_list.append(D.apply(da_list[-1]))
            for l, c in enumerate(_signed_binomials(j)):
                da = da_list[l]
                if da == zero:
                    break
                t = R.int_mul(c, R.mul(da, b))
                out[i + j - l] = R.add(out[i + j - l], t)
    return out


def poly_mul(p: SkewPoly, q: SkewPoly, *, dense: bool | None = None) -> SkewPoly:
    """Product in R[x;D]: (x^i a)(x^j b) = x^i (a x^j) b, bilinearly extended.

    ``dense`` forces (True) or disables (False) the table-driven path; the
    default uses tables whenever the ring is small enough.
    """
    D = _context(p, q)
    R = D.ring
    if not p.coeffs or not q.coeffs:
        return SkewPoly(D, ())
    use_dense = R.dense() is not None if dense is None else dense
    if use_dense:
        out = _mul_dense(D, p.coeffs, q.coeffs)
    else:
        out = _mul_sparse(D, p.coeffs, q.coeffs)
    return SkewPoly(D, _normalize(R, out))


def poly_pow(p: SkewPoly, n: int) -> SkewPoly:
    if n < 1:
        raise ValueError("n must be >= 1 (R[x;D] may lack a unit)")
    result = p
    for _ in range(n - 1):
        result = poly_mul(result, p)
    return result


def circle(p: SkewPoly, q: SkewPoly) -> SkewPoly:
    """p o q = p + q - pq."""
    return poly_sub(poly_add(p, q), poly_mul(p, q))


def quasi_inverse_nilpotent(p: SkewPoly, k: int) -> SkewPoly:
    """For p^k = 0 return g = -(p + p^2 + ... + p^(k-1)); then p o g = g o p = 0."""
    if k < 1:
        raise ValueError("k must be >= 1")
    powers = [p]
    for _ in range(k - 1):
        powers.append(poly_mul(powers[-1], p))
    if not powers[-1].is_zero():
        raise NotNilpotent(f"p^{k} is not zero", index=k)
    total = zero_poly(p.deriv)
    for power in powers[:k - 1]:
        total = poly_add(total, power)
    g = poly_neg(total)
    if not circle(p, g).is_zero() or not circle(g, p).is_zero():
        raise InternalInconsistency("geometric-series quasi-inverse failed the circle equations")
    return g


@dataclass(frozen=True)
class NotFound:
    """No quasi-inverse of degree <= max_degree exists.

    This is a statement about the bounded search space only; it does not show
    that the polynomial has no quasi-inverse of larger degree.
    """

    max_degree: int


_SIDES = {"both": ("fp", "pf"), "fp": ("fp",), "pf": ("pf",)}


def _check_sides(p: SkewPoly, f: SkewPoly, sides: tuple[str, ...]) -> bool:
    return all(
        (circle(f, p) if side == "fp" else circle(p, f)).is_zero() for side in sides
    )


def quasi_inverse_search(p: SkewPoly, max_degree: int, *, sides: str = "both",
                         method: str = "linear", budget: int | None = None) -> SkewPoly | NotFound:
    """Look for f of degree <= max_degree with f + p - fp = 0 and p + f - pf = 0.

    ``sides`` selects which equations are imposed: "fp" is f o p = 0, "pf" is
    p o f = 0.  When both are imposed a solution is the unique two-sided circle
    inverse of p, so the search order does not matter.

    The "linear" method treats the equations as a linear congruence system
    over Z/exponent in the coefficients of f and diagonalizes it.  The
    "enumerate" method walks all coefficient tuples and returns the first
    hit; it is exponential and meant for tiny cases.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    if sides not in _SIDES:
        raise ValueError(f"sides must be one of {sorted(_SIDES)}")
    chosen = _SIDES[sides]
    D = p.deriv
    R = D.ring
    if p.is_zero():
        return zero_poly(D)
    if method == "enumerate":
        return _search_enumerate(p, max_degree, chosen, budget)
    if method != "linear":
        raise ValueError("method must be 'linear' or 'enumerate'")

    k, M = R.k, R.exponent
    e = len(p.coeffs) - 1
    out_len = max_degree + e + 1
    ncols = k * (max_degree + 1)
    nrows = len(chosen) * out_len * k
    budget = SEARCH_BUDGET if budget is None else budget
    if nrows * ncols > budget:
        raise SearchCapExceeded(f"linear system {nrows}x{ncols} exceeds budget {budget}",
                                size=nrows * ncols, cap=budget)
    scale = [M // m for m in R.moduli]

    def flatten(polys: list[SkewPoly]) -> list[int]:
        vec = []
        for poly in polys:
            for t in range(out_len):
                c = extract_coefficient(poly, t)
                vec.extend(c[l] * scale[l] % M for l in range(k))
        return vec

    # the map f -> (f - fp, f - pf) is additive; its columns are images of x^i g_c
    columns = []
    for i in range(max_degree + 1):
        for c, g in enumerate(R.generators()):
            f = monomial(D, i, g)
            images = []
            for side in chosen:
                prod_ = poly_mul(f, p) if side == "fp" else poly_mul(p, f)
                images.append(poly_sub(f, prod_))
            columns.append(flatten(images))
    matrix = [[columns[c][r] for c in range(ncols)] for r in range(nrows)]
    target = flatten([poly_neg(p)] * len(chosen))
    u = solve_mod(matrix, ncols, target, M)
    if u is None:
        return NotFound(max_degree)
    coeffs = [R.element(u[i * k:(i + 1) * k]) for i in range(max_degree + 1)]
    f = SkewPoly(D, _normalize(R, coeffs))
    if not _check_sides(p, f, chosen):
        raise InternalInconsistency("linear solve produced a non-solution")
    return f


def _search_enumerate(p: SkewPoly, max_degree: int, sides: tuple[str, ...],
                      budget: int | None) -> SkewPoly | NotFound:
    D = p.deriv
    R = D.ring
    budget = ENUMERATION_BUDGET if budget is None else budget
    space = R.size ** (max_degree + 1)
    if space > budget:
        raise SearchCapExceeded(f"{space} candidates exceed enumeration budget {budget}",
                                size=space, cap=budget)
    elems = list(R.elements())
    # candidates ordered by degree, then lexicographically from the top coefficient down
    for d in range(max_degree + 1):
        for top in elems:
            if d > 0 and top == R.zero:
                continue
            for rest in itertools.product(elems, repeat=d):
                coeffs = list(reversed(rest)) + [top]
                f = SkewPoly(D, _normalize(R, coeffs))
                if _check_sides(p, f, sides):
                    return f
    return NotFound(max_degree)
