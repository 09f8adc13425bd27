"""Finite, possibly non-unital, associative rings given by structure constants.

A ring is presented on the additive group Z/m_1 x ... x Z/m_k.  Elements
are residue tuples; the product of generators ``g_i g_j`` is stored in a
k x k table and extended bilinearly.  Elements are ordered
lexicographically on their residue tuples, which is also the order of
``FiniteRing.elements()``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, reduce
from math import gcd, prod
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    AssociativityViolation,
    DimensionMismatch,
    NotAnIdeal,
    OrderIncompatibility,
    ShapeError,
    SizeCapExceeded,
)
from .linalg import diagonalize_mod

Element = tuple[int, ...]

DEFAULT_CAP = 4096
IDEAL_CAP = 256
# rings up to this size get cached index tables for + and *
DENSE_CAP = 512


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class DenseTables:
    """Index-based arithmetic tables for a small ring.

    Element ``i`` is ``elements[i]``; index 0 is always zero.  ``add`` and
    ``mul`` are lists of lists so that scalar lookups stay cheap.
    """

    def __init__(self, ring: FiniteRing):
        self.ring = ring
        elems = list(ring.elements())
        self.elements = elems
        self.index = {a: i for i, a in enumerate(elems)}
        n, k = len(elems), ring.k
        moduli = np.array(ring.moduli, dtype=np.int64)
        strides = np.array(ring._strides, dtype=np.int64)
        if k == 0:
            self.add = [[0]]
            self.mul = [[0]]
            self.neg = [0]
        else:
            E = np.array(elems, dtype=np.int64).reshape(n, k)
            summed = (E[:, None, :] + E[None, :, :]) % moduli
            self.add = (summed @ strides).tolist()
            acc = np.zeros((n, n, k), dtype=np.int64)
            for i, j, entries in ring._sparse_pairs:
                outer = np.outer(E[:, i], E[:, j])
                for l, c in entries:
                    acc[:, :, l] += outer * c
            acc %= moduli
            self.mul = (acc @ strides).tolist()
            self.neg = (((-E) % moduli) @ strides).tolist()
        self._intmul: dict[int, list[int]] = {}

    def int_mul_table(self, n: int) -> list[int]:
        n %= self.ring.exponent
        table = self._intmul.get(n)
        if table is None:
            r = self.ring
            table = [self.index[r.int_mul(n, a)] for a in self.elements]
            self._intmul[n] = table
        return table


class FiniteRing:
    """A finite associative ring presented by structure constants.

    Construction validates the table shape, order compatibility of every
    generator product, and associativity on all generator triples; by
    bilinearity that is enough for the whole ring.
    """

    def __init__(self, moduli: Sequence[int], mul_table, unit: Sequence[int] | None = None,
                 labels: Sequence[str] | None = None, *, detect_unit: bool = True):
        moduli = tuple(int(m) for m in moduli)
        k = len(moduli)
        if any(m < 1 for m in moduli):
            raise ShapeError("additive moduli must be positive", moduli=moduli)
        try:
            table = tuple(tuple(tuple(int(x) for x in entry) for entry in row) for row in mul_table)
        except TypeError as exc:
            raise ShapeError(f"malformed multiplication table: {exc}") from None
        if len(table) != k or any(len(row) != k for row in table):
            raise ShapeError(f"multiplication table must be {k}x{k}")
        for i, row in enumerate(table):
            for j, entry in enumerate(row):
                if len(entry) != k:
                    raise ShapeError(f"table entry g{i+1}*g{j+1} has length {len(entry)}, expected {k}",
                                     pair=(i, j))
                if any(not 0 <= x < m for x, m in zip(entry, moduli)):
                    raise ShapeError(f"table entry g{i+1}*g{j+1} = {entry} is not reduced", pair=(i, j))
        self.moduli = moduli
        self.mul_table = table
        self.k = k
        self.labels = tuple(labels) if labels is not None else tuple(f"g{i+1}" for i in range(k))
        if len(self.labels) != k:
            raise ShapeError("one label per generator required")
        strides = [1] * k
        for i in range(k - 2, -1, -1):
            strides[i] = strides[i + 1] * moduli[i + 1]
        self._strides = tuple(strides)
        self._sparse_pairs = [
            (i, j, [(l, c) for l, c in enumerate(table[i][j]) if c])
            for i in range(k) for j in range(k) if any(table[i][j])
        ]
        rows: list[list[tuple[int, list[tuple[int, int]]]]] = [[] for _ in range(k)]
        for i, j, entries in self._sparse_pairs:
            rows[i].append((j, entries))
        self._sparse_rows = rows
        self._check_orders()
        self._check_associativity()
        self.unit: Element | None = None
        if unit is not None:
            u = self.validate(tuple(unit))
            for g in self.generators():
                if self.mul(u, g) != g or self.mul(g, u) != g:
                    raise ShapeError("declared unit does not act as identity", unit=u, generator=g)
            self.unit = u
        elif detect_unit and self.size <= DEFAULT_CAP:
            self.unit = self._find_unit()

    # -- validation ---------------------------------------------------------

    def _check_orders(self) -> None:
        for i in range(self.k):
            for j in range(self.k):
                e = self.mul_table[i][j]
                for m in (self.moduli[i], self.moduli[j]):
                    if any(m * x % mo for x, mo in zip(e, self.moduli)):
                        raise OrderIncompatibility(
                            f"g{i+1}*g{j+1} = {e} is not killed by {m}", pair=(i, j))

    def _check_associativity(self) -> None:
        gens = self.generators()
        for i, j, l in itertools.product(range(self.k), repeat=3):
            left = self.mul(self.mul(gens[i], gens[j]), gens[l])
            right = self.mul(gens[i], self.mul(gens[j], gens[l]))
            if left != right:
                raise AssociativityViolation(
                    f"(g{i+1}g{j+1})g{l+1} = {left} but g{i+1}(g{j+1}g{l+1}) = {right}",
                    triple=(i, j, l))

    def _find_unit(self) -> Element | None:
        gens = self.generators()
        for e in self.elements():
            if all(self.mul(e, g) == g and self.mul(g, e) == g for g in gens):
                return e
        return None

    # -- basic data ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, FiniteRing):
            return NotImplemented
        return self.moduli == other.moduli and self.mul_table == other.mul_table

    def __hash__(self) -> int:
        return hash((self.moduli, self.mul_table))

    def __repr__(self) -> str:
        return f"FiniteRing(moduli={list(self.moduli)}, size={self.size})"

    @cached_property
    def size(self) -> int:
        return prod(self.moduli)

    @cached_property
    def exponent(self) -> int:
        return reduce(_lcm, self.moduli, 1)

    @cached_property
    def zero(self) -> Element:
        return (0,) * self.k

    def generators(self) -> list[Element]:
        return [tuple(int(i == j) % m for j, m in enumerate(self.moduli)) for i in range(self.k)]

    def element(self, values: Iterable[int]) -> Element:
        """Reduce an integer vector to an element."""
        values = tuple(values)
        if len(values) != self.k:
            raise DimensionMismatch(f"expected {self.k} residues, got {len(values)}")
        return tuple(v % m for v, m in zip(values, self.moduli))

    def validate(self, a) -> Element:
        a = tuple(a)
        if len(a) != self.k:
            raise DimensionMismatch(f"expected {self.k} residues, got {len(a)}", element=a)
        if any(not 0 <= x < m for x, m in zip(a, self.moduli)):
            raise DimensionMismatch(f"{a} is not a reduced residue vector", element=a)
        return a

    def elements(self) -> Iterator[Element]:
        return itertools.product(*(range(m) for m in self.moduli))

    def check_cap(self, cap: int | None = None) -> None:
        cap = DEFAULT_CAP if cap is None else cap
        if self.size > cap:
            raise SizeCapExceeded(f"ring has {self.size} elements, cap is {cap}",
                                  size=self.size, cap=cap)

    def encode(self, a: Element) -> int:
        return sum(x * s for x, s in zip(a, self._strides))

    @cached_property
    def _dense(self) -> DenseTables | None:
        return DenseTables(self) if self.size <= DENSE_CAP else None

    def dense(self) -> DenseTables | None:
        """Index tables for small rings, None above ``DENSE_CAP``."""
        return self._dense

    # -- arithmetic ---------------------------------------------------------

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def neg(self, a: Element) -> Element:
        return tuple(-x % m for x, m in zip(a, self.moduli))

    def sub(self, a: Element, b: Element) -> Element:
        return tuple((x - y) % m for x, y, m in zip(a, b, self.moduli))

    def int_mul(self, n: int, a: Element) -> Element:
        return tuple(n * x % m for x, m in zip(a, self.moduli))

    def mul(self, a: Element, b: Element) -> Element:
        acc = [0] * self.k
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, entries in self._sparse_rows[i]:
                bj = b[j]
                if bj:
                    s = ai * bj
                    for l, c in entries:
                        acc[l] += s * c
        return tuple(x % m for x, m in zip(acc, self.moduli))

    def power(self, a: Element, n: int) -> Element:
        if n < 1:
            raise ValueError("power needs n >= 1 (the ring may lack a unit)")
        result = a
        for _ in range(n - 1):
            result = self.mul(result, a)
        return result

    def is_commutative(self) -> bool:
        t = self.mul_table
        return all(t[i][j] == t[j][i] for i in range(self.k) for j in range(i))

    def nilpotency_degree(self, a: Element) -> int | None:
        """Least n with a^n = 0, or None when a is not nilpotent."""
        if a == self.zero:
            return 1
        seen = {a}
        x, n = a, 1
        while True:
            x = self.mul(x, a)
            n += 1
            if x == self.zero:
                return n
            if x in seen:
                return None
            seen.add(x)

    def is_nilpotent(self, a: Element) -> bool:
        return self.nilpotency_degree(a) is not None


# -- module-level operations -------------------------------------------------

def build_structure(moduli: Sequence[int], mul_table, unit=None, labels=None) -> FiniteRing:
    """Validate a structure-constant presentation and return the ring."""
    return FiniteRing(moduli, mul_table, unit=unit, labels=labels)


def _checked(R: FiniteRing, *elems):
    for a in elems:
        R.validate(a)


def elem_add(R: FiniteRing, a: Element, b: Element) -> Element:
    _checked(R, a, b)
    return R.add(a, b)


def elem_neg(R: FiniteRing, a: Element) -> Element:
    _checked(R, a)
    return R.neg(a)


def elem_mul(R: FiniteRing, a: Element, b: Element) -> Element:
    _checked(R, a, b)
    return R.mul(a, b)


def elem_int_mul(R: FiniteRing, n: int, a: Element) -> Element:
    _checked(R, a)
    return R.int_mul(n, a)


def _unit_vector(k: int, i: int, m: Sequence[int]) -> tuple[int, ...]:
    return tuple(int(j == i) % m[j] for j in range(k))


def _guard_size(size: int, cap: int | None) -> None:
    cap = DEFAULT_CAP if cap is None else cap
    if size > cap:
        raise SizeCapExceeded(f"ring would have {size} elements, cap is {cap}", size=size, cap=cap)


def build_zn(n: int, cap: int | None = None) -> FiniteRing:
    if n < 1:
        raise ValueError("n must be >= 1")
    _guard_size(n, cap)
    return FiniteRing([n], [[(1 % n,)]], unit=(1 % n,), labels=["1"])


def _matrix_label(i: int, j: int, n: int) -> str:
    return f"E{i+1}{j+1}" if n < 10 else f"E{i+1}_{j+1}"


def _matrix_units_ring(positions: list[tuple[int, int]], n: int, m: int) -> FiniteRing:
    k = len(positions)
    where = {p: idx for idx, p in enumerate(positions)}
    moduli = [m] * k
    zero = (0,) * k
    table = []
    for (i, j) in positions:
        row = []
        for (p, q) in positions:
            if j == p and (i, q) in where:
                row.append(_unit_vector(k, where[(i, q)], moduli))
            else:
                row.append(zero)
        table.append(row)
    unit = tuple(1 if i == j else 0 for (i, j) in positions)
    labels = [_matrix_label(i, j, n) for (i, j) in positions]
    return FiniteRing(moduli, table, unit=unit, labels=labels)


def build_matrix_ring(n: int, m: int, cap: int | None = None) -> FiniteRing:
    """Full n x n matrices over Z/m with matrix units E_ij in row-major order."""
    if n < 1 or m < 2:
        raise ValueError("need n >= 1 and m >= 2")
    _guard_size(m ** (n * n), cap)
    return _matrix_units_ring([(i, j) for i in range(n) for j in range(n)], n, m)


def build_triangular_ring(n: int, m: int, cap: int | None = None) -> FiniteRing:
    """Upper triangular n x n matrices over Z/m."""
    if n < 1 or m < 2:
        raise ValueError("need n >= 1 and m >= 2")
    _guard_size(m ** (n * (n + 1) // 2), cap)
    return _matrix_units_ring([(i, j) for i in range(n) for j in range(i, n)], n, m)


def build_truncated_poly(m: int, e: int, cap: int | None = None) -> FiniteRing:
    """Z/m[t]/(t^e) on the basis 1, t, ..., t^(e-1)."""
    if m < 2 or e < 1:
        raise ValueError("need m >= 2 and e >= 1")
    _guard_size(m ** e, cap)
    moduli = [m] * e
    zero = (0,) * e
    table = [[_unit_vector(e, i + j, moduli) if i + j < e else zero for j in range(e)]
             for i in range(e)]
    labels = ["1", "t"] + [f"t^{i}" for i in range(2, e)]
    return FiniteRing(moduli, table, unit=_unit_vector(e, 0, moduli), labels=labels[:e])


def build_product(R1: FiniteRing, R2: FiniteRing, cap: int | None = None) -> FiniteRing:
    """Direct product; generators of R1 come first, then those of R2."""
    _guard_size(R1.size * R2.size, cap)
    k1, k2 = R1.k, R2.k
    zero = (0,) * (k1 + k2)
    table = []
    for i in range(k1):
        table.append([R1.mul_table[i][j] + (0,) * k2 for j in range(k1)] + [zero] * k2)
    for i in range(k2):
        table.append([zero] * k1 + [(0,) * k1 + R2.mul_table[i][j] for j in range(k2)])
    unit = R1.unit + R2.unit if R1.unit is not None and R2.unit is not None else None
    labels = [f"{s}_1" for s in R1.labels] + [f"{s}_2" for s in R2.labels]
    return FiniteRing(R1.moduli + R2.moduli, table, unit=unit, labels=labels,
                      detect_unit=unit is None)


def embed_left(R1: FiniteRing, R2: FiniteRing, a: Element) -> Element:
    return tuple(a) + (0,) * R2.k


def embed_right(R1: FiniteRing, R2: FiniteRing, b: Element) -> Element:
    return (0,) * R1.k + tuple(b)


# -- subsets, ideals, quotients ------------------------------------------------

@dataclass(frozen=True, eq=False)
class IdealSet:
    """An explicit two-sided ideal: its elements in canonical order plus the
    generators it was closed from."""

    elements: tuple[Element, ...]
    generators: tuple[Element, ...] = field(default=())

    @cached_property
    def members(self) -> frozenset:
        return frozenset(self.elements)

    def __contains__(self, a) -> bool:
        return tuple(a) in self.members

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IdealSet):
            return NotImplemented
        return self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __le__(self, other: IdealSet) -> bool:
        return self.members <= other.members

    def is_zero(self) -> bool:
        return len(self.elements) == 1

    def __repr__(self) -> str:
        return f"IdealSet(size={len(self.elements)})"


def make_ideal(elements: Iterable[Element], generators: Iterable[Element] = ()) -> IdealSet:
    return IdealSet(tuple(sorted(set(elements))), tuple(generators))


def subgroup_span(R: FiniteRing, gens: Iterable[Element], cap: int | None = None,
                  start: Iterable[Element] | None = None) -> set[Element]:
    """Additive subgroup generated by ``gens`` (and the subgroup ``start``)."""
    cap = DEFAULT_CAP if cap is None else cap
    members = set(start) if start is not None else {R.zero}
    for y in gens:
        if y in members:
            continue
        multiples = [R.zero]
        x = y
        while x != R.zero:
            multiples.append(x)
            x = R.add(x, y)
        members = {R.add(m, ky) for m in members for ky in multiples}
        if len(members) > cap:
            raise SizeCapExceeded(f"subgroup exceeds cap {cap}", cap=cap)
    return members


def additive_generators(R: FiniteRing, elements: Iterable[Element]) -> list[Element]:
    """A small additive generating set of a subgroup, chosen greedily in
    canonical order."""
    gens: list[Element] = []
    span = {R.zero}
    for a in sorted(elements):
        if a not in span:
            gens.append(a)
            span = subgroup_span(R, [a], start=span, cap=max(DEFAULT_CAP, len(span) * R.exponent))
    return gens


def ideal_closure(R: FiniteRing, gens: Iterable[Element], cap: int | None = None) -> IdealSet:
    """Smallest two-sided ideal containing ``gens``.

    Integer multiples are included, so in a ring without unit the ideal of
    ``a`` is aZ + aR + Ra + RaR.
    """
    gens = [R.validate(g) for g in gens]
    ring_gens = R.generators()
    members = {R.zero}
    frontier = list(gens)
    while frontier:
        y = frontier.pop()
        if y in members:
            continue
        members = subgroup_span(R, [y], cap=cap, start=members)
        for g in ring_gens:
            frontier.append(R.mul(g, y))
            frontier.append(R.mul(y, g))
    return IdealSet(tuple(sorted(members)), tuple(gens))


def is_ideal(R: FiniteRing, elements: Iterable[Element]) -> bool:
    members = set(elements)
    if R.zero not in members:
        return False
    gens = R.generators()
    for x in members:
        if R.neg(x) not in members:
            return False
        for g in gens:
            if R.mul(g, x) not in members or R.mul(x, g) not in members:
                return False
    span_gens = additive_generators(R, members)
    for a in span_gens:
        for x in members:
            if R.add(a, x) not in members:
                return False
    return True


def require_ideal(R: FiniteRing, I: IdealSet) -> None:
    if not is_ideal(R, I.elements):
        raise NotAnIdeal("set is not a two-sided ideal")


def centre(R: FiniteRing, cap: int | None = None) -> tuple[Element, ...]:
    """Elements commuting with every element, in canonical order.

    Checking the generators suffices by bilinearity.
    """
    R.check_cap(cap)
    gens = R.generators()
    return tuple(z for z in R.elements() if all(R.mul(z, g) == R.mul(g, z) for g in gens))


def enumerate_ideals(R: FiniteRing, cap: int | None = None) -> list[IdealSet]:
    """All two-sided ideals, as sums of principal ideals, sorted by size then
    elements."""
    R.check_cap(IDEAL_CAP if cap is None else cap)
    principal: dict[frozenset, IdealSet] = {}
    for a in R.elements():
        I = ideal_closure(R, [a])
        principal.setdefault(I.members, I)
    found: dict[frozenset, IdealSet] = dict(principal)
    queue = list(found.values())
    prin = [(P, additive_generators(R, P.elements)) for P in principal.values()]
    while queue:
        I = queue.pop()
        for P, pgens in prin:
            if P.members <= I.members:
                continue
            total = frozenset(subgroup_span(R, pgens, start=I.elements))
            if total not in found:
                J = IdealSet(tuple(sorted(total)), I.generators + P.generators)
                found[total] = J
                queue.append(J)
    return sorted(found.values(), key=lambda J: (len(J), J.elements))


@dataclass(frozen=True)
class Quotient:
    """R/I together with the projection and a section (coset representative)."""

    ring: FiniteRing
    ideal: IdealSet
    project: Callable[[Element], Element]
    lift: Callable[[Element], Element]


def quotient_ring(R: FiniteRing, I: IdealSet, cap: int | None = None) -> Quotient:
    R.check_cap(IDEAL_CAP if cap is None else cap)
    require_ideal(R, I)
    if I.is_zero():
        return Quotient(R, I, lambda a: tuple(a), lambda a: tuple(a))
    k, M = R.k, R.exponent
    relations = [list(g) for g in additive_generators(R, I.elements)]
    relations += [[R.moduli[i] if j == i else 0 for j in range(k)] for i in range(k)]
    dz = diagonalize_mod(relations, k, M)
    orders = [gcd(d, M) if d else M for d in dz.diag]
    keep = [i for i in range(k) if orders[i] > 1]
    Q = dz.col
    reps = [R.element(dz.col_inv[i]) for i in keep]
    new_moduli = [orders[i] for i in keep]

    def project(a: Element) -> Element:
        return tuple(sum(a[r] * Q[r][i] for r in range(k)) % orders[i] for i in keep)

    def lift(y: Element) -> Element:
        out = R.zero
        for c, rep in zip(y, reps):
            out = R.add(out, R.int_mul(c, rep))
        return out

    table = [[project(R.mul(x, y)) for y in reps] for x in reps]
    unit = project(R.unit) if R.unit is not None else None
    Qr = FiniteRing(new_moduli, table, unit=unit, labels=[f"h{i+1}" for i in range(len(keep))])
    return Quotient(Qr, I, project, lift)
