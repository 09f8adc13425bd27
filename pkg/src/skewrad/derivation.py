"""Derivations of finite rings.

A derivation is stored by the images of the additive generators and
applied through additivity.  Validation checks that each image is killed
by the order of its generator and that the Leibniz rule holds on every
generator pair, which by bilinearity covers the whole ring.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb, prod
from typing import Sequence

from .errors import DimensionMismatch, LeibnizViolation, OrderViolation, SizeCapExceeded
from .finring import Element, FiniteRing, build_product

DERIVATION_CAP = 1 << 20


@dataclass(frozen=True, eq=False)
class Derivation:
    ring: FiniteRing
    images: tuple[Element, ...]
    # the element b when built as a -> ba - ab; metadata only
    inner: Element | None = field(default=None, compare=False)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.images == other.images and self.ring == other.ring

    def __hash__(self) -> int:
        return hash((self.ring, self.images))

    def __repr__(self) -> str:
        return f"Derivation(images={list(self.images)})"

    def __call__(self, a: Element) -> Element:
        return self.apply(a)

    def is_zero(self) -> bool:
        z = self.ring.zero
        return all(img == z for img in self.images)

    def apply(self, a: Element) -> Element:
        R = self.ring
        acc = [0] * R.k
        for c, img in zip(a, self.images):
            if c:
                for l, v in enumerate(img):
                    acc[l] += c * v
        return tuple(x % m for x, m in zip(acc, R.moduli))

    def apply_power(self, a: Element, n: int) -> Element:
        if n < 0:
            raise ValueError("n must be >= 0")
        for _ in range(n):
            a = self.apply(a)
        return a

    def dense_powers(self, n: int) -> list[list[int]] | None:
        """Index tables for D^0, ..., D^n on a small ring (None above the dense cap)."""
        dense = self.ring.dense()
        if dense is None:
            return None
        cache = self.__dict__.setdefault("_powers", [])
        if not cache:
            cache.append(list(range(len(dense.elements))))
            cache.append([dense.index[self.apply(a)] for a in dense.elements])
        first = cache[1]
        while len(cache) <= n:
            prev = cache[-1]
            cache.append([first[i] for i in prev])
        return cache


def _leibniz_failure(R: FiniteRing, images: Sequence[Element], i: int, j: int) -> tuple[Element, Element] | None:
    gens = R.generators()
    prod_ij = R.mul_table[i][j]
    acc = [0] * R.k
    for c, img in zip(prod_ij, images):
        if c:
            for l, v in enumerate(img):
                acc[l] += c * v
    lhs = R.element(acc)
    rhs = R.add(R.mul(images[i], gens[j]), R.mul(gens[i], images[j]))
    return None if lhs == rhs else (lhs, rhs)


def make_derivation(R: FiniteRing, images: Sequence[Element]) -> Derivation:
    """Validate generator images and return the derivation they determine."""
    images = tuple(tuple(img) for img in images)
    if len(images) != R.k:
        raise DimensionMismatch(f"expected {R.k} generator images, got {len(images)}")
    images = tuple(R.validate(img) for img in images)
    for i, img in enumerate(images):
        if R.int_mul(R.moduli[i], img) != R.zero:
            raise OrderViolation(
                f"D(g{i+1}) = {img} is not killed by the order {R.moduli[i]} of g{i+1}", index=i)
    for i in range(R.k):
        for j in range(R.k):
            bad = _leibniz_failure(R, images, i, j)
            if bad is not None:
                raise LeibnizViolation(
                    f"D(g{i+1}g{j+1}) = {bad[0]} but D(g{i+1})g{j+1} + g{i+1}D(g{j+1}) = {bad[1]}",
                    pair=(i, j))
    return Derivation(R, images)


def zero_derivation(R: FiniteRing) -> Derivation:
    return Derivation(R, tuple(R.zero for _ in range(R.k)))


def inner_derivation(R: FiniteRing, b: Element) -> Derivation:
    """a -> ba - ab."""
    b = R.validate(b)
    images = [R.sub(R.mul(b, g), R.mul(g, b)) for g in R.generators()]
    D = make_derivation(R, images)
    return Derivation(R, D.images, inner=b)


def product_derivation(D1: Derivation, D2: Derivation) -> Derivation:
    """D1 x D2 on the direct product of their rings."""
    R1, R2 = D1.ring, D2.ring
    R = build_product(R1, R2)
    images = [img + (0,) * R2.k for img in D1.images] + [(0,) * R1.k + img for img in D2.images]
    inner = D1.inner + D2.inner if D1.inner is not None and D2.inner is not None else None
    return Derivation(make_derivation(R, images).ring, tuple(images), inner=inner)


def apply(D: Derivation, a: Element) -> Element:
    return D.apply(D.ring.validate(a))


def apply_power(D: Derivation, a: Element, n: int) -> Element:
    return D.apply_power(D.ring.validate(a), n)


def leibniz_power(D: Derivation, a: Element, b: Element, n: int) -> Element:
    """sum_k C(n, k) D^k(a) D^(n-k)(b), which equals D^n(ab)."""
    R = D.ring
    if n < 0:
        raise ValueError("n must be >= 0")
    da = [a]
    db = [b]
    for _ in range(n):
        da.append(D.apply(da[-1]))
        db.append(D.apply(db[-1]))
    acc = R.zero
    for k in range(n + 1):
        acc = R.add(acc, R.int_mul(comb(n, k), R.mul(da[k], db[n - k])))
    return acc


def _torsion(R: FiniteRing, m: int) -> list[Element]:
    return [x for x in R.elements() if R.int_mul(m, x) == R.zero]


def enumerate_derivations(R: FiniteRing, cap: int | None = None) -> list[Derivation]:
    """Every derivation of R, in lexicographic order of the image tuples.

    Candidates for D(g_i) are restricted to the m_i-torsion; a depth-first
    search checks each Leibniz constraint as soon as all images it mentions
    are fixed.
    """
    cap = DERIVATION_CAP if cap is None else cap
    R.check_cap()
    candidates = [_torsion(R, m) for m in R.moduli]
    space = prod(len(c) for c in candidates)
    if space > cap:
        raise SizeCapExceeded(f"{space} candidate image tuples exceed cap {cap}", size=space, cap=cap)
    k = R.k
    ready: list[list[tuple[int, int]]] = [[] for _ in range(k)]
    for i, j in itertools.product(range(k), repeat=2):
        support = [l for l, c in enumerate(R.mul_table[i][j]) if c]
        ready[max([i, j] + support)].append((i, j))
    found: list[Derivation] = []
    images: list[Element] = [R.zero] * k

    def search(pos: int) -> None:
        if pos == k:
            found.append(Derivation(R, tuple(images)))
            return
        for cand in candidates[pos]:
            images[pos] = cand
            if all(_leibniz_failure(R, images, i, j) is None for i, j in ready[pos]):
                search(pos + 1)
        images[pos] = R.zero

    search(0)
    return found
