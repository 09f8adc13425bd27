"""Named (ring, derivation) pairs used as worked examples and test corpus."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .derivation import Derivation, inner_derivation, make_derivation, zero_derivation
from .finring import (
    Element,
    FiniteRing,
    build_matrix_ring,
    build_product,
    build_structure,
    build_triangular_ring,
    build_truncated_poly,
    build_zn,
)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    ring: FiniteRing
    derivation: Derivation
    description: str


def matrix_unit(R: FiniteRing, label: str) -> Element:
    """The generator with the given label, e.g. ``E12``."""
    idx = R.labels.index(label)
    return R.generators()[idx]


def formal_derivative_images(m: int, e: int) -> list[Element]:
    """Images of d/dt on the basis 1, t, ..., t^(e-1) of Z/m[t]/(t^e).

    These define a derivation only when the truncation is compatible
    (e divisible by m); ``make_derivation`` rejects the rest.
    """
    images = []
    for i in range(e):
        img = [0] * e
        if i >= 1:
            img[i - 1] = i % m
        images.append(tuple(img))
    return images


def euler_images(m: int, e: int) -> list[Element]:
    """Images of t d/dt: t^i -> i t^i.  Always a derivation of Z/m[t]/(t^e)."""
    return [tuple((i % m) if j == i else 0 for j in range(e)) for i in range(e)]


def z4_trivial() -> CorpusEntry:
    R = build_zn(4)
    return CorpusEntry("z4_trivial", R, zero_derivation(R), "Z_4 with D = 0")


def dual_numbers_ddt() -> CorpusEntry:
    R = build_truncated_poly(2, 2)
    D = make_derivation(R, formal_derivative_images(2, 2))
    return CorpusEntry("tdual", R, D, "Z_2[t]/(t^2) with d/dt")


def t2f2_inner() -> CorpusEntry:
    R = build_triangular_ring(2, 2)
    return CorpusEntry("t2f2_inner", R, inner_derivation(R, matrix_unit(R, "E12")),
                       "upper triangular T_2(F_2), inner derivation by E12")


def m2f2_inner() -> CorpusEntry:
    R = build_matrix_ring(2, 2)
    return CorpusEntry("m2f2_inner", R, inner_derivation(R, matrix_unit(R, "E12")),
                       "M_2(F_2), inner derivation by E12")


def z2xm2f2_inner() -> CorpusEntry:
    R = build_product(build_zn(2), build_matrix_ring(2, 2))
    return CorpusEntry("z2xm2f2_inner", R, inner_derivation(R, matrix_unit(R, "E12_2")),
                       "Z_2 x M_2(F_2), inner derivation by (0, E12)")


def z4t3_euler() -> CorpusEntry:
    R = build_truncated_poly(4, 3)
    D = make_derivation(R, euler_images(4, 3))
    return CorpusEntry("z4t3_euler", R, D, "Z_4[t]/(t^3) with t d/dt")


def default_corpus() -> list[CorpusEntry]:
    return [z4_trivial(), dual_numbers_ddt(), t2f2_inner(), m2f2_inner(), z2xm2f2_inner(), z4t3_euler()]


def monic_quotient_ring(m: int, lower: list[int]) -> FiniteRing:
    """Z/m[t]/(f) for f = t^e + lower[e-1] t^(e-1) + ... + lower[0]."""
    e = len(lower)
    # t^n in the basis 1..t^(e-1), for n < 2e - 1
    powers = [[int(i == n) for i in range(e)] for n in range(e)]
    for _ in range(e, 2 * e - 1):
        prev = powers[-1]
        top = prev[-1]
        shifted = [0] + prev[:-1]
        powers.append([(s - top * c) % m for s, c in zip(shifted, lower)])
    table = [[tuple(powers[i + j]) for j in range(e)] for i in range(e)]
    labels = ["1", "t"] + [f"t^{i}" for i in range(2, e)]
    return build_structure([m] * e, table, labels=labels[:e])


def scaled_ring(R: FiniteRing, c: int) -> FiniteRing:
    """Same additive group with product a*b := c ab (associative, usually non-unital)."""
    table = [[tuple((c * v) % m for v, m in zip(entry, R.moduli)) for entry in row] for row in R.mul_table]
    return build_structure(R.moduli, table)


def random_commutative_ring(rng: random.Random, max_size: int = 64) -> FiniteRing:
    """A random commutative ring of at most ``max_size`` elements, built from
    monic quotients of Z/m[t], rescaled products and direct products."""

    def piece(limit: int) -> FiniteRing:
        while True:
            m = rng.randint(2, 8)
            e = rng.randint(1, 3)
            if m ** e <= limit:
                break
        R = monic_quotient_ring(m, [rng.randrange(m) for _ in range(e)])
        if rng.random() < 0.3:
            R = scaled_ring(R, rng.randrange(m))
        return R

    R = piece(max_size)
    if R.size <= max_size // 2 and rng.random() < 0.5:
        R = build_product(R, piece(max_size // R.size))
    return R
