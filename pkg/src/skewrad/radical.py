"""Quasi-regularity, Jacobson radical, upper nilradical and D-stable cores.

Everything here works directly in the (possibly non-unital) ring; there is
no adjoining of a unit.  For finite rings the Jacobson radical is nilpotent
and equals the upper nilradical; that equality is checked, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .derivation import Derivation
from .errors import InternalInconsistency, NotAnIdeal, NotNilpotent
from .finring import (
    Element,
    FiniteRing,
    IdealSet,
    additive_generators,
    ideal_closure,
    is_ideal,
    make_ideal,
    require_ideal,
    subgroup_span,
)


class QuasiRegularity(NamedTuple):
    regular: bool
    inverse: Element | None


class NilCheck(NamedTuple):
    nil: bool
    witness: Element | None


def _geometric_inverse(R: FiniteRing, a: Element, k: int) -> Element:
    total = R.zero
    x = a
    for _ in range(k - 1):
        total = R.add(total, x)
        x = R.mul(x, a)
    return R.neg(total)


def is_quasi_regular(R: FiniteRing, a: Element, cap: int | None = None) -> QuasiRegularity:
    """Two-sided quasi-regularity: some b has a + b - ab = 0 = a + b - ba."""
    a = R.validate(a)
    k = R.nilpotency_degree(a)
    if k is not None:
        return QuasiRegularity(True, _geometric_inverse(R, a, k))
    R.check_cap(cap)
    dense = R.dense()
    if dense is not None:
        ai = dense.index[a]
        add_row, mul_row, mul = dense.add[ai], dense.mul[ai], dense.mul
        for b in range(len(dense.elements)):
            s = add_row[b]
            if s == mul_row[b] and s == mul[b][ai]:
                return QuasiRegularity(True, dense.elements[b])
        return QuasiRegularity(False, None)
    for b in R.elements():
        s = R.add(a, b)
        if s == R.mul(a, b) and s == R.mul(b, a):
            return QuasiRegularity(True, b)
    return QuasiRegularity(False, None)


def _quasi_regular_set(R: FiniteRing, cap: int | None) -> set[Element]:
    return {a for a in R.elements() if is_quasi_regular(R, a, cap).regular}


def _power_ideal(R: FiniteRing, P: IdealSet, I: IdealSet, cap: int | None = None) -> IdealSet:
    """Additive span of all products xy with x in P, y in I."""
    pg = additive_generators(R, P.elements)
    ig = additive_generators(R, I.elements)
    products = {R.mul(x, y) for x in pg for y in ig}
    return make_ideal(subgroup_span(R, products, cap=cap))


def nilpotence_index(R: FiniteRing, I: IdealSet) -> int:
    """Least k with I^k = 0."""
    require_ideal(R, I)
    power, k = I, 1
    while not power.is_zero():
        nxt = _power_ideal(R, power, I)
        if nxt == power:
            raise NotNilpotent(f"I^{k} = I^{k+1} is nonzero", index=k)
        power, k = nxt, k + 1
    return k


def is_nil_ideal(R: FiniteRing, I: IdealSet) -> NilCheck:
    require_ideal(R, I)
    for a in I.elements:
        if not R.is_nilpotent(a):
            return NilCheck(False, a)
    return NilCheck(True, None)


@dataclass
class RadicalReport:
    jacobson: IdealSet
    nilradical: IdealSet
    nilpotence_index: int
    # element outside J -> an element of its ideal that is not quasi-regular
    witnesses: dict[Element, Element] = field(default_factory=dict)


def _jacobson_with_witnesses(R: FiniteRing, cap: int | None) -> tuple[IdealSet, dict]:
    R.check_cap(cap)
    qr = _quasi_regular_set(R, cap)
    inside: set[Element] = set()
    witnesses: dict[Element, Element] = {}
    for a in R.elements():
        if a in inside:
            continue
        if a not in qr:
            witnesses[a] = a
            continue
        closure = ideal_closure(R, [a], cap=cap)
        bad = next((y for y in closure.elements if y not in qr), None)
        if bad is None:
            inside.update(closure.elements)
        else:
            witnesses[a] = bad
    J = make_ideal(inside, additive_generators(R, inside))
    if not is_ideal(R, J.elements):
        raise InternalInconsistency("quasi-regular principal ideals did not sum to an ideal")
    return J, witnesses


def jacobson_radical(R: FiniteRing, cap: int | None = None) -> IdealSet:
    """All a whose principal ideal consists of quasi-regular elements."""
    J, _ = _jacobson_with_witnesses(R, cap)
    try:
        nilpotence_index(R, J)
    except NotNilpotent as exc:
        raise InternalInconsistency("Jacobson radical of a finite ring is not nilpotent") from exc
    return J


def nilradical(R: FiniteRing, cap: int | None = None) -> IdealSet:
    """Largest nil ideal.  Computed as J(R) after checking every element of J
    is nilpotent, which must hold for finite rings."""
    J = jacobson_radical(R, cap)
    check = is_nil_ideal(R, J)
    if not check.nil:
        raise InternalInconsistency(f"radical element {check.witness} is not nilpotent",
                                    element=check.witness)
    return J


def radical_report(R: FiniteRing, cap: int | None = None) -> RadicalReport:
    J, witnesses = _jacobson_with_witnesses(R, cap)
    N = nilradical(R, cap)
    if N != J:
        raise InternalInconsistency("nilradical differs from Jacobson radical")
    return RadicalReport(J, N, nilpotence_index(R, J), witnesses)


def is_d_stable(D: Derivation, I: IdealSet) -> bool:
    return all(D.apply(a) in I for a in I.elements)


def d_stable_core(R: FiniteRing, D: Derivation, I: IdealSet) -> IdealSet:
    """Largest D-stable ideal inside I: {a in I : D^n(a) in I for all n}.

    Computed by the chain K_0 = I, K_{j+1} = {a in K_j : D(a) in K_j}, which
    strictly shrinks until it stabilizes.
    """
    require_ideal(R, I)
    current = I
    while True:
        kept = [a for a in current.elements if D.apply(a) in current]
        if len(kept) == len(current):
            break
        current = make_ideal(kept)
    K = make_ideal(current.elements, additive_generators(R, current.elements))
    if not is_ideal(R, K.elements):
        raise NotAnIdeal("D-stable core is not an ideal; the derivation is invalid")
    return K
