"""Multilinear polynomial identities on finite rings.

An identity of arity d is a Z-combination of the words x_s(1) ... x_s(d)
over permutations s.  Because such an f is additive in each argument, it
vanishes on R iff it vanishes on every tuple of additive generators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .errors import ArityMismatch, PreconditionFailed
from .finring import Element, FiniteRing, centre, ideal_closure
from .radical import nilradical


@dataclass(frozen=True)
class MultilinearIdentity:
    """``terms`` maps 0-based permutations (as tuples) to integer coefficients."""

    arity: int
    terms: tuple[tuple[tuple[int, ...], int], ...]

    def __post_init__(self):
        target = tuple(range(self.arity))
        for perm, _ in self.terms:
            if tuple(sorted(perm)) != target:
                raise ValueError(f"{perm} is not a permutation of {self.arity} letters")

    def has_unit_coefficient(self) -> bool:
        return any(c == 1 for _, c in self.terms)

    def coefficient(self, perm: Sequence[int]) -> int:
        perm = tuple(perm)
        return sum(c for p, c in self.terms if p == perm)

    def __str__(self) -> str:
        return format_identity(self)


def make_identity(arity: int, terms) -> MultilinearIdentity:
    """Combine duplicate permutations and drop zero coefficients."""
    acc: dict[tuple[int, ...], int] = {}
    for perm, c in terms:
        perm = tuple(perm)
        acc[perm] = acc.get(perm, 0) + c
    return MultilinearIdentity(arity, tuple((p, c) for p, c in acc.items() if c))


def _sign(perm: Sequence[int]) -> int:
    sign, seen = 1, set()
    for start in range(len(perm)):
        if start in seen:
            continue
        length, j = 0, start
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def standard_identity(d: int) -> MultilinearIdentity:
    """S_d = sum over permutations s of sgn(s) x_s(1) ... x_s(d)."""
    if d < 2:
        raise ValueError("d must be >= 2")
    return MultilinearIdentity(d, tuple((p, _sign(p)) for p in itertools.permutations(range(d))))


def format_identity(f: MultilinearIdentity) -> str:
    parts = []
    for perm, c in f.terms:
        word = "*".join(f"x{i+1}" for i in perm)
        mag = abs(c)
        body = word if mag == 1 else f"{mag}*{word}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts) if parts else "0"


def eval_identity(R: FiniteRing, f: MultilinearIdentity, args: Sequence[Element]) -> Element:
    if len(args) != f.arity:
        raise ArityMismatch(f"identity has arity {f.arity}, got {len(args)} arguments")
    args = [R.validate(a) for a in args]
    acc = R.zero
    for perm, c in f.terms:
        word = args[perm[0]]
        for i in perm[1:]:
            word = R.mul(word, args[i])
        acc = R.add(acc, R.int_mul(c, word))
    return acc


class IdentityCheck(NamedTuple):
    holds: bool
    witness: tuple[Element, ...] | None


def holds_on(R: FiniteRing, f: MultilinearIdentity) -> IdentityCheck:
    """Check f on every tuple of additive generators; the first failing tuple
    in lexicographic generator order is returned as witness."""
    gens = R.generators()
    for combo in itertools.product(gens, repeat=f.arity):
        if eval_identity(R, f, combo) != R.zero:
            return IdentityCheck(False, combo)
    return IdentityCheck(True, None)


def standard_degree(R: FiniteRing, max_d: int = 6) -> int | None:
    """Smallest d <= max_d with S_d an identity of R, if any."""
    for d in range(2, max_d + 1):
        if holds_on(R, standard_identity(d)).holds:
            return d
    return None


@dataclass
class CentreReport:
    passed: bool
    centre_size: int
    checked: int
    # nonzero a whose ideal meets the centre only in 0 (should never happen)
    violations: list[Element] = field(default_factory=list)
    # a -> a nonzero central element of the ideal generated by a
    witnesses: dict[Element, Element] = field(default_factory=dict)


def centre_intersection_check(R: FiniteRing, cap: int | None = None) -> CentreReport:
    """For N(R) = 0, check that every nonzero principal ideal meets the centre
    in a nonzero element.  Every nonzero ideal contains a nonzero principal
    ideal, so this covers all ideals."""
    N = nilradical(R, cap)
    if not N.is_zero():
        raise PreconditionFailed("the nilradical is nonzero", nilradical_size=len(N))
    Z = set(centre(R, cap))
    report = CentreReport(True, len(Z), 0)
    for a in R.elements():
        if a == R.zero:
            continue
        report.checked += 1
        I = ideal_closure(R, [a], cap=cap)
        hit = next((z for z in I.elements if z != R.zero and z in Z), None)
        if hit is None:
            report.violations.append(a)
            report.passed = False
        else:
            report.witnesses[a] = hit
    return report
