"""Certificates for the nil D-ideal theorem on concrete finite rings.

For a finite ring R with derivation D, the set S = J(R[x;D]) ∩ R is taken to
be the largest D-stable ideal inside the nilradical N(R).  The theorem puts
S inside that core; conversely the core is nilpotent, so its skew extension
is a nilpotent, hence quasi-regular, ideal of R[x;D].  Every report labels S
as obtained this way.

``replay_proof`` rebuilds the objects the argument manipulates for an
element a of S: the quasi-inverse f of x a, its coefficients b_i, the
coefficient equations they satisfy and the membership claims modulo N.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import comb

from .derivation import Derivation, make_derivation
from .errors import CertificateFailure, NotInS, NotNilpotent, PreconditionFailed, QuasiInverseFailure
from .finring import Element, FiniteRing, IdealSet, additive_generators, is_ideal, quotient_ring
from .radical import d_stable_core, is_d_stable, is_nil_ideal, nilpotence_index, nilradical
from .skewpoly import (
    NotFound,
    SkewPoly,
    circle,
    extract_coefficient,
    make_poly,
    monomial,
    poly_mul,
    poly_sub,
    quasi_inverse_nilpotent,
    quasi_inverse_search,
    x_times,
)

S_PROVENANCE = "S = D-stable core of N(R), identified with J(R[x;D]) ∩ R by the nil D-ideal theorem"

DEFAULT_MAX_DEGREE = 8
EXHAUSTIVE_LIMIT = 64
DEFAULT_SAMPLES = 1000


def compute_S(R: FiniteRing, D: Derivation, cap: int | None = None) -> IdealSet:
    """J(R[x;D]) ∩ R for finite R, as the largest D-stable ideal inside N(R)."""
    return d_stable_core(R, D, nilradical(R, cap))


def _pick(rng: random.Random, items: list, exhaustive_limit: int, samples: int) -> list:
    if len(items) <= exhaustive_limit:
        return items
    return [items[rng.randrange(len(items))] for _ in range(samples)]


# -- S[x;D] is nilpotent ----------------------------------------------------------

@dataclass
class SkewNilpotenceCertificate:
    passed: bool
    index: int
    degree_bound: int
    products_checked: int
    exhaustive: bool
    quasi_inverses_checked: int


def certify_nilpotent_skew_ideal(R: FiniteRing, D: Derivation, S: IdealSet, *,
                                 degree_bound: int = 4, samples: int = 200,
                                 product_budget: int = 20_000,
                                 rng: random.Random | None = None) -> SkewNilpotenceCertificate:
    """Check that every product of k polynomials with coefficients in S vanishes
    (k the nilpotence index of S), and that sampled members of S[x;D] have
    geometric-series quasi-inverses.

    Products are multilinear, so it is enough to multiply monomials x^i g with
    g running over additive generators of S.
    """
    rng = rng or random.Random(0)
    k = nilpotence_index(R, S)
    if S.is_zero():
        return SkewNilpotenceCertificate(True, k, degree_bound, 0, True, 0)
    gens = additive_generators(R, S.elements)
    monos = [monomial(D, i, g) for i in range(degree_bound + 1) for g in gens]
    total = len(monos) ** k
    exhaustive = total <= product_budget
    if exhaustive:
        tuples = itertools.product(monos, repeat=k)
    else:
        tuples = ([monos[rng.randrange(len(monos))] for _ in range(k)] for _ in range(product_budget))
    checked = 0
    for combo in tuples:
        prod_ = combo[0]
        for q in combo[1:]:
            prod_ = poly_mul(prod_, q)
        checked += 1
        if not prod_.is_zero():
            raise CertificateFailure("product of k polynomials over S is nonzero",
                                     factors=combo, product=prod_)
    elems = list(S.elements)
    for _ in range(samples):
        deg = rng.randrange(degree_bound + 1)
        p = make_poly(D, [elems[rng.randrange(len(elems))] for _ in range(deg + 1)])
        try:
            quasi_inverse_nilpotent(p, k)
        except NotNilpotent as exc:
            raise CertificateFailure("member of S[x;D] is not nilpotent", poly=p) from exc
    return SkewNilpotenceCertificate(True, k, degree_bound, checked, exhaustive, samples)


# -- replaying the argument on one element ------------------------------------------

REPLAY_CHECKS = (
    "right_circle",          # f + xa - f(xa) = 0
    "left_circle",           # f + xa - (xa)f = 0
    "constant_term_zero",    # b_0 = 0
    "top_coefficient",       # b_n a = 0
    "middle_coefficients",   # b_i - b_{i-1} a + D(b_i) a = 0, 2 <= i <= n
    "linear_coefficient",    # b_1 + a + D(b_1) a = 0
    "commutator_vanishes",   # f(xa) - (xa)f = 0
    "commutator_coefficients",  # binomial expansion of each coefficient matches and is 0
    "claim_chain",           # b_{n-j+1} a^j in N for j = 1..n
    "derivative_term",       # D(b_1) a^{n+1} in N
    "power_in_nilradical",   # a^{n+1} in N
)


@dataclass
class ReplayRecord:
    a: Element
    f: SkewPoly
    n: int
    checks: dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def _commutator_expansion(R: FiniteRing, D: Derivation, a: Element, b: list[Element], m: int) -> Element:
    """Coefficient of x^m in f(xa) - (xa)f written out with the commutation rule:
    b_{m-1} a - D(b_m) a - sum_l (-1)^l C(m-1+l, l) D^l(a) b_{m-1+l}."""
    n = len(b) - 1
    coef = lambda i: b[i] if 0 <= i <= n else R.zero
    acc = R.sub(R.mul(coef(m - 1), a), R.mul(D.apply(coef(m)), a))
    if m == 0:
        return acc
    da = a
    for l in range(0, n - m + 2):
        i = m - 1 + l
        term = R.int_mul((-1) ** l * comb(i, l), R.mul(da, coef(i)))
        acc = R.sub(acc, term)
        da = D.apply(da)
    return acc


def replay_proof(R: FiniteRing, D: Derivation, a: Element, *, S: IdealSet | None = None,
                 N: IdealSet | None = None) -> ReplayRecord:
    a = R.validate(a)
    N = nilradical(R) if N is None else N
    S = d_stable_core(R, D, N) if S is None else S
    if a not in S:
        raise NotInS(f"{a} is not in S", element=a)
    p = x_times(D, a)
    k = nilpotence_index(R, S)
    try:
        f = quasi_inverse_nilpotent(p, k)
    except NotNilpotent as exc:
        raise QuasiInverseFailure(f"x*{a} is not nilpotent of index {k}", element=a) from exc
    checks: dict[str, bool] = {}
    checks["right_circle"] = circle(f, p).is_zero()
    checks["left_circle"] = circle(p, f).is_zero()
    b = list(f.coeffs) or [R.zero]
    n = len(b) - 1
    zero = R.zero
    Da = lambda y: D.apply(y)
    checks["constant_term_zero"] = b[0] == zero
    checks["top_coefficient"] = R.mul(b[n], a) == zero
    checks["middle_coefficients"] = all(
        R.add(R.sub(b[i], R.mul(b[i - 1], a)), R.mul(Da(b[i]), a)) == zero for i in range(2, n + 1))
    checks["linear_coefficient"] = (
        n < 1 or R.add(R.add(b[1], a), R.mul(Da(b[1]), a)) == zero)
    comm = poly_sub(poly_mul(f, p), poly_mul(p, f))
    checks["commutator_vanishes"] = comm.is_zero()
    checks["commutator_coefficients"] = all(
        _commutator_expansion(R, D, a, b, m) == extract_coefficient(comm, m) == zero
        for m in range(0, n + 2))
    powers = [None, a]
    for _ in range(n + 1):
        powers.append(R.mul(powers[-1], a))
    checks["claim_chain"] = all(R.mul(b[n - j + 1], powers[j]) in N for j in range(1, n + 1))
    checks["derivative_term"] = n < 1 or R.mul(Da(b[1]), powers[n + 1]) in N
    checks["power_in_nilradical"] = powers[n + 1] in N
    return ReplayRecord(a, f, n, checks)


# -- evidence that elements outside S are outside the radical ------------------------

@dataclass
class NonMembershipEvidence:
    """``witness`` lies in the ideal of R[x;D] generated by ``element`` and has
    no two-sided quasi-inverse of degree <= ``bound``; None when no such
    polynomial was found among the candidates tried."""

    element: Element
    witness: SkewPoly | None
    bound: int


def non_membership_evidence(R: FiniteRing, D: Derivation, a: Element,
                            max_degree: int = DEFAULT_MAX_DEGREE) -> NonMembershipEvidence:
    """Search x(ca) and x(ac) for c in R, starting with x a itself.

    If a were in J(R[x;D]) every such polynomial would be quasi-regular, so a
    bounded miss is evidence (not proof) that a lies outside the radical.
    """
    seen = set()
    candidates = [a] + [R.mul(c, a) for c in R.elements()] + [R.mul(a, c) for c in R.elements()]
    for y in candidates:
        if y == R.zero or y in seen:
            continue
        seen.add(y)
        p = x_times(D, y)
        if isinstance(quasi_inverse_search(p, max_degree), NotFound):
            return NonMembershipEvidence(a, p, max_degree)
    return NonMembershipEvidence(a, None, max_degree)


# -- the full certificate -------------------------------------------------------------

@dataclass
class TheoremCertificate:
    ring_id: str
    derivation_id: str
    S: IdealSet
    nilradical: IdealSet
    s_nilpotence_index: int
    is_ideal: bool
    d_stable: bool
    nil: bool
    skew: SkewNilpotenceCertificate
    replay_results: list[ReplayRecord]
    nonqr_evidence: list[NonMembershipEvidence]
    provenance: str = S_PROVENANCE

    @property
    def skew_nilpotence_checked(self) -> bool:
        return self.skew.passed

    @property
    def passed(self) -> bool:
        return (self.is_ideal and self.d_stable and self.nil and self.skew.passed
                and all(r.passed for r in self.replay_results))


def certify_theorem(R: FiniteRing, D: Derivation, *, ring_id: str = "R", derivation_id: str = "D",
                    max_degree: int = DEFAULT_MAX_DEGREE, rng: random.Random | None = None,
                    evidence: bool = True, cap: int | None = None) -> TheoremCertificate:
    """Compute S and check that it is a nil D-ideal whose skew extension is
    nilpotent, replaying the argument for members of S."""
    rng = rng or random.Random(0)
    N = nilradical(R, cap)
    S = d_stable_core(R, D, N)
    ideal_ok = is_ideal(R, S.elements)
    stable = is_d_stable(D, S)
    nil = is_nil_ideal(R, S).nil
    index = nilpotence_index(R, S)
    skew = certify_nilpotent_skew_ideal(R, D, S, rng=rng)
    members = _pick(rng, list(S.elements), EXHAUSTIVE_LIMIT, DEFAULT_SAMPLES)
    replays = [replay_proof(R, D, a, S=S, N=N) for a in members]
    outside: list[NonMembershipEvidence] = []
    if evidence:
        rest = [a for a in R.elements() if a not in S]
        for a in _pick(rng, rest, EXHAUSTIVE_LIMIT, DEFAULT_SAMPLES):
            outside.append(non_membership_evidence(R, D, a, max_degree))
    return TheoremCertificate(ring_id, derivation_id, S, N, index, ideal_ok, stable, nil,
                              skew, replays, outside)


# -- N(R) = 0 ----------------------------------------------------------------------------

@dataclass
class SemiprimitivityEntry:
    a: Element
    # bounded search result for x a itself
    x_a_quasi_inverse: SkewPoly | None
    evidence: NonMembershipEvidence


@dataclass
class SemiprimitivityCertificate:
    S: IdealSet
    max_degree: int
    entries: list[SemiprimitivityEntry]

    @property
    def passed(self) -> bool:
        return self.S.is_zero() and all(e.evidence.witness is not None for e in self.entries)

    @property
    def direct_not_found(self) -> int:
        return sum(e.x_a_quasi_inverse is None for e in self.entries)


def semiprimitivity_certificate(R: FiniteRing, D: Derivation, *, max_degree: int = DEFAULT_MAX_DEGREE,
                                rng: random.Random | None = None,
                                cap: int | None = None) -> SemiprimitivityCertificate:
    """With N(R) = 0, S must be 0, i.e. R[x;D] is semiprimitive.

    For each sampled nonzero a the bounded search is run on x a.  A hit there
    does not contradict semiprimitivity (x E12 over M_2 with D = 0 is
    nilpotent), so the evidence recorded is a polynomial in the ideal of a
    with no quasi-inverse up to the bound.
    """
    rng = rng or random.Random(0)
    N = nilradical(R, cap)
    if not N.is_zero():
        raise PreconditionFailed("the nilradical is nonzero", nilradical_size=len(N))
    S = d_stable_core(R, D, N)
    nonzero = [a for a in R.elements() if a != R.zero]
    entries = []
    for a in _pick(rng, nonzero, EXHAUSTIVE_LIMIT, DEFAULT_SAMPLES):
        direct = quasi_inverse_search(x_times(D, a), max_degree)
        found = None if isinstance(direct, NotFound) else direct
        ev = non_membership_evidence(R, D, a, max_degree)
        entries.append(SemiprimitivityEntry(a, found, ev))
    return SemiprimitivityCertificate(S, max_degree, entries)


# -- passing to R/N(R) -----------------------------------------------------------------------

@dataclass
class TransferReport:
    nilradical: IdealSet
    descends: bool
    # first a in N(R) with D(a) outside N(R)
    witness: Element | None = None
    witness_image: Element | None = None
    quotient: FiniteRing | None = None
    quotient_derivation: Derivation | None = None
    inner_image: Element | None = None
    compatible: bool | None = None


def quotient_transfer_check(R: FiniteRing, D: Derivation, cap: int | None = None) -> TransferReport:
    """Decide whether D induces a derivation of R/N(R).

    It does exactly when N(R) is D-stable; otherwise the first element of N(R)
    pushed out of N(R) by D is recorded as the obstruction.
    """
    N = nilradical(R, cap)
    for a in N.elements:
        image = D.apply(a)
        if image not in N:
            return TransferReport(N, False, witness=a, witness_image=image)
    quot = quotient_ring(R, N, cap)
    Q = quot.ring
    images = [quot.project(D.apply(quot.lift(h))) for h in Q.generators()]
    DQ = make_derivation(Q, images)
    compatible = all(quot.project(D.apply(a)) == DQ.apply(quot.project(a)) for a in R.elements())
    inner_image = quot.project(D.inner) if D.inner is not None else None
    if inner_image is not None:
        DQ = Derivation(Q, DQ.images, inner=inner_image)
    return TransferReport(N, True, quotient=Q, quotient_derivation=DQ,
                          inner_image=inner_image, compatible=compatible)
