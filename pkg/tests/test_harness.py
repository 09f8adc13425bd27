import random

import pytest

from skewrad.corpus import default_corpus, dual_numbers_ddt, m2f2_inner, z4_trivial
from skewrad.derivation import zero_derivation
from skewrad.errors import NotInS, PreconditionFailed
from skewrad.finring import build_matrix_ring, build_zn
from skewrad.harness import (
    REPLAY_CHECKS,
    S_PROVENANCE,
    certify_nilpotent_skew_ideal,
    certify_theorem,
    compute_S,
    non_membership_evidence,
    quotient_transfer_check,
    replay_proof,
    semiprimitivity_certificate,
)
from skewrad.radical import nilradical
from skewrad.skewpoly import quasi_inverse_search

CORPUS = default_corpus()


@pytest.mark.parametrize("entry", CORPUS, ids=lambda e: e.name)
def test_theorem_certificate_passes(entry):
    cert = certify_theorem(entry.ring, entry.derivation, ring_id=entry.name)
    assert cert.passed
    assert cert.provenance == S_PROVENANCE
    assert all(ev.witness is not None for ev in cert.nonqr_evidence)


def test_z4_certificate_values():
    e = z4_trivial()
    cert = certify_theorem(e.ring, e.derivation)
    assert cert.S.elements == ((0,), (2,))
    assert cert.s_nilpotence_index == 2


def test_replay_on_z4():
    e = z4_trivial()
    rec = replay_proof(e.ring, e.derivation, (2,))
    assert rec.passed and set(rec.checks) == set(REPLAY_CHECKS)
    # f = -x2 for p = x2 since p^2 = 0
    assert rec.f.coeffs == ((0,), (2,))


def test_replay_rejects_elements_outside_S():
    e = dual_numbers_ddt()
    with pytest.raises(NotInS):
        replay_proof(e.ring, e.derivation, (0, 1))


def test_skew_ideal_over_S_is_nilpotent():
    e = default_corpus()[-1]
    S = compute_S(e.ring, e.derivation)
    cert = certify_nilpotent_skew_ideal(e.ring, e.derivation, S, rng=random.Random(1))
    assert cert.passed and cert.products_checked > 0


def test_transfer_obstruction_on_dual_numbers():
    e = dual_numbers_ddt()
    rep = quotient_transfer_check(e.ring, e.derivation)
    assert not rep.descends
    assert rep.witness == (0, 1) and rep.witness_image == (1, 0)


def test_transfer_descends_for_inner_derivation_of_triangular_ring():
    e = CORPUS[2]
    rep = quotient_transfer_check(e.ring, e.derivation)
    assert rep.descends and rep.compatible
    assert rep.quotient.size == 4
    # E12 lies in the radical, so the induced derivation is zero
    assert rep.quotient_derivation.is_zero()


def test_semiprimitivity_for_matrix_ring():
    e = m2f2_inner()
    cert = semiprimitivity_certificate(e.ring, e.derivation)
    assert cert.passed and cert.S.is_zero()
    assert len(cert.entries) == 15


def test_semiprimitivity_requires_zero_nilradical():
    e = z4_trivial()
    with pytest.raises(PreconditionFailed):
        semiprimitivity_certificate(e.ring, e.derivation)


def test_evidence_uses_ideal_multiples_when_x_a_is_nilpotent():
    R = build_matrix_ring(2, 2)
    D = zero_derivation(R)
    E12 = (0, 1, 0, 0)
    ev = non_membership_evidence(R, D, E12)
    assert ev.witness is not None
    assert ev.witness.coeffs[1] != E12
    assert quasi_inverse_search(ev.witness, 8).max_degree == 8


def test_S_for_zero_derivation_is_nilradical():
    R = build_zn(8)
    assert compute_S(R, zero_derivation(R)) == nilradical(R)
