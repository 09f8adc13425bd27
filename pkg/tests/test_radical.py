import random

import pytest

import oracles
from skewrad.corpus import default_corpus, random_commutative_ring
from skewrad.derivation import enumerate_derivations, zero_derivation
from skewrad.errors import NotAnIdeal
from skewrad.finring import (
    build_matrix_ring,
    build_product,
    build_triangular_ring,
    build_truncated_poly,
    build_zn,
    ideal_closure,
    make_ideal,
)
from skewrad.radical import (
    d_stable_core,
    is_d_stable,
    is_nil_ideal,
    is_quasi_regular,
    jacobson_radical,
    nilpotence_index,
    nilradical,
    radical_report,
)

SMALL = {
    "z4": build_zn(4),
    "z12": build_zn(12),
    "t2f2": build_triangular_ring(2, 2),
    "m2f2": build_matrix_ring(2, 2),
    "z2t3": build_truncated_poly(2, 3),
    "z2xz4": build_product(build_zn(2), build_zn(4)),
}


@pytest.mark.parametrize("name", sorted(SMALL))
def test_quasi_regularity_matches_dorroh_oracle(name):
    R = SMALL[name]
    for a in R.elements():
        res = is_quasi_regular(R, a)
        assert res.regular == oracles.quasi_regular(R, a)
        if res.regular:
            b = res.inverse
            s = R.add(a, b)
            assert s == R.mul(a, b) == R.mul(b, a)


@pytest.mark.parametrize("name", sorted(SMALL))
def test_jacobson_matches_oracle(name):
    R = SMALL[name]
    assert frozenset(jacobson_radical(R).elements) == oracles.jacobson(R)


@pytest.mark.parametrize("seed", range(6))
def test_jacobson_matches_oracle_on_random_rings(seed):
    R = random_commutative_ring(random.Random(seed), max_size=32)
    assert frozenset(jacobson_radical(R).elements) == oracles.jacobson(R)


def test_known_radicals():
    assert jacobson_radical(build_zn(4)).elements == ((0,), (2,))
    assert jacobson_radical(build_matrix_ring(2, 2)).is_zero()
    assert jacobson_radical(build_triangular_ring(2, 2)).elements == ((0, 0, 0), (0, 1, 0))


def test_zero_ring_like_square_zero_ring_is_all_radical():
    from skewrad.finring import build_structure
    R = build_structure([2, 2], [[(0, 0), (0, 0)], [(0, 0), (0, 0)]])
    assert len(nilradical(R)) == 4
    assert R.unit is None


def test_report_fields():
    rep = radical_report(build_truncated_poly(4, 3))
    assert rep.jacobson == rep.nilradical
    assert len(rep.nilradical) == 32
    # (2, t)^k: t^2 * ... the ideal (2,t) has index 4: 2t^2 * t... check directly
    N = rep.nilradical
    assert rep.nilpotence_index == nilpotence_index(build_truncated_poly(4, 3), N)
    for a, w in rep.witnesses.items():
        assert a not in rep.jacobson


def test_nilpotence_index_of_z8_radical():
    R = build_zn(8)
    assert nilpotence_index(R, nilradical(R)) == 3


@pytest.mark.parametrize("entry", default_corpus(), ids=lambda e: e.name)
def test_d_stable_core_is_largest_d_stable_ideal_in_nilradical(entry):
    R, D = entry.ring, entry.derivation
    N = nilradical(R)
    S = d_stable_core(R, D, N)
    assert is_d_stable(D, S) and S <= N
    assert is_nil_ideal(R, S).nil
    want = oracles.largest_d_stable_ideal_inside(R, D, frozenset(N.elements))
    assert frozenset(S.elements) == want


def test_d_stable_core_equals_iterated_definition():
    R = build_truncated_poly(2, 4)
    for D in enumerate_derivations(R):
        N = nilradical(R)
        S = d_stable_core(R, D, N)
        by_def = {a for a in R.elements() if all(D.apply_power(a, n) in N for n in range(R.size + 1))}
        assert set(S.elements) == by_def


def test_zero_derivation_core_is_whole_ideal():
    R = build_truncated_poly(4, 3)
    N = nilradical(R)
    assert d_stable_core(R, zero_derivation(R), N) == N


def test_core_requires_an_ideal():
    R = build_matrix_ring(2, 2)
    with pytest.raises(NotAnIdeal):
        d_stable_core(R, zero_derivation(R), make_ideal([R.zero, (1, 0, 0, 0)]))


def test_principal_ideal_of_radical_element_is_quasi_regular():
    R = build_triangular_ring(2, 3)
    J = jacobson_radical(R)
    for a in J.elements:
        for y in ideal_closure(R, [a]).elements:
            assert is_quasi_regular(R, y).regular
