import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from skewrad.corpus import random_commutative_ring
from skewrad.errors import AssociativityViolation, OrderIncompatibility, ShapeError, SizeCapExceeded
from skewrad.finring import (
    build_matrix_ring,
    build_product,
    build_structure,
    build_triangular_ring,
    build_truncated_poly,
    build_zn,
    centre,
    embed_left,
    embed_right,
    enumerate_ideals,
    ideal_closure,
    is_ideal,
    make_ideal,
    quotient_ring,
)


def test_zn_has_unit_and_size():
    R = build_zn(4)
    assert R.size == 4 and R.unit == (1,)
    assert R.mul((2,), (2,)) == (0,)


def test_zn_from_structure_constants():
    R = build_structure([4], [[(1,)]])
    assert R.unit == (1,)
    assert list(R.elements()) == [(0,), (1,), (2,), (3,)]


def test_matrix_ring_products():
    R = build_matrix_ring(2, 2)
    assert R.size == 16 and R.labels == ("E11", "E12", "E21", "E22")
    E11, E12, E21, E22 = R.generators()
    assert R.mul(E12, E21) == E11
    assert R.mul(E21, E12) == E22
    assert R.mul(E12, E12) == R.zero
    assert R.unit == R.add(E11, E22)
    assert not R.is_commutative()


def test_triangular_and_truncated():
    T = build_triangular_ring(2, 2)
    assert T.size == 8 and T.labels == ("E11", "E12", "E22")
    P = build_truncated_poly(4, 3)
    assert P.size == 64 and P.is_commutative()
    t = P.generators()[1]
    assert P.power(t, 3) == P.zero and P.power(t, 2) != P.zero


def test_associativity_violation_is_detected():
    # g1 g1 = g2, g2 g1 = g1, rest zero: (g1 g1) g1 = g1 but g1 (g1 g1) = 0
    table = [[(0, 1), (0, 0)], [(1, 0), (0, 0)]]
    with pytest.raises(AssociativityViolation):
        build_structure([2, 2], table)


def test_order_incompatibility_is_detected():
    # g1 of order 2 but g1 g1 = g2 of order 3
    with pytest.raises(OrderIncompatibility):
        build_structure([2, 3], [[(0, 1), (0, 0)], [(0, 0), (0, 0)]])


def test_shape_errors():
    with pytest.raises(ShapeError):
        build_structure([2], [[(0, 0)]])
    with pytest.raises(ShapeError):
        build_structure([2], [[(3,)]])


def test_cap_is_enforced():
    with pytest.raises(SizeCapExceeded):
        build_matrix_ring(3, 2).check_cap(100)


def test_elementwise_product_matches_oracle():
    for R in (build_matrix_ring(2, 2), build_truncated_poly(4, 3), build_triangular_ring(2, 3)):
        rng = random.Random(3)
        elems = list(R.elements())
        for _ in range(200):
            a, b = rng.choice(elems), rng.choice(elems)
            assert R.mul(a, b) == oracles.mul(R, a, b)


def test_centre_of_matrix_ring_is_scalars():
    R = build_matrix_ring(2, 2)
    assert centre(R) == (R.zero, R.unit)


@pytest.mark.parametrize("R", [build_zn(4), build_zn(6), build_triangular_ring(2, 2),
                               build_matrix_ring(2, 2), build_truncated_poly(2, 3)],
                         ids=["z4", "z6", "t2f2", "m2f2", "z2t3"])
def test_ideal_lattice_matches_oracle(R):
    ours = {frozenset(I.elements) for I in enumerate_ideals(R)}
    assert ours == set(oracles.ideal_lattice(R))


def test_ideal_closure_of_e12_in_matrix_ring_is_everything():
    R = build_matrix_ring(2, 2)
    assert len(ideal_closure(R, [R.generators()[1]])) == 16


def test_product_embeddings_are_orthogonal():
    R1, R2 = build_zn(2), build_matrix_ring(2, 2)
    P = build_product(R1, R2)
    assert P.size == 32 and P.labels[0] == "1_1"
    for a in R1.elements():
        for b in R2.elements():
            assert P.mul(embed_left(R1, R2, a), embed_right(R1, R2, b)) == P.zero


@pytest.mark.parametrize("R", [build_zn(12), build_truncated_poly(4, 3), build_triangular_ring(2, 2),
                               build_product(build_zn(4), build_zn(6))],
                         ids=["z12", "z4t3", "t2f2", "z4xz6"])
def test_quotients_are_homomorphic_images(R):
    for I in enumerate_ideals(R):
        q = quotient_ring(R, I)
        Q = q.ring
        assert Q.size * len(I) == R.size
        elems = list(R.elements())
        for a in elems:
            assert q.project(q.lift(q.project(a))) == q.project(a)
            assert (q.project(a) == Q.zero) == (a in I)
        rng = random.Random(0)
        for _ in range(50):
            a, b = rng.choice(elems), rng.choice(elems)
            assert q.project(R.mul(a, b)) == Q.mul(q.project(a), q.project(b))
            assert q.project(R.add(a, b)) == Q.add(q.project(a), q.project(b))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_random_commutative_rings_are_valid(seed):
    R = random_commutative_ring(random.Random(seed))
    assert R.size <= 64 and R.is_commutative()
    elems = list(R.elements())
    rng = random.Random(seed)
    for _ in range(30):
        a, b, c = (rng.choice(elems) for _ in range(3))
        assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
        assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))


def test_is_ideal_rejects_one_sided():
    R = build_matrix_ring(2, 2)
    E11, E12, E21, E22 = R.generators()
    # first row: a right ideal, not two-sided
    row = [R.add(R.int_mul(x, E11), R.int_mul(y, E12)) for x in range(2) for y in range(2)]
    assert not is_ideal(R, row)
    assert is_ideal(R, make_ideal([R.zero]).elements)
