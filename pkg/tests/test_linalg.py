import itertools

from hypothesis import given, settings, strategies as st

from skewrad.linalg import diagonalize_mod, egcd, solve_mod


@given(st.integers(-500, 500), st.integers(-500, 500))
def test_egcd_bezout(a, b):
    g, s, t = egcd(a, b)
    assert s * a + t * b == g
    assert g >= 0
    if a or b:
        assert a % g == 0 and b % g == 0


def _matmul(A, B, M):
    return [[sum(A[i][l] * B[l][j] for l in range(len(B))) % M for j in range(len(B[0]))]
            for i in range(len(A))]


matrices = st.integers(2, 12).flatmap(
    lambda M: st.tuples(st.just(M), st.integers(1, 3).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, M - 1), min_size=c, max_size=c), min_size=1, max_size=4))))


@settings(max_examples=150)
@given(matrices)
def test_column_transform_is_invertible(data):
    M, A = data
    n = len(A[0])
    dz = diagonalize_mod(A, n, M)
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    assert _matmul(dz.col, dz.col_inv, M) == ident


@settings(max_examples=150)
@given(matrices, st.data())
def test_solve_mod_agrees_with_brute_force(data, draw):
    M, A = data
    n = len(A[0])
    rhs = draw.draw(st.lists(st.integers(0, M - 1), min_size=len(A), max_size=len(A)))
    brute = [u for u in itertools.product(range(M), repeat=n)
             if all(sum(r[j] * u[j] for j in range(n)) % M == b for r, b in zip(A, rhs))]
    sol = solve_mod(A, n, rhs, M)
    if brute:
        assert sol is not None
        assert all(sum(r[j] * sol[j] for j in range(n)) % M == b for r, b in zip(A, rhs))
    else:
        assert sol is None
