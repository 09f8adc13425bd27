"""Diagonalization of integer matrices over Z/M.

Z/M is a principal ideal ring, so any matrix can be brought to diagonal
form by invertible row and column operations built from extended gcds.
This is enough both to present a quotient of a finite abelian group as a
product of cyclic groups and to solve linear congruence systems.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b)``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@dataclass
class Diagonalization:
    """Result of ``P A Q = D`` over Z/M.

    ``diag[i]`` is the i-th diagonal entry (zero past the rank), ``rhs`` is
    ``P b`` when a right-hand side was supplied, and ``col`` / ``col_inv`` are
    ``Q`` and ``Q^{-1}`` as lists of rows.
    """

    modulus: int
    diag: list[int]
    rhs: list[int] | None
    col: list[list[int]]
    col_inv: list[list[int]]


def diagonalize_mod(matrix: list[list[int]], ncols: int, modulus: int,
                    rhs: list[int] | None = None) -> Diagonalization:
    M = modulus
    A = [[x % M for x in row] for row in matrix]
    b = None if rhs is None else [x % M for x in rhs]
    m, n = len(A), ncols
    Q = [[int(i == j) for j in range(n)] for i in range(n)]
    Qi = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_cols(c1, c2):
        for row in A:
            row[c1], row[c2] = row[c2], row[c1]
        for row in Q:
            row[c1], row[c2] = row[c2], row[c1]
        Qi[c1], Qi[c2] = Qi[c2], Qi[c1]

    def combine_rows(r, i):
        # zero A[i][r] against the pivot A[r][r]
        a, e = A[r][r], A[i][r]
        if e % a == 0:
            q = e // a
            ri, rr = A[i], A[r]
            A[i] = [(x - q * y) % M for x, y in zip(ri, rr)]
            if b is not None:
                b[i] = (b[i] - q * b[r]) % M
            return
        h, s, t = egcd(a, e)
        ah, eh = a // h, e // h
        rr, ri = A[r], A[i]
        A[r] = [(s * x + t * y) % M for x, y in zip(rr, ri)]
        A[i] = [(ah * y - eh * x) % M for x, y in zip(rr, ri)]
        if b is not None:
            br, bi = b[r], b[i]
            b[r] = (s * br + t * bi) % M
            b[i] = (ah * bi - eh * br) % M

    def combine_cols(r, j):
        a, e = A[r][r], A[r][j]
        if e % a == 0:
            q = e // a
            for row in A:
                row[j] = (row[j] - q * row[r]) % M
            for row in Q:
                row[j] = (row[j] - q * row[r]) % M
            Qi[r] = [(x + q * y) % M for x, y in zip(Qi[r], Qi[j])]
            return
        h, s, t = egcd(a, e)
        ah, eh = a // h, e // h
        for row in A:
            cr, cj = row[r], row[j]
            row[r] = (s * cr + t * cj) % M
            row[j] = (ah * cj - eh * cr) % M
        for row in Q:
            cr, cj = row[r], row[j]
            row[r] = (s * cr + t * cj) % M
            row[j] = (ah * cj - eh * cr) % M
        qr, qj = Qi[r], Qi[j]
        Qi[r] = [(ah * x + eh * y) % M for x, y in zip(qr, qj)]
        Qi[j] = [(s * y - t * x) % M for x, y in zip(qr, qj)]

    for r in range(min(m, n)):
        best = None
        for i in range(r, m):
            row = A[i]
            for j in range(r, n):
                v = row[j]
                if v:
                    g = gcd(v, M)
                    if best is None or g < best[0]:
                        best = (g, i, j)
                        if g == 1:
                            break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        if pi != r:
            A[pi], A[r] = A[r], A[pi]
            if b is not None:
                b[pi], b[r] = b[r], b[pi]
        if pj != r:
            swap_cols(pj, r)
        while True:
            for i in range(r + 1, m):
                if A[i][r]:
                    combine_rows(r, i)
            for j in range(r + 1, n):
                if A[r][j]:
                    combine_cols(r, j)
            if not any(A[i][r] for i in range(r + 1, m)):
                break

    diag = [A[i][i] if i < m else 0 for i in range(n)]
    if b is not None:
        # rows past the diagonal carry consistency conditions only
        b = b[:]
    return Diagonalization(M, diag, b, Q, Qi)


def solve_mod(matrix: list[list[int]], ncols: int, rhs: list[int], modulus: int) -> list[int] | None:
    """Find ``u`` with ``matrix @ u == rhs (mod modulus)``, or None if unsolvable."""
    M = modulus
    dz = diagonalize_mod(matrix, ncols, M, rhs)
    b = dz.rhs
    m = len(matrix)
    y = [0] * ncols
    for i in range(max(m, ncols)):
        bi = b[i] if i < m else 0
        d = dz.diag[i] if i < ncols else 0
        if d == 0:
            if bi:
                return None
            continue
        g = gcd(d, M)
        if bi % g:
            return None
        Mg = M // g
        y[i] = (bi // g) * pow(d // g, -1, Mg) % Mg if Mg > 1 else 0
    Q = dz.col
    return [sum(Q[r][c] * y[c] for c in range(ncols)) % M for r in range(ncols)]
