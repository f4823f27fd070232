"""Recipes with constant-sign block vectors and two block sizes (methods 5-10)."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

import numpy as np

from ..claims import OptimalityClaim
from ..design import BlockedDesign, kron, pair_expand
from ..errors import ClassError, ParameterError
from ..info import IJForm, ij_eigenvalues
from ._common import MethodParams, build, matrix_of_order, need_positive, ones, pick, require


def alternating(m: int) -> np.ndarray:
    """Column (+2, -2, +2, ...) of length m: ceil(m/2) positive entries."""
    return np.array([[2 if r % 2 == 0 else -2] for r in range(m)], dtype=np.int64)


def _smallest_m1(half: int) -> int:
    for m1 in range(2, half, 2):
        if half % (m1 + 1) == 0:
            return m1
    raise ClassError(f"no even m1 ≥ 2 with (m1+1) dividing {half}")


def _two_size_layout(half: int, m1: int | None) -> tuple[int, int, int]:
    if m1 is None:
        m1 = _smallest_m1(half)
    require(m1 >= 2 and m1 % 2 == 0, f"m1 must be even and at least 2; got {m1}")
    require(half % (m1 + 1) == 0, f"(m1+1)={m1 + 1} must divide the number of pairs {half}")
    return m1, m1 + 2, half // (m1 + 1)


def method5(p: MethodParams) -> BlockedDesign:
    n, k, b = p.need("n", "k", "b")
    need_positive(n=n, k=k, b=b)
    require(n % 4 == 0, f"Method 5 needs N = bm ≡ 0 (mod 4); got N={n}")
    require(n % b == 0, f"b={b} must divide N={n}")
    m = n // b
    require(p.m is None or p.m == m, f"m={p.m} is inconsistent with N/b={m}")
    require(m % 2 == 1 and m >= 3, f"Method 5 needs an odd block size m ≥ 3; got m={m}")
    require(k <= b, f"Method 5 needs K ≤ b; got K={k}, b={b}")
    f = kron(pick(matrix_of_order(b), k, p.columns), alternating(m))
    claim = OptimalityClaim(("A", "D"), IJForm(Fraction(n) - Fraction(b, m), 0), "(N - b/m)I")
    return build(5, p, f, (m,) * b, claim)


def method6(p: MethodParams) -> BlockedDesign:
    n, k = p.need("n", "k")
    need_positive(n=n, k=k)
    require(n % 8 == 0, f"Method 6 needs N = 2p ≡ 0 (mod 8); got N={n}")
    half = n // 2
    m1, m2, b1 = _two_size_layout(half, p.m1)
    f = pair_expand(pick(matrix_of_order(half), k, p.columns))
    claim = OptimalityClaim(("A", "D"), IJForm(n, 0), "(1/4)F'F = N I", orthogonal=True)
    return build(6, p, f, (m1,) * b1 + (m2,) * b1, claim, (f"b1=b2={b1}, m1={m1}, m2={m2}",))


def method7(p: MethodParams) -> BlockedDesign:
    n, k = p.need("n", "k")
    need_positive(n=n, k=k)
    require(n % 8 == 4, f"Method 7 needs N ≡ 4 (mod 8); got N={n}")
    order = (n - 4) // 2
    require(order >= 1, f"Method 7 needs N ≥ 6; got N={n}")
    k1 = k // 2
    mixed = np.array([[1] * k1 + [-1] * (k - k1)], dtype=np.int64)
    rows = np.vstack([pick(matrix_of_order(order), k, p.columns), ones(1, k), mixed])
    m1, m2, b1 = _two_size_layout(n // 2, p.m1)
    eig = None
    if k >= 2:
        if k % 2 == 0:
            tail = [Fraction(n + 4 * k1 - 4)] * 2
        else:
            tail = [Fraction(n + 4 * k1 - 6), Fraction(n + 4 * k - 4 * k1 - 4)]
        eig = tuple([Fraction(n - 4)] * (k - 2) + tail)
    claim = OptimalityClaim(("A", "D"), IJForm(n - 4, 4), "(N-4)I + 4J", eig,
                            notes=("K1 in the eigenvalue list read as floor(K/2)",))
    notes = (f"H_p with p=(N-4)/2={order}", f"b1=b2={b1}, m1={m1}, m2={m2}")
    return build(7, p, pair_expand(rows), (m1,) * b1 + (m2,) * b1, claim, notes)


def method8(p: MethodParams) -> BlockedDesign:
    n, k = p.need("n", "k")
    need_positive(n=n, k=k)
    require(n % 4 == 3, f"Method 8 needs N ≡ 3 (mod 4); got N={n}")
    require(n % 3 == 0, f"Method 8 uses b=3 blocks, so 3 must divide N={n}")
    m = n // 3
    require(m % 8 == 1 and m > 1, f"Method 8 needs m ≡ 1 (mod 8), m > 1; got m={m}")
    paired = pair_expand(pick(matrix_of_order((n - 3) // 2), k, p.columns))
    parts = []
    for j in range(3):
        parts.append(paired[j * (m - 1) : (j + 1) * (m - 1)])
        parts.append(2 * ones(1, k))
    beta = 3 - Fraction(3, m)
    form = IJForm(n - 3, beta)
    claim = OptimalityClaim(("E",), form, "(N-3)I + 3J - (b/m)J", tuple(ij_eigenvalues(form, k)))
    return build(8, p, np.vstack(parts), (m,) * 3, claim)


def method9(p: MethodParams) -> BlockedDesign:
    (groups,) = p.need("groups")
    (k,) = p.need("k")
    need_positive(k=k)
    require(len(groups) >= 1, "Method 9 needs at least one group")
    parts, sizes = [], []
    alpha = Fraction(0)
    for b_i, m_i in groups:
        need_positive(b=b_i, m=m_i)
        require(k <= b_i, f"K={k} exceeds b_i={b_i}")
        parts.append(kron(pick(matrix_of_order(b_i), k), alternating(m_i)))
        sizes += [m_i] * b_i
        alpha += b_i * m_i - (Fraction(b_i, m_i) if m_i % 2 else 0)
    n = sum(sizes)
    require(p.n is None or p.n == n, f"N={p.n} is inconsistent with the groups (sum {n})")
    claim = OptimalityClaim(("TYPE_I",), IJForm(alpha, 0), "sum of per-group multiples of I")
    return build(9, p, np.vstack(parts), sizes, claim)


def rows_all_plus(h: np.ndarray, count: int, k: int) -> tuple[np.ndarray, list[int]]:
    """K columns of h and a row order in which the first `count` rows are all +1.

    Row 0 of a normalized matrix is already all +1. For further rows, search
    row tuples and sign patterns (lexicographically) for K columns on which
    each chosen row is constant, then negate rows that are constantly -1.
    """
    order = h.shape[0]
    if count == 1:
        return h[:, :k].copy(), list(range(order))
    for rows in combinations(range(1, order), count - 1):
        for signs in product((1, -1), repeat=count - 1):
            cols = [c for c in range(h.shape[1]) if all(h[r, c] == s for r, s in zip(rows, signs))]
            if len(cols) >= k:
                sub = h[:, cols[:k]].copy()
                for r, s in zip(rows, signs):
                    sub[r] *= s
                row_order = [0, *rows] + [r for r in range(1, order) if r not in rows]
                return sub[row_order], row_order
    raise ClassError(f"no {count} rows of H_{order} are constant on {k} columns")


def method10(p: MethodParams) -> BlockedDesign:
    b1, m1, i, k = p.need("b1", "m1", "i", "k")
    need_positive(b1=b1, m1=m1, i=i, k=k)
    require(i in (1, 2, 3), f"Method 10 needs i in {{1, 2, 3}}; got i={i}")
    require(m1 % 2 == 0, f"Method 10 needs m1 even; got m1={m1}")
    require(b1 - 2 * i - i * m1 >= 0, f"Method 10 needs b1 - 2i - i*m1 ≥ 0; got {b1 - 2 * i - i * m1}")
    n = b1 * m1 + i
    require(p.n is None or p.n == n, f"N={p.n} is inconsistent with b1*m1+i={n}")
    lmat, _ = rows_all_plus(matrix_of_order(b1), i, k)
    d1 = kron(lmat, alternating(m1))
    blocks = [list(d1[j * m1 : (j + 1) * m1]) for j in range(b1)]
    moved = [row for j in range(i) for row in blocks[j]]
    for t, row in enumerate(moved):
        blocks[i + t].append(row)
    for s in range(i):
        blocks[i + i * m1 + s].append(2 * np.ones(k, dtype=np.int64))
    kept = blocks[i:]
    f = np.vstack([np.array(blk) for blk in kept])
    claim = OptimalityClaim(("TYPE_I",), IJForm(b1 * m1, 0), "b1 m1 I", orthogonal=True)
    notes = (f"N = b1*m1 + i = {n}", f"first {i} rows of H_{b1} made all +1")
    return build(10, p, f, [len(blk) for blk in kept], claim, notes)
