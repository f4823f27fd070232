"""Recipes that add constant profiles to complementary-pair blocks (methods 16-18)."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..claims import OptimalityClaim
from ..design import BlockedDesign, kron, pair_expand
from ..info import IJForm
from ._common import MethodParams, build, matrix_of_order, need_positive, ones, pick, require
from .twosize import alternating


def _cut(rows: np.ndarray, sizes) -> list[np.ndarray]:
    out, start = [], 0
    for s in sizes:
        out.append(rows[start : start + s])
        start += s
    return out


def _split_sizes(n: int, sizes, odd_count: int, method: int) -> tuple[list[int], list[int]]:
    require(sizes is not None and len(sizes) > 0, "block sizes are required")
    require(sum(sizes) == n, f"block sizes sum to {sum(sizes)}, expected N={n}")
    odd = [s for s in sizes if s % 2]
    even = [s for s in sizes if s % 2 == 0]
    require(len(odd) == odd_count, f"Method {method} needs exactly {odd_count} odd block size(s); got {odd}")
    require(all(s >= 3 for s in odd), "odd blocks need at least one complementary pair")
    return even, odd


def _paired_with_profiles(paired: np.ndarray, even: list[int], odd: list[int], k: int) -> np.ndarray:
    """Even blocks in order, then odd blocks each ending in an all +2 profile."""
    pieces = _cut(paired, even + [s - 1 for s in odd])
    parts = pieces[: len(even)]
    for piece in pieces[len(even) :]:
        parts += [piece, 2 * ones(1, k)]
    return np.vstack(parts)


def method16(p: MethodParams) -> BlockedDesign:
    n, k = p.need("n", "k")
    need_positive(n=n, k=k)
    i = n % 4
    require(i in (1, 2, 3), f"Method 16 needs N ≡ i (mod 4) with i in {{1,2,3}}; got N={n}")
    half = (n - i) // 2
    require(half % 2 == 0 and half >= 2, f"Method 16 needs p = (N-i)/2 even; got p={half}")
    even, odd = _split_sizes(n, p.sizes, i, 16)
    paired = pair_expand(pick(matrix_of_order(half), k, p.columns))
    f = _paired_with_profiles(paired, even, odd, k)
    beta = i - sum(Fraction(1, s) for s in odd)
    claim = OptimalityClaim(("E",), IJForm(2 * half, beta), "(N-i)I + iJ - sum 1/(m_j+1) J",
                            extreme_eigenvalue=("max", Fraction(2 * half)))
    return build(16, p, f, even + odd, claim, ("augmented blocks placed after the even blocks",))


def method17(p: MethodParams) -> BlockedDesign:
    n, k = p.need("n", "k")
    need_positive(n=n, k=k)
    require(n % 4 == 3, f"Method 17 needs N = 2p+3 ≡ 3 (mod 4); got N={n}")
    half = (n - 3) // 2
    require(half % 2 == 0 and half >= 2, f"Method 17 needs p = (N-3)/2 even; got p={half}")
    even, odd = _split_sizes(n, p.sizes, 1, 17)
    paired = pair_expand(np.vstack([pick(matrix_of_order(half), k, p.columns), ones(1, k)]))
    f = _paired_with_profiles(paired, even, odd, k)
    claim = OptimalityClaim(("E",), IJForm(2 * half, 3 - Fraction(1, odd[0])), "2pI + 3J - 1/(m_1+1) J",
                            extreme_eigenvalue=("max", Fraction(2 * half)))
    return build(17, p, f, even + odd, claim, ("augmented block placed after the even blocks",))


def method18(p: MethodParams) -> BlockedDesign:
    order, m1, i, k = p.need("p", "m1", "i", "k")
    need_positive(p=order, m1=m1, i=i, k=k)
    require(m1 % 2 == 0, f"Method 18 needs m1 even; got m1={m1}")
    require(i in (1, 2, 3), f"Method 18 needs i in {{1,2,3}}; got i={i}")
    require(order - 1 - m1 - i >= 0, f"Method 18 needs p - 1 - m1 - i ≥ 0; got {order - 1 - m1 - i}")
    n = order * m1 + i
    require(p.n is None or p.n == n, f"N={p.n} is inconsistent with p*m1+i={n}")
    d1 = kron(pick(matrix_of_order(order), k, p.columns), alternating(m1))
    blocks = [list(d1[j * m1 : (j + 1) * m1]) for j in range(order)]
    for t, row in enumerate(blocks[0]):
        blocks[1 + t].append(row)
    for s in range(i):
        blocks[1 + m1 + s].append(2 * np.ones(k, dtype=np.int64))
    kept = blocks[1:]
    f = np.vstack([np.array(b) for b in kept])
    beta = i - Fraction(m1 + i, m1 + 1)
    claim = OptimalityClaim(("E",), IJForm(order * m1, beta), "p m1 I + iJ - (m1+i)/(m1+1) J",
                            extreme_eigenvalue=("max", Fraction(order * m1)))
    return build(18, p, f, [len(b) for b in kept], claim, (f"N = p*m1 + i = {n}",))
