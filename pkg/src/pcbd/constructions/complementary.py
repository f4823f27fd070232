"""Recipes built from complementary pairs of an augmented Hadamard matrix.

Methods 1-4 and 11-13 share the core step F = [H_K; 1'] (x) A_v; method 23
adds a mixed-sign profile instead of the all-ones pair.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..claims import OptimalityClaim
from ..design import BlockedDesign, pair_expand, reblock
from ..errors import ClassError, UnsupportedOrderError
from ..info import IJForm, ij_eigenvalues
from ._common import MethodParams, build, matrix_of_order, need_positive, ones, pick, require, split_even


def augmented_pairs(order: int, k: int, columns=None, order_rule: str = "natural") -> np.ndarray:
    """[H_K; 1'] (x) A_v for the Hadamard matrix of the given order."""
    require(order >= 1, f"the Hadamard order {order} must be at least 1")
    h = matrix_of_order(order)
    return pair_expand(np.vstack([pick(h, k, columns, order_rule), ones(1, k)]))


def _standard_claim(n: int, k: int, criteria: tuple[str, ...], eigen: bool = False) -> OptimalityClaim:
    form = IJForm(n - 2, 2)
    return OptimalityClaim(
        criteria,
        form,
        "(N-2)I + 2J",
        tuple(ij_eigenvalues(form, k)) if eigen else None,
        orthogonal=True,
    )


def _even_sizes(n: int, sizes) -> tuple[int, ...]:
    require(sizes is not None and len(sizes) > 0, "block sizes are required")
    require(all(s % 2 == 0 and s > 0 for s in sizes), f"all block sizes must be even, got {list(sizes)}")
    require(sum(sizes) == n, f"block sizes sum to {sum(sizes)}, expected N={n}")
    return tuple(sizes)


def method1(p: MethodParams) -> BlockedDesign:
    n, k, b = p.need("n", "k", "b")
    need_positive(n=n, k=k, b=b)
    require(n % 4 == 2, f"Method 1 needs N ≡ 2 (mod 4); got N={n}")
    require(n >= 6, "Method 1 needs N ≥ 6 so that N/2-1 ≥ 2")
    require(n % b == 0, f"b={b} must divide N={n}")
    m = n // b
    require(m % 2 == 0, f"block size m = N/b = {m} must be even")
    f = augmented_pairs(n // 2 - 1, k, p.columns)
    return build(1, p, f, (m,) * b, _standard_claim(n, k, ("D",)))


def _second_part(n2: int, k: int) -> tuple[np.ndarray, str]:
    """A design on N2 rows with F'F/4 = (N2-2)I + 2J and zero column sums."""
    half = n2 // 2 - 1
    try:
        return augmented_pairs(half, k), f"second part: augmented H_{half} pairs"
    except (UnsupportedOrderError, ClassError):
        pass
    core_order = n2 - 2
    h = matrix_of_order(core_order)
    require(k <= core_order - 1, f"K={k} exceeds the {core_order - 1} core columns of H_{core_order}")
    core = h[1:, 1 : k + 1]
    rows = np.vstack([ones(1, k), -ones(1, k), -core, -ones(1, k)])
    return 2 * rows, f"second part: core of H_{core_order} with three constant rows"


def method2(p: MethodParams) -> BlockedDesign:
    n, k, b = p.need("n", "k", "b")
    need_positive(n=n, k=k, b=b)
    require(n % 4 == 2, f"Method 2 needs N ≡ 2 (mod 4); got N={n}")
    require(n % 8 == 6, f"Method 2 splits N into N/2+1 and N/2-1 rows, which needs N ≡ 6 (mod 8); got N={n}")
    require(b >= 2, "Method 2 needs at least two blocks")
    half = (n + 2) // 4
    require(b - 1 <= half, f"b-1={b - 1} blocks cannot be cut from {half} complementary pairs")
    first = pair_expand(pick(matrix_of_order(half), k, p.columns, "factorial"))
    second, note = _second_part(n // 2 - 1, k)
    sizes = [2 * s for s in split_even(half, b - 1)] + [n // 2 - 1]
    notes = (
        f"first part: H_{half} columns in factorial order, paired, {b - 1} block(s)",
        note + ", one block",
    )
    return build(2, p, np.vstack([first, second]), sizes, _standard_claim(n, k, ("D",)), notes)


def method3(p: MethodParams) -> BlockedDesign:
    n, k, b = p.need("n", "k", "b")
    need_positive(n=n, k=k, b=b)
    require(n % 8 == 2, f"Method 3 needs N ≡ 2 (mod 8); got N={n}")
    require(n % b == 0, f"b={b} must divide N={n}")
    m = n // b
    require(m > 2 and m % 2 == 0, f"block size m = N/b = {m} must be even and greater than 2")
    base = method1(MethodParams(1, n=n, k=k, b=n // 2, columns=p.columns))
    merged = reblock(base, (m,) * b)
    return build(3, p, merged.f, merged.layout.sizes, _standard_claim(n, k, ("D",), eigen=True),
                 ("pairs of consecutive rows merged into blocks in order",))


def method4(p: MethodParams) -> BlockedDesign:
    n, k, k1, b = p.need("n", "k", "k1", "b")
    need_positive(n=n, k=k, k1=k1, b=b)
    require(n % 8 == 2, f"Method 4 needs N ≡ 2 (mod 8); got N={n}")
    require(n % b == 0, f"b={b} must divide N={n}")
    m = n // b
    require(m > 2 and m % 2 == 0, f"block size m = N/b = {m} must be even and greater than 2")
    require(b < n // 2, f"Method 4 needs b < N/2; got b={b}")
    require(k1 <= k, f"K1={k1} must not exceed K={k}")
    h = matrix_of_order((n - 2) // 2)
    mixed = np.array([[1] * k1 + [-1] * (k - k1)], dtype=np.int64)
    f = np.vstack([pair_expand(pick(h, k, p.columns, "factorial")), 2 * ones(1, k), 2 * mixed])
    eig = None
    if k >= 2:
        eig = tuple(
            [Fraction(n - 2)] * (k - 2)
            + [Fraction(n + 2 * k1 - 2) - Fraction(4 * k1, m), Fraction(n + 2 * k - 2 * k1 - 2)]
        )
    claim = OptimalityClaim(
        ("D",), IJForm(n - 2, 2 - Fraction(4, m)), "(N-2)I + 2J - (4/m)J", eig, orthogonal=False
    )
    return build(4, p, f, (m,) * b, claim)


def method11(p: MethodParams) -> BlockedDesign:
    n, k = p.need("n", "k")
    need_positive(n=n, k=k)
    require(n % 8 == 2, f"Method 11 needs N = 8q+2; got N={n}")
    sizes = _even_sizes(n, p.sizes)
    f = augmented_pairs(n // 2 - 1, k, p.columns)
    return build(11, p, f, sizes, _standard_claim(n, k, ("TYPE_1_GEN",)))


def method12(p: MethodParams) -> BlockedDesign:
    n, k = p.need("n", "k")
    need_positive(n=n, k=k)
    require(n % 8 == 6, f"Method 12 needs N = 8q+6; got N={n}")
    sizes = _even_sizes(n, p.sizes)
    h = matrix_of_order(n // 2 + 1)
    f = pair_expand(pick(h[1:], k, p.columns))
    form = IJForm(n + 2, -2)
    claim = OptimalityClaim(("TYPE_2_GEN",), form, "(N+2)I - 2J", tuple(ij_eigenvalues(form, k)), orthogonal=True)
    return build(12, p, f, sizes, claim, ("the all-ones row of the normalized matrix is dropped",))


def method13(p: MethodParams) -> BlockedDesign:
    n, k = p.need("n", "k")
    need_positive(n=n, k=k)
    require(n % 4 == 2, f"Method 13 needs N ≡ 2 (mod 4); got N={n}")
    require(3 <= k <= n // 2 - 1, f"Method 13 needs 3 ≤ K ≤ N/2-1 = {n // 2 - 1}; got K={k}")
    sizes = _even_sizes(n, p.sizes)
    f = augmented_pairs(n // 2 - 1, k, p.columns)
    return build(13, p, f, sizes, _standard_claim(n, k, ("E",)),
                 ("the two appended profiles are read as the all-ones complementary pair",))


def method23(p: MethodParams) -> BlockedDesign:
    n, k1 = p.need("n", "k1")
    need_positive(n=n, k1=k1)
    require(n % 4 == 2, f"Method 23 needs N ≡ 2 (mod 4); got N={n}")
    k = n // 2 - 1
    require(p.k is None or p.k == k, f"Method 23 fixes K = N/2-1 = {k}; got K={p.k}")
    require(k - k1 >= 1, f"Method 23 needs K2 = K-K1 ≥ 1; got K1={k1}, K={k}")
    sizes = _even_sizes(n, p.sizes)
    h = matrix_of_order(k)
    mixed = np.array([[1] * k1 + [-1] * (k - k1)], dtype=np.int64)
    f = np.vstack([pair_expand(h), 2 * ones(1, k), 2 * mixed])
    claim = OptimalityClaim(("E",), IJForm(n - 2, 2), "(N-2)I + 2J")
    return build(23, p, f, sizes, claim, (f"K1={k1}, K2={k - k1}",))
