"""Recipes that split a Hadamard matrix on a blocking column (methods 19-22)."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement

import numpy as np

from .. import hadamard as hd
from ..claims import OptimalityClaim
from ..design import BlockedDesign, pair_expand
from ..errors import ClassError
from ..info import IJForm, ij_eigenvalues
from ._common import MethodParams, build, matrix_of_order, need_positive, ones, pick, require


def blocking_split(order: int, k: int, move_ones_row: bool) -> tuple[np.ndarray, np.ndarray]:
    """Split H_order on column 1 and keep K of the remaining columns.

    Rows with +1 in the blocking column form the first part. With
    ``move_ones_row`` the all-ones row (row 0) moves to the end of the second
    part, which leaves column sums -1 in the first part and +1 in the second.
    """
    h = matrix_of_order(order)
    require(k <= order - 2, f"K={k} exceeds the {order - 2} columns left after the blocking column")
    plus = [r for r in range(order) if h[r, 1] == 1]
    minus = [r for r in range(order) if h[r, 1] == -1]
    if move_ones_row:
        plus.remove(0)
        minus.append(0)
    body = h[:, 2 : 2 + k]
    return body[plus], body[minus]


def _pairs_of(paired: np.ndarray) -> list[np.ndarray]:
    return [paired[2 * j : 2 * j + 2] for j in range(len(paired) // 2)]


def _e_claim(n: int, k: int, b: int, m: int, label: str) -> OptimalityClaim:
    form = IJForm(n - 2, 2 - Fraction(b, m))
    eig = tuple([Fraction(n - 2)] * (k - 1) + [Fraction(n + 2 * (k - 1)) - Fraction(k * b, m)])
    return OptimalityClaim(("E",), form, label, eig)


def method19(p: MethodParams) -> BlockedDesign:
    n, k, b = p.need("n", "k", "b")
    need_positive(n=n, k=k, b=b)
    require(n % 8 == 6, f"Method 19 needs N ≡ 6 (mod 8); got N={n}")
    require(b % 2 == 1 and b >= 3, f"Method 19 needs b odd ≥ 3; got b={b}")
    require(n % b == 0, f"b={b} must divide N={n}")
    m = n // b
    require(m % 2 == 0, f"Method 19 needs m even; got m={m}")
    n2 = m * (b - 2)
    require(n2 % 8 == 2 and n2 > 2, f"Method 19 needs N2 = m(b-2) ≡ 2 (mod 8), N2 > 2; got N2={n2}")
    first, second = blocking_split(2 * m, k, move_ones_row=False)
    order2 = (n2 - 2) // 2
    require(k <= order2, f"Method 19 needs K ≤ (N2-2)/2 = {order2}")
    tail = pair_expand(np.vstack([pick(matrix_of_order(order2), k), ones(1, k)]))
    f = np.vstack([2 * first, 2 * second, tail])
    form = IJForm(n - 2, 2)
    claim = OptimalityClaim(("E",), form, "(N-2)I + 2J", orthogonal=True)
    return build(19, p, f, (m,) * b, claim, (f"N1 = 2m = {2 * m}, N2 = {n2}",))


def method20(p: MethodParams) -> BlockedDesign:
    n, k, b = p.need("n", "k", "b")
    need_positive(n=n, k=k, b=b)
    require(n % 8 == 2, f"Method 20 needs N ≡ 2 (mod 8); got N={n}")
    require(b % 2 == 0, f"Method 20 needs b even; got b={b}")
    require(n % b == 0, f"b={b} must divide N={n}")
    m = n // b
    require(m % 2 == 1 and m >= 5, f"Method 20 needs m odd ≥ 5; got m={m}")
    require(b <= 2 * m, f"Method 20 needs b ≤ 2m; got b={b}, m={m}")
    n2 = b - 2 + 2 * m
    require(n2 % 8 == 2, f"Method 20 needs N2 = b-2+2m ≡ 2 (mod 8); got N2={n2}")
    order3 = (n2 - 2) // 2
    require(k <= 2 * (m - 2), f"Method 20 needs K ≤ 2(m-2) = {2 * (m - 2)}")
    require(k <= order3, f"Method 20 needs K ≤ (N2-2)/2 = {order3}")
    short, full = blocking_split(2 * (m - 1), k, move_ones_row=True)
    pairs = _pairs_of(pair_expand(np.vstack([pick(matrix_of_order(order3), k), ones(1, k)])))
    ones_pair, plain = pairs[-1], pairs[:-1]
    blocks = []
    for _ in range((b - 2) // 2):
        blocks.append(np.vstack([2 * short, plain.pop(0)]))
        blocks.append(2 * full)
    half = (m - 1) // 2
    for profile in (ones_pair[:1], ones_pair[1:]):
        blocks.append(np.vstack([*(plain.pop(0) for _ in range(half)), profile]))
    assert not plain
    claim = _e_claim(n, k, b, m, "(N-2)I + 2J - (b/m)J")
    notes = ("all-ones row moved to the opposite block of the blocking split",
             f"N1 = {(b - 2) * (m - 1)}, N2 = {n2}")
    return build(20, p, np.vstack(blocks), [len(x) for x in blocks], claim, notes)


def split_block_size(n: int, b: int, m: int) -> tuple[int, int, int]:
    """Choose (m1, m2) for method 21: first maximizer of the column bound.

    Candidates m1 = 2, 4, ... < m need b*m1 ≡ 4 (mod 8), N2 = b*m2 ≡ 2
    (mod 8) and the Hadamard orders 2*m1 and (N2-2)/2 available.
    Returns (m1, m2, bound).
    """
    best = None
    for m1 in range(2, m, 2):
        m2 = m - m1
        n2 = b * m2
        if (b * m1) % 8 != 4 or n2 % 8 != 2 or n2 <= 2:
            continue
        if not (hd.is_available(2 * m1) and hd.is_available((n2 - 2) // 2)):
            continue
        bound = min(2 * (m1 - 1), (n2 - 2) // 2)
        if best is None or bound > best[2]:
            best = (m1, m2, bound)
    if best is None:
        raise ClassError(f"no split m = m1 + m2 satisfies the congruences for N={n}, b={b}, m={m}")
    return best


def method21(p: MethodParams) -> BlockedDesign:
    n, k, b = p.need("n", "k", "b")
    need_positive(n=n, k=k, b=b)
    require(n % 8 == 6, f"Method 21 needs N ≡ 6 (mod 8); got N={n}")
    require(b % 2 == 0, f"Method 21 needs b even; got b={b}")
    require(n % b == 0, f"b={b} must divide N={n}")
    m = n // b
    require(m % 2 == 1, f"Method 21 needs m odd; got m={m}")
    require(b <= 2 * m, f"Method 21 needs b ≤ 2m; got b={b}, m={m}")
    m1, m2, bound = split_block_size(n, b, m)
    require(k <= bound, f"Method 21 with m1={m1}, m2={m2} allows K ≤ {bound}; got K={k}")
    short, full = blocking_split(2 * m1, k, move_ones_row=True)
    n2 = b * m2
    pairs = _pairs_of(pair_expand(np.vstack([pick(matrix_of_order((n2 - 2) // 2), k), ones(1, k)])))
    blocks = []
    for _ in range(b // 2):
        blocks.append(np.vstack([2 * short, *(pairs.pop(0) for _ in range((m - m1 + 1) // 2))]))
        blocks.append(np.vstack([2 * full, *(pairs.pop(0) for _ in range((m - m1 - 1) // 2))]))
    assert not pairs
    claim = _e_claim(n, k, b, m, "(N-2)I + 2J - (b/m)J")
    notes = (f"split m1={m1}, m2={m2}", "congruences read as b*m1 ≡ 4 and b*m2 ≡ 2 (mod 8)")
    return build(21, p, np.vstack(blocks), [len(x) for x in blocks], claim, notes,
                 {"m1": m1, "m2": m2})


def choose_q(n: int, b: int, m: int, k: int) -> tuple[tuple[int, ...], int, int]:
    """Even q_1 ≤ ... ≤ q_r (r = (b-3)/2) with M = N-1-2*sum(q) ≡ 0 (mod 8).

    Among feasible tuples the bound P = min(2q_i - 2, M/2) is maximized;
    ties go to the lexicographically smallest tuple. Returns (q, M, P).
    """
    r = (b - 3) // 2
    best = None
    for qs in combinations_with_replacement(range(2, m, 2), r):
        rest = n - 1 - 2 * sum(qs)
        if rest < 8 or rest % 8:
            continue
        if not all(hd.is_available(2 * q) for q in qs) or not hd.is_available(rest // 2):
            continue
        bound = min([2 * q - 2 for q in qs] + [rest // 2])
        if best is None or bound > best[2]:
            best = (tuple(qs), rest, bound)
    if best is None:
        raise ClassError(f"no even q selection gives N-1-2*sum(q) ≡ 0 (mod 8) for N={n}, b={b}")
    return best


def method22(p: MethodParams) -> BlockedDesign:
    n, k, b = p.need("n", "k", "b")
    need_positive(n=n, k=k, b=b)
    require(n % 4 == 1, f"Method 22 needs N ≡ 1 (mod 4); got N={n}")
    require(n % b == 0, f"b={b} must divide N={n}")
    m = n // b
    require(b % 2 == 1 and m % 2 == 1 and b >= 3, f"Method 22 needs b ≥ 3 and m odd; got b={b}, m={m}")
    require(b <= m, f"Method 22 needs b ≤ m; got b={b}, m={m}")
    qs, rest, bound = choose_q(n, b, m, k)
    require(k <= bound, f"Method 22 with q={list(qs)} allows K ≤ {bound}; got K={k}")
    pairs = _pairs_of(pair_expand(pick(matrix_of_order(rest // 2), k)))
    ones_pair, plain = pairs[0], pairs[1:]
    blocks = []
    for q in qs:
        short, full = blocking_split(2 * q, k, move_ones_row=True)
        blocks.append(np.vstack([2 * short, *(plain.pop(0) for _ in range((m - q + 1) // 2))]))
        blocks.append(np.vstack([2 * full, *(plain.pop(0) for _ in range((m - q - 1) // 2))]))
    half = (m - 1) // 2
    for profile in (ones_pair[:1], ones_pair[1:], 2 * ones(1, k)):
        blocks.append(np.vstack([*(plain.pop(0) for _ in range(half)), profile]))
    assert not plain
    form = IJForm(n - 1, 1 - Fraction(b, m))
    claim = OptimalityClaim(("E",), form, "(N-1)I + J - (b/m)J", tuple(ij_eigenvalues(form, k)))
    notes = (f"q = {list(qs)}, M = {rest}, P = {bound}",
             "blocks of size q_i+1 receive (m-q_i-1)/2 pairs so that every block has m rows")
    return build(22, p, np.vstack(blocks), [len(x) for x in blocks], claim, notes, {"q": list(qs)})
