"""Recipes mixing even blocks with odd blocks of size ≡ 3 and ≡ 1 (mod 4), methods 24-27.

Sizes must be listed even blocks first, then sizes ≡ 3 (mod 4), then sizes
≡ 1 (mod 4). A block of size m ≡ 3 (mod 4) is the core of H_{m+1} (first row
and column removed). A block of size m ≡ 1 (mod 4) is the core of H_{m-1}
between two all-ones profiles.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .. import hadamard as hd
from ..claims import OptimalityClaim
from ..design import BlockedDesign, pair_expand
from ..info import IJForm
from ._common import MethodParams, build, matrix_of_order, need_positive, ones, pick, require


def _core(order: int, k: int) -> np.ndarray:
    h = matrix_of_order(order)
    require(k <= order - 1, f"K={k} exceeds the {order - 1} core columns of H_{order}")
    return h[1:, 1 : k + 1]


def _classify(sizes, method: int) -> tuple[list[int], list[int], list[int]]:
    require(sizes is not None and len(sizes) > 0, "block sizes are required")
    kind = [0 if s % 2 == 0 else (1 if s % 4 == 3 else 2) for s in sizes]
    require(kind == sorted(kind),
            f"Method {method} needs sizes ordered: even, then ≡3 (mod 4), then ≡1 (mod 4); got {list(sizes)}")
    even = [s for s in sizes if s % 2 == 0]
    y_sizes = [s for s in sizes if s % 4 == 3]
    z_sizes = [s for s in sizes if s % 4 == 1]
    require(all(s >= 5 for s in z_sizes), "blocks of size ≡ 1 (mod 4) must have at least 5 rows")
    return even, y_sizes, z_sizes


def _odd_blocks(y_sizes, z_sizes, k: int) -> list[np.ndarray]:
    blocks = [2 * _core(s + 1, k) for s in y_sizes]
    for s in z_sizes:
        blocks.append(2 * np.vstack([ones(1, k), _core(s - 1, k), ones(1, k)]))
    return blocks


def _pair_run(total: int, k: int) -> tuple[np.ndarray, int, int]:
    """[H_{4t}; J_{l/2}] (x) A_v on total = 8t + l rows."""
    t, ell = divmod(total, 8)
    rows = [ones(ell // 2, k)]
    if t:
        rows.insert(0, pick(matrix_of_order(4 * t), k))
    return pair_expand(np.vstack(rows)), t, ell


def _cut_even(paired: np.ndarray, sizes) -> list[np.ndarray]:
    out, start = [], 0
    for s in sizes:
        out.append(paired[start : start + s])
        start += s
    return out


def _delta_claim(n: int, offset: int, criteria: tuple[str, ...], bounds) -> OptimalityClaim:
    label = "(N-2)I + (2-delta)J" if offset == 2 else "(N-1)I + (1-delta)J"
    return OptimalityClaim(criteria, IJForm(n - offset, None), label, delta_range=bounds,
                           notes=("delta is read off the computed matrix",))


def _even_split_with_pair(even: list[int], k: int):
    """Use the first two equal even blocks as a blocking split of H_{2 m1} when possible."""
    if len(even) >= 2 and even[0] == even[1]:
        order = 2 * even[0]
        if hd.is_available(order) and k <= order - 2:
            h = matrix_of_order(order)
            plus = [r for r in range(order) if h[r, 1] == 1]
            minus = [r for r in range(order) if h[r, 1] == -1]
            body = h[:, 2 : 2 + k]
            return [2 * body[plus], 2 * body[minus]], even[0] // 2, even[2:]
    return [], 0, even


def _method_24_26(p: MethodParams, method: int) -> BlockedDesign:
    n, k = p.need("n", "k")
    need_positive(n=n, k=k)
    target = 2 if method == 24 else 1
    require(n % 4 == target, f"Method {method} needs N ≡ {target} (mod 4); got N={n}")
    if method == 24:
        require(k >= 3, f"Method 24 needs K ≥ 3; got K={k}")
    require(p.sizes is not None and sum(p.sizes) == n, f"block sizes must sum to N={n}")
    even, y_sizes, z_sizes = _classify(p.sizes, method)
    head, t1, rest = _even_split_with_pair(even, k)
    paired, t, ell = _pair_run(sum(rest), k)
    y, z = len(y_sizes), len(z_sizes)
    require(ell + z == y + target,
            f"Method {method} needs l + z = y + {target}; got l={ell}, y={y}, z={z}")
    blocks = head + _cut_even(paired, rest) + _odd_blocks(y_sizes, z_sizes, k)
    bounds = (Fraction(1), Fraction(2)) if method == 24 else (None, Fraction(1))
    claim = _delta_claim(n, target, ("D",) if method == 24 else ("E",), bounds)
    notes = (f"t1={t1}, t={t}, l={ell}, x={len(even)}, y={y}, z={z}",)
    return build(method, p, np.vstack(blocks), [len(x) for x in blocks], claim, notes,
                 {"t1": t1, "t": t, "l": ell, "x": len(even), "y": y, "z": z})


def _first_block(m1: int, k: int, ell2: int, y: int, z: int, target: int):
    """Block 1 of size m1 = 4 t1 + l1 with l1 + l2 + z = y + target, largest t1 first."""
    for t1 in range(m1 // 4, -1, -1):
        ell1 = m1 - 4 * t1
        if ell1 > 6 or ell1 + ell2 + z != y + target:
            continue
        if t1 == 0:
            return pair_expand(ones(ell1 // 2, k)), t1, ell1
        if not hd.is_available(4 * t1) or k > 4 * t1 - 1:
            continue
        rows = [ones(1, k), _core(4 * t1, k), ones(ell1 // 2, k), -ones(ell1 // 2, k)]
        return 2 * np.vstack(rows), t1, ell1
    return None


def _method_25_27(p: MethodParams, method: int) -> BlockedDesign:
    n, k = p.need("n", "k")
    need_positive(n=n, k=k)
    target = 2 if method == 25 else 1
    require(n % 4 == target, f"Method {method} needs N ≡ {target} (mod 4); got N={n}")
    if method == 25:
        require(k >= 3, f"Method 25 needs K ≥ 3; got K={k}")
    require(p.sizes is not None and sum(p.sizes) == n, f"block sizes must sum to N={n}")
    even, y_sizes, z_sizes = _classify(p.sizes, method)
    require(len(even) >= 1, f"Method {method} needs at least one even block")
    paired, t, ell2 = _pair_run(sum(even[1:]), k)
    y, z = len(y_sizes), len(z_sizes)
    first = _first_block(even[0], k, ell2, y, z, target)
    require(first is not None,
            f"Method {method} needs m1 = 4t1 + l1 with l1 + l2 + z = y + {target}; "
            f"no split of m1={even[0]} works with l2={ell2}, y={y}, z={z}")
    block1, t1, ell1 = first
    blocks = [block1] + _cut_even(paired, even[1:]) + _odd_blocks(y_sizes, z_sizes, k)
    bounds = (Fraction(1), Fraction(2)) if method == 25 else (None, Fraction(1))
    claim = _delta_claim(n, target, ("D",) if method == 25 else ("E",), bounds)
    notes = (f"t1={t1}, l1={ell1}, t={t}, l2={ell2}, x={len(even)}, y={y}, z={z}",
             "H_{m_s - 1} in the ≡1 (mod 4) blocks used through its core")
    return build(method, p, np.vstack(blocks), [len(x) for x in blocks], claim, notes,
                 {"t1": t1, "l1": ell1, "t": t, "l2": ell2, "x": len(even), "y": y, "z": z})


def method24(p: MethodParams) -> BlockedDesign:
    return _method_24_26(p, 24)


def method26(p: MethodParams) -> BlockedDesign:
    return _method_24_26(p, 26)


def method25(p: MethodParams) -> BlockedDesign:
    return _method_25_27(p, 25)


def method27(p: MethodParams) -> BlockedDesign:
    return _method_25_27(p, 27)
