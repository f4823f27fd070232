"""Square-size recipes: N = m^2 with m = 3 (method 14) and its product extension (method 15)."""

from __future__ import annotations

from math import isqrt

import numpy as np

from ..claims import OptimalityClaim
from ..design import BlockedDesign, kron, pair_expand
from ..errors import ParameterError
from ..info import IJForm
from ._common import MethodParams, build, matrix_of_order, need_positive, pick, require


def nine_run_design(k: int, columns=None) -> np.ndarray:
    """Three blocks of three rows: a complementary pair plus a constant profile each.

    H_4 has one all-ones row; its pair supplies the +2 and -2 profiles of the
    first two blocks and a further +2 profile completes the third.
    """
    lmat = pick(matrix_of_order(4), k, columns)
    pairs = pair_expand(lmat[1:])
    plus = 2 * np.ones((1, k), dtype=np.int64)
    extras = [plus, -plus, plus]
    return np.vstack([np.vstack([pairs[2 * j : 2 * j + 2], extras[j]]) for j in range(3)])


def method14(p: MethodParams) -> BlockedDesign:
    (k,) = p.need("k")
    need_positive(k=k)
    if p.n is not None:
        n = p.n
        m = isqrt(n)
        require(m * m == n, f"Method 14 needs N = m^2; got N={n}")
    else:
        (m,) = p.need("m")
        n = m * m
    require(m % 2 == 1 and m >= 3, f"Method 14 needs m odd ≥ 3; got m={m}")
    require(n % 4 == 1, f"Method 14 needs N ≡ 1 (mod 4); got N={n}")
    if m != 3:
        raise ParameterError(
            f"Method 14 is supported for m=3 only: H_{(n - 1) // 2} cannot have "
            f"{(m - 1) // 2} identical rows"
        )
    require(k <= 4, f"Method 14 needs K ≤ 4; got K={k}")
    form = IJForm(n - 1, 0)
    claim = OptimalityClaim(("A", "D"), form, "(N-1)I", tuple([n - 1] * k))
    return build(14, p, nine_run_design(k, p.columns), (3, 3, 3), claim)


def method15(p: MethodParams) -> BlockedDesign:
    order, q, k = p.need("p", "q", "k")
    need_positive(p=order, q=q, k=k)
    m = 3
    n = order * m * m
    require(p.n is None or p.n == n, f"N={p.n} is inconsistent with p*m^2={n}")
    require(n % 4 == 2, f"Method 15 needs N = p m^2 ≡ 2 (mod 4); got N={n}")
    require(q <= order, f"Method 15 needs q ≤ p; got q={q}, p={order}")
    lmat = pick(matrix_of_order(order), q)
    f = kron(lmat, nine_run_design(k, p.columns))
    claim = OptimalityClaim(("A", "D"), IJForm(n - order, 0), "(p m^2 - p)I")
    return build(15, p, f, (m,) * (order * m), claim, (f"{q}K = {q * k} columns",))
