"""The 27 construction recipes behind one dispatcher.

``construct(MethodParams(...))`` validates the class conditions of the chosen
method, builds the design and attaches the method's optimality claim to its
provenance. ``catalog()`` describes every method.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..design import BlockedDesign
from ._common import MethodParams
from .augment import method16, method17, method18
from .complementary import method1, method2, method3, method4, method11, method12, method13, method23
from .delta import method24, method25, method26, method27
from .mixed import choose_q, method19, method20, method21, method22, split_block_size
from .square import method14, method15
from .twosize import method5, method6, method7, method8, method9, method10


@dataclass(frozen=True)
class MethodInfo:
    method: int
    builder: Callable[[MethodParams], BlockedDesign]
    params: tuple[str, ...]
    constraints: str
    hadamard_orders: str
    criteria: str
    smallest: MethodParams


def _p(method: int, **kw) -> MethodParams:
    return MethodParams(method, **kw)


METHODS: dict[int, MethodInfo] = {
    info.method: info
    for info in [
        MethodInfo(1, method1, ("n", "k", "b"), "N ≡ 2 (mod 4), m = N/b even, K ≤ N/2-1",
                   "N/2-1", "D", _p(1, n=6, k=2, b=3)),
        MethodInfo(2, method2, ("n", "k", "b"),
                   "N ≡ 6 (mod 8), 2 ≤ b ≤ (N+2)/4 + 1; parts of N/2+1 and N/2-1 rows",
                   "(N+2)/4 and N/4-3/2 or N/2-3", "D", _p(2, n=14, k=2, b=2)),
        MethodInfo(3, method3, ("n", "k", "b"), "N ≡ 2 (mod 8), m = N/b even and > 2",
                   "N/2-1", "D", _p(3, n=10, k=2, b=1)),
        MethodInfo(4, method4, ("n", "k", "k1", "b"),
                   "N ≡ 2 (mod 8), m = N/b even and > 2, b < N/2, 1 ≤ K1 ≤ K",
                   "(N-2)/2", "D", _p(4, n=10, k=2, k1=1, b=1)),
        MethodInfo(5, method5, ("n", "k", "b"), "N = bm ≡ 0 (mod 4), m odd ≥ 3, K ≤ b",
                   "b", "A, D", _p(5, n=12, k=2, b=4)),
        MethodInfo(6, method6, ("n", "k", "m1"), "N = 2p ≡ 0 (mod 8), (m1+1) | p, m2 = m1+2",
                   "N/2", "A, D", _p(6, n=24, k=2)),
        MethodInfo(7, method7, ("n", "k", "m1"), "N ≡ 4 (mod 8), p = (N-4)/2, (m1+1) | N/2",
                   "(N-4)/2", "A, D", _p(7, n=12, k=2)),
        MethodInfo(8, method8, ("n", "k"), "N ≡ 3 (mod 4), b = 3, m = N/3 ≡ 1 (mod 8)",
                   "(N-3)/2", "E", _p(8, n=27, k=2)),
        MethodInfo(9, method9, ("k", "groups"), "groups b_i:m_i with K ≤ b_i",
                   "each b_i", "type I", _p(9, k=2, groups=((2, 2),))),
        MethodInfo(10, method10, ("b1", "m1", "i", "k"),
                   "i in {1,2,3}, m1 even, b1 - 2i - i*m1 ≥ 0, N = b1*m1 + i",
                   "b1", "type I", _p(10, b1=4, m1=2, i=1, k=2)),
        MethodInfo(11, method11, ("n", "k", "sizes"), "N = 8q+2, even block sizes",
                   "N/2-1", "generalized type 1", _p(11, n=10, k=2, sizes=(4, 6))),
        MethodInfo(12, method12, ("n", "k", "sizes"), "N = 8q+6, even block sizes",
                   "N/2+1", "generalized type 2", _p(12, n=14, k=2, sizes=(6, 8))),
        MethodInfo(13, method13, ("n", "k", "sizes"), "N ≡ 2 (mod 4), 3 ≤ K ≤ N/2-1, even sizes",
                   "N/2-1", "E", _p(13, n=10, k=3, sizes=(4, 6))),
        MethodInfo(14, method14, ("n", "k"), "N = m^2 with m = 3, K ≤ 4",
                   "4", "A, D", _p(14, n=9, k=2)),
        MethodInfo(15, method15, ("p", "q", "k"), "N = 9p ≡ 2 (mod 4), q ≤ p",
                   "p and 4", "A, D", _p(15, p=2, q=2, k=2)),
        MethodInfo(16, method16, ("n", "k", "sizes"),
                   "N = 2p+i ≡ i (mod 4), p even, i odd-size blocks", "(N-i)/2", "E",
                   _p(16, n=5, k=2, sizes=(3, 2))),
        MethodInfo(17, method17, ("n", "k", "sizes"), "N = 2p+3, p even, one odd-size block",
                   "(N-3)/2", "E", _p(17, n=7, k=2, sizes=(3, 4))),
        MethodInfo(18, method18, ("p", "m1", "i", "k"),
                   "N = p*m1 + i, m1 even, p - 1 - m1 - i ≥ 0", "p", "E",
                   _p(18, p=4, m1=2, i=1, k=2)),
        MethodInfo(19, method19, ("n", "k", "b"),
                   "N ≡ 6 (mod 8), b odd, m even, N2 = m(b-2) ≡ 2 (mod 8)",
                   "2m and (N2-2)/2", "E", _p(19, n=14, k=2, b=7)),
        MethodInfo(20, method20, ("n", "k", "b"),
                   "N ≡ 2 (mod 8), b even ≤ 2m, m odd ≥ 5, N2 = b-2+2m ≡ 2 (mod 8)",
                   "2(m-1) and (N2-2)/2", "E", _p(20, n=10, k=2, b=2)),
        MethodInfo(21, method21, ("n", "k", "b"),
                   "N ≡ 6 (mod 8), b even ≤ 2m, m odd; m = m1 + m2 found by search",
                   "2*m1 and (b*m2-2)/2", "E", _p(21, n=14, k=2, b=2)),
        MethodInfo(22, method22, ("n", "k", "b"),
                   "N ≡ 1 (mod 4), b and m odd, 3 ≤ b ≤ m, even q_i selection exists",
                   "2*q_i and (N-1-2*sum q)/2", "E", _p(22, n=9, k=2, b=3)),
        MethodInfo(23, method23, ("n", "k1", "sizes"),
                   "N ≡ 2 (mod 4), K = N/2-1, 1 ≤ K1 < K, even sizes", "N/2-1", "E",
                   _p(23, n=6, k1=1, sizes=(2, 2, 2))),
        MethodInfo(24, method24, ("n", "k", "sizes"),
                   "N ≡ 2 (mod 4), K ≥ 3, l + z = y + 2, sizes ordered even/≡3/≡1",
                   "2*m1, 4t, m+1, m-1", "D", _p(24, n=10, k=3, sizes=(5, 5))),
        MethodInfo(25, method25, ("n", "k", "sizes"),
                   "N ≡ 2 (mod 4), K ≥ 3, l1 + l2 + z = y + 2", "4*t1, 4t, m+1, m-1", "D",
                   _p(25, n=6, k=3, sizes=(4, 2))),
        MethodInfo(26, method26, ("n", "k", "sizes"),
                   "N ≡ 1 (mod 4), l + z = y + 1", "2*m1, 4t, m+1, m-1", "E",
                   _p(26, n=5, k=3, sizes=(5,))),
        MethodInfo(27, method27, ("n", "k", "sizes"),
                   "N ≡ 1 (mod 4), l1 + l2 + z = y + 1", "4*t1, 4t, m+1, m-1", "E",
                   _p(27, n=9, k=3, sizes=(4, 5))),
    ]
}


def construct(p: MethodParams) -> BlockedDesign:
    return METHODS[p.method].builder(p)


def catalog() -> list[dict]:
    return [
        {
            "method": info.method,
            "params": list(info.params),
            "constraints": info.constraints,
            "hadamard_orders": info.hadamard_orders,
            "criteria": info.criteria,
            "smallest": info.smallest.as_dict(),
        }
        for info in METHODS.values()
    ]


__all__ = ["METHODS", "MethodInfo", "MethodParams", "catalog", "choose_q", "construct", "split_block_size"]
