"""Arithmetic in GF(p^k), just enough to evaluate the quadratic character.

Elements are encoded as integers 0..q-1 whose base-p digits are polynomial
coefficients (lowest degree first). For prime q this is ordinary arithmetic
mod q, so element order matches the integers.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, k) with q = p**k for prime p, or None."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, rest = 0, q
    while rest % p == 0:
        rest //= p
        k += 1
    return (p, k) if rest == 1 else None


def _poly_mod(coeffs: list[int], modulus: list[int], p: int) -> list[int]:
    out = list(coeffs)
    deg = len(modulus) - 1
    for i in range(len(out) - 1, deg - 1, -1):
        c = out[i] % p
        if c:
            for j, mj in enumerate(modulus):
                out[i - deg + j] = (out[i - deg + j] - c * mj) % p
    return [c % p for c in out[:deg]] + [0] * max(0, deg - len(out))


def _is_irreducible(modulus: list[int], p: int) -> bool:
    """Irreducibility test by trial division against all monic lower-degree polys."""
    deg = len(modulus) - 1
    for d in range(1, deg // 2 + 1):
        for tail in product(range(p), repeat=d):
            divisor = list(tail) + [1]
            if not any(_poly_mod(modulus, divisor, p)):
                return False
    return True


@lru_cache(maxsize=None)
def _irreducible(p: int, k: int) -> tuple[int, ...]:
    for tail in product(range(p), repeat=k):
        modulus = list(tail) + [1]
        if tail[0] != 0 and _is_irreducible(modulus, p):
            return tuple(modulus)
    raise ValueError(f"no irreducible polynomial of degree {k} over GF({p})")


class GaloisField:
    """The finite field of order q = p**k."""

    def __init__(self, q: int):
        pk = prime_power(q)
        if pk is None:
            raise ValueError(f"{q} is not a prime power")
        self.q = q
        self.p, self.k = pk
        self._modulus = list(_irreducible(self.p, self.k)) if self.k > 1 else None
        self._squares = {self.mul(x, x) for x in range(1, q)}

    def _digits(self, x: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(x % self.p)
            x //= self.p
        return out

    def _number(self, digits: list[int]) -> int:
        return sum(d * self.p**i for i, d in enumerate(digits))

    def sub(self, x: int, y: int) -> int:
        if self.k == 1:
            return (x - y) % self.p
        return self._number(
            [(a - b) % self.p for a, b in zip(self._digits(x), self._digits(y))]
        )

    def mul(self, x: int, y: int) -> int:
        if self.k == 1:
            return (x * y) % self.p
        a, b = self._digits(x), self._digits(y)
        prod = [0] * (2 * self.k - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % self.p
        return self._number(_poly_mod(prod, self._modulus, self.p))

    def chi(self, x: int) -> int:
        """Quadratic character: 0 at zero, +1 on nonzero squares, -1 otherwise."""
        if x == 0:
            return 0
        return 1 if x in self._squares else -1
