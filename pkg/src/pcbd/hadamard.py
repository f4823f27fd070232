"""Hadamard matrices: generation, normalization, verification, column slicing.

Matrices are numpy integer arrays with entries -1/+1. Orders are served by
precedence: Sylvester doubling for powers of two, then Paley (type I for
q = n-1, type II for q = n/2-1), then the embedded registry plus any CSV files
found in the directory named by ``PCBD_HADAMARD_DIR``.
"""

from __future__ import annotations

import os
from functools import lru_cache
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import (
    IndexSelectionError,
    ParameterError,
    ShapeError,
    UnsupportedOrderError,
    VerificationError,
)
from .finite_field import GaloisField, prime_power

MAX_ORDER = 256
REGISTRY_ENV = "PCBD_HADAMARD_DIR"

# Rows written as +/- strings. Built by the type II Paley construction
# (q = 5, 9, 13) so they are independent of the type I matrices that the
# precedence rule serves for orders 12, 20 and 28.
_EMBEDDED = {
    12: """
++++++++++++
+--+-+-+-+-+
+-+-++----++
++--+--+-++-
+-+++-++----
+++---+--+-+
+---+++-++--
++-++---+--+
+-----+++-++
++-+-++---+-
+-++----+++-
+++--+-++---
""",
    20: """
++++++++++++++++++++
+--+-+-+-+-+-+-+-+-+
+-+-++++++----++----
++--+-+-+--+-++--+-+
+-+++-++--++----++--
+++---+--++--+-++--+
+-+++++-----++----++
+++-+----+-++--+-++-
+-++----+-++++++----
+++--+-+--+-+-+--+-+
+---++--+++-++--++--
++-++--++---+--++--+
+-----+++++++-----++
++-+-++-+-+----+-++-
+-++----++----+-++++
+++--+-++--+-+--+-+-
+---++----++--+++-++
++-++--+-++--++---+-
+-----++----+++++++-
++-+-++--+-++-+-+---
""",
    28: """
++++++++++++++++++++++++++++
+--+-+-+-+-+-+-+-+-+-+-+-+-+
+-+-++--++++--------++++--++
++--+--++-+--+-+-+-++-+--++-
+-+++-++--++++--------++++--
+++---+--++-+--+-+-+-++-+--+
+---+++-++--++++--------++++
++-++---+--++-+--+-+-+-++-+-
+-++--+++-++--++++--------++
+++--++---+--++-+--+-+-+-++-
+-++++--+++-++--++++--------
+++-+--++---+--++-+--+-+-+-+
+---++++--+++-++--++++------
++-++-+--++---+--++-+--+-+-+
+-----++++--+++-++--++++----
++-+-++-+--++---+--++-+--+-+
+-------++++--+++-++--++++--
++-+-+-++-+--++---+--++-+--+
+---------++++--+++-++--++++
++-+-+-+-++-+--++---+--++-+-
+-++--------++++--+++-++--++
+++--+-+-+-++-+--++---+--++-
+-++++--------++++--+++-++--
+++-+--+-+-+-++-+--++---+--+
+---++++--------++++--+++-++
++-++-+--+-+-+-++-+--++---+-
+-++--++++--------++++--+++-
+++--++-+--+-+-+-++-+--++---
""",
}


def _as_sign_matrix(h) -> np.ndarray:
    arr = np.asarray(h, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ShapeError(f"expected a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.abs(arr) == 1):
        raise ParameterError("sign matrix entries must be -1 or +1")
    return arr


def verify(h) -> bool:
    """True iff h is square and H H^T = nI in exact integer arithmetic."""
    arr = np.asarray(h, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ShapeError(f"Hadamard check needs a square matrix, got {arr.shape}")
    if not np.all(np.abs(arr) == 1):
        return False
    n = arr.shape[0]
    return bool(np.array_equal(arr @ arr.T, n * np.eye(n, dtype=np.int64)))


def normalize(h) -> np.ndarray:
    """Negate rows so column 0 is all +1, then columns so row 0 is all +1."""
    arr = _as_sign_matrix(h)
    if not verify(arr):
        raise VerificationError("normalize requires a verified Hadamard matrix")
    arr = arr * arr[:, [0]]
    return arr * arr[[0], :]


def is_normalized(h) -> bool:
    arr = np.asarray(h)
    return bool(np.all(arr[0, :] == 1) and np.all(arr[:, 0] == 1))


def sylvester(k: int) -> np.ndarray:
    """Normalized Hadamard matrix of order 2**k by repeated doubling."""
    if k < 0:
        raise ParameterError("sylvester exponent must be non-negative")
    if 2**k > MAX_ORDER:
        raise ShapeError(f"order 2^{k} exceeds the configured maximum {MAX_ORDER}")
    h = np.ones((1, 1), dtype=np.int64)
    for _ in range(k):
        h = np.block([[h, h], [h, -h]])
    return h


def _jacobsthal(field: GaloisField) -> np.ndarray:
    q = field.q
    return np.array(
        [[field.chi(field.sub(i, j)) for j in range(q)] for i in range(q)],
        dtype=np.int64,
    )


def paley(q: int) -> np.ndarray:
    """Normalized Paley Hadamard matrix: order q+1 (q = 3 mod 4) or 2(q+1) (q = 1 mod 4)."""
    if q % 2 == 0 or prime_power(q) is None:
        raise ParameterError(f"Paley construction needs an odd prime power, got {q}")
    field = GaloisField(q)
    jac = _jacobsthal(field)
    ones = np.ones((1, q), dtype=np.int64)
    if q % 4 == 3:
        skew = np.block([[np.zeros((1, 1), dtype=np.int64), ones], [-ones.T, jac]])
        h = np.eye(q + 1, dtype=np.int64) + skew
    else:
        conf = np.block([[np.zeros((1, 1), dtype=np.int64), ones], [ones.T, jac]])
        plus = np.array([[1, 1], [1, -1]], dtype=np.int64)
        minus = np.array([[1, -1], [-1, -1]], dtype=np.int64)
        h = np.kron(conf, plus) + np.kron(np.eye(q + 1, dtype=np.int64), minus)
    if not verify(h):
        raise VerificationError(f"Paley construction failed verification for q={q}")
    return normalize(h)


def _parse_rows(text: str) -> np.ndarray:
    rows = [line.strip() for line in text.strip().splitlines() if line.strip()]
    return np.array([[1 if c == "+" else -1 for c in row] for row in rows], dtype=np.int64)


def _load_csv(path: Path) -> np.ndarray:
    rows = []
    for line in path.read_text().splitlines():
        line = line.strip()
        if line:
            rows.append([int(tok) for tok in line.replace(";", ",").split(",")])
    return np.array(rows, dtype=np.int64)


@lru_cache(maxsize=None)
def _embedded_registry() -> dict[int, np.ndarray]:
    out = {}
    for order, text in _EMBEDDED.items():
        h = _parse_rows(text)
        if h.shape != (order, order) or not verify(h):
            raise VerificationError(f"embedded Hadamard matrix of order {order} is corrupt")
        out[order] = h
    return out


def _external_registry() -> dict[int, np.ndarray]:
    folder = os.environ.get(REGISTRY_ENV)
    out: dict[int, np.ndarray] = {}
    if not folder:
        return out
    for path in sorted(Path(folder).glob("*.csv")):
        h = _load_csv(path)
        if h.ndim == 2 and h.shape[0] == h.shape[1] and verify(h):
            out.setdefault(h.shape[0], h)
        else:
            raise VerificationError(f"{path} is not a Hadamard matrix")
    return out


def registry_orders() -> list[int]:
    return sorted(set(_embedded_registry()) | set(_external_registry()) | {1, 2})


def known(order: int) -> np.ndarray:
    """Matrix of the given order from the registry (1 and 2 delegate to Sylvester)."""
    if order in (1, 2):
        return sylvester(order.bit_length() - 1)
    embedded = _embedded_registry()
    if order in embedded:
        return embedded[order].copy()
    external = _external_registry()
    if order in external:
        return external[order].copy()
    raise UnsupportedOrderError(order, registry_orders())


def _paley_route(order: int) -> int | None:
    """The Paley q that yields this order, preferring type I."""
    q1 = order - 1
    if q1 >= 3 and q1 % 4 == 3 and prime_power(q1):
        return q1
    if order % 2 == 0:
        q2 = order // 2 - 1
        if q2 >= 5 and q2 % 4 == 1 and prime_power(q2):
            return q2
    return None


def is_available(order: int) -> bool:
    try:
        hadamard(order)
    except UnsupportedOrderError:
        return False
    return True


@lru_cache(maxsize=None)
def _hadamard_cached(order: int) -> np.ndarray:
    if order < 1 or order > MAX_ORDER:
        raise UnsupportedOrderError(order, registry_orders())
    if order & (order - 1) == 0:
        return sylvester(order.bit_length() - 1)
    if order % 4 != 0:
        raise UnsupportedOrderError(order, registry_orders())
    q = _paley_route(order)
    if q is not None:
        return paley(q)
    try:
        return normalize(known(order))
    except UnsupportedOrderError:
        if order % 8:
            raise
    # last resort: H_2 (x) H_{n/2}
    try:
        half = _hadamard_cached(order // 2)
    except UnsupportedOrderError:
        raise UnsupportedOrderError(order, registry_orders()) from None
    return normalize(np.kron(sylvester(1), half))


def hadamard(order: int) -> np.ndarray:
    """Normalized Hadamard matrix of the requested order, by precedence."""
    h = _hadamard_cached(order).copy()
    h.setflags(write=True)
    return h


def route(order: int) -> str:
    """Name of the construction that serves this order."""
    if order & (order - 1) == 0 and order >= 1:
        return "sylvester"
    if order % 4 == 0 and _paley_route(order) is not None:
        q = _paley_route(order)
        return f"paley-{'I' if q % 4 == 3 else 'II'}(q={q})"
    if order in registry_orders():
        return "registry"
    if order % 8 == 0 and is_available(order):
        return f"doubling({route(order // 2)})"
    return "unavailable"


def select_columns(h, idx: Sequence[int]) -> np.ndarray:
    """Column submatrix in the given order."""
    arr = np.asarray(h)
    idx = [int(i) for i in idx]
    if len(set(idx)) != len(idx):
        raise IndexSelectionError(f"duplicate column index in {idx}")
    bad = [i for i in idx if i < 0 or i >= arr.shape[1]]
    if bad:
        raise IndexSelectionError(f"column index out of range: {bad}")
    return arr[:, idx].copy()


def factorial_order(order: int) -> list[int]:
    """Sylvester columns sorted by interaction order, then by index.

    Column j of a Sylvester matrix is the interaction of the basic factors
    whose bits are set in j, so this lists the basic factors first.
    """
    return sorted(range(order), key=lambda j: (bin(j).count("1"), j))
