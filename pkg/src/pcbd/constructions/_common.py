"""Parameter record and helpers shared by the construction recipes."""

from __future__ import annotations

from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .. import hadamard as hd
from ..claims import OptimalityClaim
from ..design import BlockedDesign, BlockLayout, DesignClassDescriptor, Provenance
from ..errors import ClassError, ParameterError


@dataclass(frozen=True)
class MethodParams:
    """Inputs of a construction. Each method reads the fields it needs."""

    method: int
    n: int | None = None
    k: int | None = None
    b: int | None = None
    k1: int | None = None
    m: int | None = None
    m1: int | None = None
    p: int | None = None
    q: int | None = None
    i: int | None = None
    b1: int | None = None
    sizes: tuple[int, ...] | None = None
    groups: tuple[tuple[int, int], ...] | None = None
    columns: tuple[int, ...] | None = None

    def __post_init__(self):
        if not 1 <= int(self.method) <= 27:
            raise ParameterError(f"method must be in 1..27, got {self.method}")
        if self.sizes is not None:
            object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        if self.groups is not None:
            object.__setattr__(self, "groups", tuple((int(a), int(c)) for a, c in self.groups))
        if self.columns is not None:
            object.__setattr__(self, "columns", tuple(int(c) for c in self.columns))

    def as_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if v is None:
                continue
            if f.name == "groups":
                v = [list(g) for g in v]
            elif isinstance(v, tuple):
                v = list(v)
            out[f.name] = v
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "MethodParams":
        known = {f.name for f in fields(cls)}
        clean = {k: v for k, v in data.items() if k in known}
        for key in ("sizes", "columns"):
            if clean.get(key) is not None:
                clean[key] = tuple(clean[key])
        if clean.get("groups") is not None:
            clean["groups"] = tuple(tuple(g) for g in clean["groups"])
        return cls(**clean)

    def need(self, *names: str) -> tuple:
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            raise ParameterError(f"method {self.method} needs parameter(s): {', '.join(missing)}")
        return tuple(getattr(self, n) for n in names)


def require(condition: bool, message: str) -> None:
    if not condition:
        raise ClassError(message)


def need_positive(**values: int) -> None:
    for name, v in values.items():
        if v is None or v < 1:
            raise ParameterError(f"{name} must be a positive integer, got {v}")


def matrix_of_order(order: int) -> np.ndarray:
    """Normalized Hadamard matrix; raises UnsupportedOrderError when absent."""
    return hd.hadamard(order)


def pick(h: np.ndarray, k: int, columns: Sequence[int] | None = None,
         order: str = "natural", skip: int = 0) -> np.ndarray:
    """Select K columns from h.

    ``skip`` drops leading columns first; ``order="factorial"`` lists Sylvester
    columns by interaction order. Explicit ``columns`` index the matrix left
    after skipping.
    """
    base = h[:, skip:]
    width = base.shape[1]
    if columns is not None:
        idx = list(columns)
        if len(idx) != k:
            raise ParameterError(f"expected {k} column indices, got {len(idx)}")
    else:
        if k > width:
            raise ClassError(f"K={k} exceeds the {width} available columns")
        if order == "factorial" and skip == 0 and width & (width - 1) == 0 and width == h.shape[0]:
            idx = hd.factorial_order(width)[:k]
        else:
            idx = list(range(k))
    return hd.select_columns(base, idx)


def ones(rows: int, cols: int) -> np.ndarray:
    return np.ones((rows, cols), dtype=np.int64)


def split_even(total_pairs: int, parts: int) -> list[int]:
    """Split pairs into near-equal groups, larger groups first."""
    base, extra = divmod(total_pairs, parts)
    return [base + (1 if j < extra else 0) for j in range(parts)]


def build(method: int, params: MethodParams, f: np.ndarray, sizes: Sequence[int],
          claim: OptimalityClaim, notes: Sequence[str] = (), tags: dict | None = None) -> BlockedDesign:
    layout = BlockLayout(tuple(sizes))
    f = np.asarray(f, dtype=np.int64)
    desc_tags = {"N mod 4": int(f.shape[0] % 4), "N mod 8": int(f.shape[0] % 8)}
    desc_tags.update(tags or {})
    desc = DesignClassDescriptor(int(f.shape[0]), int(f.shape[1]), layout.sizes, desc_tags)
    prov = Provenance(method, params.as_dict(), claim, tuple(notes))
    return BlockedDesign(f, layout, desc, prov)


def frac(x) -> Fraction:
    return Fraction(x)
