"""Design data model: difference matrices, block layouts, effects coding.

A paired comparison design with K two-level attributes is stored as its
difference matrix F (N x K, entries in {-2, 0, +2}) together with a layout
that cuts the N rows into consecutive blocks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, NamedTuple, Sequence

import numpy as np

from .errors import AmbiguityError, CodingError, LayoutError, ShapeError

# Generator constants: the scalar used for "L.A" and the complementary pair
# vector used for "L (x) A_v".
A = 2
A_V = np.array([[2], [-2]], dtype=np.int64)


class LevelPair(NamedTuple):
    first: int
    second: int

    def __str__(self) -> str:
        return f"({self.first},{self.second})"


@dataclass(frozen=True)
class BlockLayout:
    sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        if not sizes or any(s < 1 for s in sizes):
            raise LayoutError(f"block sizes must be positive, got {sizes}")
        object.__setattr__(self, "sizes", sizes)

    @classmethod
    def equal(cls, b: int, m: int) -> "BlockLayout":
        return cls((m,) * b)

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def b(self) -> int:
        return len(self.sizes)

    def boundaries(self) -> list[int]:
        """Row offsets at which blocks start, plus N at the end."""
        out = [0]
        for s in self.sizes:
            out.append(out[-1] + s)
        return out

    def ranges(self) -> list[range]:
        cuts = self.boundaries()
        return [range(cuts[j], cuts[j + 1]) for j in range(self.b)]

    def is_equal(self) -> bool:
        return len(set(self.sizes)) == 1


@dataclass(frozen=True)
class DesignClassDescriptor:
    n: int
    k: int
    sizes: tuple[int, ...]
    tags: dict[str, Any] = field(default_factory=dict, compare=False)

    @classmethod
    def for_design(cls, f: np.ndarray, layout: BlockLayout) -> "DesignClassDescriptor":
        n, k = f.shape
        return cls(n, k, layout.sizes, {"N mod 4": n % 4, "N mod 8": n % 8})

    def as_dict(self) -> dict[str, Any]:
        return {"N": self.n, "K": self.k, "block_sizes": list(self.sizes), "tags": dict(self.tags)}


@dataclass(frozen=True)
class Provenance:
    method: int | None
    params: dict[str, Any] = field(default_factory=dict)
    claim: Any = None
    notes: tuple[str, ...] = ()

    def as_dict(self) -> dict[str, Any]:
        return {
            "method": self.method,
            "params": dict(self.params),
            "claim": self.claim.as_dict() if self.claim is not None else None,
            "notes": list(self.notes),
        }


@dataclass(frozen=True, eq=False)
class BlockedDesign:
    f: np.ndarray
    layout: BlockLayout
    class_desc: DesignClassDescriptor | None = None
    provenance: Provenance = field(default_factory=lambda: Provenance(None))

    def __post_init__(self):
        f = np.array(self.f, dtype=np.int64)
        if f.ndim != 2:
            raise ShapeError(f"difference matrix must be 2-D, got shape {f.shape}")
        if not np.all(np.isin(f, (-2, 0, 2))):
            raise CodingError("difference matrix entries must lie in {-2, 0, +2}")
        if self.layout.n != f.shape[0]:
            raise LayoutError(
                f"block sizes sum to {self.layout.n} but the design has {f.shape[0]} rows"
            )
        f.setflags(write=False)
        object.__setattr__(self, "f", f)
        if self.class_desc is None:
            object.__setattr__(self, "class_desc", DesignClassDescriptor.for_design(f, self.layout))

    @property
    def n(self) -> int:
        return self.f.shape[0]

    @property
    def k(self) -> int:
        return self.f.shape[1]

    def blocks(self) -> list[np.ndarray]:
        return [self.f[r.start : r.stop] for r in self.layout.ranges()]

    def same_as(self, other: "BlockedDesign") -> bool:
        return self.layout == other.layout and np.array_equal(self.f, other.f)


def effects_code(pairs: Sequence[Sequence[Sequence[int]]]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Map an N x K table of level pairs to (F1, F2, F) with level 1 -> +1, level 2 -> -1."""
    arr = np.asarray(pairs, dtype=np.int64)
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise ShapeError("expected an N x K table of level pairs")
    if not np.all(np.isin(arr, (1, 2))):
        raise CodingError("attribute levels must be 1 or 2")
    coded = np.where(arr == 1, 1, -1)
    f1, f2 = coded[..., 0], coded[..., 1]
    return f1, f2, f1 - f2


def decode(f) -> list[list[LevelPair]]:
    """Inverse of effects_code on +-2 entries: +2 -> (1,2), -2 -> (2,1)."""
    arr = np.asarray(f, dtype=np.int64)
    if np.any(arr == 0):
        raise AmbiguityError("an entry of 0 has no canonical level pair")
    if not np.all(np.isin(arr, (-2, 2))):
        raise CodingError("decode expects entries of -2 or +2")
    return [[LevelPair(1, 2) if x > 0 else LevelPair(2, 1) for x in row] for row in arr]


def alternatives(f) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Each row as the two profiles being compared."""
    rows = decode(f)
    return [(tuple(p.first for p in r), tuple(p.second for p in r)) for r in rows]


def kron(a, b) -> np.ndarray:
    return np.kron(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))


def pair_expand(l) -> np.ndarray:
    """L (x) A_v: each +-1 row becomes the row and its complement, scaled by 2."""
    return kron(l, A_V)


def concat_rows(parts: Sequence[np.ndarray]) -> np.ndarray:
    mats = [np.asarray(p, dtype=np.int64).reshape(len(p), -1) if len(p) else None for p in parts]
    mats = [m for m in mats if m is not None]
    widths = {m.shape[1] for m in mats}
    if len(widths) != 1:
        raise ShapeError(f"cannot stack matrices with column counts {sorted(widths)}")
    return np.vstack(mats)


def indicator(layout: BlockLayout) -> np.ndarray:
    z = np.zeros((layout.n, layout.b), dtype=np.int64)
    for j, rows in enumerate(layout.ranges()):
        z[rows.start : rows.stop, j] = 1
    return z


def reblock(d: BlockedDesign, new_sizes: BlockLayout | Sequence[int]) -> BlockedDesign:
    """Same F with coarser blocks, each a union of consecutive existing blocks."""
    layout = new_sizes if isinstance(new_sizes, BlockLayout) else BlockLayout(tuple(new_sizes))
    if layout.n != d.n:
        raise LayoutError(f"new layout covers {layout.n} rows, design has {d.n}")
    old_cuts = set(d.layout.boundaries())
    stray = [c for c in layout.boundaries() if c not in old_cuts]
    if stray:
        raise LayoutError(f"new block boundaries {stray} cut through existing blocks")
    return BlockedDesign(d.f, layout, None, d.provenance)


def render_pairs(f, transpose: bool = False) -> str:
    """Level-pair text, one design row per line (or one attribute per line)."""
    rows = decode(f)
    if transpose:
        rows = [list(col) for col in zip(*rows)]
    return "\n".join(" ".join(str(p) for p in row) for row in rows) + "\n"


def render_alternatives(f) -> str:
    lines = []
    for first, second in alternatives(f):
        a = ",".join(map(str, first))
        b = ",".join(map(str, second))
        lines.append(f"(({a}),({b}))")
    return "\n".join(lines) + "\n"
