"""Blocked information matrix and optimality criteria in exact arithmetic.

Scale convention: M = (F^T F - F^T Z (Z^T Z)^{-1} Z^T F) / 4, which makes the
closed forms such as (N-2)I + 2J come out directly for entries of +-2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .design import BlockedDesign, indicator
from .errors import ShapeError, SingularityError

Matrix = tuple[tuple[Fraction, ...], ...]
CRITERIA = ("D", "A", "E", "TRACE")
EIGEN_TOLERANCE = 1e-10


def _freeze(rows) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def fraction_matrix(rows) -> Matrix:
    """Exact copy of a nested sequence or integer array."""
    if isinstance(rows, np.ndarray):
        rows = rows.tolist()
    return _freeze(rows)


@dataclass(frozen=True)
class IJForm:
    """alpha I_K + beta J_K. A beta of None means the claim fixes only alpha."""

    alpha: Fraction
    beta: Fraction | None

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if self.beta is not None:
            object.__setattr__(self, "beta", Fraction(self.beta))

    def matrix(self, k: int) -> Matrix:
        if self.beta is None:
            raise ValueError("an I+J claim without beta has no single matrix")
        return _freeze(
            [[self.alpha * (i == j) + self.beta for j in range(k)] for i in range(k)]
        )

    def as_dict(self) -> dict:
        return {"alpha": str(self.alpha), "beta": None if self.beta is None else str(self.beta)}


@dataclass(frozen=True)
class InfoMatrix:
    entries: Matrix
    n: int
    scale_convention: str = "quarter-gram"

    @property
    def k(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def normalized(self) -> Matrix:
        """The same matrix divided by N (the 1/(4N) convention)."""
        return _freeze([[x / self.n for x in row] for row in self.entries])

    def as_float(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.entries])

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.entries]


def _gram(a: np.ndarray, b: np.ndarray) -> list[list[int]]:
    return (a.astype(object).T @ b.astype(object)).tolist()


def _block_sums(d: BlockedDesign) -> list[list[int]]:
    return [[int(v) for v in blk.sum(axis=0)] for blk in d.blocks()]


def compute_info_general(d: BlockedDesign) -> InfoMatrix:
    """General projector route, valid for any block sizes."""
    ftf = _gram(d.f, d.f)
    sums = _block_sums(d)
    k = d.k
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            corr = sum(Fraction(s[i] * s[j], m) for s, m in zip(sums, d.layout.sizes))
            row.append((ftf[i][j] - corr) / 4)
        rows.append(row)
    return InfoMatrix(_freeze(rows), d.n)


def compute_info_equal(d: BlockedDesign) -> InfoMatrix:
    """Shortcut for equal block sizes: Z^T Z = mI."""
    if not d.layout.is_equal():
        raise ShapeError("equal-size route needs all blocks the same size")
    m = d.layout.sizes[0]
    z = indicator(d.layout)
    zf = _gram(z, d.f)
    ftf = _gram(d.f, d.f)
    k = d.k
    rows = [
        [
            (ftf[i][j] - Fraction(sum(zf[r][i] * zf[r][j] for r in range(len(zf))), m)) / 4
            for j in range(k)
        ]
        for i in range(k)
    ]
    return InfoMatrix(_freeze(rows), d.n)


def compute_info(d: BlockedDesign) -> InfoMatrix:
    if d.layout.is_equal():
        return compute_info_equal(d)
    return compute_info_general(d)


def unblocked_info(d: BlockedDesign) -> InfoMatrix:
    """F^T F / 4, the matrix that applies when blocks are ignored."""
    ftf = _gram(d.f, d.f)
    return InfoMatrix(_freeze([[Fraction(x, 4) for x in row] for row in ftf]), d.n)


def is_orthogonally_blocked(d: BlockedDesign) -> bool:
    return all(v == 0 for row in _block_sums(d) for v in row)


def as_ij_form(m: InfoMatrix | Matrix) -> IJForm | None:
    entries = m.entries if isinstance(m, InfoMatrix) else m
    k = len(entries)
    diag = {entries[i][i] for i in range(k)}
    off = {entries[i][j] for i in range(k) for j in range(k) if i != j}
    if len(diag) != 1 or len(off) > 1:
        return None
    beta = off.pop() if off else Fraction(0)
    return IJForm(diag.pop() - beta, beta)


def ij_eigenvalues(form: IJForm, k: int) -> list[Fraction]:
    """Ascending multiset {alpha x (K-1), alpha + K beta}."""
    if form.beta is None:
        raise ValueError("beta is required")
    vals = [form.alpha] * (k - 1) + [form.alpha + k * form.beta]
    return sorted(vals)


def determinant(m: Matrix) -> Fraction:
    a = [list(row) for row in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if a[r][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            factor = a[r][c] / a[c][c]
            if factor:
                for j in range(c, n):
                    a[r][j] -= factor * a[c][j]
    return det


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    a = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        pivot = next((r for r in range(c, n) if a[r][c] != 0), None)
        if pivot is None:
            raise SingularityError("information matrix is singular")
        a[c], a[pivot] = a[pivot], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                factor = a[r][c]
                a[r] = [x - factor * y for x, y in zip(a[r], a[c])]
    return _freeze([row[n:] for row in a])


def solve(m: Matrix, rhs: Sequence[Fraction]) -> list[Fraction]:
    inv = inverse(m)
    return [sum(inv[i][j] * rhs[j] for j in range(len(rhs))) for i in range(len(rhs))]


def trace(m: Matrix) -> Fraction:
    return sum((m[i][i] for i in range(len(m))), Fraction(0))


def rank(m: Matrix) -> int:
    a = [list(row) for row in m]
    rows, cols = len(a), len(a[0]) if a else 0
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        for i in range(r + 1, rows):
            factor = a[i][c] / a[r][c]
            if factor:
                for j in range(c, cols):
                    a[i][j] -= factor * a[r][j]
        r += 1
    return r


def shift(m: Matrix, lam) -> Matrix:
    """m - lam I."""
    lam = Fraction(lam)
    return _freeze([[x - lam * (i == j) for j, x in enumerate(row)] for i, row in enumerate(m)])


def eigenvalue_multiplicity(m: InfoMatrix | Matrix, lam) -> int:
    entries = m.entries if isinstance(m, InfoMatrix) else m
    return len(entries) - rank(shift(entries, lam))


def is_psd(m: Matrix) -> bool:
    """Exact positive semidefiniteness by symmetric elimination (Schur complements)."""
    a = [list(row) for row in m]
    live = list(range(len(a)))
    while live:
        i = live.pop(0)
        d = a[i][i]
        if d < 0:
            return False
        if d == 0:
            if any(a[i][j] != 0 for j in live):
                return False
            continue
        for j in live:
            if a[j][i]:
                f = a[j][i] / d
                for l in live:
                    a[j][l] -= f * a[i][l]
    return True


def exact_min_eigenvalue(m: InfoMatrix | Matrix):
    """Smallest eigenvalue as an exact number: a Fraction when rational, else a sympy root."""
    entries = m.entries if isinstance(m, InfoMatrix) else m
    form = as_ij_form(entries)
    if form is not None:
        return ij_eigenvalues(form, len(entries))[0]
    import sympy

    poly = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in entries]).charpoly()
    root = min(poly.real_roots())
    if root.is_Rational:
        return Fraction(int(root.p), int(root.q))
    return root


@dataclass(frozen=True)
class Eigenvalues:
    values: tuple[Union[Fraction, float], ...]
    exact: bool
    error_bound: float

    def as_dict(self) -> dict:
        return {
            "values": [str(v) if self.exact else repr(float(v)) for v in self.values],
            "exact": self.exact,
            "error_bound": self.error_bound,
        }


def eigenvalues(m: InfoMatrix | Matrix) -> Eigenvalues:
    """Exact for I+J forms; otherwise eigvalsh with a residual-based bound."""
    entries = m.entries if isinstance(m, InfoMatrix) else m
    form = as_ij_form(entries)
    if form is not None:
        return Eigenvalues(tuple(ij_eigenvalues(form, len(entries))), True, 0.0)
    arr = np.array([[float(x) for x in row] for row in entries])
    vals, vecs = np.linalg.eigh(arr)
    # For a symmetric matrix some eigenvalue lies within ||Av - lv|| of l
    # when ||v|| = 1; add float rounding of the input itself.
    resid = np.linalg.norm(arr @ vecs - vecs * vals, axis=0)
    rounding = np.finfo(float).eps * max(1.0, float(np.abs(arr).max())) * len(arr)
    bound = float(resid.max() + rounding)
    if bound > EIGEN_TOLERANCE:
        raise ArithmeticError(f"eigenvalue bound {bound} exceeds tolerance {EIGEN_TOLERANCE}")
    return Eigenvalues(tuple(float(v) for v in vals), False, EIGEN_TOLERANCE)


@dataclass(frozen=True)
class CriterionValue:
    criterion: str
    value: Union[Fraction, float]
    exact: bool
    error_bound: float = 0.0

    def as_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "value": str(self.value) if self.exact else repr(float(self.value)),
            "approx": float(self.value),
            "exact": self.exact,
            "error_bound": self.error_bound,
        }


def evaluate(m: InfoMatrix | Matrix, criterion: str, exact: bool = False) -> CriterionValue:
    """Criterion value; ``exact=True`` also makes E exact (algebraic when irrational)."""
    entries = m.entries if isinstance(m, InfoMatrix) else m
    c = criterion.upper()
    if c == "D":
        return CriterionValue("D", determinant(entries), True)
    if c == "TRACE":
        return CriterionValue("TRACE", trace(entries), True)
    if c == "A":
        return CriterionValue("A", trace(inverse(entries)), True)
    if c == "E":
        if exact:
            return CriterionValue("E", exact_min_eigenvalue(entries), True)
        ev = eigenvalues(entries)
        return CriterionValue("E", ev.values[0], ev.exact, ev.error_bound)
    raise ValueError(f"unknown criterion {criterion!r}; expected one of {CRITERIA}")


@dataclass(frozen=True)
class MatchReport:
    status: str  # EXACT_MATCH or MISMATCH
    claimed: Matrix | None
    difference: Matrix | None
    detail: str = ""

    def as_dict(self) -> dict:
        def s(m):
            return None if m is None else [[str(x) for x in row] for row in m]

        return {
            "status": self.status,
            "claimed": s(self.claimed),
            "difference": s(self.difference),
            "detail": self.detail,
        }


def match_closed_form(m: InfoMatrix | Matrix, claim: IJForm | Matrix) -> MatchReport:
    entries = m.entries if isinstance(m, InfoMatrix) else m
    k = len(entries)
    if isinstance(claim, IJForm) and claim.beta is None:
        form = as_ij_form(entries)
        if form is None:
            return MatchReport("MISMATCH", None, None, "computed matrix is not of I+J form")
        if form.alpha != claim.alpha:
            return MatchReport(
                "MISMATCH", None, None,
                f"I+J form with alpha={form.alpha}, claimed alpha={claim.alpha}",
            )
        return MatchReport(
            "EXACT_MATCH", IJForm(claim.alpha, form.beta).matrix(k), None,
            f"beta read off the computed matrix: {form.beta}",
        )
    target = claim.matrix(k) if isinstance(claim, IJForm) else _freeze(claim)
    if len(target) != k or any(len(r) != k for r in target):
        raise ShapeError("claimed matrix has the wrong dimension")
    diff = _freeze([[entries[i][j] - target[i][j] for j in range(k)] for i in range(k)])
    if all(x == 0 for row in diff for x in row):
        return MatchReport("EXACT_MATCH", target, None)
    return MatchReport("MISMATCH", target, diff)
