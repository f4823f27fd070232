"""Certification of construction claims and a brute-force oracle for small classes.

``certify`` recomputes everything a claim asserts (closed form, eigenvalues,
orthogonal blocking, extreme eigenvalue, delta range) from the design itself.
``brute_force_best`` enumerates every difference matrix of a class, modulo
column negation and column permutation, and returns the exact optimum.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterator, Sequence

import numpy as np

from .claims import OptimalityClaim
from .design import BlockedDesign, BlockLayout, DesignClassDescriptor, Provenance
from .errors import BudgetExceeded, ParameterError
from .info import (
    CRITERIA,
    IJForm,
    InfoMatrix,
    MatchReport,
    as_ij_form,
    compute_info,
    eigenvalue_multiplicity,
    evaluate,
    is_orthogonally_blocked,
    is_psd,
    match_closed_form,
    shift,
)

DEFAULT_BUDGET = 2**22
EXACT_E_MAX_K = 12
_SCREEN_RTOL = 1e-9


# ---------------------------------------------------------------- exact numbers

def _to_sympy(x):
    import sympy

    if isinstance(x, Fraction):
        return sympy.Rational(x.numerator, x.denominator)
    return x


def exact_compare(a, b) -> int:
    """Sign of a - b for Fractions or real algebraic sympy numbers, decided exactly."""
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return (a > b) - (a < b)
    import sympy

    diff = _to_sympy(a) - _to_sympy(b)
    approx = sympy.N(diff, 60)
    if abs(approx) > sympy.Float("1e-40"):
        return 1 if approx > 0 else -1
    x = sympy.Symbol("x")
    return 0 if sympy.minimal_polynomial(diff, x) == x else (1 if approx > 0 else -1)


def exact_difference(a, b):
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a - b
    return _to_sympy(a) - _to_sympy(b)


def _fmt(x) -> str:
    return str(x)


# ---------------------------------------------------------------- certificates

@dataclass(frozen=True)
class ClaimCheck:
    name: str
    claimed: Any
    computed: Any
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "claimed": self.claimed,
            "computed": self.computed,
            "passed": self.passed,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class OracleVerdict:
    verdict: str  # OPTIMAL or SUBOPTIMAL
    criterion: str
    design_value: Any
    optimum: Any
    gap: Any
    candidates: int

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "criterion": self.criterion,
            "design_value": _fmt(self.design_value),
            "optimum": _fmt(self.optimum),
            "gap": _fmt(self.gap),
            "candidates": self.candidates,
        }


@dataclass(frozen=True)
class Certificate:
    provenance: Provenance
    class_desc: DesignClassDescriptor
    info: InfoMatrix
    claim: OptimalityClaim | None
    match: MatchReport | None
    criteria: dict[str, Any]
    checks: tuple[ClaimCheck, ...] = ()
    oracle: OracleVerdict | None = None

    @property
    def status(self) -> str:
        if self.claim is None or self.match is None:
            return "NO_CLAIM"
        return self.match.status

    @property
    def all_checks_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def with_oracle(self, verdict: OracleVerdict) -> "Certificate":
        return Certificate(self.provenance, self.class_desc, self.info, self.claim,
                           self.match, self.criteria, self.checks, verdict)

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "method": self.provenance.method,
            "params": dict(self.provenance.params),
            "class": self.class_desc.as_dict(),
            "claim": None if self.claim is None else self.claim.as_dict(),
            "info_matrix": self.info.to_strings(),
            "match": None if self.match is None else self.match.as_dict(),
            "criteria": {k: v for k, v in self.criteria.items()},
            "checks": [c.as_dict() for c in self.checks],
            "all_checks_pass": self.all_checks_pass,
            "oracle": None if self.oracle is None else self.oracle.as_dict(),
        }


def _criterion_values(m: InfoMatrix) -> dict[str, Any]:
    out: dict[str, Any] = {}
    for c in CRITERIA:
        try:
            out[c] = evaluate(m, c, exact=(c != "E" or m.k <= EXACT_E_MAX_K)).as_dict()
        except (ArithmeticError, ValueError) as exc:
            # singular M has no A value; report the reason instead of a number
            out[c] = {"criterion": c, "value": None, "exact": False, "detail": str(exc)}
    return out


def _check_eigenvalues(m: InfoMatrix, claimed: Sequence[Fraction]) -> ClaimCheck:
    counts: dict[Fraction, int] = {}
    for v in claimed:
        counts[v] = counts.get(v, 0) + 1
    found = {str(v): eigenvalue_multiplicity(m, v) for v in counts}
    ok = all(found[str(v)] == c for v, c in counts.items()) and sum(counts.values()) == m.k
    return ClaimCheck(
        "eigenvalues",
        [str(v) for v in claimed],
        {"multiplicity_in_M": found},
        ok,
        "" if ok else "claimed multiset differs from the spectrum of the computed matrix",
    )


def _check_extreme(m: InfoMatrix, kind: str, value: Fraction) -> ClaimCheck:
    is_eig = eigenvalue_multiplicity(m, value) > 0
    is_min = is_eig and is_psd(shift(m.entries, value))
    neg = tuple(tuple(-x for x in row) for row in shift(m.entries, value))
    is_max = is_eig and is_psd(neg)
    ok = is_max if kind == "max" else is_min
    actual = "max" if is_max else "min" if is_min else ("interior" if is_eig else "not an eigenvalue")
    detail = "" if ok else f"{value} is the {actual} eigenvalue of the computed matrix"
    return ClaimCheck(f"{kind}_eigenvalue", str(value), actual, ok, detail)


def _check_delta(m: InfoMatrix, claim: OptimalityClaim) -> ClaimCheck | None:
    if claim.delta_range is None or not isinstance(claim.form, IJForm):
        return None
    form = as_ij_form(m)
    if form is None:
        return ClaimCheck("delta_range", None, None, False, "computed matrix is not of I+J form")
    offset = m.n - claim.form.alpha
    delta = offset - form.beta
    lo, hi = claim.delta_range
    ok = (lo is None or delta > lo) and (hi is None or delta < hi)
    return ClaimCheck(
        "delta_range",
        [None if lo is None else str(lo), None if hi is None else str(hi)],
        str(delta),
        ok,
        "" if ok else f"delta = {delta} lies outside the open interval",
    )


def certify(d: BlockedDesign) -> Certificate:
    """Recompute M and compare it with every part of the attached claim."""
    m = compute_info(d)
    claim = d.provenance.claim
    values = _criterion_values(m)
    if claim is None:
        return Certificate(d.provenance, d.class_desc, m, None, None, values)
    match = match_closed_form(m, claim.form) if claim.form is not None else None
    checks: list[ClaimCheck] = []
    if claim.eigenvalues is not None:
        checks.append(_check_eigenvalues(m, claim.eigenvalues))
    if claim.orthogonal is not None:
        actual = is_orthogonally_blocked(d)
        checks.append(ClaimCheck("orthogonal_blocking", claim.orthogonal, actual, actual == claim.orthogonal))
    if claim.extreme_eigenvalue is not None:
        checks.append(_check_extreme(m, *claim.extreme_eigenvalue))
    delta = _check_delta(m, claim)
    if delta is not None:
        checks.append(delta)
    return Certificate(d.provenance, d.class_desc, m, claim, match, values, tuple(checks))


# ---------------------------------------------------------------- oracle

@dataclass(frozen=True)
class OracleBudget:
    max_candidates: int = DEFAULT_BUDGET
    criterion: str = "D"
    symmetry_reduction: bool = True
    include_zero: bool = False
    workers: int = 1
    chunk_size: int = 1 << 14

    def __post_init__(self):
        c = self.criterion.upper()
        if c not in CRITERIA:
            raise ParameterError(f"unknown criterion {self.criterion!r}; expected one of {CRITERIA}")
        object.__setattr__(self, "criterion", c)


@dataclass(frozen=True)
class OracleResult:
    criterion: str
    optimum: Any
    witness: BlockedDesign | None
    candidates: int
    raw_candidates: int
    optimal_count: int = field(default=0)

    def as_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "optimum": None if self.optimum is None else _fmt(self.optimum),
            "optimum_approx": None if self.optimum is None else float(self.optimum),
            "candidates": self.candidates,
            "raw_candidates": self.raw_candidates,
            "optimal_count": self.optimal_count,
            "witness": None if self.witness is None else self.witness.f.tolist(),
            "block_sizes": None if self.witness is None else list(self.witness.layout.sizes),
        }


def _column_pool(n: int, include_zero: bool, reduced: bool) -> np.ndarray:
    levels = (2, 0, -2) if include_zero else (2, -2)
    cols = np.array(list(itertools.product(levels, repeat=n)), dtype=np.int64)
    if not reduced:
        return cols
    # keep one representative per +/- pair: first nonzero entry positive
    nz = cols != 0
    first = np.where(nz.any(axis=1), cols[np.arange(len(cols)), nz.argmax(axis=1)], 0)
    return cols[first >= 0]


def candidate_count(n: int, k: int, budget: OracleBudget) -> tuple[int, int]:
    """(evaluated, raw) candidate counts for a class."""
    per = 3 if budget.include_zero else 2
    raw = per ** (n * k)
    if not budget.symmetry_reduction:
        return raw, raw
    v = (per**n + 1) // 2 if budget.include_zero else 2 ** (n - 1)
    return math.comb(v + k - 1, k), raw


def _index_stream(v: int, k: int, reduced: bool) -> Iterator[tuple[int, ...]]:
    if reduced:
        return itertools.combinations_with_replacement(range(v), k)
    return itertools.product(range(v), repeat=k)


def _chunks(it: Iterator[tuple[int, ...]], k: int, size: int) -> Iterator[np.ndarray]:
    while True:
        block = np.fromiter(itertools.chain.from_iterable(itertools.islice(it, size)), dtype=np.int64)
        if block.size == 0:
            return
        yield block.reshape(-1, k)


class _Evaluator:
    """Batch Gram computation on an integer scale: G = 4 L M with L = lcm(block sizes)."""

    def __init__(self, pool: np.ndarray, sizes: Sequence[int] | None, criterion: str):
        self.pool = pool
        self.criterion = criterion
        if sizes:
            self.lcm = math.lcm(*sizes)
            bounds = np.cumsum((0,) + tuple(sizes))
            self.sums = np.stack([pool[:, bounds[j]:bounds[j + 1]].sum(axis=1) for j in range(len(sizes))], axis=1)
            self.weights = np.array([self.lcm // s for s in sizes], dtype=np.int64)
        else:
            self.lcm = 1
            self.sums = None
            self.weights = None

    def gram(self, idx: np.ndarray) -> np.ndarray:
        c = self.pool[idx]  # (B, K, N)
        g = self.lcm * np.einsum("bkn,bln->bkl", c, c)
        if self.sums is not None:
            s = self.sums[idx]  # (B, K, b)
            g = g - np.einsum("bkj,blj,j->bkl", s, s, self.weights)
        return g

    def scale(self) -> int:
        return 4 * self.lcm

    def screen(self, idx: np.ndarray) -> np.ndarray:
        """Float criterion value oriented so that larger is better."""
        m = self.gram(idx).astype(float) / self.scale()
        c = self.criterion
        if c == "D":
            return np.linalg.det(m)
        if c == "TRACE":
            return np.trace(m, axis1=1, axis2=2)
        ev = np.linalg.eigvalsh(m)
        if c == "E":
            return ev[:, 0]
        with np.errstate(divide="ignore"):
            tr = np.where(ev[:, 0] > 1e-9, (1.0 / np.where(ev > 1e-9, ev, 1.0)).sum(axis=1), np.inf)
        return -tr

    def exact(self, idx_row: np.ndarray):
        g = self.gram(idx_row[None, :])[0]
        s = self.scale()
        m = tuple(tuple(Fraction(int(x), s) for x in row) for row in g)
        c = self.criterion
        if c == "A":
            try:
                return evaluate(m, "A").value
            except Exception:
                return None
        return evaluate(m, c, exact=True).value


def _better(c: str, a, b) -> int:
    """+1 if a beats b under criterion c, 0 on a tie, -1 otherwise."""
    if a is None:
        return -1 if b is not None else 0
    if b is None:
        return 1
    s = exact_compare(a, b)
    return -s if c == "A" else s


def _scan_chunk(ev: _Evaluator, idx: np.ndarray) -> tuple[float, np.ndarray]:
    vals = ev.screen(idx)
    finite = np.isfinite(vals)
    if not finite.any():
        return -np.inf, idx[:0]
    best = float(vals[finite].max())
    tol = _SCREEN_RTOL * max(1.0, abs(best))
    return best, idx[finite & (vals >= best - tol)]


def brute_force_best(cls: DesignClassDescriptor | tuple, criterion: str | None = None,
                     budget: OracleBudget | None = None, blocked: bool = True) -> OracleResult:
    """Exact optimum of a criterion over all difference matrices of a class.

    ``cls`` is a DesignClassDescriptor or an (N, K, sizes) tuple. With
    ``blocked=False`` the block effects are dropped and M = F^T F / 4.
    """
    if not isinstance(cls, DesignClassDescriptor):
        n, k, sizes = cls
        cls = DesignClassDescriptor(n, k, tuple(sizes))
    budget = budget or OracleBudget()
    if criterion is not None:
        budget = OracleBudget(budget.max_candidates, criterion, budget.symmetry_reduction,
                              budget.include_zero, budget.workers, budget.chunk_size)
    n, k, sizes = cls.n, cls.k, tuple(cls.sizes)
    if sum(sizes) != n:
        raise ParameterError(f"block sizes {sizes} do not sum to N={n}")
    count, raw = candidate_count(n, k, budget)
    if count > budget.max_candidates:
        raise BudgetExceeded(count, budget.max_candidates)
    reduced = budget.symmetry_reduction
    pool = _column_pool(n, budget.include_zero, reduced)
    ev = _Evaluator(pool, sizes if blocked else None, budget.criterion)
    chunks = _chunks(_index_stream(len(pool), k, reduced), k, budget.chunk_size)

    if budget.workers > 1:
        with ThreadPoolExecutor(max_workers=budget.workers) as ex:
            results = list(ex.map(lambda c: _scan_chunk(ev, c), chunks))
    else:
        results = [_scan_chunk(ev, c) for c in chunks]

    top = max((r[0] for r in results), default=-np.inf)
    if not np.isfinite(top):
        return OracleResult(budget.criterion, None, None, count, raw)
    tol = _SCREEN_RTOL * max(1.0, abs(top))
    near = np.concatenate([r[1] for r in results if r[0] >= top - tol] or [np.zeros((0, k), np.int64)])

    best_val, best_rows = None, []
    for row in near:
        val = ev.exact(row)
        cmp = _better(budget.criterion, val, best_val)
        if best_val is None or cmp > 0:
            best_val, best_rows = val, [row]
        elif cmp == 0:
            best_rows.append(row)
    witness_idx = min(best_rows, key=lambda r: tuple(int(x) for x in r))
    f = pool[witness_idx].T.copy()
    witness = BlockedDesign(f, BlockLayout(sizes), provenance=Provenance(None, {"oracle": budget.criterion}))
    return OracleResult(budget.criterion, best_val, witness, count, raw, len(best_rows))


def compare_to_oracle(d: BlockedDesign, criterion: str = "D", budget: OracleBudget | None = None) -> OracleVerdict:
    budget = budget or OracleBudget()
    include_zero = budget.include_zero or bool((d.f == 0).any())
    budget = OracleBudget(budget.max_candidates, criterion, budget.symmetry_reduction,
                          include_zero, budget.workers, budget.chunk_size)
    result = brute_force_best(d.class_desc, budget=budget)
    m = compute_info(d)
    c = budget.criterion
    try:
        value = evaluate(m, c, exact=True).value
    except ArithmeticError:
        value = None
    if value is None:
        return OracleVerdict("SUBOPTIMAL", c, None, result.optimum, None, result.candidates)
    gap = exact_difference(value, result.optimum) if c == "A" else exact_difference(result.optimum, value)
    verdict = "OPTIMAL" if exact_compare(gap, Fraction(0)) <= 0 else "SUBOPTIMAL"
    return OracleVerdict(verdict, c, value, result.optimum, gap, result.candidates)


def certify_with_oracle(d: BlockedDesign, criterion: str = "D", budget: OracleBudget | None = None) -> Certificate:
    return certify(d).with_oracle(compare_to_oracle(d, criterion, budget))
