from fractions import Fraction as Fr

import numpy as np
import pytest

from pcbd.constructions import MethodParams, construct
from pcbd.design import BlockedDesign, BlockLayout
from pcbd.errors import BudgetExceeded, ParameterError
from pcbd.optimality import (
    OracleBudget,
    brute_force_best,
    candidate_count,
    certify,
    compare_to_oracle,
    exact_compare,
)

# Oracle values below were computed once by exhaustive enumeration and frozen.
ORACLE_6_2_3 = {"D": Fr(32), "E": Fr(4), "A": Fr(3, 8), "TRACE": Fr(12)}
ORACLE_8_2_2 = {"D": Fr(64), "E": Fr(8)}


def test_certify_method1_n18():
    cert = certify(construct(MethodParams(1, n=18, k=6, b=9)))
    assert cert.status == "EXACT_MATCH"
    assert cert.criteria["D"]["value"] == str(16**5 * 28)
    assert cert.oracle is None


def test_certify_without_claim():
    d = BlockedDesign(np.array([[2], [-2]]), BlockLayout((2,)))
    cert = certify(d)
    assert cert.status == "NO_CLAIM"
    assert cert.criteria["D"]["value"] == "2"
    assert cert.checks == ()


def test_certify_method4_archives_mismatch():
    cert = certify(construct(MethodParams(4, n=18, k=8, k1=2, b=3)))
    assert cert.status == "MISMATCH"
    assert cert.match.difference is not None
    body = cert.as_dict()
    assert body["match"]["status"] == "MISMATCH"


@pytest.mark.parametrize("criterion", sorted(ORACLE_6_2_3))
def test_oracle_six_pairs(criterion):
    res = brute_force_best((6, 2, (2, 2, 2)), criterion)
    assert res.optimum == ORACLE_6_2_3[criterion]
    assert res.candidates == 528 and res.raw_candidates == 2**12


@pytest.mark.parametrize("criterion", sorted(ORACLE_8_2_2))
def test_oracle_eight_pairs(criterion):
    assert brute_force_best((8, 2, (4, 4)), criterion).optimum == ORACLE_8_2_2[criterion]


def test_oracle_single_attribute_e():
    res = brute_force_best((4, 1, (2, 2)), "E")
    assert res.optimum == 4
    assert res.witness.f[:, 0].sum() == 0


def test_oracle_refuses_large_class():
    with pytest.raises(BudgetExceeded) as info:
        brute_force_best((30, 6, (10, 10, 10)), "D")
    assert info.value.exit_code == 4
    assert info.value.required > 2**22


def test_candidate_count_reduction():
    assert candidate_count(6, 2, OracleBudget()) == (528, 4096)
    assert candidate_count(6, 2, OracleBudget(symmetry_reduction=False)) == (4096, 4096)


def test_unknown_criterion():
    with pytest.raises(ParameterError):
        OracleBudget(criterion="G")


def test_method1_design_is_optimal():
    d = construct(MethodParams(1, n=6, k=2, b=3))
    for c in ("D", "E", "A", "TRACE"):
        verdict = compare_to_oracle(d, c)
        assert verdict.verdict == "OPTIMAL" and verdict.gap == 0


def test_sign_flip_is_suboptimal():
    d = construct(MethodParams(1, n=6, k=2, b=3))
    f = d.f.copy()
    f[0, 0] = -f[0, 0]
    bad = BlockedDesign(f, d.layout)
    verdict = compare_to_oracle(bad, "D")
    assert verdict.verdict == "SUBOPTIMAL" and verdict.gap > 0


def test_parallel_enumeration_matches_serial():
    serial = brute_force_best((6, 2, (2, 2, 2)), "E", OracleBudget(chunk_size=50))
    parallel = brute_force_best((6, 2, (2, 2, 2)), "E", OracleBudget(chunk_size=50, workers=4))
    assert serial.optimum == parallel.optimum
    assert np.array_equal(serial.witness.f, parallel.witness.f)


def test_include_zero_never_worse():
    plain = brute_force_best((4, 1, (2, 2)), "D")
    audit = brute_force_best((4, 1, (2, 2)), "D", OracleBudget(include_zero=True))
    assert audit.optimum == plain.optimum


def test_witness_is_optimal_and_deterministic():
    a = brute_force_best((6, 2, (2, 2, 2)), "D")
    b = brute_force_best((6, 2, (2, 2, 2)), "D")
    assert np.array_equal(a.witness.f, b.witness.f)
    assert compare_to_oracle(a.witness, "D").verdict == "OPTIMAL"


def test_blocking_costs_nothing_when_orthogonal_blocking_is_optimal():
    # the optimum of the blocked class is attained by an orthogonally blocked
    # design, and for such designs blocked and unblocked matrices coincide
    for cls in ((6, 2, (2, 2, 2)), (8, 2, (4, 4))):
        res = brute_force_best(cls, "D")
        assert res.witness.f.reshape(-1).size
        sums = [blk.sum(axis=0) for blk in res.witness.blocks()]
        assert all((s == 0).all() for s in sums)
    assert brute_force_best((8, 2, (4, 4)), "D").optimum == brute_force_best((8, 2, (4, 4)), "D", blocked=False).optimum


def test_exact_compare_algebraic():
    import sympy

    r = sympy.sqrt(2)
    assert exact_compare(r, Fr(1)) == 1
    assert exact_compare(r, r) == 0
    assert exact_compare(Fr(1, 3), Fr(1, 2)) == -1
