import numpy as np
from hypothesis import given, settings, strategies as st

from pcbd import hadamard as hd
from pcbd.design import BlockedDesign, BlockLayout, indicator, reblock
from pcbd.estimation import ModelParams, estimate, simulate
from pcbd.info import (
    as_ij_form,
    compute_info,
    eigenvalue_multiplicity,
    ij_eigenvalues,
    IJForm,
    is_orthogonally_blocked,
    is_psd,
    unblocked_info,
)
from pcbd.io import design_from_csv, design_from_dict, design_to_csv, design_to_dict
from pcbd.optimality import OracleBudget, brute_force_best

ORDERS = [1, 2, 4, 8, 12, 16, 20, 24, 28, 32, 36, 44, 52, 64]


@st.composite
def designs(draw, max_n=10, max_k=4):
    sizes = draw(st.lists(st.integers(1, 4), min_size=1, max_size=4).filter(lambda s: sum(s) <= max_n))
    n = sum(sizes)
    k = draw(st.integers(1, max_k))
    cells = draw(st.lists(st.sampled_from([-2, 2]), min_size=n * k, max_size=n * k))
    return BlockedDesign(np.array(cells).reshape(n, k), BlockLayout(tuple(sizes)))


@given(st.sampled_from(ORDERS), st.integers(0, 2**32 - 1))
def test_sign_changes_preserve_hadamard_property(order, seed):
    rng = np.random.default_rng(seed)
    h = hd.hadamard(order) * rng.choice([-1, 1], size=(order, 1)) * rng.choice([-1, 1], size=(1, order))
    assert hd.verify(h)
    n = hd.normalize(h)
    assert hd.is_normalized(n) and np.array_equal(hd.normalize(n), n)


@given(designs())
def test_info_is_symmetric_psd_and_bounded_by_unblocked(d):
    m = compute_info(d).entries
    k = d.k
    assert all(m[i][j] == m[j][i] for i in range(k) for j in range(k))
    assert is_psd(m)
    u = unblocked_info(d).entries
    assert is_psd(tuple(tuple(u[i][j] - m[i][j] for j in range(k)) for i in range(k)))


@given(designs(), st.randoms(use_true_random=False))
def test_info_invariant_under_row_and_block_permutations(d, rnd):
    blocks = [blk.copy() for blk in d.blocks()]
    for blk in blocks:
        order = list(range(len(blk)))
        rnd.shuffle(order)
        blk[:] = blk[order]
    perm = list(range(len(blocks)))
    rnd.shuffle(perm)
    f = np.vstack([blocks[p] for p in perm])
    e = BlockedDesign(f, BlockLayout(tuple(len(blocks[p]) for p in perm)))
    assert compute_info(e).entries == compute_info(d).entries


@given(designs())
def test_column_negation_conjugates_info(d):
    signs = np.where(np.arange(d.k) % 2 == 0, 1, -1)
    e = BlockedDesign(d.f * signs, d.layout)
    m, n = compute_info(d).entries, compute_info(e).entries
    assert all(n[i][j] == signs[i] * signs[j] * m[i][j] for i in range(d.k) for j in range(d.k))


@given(designs())
def test_orthogonal_blocking_equals_unblocked(d):
    if is_orthogonally_blocked(d):
        assert compute_info(d).entries == unblocked_info(d).entries


@given(designs())
def test_merging_blocks_never_loses_information(d):
    merged = reblock(d, (d.n,))
    m, c = compute_info(d).entries, compute_info(merged).entries
    assert is_psd(tuple(tuple(c[i][j] - m[i][j] for j in range(d.k)) for i in range(d.k)))


@given(st.fractions(min_value=-20, max_value=20, max_denominator=7),
       st.fractions(min_value=-5, max_value=5, max_denominator=7), st.integers(1, 7))
def test_ij_eigenvalues_agree_with_exact_multiplicity(alpha, beta, k):
    form = IJForm(alpha, beta)
    mat = form.matrix(k)
    vals = ij_eigenvalues(form, k)
    assert as_ij_form(mat) == form or k == 1
    for v in set(vals):
        assert eigenvalue_multiplicity(mat, v) == vals.count(v)


@settings(max_examples=40, deadline=None)
@given(designs(max_n=8, max_k=3), st.data())
def test_noiseless_estimation_recovers_beta_for_any_block_effects(d, data):
    if _singular(d):
        return
    beta = data.draw(st.lists(st.fractions(-9, 9, max_denominator=5), min_size=d.k, max_size=d.k))
    gamma = data.draw(st.lists(st.integers(-9, 9), min_size=d.layout.b, max_size=d.layout.b))
    y = simulate(d, ModelParams(beta, gamma))
    assert estimate(d, y).beta_hat == tuple(beta)
    shift = indicator(d.layout) @ np.array(gamma)
    y2 = [a + int(s) for a, s in zip(y.y, shift)]
    assert estimate(d, y2).beta_hat == tuple(beta)


def _singular(d):
    from pcbd.info import determinant

    return determinant(compute_info(d).entries) == 0


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([(3, 1, (1, 2)), (4, 1, (2, 2)), (4, 2, (2, 2)), (3, 2, (3,)), (4, 2, (1, 3))]),
       st.sampled_from(["D", "A", "E", "TRACE"]))
def test_symmetry_reduction_is_lossless(cls, criterion):
    full = brute_force_best(cls, criterion, OracleBudget(symmetry_reduction=False))
    reduced = brute_force_best(cls, criterion)
    assert full.optimum == reduced.optimum


@given(designs())
def test_file_round_trips(d):
    assert design_from_csv(design_to_csv(d)).same_as(d)
    assert design_from_dict(design_to_dict(d)).same_as(d)
