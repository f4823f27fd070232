import numpy as np
import pytest

from pcbd.design import (
    BlockedDesign,
    BlockLayout,
    LevelPair,
    alternatives,
    concat_rows,
    decode,
    effects_code,
    indicator,
    pair_expand,
    reblock,
    render_alternatives,
    render_pairs,
)
from pcbd.errors import AmbiguityError, CodingError, LayoutError, ShapeError


def test_effects_code_maps_levels_to_signs():
    f1, f2, f = effects_code([[(1, 2), (2, 1)], [(1, 1), (2, 2)]])
    assert f1.tolist() == [[1, -1], [1, -1]]
    assert f2.tolist() == [[-1, 1], [1, -1]]
    assert f.tolist() == [[2, -2], [0, 0]]


def test_effects_code_rejects_bad_levels():
    with pytest.raises(CodingError):
        effects_code([[(1, 3)]])
    with pytest.raises(ShapeError):
        effects_code([[1, 2]])


def test_decode_round_trip():
    pairs = [[(1, 2), (2, 1), (1, 2)], [(2, 1), (2, 1), (1, 2)]]
    _, _, f = effects_code(pairs)
    assert [[tuple(p) for p in row] for row in decode(f)] == pairs
    assert str(LevelPair(1, 2)) == "(1,2)"


def test_decode_zero_is_ambiguous():
    with pytest.raises(AmbiguityError):
        decode([[0, 2]])


def test_alternatives_and_rendering():
    f = np.array([[2, -2], [-2, 2]])
    assert alternatives(f) == [((1, 2), (2, 1)), ((2, 1), (1, 2))]
    assert render_pairs(f) == "(1,2) (2,1)\n(2,1) (1,2)\n"
    assert render_pairs(np.array([[2, 2], [-2, 2]]), transpose=True) == "(1,2) (2,1)\n(1,2) (1,2)\n"
    assert render_alternatives(f) == "((1,2),(2,1))\n((2,1),(1,2))\n"


def test_pair_expand_builds_complementary_pairs():
    out = pair_expand([[1, -1]])
    assert out.tolist() == [[2, -2], [-2, 2]]


def test_concat_rows_width_check():
    assert concat_rows([np.ones((1, 2)), np.zeros((0, 2)), np.ones((2, 2))]).shape == (3, 2)
    with pytest.raises(ShapeError):
        concat_rows([np.ones((1, 2)), np.ones((1, 3))])


def test_layout_and_indicator():
    layout = BlockLayout((2, 3))
    assert layout.n == 5 and layout.b == 2
    assert layout.boundaries() == [0, 2, 5]
    z = indicator(layout)
    assert z.sum(axis=0).tolist() == [2, 3]
    assert BlockLayout.equal(3, 2).sizes == (2, 2, 2)


def test_blocked_design_validation():
    with pytest.raises(CodingError):
        BlockedDesign(np.array([[1, 2]]), BlockLayout((1,)))
    with pytest.raises(LayoutError):
        BlockedDesign(np.array([[2, 2]]), BlockLayout((2,)))
    d = BlockedDesign(np.array([[2], [-2]]), BlockLayout((2,)))
    with pytest.raises(ValueError):
        d.f[0, 0] = -2


def test_reblock_merges_but_never_cuts():
    d = BlockedDesign(np.array([[2], [-2], [2], [-2]]), BlockLayout((2, 2)))
    assert reblock(d, (4,)).layout.sizes == (4,)
    with pytest.raises(LayoutError):
        reblock(d, (1, 3))
