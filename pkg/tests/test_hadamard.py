import numpy as np
import pytest

from pcbd import hadamard as hd
from pcbd.errors import IndexSelectionError, UnsupportedOrderError
from pcbd.finite_field import GaloisField, prime_power

ORDERS = [1, 2, 4, 8, 12, 16, 20, 24, 28, 32, 36, 40, 44, 48, 52, 56, 60, 64]


@pytest.mark.parametrize("order", ORDERS)
def test_generated_orders_are_hadamard_and_normalized(order):
    h = hd.hadamard(order)
    assert h.shape == (order, order)
    assert np.array_equal(h @ h.T, order * np.eye(order, dtype=int))
    assert hd.is_normalized(h)


def test_sylvester_small_orders_literal():
    assert hd.sylvester(0).tolist() == [[1]]
    assert hd.sylvester(1).tolist() == [[1, 1], [1, -1]]
    assert hd.sylvester(2).tolist() == [[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]]


def test_routes():
    assert hd.route(8) == "sylvester"
    assert hd.route(12) == "paley-I(q=11)"
    assert hd.route(28) == "paley-I(q=27)"
    assert hd.route(36) == "paley-II(q=17)"
    assert hd.route(52) == "paley-II(q=25)"
    assert hd.route(92) == "unavailable"


def test_unsupported_orders_raise_with_registry_listing():
    for order in (3, 6, 92):
        with pytest.raises(UnsupportedOrderError) as info:
            hd.hadamard(order)
        assert info.value.exit_code == 3
        assert "12" in str(info.value)


def test_registry_entries_verify():
    for order in (12, 20, 28):
        assert hd.verify(hd.known(order))


def test_external_registry(tmp_path, monkeypatch):
    h = hd.hadamard(12)
    (tmp_path / "h12.csv").write_text("\n".join(",".join(str(x) for x in row) for row in -h))
    monkeypatch.setenv("PCBD_HADAMARD_DIR", str(tmp_path))
    assert hd.verify(hd.known(12))


def test_external_registry_adds_new_order(tmp_path, monkeypatch):
    h = np.kron(hd.hadamard(12), hd.hadamard(2))
    (tmp_path / "h24.csv").write_text("\n".join(",".join(str(x) for x in row) for row in h))
    monkeypatch.setenv("PCBD_HADAMARD_DIR", str(tmp_path))
    assert 24 in hd.registry_orders()


def test_normalize_makes_first_row_and_column_positive(rng):
    h = hd.hadamard(16) * rng.choice([-1, 1], size=(16, 1)) * rng.choice([-1, 1], size=(1, 16))
    n = hd.normalize(h)
    assert hd.is_normalized(n) and hd.verify(n)


def test_verify_rejects_non_hadamard():
    assert not hd.verify(np.ones((4, 4), dtype=int))
    assert not hd.verify(np.array([[1, 2], [1, -1]]))


def test_factorial_order_eight():
    assert hd.factorial_order(8) == [0, 1, 2, 4, 3, 5, 6, 7]


def test_select_columns_errors():
    h = hd.hadamard(4)
    assert hd.select_columns(h, [2, 0]).tolist() == h[:, [2, 0]].tolist()
    with pytest.raises(IndexSelectionError):
        hd.select_columns(h, [0, 0])
    with pytest.raises(IndexSelectionError):
        hd.select_columns(h, [4])


def test_prime_power_detection():
    assert prime_power(27) == (3, 3)
    assert prime_power(25) == (5, 2)
    assert prime_power(12) is None
    assert prime_power(1) is None


def test_galois_field_quadratic_character():
    gf = GaloisField(9)
    squares = {gf.mul(x, x) for x in range(1, 9)}
    assert len(squares) == 4
    assert all(gf.chi(x) == (1 if x in squares else -1) for x in range(1, 9))
    assert gf.chi(0) == 0
