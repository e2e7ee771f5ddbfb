import pytest
from hypothesis import given, strategies as st

from vok.levelrank import d_map, degree, degree_zero, labels, levelrank_pairs, rotate, tau, transpose, w_map


def test_known_image():
    assert tau(3, 9, (4, 4, 1)) == (0, 0, 0, 1, 0, 0, 0, 1, 1)


def test_counts():
    assert len(labels(3, 9)) == 55
    assert len(degree_zero(3, 9)) == 19
    assert len(degree_zero(9, 3)) == 19


@pytest.mark.parametrize("n,m", [(3, 9), (2, 4), (3, 3), (2, 6), (4, 4)])
def test_bijective_and_involutive(n, m):
    pairs = levelrank_pairs(n, m)
    images = [b for _, b in pairs]
    assert sorted(images) == sorted(degree_zero(m, n))
    for a, b in pairs:
        assert tau(m, n, b) == a


def test_pieces():
    assert d_map(3, 9, (4, 4, 1)) == (5, 1)
    assert transpose((5, 1)) == (2, 1, 1, 1, 1)
    assert transpose(()) == ()
    assert w_map(3, 2, (2, 1)) == (0, 1, 1)
    assert rotate((1, 2, 3), 1) == (3, 1, 2)
    assert rotate((1, 2, 3), -1) == (2, 3, 1)
    assert degree(3, 9, (4, 4, 1)) == 0


def test_errors():
    with pytest.raises(ValueError):
        tau(3, 9, (4, 4, 2))
    with pytest.raises(ValueError):
        tau(3, 9, (5, 4, 0))
    with pytest.raises(ValueError):
        w_map(2, 2, (3,))


@given(st.lists(st.integers(1, 6), max_size=6))
def test_transpose_involution(parts):
    lam = tuple(sorted(parts, reverse=True))
    assert transpose(transpose(lam)) == lam
    assert sum(transpose(lam)) == sum(lam)
